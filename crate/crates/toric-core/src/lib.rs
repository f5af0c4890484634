//! Exact-arithmetic toolkit for lattice cones and fan subdivisions.
//!
//! The crate computes Hilbert bases of pointed rational cones, classifies
//! the associated toric singularities, enumerates Hilbert basis
//! resolutions and moderate resolutions exhaustively (with completeness
//! certificates), and verifies the determinant identities and forced-chain
//! obstructions behind the non-existence results for the built-in cone
//! families. All arithmetic is arbitrary precision; no floating point
//! anywhere.
//!
//! ```
//! use toric_core::cone::Cone;
//! use toric_core::search::{find_moderate_resolutions, Budget};
//!
//! let cone = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3).unwrap();
//! let outcome = find_moderate_resolutions(&cone, &Budget::default()).unwrap();
//! // The search exhausted its finite space and found nothing: a
//! // non-existence certificate, not a timeout.
//! assert!(outcome.complete);
//! assert!(outcome.fans.is_empty());
//! ```

pub mod classify;
pub mod cone;
pub mod error;
pub mod families;
pub mod fan;
pub mod format;
pub mod hilbert;
pub mod lattice;
pub mod search;

mod geom;

pub use classify::ClassificationReport;
pub use cone::{Cone, ParallelepipedSet};
pub use error::{Result, ToricError};
pub use families::{ChainReport, FamilyParams, ObstructionReport};
pub use fan::Fan;
pub use hilbert::HilbertBasis;
pub use lattice::{IntMatrix, LatticeVector, RationalCovector};
pub use search::{Budget, SearchOutcome};
