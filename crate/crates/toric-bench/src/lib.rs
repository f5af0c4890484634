//! Shared fixtures for the benchmark targets.

use toric_core::cone::Cone;

/// The rank-4 family cone `Cone(e1, e2, e3, (1, a, r−a, r))`.
pub fn family_cone(a: i64, r: i64) -> Cone {
    Cone::from_i64(
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, a, r - a, r]],
        4,
    )
    .expect("family cone is pointed")
}

/// The rank-3 axis cone `Cone(e1, e2, (1, p, q))`.
pub fn axis_cone(p: i64, q: i64) -> Cone {
    Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, p, q]], 3).expect("axis cone is pointed")
}
