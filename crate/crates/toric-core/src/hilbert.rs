//! Hilbert bases of pointed cones and the essential-divisor split.
//!
//! The computed basis gathers candidates from a pulling triangulation of
//! the cone (parallelepiped points plus generators per simplicial cell)
//! and keeps the irreducible ones. A coordinate-box brute force serves as
//! an independent oracle.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::{pulling_triangulation, reduce_coords, Cone};
use crate::error::{Result, ToricError};
use crate::lattice::LatticeVector;

/// The minimal generating set of the monoid of lattice points of a
/// pointed cone. Elements are flagged by whether they are ray generators;
/// the others index the exceptional essential divisors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertBasis {
    elements: Vec<LatticeVector>,
    ray_flags: Vec<bool>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[LatticeVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_ray_generator(&self, i: usize) -> bool {
        self.ray_flags[i]
    }

    /// Elements that are not ray generators.
    pub fn exceptional(&self) -> Vec<LatticeVector> {
        self.elements
            .iter()
            .zip(&self.ray_flags)
            .filter(|(_, flag)| !**flag)
            .map(|(e, _)| e.clone())
            .collect()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.elements.contains(v)
    }
}

/// Exact Hilbert basis of a pointed cone of any dimension.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis> {
    if c.is_full_dimensional() {
        return hilbert_basis_full(c);
    }
    // Work in the span lattice, where the cone is full-dimensional.
    let basis = c
        .span_basis()
        .ok_or_else(|| ToricError::Internal("missing span basis".into()))?
        .clone();
    let reduced_rays: Vec<LatticeVector> = c
        .rays()
        .iter()
        .map(|r| reduce_coords(&basis, r))
        .collect::<Result<Vec<_>>>()?;
    let reduced = Cone::new(&reduced_rays, c.dim())?;
    let inner = hilbert_basis_full(&reduced)?;
    let elements: Vec<LatticeVector> = inner
        .elements()
        .iter()
        .map(|a| {
            let mut out = LatticeVector::zero(c.rank());
            for (i, k) in a.coords().iter().enumerate() {
                if !k.is_zero() {
                    out = out.add(&basis.row(i).scale(k));
                }
            }
            out
        })
        .collect();
    Ok(flag_and_sort(c, elements))
}

fn hilbert_basis_full(c: &Cone) -> Result<HilbertBasis> {
    let mut candidates: Vec<LatticeVector> = c.rays().to_vec();
    for cell in pulling_triangulation(c)? {
        let gens: Vec<LatticeVector> = cell.iter().map(|&i| c.rays()[i].clone()).collect();
        let sub = Cone::new(&gens, c.rank())?;
        for p in sub.parallelepiped_points()?.nonzero_points() {
            candidates.push(p);
        }
    }
    candidates.sort();
    candidates.dedup();

    // A candidate is reducible exactly when subtracting some other
    // candidate leaves a nonzero lattice point of the cone; the witness
    // can always be found inside the candidate superset.
    let mut kept = Vec::new();
    'outer: for h in &candidates {
        for other in &candidates {
            if other == h {
                continue;
            }
            let diff = h.sub(other);
            if !diff.is_zero() && c.contains(&diff) {
                continue 'outer;
            }
        }
        kept.push(h.clone());
    }
    Ok(flag_and_sort(c, kept))
}

/// Brute-force oracle: enumerate all lattice points of the cone inside
/// the box `[-box_bound, box_bound]^d` and keep those not expressible as
/// a sum of two of them. The caller must pick `box_bound` large enough
/// that every true basis element fits; the sum of the coordinate maxima
/// of the generators always suffices.
pub fn hilbert_basis_bruteforce(c: &Cone, box_bound: i64) -> HilbertBasis {
    let d = c.rank();
    let mut points: Vec<LatticeVector> = Vec::new();
    let mut cursor = vec![-box_bound; d];
    'enumerate: loop {
        let v = LatticeVector::from_i64(&cursor);
        if !v.is_zero() && c.contains(&v) {
            points.push(v);
        }
        let mut i = 0;
        loop {
            if i == d {
                break 'enumerate;
            }
            cursor[i] += 1;
            if cursor[i] <= box_bound {
                break;
            }
            cursor[i] = -box_bound;
            i += 1;
        }
    }
    let mut kept = Vec::new();
    'outer: for h in &points {
        for other in &points {
            if other == h {
                continue;
            }
            let diff = h.sub(other);
            if !diff.is_zero() && c.contains(&diff) {
                continue 'outer;
            }
        }
        kept.push(h.clone());
    }
    flag_and_sort(c, kept)
}

/// The Hilbert basis with its exceptional subset: basis elements that are
/// not ray generators correspond to the essential divisors that are not
/// already prime divisors on the affine toric variety.
pub fn essential_divisors(c: &Cone) -> Result<(HilbertBasis, Vec<LatticeVector>)> {
    let basis = hilbert_basis(c)?;
    let exceptional = basis.exceptional();
    Ok((basis, exceptional))
}

/// Recommended brute-force box bound for a cone: the sum over generators
/// of each one's maximum absolute coordinate.
pub fn bruteforce_bound(c: &Cone) -> i64 {
    use num_traits::Signed;
    let mut total = BigInt::zero();
    for r in c.rays() {
        let m = r.coords().iter().map(|x| x.abs()).max().unwrap_or_default();
        total += m;
    }
    i64::try_from(&total).unwrap_or(i64::MAX)
}

fn flag_and_sort(c: &Cone, mut elements: Vec<LatticeVector>) -> HilbertBasis {
    // Deterministic order: height under a fixed interior functional of
    // the dual, then lexicographic.
    elements.sort();
    elements.dedup();
    let w = c.positive_covector();
    elements.sort_by(|a, b| w.dot(a).cmp(&w.dot(b)).then_with(|| a.cmp(b)));
    let ray_flags = elements.iter().map(|e| c.rays().contains(e)).collect();
    HilbertBasis {
        elements,
        ray_flags,
    }
}
