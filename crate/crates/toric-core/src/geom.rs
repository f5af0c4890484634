//! Small exact polyhedral helpers: dual ray enumeration and pairwise
//! cone intersections by exhaustive tight-subset search. Everything here
//! assumes desk-scale inputs (dimension at most five, a few dozen
//! generators) and trades asymptotics for exactness and simplicity.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{
    integer_kernel, rational_rank, subsets, IntMatrix, LatticeVector,
};

fn sign(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Extreme rays of the dual cone `{φ : φ(g) ≥ 0 for all g}`.
///
/// Correct whenever the primal cone spans `R^dim` (so the dual is
/// pointed). Each returned covector is primitive; together they are the
/// facet normals of the primal cone when it is additionally pointed.
pub(crate) fn dual_extreme_rays(gens: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    debug_assert!(gens.iter().all(|g| g.rank() == dim));
    if dim == 0 {
        return Vec::new();
    }
    if dim == 1 {
        let mut pos = false;
        let mut neg = false;
        for g in gens {
            match sign(g.get(0)) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        return match (pos, neg) {
            (true, false) => vec![LatticeVector::from_i64(&[1])],
            (false, true) => vec![LatticeVector::from_i64(&[-1])],
            _ => Vec::new(),
        };
    }
    let mut out = BTreeSet::new();
    for subset in subsets(gens.len(), dim - 1) {
        let chosen: Vec<LatticeVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rational_rank(&chosen) != dim - 1 {
            continue;
        }
        let kernel = integer_kernel(&IntMatrix::from_rows(chosen).unwrap());
        debug_assert_eq!(kernel.len(), 1);
        let phi = &kernel[0];
        let mut pos = true;
        let mut neg = true;
        for g in gens {
            match sign(&phi.dot(g)) {
                1 => neg = false,
                -1 => pos = false,
                _ => {}
            }
            if !pos && !neg {
                break;
            }
        }
        if pos {
            out.insert(phi.clone());
        } else if neg {
            out.insert(phi.neg());
        }
    }
    out.into_iter().collect()
}

/// Extreme rays of `{x : e(x) = 0 for e in equalities, n(x) ≥ 0 for n in
/// inequalities}`, assuming the result is a pointed cone.
pub(crate) fn intersection_extreme_rays(
    equalities: &[LatticeVector],
    inequalities: &[LatticeVector],
    dim: usize,
) -> Vec<LatticeVector> {
    if dim == 0 {
        return Vec::new();
    }
    let mut combined: Vec<LatticeVector> = Vec::new();
    combined.extend_from_slice(equalities);
    combined.extend_from_slice(inequalities);
    let feasible = |x: &LatticeVector| -> bool {
        equalities.iter().all(|e| e.dot(x).is_zero())
            && inequalities.iter().all(|n| !n.dot(x).is_negative())
    };
    if dim == 1 {
        let x = LatticeVector::from_i64(&[1]);
        if feasible(&x) {
            return vec![x];
        }
        let x = x.neg();
        if feasible(&x) {
            return vec![x];
        }
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for subset in subsets(combined.len(), dim - 1) {
        let chosen: Vec<LatticeVector> = subset.iter().map(|&i| combined[i].clone()).collect();
        if rational_rank(&chosen) != dim - 1 {
            continue;
        }
        let kernel = integer_kernel(&IntMatrix::from_rows(chosen).unwrap());
        debug_assert_eq!(kernel.len(), 1);
        let x = &kernel[0];
        if feasible(x) {
            out.insert(x.clone());
        } else {
            let x = x.neg();
            if feasible(&x) {
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}
