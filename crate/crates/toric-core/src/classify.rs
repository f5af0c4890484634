//! Classification of toric singularities: smooth, Q-factorial,
//! (Q-)Gorenstein, terminal, canonical, plus recognition of the two
//! normal forms used by the built-in cone families.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{determinant, solve_rational, IntMatrix, LatticeVector};

/// Singularity flags of a pointed full-dimensional cone. `terminal` and
/// `canonical` are absent exactly when the cone is not Q-Gorenstein.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationReport {
    pub smooth: bool,
    pub simplicial: bool,
    pub q_gorenstein_index: Option<BigInt>,
    pub gorenstein: bool,
    pub terminal: Option<bool>,
    pub canonical: Option<bool>,
}

/// Classify a pointed full-dimensional cone. Terminality and canonicity
/// are decided by enumerating the lattice points of the bounded region
/// `{m ≤ 1}` of the cone, where `m` is the Gorenstein functional.
pub fn classify(c: &Cone) -> Result<ClassificationReport> {
    if !c.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let simplicial = c.is_simplicial();
    let smooth = simplicial && c.multiplicity()?.is_one();
    let functional = c.gorenstein_functional();
    let (q_index, gorenstein) = match &functional {
        Some((_, index)) => (Some(index.clone()), index.is_one()),
        None => (None, false),
    };
    let (terminal, canonical) = match &functional {
        None => (None, None),
        Some((m, _)) => {
            let mut terminal = true;
            let mut canonical = true;
            for p in low_points(c, m)? {
                // p is a nonzero lattice point of c with m(p) ≤ 1.
                let value = m.evaluate(&p);
                if value < BigRational::one() {
                    canonical = false;
                    terminal = false;
                    break;
                }
                if !c.rays().contains(&p) {
                    terminal = false;
                }
            }
            (Some(terminal), Some(canonical))
        }
    };
    Ok(ClassificationReport {
        smooth,
        simplicial,
        q_gorenstein_index: q_index,
        gorenstein,
        terminal,
        canonical,
    })
}

/// Nonzero lattice points of `c` with `m ≤ 1`. The region is contained in
/// the convex hull of the origin and the ray generators, so a coordinate
/// box around them suffices.
fn low_points(c: &Cone, m: &crate::lattice::RationalCovector) -> Result<Vec<LatticeVector>> {
    let d = c.rank();
    let mut lo = vec![BigInt::zero(); d];
    let mut hi = vec![BigInt::zero(); d];
    for r in c.rays() {
        for j in 0..d {
            if r.get(j) < &lo[j] {
                lo[j] = r.get(j).clone();
            }
            if r.get(j) > &hi[j] {
                hi[j] = r.get(j).clone();
            }
        }
    }
    let bound = |x: &BigInt| {
        i64::try_from(x).map_err(|_| {
            ToricError::Internal("generator coordinates exceed the enumeration range".into())
        })
    };
    let lo: Vec<i64> = lo.iter().map(bound).collect::<Result<Vec<_>>>()?;
    let hi: Vec<i64> = hi.iter().map(bound).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'enumerate: loop {
        let p = LatticeVector::from_i64(&cursor);
        if !p.is_zero() && c.contains(&p) && m.evaluate(&p) <= BigRational::one() {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == d {
                break 'enumerate;
            }
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                break;
            }
            cursor[i] = lo[i];
            i += 1;
        }
    }
    Ok(out)
}

/// For a terminal simplicial full-dimensional rank-3 cone, find `(p, q)`
/// with `0 ≤ p < q`, `gcd(p, q) = 1` such that the cone is, in a suitable
/// lattice basis `u1, u2, u3`, generated by `u1, u2, u1 + p·u2 + q·u3`.
/// The basis is searched over ordered pairs of ray generators; `None`
/// when no searched basis matches.
pub fn terminal_form_3d(c: &Cone) -> Result<Option<(BigInt, BigInt)>> {
    if c.rank() != 3 {
        return Err(ToricError::RankUnsupported {
            required: 3,
            found: c.rank(),
        });
    }
    if !c.is_simplicial() {
        return Err(ToricError::NotSimplicial);
    }
    if !c.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let report = classify(c)?;
    if report.terminal != Some(true) {
        return Err(ToricError::NotTerminal);
    }
    let rays = c.rays();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let n = cross(&rays[i], &rays[j]);
            if n.is_zero() {
                continue;
            }
            let g = n.content();
            if !g.is_one() {
                // The pair does not extend to a lattice basis.
                continue;
            }
            let u3 = solve_dot_one(&n);
            let basis = IntMatrix::from_rows(vec![rays[i].clone(), rays[j].clone(), u3.clone()])?;
            // Coordinates of the third generator in this basis.
            let cols: Vec<LatticeVector> = (0..3)
                .map(|col| {
                    LatticeVector::new(basis.rows().iter().map(|r| r.get(col).clone()).collect())
                })
                .collect();
            let bt = IntMatrix::from_rows(cols)?;
            let Some(coords) = solve_rational(&bt, &rays[k].to_rational()) else {
                continue;
            };
            let alpha = coords.coeffs()[0].to_integer();
            let beta = coords.coeffs()[1].to_integer();
            let mut gamma = coords.coeffs()[2].to_integer();
            debug_assert!(coords.coeffs().iter().all(|x| x.is_integer()));
            if gamma.is_negative() {
                gamma = -gamma;
            }
            if gamma.is_zero() {
                continue;
            }
            let q = gamma;
            if !(&alpha - BigInt::one()).mod_floor(&q).is_zero() {
                continue;
            }
            let p = beta.mod_floor(&q);
            if p.gcd(&q).is_one() {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

fn cross(a: &LatticeVector, b: &LatticeVector) -> LatticeVector {
    LatticeVector::new(vec![
        a.get(1) * b.get(2) - a.get(2) * b.get(1),
        a.get(2) * b.get(0) - a.get(0) * b.get(2),
        a.get(0) * b.get(1) - a.get(1) * b.get(0),
    ])
}

/// An integer vector `x` with `n · x = 1`, for primitive `n` (extended
/// gcd across the three coordinates).
fn solve_dot_one(n: &LatticeVector) -> LatticeVector {
    let (g01, s, t) = extended_gcd(n.get(0), n.get(1));
    let (g, u, w) = extended_gcd(&g01, n.get(2));
    debug_assert!(g.is_one());
    // n0*(s*u) + n1*(t*u) + n2*w = g01*u + n2*w = 1.
    LatticeVector::new(vec![&s * &u, &t * &u, w])
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Does the rank-4 cone equal `Cone(e1, e2, e3, (1, a, r−a, r))` with
/// `gcd(a, r) = 1` and `1 ≤ a ≤ r−a < r`, up to coordinate permutation
/// and generator reordering? Returns `(a, r)` when it does.
pub fn recognize_family_4d(c: &Cone) -> Option<(i64, i64)> {
    if c.rank() != 4 || c.rays().len() != 4 {
        return None;
    }
    let perms = permutations(4);
    for perm in &perms {
        let permuted: Vec<LatticeVector> = c
            .rays()
            .iter()
            .map(|r| LatticeVector::new(perm.iter().map(|&j| r.get(j).clone()).collect()))
            .collect();
        let mut remaining: Option<&LatticeVector> = None;
        let mut seen_basis = [false; 3];
        let mut ok = true;
        for p in &permuted {
            let mut matched = false;
            for i in 0..3 {
                if !seen_basis[i] && *p == LatticeVector::basis(4, i) {
                    seen_basis[i] = true;
                    matched = true;
                    break;
                }
            }
            if !matched {
                if remaining.is_some() {
                    ok = false;
                    break;
                }
                remaining = Some(p);
            }
        }
        if !ok || !seen_basis.iter().all(|&b| b) {
            continue;
        }
        let w = remaining?;
        let one = i64::try_from(w.get(0)).ok()?;
        let a = i64::try_from(w.get(1)).ok()?;
        let ra = i64::try_from(w.get(2)).ok()?;
        let r = i64::try_from(w.get(3)).ok()?;
        if one == 1
            && r > 0
            && a >= 1
            && ra == r - a
            && a <= r - a
            && r - a < r
            && a.gcd(&r) == 1
        {
            return Some((a, r));
        }
    }
    None
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// `|det|` of the listed vectors; convenience for callers that verify
/// determinant identities.
pub fn abs_det(rows: &[LatticeVector]) -> Result<BigInt> {
    Ok(determinant(&IntMatrix::from_rows(rows.to_vec())?)?.abs())
}
