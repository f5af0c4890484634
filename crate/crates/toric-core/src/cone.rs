//! Pointed rational polyhedral cones with exact arithmetic.
//!
//! A [`Cone`] is stored by its primitive minimal generators in a fixed
//! lexicographic order, so equal cones compare equal structurally. The
//! constructor removes redundant generators, rejects non-pointed input
//! and precomputes the facet normals used by membership tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::geom::dual_extreme_rays;
use crate::lattice::{
    clear_denominators, determinant, diagonalize, integer_kernel, primitive, rational_rank,
    saturation_basis, solve_rational, subsets, IntMatrix, LatticeVector, RationalCovector,
};

/// Pointed rational polyhedral cone given by primitive minimal ray
/// generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    dim: usize,
    /// Integer covectors vanishing on the linear span (empty iff the cone
    /// is full-dimensional).
    span_equalities: Vec<LatticeVector>,
    /// Lattice basis of `span ∩ Z^rank`; `None` iff full-dimensional.
    span_basis: Option<IntMatrix>,
    /// Ambient integer covectors; on the span, the cone is exactly where
    /// all of them are nonnegative.
    facet_normals: Vec<LatticeVector>,
    simplicial: bool,
    full_dimensional: bool,
}

/// The lattice points of the half-open generator parallelepiped of a
/// simplicial full-dimensional cone, origin included. Its cardinality is
/// the multiplicity of the cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParallelepipedSet {
    points: Vec<LatticeVector>,
}

impl ParallelepipedSet {
    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points other than the origin.
    pub fn nonzero_points(&self) -> Vec<LatticeVector> {
        self.points.iter().filter(|p| !p.is_zero()).cloned().collect()
    }
}

impl Cone {
    /// Canonical cone from arbitrary nonzero generators: generators are
    /// primitivized, redundant ones removed, rays sorted lexicographically.
    pub fn new(generators: &[LatticeVector], rank: usize) -> Result<Cone> {
        if generators.is_empty() {
            return Err(ToricError::EmptyGenerators);
        }
        for g in generators {
            if g.rank() != rank {
                return Err(ToricError::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let mut prim: Vec<LatticeVector> = generators
            .iter()
            .map(primitive)
            .collect::<Result<Vec<_>>>()?;
        prim.sort();
        prim.dedup();

        let gen_matrix = IntMatrix::from_rows(prim.clone())?;
        let dim = rational_rank(&prim);
        let full = dim == rank;
        let span_equalities = if full {
            Vec::new()
        } else {
            integer_kernel(&gen_matrix)
        };
        let span_basis = if full {
            None
        } else {
            Some(IntMatrix::from_rows(saturation_basis(&gen_matrix))?)
        };

        // Work in coordinates of the span lattice so the dual is pointed.
        let reduced: Vec<LatticeVector> = match &span_basis {
            None => prim.clone(),
            Some(basis) => prim
                .iter()
                .map(|g| reduce_coords(basis, g))
                .collect::<Result<Vec<_>>>()?,
        };
        let reduced_duals = dual_extreme_rays(&reduced, dim);
        if rational_rank(&reduced_duals) != dim {
            return Err(ToricError::NotPointed);
        }

        // A generator is a ray exactly when its tight normals cut it to a
        // one-dimensional face.
        let mut rays = Vec::new();
        let mut kept_reduced = Vec::new();
        for (g, r) in prim.iter().zip(reduced.iter()) {
            let tight: Vec<LatticeVector> = reduced_duals
                .iter()
                .filter(|phi| phi.dot(r).is_zero())
                .cloned()
                .collect();
            if rational_rank(&tight) == dim - 1 {
                rays.push(g.clone());
                kept_reduced.push(r.clone());
            }
        }

        let facet_normals = match &span_basis {
            None => reduced_duals,
            Some(basis) => reduced_duals
                .iter()
                .map(|phi| extend_covector(basis, phi))
                .collect::<Result<Vec<_>>>()?,
        };

        let simplicial = rays.len() == dim;
        Ok(Cone {
            rank,
            rays,
            dim,
            span_equalities,
            span_basis,
            facet_normals,
            simplicial,
            full_dimensional: full,
        })
    }

    pub fn from_i64(generators: &[&[i64]], rank: usize) -> Result<Cone> {
        let gens: Vec<LatticeVector> = generators
            .iter()
            .map(|g| LatticeVector::from_i64(g))
            .collect();
        Cone::new(&gens, rank)
    }

    /// The zero cone `{0}`, needed as the bottom face of every cone.
    pub fn zero(rank: usize) -> Cone {
        Cone {
            rank,
            rays: Vec::new(),
            dim: 0,
            span_equalities: (0..rank).map(|i| LatticeVector::basis(rank, i)).collect(),
            span_basis: Some(IntMatrix::from_rows(Vec::new()).unwrap()),
            facet_normals: Vec::new(),
            simplicial: true,
            full_dimensional: rank == 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.full_dimensional
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn is_smooth(&self) -> Result<bool> {
        Ok(self.simplicial && self.multiplicity()?.is_one())
    }

    pub(crate) fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    pub(crate) fn span_equalities(&self) -> &[LatticeVector] {
        &self.span_equalities
    }

    pub(crate) fn span_basis(&self) -> Option<&IntMatrix> {
        self.span_basis.as_ref()
    }

    /// Exact membership: is `v` a nonnegative rational combination of the
    /// rays?
    pub fn contains(&self, v: &LatticeVector) -> bool {
        debug_assert_eq!(v.rank(), self.rank);
        self.span_equalities.iter().all(|e| e.dot(v).is_zero())
            && self.facet_normals.iter().all(|n| !n.dot(v).is_negative())
    }

    /// Is `other` contained in `self`? Convexity makes ray membership
    /// sufficient.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// All faces of a simplicial cone, one per generator subset (the zero
    /// cone included), ordered by dimension then lexicographically.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.simplicial {
            return Err(ToricError::NotSimplicial);
        }
        let mut out = vec![Cone::zero(self.rank)];
        for k in 1..=self.rays.len() {
            for subset in subsets(self.rays.len(), k) {
                let gens: Vec<LatticeVector> =
                    subset.iter().map(|&i| self.rays[i].clone()).collect();
                out.push(Cone::new(&gens, self.rank)?);
            }
        }
        Ok(out)
    }

    /// Generator subsets of the facets (codimension-one faces), one per
    /// facet normal. Works for non-simplicial cones too.
    pub(crate) fn facet_ray_indices(&self) -> Vec<Vec<usize>> {
        self.facet_normals
            .iter()
            .map(|phi| {
                (0..self.rays.len())
                    .filter(|&i| phi.dot(&self.rays[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    /// Lattice index of the generator sublattice: |det| of the ray matrix
    /// when full-dimensional, gcd of maximal minors otherwise. Equals 1
    /// exactly when the cone is smooth.
    pub fn multiplicity(&self) -> Result<BigInt> {
        if !self.simplicial {
            return Err(ToricError::NotSimplicial);
        }
        if self.rays.is_empty() {
            return Ok(BigInt::one());
        }
        let m = IntMatrix::from_rows(self.rays.clone())?;
        if self.full_dimensional {
            return Ok(determinant(&m)?.abs());
        }
        let k = self.rays.len();
        let mut g = BigInt::zero();
        for cols in subsets(self.rank, k) {
            let sub_rows: Vec<LatticeVector> = self
                .rays
                .iter()
                .map(|r| LatticeVector::new(cols.iter().map(|&c| r.get(c).clone()).collect()))
                .collect();
            let minor = determinant(&IntMatrix::from_rows(sub_rows)?)?;
            g = g.gcd(&minor);
        }
        Ok(g)
    }

    /// All lattice points `Σ λ_i u_i` with `0 ≤ λ_i < 1`, enumerated via
    /// the diagonalized generator lattice (one point per residue class).
    pub fn parallelepiped_points(&self) -> Result<ParallelepipedSet> {
        if !self.simplicial {
            return Err(ToricError::NotSimplicial);
        }
        if !self.full_dimensional {
            return Err(ToricError::NotFullDimensional);
        }
        let u = IntMatrix::from_rows(self.rays.clone())?;
        let (diag, qinv) = diagonalize(&u);
        debug_assert_eq!(diag.len(), self.rank);
        let bounds: Vec<u64> = diag
            .iter()
            .map(|d| {
                u64::try_from(d).map_err(|_| {
                    ToricError::Internal("multiplicity exceeds enumeration bound".into())
                })
            })
            .collect::<Result<Vec<u64>>>()?;

        let mut points = Vec::new();
        let mut counters = vec![0u64; self.rank];
        loop {
            let mut x = LatticeVector::zero(self.rank);
            for (i, &k) in counters.iter().enumerate() {
                if k > 0 {
                    x = x.add(&qinv.row(i).scale(&BigInt::from(k)));
                }
            }
            points.push(self.reduce_into_parallelepiped(&u, &x)?);

            // Odometer over the residue classes.
            let mut i = 0;
            loop {
                if i == self.rank {
                    points.sort();
                    points.dedup();
                    debug_assert_eq!(BigInt::from(points.len()), self.multiplicity()?);
                    return Ok(ParallelepipedSet { points });
                }
                counters[i] += 1;
                if counters[i] < bounds[i] {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }

    fn reduce_into_parallelepiped(
        &self,
        u: &IntMatrix,
        x: &LatticeVector,
    ) -> Result<LatticeVector> {
        // λ with x = Σ λ_i u_i, then subtract the integral parts.
        let cols: Vec<LatticeVector> = (0..self.rank)
            .map(|j| LatticeVector::new(u.rows().iter().map(|r| r.get(j).clone()).collect()))
            .collect();
        let ut = IntMatrix::from_rows(cols)?;
        let lambda = solve_rational(&ut, &x.to_rational())
            .ok_or_else(|| ToricError::Internal("singular generator matrix".into()))?;
        let mut out = x.clone();
        for (i, l) in lambda.coeffs().iter().enumerate() {
            let f = l.floor().to_integer();
            if !f.is_zero() {
                out = out.sub(&self.rays[i].scale(&f));
            }
        }
        Ok(out)
    }

    /// The unique linear functional valued 1 on every minimal generator of
    /// a full-dimensional simplicial cone.
    pub fn height_functional(&self) -> Result<RationalCovector> {
        if !self.simplicial {
            return Err(ToricError::NotSimplicial);
        }
        if !self.full_dimensional {
            return Err(ToricError::NotFullDimensional);
        }
        let u = IntMatrix::from_rows(self.rays.clone())?;
        let ones = vec![BigRational::one(); self.rank];
        solve_rational(&u, &ones)
            .ok_or_else(|| ToricError::Internal("singular simplicial generator matrix".into()))
    }

    /// When all ray generators lie on a common affine hyperplane `{m = 1}`,
    /// returns `m` together with its Q-Gorenstein index (the smallest
    /// `k ≥ 1` making `k·m` integral on the span lattice).
    pub fn gorenstein_functional(&self) -> Option<(RationalCovector, BigInt)> {
        let u = IntMatrix::from_rows(self.rays.clone()).ok()?;
        let ones = vec![BigRational::one(); self.rays.len()];
        let m = solve_rational(&u, &ones)?;
        let index = match &self.span_basis {
            None => m.denominator_lcm(),
            Some(basis) => {
                let reduced: Vec<LatticeVector> = self
                    .rays
                    .iter()
                    .map(|g| reduce_coords(basis, g))
                    .collect::<Result<Vec<_>>>()
                    .ok()?;
                let ru = IntMatrix::from_rows(reduced).ok()?;
                let ones = vec![BigRational::one(); ru.nrows()];
                solve_rational(&ru, &ones)?.denominator_lcm()
            }
        };
        Some((m, index))
    }

    /// An integer covector strictly positive on the cone minus the
    /// origin: the sum of the facet normals. Every nonzero point of a
    /// pointed cone leaves at least one normal strictly positive.
    pub(crate) fn positive_covector(&self) -> LatticeVector {
        let mut w = LatticeVector::zero(self.rank);
        for n in &self.facet_normals {
            w = w.add(n);
        }
        debug_assert!(self.rays.iter().all(|r| w.dot(r).is_positive()));
        w
    }
}

/// Coordinates of `v` in the rows of `basis` (exact; errors if `v` is not
/// in the lattice spanned by the rows).
pub(crate) fn reduce_coords(basis: &IntMatrix, v: &LatticeVector) -> Result<LatticeVector> {
    // Solve a * basis = v, i.e. basis^T * a^T = v^T.
    let bt_rows: Vec<LatticeVector> = (0..basis.ncols())
        .map(|j| {
            LatticeVector::new(
                basis.rows().iter().map(|r| r.get(j).clone()).collect(),
            )
        })
        .collect();
    let bt = IntMatrix::from_rows(bt_rows)?;
    let a = solve_rational(&bt, &v.to_rational())
        .ok_or_else(|| ToricError::Internal("vector outside span".into()))?;
    let ints: Vec<BigInt> = a
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(ToricError::Internal("vector outside span lattice".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeVector::new(ints))
}

/// Extend a covector on span coordinates to an ambient integer covector
/// agreeing with it on the span.
fn extend_covector(basis: &IntMatrix, phi: &LatticeVector) -> Result<LatticeVector> {
    let rhs: Vec<BigRational> = phi.to_rational();
    let sol = solve_rational(basis, &rhs)
        .ok_or_else(|| ToricError::Internal("covector extension failed".into()))?;
    Ok(clear_denominators(sol.coeffs()))
}

/// Deterministic triangulation of a pointed cone using only its own rays
/// (pulling from the lexicographically smallest ray, recursively on the
/// facets). Returns index sets into `c.rays()`; cells are simplicial of
/// the cone's dimension.
pub(crate) fn pulling_triangulation(c: &Cone) -> Result<Vec<Vec<usize>>> {
    if c.is_simplicial() {
        return Ok(vec![(0..c.rays().len()).collect()]);
    }
    let mut cells = Vec::new();
    for facet in c.facet_ray_indices() {
        if facet.contains(&0) {
            continue;
        }
        let gens: Vec<LatticeVector> = facet.iter().map(|&i| c.rays()[i].clone()).collect();
        let fc = Cone::new(&gens, c.rank())?;
        debug_assert_eq!(fc.rays().len(), gens.len());
        // Canonical sorting keeps the facet rays in the same relative
        // order, so local indices map straight back.
        let back: Vec<usize> = fc
            .rays()
            .iter()
            .map(|r| {
                c.rays()
                    .iter()
                    .position(|s| s == r)
                    .expect("facet rays come from the cone")
            })
            .collect();
        for sub in pulling_triangulation(&fc)? {
            let mut cell: Vec<usize> = sub.iter().map(|&i| back[i]).collect();
            cell.push(0);
            cell.sort_unstable();
            cells.push(cell);
        }
    }
    cells.sort();
    cells.dedup();
    Ok(cells)
}

/// Normalized volume |det| / Π w(u) of a full-dimensional simplicial cone
/// cross-sectioned by `{w = 1}`; additive over subdivisions.
pub(crate) fn simplicial_volume(rays: &[LatticeVector], w: &LatticeVector) -> Result<BigRational> {
    let det = determinant(&IntMatrix::from_rows(rays.to_vec())?)?.abs();
    let mut denom = BigInt::one();
    for r in rays {
        denom *= w.dot(r);
    }
    debug_assert!(denom.is_positive());
    Ok(BigRational::new(det, denom))
}

/// Cross-section volume of a full-dimensional pointed cone with respect
/// to `{w = 1}`, via a pulling triangulation.
pub(crate) fn cone_volume(c: &Cone, w: &LatticeVector) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for cell in pulling_triangulation(c)? {
        let rays: Vec<LatticeVector> = cell.iter().map(|&i| c.rays()[i].clone()).collect();
        total += simplicial_volume(&rays, w)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(gens: &[&[i64]], rank: usize) -> Cone {
        Cone::from_i64(gens, rank).unwrap()
    }

    fn v(coords: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(coords)
    }

    #[test]
    fn make_cone_drops_redundant_generator() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1]], 2);
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn make_cone_primitivizes() {
        let c = cone(&[&[2, 0], &[0, 3]], 2);
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn make_cone_rejects_lines() {
        let gens = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])];
        assert!(matches!(
            Cone::new(&gens, 2),
            Err(ToricError::NotPointed)
        ));
    }

    #[test]
    fn make_cone_rejects_empty() {
        assert!(matches!(
            Cone::new(&[], 2),
            Err(ToricError::EmptyGenerators)
        ));
    }

    #[test]
    fn full_dimensionality() {
        assert!(cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3).is_full_dimensional());
        assert!(!cone(&[&[1, 0, 0], &[0, 1, 0]], 3).is_full_dimensional());
        assert!(cone(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 3, 4, 7]],
            4
        )
        .is_full_dimensional());
    }

    #[test]
    fn face_counts() {
        assert_eq!(cone(&[&[1, 0], &[0, 1]], 2).faces().unwrap().len(), 4);
        assert_eq!(
            cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3)
                .faces()
                .unwrap()
                .len(),
            8
        );
        assert_eq!(cone(&[&[1, 2]], 2).faces().unwrap().len(), 2);
    }

    #[test]
    fn faces_reject_non_simplicial() {
        let square = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3);
        assert!(matches!(square.faces(), Err(ToricError::NotSimplicial)));
    }

    #[test]
    fn multiplicity_values() {
        assert_eq!(
            cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3)
                .multiplicity()
                .unwrap(),
            BigInt::one()
        );
        assert_eq!(
            cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3)
                .multiplicity()
                .unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            cone(
                &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 3, 4, 7]],
                4
            )
            .multiplicity()
            .unwrap(),
            BigInt::from(7)
        );
    }

    #[test]
    fn multiplicity_of_lower_dimensional_face() {
        // Smooth facet inside rank 4: gcd of maximal minors is 1.
        let c = cone(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 3, 4, 7]], 4);
        assert_eq!(c.multiplicity().unwrap(), BigInt::one());
    }

    #[test]
    fn parallelepiped_smooth_cone_is_origin_only() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let p = c.parallelepiped_points().unwrap();
        assert_eq!(p.points(), &[LatticeVector::zero(3)]);
    }

    #[test]
    fn parallelepiped_of_axis_cone() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3);
        let p = c.parallelepiped_points().unwrap();
        assert_eq!(
            p.points(),
            &[v(&[0, 0, 0]), v(&[1, 1, 1]), v(&[1, 1, 2])]
        );
    }

    #[test]
    fn parallelepiped_of_rank4_family_cone() {
        let c = cone(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 2, 3]],
            4,
        );
        let p = c.parallelepiped_points().unwrap();
        assert_eq!(
            p.points(),
            &[v(&[0, 0, 0, 0]), v(&[1, 1, 1, 1]), v(&[1, 1, 2, 2])]
        );
    }

    #[test]
    fn height_functional_values() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let l = c.height_functional().unwrap();
        assert!(l.coeffs().iter().all(|x| x == &BigRational::one()));

        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]], 3);
        let l = c.height_functional().unwrap();
        assert_eq!(l.coeffs()[2], BigRational::from_integer((-1).into()));

        let c = cone(&[&[1, 0], &[1, 2]], 2);
        let l = c.height_functional().unwrap();
        assert_eq!(l.coeffs()[0], BigRational::one());
        assert_eq!(l.coeffs()[1], BigRational::zero());
    }

    #[test]
    fn gorenstein_functional_values() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let (m, index) = c.gorenstein_functional().unwrap();
        assert!(m.coeffs().iter().all(|x| x == &BigRational::one()));
        assert_eq!(index, BigInt::one());

        let square = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3);
        let (m, index) = square.gorenstein_functional().unwrap();
        assert_eq!(m.coeffs()[0], BigRational::zero());
        assert_eq!(m.coeffs()[1], BigRational::zero());
        assert_eq!(m.coeffs()[2], BigRational::one());
        assert_eq!(index, BigInt::one());

        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3);
        let (m, index) = c.gorenstein_functional().unwrap();
        assert_eq!(m.coeffs()[2], BigRational::new((-1).into(), 3.into()));
        assert_eq!(index, BigInt::from(3));
        for r in c.rays() {
            assert_eq!(m.evaluate(r), BigRational::one());
        }
    }

    #[test]
    fn contains_examples() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3);
        assert!(c.contains(&v(&[1, 1, 1])));
        assert!(!c.contains(&v(&[0, 0, 1])));
        for r in c.rays() {
            assert!(c.contains(r));
        }
    }

    #[test]
    fn contains_agrees_with_simplicial_solve() {
        // Brute-force oracle for simplicial full-dimensional cones: solve
        // for the coefficients and check signs.
        let mut state = 0x3141592653589793u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        while tested < 40 {
            let d = 2 + (next() % 2) as usize;
            let gens: Vec<LatticeVector> = (0..d)
                .map(|_| {
                    LatticeVector::new(
                        (0..d).map(|_| BigInt::from((next() % 7) as i64 - 3)).collect(),
                    )
                })
                .collect();
            if gens.iter().any(|g| g.is_zero()) {
                continue;
            }
            let m = IntMatrix::from_rows(gens.clone()).unwrap();
            if determinant(&m).unwrap().is_zero() {
                continue;
            }
            let c = Cone::new(&gens, d).unwrap();
            if c.rays().len() != d {
                continue;
            }
            tested += 1;
            for _ in 0..20 {
                let p = LatticeVector::new(
                    (0..d).map(|_| BigInt::from((next() % 9) as i64 - 4)).collect(),
                );
                let cols: Vec<LatticeVector> = (0..d)
                    .map(|j| {
                        LatticeVector::new(
                            c.rays().iter().map(|r| r.get(j).clone()).collect(),
                        )
                    })
                    .collect();
                let ut = IntMatrix::from_rows(cols).unwrap();
                let lambda = solve_rational(&ut, &p.to_rational()).unwrap();
                let oracle = lambda.coeffs().iter().all(|l| !l.is_negative());
                assert_eq!(c.contains(&p), oracle, "membership mismatch");
            }
        }
    }

    #[test]
    fn pulling_triangulation_of_square_cone() {
        let square = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3);
        let cells = pulling_triangulation(&square).unwrap();
        assert_eq!(cells.len(), 2);
        let w = square.positive_covector();
        let vol = cone_volume(&square, &w).unwrap();
        let mut sum = BigRational::zero();
        for cell in &cells {
            let rays: Vec<LatticeVector> =
                cell.iter().map(|&i| square.rays()[i].clone()).collect();
            sum += simplicial_volume(&rays, &w).unwrap();
        }
        assert_eq!(vol, sum);
    }

    #[test]
    fn parallelepiped_count_matches_multiplicity_randomly() {
        let mut state = 0x5bd1e995u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        while tested < 60 {
            let d = 2 + (next() % 3) as usize;
            let gens: Vec<LatticeVector> = (0..d)
                .map(|_| {
                    LatticeVector::new(
                        (0..d).map(|_| BigInt::from((next() % 9) as i64 - 4)).collect(),
                    )
                })
                .collect();
            if gens.iter().any(|g| g.is_zero()) {
                continue;
            }
            let Ok(c) = Cone::new(&gens, d) else { continue };
            if !c.is_simplicial() || !c.is_full_dimensional() {
                continue;
            }
            tested += 1;
            let p = c.parallelepiped_points().unwrap();
            assert_eq!(BigInt::from(p.len()), c.multiplicity().unwrap());
            for pt in p.points() {
                assert!(c.contains(pt));
            }
        }
    }
}
