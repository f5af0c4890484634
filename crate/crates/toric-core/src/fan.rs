//! Fans supported inside a reference cone: subdivision validity,
//! restriction, stellar subdivision, refinement and crepancy tests.
//!
//! A fan is stored by its maximal cones over a shared ray list; faces are
//! derived on demand. Construction normalizes to a canonical form (rays
//! primitive, lexicographically sorted and all referenced; cells sorted),
//! so structural equality is canonical fan equality.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::{cone_volume, simplicial_volume, Cone};
use crate::error::{Result, ToricError};
use crate::geom::intersection_extreme_rays;
use crate::lattice::{integer_kernel, primitive, IntMatrix, LatticeVector};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    maximal_cones: Vec<Vec<usize>>,
    cones: Vec<Cone>,
}

impl Fan {
    /// Canonical fan from a ray list and maximal cones given as index
    /// sets. Rays are primitivized and deduplicated, cells normalized to
    /// their extreme rays, unreferenced rays dropped.
    pub fn new(
        rank: usize,
        rays: Vec<LatticeVector>,
        maximal_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        let prim: Vec<LatticeVector> = rays
            .iter()
            .map(primitive)
            .collect::<Result<Vec<_>>>()
            .map_err(|_| ToricError::InvalidFan("rays must be nonzero".into()))?;
        for r in &prim {
            if r.rank() != rank {
                return Err(ToricError::RankMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
        }
        let mut cones = Vec::new();
        for cell in &maximal_cones {
            if cell.is_empty() {
                return Err(ToricError::InvalidFan("empty maximal cone".into()));
            }
            let gens: Vec<LatticeVector> = cell
                .iter()
                .map(|&i| {
                    prim.get(i)
                        .cloned()
                        .ok_or_else(|| ToricError::InvalidFan(format!("ray index {i} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            cones.push(Cone::new(&gens, rank)?);
        }
        Ok(Self::from_cones_normalized(rank, cones))
    }

    /// Canonical fan from prebuilt cones.
    pub fn from_cones(rank: usize, cones: Vec<Cone>) -> Fan {
        Self::from_cones_normalized(rank, cones)
    }

    fn from_cones_normalized(rank: usize, cones: Vec<Cone>) -> Fan {
        let mut ray_set: BTreeSet<LatticeVector> = BTreeSet::new();
        for c in &cones {
            ray_set.extend(c.rays().iter().cloned());
        }
        let rays: Vec<LatticeVector> = ray_set.into_iter().collect();
        let mut cells: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray present"))
                    .collect();
                idx.sort_unstable();
                idx
            })
            .collect();
        let mut paired: Vec<(Vec<usize>, Cone)> = cells.drain(..).zip(cones).collect();
        paired.sort_by(|a, b| a.0.cmp(&b.0));
        paired.dedup_by(|a, b| a.0 == b.0);
        let (maximal_cones, cones): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        Fan {
            rank,
            rays,
            maximal_cones,
            cones,
        }
    }

    /// The fan with a single maximal cone.
    pub fn trivial(c: &Cone) -> Fan {
        Self::from_cones_normalized(c.rank(), vec![c.clone()])
    }

    pub fn empty(rank: usize) -> Fan {
        Fan {
            rank,
            rays: Vec::new(),
            maximal_cones: Vec::new(),
            cones: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal_cones
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_trivial_for(&self, c: &Cone) -> bool {
        self.cones.len() == 1 && self.cones[0] == *c
    }

    /// The set of primitive generators of all rays appearing in the fan.
    pub fn gen_set(&self) -> Vec<LatticeVector> {
        self.rays.clone()
    }

    /// Fan axioms beyond well-formedness: pairwise intersections are
    /// common faces and no maximal cone lies inside another.
    pub fn validate(&self) -> bool {
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let a = &self.cones[i];
                let b = &self.cones[j];
                if a.contains_cone(b) || b.contains_cone(a) {
                    return false;
                }
                if !proper_intersection(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every maximal cone is simplicial of multiplicity one.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| {
            c.is_simplicial() && c.multiplicity().map(|m| m.is_one()).unwrap_or(false)
        })
    }

    /// Does the fan subdivide `c`: every cell inside `c` and the cells
    /// tile it. For fans of simplicial full-dimensional cells this is
    /// checked by internal-facet pairing plus exact volume accounting;
    /// fans with non-simplicial maximal cells fall back to pairwise
    /// intersection checks.
    pub fn is_subdivision_of(&self, c: &Cone) -> bool {
        if self.rank != c.rank() || self.cones.is_empty() {
            return false;
        }
        if !c.is_full_dimensional() {
            return self.reduced_subdivision_of(c);
        }
        if !self.cones.iter().all(|cell| c.contains_cone(cell)) {
            return false;
        }
        // Maximal cells of a subdivision of a full-dimensional cone are
        // full-dimensional.
        if !self.cones.iter().all(|cell| cell.is_full_dimensional()) {
            return false;
        }
        let w = c.positive_covector();
        let Ok(total) = cone_volume(c, &w) else {
            return false;
        };
        let mut sum = BigRational::zero();
        for cell in &self.cones {
            let v = if cell.is_simplicial() {
                simplicial_volume(cell.rays(), &w)
            } else {
                cone_volume(cell, &w)
            };
            match v {
                Ok(v) => sum += v,
                Err(_) => return false,
            }
        }
        if sum != total {
            return false;
        }
        if self.cones.iter().all(|cell| cell.is_simplicial()) {
            self.facets_match(c)
        } else {
            // Pairwise face checks make interiors disjoint; the volume
            // identity then forces the cells to tile c.
            for i in 0..self.cones.len() {
                for j in i + 1..self.cones.len() {
                    if !proper_intersection(&self.cones[i], &self.cones[j]) {
                        return false;
                    }
                }
            }
            true
        }
    }

    fn reduced_subdivision_of(&self, c: &Cone) -> bool {
        let Some(basis) = c.span_basis() else {
            return false;
        };
        if !self
            .rays
            .iter()
            .all(|r| c.span_equalities().iter().all(|e| e.dot(r).is_zero()))
        {
            return false;
        }
        let reduce = |v: &LatticeVector| crate::cone::reduce_coords(basis, v);
        let Ok(red_rays) = self.rays.iter().map(reduce).collect::<Result<Vec<_>>>() else {
            return false;
        };
        let Ok(red_fan) = Fan::new(c.dim(), red_rays, self.maximal_cones.clone()) else {
            return false;
        };
        let Ok(red_c_rays) = c.rays().iter().map(reduce).collect::<Result<Vec<_>>>() else {
            return false;
        };
        let Ok(red_c) = Cone::new(&red_c_rays, c.dim()) else {
            return false;
        };
        red_fan.is_subdivision_of(&red_c)
    }

    /// Internal-facet pairing: every facet of every cell either lies on a
    /// facet of `c` (exactly one cell) or is shared by exactly two cells
    /// sitting on opposite sides.
    fn facets_match(&self, c: &Cone) -> bool {
        let d = self.rank;
        let c_normals = c.facet_normals().to_vec();
        let mut registry: BTreeMap<Vec<usize>, Vec<i8>> = BTreeMap::new();
        for cell in &self.maximal_cones {
            debug_assert_eq!(cell.len(), d);
            for skip in 0..d {
                let mut facet: Vec<usize> = cell.clone();
                let removed = facet.remove(skip);
                let gens: Vec<LatticeVector> =
                    facet.iter().map(|&i| self.rays[i].clone()).collect();
                let normal = match facet_normal(&gens) {
                    Some(n) => n,
                    None => return false,
                };
                let side = normal.dot(&self.rays[removed]);
                if side.is_zero() {
                    return false;
                }
                let side = if side.is_positive() { 1i8 } else { -1i8 };
                let boundary = c_normals
                    .iter()
                    .any(|nu| gens.iter().all(|g| nu.dot(g).is_zero()));
                if boundary {
                    registry.entry(facet).or_default().push(0);
                } else {
                    registry.entry(facet).or_default().push(side);
                }
            }
        }
        for (_, sides) in registry {
            if sides.contains(&0) {
                // Boundary facet: exactly one cell may own it.
                if sides.len() != 1 {
                    return false;
                }
            } else {
                if sides.len() != 2 || sides[0] == sides[1] {
                    return false;
                }
            }
        }
        true
    }

    /// The fan of all cones of `self` contained in `c`, represented by
    /// its maximal members.
    pub fn restrict(&self, c: &Cone) -> Result<Fan> {
        let mut contained: Vec<Cone> = Vec::new();
        let mut seen: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
        for cone in &self.cones {
            for face in all_faces(cone)? {
                if face.rays().is_empty() {
                    continue;
                }
                if c.contains_cone(&face) && seen.insert(face.rays().to_vec()) {
                    contained.push(face);
                }
            }
        }
        let mut maximal: Vec<Cone> = Vec::new();
        'outer: for (i, cone) in contained.iter().enumerate() {
            for (j, other) in contained.iter().enumerate() {
                if i != j && other.contains_cone(cone) && cone != other {
                    continue 'outer;
                }
            }
            maximal.push(cone.clone());
        }
        Ok(Fan::from_cones_normalized(self.rank, maximal))
    }

    /// Stellar subdivision at a primitive point of the support: every
    /// cone containing the point is replaced by the joins of the point
    /// with its facets not containing it.
    pub fn stellar_subdivide(&self, v: &LatticeVector) -> Result<Fan> {
        let p = primitive(v)?;
        if p != *v {
            return Err(ToricError::InvalidFan(
                "subdivision point must be primitive".into(),
            ));
        }
        if !self.cones.iter().any(|c| c.contains(v)) {
            return Err(ToricError::OutsideSupport);
        }
        let mut new_cones: Vec<Cone> = Vec::new();
        for cone in &self.cones {
            if !cone.contains(v) {
                new_cones.push(cone.clone());
                continue;
            }
            for facet in cone.facet_ray_indices() {
                let mut gens: Vec<LatticeVector> =
                    facet.iter().map(|&i| cone.rays()[i].clone()).collect();
                let facet_cone = Cone::new(&gens, self.rank)?;
                if facet_cone.contains(v) {
                    continue;
                }
                gens.push(v.clone());
                new_cones.push(Cone::new(&gens, self.rank)?);
            }
        }
        Ok(Fan::from_cones_normalized(self.rank, new_cones))
    }

    /// True iff every maximal cone of `self` is contained in some cone of
    /// `other` (so the toric morphism exists). Errors when the supports
    /// differ.
    pub fn refines(&self, other: &Fan) -> Result<bool> {
        if self.rank != other.rank {
            return Err(ToricError::RankMismatch {
                expected: other.rank,
                found: self.rank,
            });
        }
        let mut all_rays: Vec<LatticeVector> = self.rays.clone();
        all_rays.extend(other.rays.iter().cloned());
        if all_rays.is_empty() {
            return Ok(true);
        }
        let hull = Cone::new(&all_rays, self.rank).map_err(|_| ToricError::SupportMismatch)?;
        let w = hull.positive_covector();
        let vol_self = fan_volume(self, &w)?;
        let vol_other = fan_volume(other, &w)?;
        if vol_self != vol_other {
            return Err(ToricError::SupportMismatch);
        }
        let all_nested = self
            .cones
            .iter()
            .all(|tau| other.cones.iter().any(|rho| rho.contains_cone(tau)));
        if all_nested {
            return Ok(true);
        }
        // Not a refinement; make sure the supports at least agree.
        let mut common = BigRational::zero();
        for tau in &self.cones {
            for rho in &other.cones {
                common += intersection_volume(tau, rho, &w)?;
            }
        }
        if common == vol_self {
            Ok(false)
        } else {
            Err(ToricError::SupportMismatch)
        }
    }

    /// All generators at value one under the Gorenstein functional of `c`.
    pub fn is_crepant(&self, c: &Cone) -> Result<bool> {
        let (m, _) = c.gorenstein_functional().ok_or(ToricError::NotQGorenstein)?;
        Ok(self
            .rays
            .iter()
            .all(|r| m.evaluate(r) == BigRational::one()))
    }
}

/// Primitive normal of the hyperplane spanned by `gens` (rank d−1 in
/// rank-d space), canonically oriented.
fn facet_normal(gens: &[LatticeVector]) -> Option<LatticeVector> {
    let m = IntMatrix::from_rows(gens.to_vec()).ok()?;
    let kernel = integer_kernel(&m);
    if kernel.len() != 1 {
        return None;
    }
    let n = kernel.into_iter().next().unwrap();
    let flip = n
        .coords()
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    Some(if flip { n.neg() } else { n })
}

/// Is the intersection of the two cones a common face of both?
pub(crate) fn proper_intersection(a: &Cone, b: &Cone) -> bool {
    let mut eqs: Vec<LatticeVector> = a.span_equalities().to_vec();
    eqs.extend_from_slice(b.span_equalities());
    let mut ineqs: Vec<LatticeVector> = a.facet_normals().to_vec();
    ineqs.extend_from_slice(b.facet_normals());
    let rays_i = intersection_extreme_rays(&eqs, &ineqs, a.rank());
    smallest_face_rays(a, &rays_i) == rays_i && smallest_face_rays(b, &rays_i) == rays_i
}

/// Ray generators of the smallest face of `cone` containing all of `pts`.
fn smallest_face_rays(cone: &Cone, pts: &[LatticeVector]) -> Vec<LatticeVector> {
    let active: Vec<&LatticeVector> = cone
        .facet_normals()
        .iter()
        .filter(|phi| pts.iter().all(|p| phi.dot(p).is_zero()))
        .collect();
    cone.rays()
        .iter()
        .filter(|g| active.iter().all(|phi| phi.dot(g).is_zero()))
        .cloned()
        .collect()
}

/// All faces of a cone (the zero cone included), by repeated facet
/// enumeration for non-simplicial cones.
pub(crate) fn all_faces(c: &Cone) -> Result<Vec<Cone>> {
    if c.is_simplicial() {
        return c.faces();
    }
    let mut seen: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
    let mut out: Vec<Cone> = vec![Cone::zero(c.rank())];
    let mut stack = vec![c.clone()];
    seen.insert(c.rays().to_vec());
    out.push(c.clone());
    while let Some(cur) = stack.pop() {
        for facet in cur.facet_ray_indices() {
            if facet.is_empty() {
                continue;
            }
            let gens: Vec<LatticeVector> = facet.iter().map(|&i| cur.rays()[i].clone()).collect();
            let fc = Cone::new(&gens, c.rank())?;
            if seen.insert(fc.rays().to_vec()) {
                out.push(fc.clone());
                stack.push(fc);
            }
        }
    }
    Ok(out)
}

fn fan_volume(f: &Fan, w: &LatticeVector) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for cell in f.cones() {
        if cell.is_full_dimensional() {
            total += cone_volume(cell, w)?;
        }
    }
    Ok(total)
}

fn intersection_volume(a: &Cone, b: &Cone, w: &LatticeVector) -> Result<BigRational> {
    let mut eqs: Vec<LatticeVector> = a.span_equalities().to_vec();
    eqs.extend_from_slice(b.span_equalities());
    let mut ineqs: Vec<LatticeVector> = a.facet_normals().to_vec();
    ineqs.extend_from_slice(b.facet_normals());
    let rays = intersection_extreme_rays(&eqs, &ineqs, a.rank());
    if rays.is_empty() {
        return Ok(BigRational::zero());
    }
    let c = Cone::new(&rays, a.rank())?;
    if c.is_full_dimensional() {
        cone_volume(&c, w)
    } else {
        Ok(BigRational::zero())
    }
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

    fn fan(rank: usize, rays: &[&[i64]], cells: &[&[usize]]) -> Fan {
        Fan::new(
            rank,
            rays.iter().map(|r| v(r)).collect(),
            cells.iter().map(|c| c.to_vec()).collect(),
        )
        .unwrap()
    }

    /// The eight-cell smooth subdivision of the (1,1,2,3) cone used as a
    /// fixture in several tests.
    pub(crate) fn eight_cell_fan() -> Fan {
        fan(
            4,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[1, 1, 2, 3],
                &[1, 1, 1, 1],
                &[1, 1, 2, 2],
            ],
            &[
                &[0, 1, 2, 4],
                &[0, 1, 3, 4],
                &[0, 2, 3, 5],
                &[0, 2, 4, 5],
                &[0, 3, 4, 5],
                &[1, 2, 3, 5],
                &[1, 2, 4, 5],
                &[1, 3, 4, 5],
            ],
        )
    }

    #[test]
    fn validate_trivial_fan() {
        let c = cone(&[&[1, 0], &[0, 1]], 2);
        assert!(Fan::trivial(&c).validate());
    }

    #[test]
    fn validate_two_cells_sharing_a_ray() {
        let f = fan(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1], &[1, 2]]);
        assert!(f.validate());
    }

    #[test]
    fn validate_rejects_overlapping_cones() {
        let f = fan(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]], &[&[0, 1], &[2, 3]]);
        assert!(!f.validate());
    }

    #[test]
    fn validate_rejects_improper_3d_intersection() {
        // The first octant and the wedge {y ≥ |x|, z ≥ 0} overlap in a
        // full-dimensional region that is a face of neither.
        let f = fan(
            3,
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[-1, 1, 0],
            ],
            &[&[0, 1, 2], &[2, 3, 4]],
        );
        assert!(!f.validate());
    }

    #[test]
    fn non_simplicial_cells_subdivide() {
        // The cone over a 2x1 rectangle split into the two unit-square
        // cones: valid fan, valid subdivision, non-simplicial cells.
        let big = cone(&[&[0, 0, 1], &[2, 0, 1], &[0, 1, 1], &[2, 1, 1]], 3);
        let f = fan(
            3,
            &[
                &[0, 0, 1],
                &[1, 0, 1],
                &[2, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
                &[2, 1, 1],
            ],
            &[&[0, 1, 3, 4], &[1, 2, 4, 5]],
        );
        assert!(f.cones().iter().all(|c| !c.is_simplicial()));
        assert!(f.validate());
        assert!(f.is_subdivision_of(&big));
        // A third copy overlapping the first breaks validity.
        let bad = fan(
            3,
            &[
                &[0, 0, 1],
                &[1, 0, 1],
                &[2, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
                &[2, 1, 1],
            ],
            &[&[0, 1, 3, 4], &[1, 2, 4, 5], &[0, 2, 3, 5]],
        );
        assert!(!bad.validate());
        assert!(!bad.is_subdivision_of(&big));
    }

    #[test]
    fn subdivision_trivial_fan() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        assert!(Fan::trivial(&c).is_subdivision_of(&c));
    }

    #[test]
    fn subdivision_split_quadric_cone() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        let f = fan(2, &[&[1, 0], &[1, 1], &[1, 2]], &[&[0, 1], &[1, 2]]);
        assert!(f.is_subdivision_of(&c));
        let other = cone(&[&[1, 0], &[0, 1]], 2);
        assert!(!f.is_subdivision_of(&other));
    }

    #[test]
    fn gen_set_examples() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(Fan::trivial(&c).gen_set().len(), 3);
        assert_eq!(eight_cell_fan().gen_set().len(), 6);
        assert!(Fan::empty(3).gen_set().is_empty());
    }

    #[test]
    fn eight_cell_fan_is_smooth_subdivision() {
        let f = eight_cell_fan();
        let c = cone(
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 2, 3]],
            4,
        );
        assert!(f.validate());
        assert!(f.is_smooth());
        assert!(f.is_subdivision_of(&c));
    }

    #[test]
    fn smooth_fan_examples() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        assert!(Fan::trivial(&c).is_smooth());
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3);
        assert!(!Fan::trivial(&c).is_smooth());
        assert!(eight_cell_fan().is_smooth());
    }

    #[test]
    fn restrict_examples() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        let trivial = Fan::trivial(&c);
        assert_eq!(trivial.restrict(&c).unwrap(), trivial);

        let f = fan(2, &[&[1, 0], &[1, 1], &[1, 2]], &[&[0, 1], &[1, 2]]);
        let cell0 = cone(&[&[1, 0], &[1, 1]], 2);
        let restricted = f.restrict(&cell0).unwrap();
        assert!(restricted.is_trivial_for(&cell0));

        // Restricting a finer subdivision to one cell of a coarser one
        // yields a subdivision of that cell.
        let big = cone(&[&[1, 0], &[0, 1]], 2);
        let fine = fan(
            2,
            &[&[1, 0], &[2, 1], &[1, 1], &[0, 1]],
            &[&[0, 1], &[1, 2], &[2, 3]],
        );
        assert!(fine.is_subdivision_of(&big));
        let half = cone(&[&[1, 0], &[1, 1]], 2);
        let restricted = fine.restrict(&half).unwrap();
        assert!(restricted.is_subdivision_of(&half));
        assert_eq!(restricted.maximal_cones().len(), 2);
    }

    #[test]
    fn stellar_subdivision_examples() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        let f = Fan::trivial(&c).stellar_subdivide(&v(&[1, 1])).unwrap();
        assert_eq!(f.maximal_cones().len(), 2);
        assert!(f.is_subdivision_of(&c));

        let c3 = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        let f3 = Fan::trivial(&c3).stellar_subdivide(&v(&[1, 1, 1])).unwrap();
        assert_eq!(f3.maximal_cones().len(), 3);
        assert!(f3.is_subdivision_of(&c3));
        assert!(f3.validate());

        // Subdividing at an existing ray of a simplicial fan is a no-op.
        let unchanged = f.stellar_subdivide(&v(&[1, 1])).unwrap();
        assert_eq!(unchanged, f);

        assert!(matches!(
            Fan::trivial(&c).stellar_subdivide(&v(&[-1, 0])),
            Err(ToricError::OutsideSupport)
        ));
    }

    #[test]
    fn refines_examples() {
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        let trivial = Fan::trivial(&c);
        let split = trivial.stellar_subdivide(&v(&[1, 1])).unwrap();
        assert!(split.refines(&trivial).unwrap());
        assert!(!trivial.refines(&split).unwrap());
        assert!(split.refines(&split).unwrap());

        // The two triangulations of the cone over the unit square do not
        // refine each other.
        let rays: Vec<&[i64]> = vec![&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]];
        let t1 = fan(3, &rays, &[&[0, 1, 2], &[1, 2, 3]]);
        let t2 = fan(3, &rays, &[&[0, 1, 3], &[0, 2, 3]]);
        assert!(!t1.refines(&t2).unwrap());
        assert!(!t2.refines(&t1).unwrap());

        // Different support is an error, not `false`.
        let other = Fan::trivial(&cone(&[&[1, 0], &[0, 1]], 2));
        assert!(matches!(
            split.refines(&other),
            Err(ToricError::SupportMismatch)
        ));

        // Transitivity along a chain of stellar subdivisions.
        let finer = split.stellar_subdivide(&v(&[2, 1])).unwrap();
        assert!(finer.refines(&split).unwrap());
        assert!(finer.refines(&trivial).unwrap());
    }

    #[test]
    fn crepant_examples() {
        let square = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3);
        let rays: Vec<&[i64]> = vec![&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]];
        let t1 = fan(3, &rays, &[&[0, 1, 2], &[1, 2, 3]]);
        assert!(t1.is_crepant(&square).unwrap());
        assert!(Fan::trivial(&square).is_crepant(&square).unwrap());

        // A resolution of the (1,1,3) axis cone passes through points off
        // the Gorenstein hyperplane.
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3);
        let res = fan(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3], &[1, 1, 1], &[1, 1, 2]],
            &[&[0, 1, 3], &[0, 3, 4], &[1, 3, 4], &[0, 2, 4], &[1, 2, 4]],
        );
        assert!(res.is_subdivision_of(&c));
        assert!(res.is_smooth());
        assert!(!res.is_crepant(&c).unwrap());
    }

    #[test]
    fn stellar_output_validates_and_refines_randomly() {
        let mut state = 0x6a09e667f3bcc909u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        while tested < 15 {
            let d = 2 + (next() % 2) as usize;
            let gens: Vec<LatticeVector> = (0..d)
                .map(|_| {
                    LatticeVector::new(
                        (0..d)
                            .map(|_| num_bigint::BigInt::from((next() % 7) as i64 - 3))
                            .collect(),
                    )
                })
                .collect();
            if gens.iter().any(|g| g.is_zero()) {
                continue;
            }
            let Ok(c) = Cone::new(&gens, d) else { continue };
            if !c.is_full_dimensional() || !c.is_simplicial() {
                continue;
            }
            let pts = c.parallelepiped_points().unwrap().nonzero_points();
            let Some(p) = pts.first() else { continue };
            let Ok(p) = primitive(p) else { continue };
            tested += 1;
            let f = Fan::trivial(&c);
            let g = f.stellar_subdivide(&p).unwrap();
            assert!(g.validate());
            assert!(g.refines(&f).unwrap());
            assert!(g.is_subdivision_of(&c));
        }
    }
}
