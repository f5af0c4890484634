//! Exhaustive enumeration of subdivisions of a reference cone into cells
//! drawn from a precomputed candidate list.
//!
//! The search grows a cell complex facet by facet: every internal facet
//! of a placed cell must eventually be shared by exactly one further cell
//! on the opposite side, while boundary facets must lie on facets of the
//! reference cone. The open facet with the fewest compatible candidates
//! is always extended first, so forced steps are taken immediately and
//! dead branches are cut early. Exact volume accounting certifies that a
//! closed complex tiles the whole cone.
//!
//! Completeness: a complete run visits every subdivision of the reference
//! cone whose maximal cells come from the candidate list, each exactly
//! once (the branch is determined by the cell covering the current open
//! facet, and at the root by the lexicographically least cell at the
//! least ray).

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::{cone_volume, simplicial_volume, Cone};
use crate::error::{Result, ToricError};
use crate::lattice::{
    determinant, integer_kernel, solve_rational, subsets, IntMatrix, LatticeVector,
};
use crate::search::Budget;

pub(crate) struct CandidateCell {
    pub points: Vec<usize>,
    volume: BigRational,
    /// Facet key plus the side of the removed vertex w.r.t. the facet's
    /// canonical normal.
    facets: Vec<(Vec<usize>, i8)>,
}

struct FacetInfo {
    boundary: bool,
    members: Vec<(usize, i8)>,
}

pub(crate) struct CellSearch {
    pub cells: Vec<CandidateCell>,
    facets: BTreeMap<Vec<usize>, FacetInfo>,
    reference_volume: BigRational,
    root_point: usize,
}

pub(crate) struct EnumerationResult {
    pub complexes: Vec<Vec<usize>>,
    pub complete: bool,
    pub nodes: u64,
}

/// Assemble the candidate cells on `points` inside `reference`: subsets
/// of full rank (unimodular when requested) whose cone contains no other
/// configuration point. Foreign points anywhere in a cell would deny the
/// fan axioms once every point is a ray of the subdivision.
pub(crate) fn build_problem(
    reference: &Cone,
    points: &[LatticeVector],
    unimodular_only: bool,
) -> Result<CellSearch> {
    let d = reference.rank();
    if !reference.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let w = reference.positive_covector();
    let reference_volume = cone_volume(reference, &w)?;

    let root_ray = reference
        .rays()
        .iter()
        .min()
        .ok_or_else(|| ToricError::Internal("cone without rays".into()))?;
    let root_point = points
        .iter()
        .position(|p| p == root_ray)
        .ok_or_else(|| ToricError::Internal("reference ray missing from points".into()))?;

    let mut cells = Vec::new();
    for subset in subsets(points.len(), d) {
        let rows: Vec<LatticeVector> = subset.iter().map(|&i| points[i].clone()).collect();
        let det = determinant(&IntMatrix::from_rows(rows.clone())?)?;
        if det.is_zero() {
            continue;
        }
        if unimodular_only && !det.abs().is_one() {
            continue;
        }
        if !contains_foreign_point(&rows, &subset, points) {
            let volume = simplicial_volume(&rows, &w)?;
            cells.push(CandidateCell {
                points: subset,
                volume,
                facets: Vec::new(),
            });
        }
    }

    // Facet registry: canonical normal per facet key, membership with
    // sides, boundary classification against the reference facets.
    let mut facets: BTreeMap<Vec<usize>, FacetInfo> = BTreeMap::new();
    let mut normals: BTreeMap<Vec<usize>, LatticeVector> = BTreeMap::new();
    for cell_id in 0..cells.len() {
        let cell_points = cells[cell_id].points.clone();
        let mut local = Vec::new();
        for skip in 0..d {
            let mut key = cell_points.clone();
            let removed = key.remove(skip);
            let normal = normals.entry(key.clone()).or_insert_with(|| {
                let gens: Vec<LatticeVector> =
                    key.iter().map(|&i| points[i].clone()).collect();
                canonical_facet_normal(&gens)
            });
            let side_val = normal.dot(&points[removed]);
            debug_assert!(!side_val.is_zero());
            let side = if side_val.is_positive() { 1i8 } else { -1i8 };
            let info = facets.entry(key.clone()).or_insert_with(|| {
                let gens: Vec<LatticeVector> =
                    key.iter().map(|&i| points[i].clone()).collect();
                let boundary = reference
                    .facet_normals()
                    .iter()
                    .any(|nu| gens.iter().all(|g| nu.dot(g).is_zero()));
                FacetInfo {
                    boundary,
                    members: Vec::new(),
                }
            });
            info.members.push((cell_id, side));
            local.push((key, side));
        }
        cells[cell_id].facets = local;
    }

    Ok(CellSearch {
        cells,
        facets,
        reference_volume,
        root_point,
    })
}

fn contains_foreign_point(
    rows: &[LatticeVector],
    subset: &[usize],
    points: &[LatticeVector],
) -> bool {
    let d = rows.len();
    let cols: Vec<LatticeVector> = (0..d)
        .map(|j| LatticeVector::new(rows.iter().map(|r| r.get(j).clone()).collect()))
        .collect();
    let ut = IntMatrix::from_rows(cols).unwrap();
    for (i, p) in points.iter().enumerate() {
        if subset.contains(&i) {
            continue;
        }
        if let Some(lambda) = solve_rational(&ut, &p.to_rational()) {
            if lambda.coeffs().iter().all(|l| !l.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn canonical_facet_normal(gens: &[LatticeVector]) -> LatticeVector {
    let kernel = integer_kernel(&IntMatrix::from_rows(gens.to_vec()).unwrap());
    debug_assert_eq!(kernel.len(), 1, "facet of a nonsingular cell spans a hyperplane");
    let n = kernel.into_iter().next().unwrap();
    let flip = n
        .coords()
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if flip {
        n.neg()
    } else {
        n
    }
}

struct SearchState<'a> {
    problem: &'a CellSearch,
    placed: Vec<bool>,
    placed_list: Vec<usize>,
    forbidden: Vec<bool>,
    open: BTreeMap<Vec<usize>, i8>,
    closed: BTreeSet<Vec<usize>>,
    boundary_used: BTreeSet<Vec<usize>>,
    volume: BigRational,
    complexes: Vec<Vec<usize>>,
    nodes: u64,
    aborted: bool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

enum FacetUndo {
    Opened(Vec<usize>),
    Closed(Vec<usize>, i8),
    Boundary(Vec<usize>),
}

impl<'a> SearchState<'a> {
    fn budget_exceeded(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if self.nodes >= self.max_nodes {
            self.aborted = true;
            return true;
        }
        if self.nodes % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                    return true;
                }
            }
        }
        false
    }

    fn compatible(&self, cell_id: usize) -> bool {
        if self.placed[cell_id] || self.forbidden[cell_id] {
            return false;
        }
        let cell = &self.problem.cells[cell_id];
        if &self.volume + &cell.volume > self.problem.reference_volume {
            return false;
        }
        for (key, side) in &cell.facets {
            let info = &self.problem.facets[key];
            if info.boundary {
                if self.boundary_used.contains(key) {
                    return false;
                }
            } else if self.closed.contains(key) {
                return false;
            } else if let Some(required) = self.open.get(key) {
                if required != side {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, cell_id: usize) -> Vec<FacetUndo> {
        let cell = &self.problem.cells[cell_id];
        let mut journal = Vec::with_capacity(cell.facets.len());
        for (key, side) in &cell.facets {
            let info = &self.problem.facets[key];
            if info.boundary {
                self.boundary_used.insert(key.clone());
                journal.push(FacetUndo::Boundary(key.clone()));
            } else if let Some(&required) = self.open.get(key) {
                debug_assert_eq!(required, *side);
                self.open.remove(key);
                self.closed.insert(key.clone());
                journal.push(FacetUndo::Closed(key.clone(), required));
            } else {
                self.open.insert(key.clone(), -side);
                journal.push(FacetUndo::Opened(key.clone()));
            }
        }
        self.volume += &cell.volume;
        self.placed[cell_id] = true;
        self.placed_list.push(cell_id);
        self.nodes += 1;
        journal
    }

    fn unplace(&mut self, cell_id: usize, journal: Vec<FacetUndo>) {
        for entry in journal.into_iter().rev() {
            match entry {
                FacetUndo::Opened(key) => {
                    self.open.remove(&key);
                }
                FacetUndo::Closed(key, required) => {
                    self.closed.remove(&key);
                    self.open.insert(key, required);
                }
                FacetUndo::Boundary(key) => {
                    self.boundary_used.remove(&key);
                }
            }
        }
        self.volume -= &self.problem.cells[cell_id].volume;
        self.placed[cell_id] = false;
        self.placed_list.pop();
    }

    fn dfs(&mut self) {
        if self.budget_exceeded() {
            return;
        }
        if self.open.is_empty() {
            // A genuine subdivision closes only once the cells tile the
            // reference cone; anything smaller is a dead end.
            if self.volume == self.problem.reference_volume {
                let mut complex = self.placed_list.clone();
                complex.sort_unstable();
                self.complexes.push(complex);
            }
            return;
        }
        // Most constrained open facet first.
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for (key, &required) in &self.open {
            let mut cands = Vec::new();
            for &(cell_id, side) in &self.problem.facets[key].members {
                if side == required && self.compatible(cell_id) {
                    cands.push(cell_id);
                }
            }
            let better = match &best {
                None => true,
                Some((_, b)) => cands.len() < b.len(),
            };
            if better {
                let empty = cands.is_empty();
                best = Some((key.clone(), cands));
                if empty {
                    break;
                }
            }
        }
        let (_, candidates) = best.expect("open facet exists");
        for cell_id in candidates {
            let journal = self.place(cell_id);
            self.dfs();
            self.unplace(cell_id, journal);
            if self.aborted {
                return;
            }
        }
    }
}

/// Run the exhaustive search. `complete = false` only when the node or
/// wall-clock budget was exhausted.
pub(crate) fn enumerate(problem: &CellSearch, budget: &Budget) -> EnumerationResult {
    let deadline = budget
        .max_seconds
        .map(|secs| Instant::now() + std::time::Duration::from_secs(secs));
    let mut state = SearchState {
        problem,
        placed: vec![false; problem.cells.len()],
        placed_list: Vec::new(),
        forbidden: vec![false; problem.cells.len()],
        open: BTreeMap::new(),
        closed: BTreeSet::new(),
        boundary_used: BTreeSet::new(),
        volume: BigRational::zero(),
        complexes: Vec::new(),
        nodes: 0,
        aborted: false,
        max_nodes: budget.max_nodes,
        deadline,
    };

    // Partition the space by the least candidate cell at the least ray of
    // the reference cone: every subdivision covers that ray with a unique
    // lexicographically least cell.
    let roots: Vec<usize> = (0..problem.cells.len())
        .filter(|&i| problem.cells[i].points.contains(&problem.root_point))
        .collect();
    for (pos, &root) in roots.iter().enumerate() {
        for &earlier in &roots[..pos] {
            state.forbidden[earlier] = true;
        }
        if state.compatible(root) {
            let journal = state.place(root);
            state.dfs();
            state.unplace(root, journal);
        }
        for &earlier in &roots[..pos] {
            state.forbidden[earlier] = false;
        }
        if state.aborted {
            break;
        }
    }

    let mut complexes = state.complexes;
    complexes.sort();
    complexes.dedup();
    EnumerationResult {
        complexes,
        complete: !state.aborted,
        nodes: state.nodes,
    }
}
