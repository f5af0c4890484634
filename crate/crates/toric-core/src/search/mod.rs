//! Resolution construction and exhaustive resolution search.
//!
//! Non-existence is only ever reported together with `complete = true`:
//! an exhausted budget is a distinct, inconclusive outcome.

mod enumerate;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::{pulling_triangulation, Cone};
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::geom::dual_extreme_rays;
use crate::hilbert::hilbert_basis;
use crate::lattice::{primitive, LatticeVector};

pub(crate) use enumerate::{build_problem, enumerate};

/// Maximum ambient rank accepted by the search operations.
pub const SEARCH_RANK_CAP: usize = 4;

/// Node and wall-clock limits for a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_seconds: Option<u64>,
}

impl Budget {
    pub fn new(max_nodes: u64, max_seconds: u64) -> Budget {
        Budget {
            max_nodes,
            max_seconds: Some(max_seconds),
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_nodes: 10_000_000,
            max_seconds: Some(300),
        }
    }
}

/// Result of a complete enumeration: the fans found (canonical form,
/// deduplicated, sorted) and whether the whole finite space was
/// exhausted. `complete` together with an empty list is a non-existence
/// certificate.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub fans: Vec<Fan>,
    pub complete: bool,
    pub nodes_explored: u64,
    pub budget: Budget,
}

fn require_search_rank(c: &Cone) -> Result<()> {
    if !c.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    if c.rank() > SEARCH_RANK_CAP {
        return Err(ToricError::RankUnsupported {
            required: SEARCH_RANK_CAP,
            found: c.rank(),
        });
    }
    Ok(())
}

/// A smooth subdivision of the cone: triangulate with the existing rays,
/// then repeatedly star-subdivide a non-smooth cell at its parallelepiped
/// point of least height (ties broken lexicographically). Terminates
/// because every split replaces a cell by cells of strictly smaller
/// multiplicity.
pub fn resolve(c: &Cone) -> Result<Fan> {
    if !c.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let cells = pulling_triangulation(c)?;
    let cones: Vec<Cone> = cells
        .iter()
        .map(|cell| {
            let gens: Vec<LatticeVector> = cell.iter().map(|&i| c.rays()[i].clone()).collect();
            Cone::new(&gens, c.rank())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut fan = Fan::from_cones(c.rank(), cones);
    for _ in 0..100_000 {
        let target = fan.cones().iter().find_map(|cell| {
            match cell.multiplicity() {
                Ok(m) if m.is_one() => None,
                Ok(_) => Some(cell.clone()),
                Err(_) => Some(cell.clone()),
            }
        });
        let Some(cell) = target else {
            debug_assert!(fan.is_smooth());
            return Ok(fan);
        };
        let l = cell.height_functional()?;
        let pts = cell.parallelepiped_points()?.nonzero_points();
        let point = pts
            .iter()
            .min_by(|a, b| l.evaluate(a).cmp(&l.evaluate(b)).then_with(|| a.cmp(b)))
            .ok_or_else(|| ToricError::Internal("singular cell without interior points".into()))?;
        let point = primitive(point)?;
        fan = fan.stellar_subdivide(&point)?;
    }
    Err(ToricError::Internal(
        "resolution did not terminate within the step bound".into(),
    ))
}

/// All smooth subdivisions of the cone whose ray set is exactly its
/// Hilbert basis, by exhaustive facet-frontier search over unimodular
/// cells on the basis points.
pub fn enumerate_hilbert_basis_resolutions(c: &Cone, budget: &Budget) -> Result<SearchOutcome> {
    require_search_rank(c)?;
    let basis = hilbert_basis(c)?;
    let points = basis.elements().to_vec();
    let problem = build_problem(c, &points, true)?;
    let result = enumerate(&problem, budget);

    let mut fans = Vec::new();
    for complex in &result.complexes {
        let cones: Vec<Cone> = complex
            .iter()
            .map(|&cell_id| {
                let gens: Vec<LatticeVector> = problem.cells[cell_id]
                    .points
                    .iter()
                    .map(|&i| points[i].clone())
                    .collect();
                Cone::new(&gens, c.rank())
            })
            .collect::<Result<Vec<_>>>()?;
        let fan = Fan::from_cones(c.rank(), cones);
        // The frontier invariants already imply these; check them anyway
        // before certifying.
        if !fan.is_subdivision_of(c) || !fan.validate() || !fan.is_smooth() {
            return Err(ToricError::Internal(
                "search produced an invalid candidate".into(),
            ));
        }
        let mut gens = fan.gen_set();
        gens.sort();
        let mut expected = points.clone();
        expected.sort();
        if gens != expected {
            continue;
        }
        fans.push(fan);
    }
    fans.sort_by(|a, b| {
        (a.rays(), a.maximal_cones()).cmp(&(b.rays(), b.maximal_cones()))
    });
    fans.dedup();
    Ok(SearchOutcome {
        fans,
        complete: result.complete,
        nodes_explored: result.nodes,
        budget: budget.clone(),
    })
}

/// Moderation test: every full-dimensional cell is smooth and its height
/// hyperplane `{l_τ = 1}` meets every ray of the reference cone, i.e.
/// `l_τ` is strictly positive on every ray generator of `c`.
pub fn is_moderate(f: &Fan, c: &Cone) -> Result<bool> {
    if !f.is_subdivision_of(c) {
        return Err(ToricError::NotSubdivision);
    }
    for cell in f.cones() {
        if !cell.is_simplicial() || !cell.multiplicity()?.is_one() {
            return Ok(false);
        }
        let l = cell.height_functional()?;
        for ray in c.rays() {
            if l.evaluate(ray) <= BigRational::zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Moderate resolutions are Hilbert basis resolutions, so filtering the
/// complete enumeration keeps the completeness certificate.
pub fn find_moderate_resolutions(c: &Cone, budget: &Budget) -> Result<SearchOutcome> {
    let mut outcome = enumerate_hilbert_basis_resolutions(c, budget)?;
    let mut moderate = Vec::new();
    for fan in outcome.fans {
        if is_moderate(&fan, c)? {
            moderate.push(fan);
        }
    }
    outcome.fans = moderate;
    Ok(outcome)
}

/// The canonical subdivision: the fan over the bounded faces of the
/// convex hull of the nonzero lattice points of the cone (equivalently of
/// its Hilbert basis plus the recession cone), computed by facet
/// enumeration of the homogenization.
pub fn canonical_subdivision(c: &Cone) -> Result<Fan> {
    require_search_rank(c)?;
    let d = c.rank();
    let basis = hilbert_basis(c)?;
    let mut homogenized: Vec<LatticeVector> = Vec::new();
    for h in basis.elements() {
        let mut coords = h.coords().to_vec();
        coords.push(1.into());
        homogenized.push(LatticeVector::new(coords));
    }
    let hilbert_count = homogenized.len();
    for r in c.rays() {
        let mut coords = r.coords().to_vec();
        coords.push(0.into());
        homogenized.push(LatticeVector::new(coords));
    }

    let mut cones = Vec::new();
    for phi in dual_extreme_rays(&homogenized, d + 1) {
        let tight: Vec<usize> = (0..homogenized.len())
            .filter(|&i| phi.dot(&homogenized[i]).is_zero())
            .collect();
        // Bounded faces touch no recession generator.
        if tight.iter().any(|&i| i >= hilbert_count) {
            continue;
        }
        if tight.is_empty() {
            continue;
        }
        let gens: Vec<LatticeVector> = tight
            .iter()
            .map(|&i| basis.elements()[i].clone())
            .collect();
        cones.push(Cone::new(&gens, d)?);
    }
    let fan = Fan::from_cones(d, cones);
    if !fan.is_subdivision_of(c) {
        return Err(ToricError::Internal(
            "bounded hull faces do not tile the cone".into(),
        ));
    }
    Ok(fan)
}

/// All subdivisions of the canonical model into simplicial terminal cones
/// with generators on the bounded hull faces: per bounded face, every
/// triangulation by lattice-point-empty triangles, combined across faces
/// (shared edges are subdivided at all their lattice points on both
/// sides, so the per-face choices glue).
pub fn minimal_terminal_models_3d(c: &Cone) -> Result<Vec<Fan>> {
    if c.rank() != 3 {
        return Err(ToricError::RankUnsupported {
            required: 3,
            found: c.rank(),
        });
    }
    if !c.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let canonical = canonical_subdivision(c)?;
    let mut per_face: Vec<Vec<Vec<Cone>>> = Vec::new();
    for face_cone in canonical.cones() {
        let (m, _) = face_cone.gorenstein_functional().ok_or_else(|| {
            ToricError::Internal("hull face generators share no hyperplane".into())
        })?;
        let points = face_lattice_points(face_cone, &m)?;
        let problem = build_problem(face_cone, &points, false)?;
        let result = enumerate(&problem, &Budget::default());
        if !result.complete {
            return Err(ToricError::Internal(
                "face triangulation enumeration exhausted its budget".into(),
            ));
        }
        let mut choices = Vec::new();
        for complex in &result.complexes {
            let cones: Vec<Cone> = complex
                .iter()
                .map(|&cell_id| {
                    let gens: Vec<LatticeVector> = problem.cells[cell_id]
                        .points
                        .iter()
                        .map(|&i| points[i].clone())
                        .collect();
                    Cone::new(&gens, c.rank())
                })
                .collect::<Result<Vec<_>>>()?;
            choices.push(cones);
        }
        if choices.is_empty() {
            return Err(ToricError::Internal(
                "a bounded hull face admits no empty triangulation".into(),
            ));
        }
        per_face.push(choices);
    }

    let mut fans = vec![Vec::<Cone>::new()];
    for choices in per_face {
        let mut extended = Vec::new();
        for partial in &fans {
            for choice in &choices {
                let mut cells = partial.clone();
                cells.extend(choice.iter().cloned());
                extended.push(cells);
            }
        }
        fans = extended;
    }
    let mut out: Vec<Fan> = fans
        .into_iter()
        .map(|cells| Fan::from_cones(c.rank(), cells))
        .collect();
    out.sort_by(|a, b| (a.rays(), a.maximal_cones()).cmp(&(b.rays(), b.maximal_cones())));
    out.dedup();
    for fan in &out {
        debug_assert!(fan.is_subdivision_of(c));
    }
    Ok(out)
}

/// Lattice points of the bounded face carried by `face_cone`: points of
/// the cone at height one under the face functional.
fn face_lattice_points(
    face_cone: &Cone,
    m: &crate::lattice::RationalCovector,
) -> Result<Vec<LatticeVector>> {
    let d = face_cone.rank();
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for r in face_cone.rays() {
        for j in 0..d {
            let x = i64::try_from(r.get(j))
                .map_err(|_| ToricError::Internal("face vertex exceeds i64".into()))?;
            lo[j] = lo[j].min(x).min(0);
            hi[j] = hi[j].max(x).max(0);
        }
    }
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'enumerate: loop {
        let p = LatticeVector::from_i64(&cursor);
        if !p.is_zero() && face_cone.contains(&p) && m.evaluate(&p) == BigRational::one() {
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
    out.sort();
    Ok(out)
}
