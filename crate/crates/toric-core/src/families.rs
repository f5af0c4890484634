//! The parametric cone families behind the built-in non-existence
//! certificates, with machine checks of every determinant identity and
//! forcing step they rely on.
//!
//! Three families are supported: the axis family (standard basis vectors
//! plus one coefficient vector), its rank-3 terminal slice `(1, p, q)`,
//! and the rank-4 Gorenstein terminal family `(1, a, r−a, r)`. All checks
//! recompute the claimed uniqueness properties by direct determinant
//! evaluation rather than trusting closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::lattice::{determinant, rational_rank, IntMatrix, LatticeVector, RationalCovector};

/// Parameters of the built-in cone families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyParams {
    /// `Cone(e_1, …, e_{d−1}, (a_1, …, a_d))` with ascending coefficients,
    /// `1 ≤ a_1 ≤ d−2`, `a_{d−1} < a_d` and primitive coefficient vector.
    Axis { coeffs: Vec<i64> },
    /// `Cone(e_1, e_2, (1, p, q))` with `gcd(p, q) = 1`.
    TerminalPq { p: i64, q: i64 },
    /// `Cone(e_1, e_2, e_3, (1, a, r−a, r))` with `gcd(a, r) = 1` and
    /// `1 ≤ a ≤ r−a < r`.
    Gorenstein4d { a: i64, r: i64 },
}

impl FamilyParams {
    /// The coefficient vector of the distinguished generator, in axis form.
    fn axis_coeffs(&self) -> Result<Vec<i64>> {
        match self {
            FamilyParams::Axis { coeffs } => {
                validate_axis(coeffs)?;
                Ok(coeffs.clone())
            }
            FamilyParams::TerminalPq { p, q } => {
                validate_terminal_pq(*p, *q)?;
                Ok(vec![1, *p, *q])
            }
            FamilyParams::Gorenstein4d { a, r } => {
                validate_gorenstein_4d(*a, *r)?;
                Ok(vec![1, *a, *r - *a, *r])
            }
        }
    }
}

fn constraint(kind: &'static str, detail: String) -> ToricError {
    ToricError::FamilyConstraint { kind, detail }
}

fn validate_axis(coeffs: &[i64]) -> Result<()> {
    let d = coeffs.len();
    if d < 3 {
        return Err(constraint("range", format!("need rank at least 3, got {d}")));
    }
    for w in coeffs.windows(2) {
        if w[0] > w[1] {
            return Err(constraint(
                "ordering",
                format!("coefficients must ascend, got {:?}", coeffs),
            ));
        }
    }
    if coeffs[d - 2] >= coeffs[d - 1] {
        return Err(constraint(
            "ordering",
            format!("last coefficient must strictly dominate, got {:?}", coeffs),
        ));
    }
    if coeffs[0] < 1 || coeffs[0] > (d as i64) - 2 {
        return Err(constraint(
            "range",
            format!("first coefficient must lie in 1..={} for rank {d}", d - 2),
        ));
    }
    let mut g = 0i64;
    for &c in coeffs {
        g = g.gcd(&c);
    }
    if g != 1 {
        return Err(constraint(
            "gcd",
            format!("coefficient vector must be primitive, gcd is {g}"),
        ));
    }
    Ok(())
}

fn validate_terminal_pq(p: i64, q: i64) -> Result<()> {
    if q < 1 || p < 0 || p > q {
        return Err(constraint("range", format!("need 0 ≤ p ≤ q with q ≥ 1, got ({p},{q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(constraint("gcd", format!("gcd(p, q) must be 1, got ({p},{q})")));
    }
    Ok(())
}

fn validate_gorenstein_4d(a: i64, r: i64) -> Result<()> {
    if a < 1 || a > r - a || r - a >= r {
        return Err(constraint(
            "range",
            format!("need 1 ≤ a ≤ r−a < r, got ({a},{r})"),
        ));
    }
    if a.gcd(&r) != 1 {
        return Err(constraint("gcd", format!("gcd(a, r) must be 1, got ({a},{r})")));
    }
    Ok(())
}

/// The literal cone of the family.
pub fn family_cone(params: &FamilyParams) -> Result<Cone> {
    let coeffs = params.axis_coeffs()?;
    let d = coeffs.len();
    let mut gens: Vec<LatticeVector> = (0..d - 1).map(|i| LatticeVector::basis(d, i)).collect();
    gens.push(LatticeVector::from_i64(&coeffs));
    Cone::new(&gens, d)
}

/// The nonzero parallelepiped points in closed form:
/// `p_l = (⌈a_1 l/a_d⌉, …, ⌈a_{d−1} l/a_d⌉, l)` for `1 ≤ l ≤ a_d − 1`.
pub fn closed_form_points(params: &FamilyParams) -> Result<Vec<LatticeVector>> {
    let coeffs = params.axis_coeffs()?;
    let d = coeffs.len();
    let last = coeffs[d - 1];
    let mut out = Vec::new();
    for l in 1..last {
        let mut coords: Vec<BigInt> = (0..d - 1)
            .map(|i| BigInt::from(ceil_div(coeffs[i] * l, last)))
            .collect();
        coords.push(BigInt::from(l));
        out.push(LatticeVector::new(coords));
    }
    Ok(out)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    Integer::div_ceil(&a, &b)
}

/// The obstruction certificate for the axis family: the smooth facet
/// spanned by the basis vectors admits a unique unimodular completion,
/// whose height hyperplane misses the ray through the coefficient vector
/// whenever `value ≤ 0`.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub forced_cell: Cone,
    pub hyperplane: RationalCovector,
    pub missed_ray: LatticeVector,
    pub value: BigRational,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        self.value <= BigRational::zero()
    }
}

/// Compute the obstruction certificate, re-verifying the determinant
/// facts it relies on: `det(e_1, …, e_{d−1}, p_l) = l` for every `l`, so
/// only `p_1` completes the facet unimodularly, and the cone itself has
/// determinant `a_d > 1`.
pub fn hyperplane_obstruction(params: &FamilyParams) -> Result<ObstructionReport> {
    let coeffs = params.axis_coeffs()?;
    let d = coeffs.len();
    let last = coeffs[d - 1];
    let points = closed_form_points(params)?;

    let mut basis_rows: Vec<LatticeVector> =
        (0..d - 1).map(|i| LatticeVector::basis(d, i)).collect();
    for (idx, p) in points.iter().enumerate() {
        let l = idx as i64 + 1;
        let mut rows = basis_rows.clone();
        rows.push(p.clone());
        let det = determinant(&IntMatrix::from_rows(rows)?)?;
        if det != BigInt::from(l) {
            return Err(ToricError::CheckFailed(format!(
                "completion determinant at l={l} is {det}, expected {l}"
            )));
        }
    }
    let axis = LatticeVector::from_i64(&coeffs);
    {
        let mut rows = basis_rows.clone();
        rows.push(axis.clone());
        let det = determinant(&IntMatrix::from_rows(rows)?)?;
        if det != BigInt::from(last) || last == 1 {
            return Err(ToricError::CheckFailed(
                "family cone must be singular with determinant a_d".into(),
            ));
        }
    }

    basis_rows.push(points[0].clone());
    let forced_cell = Cone::new(&basis_rows, d)?;
    let hyperplane = forced_cell.height_functional()?;
    let value = hyperplane.evaluate(&axis);
    // Closed form of the same number: Σ a_i − (d−2)·a_d.
    let closed: i64 = coeffs[..d - 1].iter().sum::<i64>() - (d as i64 - 2) * last;
    if value != BigRational::from_integer(closed.into()) {
        return Err(ToricError::CheckFailed(format!(
            "hyperplane value {value} disagrees with closed form {closed}"
        )));
    }
    Ok(ObstructionReport {
        forced_cell,
        hyperplane,
        missed_ray: axis,
        value,
    })
}

fn e(i: usize) -> LatticeVector {
    LatticeVector::basis(4, i)
}

fn family_vertex(a: i64, r: i64) -> LatticeVector {
    LatticeVector::from_i64(&[1, a, r - a, r])
}

fn p_point(a: i64, r: i64, l: i64) -> LatticeVector {
    LatticeVector::from_i64(&[
        ceil_div(l, r),
        ceil_div(a * l, r),
        ceil_div((r - a) * l, r),
        l,
    ])
}

fn det4(rows: [LatticeVector; 4]) -> Result<BigInt> {
    determinant(&IntMatrix::from_rows(rows.to_vec())?)
}

/// Verify all six determinant identities of the rank-4 family, both by
/// direct determinant evaluation and by their ceiling closed forms.
pub fn determinant_identities(a: i64, r: i64, l: i64, lp: i64) -> Result<bool> {
    if r < 2 || a.gcd(&r) != 1 {
        return Err(constraint("gcd", format!("gcd(a, r) must be 1, got ({a},{r})")));
    }
    if !(1..r).contains(&l) || !(1..r).contains(&lp) {
        return Err(constraint(
            "range",
            format!("need 1 ≤ l, l' ≤ r−1, got l={l}, l'={lp}"),
        ));
    }
    let e4 = family_vertex(a, r);
    let pl = p_point(a, r, l);
    let plp = p_point(a, r, lp);
    let ceil_al = ceil_div(a * l, r);
    let ceil_ral = ceil_div((r - a) * l, r);
    let ceil_ralp = ceil_div((r - a) * lp, r);

    let checks: [(BigInt, i64); 6] = [
        (det4([e(0), e(1), e(2), pl.clone()])?, l),
        (det4([pl.clone(), e(1), e(2), plp.clone()])?, lp - l),
        (det4([pl.clone(), e(1), e(2), e4.clone()])?, r - l),
        (det4([e(0), pl.clone(), e(2), e4.clone()])?, r * ceil_al - a * l),
        (
            det4([e(0), pl.clone(), plp.clone(), e4.clone()])?,
            r * (ceil_ralp - ceil_ral) - (r - a) * (lp - l),
        ),
        (det4([e(0), e(1), pl.clone(), e4.clone()])?, r * ceil_ral - (r - a) * l),
    ];
    for (det, closed) in &checks {
        if det != &BigInt::from(*closed) {
            return Ok(false);
        }
    }
    // The fourth identity has a second closed form.
    let alt = r + (r - a) * l - r * ceil_ral;
    if checks[3].0 != BigInt::from(alt) {
        return Ok(false);
    }
    Ok(true)
}

/// One step of a forced chain: the facet shared with the previous cell,
/// and the unique next vertex.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub cell: Vec<LatticeVector>,
    pub forced_vertex: LatticeVector,
}

/// Certificate that the rank-4 family cone admits no Hilbert basis
/// resolution: starting from each of the two smooth boundary facets, the
/// unimodular completions are forced into a chain, and the two chains
/// clash in a ray that is a face of neither.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub a: i64,
    pub r: i64,
    /// `b` with `a·b ≡ 1 (mod r)`.
    pub b: i64,
    /// `l_i ≡ b·i (mod r)`, for `i = 1, …, r−1`.
    pub l_sequence: Vec<i64>,
    /// Forced cells through the facet `(e1, e4)`.
    pub chain_through_e1_e4: Vec<ChainStep>,
    /// Forced cells through the facet `(e2, e3)`.
    pub chain_through_e2_e3: Vec<ChainStep>,
    /// The two clashing two-dimensional cones and their intersection ray.
    pub clash_cone_a: [LatticeVector; 2],
    pub clash_cone_b: [LatticeVector; 2],
    pub clash_ray: LatticeVector,
}

/// Run the forced-chain argument for `(a, r)` with `gcd(a, r) = 1`,
/// `1 < a < r−a < r` and odd `r`, re-verifying every uniqueness claim by
/// evaluating determinants over all candidate vertices.
pub fn forced_chain(a: i64, r: i64) -> Result<ChainReport> {
    if r % 2 == 0 {
        return Err(constraint("range", format!("r must be odd, got {r}")));
    }
    if a <= 1 {
        return Err(constraint(
            "range",
            format!("need 1 < a (the a = 1 cones admit resolutions), got a={a}"),
        ));
    }
    if !(a < r - a && r - a < r) {
        return Err(constraint("range", format!("need 1 < a < r−a < r, got ({a},{r})")));
    }
    if a.gcd(&r) != 1 {
        return Err(constraint("gcd", format!("gcd(a, r) must be 1, got ({a},{r})")));
    }

    let b = (1..r)
        .find(|&b| (a * b).rem_euclid(r) == 1)
        .ok_or_else(|| ToricError::CheckFailed("no modular inverse".into()))?;
    if b == 1 || b == r - 1 {
        return Err(ToricError::CheckFailed(
            "the two chains would coincide".into(),
        ));
    }
    let l_sequence: Vec<i64> = (1..r).map(|i| (b * i).rem_euclid(r)).collect();

    let e4 = family_vertex(a, r);
    // Possible cell vertices in any Hilbert basis resolution: the basis
    // is contained in the generators plus the parallelepiped points.
    let candidates: Vec<LatticeVector> = (0..3)
        .map(e)
        .chain(std::iter::once(e4.clone()))
        .chain((1..r).map(|l| p_point(a, r, l)))
        .collect();
    let l_at = |i: i64| -> LatticeVector { p_point(a, r, l_sequence[(i - 1) as usize]) };

    // Chain through (e1, e4): step i completes the facet
    // Cone(e1, x_i, e4), x_1 = e2 and x_i = p_{l_{i−1}} afterwards. The
    // first facet sits on the boundary (oriented by the interior seed
    // e3); later ones separate off the previous cell's free vertex.
    let mut chain_a = Vec::new();
    for i in 1..=r {
        let x_i = if i == 1 { e(1) } else { l_at(i - 1) };
        let shared = [e(0), x_i, e4.clone()];
        let (seed, boundary) = match i {
            1 => (e(2), true),
            2 => (e(1), false),
            _ => (l_at(i - 2), false),
        };
        let forced = unique_completion(&shared, &seed, boundary, &candidates)?;
        let expected = if i == r { e(2) } else { l_at(i) };
        if forced != expected {
            return Err(ToricError::CheckFailed(format!(
                "chain through (e1,e4) forced {forced:?} at step {i}, expected {expected:?}"
            )));
        }
        let mut cell = shared.to_vec();
        cell.push(forced.clone());
        chain_a.push(ChainStep {
            cell,
            forced_vertex: forced,
        });
    }

    // Chain through (e2, e3): step i completes Cone(x_i, e2, e3) with
    // x_1 = e1 and x_i = p_{i−1} afterwards.
    let mut chain_b = Vec::new();
    for i in 1..=r {
        let x_i = if i == 1 { e(0) } else { p_point(a, r, i - 1) };
        let shared = [x_i, e(1), e(2)];
        let (seed, boundary) = match i {
            1 => (e4.clone(), true),
            2 => (e(0), false),
            _ => (p_point(a, r, i - 2), false),
        };
        let forced = unique_completion(&shared, &seed, boundary, &candidates)?;
        let expected = if i == r { e4.clone() } else { p_point(a, r, i) };
        if forced != expected {
            return Err(ToricError::CheckFailed(format!(
                "chain through (e2,e3) forced {forced:?} at step {i}, expected {expected:?}"
            )));
        }
        let mut cell = shared.to_vec();
        cell.push(forced.clone());
        chain_b.push(ChainStep {
            cell,
            forced_vertex: forced,
        });
    }

    // The clash: both chains contain a two-dimensional cone through the
    // same interior ray, but with different generators.
    let half = (r - 1) / 2;
    let pa1 = p_point(a, r, l_sequence[(half - 1) as usize]);
    let pa2 = p_point(a, r, l_sequence[half as usize]);
    let pb1 = p_point(a, r, half);
    let pb2 = p_point(a, r, half + 1);
    if [&pa1, &pa2] == [&pb1, &pb2] || [&pa1, &pa2] == [&pb2, &pb1] {
        return Err(ToricError::CheckFailed("clash cones coincide".into()));
    }
    let sum_a = pa1.add(&pa2);
    let sum_b = pb1.add(&pb2);
    let explicit = LatticeVector::from_i64(&[2, a + 1, r - a + 1, r]);
    let gen_sum = e(0).add(&e(1)).add(&e(2)).add(&e4);
    if sum_a != sum_b || sum_a != explicit || sum_a != gen_sum {
        return Err(ToricError::CheckFailed(
            "clash ray identities do not hold".into(),
        ));
    }
    // The spans of the two cones intersect in a line, so the cones meet
    // exactly in the ray through the common sum; that ray is a face of
    // neither (it is interior to both).
    let span_rank = rational_rank(&[pa1.clone(), pa2.clone(), pb1.clone(), pb2.clone()]);
    if span_rank != 3 {
        return Err(ToricError::CheckFailed(format!(
            "clash spans intersect in dimension {}, expected a line",
            4 - span_rank
        )));
    }
    for g in [&pa1, &pa2, &pb1, &pb2] {
        if colinear(g, &sum_a) {
            return Err(ToricError::CheckFailed(
                "clash ray degenerates to a generator".into(),
            ));
        }
    }

    Ok(ChainReport {
        a,
        r,
        b,
        l_sequence,
        chain_through_e1_e4: chain_a,
        chain_through_e2_e3: chain_b,
        clash_cone_a: [pa1, pa2],
        clash_cone_b: [pb1, pb2],
        clash_ray: explicit,
    })
}

/// Among all candidate vertices, exactly one completes the given smooth
/// facet to a unimodular cell on the required side. For a boundary facet
/// the required side is the one carrying the interior seed; for an
/// internal facet it is the side opposite the previous cell's free
/// vertex. The sign test alone rules the previous vertex out.
fn unique_completion(
    shared: &[LatticeVector; 3],
    seed: &LatticeVector,
    boundary_start: bool,
    candidates: &[LatticeVector],
) -> Result<LatticeVector> {
    let orientation = |x: &LatticeVector| -> Result<BigInt> {
        det4([
            shared[0].clone(),
            shared[1].clone(),
            shared[2].clone(),
            x.clone(),
        ])
    };
    let seed_sign = orientation(seed)?;
    if seed_sign.is_zero() {
        return Err(ToricError::CheckFailed("degenerate orientation seed".into()));
    }
    let want_positive = if boundary_start {
        seed_sign.is_positive()
    } else {
        !seed_sign.is_positive()
    };

    let mut found: Option<LatticeVector> = None;
    for cand in candidates {
        if shared.contains(cand) {
            continue;
        }
        let det = orientation(cand)?;
        let unimodular_on_side = if want_positive {
            det.is_one()
        } else {
            det == BigInt::from(-1)
        };
        if unimodular_on_side {
            if let Some(existing) = &found {
                return Err(ToricError::CheckFailed(format!(
                    "completion of {shared:?} is not unique: {existing:?} and {cand:?}"
                )));
            }
            found = Some(cand.clone());
        }
    }
    found.ok_or_else(|| {
        ToricError::CheckFailed(format!("facet {shared:?} admits no unimodular completion"))
    })
}

fn colinear(a: &LatticeVector, b: &LatticeVector) -> bool {
    rational_rank(&[a.clone(), b.clone()]) <= 1
}
