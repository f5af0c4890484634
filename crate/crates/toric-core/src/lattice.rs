//! Exact integer and rational linear algebra over the ambient lattice.
//!
//! Everything here works with arbitrary-precision integers; intermediate
//! values in eliminations stay integral (Bareiss) or exactly rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};

/// A point of the ambient lattice `Z^d`, with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigInt::zero(); rank],
        }
    }

    /// The `i`-th standard basis vector in rank `rank`.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[i] = BigInt::one();
        LatticeVector { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), other.rank());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), other.rank());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Gcd of all coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        g
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }
}

impl std::fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Rectangular integer matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: Vec<LatticeVector>,
    cols: usize,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<LatticeVector>) -> Result<Self> {
        let cols = rows.first().map(|r| r.rank()).unwrap_or(0);
        if rows.iter().any(|r| r.rank() != cols) {
            return Err(ToricError::RaggedMatrix);
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n).map(|i| LatticeVector::basis(n, i)).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &LatticeVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.rows[i].get(j)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let coords = (0..other.ncols())
                    .map(|j| {
                        (0..other.nrows())
                            .map(|k| r.get(k) * other.entry(k, j))
                            .sum()
                    })
                    .collect();
                LatticeVector::new(coords)
            })
            .collect();
        IntMatrix {
            rows,
            cols: other.ncols(),
        }
    }
}

/// Exact covector with rational coefficients; evaluates lattice vectors
/// to exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCovector {
    coeffs: Vec<BigRational>,
}

impl RationalCovector {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RationalCovector { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn evaluate(&self, v: &LatticeVector) -> BigRational {
        debug_assert_eq!(self.rank(), v.rank());
        self.coeffs
            .iter()
            .zip(v.coords())
            .map(|(c, x)| c * BigRational::from_integer(x.clone()))
            .sum()
    }

    /// Lcm of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }
}

/// Exact determinant of a square integer matrix by fraction-free
/// (Bareiss) elimination; every intermediate value stays integral.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(ToricError::NonSquareMatrix {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// Divide a nonzero vector by the gcd of its coordinates.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    if v.is_zero() {
        return Err(ToricError::ZeroVector);
    }
    let g = v.content();
    if g.is_one() {
        return Ok(v.clone());
    }
    Ok(LatticeVector::new(
        v.coords().iter().map(|c| c / &g).collect(),
    ))
}

/// Column-style Hermite form: returns `(H, U)` with `m * U = H`, `U`
/// unimodular and `H` in column echelon form with positive pivots.
pub fn hermite_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut h: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut r = vec![BigInt::zero(); cols];
            r[i] = BigInt::one();
            r
        })
        .collect();

    let col_swap = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for r in h.iter_mut() {
            r.swap(a, b);
        }
        for r in u.iter_mut() {
            r.swap(a, b);
        }
    };
    // col_j += q * col_i
    let col_add = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, j: usize, i: usize, q: &BigInt| {
        for r in h.iter_mut() {
            let add = &r[i] * q;
            r[j] += add;
        }
        for r in u.iter_mut() {
            let add = &r[i] * q;
            r[j] += add;
        }
    };
    let col_neg = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, j: usize| {
        for r in h.iter_mut() {
            r[j] = -r[j].clone();
        }
        for r in u.iter_mut() {
            r[j] = -r[j].clone();
        }
    };

    let mut pivot_col = 0usize;
    for i in 0..rows {
        if pivot_col >= cols {
            break;
        }
        // Clear row i to a single nonzero entry in pivot_col.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if !h[i][j].is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if h[i][j].abs() < h[i][b].abs() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            if b != pivot_col {
                col_swap(&mut h, &mut u, b, pivot_col);
            }
            let mut done = true;
            for j in pivot_col + 1..cols {
                if !h[i][j].is_zero() {
                    let q = -(&h[i][j] / &h[i][pivot_col]);
                    col_add(&mut h, &mut u, j, pivot_col, &q);
                    if !h[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[i][pivot_col].is_zero() {
            continue;
        }
        if h[i][pivot_col].is_negative() {
            col_neg(&mut h, &mut u, pivot_col);
        }
        // Reduce entries left of the pivot in this row into [0, pivot).
        for j in 0..pivot_col {
            if !h[i][j].is_zero() {
                let q = -h[i][j].div_floor(&h[i][pivot_col]);
                col_add(&mut h, &mut u, j, pivot_col, &q);
            }
        }
        pivot_col += 1;
    }

    let h = IntMatrix::from_rows(h.into_iter().map(LatticeVector::new).collect()).unwrap();
    let u = IntMatrix::from_rows(u.into_iter().map(LatticeVector::new).collect()).unwrap();
    (h, u)
}

/// Diagonalization `P * m * Q = D` by unimodular row/column operations.
/// Returns the positive diagonal entries (one per nonzero pivot) together
/// with `Q^{-1}`, whose first `diag.len()` rows form a lattice basis of
/// the saturation of the row span of `m`.
pub fn diagonalize(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut qinv: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut r = vec![BigInt::zero(); cols];
            r[i] = BigInt::one();
            r
        })
        .collect();

    let n = rows.min(cols);
    let mut diag = Vec::new();
    for t in 0..n {
        // Find entry of minimal absolute value in the trailing block.
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        pivot = match pivot {
                            None => Some((i, j)),
                            Some((pi, pj)) => {
                                if a[i][j].abs() < a[pi][pj].abs() {
                                    Some((i, j))
                                } else {
                                    Some((pi, pj))
                                }
                            }
                        };
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish_diag(diag, qinv);
            };
            a.swap(t, pi);
            if pj != t {
                for r in a.iter_mut() {
                    r.swap(t, pj);
                }
                qinv.swap(t, pj); // inverse of a column swap is the row swap
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let sub = &a[t][j] * &q;
                        a[i][j] -= sub;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    // col_j -= q * col_t; inverse op on qinv: row_t += q * row_j
                    for r in a.iter_mut() {
                        let sub = &r[t] * &q;
                        r[j] -= sub;
                    }
                    let add: Vec<BigInt> = qinv[j].iter().map(|x| x * &q).collect();
                    for (x, y) in qinv[t].iter_mut().zip(add) {
                        *x += y;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a[t][t].is_negative() {
            // Negate column t; inverse: negate row t of qinv.
            for r in a.iter_mut() {
                r[t] = -r[t].clone();
            }
            for x in qinv[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(a[t][t].clone());
    }
    finish_diag(diag, qinv)
}

fn finish_diag(diag: Vec<BigInt>, qinv: Vec<Vec<BigInt>>) -> (Vec<BigInt>, IntMatrix) {
    let qinv = IntMatrix::from_rows(qinv.into_iter().map(LatticeVector::new).collect()).unwrap();
    (diag, qinv)
}

/// Lattice basis of the saturation `span_R(rows) ∩ Z^d`.
pub fn saturation_basis(m: &IntMatrix) -> Vec<LatticeVector> {
    let (diag, qinv) = diagonalize(m);
    qinv.rows()[..diag.len()].to_vec()
}

/// Exact solution `x` of `m * x = rhs` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve_rational(m: &IntMatrix, rhs: &[BigRational]) -> Option<RationalCovector> {
    assert_eq!(m.nrows(), rhs.len());
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<BigRational>> = m
        .rows
        .iter()
        .map(|r| r.to_rational())
        .collect();
    let mut b: Vec<BigRational> = rhs.to_vec();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].clone();
        for j in col..cols {
            a[row][j] = &a[row][j] / &inv;
        }
        b[row] = &b[row] / &inv;
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let sub = &a[row][j] * &f;
                    a[i][j] -= sub;
                }
                let sub = &b[row] * &f;
                b[i] -= sub;
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    // Consistency: zero rows must have zero rhs.
    for i in row..rows {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for &(r, c) in &pivots {
        x[c] = b[r].clone();
    }
    Some(RationalCovector::new(x))
}

/// Primitive integer basis of the null space `{x : m * x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<BigRational>> = m.rows.iter().map(|r| r.to_rational()).collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].clone();
        for j in 0..cols {
            a[row][j] = &a[row][j] / &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let sub = &a[row][j] * &f;
                    a[i][j] -= sub;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut x = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (col, p) in pivot_of_col.iter().enumerate() {
            if let Some(r) = p {
                x[col] = -a[*r][free].clone();
            }
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

/// Rank of the row span, computed exactly.
pub fn rational_rank(vectors: &[LatticeVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].rank();
    let mut a: Vec<Vec<BigRational>> = vectors.iter().map(|r| r.to_rational()).collect();
    let rows = a.len();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].clone();
        for j in col..cols {
            a[row][j] = &a[row][j] / &inv;
        }
        for i in row + 1..rows {
            if !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    let sub = &a[row][j] * &f;
                    a[i][j] -= sub;
                }
            }
        }
        row += 1;
        if row == rows {
            break;
        }
    }
    row
}

/// Scale a rational vector to a primitive integer one.
pub fn clear_denominators(x: &[BigRational]) -> LatticeVector {
    let mut l = BigInt::one();
    for c in x {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = x
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    let v = LatticeVector::new(ints);
    if v.is_zero() {
        v
    } else {
        primitive(&v).unwrap()
    }
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance the odometer.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
