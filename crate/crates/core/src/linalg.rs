//! Exact rational scalars, vectors, matrices, and the integer matrix
//! algorithms (fraction-free elimination, Smith normal form) the rest of
//! the engine is built on. No floating point anywhere in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Canonical wire encoding: "p/q", with "/q" omitted when q = 1.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad integer literal {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Dense rational vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector {
    entries: Vec<Rational>,
}

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![Rational::zero(); dim] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self { entries: v.iter().map(|&x| rat_int(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        RatVector::new(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        RatVector::new(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> RatVector {
        RatVector::new(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|a| a.is_zero())
    }

    /// Scale so entries are coprime integers; the first nonzero entry keeps
    /// its sign. Zero vector stays zero.
    pub fn primitive(&self) -> RatVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> =
            self.entries.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        RatVector::new(ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect())
    }

    /// Largest absolute entry (L-infinity norm).
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(rat_approx_f64).collect()
    }
}

impl std::ops::Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.entries[i]
    }
}

impl std::fmt::Debug for RatVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(e))?;
        }
        write!(f, ")")
    }
}

pub fn rat_approx_f64(r: &Rational) -> f64 {
    // Good enough for desk-scale magnitudes; exact arithmetic never consumes
    // the result.
    let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

/// Round a float to a rational with the given power-of-two denominator.
pub fn rat_from_f64_dyadic(x: f64, log2_den: u32) -> Rational {
    let den = BigInt::one() << log2_den;
    let scaled = x * (2f64).powi(log2_den as i32);
    let num = BigInt::from(scaled.round() as i128);
    Rational::new(num, den)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<RatVector>) -> Self {
        let cols = rows.first().map_or(0, |r| r.dim());
        assert!(rows.iter().all(|r| r.dim() == cols), "ragged rows");
        let data = rows.into_iter().flat_map(|r| r.entries).collect();
        Self { rows: 0, cols, data }.with_rows_from_data()
    }

    fn with_rows_from_data(mut self) -> Self {
        self.rows = if self.cols == 0 { 0 } else { self.data.len() / self.cols };
        self
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| rat_int(x)))
            .collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RatVector {
        RatVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// Exact rank via fraction-free (Bareiss) elimination on the
    /// integer-scaled rows.
    pub fn rank(&self) -> usize {
        let (ech, pivots) = integer_echelon(self.scaled_integer_rows());
        let _ = ech;
        pivots.len()
    }

    /// Basis of the right null space, each vector primitive integer.
    /// Empty iff rank = cols.
    pub fn kernel_basis(&self) -> Vec<RatVector> {
        let (ech, pivot_cols) = integer_echelon(self.scaled_integer_rows());
        let rank = pivot_cols.len();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut x = vec![Rational::zero(); self.cols];
            x[fc] = Rational::one();
            // Back-substitution over the rationals.
            for i in (0..rank).rev() {
                let pc = pivot_cols[i];
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !ech[i][j].is_zero() && !x[j].is_zero() {
                        acc += Rational::from_integer(ech[i][j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Rational::from_integer(ech[i][pc].clone());
            }
            basis.push(RatVector::new(x).primitive());
        }
        basis
    }

    /// Rows scaled to coprime integers (kernel and rank preserved).
    fn scaled_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let prim = self.row(i).primitive();
                prim.entries.into_iter().map(|r| r.numer().clone()).collect()
            })
            .collect()
    }
}

/// Bareiss fraction-free row echelon. Returns the echelon rows and the
/// pivot column indices; entries stay integral throughout.
fn integer_echelon(mut m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    (m, pivot_cols)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    if !add.is_zero() {
                        let cur = out.at(i, j) + add;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        let data = self.data.iter().map(|x| Rational::from_integer(x.clone())).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        integer_echelon(rows).1.len()
    }

    /// Exact determinant by Bareiss elimination (square matrices).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> =
            (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(sel) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, sel);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

/// Result of a Smith normal form computation: `left * m * right` is
/// diagonal with the invariant factors (positive, each dividing the next)
/// on the diagonal; `left` and `right` are unimodular.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Smith normal form with transforms. Pivot selection takes the nonzero
/// entry of minimal absolute value in the active block.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<BigInt>> =
        (0..rows).map(|i| (0..cols).map(|j| m.at(i, j).clone()).collect()).collect();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let swap_rows = |a: &mut Vec<Vec<BigInt>>, l: &mut IntMatrix, i: usize, j: usize| {
        a.swap(i, j);
        for c in 0..l.ncols() {
            let tmp = l.at(i, c).clone();
            l.set(i, c, l.at(j, c).clone());
            l.set(j, c, tmp);
        }
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, r: &mut IntMatrix, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for c in 0..r.nrows() {
            let tmp = r.at(c, i).clone();
            r.set(c, i, r.at(c, j).clone());
            r.set(c, j, tmp);
        }
    };
    // row[i] -= q * row[t]
    let row_sub = |a: &mut Vec<Vec<BigInt>>, l: &mut IntMatrix, i: usize, t: usize, q: &BigInt| {
        for c in 0..a[t].len() {
            let sub = q * &a[t][c];
            a[i][c] -= sub;
        }
        for c in 0..l.ncols() {
            let sub = q * l.at(t, c);
            let val = l.at(i, c) - sub;
            l.set(i, c, val);
        }
    };
    // col[j] -= q * col[t]
    let col_sub = |a: &mut Vec<Vec<BigInt>>, r: &mut IntMatrix, j: usize, t: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let sub = q * &row[t];
            row[j] -= sub;
        }
        for c in 0..r.nrows() {
            let sub = q * r.at(c, t);
            let val = r.at(c, j) - sub;
            r.set(c, j, val);
        }
    };

    let limit = rows.min(cols);
    for t in 0..limit {
        'pivot: loop {
            // Minimal |nonzero| pivot in the active block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if a[i][j].abs() < a[bi][bj].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Active block entirely zero; diagonalization complete.
                break 'pivot;
            };
            if pi != t {
                swap_rows(&mut a, &mut left, t, pi);
            }
            if pj != t {
                swap_cols(&mut a, &mut right, t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    row_sub(&mut a, &mut left, i, t, &q);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    col_sub(&mut a, &mut right, j, t, &q);
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Divisibility sweep: pivot must divide the rest of the block.
            let mut fixed = false;
            'sweep: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        let one = BigInt::from(-1);
                        row_sub(&mut a, &mut left, t, i, &one); // row[t] += row[i]
                        fixed = true;
                        break 'sweep;
                    }
                }
            }
            if !fixed {
                break 'pivot;
            }
        }
        if a[t][t].is_zero() {
            break;
        }
        if a[t][t].is_negative() {
            for c in 0..cols {
                let v = -a[t][c].clone();
                a[t][c] = v;
            }
            for c in 0..left.ncols() {
                let val = -left.at(t, c).clone();
                left.set(t, c, val);
            }
        }
    }

    let factors: Vec<BigInt> = (0..limit)
        .map(|t| a[t][t].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithNormalForm { factors, left, right }
}
