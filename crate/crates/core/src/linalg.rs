//! Exact linear algebra over the rationals and the integers.
//!
//! Hermite normal form convention (used everywhere in the crate): row style,
//! zero rows at the bottom, every pivot positive, and every entry above a
//! pivot reduced into `[0, pivot)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

/// A column vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&v| Rational::from_i64(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A dense row-major matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", RationalVector(self.row(i).to_vec()))?;
        }
        f.write_str("]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rs: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
            .collect();
        Self::from_rows(&rs)
    }

    pub fn from_integer_rows(rows: &[Vec<Integer>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            entries.extend(r.iter().cloned().map(Rational::from_integer));
        }
        RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &RationalVector) -> Result<RationalVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    /// Integer rows, if every entry is an integer.
    pub fn to_integer_rows(&self) -> Result<Vec<Vec<Integer>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_integer().ok_or(Error::NotIntegral))
                    .collect()
            })
            .collect()
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &RationalMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    // Clear denominators row by row, then divide the integer determinant.
    let mut scale = Integer::one();
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let l = m
            .row(i)
            .iter()
            .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
        scale = &scale * &l;
        let lr = Rational::from_integer(l);
        rows.push(
            m.row(i)
                .iter()
                .map(|x| (x * &lr).to_integer().expect("cleared denominator"))
                .collect::<Vec<_>>(),
        );
    }
    Ok(Rational::new(det_integer(rows), scale))
}

/// Bareiss determinant of a square integer matrix given by rows.
pub fn det_integer(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::one();
    }
    let mut sign = 1;
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn det_i128_checked(a: &mut [Vec<i128>]) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Determinant of a square matrix of machine integers given by rows.
pub fn det_i64<R: AsRef<[i64]>>(rows: &[R]) -> Integer {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&v| v as i128).collect())
        .collect();
    if let Some(d) = det_i128_checked(&mut a) {
        return Integer::from_i128(d);
    }
    det_integer(
        rows.iter()
            .map(|r| r.as_ref().iter().map(|&v| Integer::from_i64(v)).collect())
            .collect(),
    )
}

/// Solves `a·x = b`. Returns `None` when the system is inconsistent; for
/// underdetermined systems the free variables are set to zero.
pub fn solve_linear(a: &RationalMatrix, b: &RationalVector) -> Result<Option<RationalVector>> {
    if a.rows != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.dim(),
        });
    }
    let (n, m) = (a.rows, a.cols);
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b.0[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..n).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for x in aug[row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = aug[row].clone();
        for (i, r) in aug.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if aug[row..].iter().any(|r| !r[m].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][m].clone();
    }
    Ok(Some(RationalVector(x)))
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                for j in col..m {
                    let v = &a[i][j] - &(&f * &a[r][j]);
                    a[i][j] = v;
                }
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Rank of an integer matrix.
pub fn rank_i64<R: AsRef<[i64]>>(rows: &[R]) -> usize {
    let rs: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.as_ref().iter().map(|&v| Rational::from_i64(v)).collect())
        .collect();
    rank(&rs)
}

/// Row-style Hermite normal form of an integer matrix: returns `(h, u)` with
/// `h = u·m` and `u` unimodular.
pub fn hnf_integer(m: &[Vec<Integer>], cols: usize) -> (Vec<Vec<Integer>>, Vec<Vec<Integer>>) {
    let n = m.len();
    let mut h: Vec<Vec<Integer>> = m.to_vec();
    let mut u: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Integer::one() } else { Integer::zero() })
                .collect()
        })
        .collect();
    let mut prow = 0;
    for col in 0..cols {
        if prow == n {
            break;
        }
        for i in prow + 1..n {
            if h[i][col].is_zero() {
                continue;
            }
            let a = h[prow][col].clone();
            let b = h[i][col].clone();
            let (g, x, y) = Integer::extended_gcd(&a, &b);
            let (bg, ag) = (-(&b / &g), &a / &g);
            for mat in [&mut h, &mut u] {
                let (rp, ri) = (mat[prow].clone(), mat[i].clone());
                mat[prow] = rp
                    .iter()
                    .zip(&ri)
                    .map(|(p, q)| &(&x * p) + &(&y * q))
                    .collect();
                mat[i] = rp
                    .iter()
                    .zip(&ri)
                    .map(|(p, q)| &(&bg * p) + &(&ag * q))
                    .collect();
            }
        }
        if h[prow][col].is_zero() {
            continue;
        }
        if h[prow][col].is_negative() {
            for mat in [&mut h, &mut u] {
                mat[prow] = mat[prow].iter().map(|v| -v).collect();
            }
        }
        let p = h[prow][col].clone();
        for i in 0..prow {
            let q = h[i][col].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            for mat in [&mut h, &mut u] {
                let rp = mat[prow].clone();
                mat[i] = mat[i].iter().zip(&rp).map(|(a, b)| a - &(&q * b)).collect();
            }
        }
        prow += 1;
    }
    (h, u)
}

/// Hermite normal form of a matrix with integer entries; see the module
/// documentation for the convention.
pub fn hermite_normal_form(m: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    let rows = m.to_integer_rows()?;
    let (h, u) = hnf_integer(&rows, m.cols);
    Ok((
        RationalMatrix::from_integer_rows(&h, m.cols),
        RationalMatrix::from_integer_rows(&u, m.rows),
    ))
}

/// Nonzero rows of the Hermite normal form: a basis of the row lattice.
pub fn lattice_basis(rows: &[Vec<Integer>], cols: usize) -> Vec<Vec<Integer>> {
    let (h, _) = hnf_integer(rows, cols);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of the integer vectors `x` with `rows · x = 0`. The basis spans a
/// saturated lattice.
pub fn integer_kernel(rows: &[Vec<Integer>], cols: usize) -> Vec<Vec<Integer>> {
    // Row-reduce the transpose; rows of u that map to zero span the kernel.
    let t: Vec<Vec<Integer>> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let (h, u) = hnf_integer(&t, rows.len());
    h.iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(Integer::is_zero))
        .map(|(_, ur)| ur)
        .collect()
}

/// Gcd of the maximal minors of a `k×n` integer matrix of rank `k`; zero if
/// the rank is smaller. Equals the index of the row lattice in its
/// saturation.
pub fn maximal_minor_gcd(rows: &[Vec<Integer>], cols: usize) -> Integer {
    let k = rows.len();
    if k == 0 {
        return Integer::one();
    }
    let t: Vec<Vec<Integer>> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let (h, _) = hnf_integer(&t, k);
    let mut acc = Integer::one();
    for (i, row) in h.iter().take(k).enumerate() {
        if row[i].is_zero() {
            return Integer::zero();
        }
        acc = &acc * &row[i];
    }
    acc.abs()
}

/// Whether `v` is an integer combination of the rows of `basis`. The rows
/// must span a lattice of full rank.
pub fn lattice_membership(v: &RationalVector, basis: &RationalMatrix) -> Result<bool> {
    if v.dim() != basis.cols {
        return Err(Error::DimensionMismatch {
            expected: basis.cols,
            found: v.dim(),
        });
    }
    let d = basis
        .entries
        .iter()
        .chain(&v.0)
        .fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let dr = Rational::from_integer(d);
    let scaled = |x: &Rational| (x * &dr).to_integer().expect("cleared denominator");
    let rows: Vec<Vec<Integer>> = (0..basis.rows)
        .map(|i| basis.row(i).iter().map(scaled).collect())
        .collect();
    let h = lattice_basis(&rows, basis.cols);
    if h.len() < basis.cols {
        return Err(Error::RankDeficient {
            rank: h.len(),
            needed: basis.cols,
        });
    }
    let mut rest: Vec<Integer> = v.0.iter().map(scaled).collect();
    for row in &h {
        let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if !rest[c].is_multiple_of(&row[c]) {
            return Ok(false);
        }
        let q = &rest[c] / &row[c];
        for (x, y) in rest.iter_mut().zip(row) {
            *x = &*x - &(&q * y);
        }
    }
    Ok(rest.iter().all(Integer::is_zero))
}
