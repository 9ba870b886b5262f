//! Dense exact matrices over `Q(i)` and monomial (signed-permutation with
//! phases `i^k`) matrices, which is the shape every gamma product takes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Gauss};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gauss>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let z = &self[(r, c)];
                    format!("{}+{}i", scalar::rational_string(&z.re), scalar::rational_string(&z.im))
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Gauss;
    fn index(&self, (r, c): (usize, usize)) -> &Gauss {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Gauss {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Gauss::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Gauss::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Gauss) -> Self {
        Matrix::identity(n).scale(c)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Gauss) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Gauss>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> Vec<Gauss> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn scale(&self, s: &Gauss) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Gauss {
        (0..self.rows.min(self.cols)).fold(Gauss::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mul_vec(&self, v: &[Gauss]) -> Vec<Gauss> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Gauss::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product, with row index `a * other.rows + b`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            &self[(r / other.rows, c / other.cols)] * &other[(r % other.rows, c % other.cols)]
        })
    }

    /// Sum of `|a_rc|^2`, exactly.
    pub fn frobenius_sqr(&self) -> num_rational::BigRational {
        self.data.iter().map(scalar::norm_sqr).fold(Zero::zero(), |a, b: num_rational::BigRational| a + b)
    }

    /// `tr(self^† other)`, the Frobenius inner product conjugate-linear in `self`.
    pub fn frobenius_dot(&self, other: &Matrix) -> Gauss {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Gauss::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| scalar::to_c64(&self[(r, c)]))
    }

    /// Row echelon reduction; returns the rank.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = Gauss::one() / &m[(rank, c)];
            for r in rank + 1..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for k in c..m.cols {
                    if !m[(rank, k)].is_zero() {
                        let t = &f * &m[(rank, k)];
                        m[(r, k)] -= t;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn det(&self) -> Gauss {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Gauss::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                return Gauss::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let inv = Gauss::one() / &m[(c, c)];
            det *= &m[(c, c)];
            for r in c + 1..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for k in c..m.cols {
                    if !m[(c, k)].is_zero() {
                        let t = &f * &m[(c, k)];
                        m[(r, k)] -= t;
                    }
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible(format!("{}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[(r, c)].is_zero())
                .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
            m.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pivot = Gauss::one() / &m[(c, c)];
            for k in 0..n {
                m[(c, k)] = &m[(c, k)] * &pivot;
                inv[(c, k)] = &inv[(c, k)] * &pivot;
            }
            for r in 0..n {
                if r == c || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for k in 0..n {
                    if !m[(c, k)].is_zero() {
                        let t = &f * &m[(c, k)];
                        m[(r, k)] -= t;
                    }
                    if !inv[(c, k)].is_zero() {
                        let t = &f * &inv[(c, k)];
                        inv[(r, k)] -= t;
                    }
                }
            }
        }
        Ok(inv)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not chain");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&scalar::int(-1))
    }
}

/// `M e_c = i^{phase[c]} e_{perm[c]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<u8>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        Monomial { perm: (0..d).collect(), phase: vec![0; d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.dim(), rhs.dim());
        let perm = rhs.perm.iter().map(|&p| self.perm[p]).collect();
        let phase = rhs
            .perm
            .iter()
            .zip(&rhs.phase)
            .map(|(&p, &ph)| (ph + self.phase[p]) % 4)
            .collect();
        Monomial { perm, phase }
    }

    /// Multiplies every entry by `i^k`.
    pub fn rotate(&self, k: u8) -> Monomial {
        Monomial { perm: self.perm.clone(), phase: self.phase.iter().map(|p| (p + k) % 4).collect() }
    }

    pub fn kron(&self, rhs: &Monomial) -> Monomial {
        let db = rhs.dim();
        let mut perm = Vec::with_capacity(self.dim() * db);
        let mut phase = Vec::with_capacity(self.dim() * db);
        for a in 0..self.dim() {
            for b in 0..db {
                perm.push(self.perm[a] * db + rhs.perm[b]);
                phase.push((self.phase[a] + rhs.phase[b]) % 4);
            }
        }
        Monomial { perm, phase }
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Monomial {
        Monomial { perm: self.perm.clone(), phase: self.phase.iter().map(|p| (4 - p) % 4).collect() }
    }

    /// `Some(k)` when the matrix equals `i^k · Id`.
    pub fn scalar_phase(&self) -> Option<u8> {
        let k = *self.phase.first()?;
        (self.perm.iter().enumerate().all(|(c, &p)| p == c) && self.phase.iter().all(|&p| p == k))
            .then_some(k)
    }

    pub fn to_matrix(&self) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for c in 0..d {
            m[(self.perm[c], c)] = scalar::quarter_turn(self.phase[c]);
        }
        m
    }

    pub fn apply(&self, v: &[Gauss]) -> Vec<Gauss> {
        let mut out = vec![Gauss::zero(); self.dim()];
        for (c, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.perm[c]] = x * scalar::quarter_turn(self.phase[c]);
            }
        }
        out
    }
}
