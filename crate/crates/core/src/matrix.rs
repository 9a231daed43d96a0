//! Endomorphisms of `V = Q^n`, affine maps, and subspaces of `gl(V)`.
//!
//! Column `j` of a matrix is the image of the basis vector `e_j`. Acting on
//! coordinate functions, a matrix `A` induces the derivation
//! `D_A = sum_{i,j} A_ij x_j d/dx_i` (see [`crate::derivation`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Echelon};
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

/// Square `n x n` rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

/// An element of `End(V)`.
pub type EndomorphismMatrix = Matrix;

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    /// Matrix unit `E_ij` (a one in row `i`, column `j`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[i * n + j] = Scalar::one();
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            check_dim(n, r.len())?;
            entries.extend(r);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| scalar::int(x)).collect()).collect())
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn from_flat(n: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), n * n);
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries as a vector of length `n^2`.
    pub fn flatten(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self.get(i, i).clone()).fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.n, other.n)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB - BA`.
    pub fn bracket(&self, other: &Matrix) -> Result<Matrix> {
        Ok(&self.checked_mul(other)? - &other.checked_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::identity(self.n), |acc, _| &acc * self)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_dim(self.n, v.len())?;
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows(), self.n)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// `A^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u32).is_zero()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(Matrix::dim).sum();
        let mut m = Matrix::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    /// Rows as lists of exact fraction strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| self.row(i).iter().map(scalar::format_scalar).collect()).collect()
    }

    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| scalar::parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_string_rows().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Matrix { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        Matrix { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix dimension mismatch")
    }
}

/// `v -> L v + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vec<Scalar>,
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Vec<Scalar>) -> Result<Self> {
        check_dim(linear.dim(), translation.len())?;
        Ok(AffineMap { linear, translation })
    }

    pub fn linear(linear: Matrix) -> Self {
        let n = linear.dim();
        AffineMap { linear, translation: vec![Scalar::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(Zero::is_zero)
    }

    /// Permutation of coordinates: `e_j -> e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Matrix::zero(n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, Scalar::one());
        }
        Self::linear(m)
    }

    /// Coordinate functions pulled back along the map: `x_i -> sum_j L_ij x_j + t_i`.
    pub fn coordinate_images(&self) -> Vec<Polynomial> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut p = Polynomial::constant(n, self.translation[i].clone());
                for j in 0..n {
                    let c = self.linear.get(i, j);
                    if !c.is_zero() {
                        p = &p + &Polynomial::var(n, j).scale(c);
                    }
                }
                p
            })
            .collect()
    }

    /// `f o M`, i.e. `v -> f(L v + t)`.
    pub fn pull_back(&self, f: &Polynomial) -> Result<Polynomial> {
        check_dim(self.dim(), f.nvars())?;
        f.compose(&self.coordinate_images())
    }

    pub fn ensure_invertible(&self) -> Result<()> {
        if self.linear.is_invertible() {
            Ok(())
        } else {
            Err(Error::SingularMap)
        }
    }
}

/// A subspace of `gl(n)`, stored as the reduced echelon form of the
/// flattened matrices. The basis is canonical: two spaces are equal exactly
/// when their bases are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSpace {
    n: usize,
    echelon: Echelon,
}

impl MatrixSpace {
    pub fn zero(n: usize) -> Self {
        MatrixSpace { n, echelon: Echelon::empty(n * n) }
    }

    /// Span of arbitrary (possibly dependent) matrices.
    pub fn span<'a>(n: usize, mats: impl IntoIterator<Item = &'a Matrix>) -> Self {
        let rows: Vec<&[Scalar]> = mats
            .into_iter()
            .map(|m| {
                assert_eq!(m.dim(), n, "matrix dimension mismatch");
                m.flatten()
            })
            .collect();
        MatrixSpace { n, echelon: Echelon::from_rows(rows, n * n) }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.echelon.rows().iter().map(|r| Matrix::from_flat(self.n, r.clone())).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.echelon.contains(m.flatten())
    }

    /// Coordinates with respect to [`MatrixSpace::basis`].
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.echelon.coordinates(m.flatten())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        let mut flat = vec![Scalar::zero(); self.n * self.n];
        for (row, c) in self.echelon.rows().iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in flat.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        Matrix::from_flat(self.n, flat)
    }

    pub fn is_subspace_of(&self, other: &MatrixSpace) -> bool {
        self.echelon.is_subspace_of(&other.echelon)
    }

    pub fn sum(&self, other: &MatrixSpace) -> MatrixSpace {
        MatrixSpace { n: self.n, echelon: self.echelon.sum(&other.echelon) }
    }

    pub fn reduce(&self, m: &Matrix) -> Matrix {
        Matrix::from_flat(self.n, self.echelon.reduce(m.flatten()))
    }
}
