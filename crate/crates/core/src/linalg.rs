//! Exact linear algebra over the rationals.
//!
//! Elimination runs fraction-free on integer rows (denominators cleared per
//! row, content divided out after each update), and the result is returned
//! as a reduced row echelon form with unit pivots. Pivoting is deterministic:
//! the first nonzero row in the current column wins.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Reduced row echelon form of a set of vectors, i.e. a canonical basis of
/// their span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Fraction-free Gauss-Jordan elimination in place; returns pivot columns.
fn eliminate(rows: &mut Vec<Vec<BigInt>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let (head, rest) = rows.split_at_mut(r);
        let (pivot_row, tail) = rest.split_first_mut().expect("row r exists");
        let pivot_row = &*pivot_row;
        let others = head.iter_mut().chain(tail.iter_mut());
        for row in others {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &a - &b * y;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Echelon {
    pub fn empty(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I>(rows: I, ncols: usize) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[Scalar]>,
    {
        let mut int_rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), ncols, "row length does not match column count");
                clear_denominators(r)
            })
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = eliminate(&mut int_rows, ncols);
        let rows = int_rows
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = Scalar::from_integer(row[p].clone());
                row.into_iter().map(|x| Scalar::from_integer(x) / &lead).collect()
            })
            .collect();
        Echelon { ncols, rows, pivots }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the span: zero exactly when `v` is in it.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coefficients of `v` in terms of the echelon rows, if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= c * y;
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Same span?
    pub fn same_span(&self, other: &Echelon) -> bool {
        self == other
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Canonical basis of the sum of two spans.
    pub fn sum(&self, other: &Echelon) -> Echelon {
        Echelon::from_rows(self.rows.iter().chain(&other.rows), self.ncols)
    }
}

/// Rank of a rational matrix given by rows.
pub fn rank<R: AsRef<[Scalar]>>(rows: &[R], ncols: usize) -> usize {
    Echelon::from_rows(rows.iter().map(AsRef::as_ref), ncols).rank()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows; one vector per free
/// column, with a one in that column.
pub fn kernel<R: AsRef<[Scalar]>>(rows: &[R], ncols: usize) -> Vec<Vec<Scalar>> {
    let ech = Echelon::from_rows(rows.iter().map(AsRef::as_ref), ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A particular solution of `A x = b` (free variables set to zero).
pub fn solve<R: AsRef<[Scalar]>>(rows: &[R], rhs: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    assert_eq!(rows.len(), rhs.len());
    let augmented: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.as_ref().to_vec();
            v.push(b.clone());
            v
        })
        .collect();
    let ech = Echelon::from_rows(&augmented, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Transposes a list of column vectors into rows.
pub fn columns_to_rows(columns: &[Vec<Scalar>], nrows: usize) -> Vec<Vec<Scalar>> {
    let mut rows = vec![Vec::with_capacity(columns.len()); nrows];
    for col in columns {
        assert_eq!(col.len(), nrows);
        for (row, x) in rows.iter_mut().zip(col) {
            row.push(x.clone());
        }
    }
    rows
}

/// Makes the first nonzero entry positive and the entries coprime integers.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    let mut ints = clear_denominators(v);
    remove_content(&mut ints);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Scalar::from_integer).collect()
}
