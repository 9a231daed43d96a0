//! Brute-force linear systems assembled straight from the definitions.
//!
//! Uses only polynomial arithmetic from the crate; elimination, spanning sets
//! and constraint assembly are all local.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use nullcone::{Monomial, Polynomial};

pub type Q = BigRational;

/// Gauss-Jordan basis of a row space.
pub struct RowSpace {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(width: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let mut s = RowSpace { rows: Vec::new(), pivots: Vec::new() };
        for v in vectors {
            assert_eq!(v.len(), width);
            s.insert(v);
        }
        s
    }

    pub fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = Q::one() / v[p].clone();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &c * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Null space of the linear map whose columns are `columns`.
pub fn null_space(columns: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let k = columns.len();
    if k == 0 {
        return Vec::new();
    }
    let m = columns[0].len();
    // Rows of [C^T | I]; rows whose C-part vanishes give the kernel.
    let mut work: Vec<(Vec<Q>, Vec<Q>)> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = vec![Q::zero(); k];
            e[i] = Q::one();
            (c.clone(), e)
        })
        .collect();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..k).find(|&r| !work[r].0[col].is_zero()) else { continue };
        work.swap(row, p);
        let (head, tail) = work.split_at_mut(row + 1);
        let pivot = &head[row];
        for other in tail.iter_mut() {
            if other.0[col].is_zero() {
                continue;
            }
            let c = other.0[col].clone() / pivot.0[col].clone();
            for (x, y) in other.0.iter_mut().zip(&pivot.0) {
                *x -= &c * y;
            }
            for (x, y) in other.1.iter_mut().zip(&pivot.1) {
                *x -= &c * y;
            }
        }
        row += 1;
    }
    work.into_iter().skip(row).map(|(_, e)| e).collect()
}

pub fn exponent_vectors(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn monomial(exps: &[u32]) -> Polynomial {
    Polynomial::monomial(Monomial::new(exps.to_vec()), Q::one())
}

fn degree(p: &Polynomial) -> usize {
    p.terms().map(|(m, _)| m.exponents().iter().map(|&e| e as usize).sum()).max().unwrap_or(0)
}

/// Coordinates of polynomials in a shared monomial basis.
struct Coordinates {
    index: BTreeMap<Vec<u32>, usize>,
}

impl Coordinates {
    fn up_to(n: usize, top: usize) -> Self {
        let mut index = BTreeMap::new();
        for d in 0..=top {
            for e in exponent_vectors(n, d) {
                let k = index.len();
                index.insert(e, k);
            }
        }
        Coordinates { index }
    }

    fn of_degree(n: usize, d: usize) -> Self {
        let index = exponent_vectors(n, d).into_iter().enumerate().map(|(k, e)| (e, k)).collect();
        Coordinates { index }
    }

    fn vector(&self, p: &Polynomial) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[self.index[m.exponents()]] += c;
        }
        v
    }
}

fn var(n: usize, i: usize) -> Polynomial {
    let mut e = vec![0; n];
    e[i] = 1;
    monomial(&e)
}

/// `x_j * d/dx_i (f)`, the image of `f` under the unit field `E_ij`.
fn unit_image(n: usize, i: usize, j: usize, f: &Polynomial) -> Polynomial {
    &var(n, j) * &f.partial_derivative(i).unwrap()
}

/// `{A : D_A p = 0 for every p}`.
pub fn annihilator_dim(n: usize, gens: &[Polynomial]) -> usize {
    let top = gens.iter().map(degree).max().unwrap_or(0);
    let coords = Coordinates::up_to(n, top);
    let columns: Vec<Vec<Q>> = (0..n * n)
        .map(|u| gens.iter().flat_map(|p| coords.vector(&unit_image(n, u / n, u % n, p))).collect())
        .collect();
    null_space(&columns).len()
}

/// `{A : D_A p_k in I_{deg p_k}}` with `I` generated by homogeneous `gens`.
pub fn ideal_stabilizer_dim(n: usize, gens: &[Polynomial]) -> usize {
    let mut residual_columns: Vec<Vec<Q>> = vec![Vec::new(); n * n];
    for p in gens {
        let d = degree(p);
        let coords = Coordinates::of_degree(n, d);
        let mut span = Vec::new();
        for q in gens {
            let dq = degree(q);
            if dq <= d {
                for e in exponent_vectors(n, d - dq) {
                    span.push(coords.vector(&(&monomial(&e) * q)));
                }
            }
        }
        let space = RowSpace::new(coords.index.len(), span);
        for (u, col) in residual_columns.iter_mut().enumerate() {
            col.extend(space.reduce(coords.vector(&unit_image(n, u / n, u % n, p))));
        }
    }
    null_space(&residual_columns).len()
}

#[derive(Debug, PartialEq, Eq)]
pub struct AffineCounts {
    pub dimension: usize,
    pub translation_rank: usize,
    pub linear_dimension: usize,
}

/// Fields `sum_i (A x + b)_i d/dx_i` sending each `p_k - c_k` into the span of
/// `m (p_l - c_l)` with `deg m + deg p_l <= cap`.
pub fn affine_counts(n: usize, gens: &[Polynomial], consts: &[Q], cap: usize) -> AffineCounts {
    let coords = Coordinates::up_to(n, cap);
    let width = coords.index.len();
    let elements: Vec<Polynomial> = gens
        .iter()
        .zip(consts)
        .map(|(p, c)| p - &Polynomial::constant(n, c.clone()))
        .collect();
    let mut span = Vec::new();
    for (p, f) in gens.iter().zip(&elements) {
        let dp = degree(p);
        for d in 0..=cap.saturating_sub(dp) {
            if dp + d > cap {
                continue;
            }
            for e in exponent_vectors(n, d) {
                span.push(coords.vector(&(&monomial(&e) * f)));
            }
        }
    }
    let space = RowSpace::new(width, span);
    let unknowns = n * n + n;
    let mut columns: Vec<Vec<Q>> = vec![Vec::new(); unknowns];
    for f in &elements {
        for (u, col) in columns.iter_mut().enumerate() {
            let image = if u < n * n {
                unit_image(n, u / n, u % n, f)
            } else {
                f.partial_derivative(u - n * n).unwrap()
            };
            col.extend(space.reduce(coords.vector(&image)));
        }
    }
    let kernel = null_space(&columns);
    let translations = RowSpace::new(n, kernel.iter().map(|v| v[n * n..].to_vec()));
    let linear = null_space(&columns[..n * n]).len();
    AffineCounts { dimension: kernel.len(), translation_rank: translations.rank(), linear_dimension: linear }
}

/// Monomials of degree `d` divisible by none of `gens` (exponent vectors).
pub fn standard_monomial_count(n: usize, gens: &[Vec<u32>], d: usize) -> usize {
    exponent_vectors(n, d)
        .into_iter()
        .filter(|e| !gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b)))
        .count()
}

/// Coefficients of `prod (1 - t^{d_i}) / (1 - t)^n` up to `t^bound`.
pub fn complete_intersection_series(n: usize, degrees: &[usize], bound: usize) -> Vec<i64> {
    let mut s = vec![0i64; bound + 1];
    s[0] = 1;
    for &d in degrees {
        for k in (d..=bound).rev() {
            s[k] -= s[k - d];
        }
    }
    for _ in 0..n {
        for k in 1..=bound {
            s[k] += s[k - 1];
        }
    }
    s
}
