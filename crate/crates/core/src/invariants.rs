//! Generating sets of invariant rings.
//!
//! Diagonalizable actions (a torus times finite cyclic groups) are handled
//! by enumerating weight-zero monomials. The classical non-abelian families
//! are shipped as closed-form constructors together with the matrices of
//! their Lie algebra actions, so invariance can be checked with
//! [`derivation_apply`](crate::derivation::derivation_apply).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::matrix::{AffineMap, Matrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VarNames};
use crate::scalar::Scalar;

/// Characters of a diagonal action of `T^k x Z/m_1 x ... x Z/m_s`, one per
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    torus_rank: usize,
    cyclic_orders: Vec<u64>,
    weights: Vec<Vec<i64>>,
}

impl WeightSystem {
    /// Each weight has `torus_rank + cyclic_orders.len()` entries; the cyclic
    /// entries are reduced into `0..m_t`.
    pub fn new(torus_rank: usize, cyclic_orders: Vec<u64>, weights: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(m) = cyclic_orders.iter().find(|&&m| m < 2) {
            return Err(Error::Invalid(format!("cyclic order {m} must be at least 2")));
        }
        let width = torus_rank + cyclic_orders.len();
        let weights = weights
            .into_iter()
            .map(|mut w| {
                check_dim(width, w.len())?;
                for (t, &m) in cyclic_orders.iter().enumerate() {
                    w[torus_rank + t] = w[torus_rank + t].rem_euclid(m as i64);
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightSystem { torus_rank, cyclic_orders, weights })
    }

    /// Rank-one torus with the given integer weights.
    pub fn torus(weights: &[i64]) -> Self {
        Self::new(1, vec![], weights.iter().map(|&w| vec![w]).collect()).expect("valid torus weights")
    }

    /// Single cyclic group `Z/m`.
    pub fn cyclic(order: u64, weights: &[i64]) -> Result<Self> {
        Self::new(0, vec![order], weights.iter().map(|&w| vec![w]).collect())
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    fn reduce(&self, mut w: Vec<i64>) -> Vec<i64> {
        for (t, &m) in self.cyclic_orders.iter().enumerate() {
            w[self.torus_rank + t] = w[self.torus_rank + t].rem_euclid(m as i64);
        }
        w
    }

    pub fn weight_of_monomial(&self, m: &Monomial) -> Result<Vec<i64>> {
        check_dim(self.nvars(), m.nvars())?;
        let width = self.torus_rank + self.cyclic_orders.len();
        let mut w = vec![0i64; width];
        for (e, wt) in m.exponents().iter().zip(&self.weights) {
            for (acc, x) in w.iter_mut().zip(wt) {
                *acc += *e as i64 * x;
            }
        }
        Ok(self.reduce(w))
    }

    pub fn is_invariant(&self, m: &Monomial) -> Result<bool> {
        Ok(self.weight_of_monomial(m)?.iter().all(|&x| x == 0))
    }

    /// Weight-zero monomials of degree exactly `d`, descending order.
    pub fn invariant_monomials(&self, d: usize) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
            .into_iter()
            .filter(|m| self.is_invariant(m).expect("arity matches"))
            .collect()
    }
}

/// Homogeneous generators of an invariant ring, listed by non-decreasing
/// degree, together with names for the ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    names: VarNames,
    generators: Vec<Polynomial>,
}

impl GeneratorSet {
    pub fn new(names: VarNames, generators: Vec<Polynomial>) -> Result<Self> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        let mut last = 0;
        for g in &generators {
            check_dim(n, g.nvars())?;
            if g.is_zero() {
                return Err(Error::Invalid("zero generator".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string_with(&names)));
            }
            let d = g.degree().expect("nonzero");
            if d < last {
                return Err(Error::Invalid("generators must be listed by non-decreasing degree".into()));
            }
            last = d;
            if !seen.insert(g.monic().to_string()) {
                return Err(Error::Invalid(format!(
                    "generator {} is a scalar multiple of another generator",
                    g.to_string_with(&names)
                )));
            }
        }
        Ok(GeneratorSet { names, generators })
    }

    pub fn with_default_names(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(VarNames::default_for(nvars), generators)
    }

    /// Parses each generator in the polynomial text format.
    pub fn parse(names: VarNames, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|s| Polynomial::parse(s, &names)).collect::<Result<Vec<_>>>()?;
        Self::new(names, gens)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &VarNames {
        &self.names
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree().expect("nonzero")).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Generators printed with the ambient names.
    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string_with(&self.names)).collect()
    }

    /// Same generators with each one multiplied by the matching scalar.
    pub fn rescaled(&self, factors: &[Scalar]) -> Result<Self> {
        check_dim(self.len(), factors.len())?;
        let gens = self.generators.iter().zip(factors).map(|(g, c)| g.scale(c)).collect();
        Self::new(self.names.clone(), gens)
    }
}

/// Weight-zero monomials of degree `<= degree_bound` that are not products of
/// two nonconstant weight-zero monomials, by increasing degree.
///
/// A weight-zero monomial is decomposable exactly when a generator of lower
/// degree divides it (the quotient is then automatically weight-zero).
pub fn minimal_monomial_generators(ws: &WeightSystem, names: VarNames, degree_bound: usize) -> Result<GeneratorSet> {
    check_dim(ws.nvars(), names.len())?;
    let mut found: Vec<Monomial> = Vec::new();
    for d in 1..=degree_bound {
        let fresh: Vec<Monomial> =
            ws.invariant_monomials(d).into_iter().filter(|m| !found.iter().any(|g| g.divides(m))).collect();
        found.extend(fresh);
    }
    let gens = found.into_iter().map(|m| Polynomial::monomial(m, Scalar::one())).collect();
    GeneratorSet::new(names, gens)
}

/// True iff every weight-zero monomial of degree `<= bound` is a product of
/// the given monomial generators.
pub fn monomial_generation_complete(ws: &WeightSystem, gens: &GeneratorSet, bound: usize) -> Result<bool> {
    let mons: Vec<Monomial> = gens
        .generators()
        .iter()
        .map(|g| {
            let mut t = g.terms();
            match (t.next(), t.next()) {
                (Some((m, _)), None) => Ok(m.clone()),
                _ => Err(Error::Invalid("generator is not a monomial".into())),
            }
        })
        .collect::<Result<_>>()?;
    fn generated(m: &Monomial, gens: &[Monomial]) -> bool {
        if m.is_one() {
            return true;
        }
        gens.iter().any(|g| g.quotient_of(m).is_some_and(|q| generated(&q, gens)))
    }
    Ok((1..=bound).all(|d| ws.invariant_monomials(d).iter().all(|m| generated(m, &mons))))
}

/// Compares the weight-zero monomials of degree `<= bound` of two actions on
/// the same space.
pub fn invariants_equal_up_to(a: &WeightSystem, b: &WeightSystem, bound: usize) -> Result<bool> {
    check_dim(a.nvars(), b.nvars())?;
    Ok((0..=bound).all(|d| a.invariant_monomials(d) == b.invariant_monomials(d)))
}

fn one_based(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}_{}", i + 1, j + 1)
    }
}

/// Coordinates of `pW + qW*` for `W = Q^n`: first the `p` copies of `W`
/// (`x{a}_{i}`), then the `q` copies of `W*` (`y{b}_{i}`), copy-major.
pub fn contraction_names(n: usize, p: usize, q: usize) -> VarNames {
    let xs = (0..p).flat_map(|a| (0..n).map(move |i| format!("x{}_{}", a + 1, i + 1)));
    let ys = (0..q).flat_map(|b| (0..n).map(move |i| format!("y{}_{}", b + 1, i + 1)));
    VarNames::new(xs.chain(ys)).expect("valid names")
}

/// The `pq` contractions `<x^(a), y^(b)> = sum_i x^(a)_i y^(b)_i`, ordered by `(a, b)`.
pub fn contraction_generators(n: usize, p: usize, q: usize) -> Result<GeneratorSet> {
    if n == 0 || p == 0 || q == 0 {
        return Err(Error::Invalid("contraction_generators needs n, p, q >= 1".into()));
    }
    let dim = (p + q) * n;
    let mut gens = Vec::new();
    for a in 0..p {
        for b in 0..q {
            let mut g = Polynomial::zero(dim);
            for i in 0..n {
                g = &g + &(&Polynomial::var(dim, a * n + i) * &Polynomial::var(dim, (p + b) * n + i));
            }
            gens.push(g);
        }
    }
    GeneratorSet::new(contraction_names(n, p, q), gens)
}

/// Action of `Y in gl(W)` on `pW + qW*`: `Y` on each copy of `W`, `-Y^t` on
/// each copy of `W*`.
pub fn contraction_rep(y: &Matrix, p: usize, q: usize) -> Matrix {
    let dual = -&y.transpose();
    let blocks: Vec<Matrix> =
        std::iter::repeat_n(y.clone(), p).chain(std::iter::repeat_n(dual, q)).collect();
    Matrix::direct_sum(&blocks)
}

/// Coordinate index layout of `gl_n` (all `n^2` entries, row-major) or of
/// `sl_n` (the same with the last diagonal entry dropped).
fn matrix_coordinates(n: usize, traceless: bool) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(traceless && i == n - 1 && j == n - 1))
        .collect()
}

pub fn adjoint_names(n: usize, traceless: bool) -> VarNames {
    VarNames::new(matrix_coordinates(n, traceless).into_iter().map(|(i, j)| one_based("x", i, j, n)))
        .expect("valid names")
}

/// The generic element of `gl_n` or `sl_n` as a matrix of linear forms.
pub fn generic_matrix(n: usize, traceless: bool) -> Vec<Vec<Polynomial>> {
    let coords = matrix_coordinates(n, traceless);
    let dim = coords.len();
    let mut x = vec![vec![Polynomial::zero(dim); n]; n];
    for (k, &(i, j)) in coords.iter().enumerate() {
        x[i][j] = Polynomial::var(dim, k);
    }
    if traceless {
        let mut last = Polynomial::zero(dim);
        for (i, row) in x.iter().enumerate().take(n - 1) {
            last = &last - &row[i];
        }
        x[n - 1][n - 1] = last;
    }
    x
}

fn poly_matmul(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    let dim = a[0][0].nvars();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Polynomial::zero(dim), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// `tr(X^k)` on `gl_n` (`k = 1..n`, `n^2` variables) or on `sl_n`
/// (`k = 2..n`, `n^2 - 1` variables, `x_nn = -sum_{i<n} x_ii`).
pub fn adjoint_trace_generators(n: usize, include_trace: bool) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::Invalid("adjoint generators need n >= 2".into()));
    }
    let traceless = !include_trace;
    let x = generic_matrix(n, traceless);
    let dim = x[0][0].nvars();
    let mut power = x.clone();
    let mut gens = Vec::new();
    for k in 1..=n {
        if k > 1 {
            power = poly_matmul(&power, &x);
        }
        if k == 1 && traceless {
            continue;
        }
        gens.push((0..n).fold(Polynomial::zero(dim), |acc, i| &acc + &power[i][i]));
    }
    GeneratorSet::new(adjoint_names(n, traceless), gens)
}

/// Matrix of `X -> [Y, X]` in the coordinates of [`adjoint_trace_generators`].
pub fn adjoint_rep(y: &Matrix, traceless: bool) -> Result<Matrix> {
    let n = y.dim();
    let coords = matrix_coordinates(n, traceless);
    let dim = coords.len();
    let mut out = Matrix::zero(dim);
    for (col, &(i, j)) in coords.iter().enumerate() {
        let mut x = Matrix::unit(n, i, j);
        if traceless && i == j {
            x.set(n - 1, n - 1, -Scalar::one());
        }
        let image = y.bracket(&x)?;
        if traceless && !image.trace().is_zero() {
            return Err(Error::Invalid("adjoint action on sl_n needs a traceless image".into()));
        }
        for (row, &(a, b)) in coords.iter().enumerate() {
            out.set(row, col, image.get(a, b).clone());
        }
    }
    Ok(out)
}

/// `X -> X^t` in the coordinates of [`adjoint_trace_generators`].
pub fn transposition_map(n: usize, traceless: bool) -> AffineMap {
    let coords = matrix_coordinates(n, traceless);
    let perm: Vec<usize> =
        coords.iter().map(|&(i, j)| coords.iter().position(|&c| c == (j, i)).expect("transpose stays in range")).collect();
    AffineMap::permutation(&perm)
}

/// Basis of `sl_n`: off-diagonal units, then `E_ii - E_nn`.
pub fn sl_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Matrix::unit(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        out.push(&Matrix::unit(n, i, i) - &Matrix::unit(n, n - 1, n - 1));
    }
    out
}

fn sym2_coordinates(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// `s{i}{j}` (`i <= j`) for `S^2`, then `v{i}` for the vector.
pub fn sym2_vector_names(n: usize) -> VarNames {
    let s = sym2_coordinates(n).into_iter().map(|(i, j)| one_based("s", i, j, n));
    let v = (0..n).map(|i| format!("v{}", i + 1));
    VarNames::new(s.chain(v)).expect("valid names")
}

fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    // Laplace expansion along the first row; sizes here are tiny.
    let mut acc = Polynomial::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][c] * &determinant(&minor, nvars);
        acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `p = det S` and `q = v^t adj(S) v` on `S^2(Q^n) + Q^n`, where the generic
/// symmetric matrix has `S_ij = S_ji = s_ij`.
pub fn sym2_vector_generators(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::Invalid("sym2_vector_generators needs n >= 2".into()));
    }
    let coords = sym2_coordinates(n);
    let ns = coords.len();
    let dim = ns + n;
    let mut s = vec![vec![Polynomial::zero(dim); n]; n];
    for (k, &(i, j)) in coords.iter().enumerate() {
        s[i][j] = Polynomial::var(dim, k);
        s[j][i] = Polynomial::var(dim, k);
    }
    let p = determinant(&s, dim);
    let mut q = Polynomial::zero(dim);
    for i in 0..n {
        for j in 0..n {
            // adj(S)_ij = (-1)^(i+j) det(S without row j and column i)
            let minor: Vec<Vec<Polynomial>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| s[r][c].clone()).collect())
                .collect();
            let mut cof = determinant(&minor, dim);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            q = &q + &(&(&cof * &Polynomial::var(dim, ns + i)) * &Polynomial::var(dim, ns + j));
        }
    }
    GeneratorSet::new(sym2_vector_names(n), vec![p, q])
}

/// Action of `Y in sl_n`: `S -> Y S + S Y^t`, `v -> Y v`.
pub fn sym2_vector_rep(y: &Matrix) -> Matrix {
    let n = y.dim();
    let coords = sym2_coordinates(n);
    let ns = coords.len();
    let mut out = Matrix::zero(ns + n);
    for (col, &(i, j)) in coords.iter().enumerate() {
        let mut s = Matrix::unit(n, i, j);
        s.set(j, i, Scalar::one());
        let image = &(y * &s) + &(&s * &y.transpose());
        for (row, &(a, b)) in coords.iter().enumerate() {
            out.set(row, col, image.get(a, b).clone());
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.set(ns + i, ns + j, y.get(i, j).clone());
        }
    }
    out
}

fn wedge_coordinates(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// `w12, w13, w14, w23, w24, w34, u1, u2, u3, u4`.
pub fn pfaffian_names() -> VarNames {
    let w = wedge_coordinates(4).into_iter().map(|(i, j)| one_based("w", i, j, 4));
    let u = (0..4).map(|i| format!("u{}", i + 1));
    VarNames::new(w.chain(u)).expect("valid names")
}

/// `SL_4` on `wedge^2 Q^4 + Q^4`: the only generator is the Pfaffian
/// `w12 w34 - w13 w24 + w14 w23` of the generic alternating matrix.
pub fn pfaffian_scenario_generators() -> GeneratorSet {
    GeneratorSet::parse(pfaffian_names(), &["w12*w34 - w13*w24 + w14*w23"]).expect("fixed generator")
}

/// Generic alternating 4x4 matrix in the wedge coordinates.
pub fn alternating_matrix() -> Vec<Vec<Polynomial>> {
    let dim = 10;
    let mut w = vec![vec![Polynomial::zero(dim); 4]; 4];
    for (k, (i, j)) in wedge_coordinates(4).into_iter().enumerate() {
        w[i][j] = Polynomial::var(dim, k);
        w[j][i] = -Polynomial::var(dim, k);
    }
    w
}

pub fn polynomial_determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let nvars = m.first().and_then(|r| r.first()).map_or(0, Polynomial::nvars);
    determinant(m, nvars)
}

/// Action of `Y in sl_4`: `W -> Y W + W Y^t` on alternating matrices, `u -> Y u`.
pub fn wedge2_vector_rep(y: &Matrix) -> Matrix {
    let coords = wedge_coordinates(4);
    let mut out = Matrix::zero(10);
    for (col, &(i, j)) in coords.iter().enumerate() {
        let mut w = Matrix::unit(4, i, j);
        w.set(j, i, -Scalar::one());
        let image = &(y * &w) + &(&w * &y.transpose());
        for (row, &(a, b)) in coords.iter().enumerate() {
            out.set(row, col, image.get(a, b).clone());
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            out.set(6 + i, 6 + j, y.get(i, j).clone());
        }
    }
    out
}
