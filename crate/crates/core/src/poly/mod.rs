//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Monomials are ordered graded-lexicographically (total degree first, then
//! lexicographic with `x0 > x1 > ...`). This order is used everywhere a
//! basis order matters, in particular for the column layout of the graded
//! pieces handed to the linear algebra layer.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{self, Scalar};

pub use text::VarNames;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `n` variables, in descending
/// graded-lexicographic order: `(2, 2)` gives `x0^2, x0*x1, x1^2`.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(n, 0, d as u32, &mut vec![0; n], &mut out);
    out
}

/// All monomials of degree `<= d`, highest degree first.
pub fn monomials_up_to_degree(n: usize, d: usize) -> Vec<Monomial> {
    (0..=d).rev().flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// `C(n + d - 1, d)`, the dimension of the degree-`d` piece of a polynomial
/// ring in `n` variables.
pub fn count_monomials(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    let mut c: u128 = 1;
    for k in 1..=d as u128 {
        c = c * (n as u128 - 1 + k) / k;
    }
    c as usize
}

/// Element of the coordinate ring `Q[x0, ..., x{n-1}]`.
///
/// No zero coefficient is ever stored; the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), Scalar::one())])
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let n = m.nvars();
        Self::from_terms(n, [(m, c)])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    ///
    /// Panics if a monomial has the wrong number of variables.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity does not match the ambient dimension");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match (self.min_degree(), self.degree()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Highest-degree homogeneous part (`gr f`).
    pub fn leading_form(&self) -> Polynomial {
        match self.degree() {
            Some(d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    /// Part of degree at most `d`.
    pub fn truncate(&self, d: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * scalar::int(e as i64));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        check_dim(self.nvars, point.len())?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for `x_i`. The images may live in a ring with
    /// a different number of variables.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        check_dim(self.nvars, images.len())?;
        let target = images.first().map_or(0, Polynomial::nvars);
        for im in images {
            check_dim(target, im.nvars)?;
        }
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(p.nvars)]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Embeds into a ring with `nvars` variables, shifting `x_i` to `x_{offset+i}`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= nvars);
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; nvars];
                exps[offset..offset + self.nvars].copy_from_slice(&m.exps);
                (Monomial::new(exps), c.clone())
            }),
        )
    }

    /// Makes the leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.values().next_back() {
            Some(lc) => self.scale(&(Scalar::one() / lc)),
            None => self.clone(),
        }
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        text::format_poly(self, names)
    }

    pub fn parse(text: &str, names: &VarNames) -> Result<Polynomial> {
        text::parse_poly(text, names)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self, &VarNames::default_for(self.nvars)))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

// The operator forms panic on an ambient-dimension mismatch; the `checked_*`
// methods report it instead.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, &VarNames::default_for(n)).unwrap()
    }

    fn xyz(s: &str) -> Polynomial {
        Polynomial::parse(s, &VarNames::new(["x", "y", "z"]).unwrap()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(2, 2);
        let shown: Vec<String> = m.iter().map(|m| Polynomial::monomial(m.clone(), int(1)).to_string()).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2"]);
        assert_eq!(monomials_of_degree(1, 5), vec![Monomial::new(vec![5])]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        for n in 1..5 {
            for d in 0..6 {
                assert_eq!(monomials_of_degree(n, d).len(), count_monomials(n, d));
            }
        }
        let all = monomials_up_to_degree(3, 3);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn partial_derivatives() {
        let names = VarNames::new(["x", "y"]).unwrap();
        let f = Polynomial::parse("x*y^2", &names).unwrap();
        assert_eq!(f.partial_derivative(1).unwrap(), Polynomial::parse("2*x*y", &names).unwrap());
        let g = Polynomial::parse("x^2", &names).unwrap();
        assert!(g.partial_derivative(1).unwrap().is_zero());
        let h = Polynomial::parse("y^4", &names).unwrap();
        assert_eq!(h.partial_derivative(1).unwrap(), Polynomial::parse("4*y^3", &names).unwrap());
        assert!(matches!(f.partial_derivative(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn compose_swaps_coordinates() {
        let f = xyz("x^2*z");
        let images = [Polynomial::var(3, 1), Polynomial::var(3, 0), Polynomial::var(3, 2)];
        assert_eq!(f.compose(&images).unwrap(), xyz("y^2*z"));
        let id: Vec<_> = (0..3).map(|i| Polynomial::var(3, i)).collect();
        let g = xyz("x^3 - 2/3*x*y*z + 7");
        assert_eq!(g.compose(&id).unwrap(), g);
    }

    #[test]
    fn graded_pieces() {
        let f = p("x0^3 + 2*x0*x1 - 1", 2);
        assert_eq!(f.degree(), Some(3));
        assert!(!f.is_homogeneous());
        assert_eq!(f.leading_form(), p("x0^3", 2));
        assert_eq!(f.homogeneous_component(0), p("-1", 2));
        assert_eq!(f.truncate(2), p("2*x0*x1 - 1", 2));
        assert!(Polynomial::zero(2).is_homogeneous());
        assert_eq!(p("2*x0 + 4", 2).monic(), p("x0 + 2", 2));
        assert_eq!(f.evaluate(&[int(1), ratio(1, 2)]).unwrap(), int(1));
    }
}
