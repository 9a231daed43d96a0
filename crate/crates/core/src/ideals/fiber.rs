use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::{GradedIdeal, MembershipCertificate, MonomialBasis};
use crate::error::{check_dim, Error, Result};
use crate::invariants::GeneratorSet;
use crate::linalg::{self, Echelon};
use crate::poly::{monomials_up_to_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// The ideal generated by `p_j - c_j`; the null cone is the case `c = 0`.
///
/// Truncations `T_D = span{m * (p_j - c_j) : deg m <= D - d_j}` are cached
/// per cap `D` with the same write-once policy as [`GradedIdeal`] pieces.
pub struct FiberIdeal {
    nullcone: GradedIdeal,
    constants: Vec<Scalar>,
    elements: Vec<Polynomial>,
    spans: Mutex<BTreeMap<usize, Arc<TruncatedSpan>>>,
}

impl fmt::Debug for FiberIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.nullcone.generators().names();
        let elements: Vec<String> = self.elements.iter().map(|e| e.to_string_with(names)).collect();
        f.debug_struct("FiberIdeal").field("elements", &elements).finish()
    }
}

impl Clone for FiberIdeal {
    fn clone(&self) -> Self {
        let spans = self.spans.lock().expect("cache lock").clone();
        FiberIdeal {
            nullcone: self.nullcone.clone(),
            constants: self.constants.clone(),
            elements: self.elements.clone(),
            spans: Mutex::new(spans),
        }
    }
}

impl FiberIdeal {
    pub fn new(gens: GeneratorSet, constants: Vec<Scalar>) -> Result<Self> {
        check_dim(gens.len(), constants.len())?;
        let n = gens.nvars();
        let elements = gens
            .generators()
            .iter()
            .zip(&constants)
            .map(|(p, c)| p - &Polynomial::constant(n, c.clone()))
            .collect();
        Ok(FiberIdeal { nullcone: GradedIdeal::new(gens)?, constants, elements, spans: Mutex::new(BTreeMap::new()) })
    }

    pub fn null_cone(gens: GeneratorSet) -> Result<Self> {
        let zeros = vec![Scalar::zero(); gens.len()];
        Self::new(gens, zeros)
    }

    /// The fiber through `point`: constants are the generator values there.
    pub fn through_point(gens: GeneratorSet, point: &[Scalar]) -> Result<Self> {
        let constants = gens.generators().iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>()?;
        Self::new(gens, constants)
    }

    pub fn generators(&self) -> &GeneratorSet {
        self.nullcone.generators()
    }

    /// The homogeneous ideal with the same generators.
    pub fn nullcone(&self) -> &GradedIdeal {
        &self.nullcone
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    /// `p_j - c_j`.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn nvars(&self) -> usize {
        self.nullcone.nvars()
    }

    pub fn is_null_cone(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// Product-degree cap for questions about degree-`degree` polynomials:
    /// `max(degree, top generator degree) + headroom`.
    pub fn cap(&self, degree: usize, headroom: usize) -> usize {
        degree.max(self.generators().max_degree()) + headroom
    }

    pub fn truncated_span(&self, cap: usize) -> Arc<TruncatedSpan> {
        if let Some(s) = self.spans.lock().expect("cache lock").get(&cap) {
            return Arc::clone(s);
        }
        let computed = Arc::new(TruncatedSpan::new(self, cap));
        let mut cache = self.spans.lock().expect("cache lock");
        Arc::clone(cache.entry(cap).or_insert(computed))
    }
}

/// `T_D`, stored as a reduced echelon over the monomials of degree `<= D`,
/// highest degree first. With that column order the degree of an echelon
/// row is the degree of its pivot, and `T_D ∩ R_{<=k}` is spanned by the
/// rows whose pivot has degree `<= k`.
#[derive(Debug)]
pub struct TruncatedSpan {
    cap: usize,
    nvars: usize,
    basis: MonomialBasis,
    spanning: Vec<(usize, Monomial)>,
    columns: Vec<Vec<Scalar>>,
    echelon: Echelon,
}

impl TruncatedSpan {
    fn new(fiber: &FiberIdeal, cap: usize) -> Self {
        let n = fiber.nvars();
        let basis = MonomialBasis::up_to(n, cap);
        let mut spanning = Vec::new();
        for (j, dj) in fiber.generators().degrees().into_iter().enumerate() {
            if dj <= cap {
                spanning.extend(monomials_up_to_degree(n, cap - dj).into_iter().map(|m| (j, m)));
            }
        }
        let columns: Vec<Vec<Scalar>> = spanning
            .iter()
            .map(|(j, m)| basis.vector(&fiber.elements[*j].mul_monomial(m)).expect("product within cap"))
            .collect();
        let echelon = Echelon::from_rows(&columns, basis.len());
        TruncatedSpan { cap, nvars: n, basis, spanning, columns, echelon }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn monomial_basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    fn row_degree(&self, k: usize) -> usize {
        self.basis.monomials()[self.echelon.pivots()[k]].degree()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.basis.vector(f).is_some_and(|v| self.echelon.contains(&v))
    }

    /// Normal form of `f` modulo `T_D`, or `None` if `deg f > D`.
    pub fn reduce(&self, f: &Polynomial) -> Option<Polynomial> {
        let v = self.basis.vector(f)?;
        Some(self.basis.polynomial(self.nvars, &self.echelon.reduce(&v)))
    }

    pub fn certificate(&self, f: &Polynomial, ngens: usize) -> Option<MembershipCertificate> {
        let rhs = self.basis.vector(f)?;
        if !self.echelon.contains(&rhs) {
            return None;
        }
        let rows = linalg::columns_to_rows(&self.columns, self.basis.len());
        let x = linalg::solve(&rows, &rhs, self.columns.len())?;
        Some(MembershipCertificate::from_solution(self.nvars, ngens, &self.spanning, &x))
    }

    /// Echelon basis of the elements of `T_D` of degree at most `k`.
    pub fn elements_of_degree_at_most(&self, k: usize) -> Vec<Polynomial> {
        (0..self.echelon.rank())
            .filter(|&r| self.row_degree(r) <= k)
            .map(|r| self.basis.polynomial(self.nvars, &self.echelon.rows()[r]))
            .collect()
    }

    /// Leading forms of the elements of `T_D` of degree exactly `d`; they
    /// are linearly independent because their pivots are distinct.
    pub fn leading_forms(&self, d: usize) -> Vec<Polynomial> {
        (0..self.echelon.rank())
            .filter(|&r| self.row_degree(r) == d)
            .map(|r| self.basis.polynomial(self.nvars, &self.echelon.rows()[r]).homogeneous_component(d))
            .collect()
    }
}

/// Result of a truncated membership search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruncatedMembership {
    Member(MembershipCertificate),
    /// No certificate with products of degree `<= cap`; not a negative answer.
    UndeterminedAtHeadroom { headroom: usize, cap: usize },
}

impl TruncatedMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, TruncatedMembership::Member(_))
    }

    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match self {
            TruncatedMembership::Member(c) => Some(c),
            TruncatedMembership::UndeterminedAtHeadroom { .. } => None,
        }
    }
}

/// Searches for `f = sum_j a_j (p_j - c_j)` with every product of degree at
/// most `max(deg f, top generator degree) + headroom`.
pub fn truncated_membership(f: &Polynomial, fiber: &FiberIdeal, headroom: usize) -> Result<TruncatedMembership> {
    check_dim(fiber.nvars(), f.nvars())?;
    let cap = fiber.cap(f.degree().unwrap_or(0), headroom);
    let span = fiber.truncated_span(cap);
    Ok(match span.certificate(f, fiber.generators().len()) {
        Some(cert) => TruncatedMembership::Member(cert),
        None => TruncatedMembership::UndeterminedAtHeadroom { headroom, cap },
    })
}

fn canonical_forms(forms: &[Polynomial], nvars: usize, d: usize) -> (MonomialBasis, Echelon) {
    let basis = MonomialBasis::homogeneous(nvars, d);
    let rows: Vec<Vec<Scalar>> = forms.iter().map(|p| basis.vector(p).expect("homogeneous of degree d")).collect();
    let echelon = Echelon::from_rows(&rows, basis.len());
    (basis, echelon)
}

/// Canonical basis of the degree-`d` leading forms found in the truncation
/// at cap `max(d, top generator degree) + headroom`.
pub fn leading_form_space(fiber: &FiberIdeal, d: usize, headroom: usize) -> Vec<Polynomial> {
    let span = fiber.truncated_span(fiber.cap(d, headroom));
    let (basis, echelon) = canonical_forms(&span.leading_forms(d), fiber.nvars(), d);
    echelon.rows().iter().map(|r| basis.polynomial(fiber.nvars(), r)).collect()
}

/// Outcome of comparing the leading-form ideal of a fiber with the null cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    EqualUpTo(usize),
    /// A leading form of degree `degree` outside the null-cone ideal.
    Witness { degree: usize, form: Polynomial },
}

/// Compares degree by degree for `d <= bound`, lowest degree first.
pub fn graded_comparison(fiber: &FiberIdeal, bound: usize, headroom: usize) -> Result<Comparison> {
    let n = fiber.nvars();
    for d in 0..=bound {
        let forms = leading_form_space(fiber, d, headroom);
        let piece = fiber.nullcone().piece(d);
        if let Some(form) = forms.iter().find(|f| !piece.echelon().contains(&piece.monomial_basis().vector(f).expect("degree d"))) {
            return Ok(Comparison::Witness { degree: d, form: form.clone() });
        }
        let (_, leading) = canonical_forms(&forms, n, d);
        if !piece.echelon().is_subspace_of(&leading) {
            return Err(Error::Internal(format!("degree-{d} null-cone piece is not among the leading forms")));
        }
    }
    Ok(Comparison::EqualUpTo(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::adjoint_trace_generators;
    use crate::poly::VarNames;
    use crate::scalar::int;

    fn names() -> VarNames {
        VarNames::new(["x", "y", "z"]).unwrap()
    }

    fn counterexample() -> FiberIdeal {
        let gens = GeneratorSet::parse(names(), &["x*y", "x^2*z"]).unwrap();
        FiberIdeal::new(gens, vec![int(1), int(0)]).unwrap()
    }

    fn sl2_fiber() -> FiberIdeal {
        FiberIdeal::new(adjoint_trace_generators(2, false).unwrap(), vec![int(1)]).unwrap()
    }

    #[test]
    fn z_needs_headroom() {
        let f = counterexample();
        let z = Polynomial::parse("z", &names()).unwrap();
        assert!(matches!(truncated_membership(&z, &f, 0).unwrap(), TruncatedMembership::UndeterminedAtHeadroom { .. }));
        let cert = truncated_membership(&z, &f, 3).unwrap();
        let cert = cert.certificate().expect("certificate");
        assert!(cert.verifies(&z, f.elements()));
        let g = truncated_membership(&f.elements()[0], &f, 0).unwrap();
        assert!(g.certificate().unwrap().verifies(&f.elements()[0], f.elements()));
    }

    #[test]
    fn leading_forms_of_the_counterexample() {
        let f = counterexample();
        assert!(leading_form_space(&f, 1, 0).is_empty());
        assert_eq!(leading_form_space(&f, 1, 3), vec![Polynomial::parse("z", &names()).unwrap()]);
        assert_eq!(
            graded_comparison(&f, 2, 4).unwrap(),
            Comparison::Witness { degree: 1, form: Polynomial::parse("z", &names()).unwrap() }
        );
    }

    #[test]
    fn cofree_fiber_matches_the_nullcone() {
        let f = sl2_fiber();
        let q = &f.generators().generators()[0];
        assert_eq!(leading_form_space(&f, 2, 0), vec![q.monic()]);
        assert_eq!(graded_comparison(&f, 4, 0).unwrap(), Comparison::EqualUpTo(4));
        let cone = FiberIdeal::null_cone(f.generators().clone()).unwrap();
        assert_eq!(graded_comparison(&cone, 3, 2).unwrap(), Comparison::EqualUpTo(3));
    }
}
