//! Degreewise linear algebra on the null-cone ideal and on fiber ideals.
//!
//! No Gröbner bases: every question is answered inside a finite-dimensional
//! graded piece `R_d` (homogeneous ideals) or a truncation `R_{<=D}` (fiber
//! ideals), where the ideal is spanned by monomial multiples of its
//! generators.

mod fiber;
mod koszul;
mod regular;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::invariants::GeneratorSet;
use crate::linalg::{self, Echelon};
use crate::matrix::AffineMap;
use crate::poly::{monomials_of_degree, monomials_up_to_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

pub use fiber::{
    graded_comparison, leading_form_space, truncated_membership, Comparison, FiberIdeal, TruncatedMembership, TruncatedSpan,
};
pub use koszul::koszul_reduce;
pub use regular::{jacobian_rank_at, regular_sequence_check, RegSeqVerdict};

/// Headroom used when a scenario does not set one: the top generator degree plus two.
pub fn default_headroom(gens: &GeneratorSet) -> usize {
    gens.max_degree() + 2
}

/// An ordered monomial basis of `R_d` or `R_{<=D}` with coordinate maps.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { monomials, index }
    }

    pub fn homogeneous(n: usize, d: usize) -> Self {
        Self::new(monomials_of_degree(n, d))
    }

    pub fn up_to(n: usize, d: usize) -> Self {
        Self::new(monomials_up_to_degree(n, d))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Coefficient vector; fails if `p` has a monomial outside the basis.
    pub fn vector(&self, p: &Polynomial) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, c) in p.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, nvars: usize, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        )
    }
}

/// Polynomial combination `f = sum_j a_j * e_j` of the ideal's generating
/// elements `e_j` (`p_j` for the null cone, `p_j - c_j` for a fiber).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub coefficients: Vec<Polynomial>,
}

impl MembershipCertificate {
    pub fn expand(&self, elements: &[Polynomial]) -> Result<Polynomial> {
        check_dim(elements.len(), self.coefficients.len())?;
        let n = elements.first().map_or(0, Polynomial::nvars);
        let mut acc = Polynomial::zero(n);
        for (a, e) in self.coefficients.iter().zip(elements) {
            acc = acc.checked_add(&a.checked_mul(e)?)?;
        }
        Ok(acc)
    }

    /// Re-expands the certificate and compares with `f`.
    pub fn verifies(&self, f: &Polynomial, elements: &[Polynomial]) -> bool {
        self.expand(elements).is_ok_and(|e| &e == f)
    }

    fn from_solution(nvars: usize, ngens: usize, spanning: &[(usize, Monomial)], x: &[Scalar]) -> Self {
        let mut terms: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); ngens];
        for ((j, m), c) in spanning.iter().zip(x) {
            if !c.is_zero() {
                terms[*j].push((m.clone(), c.clone()));
            }
        }
        MembershipCertificate {
            coefficients: terms.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect(),
        }
    }
}

/// Outcome of an exact membership test in a homogeneous ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(MembershipCertificate),
    /// `residual` is the normal form of `f` modulo the echelon basis of the
    /// graded piece; it is nonzero.
    NotMember { residual: Polynomial },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// The degree-`d` piece `I_d = span{m * g_j : deg m = d - d_j}`.
#[derive(Debug)]
pub struct GradedPiece {
    degree: usize,
    basis: MonomialBasis,
    spanning: Vec<(usize, Monomial)>,
    echelon: Echelon,
}

impl GradedPiece {
    pub fn degree(&self) -> usize {
        self.degree
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
}

/// The ideal generated by homogeneous generators of positive degree; for
/// invariant generators this is the null-cone ideal `R^G_+ R`.
///
/// Graded pieces are computed on demand and cached. Concurrent callers may
/// compute the same piece twice; the first stored result wins and later ones
/// are discarded, which is harmless because the computation is deterministic.
pub struct GradedIdeal {
    gens: GeneratorSet,
    pieces: Mutex<BTreeMap<usize, Arc<GradedPiece>>>,
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedIdeal").field("generators", &self.gens.to_strings()).finish()
    }
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        let pieces = self.pieces.lock().expect("cache lock").clone();
        GradedIdeal { gens: self.gens.clone(), pieces: Mutex::new(pieces) }
    }
}

/// `I = (gens)`; rejects constant generators.
pub fn nullcone_ideal(gens: GeneratorSet) -> Result<GradedIdeal> {
    GradedIdeal::new(gens)
}

impl GradedIdeal {
    pub fn new(gens: GeneratorSet) -> Result<Self> {
        for g in gens.generators() {
            if g.degree() == Some(0) {
                return Err(Error::ConstantGenerator(g.to_string_with(gens.names())));
            }
        }
        Ok(GradedIdeal { gens, pieces: Mutex::new(BTreeMap::new()) })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens.nvars()
    }

    pub fn piece(&self, d: usize) -> Arc<GradedPiece> {
        if let Some(p) = self.pieces.lock().expect("cache lock").get(&d) {
            return Arc::clone(p);
        }
        let computed = Arc::new(self.compute_piece(d));
        let mut cache = self.pieces.lock().expect("cache lock");
        Arc::clone(cache.entry(d).or_insert(computed))
    }

    fn spanning_products(&self, d: usize) -> Vec<(usize, Monomial)> {
        let n = self.nvars();
        let mut out = Vec::new();
        for (j, dj) in self.gens.degrees().into_iter().enumerate() {
            if dj <= d {
                out.extend(monomials_of_degree(n, d - dj).into_iter().map(|m| (j, m)));
            }
        }
        out
    }

    fn compute_piece(&self, d: usize) -> GradedPiece {
        let n = self.nvars();
        let basis = MonomialBasis::homogeneous(n, d);
        let spanning = self.spanning_products(d);
        let rows: Vec<Vec<Scalar>> = spanning
            .iter()
            .map(|(j, m)| basis.vector(&self.gens.generators()[*j].mul_monomial(m)).expect("degree-d product"))
            .collect();
        let echelon = Echelon::from_rows(&rows, basis.len());
        GradedPiece { degree: d, basis, spanning, echelon }
    }

    /// Exact basis (reduced echelon over the fixed monomial order) of `I_d`.
    pub fn graded_piece_basis(&self, d: usize) -> Vec<Polynomial> {
        let piece = self.piece(d);
        piece.echelon.rows().iter().map(|r| piece.basis.polynomial(self.nvars(), r)).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.piece(d).dim()
    }

    /// `dim (R/I)_d`.
    pub fn quotient_dim(&self, d: usize) -> usize {
        crate::poly::count_monomials(self.nvars(), d) - self.dim(d)
    }

    /// Normal form of a homogeneous `f` modulo `I_{deg f}`.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let Some(d) = f.degree() else { return Ok(f.clone()) };
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(f.to_string_with(self.gens.names())));
        }
        let piece = self.piece(d);
        let v = piece.basis.vector(f).expect("homogeneous of degree d");
        Ok(piece.basis.polynomial(self.nvars(), &piece.echelon.reduce(&v)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        check_dim(self.nvars(), f.nvars())?;
        Ok(self.reduce(f)?.is_zero())
    }

    /// Membership of a homogeneous `f`, with a certificate whose coefficient
    /// for generator `j` is homogeneous of degree `deg f - d_j`.
    pub fn membership(&self, f: &Polynomial) -> Result<Membership> {
        check_dim(self.nvars(), f.nvars())?;
        let n = self.nvars();
        let Some(d) = f.degree() else {
            return Ok(Membership::Member(MembershipCertificate {
                coefficients: vec![Polynomial::zero(n); self.gens.len()],
            }));
        };
        let residual = self.reduce(f)?;
        if !residual.is_zero() {
            return Ok(Membership::NotMember { residual });
        }
        let piece = self.piece(d);
        let columns: Vec<Vec<Scalar>> = piece
            .spanning
            .iter()
            .map(|(j, m)| piece.basis.vector(&self.gens.generators()[*j].mul_monomial(m)).expect("degree-d product"))
            .collect();
        let rows = linalg::columns_to_rows(&columns, piece.basis.len());
        let rhs = piece.basis.vector(f).expect("degree d");
        let x = linalg::solve(&rows, &rhs, columns.len())
            .ok_or_else(|| Error::Internal("membership solve failed after zero residual".into()))?;
        Ok(Membership::Member(MembershipCertificate::from_solution(n, self.gens.len(), &piece.spanning, &x)))
    }

    /// `f` in `I` for arbitrary `f`: every homogeneous component must be.
    pub fn contains_inhomogeneous(&self, f: &Polynomial) -> Result<bool> {
        let Some(top) = f.degree() else { return Ok(true) };
        for d in 0..=top {
            if !self.contains(&f.homogeneous_component(d))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The ideal a map is checked against.
#[derive(Debug, Clone, Copy)]
pub enum IdealRef<'a> {
    Graded(&'a GradedIdeal),
    Fiber(&'a FiberIdeal),
}

/// Result of [`map_preserves_ideal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preservation {
    Preserved,
    /// Exact negative answer (homogeneous ideals only).
    NotPreserved { generator: usize, image: Polynomial },
    /// No certificate found within the headroom; membership may still hold
    /// with more room.
    NotPreservedAtHeadroom { generator: usize, image: Polynomial, headroom: usize },
}

impl Preservation {
    pub fn is_preserved(&self) -> bool {
        matches!(self, Preservation::Preserved)
    }
}

/// Does `f -> f o M` map the ideal into itself? It suffices to check the
/// generators, since pull-back is a ring homomorphism.
pub fn map_preserves_ideal(map: &AffineMap, target: IdealRef<'_>, headroom: usize) -> Result<Preservation> {
    map.ensure_invertible()?;
    match target {
        IdealRef::Graded(ideal) => {
            check_dim(ideal.nvars(), map.dim())?;
            for (j, g) in ideal.generators().generators().iter().enumerate() {
                let image = map.pull_back(g)?;
                if !ideal.contains_inhomogeneous(&image)? {
                    return Ok(Preservation::NotPreserved { generator: j, image });
                }
            }
            Ok(Preservation::Preserved)
        }
        IdealRef::Fiber(fiber) => {
            check_dim(fiber.nvars(), map.dim())?;
            for (j, e) in fiber.elements().iter().enumerate() {
                let image = map.pull_back(e)?;
                if !truncated_membership(&image, fiber, headroom)?.is_member() {
                    return Ok(Preservation::NotPreservedAtHeadroom { generator: j, image, headroom });
                }
            }
            Ok(Preservation::Preserved)
        }
    }
}
