//! Stabilizer Lie algebras as exact kernels.
//!
//! A derivation preserves an ideal exactly when it maps each generator into
//! the ideal (Leibniz rule), so every algebra here is the kernel of a linear
//! map on the matrix entries built from the generators alone.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::derivation::{affine_field_apply, derivation_apply, unit_derivation};
use crate::error::{check_dim, Error, Result};
use crate::ideals::{FiberIdeal, GradedIdeal, MonomialBasis};
use crate::invariants::GeneratorSet;
use crate::liealg::is_closed;
use crate::linalg::{self, Echelon};
use crate::matrix::{AffineMap, Matrix, MatrixSpace};
use crate::scalar::Scalar;

/// Size of the assembled linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSummary {
    /// Degree of the target space for each generator.
    pub degrees: Vec<usize>,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
}

/// A matrix Lie algebra computed as a kernel, with its canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerResult {
    pub space: MatrixSpace,
    pub summary: ConstraintSummary,
    /// Whether all pairwise brackets of the basis stay in the span.
    pub closed: bool,
}

impl StabilizerResult {
    fn new(n: usize, kernel: Vec<Vec<Scalar>>, summary: ConstraintSummary) -> Self {
        let mats: Vec<Matrix> = kernel.into_iter().map(|v| Matrix::from_flat(n, v)).collect();
        let space = MatrixSpace::span(n, &mats);
        let closed = is_closed(&space);
        StabilizerResult { space, summary, closed }
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn dimension(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.space.basis()
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        self.space.contains(a)
    }
}

/// Assembles the columns `A -> (constraint image of E_ij)` for every matrix
/// unit, one block of rows per generator, and returns the kernel.
fn solve_units<F>(n: usize, blocks: usize, block_image: F) -> Result<(Vec<Vec<Scalar>>, usize, usize)>
where
    F: Fn(usize, usize, usize) -> Result<Vec<Scalar>> + Sync,
{
    let per_block: Vec<Vec<Vec<Scalar>>> = (0..blocks)
        .into_par_iter()
        .map(|k| (0..n * n).map(|u| block_image(k, u / n, u % n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for block in &per_block {
        let height = block.first().map_or(0, Vec::len);
        rows.extend(linalg::columns_to_rows(block, height));
    }
    let rank = linalg::rank(&rows, n * n);
    Ok((linalg::kernel(&rows, n * n), rows.len(), rank))
}

/// `{A : D_A p_j = 0 for all j}`: the Lie algebra of the group fixing every
/// invariant.
pub fn annihilator_algebra(gens: &GeneratorSet) -> Result<StabilizerResult> {
    let n = gens.nvars();
    let p = gens.generators();
    let bases: Vec<MonomialBasis> = gens.degrees().iter().map(|&d| MonomialBasis::homogeneous(n, d)).collect();
    let (kernel, equations, rank) = solve_units(n, p.len(), |k, i, j| {
        let image = unit_derivation(i, j, &p[k])?;
        bases[k].vector(&image).ok_or_else(|| Error::NotHomogeneous(p[k].to_string_with(gens.names())))
    })?;
    let summary = ConstraintSummary { degrees: gens.degrees(), equations, unknowns: n * n, rank };
    Ok(StabilizerResult::new(n, kernel, summary))
}

/// `{A : D_A g_j in I_{d_j} for every generator}`, i.e. the derivations
/// preserving the ideal. The constraint for `E_ij` is the normal form of
/// `D_{E_ij} g_j` modulo the degree-`d_j` piece.
pub fn ideal_stabilizer_algebra(ideal: &GradedIdeal) -> Result<StabilizerResult> {
    let gens = ideal.generators();
    if gens.is_empty() {
        return Err(Error::Invalid("the ideal has no generators".into()));
    }
    let n = gens.nvars();
    let g = gens.generators();
    let pieces: Vec<_> = gens.degrees().iter().map(|&d| ideal.piece(d)).collect();
    let (kernel, equations, rank) = solve_units(n, g.len(), |k, i, j| {
        let image = unit_derivation(i, j, &g[k])?;
        let v = pieces[k].monomial_basis().vector(&image).expect("derivations preserve degree");
        Ok(pieces[k].echelon().reduce(&v))
    })?;
    let summary = ConstraintSummary { degrees: gens.degrees(), equations, unknowns: n * n, rank };
    Ok(StabilizerResult::new(n, kernel, summary))
}

/// Re-checks the defining constraint of [`annihilator_algebra`] for `a`.
pub fn annihilates(gens: &GeneratorSet, a: &Matrix) -> Result<bool> {
    for p in gens.generators() {
        if !derivation_apply(a, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-checks the defining constraint of [`ideal_stabilizer_algebra`] for `a`.
pub fn preserves_ideal(ideal: &GradedIdeal, a: &Matrix) -> Result<bool> {
    for g in ideal.generators().generators() {
        if !ideal.contains(&derivation_apply(a, g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Affine vector fields `x -> A x + b` mapping every `p_j - c_j` into the
/// truncation `T_D` of the fiber ideal, `D = top generator degree + headroom`.
///
/// Fields whose components lie in the ideal vanish on the fiber and
/// preserve it trivially; they are reported separately so the effective
/// algebra (the quotient by them) can be read off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineStabilizerResult {
    pub nvars: usize,
    /// Canonical basis of the raw algebra.
    pub fields: Vec<AffineMap>,
    /// Basis of the fields of the algebra that vanish on the fiber.
    pub vanishing: Vec<AffineMap>,
    pub headroom: usize,
    pub cap: usize,
    pub summary: ConstraintSummary,
    /// Bracket closure of the raw span, checked in the affine embedding.
    pub closed: bool,
}

fn field_vector(f: &AffineMap) -> Vec<Scalar> {
    f.linear.flatten().iter().chain(&f.translation).cloned().collect()
}

fn field_from_vector(n: usize, v: &[Scalar]) -> AffineMap {
    AffineMap { linear: Matrix::from_flat(n, v[..n * n].to_vec()), translation: v[n * n..].to_vec() }
}

/// `[[A, b], [0, 0]]`.
pub fn affine_embedding(f: &AffineMap) -> Matrix {
    let n = f.dim();
    let mut m = Matrix::zero(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.linear.get(i, j).clone());
        }
        m.set(i, n, f.translation[i].clone());
    }
    m
}

fn translation_rank(fields: &[AffineMap]) -> usize {
    let rows: Vec<&[Scalar]> = fields.iter().map(|f| f.translation.as_slice()).collect();
    fields.first().map_or(0, |f| linalg::rank(&rows, f.dim()))
}

impl AffineStabilizerResult {
    /// Whether `field` lies in the span of [`AffineStabilizerResult::fields`].
    pub fn contains(&self, field: &AffineMap) -> bool {
        let n = self.nvars;
        let rows: Vec<Vec<Scalar>> = self.fields.iter().map(field_vector).collect();
        Echelon::from_rows(&rows, n * n + n).contains(&field_vector(field))
    }
}

impl AffineStabilizerResult {
    pub fn dimension(&self) -> usize {
        self.fields.len()
    }

    pub fn vanishing_dimension(&self) -> usize {
        self.vanishing.len()
    }

    pub fn effective_dimension(&self) -> usize {
        self.dimension() - self.vanishing_dimension()
    }

    pub fn translation_rank(&self) -> usize {
        translation_rank(&self.fields)
    }

    /// Rank of the translation parts modulo those of vanishing fields; zero
    /// means every translation is absorbed by a field vanishing on the fiber.
    pub fn effective_translation_rank(&self) -> usize {
        self.translation_rank() - translation_rank(&self.vanishing)
    }

    pub fn linear_parts(&self) -> MatrixSpace {
        MatrixSpace::span(self.nvars, self.fields.iter().map(|f| &f.linear))
    }
}

pub fn affine_stabilizer_algebra(fiber: &FiberIdeal, headroom: usize) -> Result<AffineStabilizerResult> {
    let gens = fiber.generators();
    let n = fiber.nvars();
    let cap = fiber.cap(0, headroom);
    let span = fiber.truncated_span(cap);
    let unknowns = n * n + n;
    let p = gens.generators();
    let blocks: Vec<Vec<Vec<Scalar>>> = (0..p.len())
        .into_par_iter()
        .map(|k| {
            (0..unknowns)
                .map(|u| {
                    let image = if u < n * n {
                        unit_derivation(u / n, u % n, &p[k])?
                    } else {
                        p[k].partial_derivative(u - n * n)?
                    };
                    let v = span.monomial_basis().vector(&image).expect("degree within cap");
                    Ok(span.echelon().reduce(&v))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for block in &blocks {
        rows.extend(linalg::columns_to_rows(block, span.monomial_basis().len()));
    }
    let kernel = linalg::kernel(&rows, unknowns);
    let raw = Echelon::from_rows(&kernel, unknowns);
    let fields: Vec<AffineMap> = raw.rows().iter().map(|v| field_from_vector(n, v)).collect();

    // Affine elements of the ideal as rows over (x_0, ..., x_{n-1}, 1).
    let affine_basis = MonomialBasis::up_to(n, 1);
    let linear_forms: Vec<Vec<Scalar>> = span
        .elements_of_degree_at_most(1)
        .iter()
        .map(|e| affine_basis.vector(e).expect("degree at most one"))
        .collect();
    let mut candidates = Vec::new();
    for i in 0..n {
        for form in &linear_forms {
            let mut v = vec![Scalar::zero(); unknowns];
            v[i * n..(i + 1) * n].clone_from_slice(&form[..n]);
            v[n * n + i] = form[n].clone();
            candidates.push(v);
        }
    }
    let vanishing = intersection(&raw, &Echelon::from_rows(&candidates, unknowns));
    let vanishing: Vec<AffineMap> = vanishing.rows().iter().map(|v| field_from_vector(n, v)).collect();

    let embedded: Vec<Matrix> = fields.iter().map(affine_embedding).collect();
    let closed = is_closed(&MatrixSpace::span(n + 1, &embedded));
    let summary = ConstraintSummary { degrees: vec![cap; p.len()], equations: rows.len(), unknowns, rank: unknowns - kernel.len() };
    Ok(AffineStabilizerResult { nvars: n, fields, vanishing, headroom, cap, summary, closed })
}

fn intersection(a: &Echelon, b: &Echelon) -> Echelon {
    let ncols = a.ncols();
    let columns: Vec<Vec<Scalar>> = a.rows().iter().chain(b.rows()).cloned().collect();
    let rows = linalg::columns_to_rows(&columns, ncols);
    let combos = linalg::kernel(&rows, columns.len());
    let vectors: Vec<Vec<Scalar>> = combos
        .iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); ncols];
            for (coef, row) in c.iter().zip(a.rows()) {
                for (x, y) in v.iter_mut().zip(row) {
                    *x += coef * y;
                }
            }
            v
        })
        .collect();
    Echelon::from_rows(&vectors, ncols)
}

/// Re-checks that `field` maps every `p_j - c_j` into the truncation.
pub fn field_preserves_fiber(fiber: &FiberIdeal, field: &AffineMap, headroom: usize) -> Result<bool> {
    let span = fiber.truncated_span(fiber.cap(0, headroom));
    for e in fiber.elements() {
        if !span.contains(&affine_field_apply(field, e)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Linear maps `A` (no translation) with `D_A (p_j - c_j)` in the truncated
/// fiber ideal: the Lie algebra of the linear stabilizer of the fiber.
pub fn linear_fiber_stabilizer(fiber: &FiberIdeal, headroom: usize) -> Result<StabilizerResult> {
    let gens = fiber.generators();
    let n = fiber.nvars();
    let cap = fiber.cap(0, headroom);
    let span = fiber.truncated_span(cap);
    let p = gens.generators();
    let (kernel, equations, rank) = solve_units(n, p.len(), |k, i, j| {
        let image = unit_derivation(i, j, &p[k])?;
        let v = span.monomial_basis().vector(&image).expect("degree within cap");
        Ok(span.echelon().reduce(&v))
    })?;
    let summary = ConstraintSummary { degrees: vec![cap; p.len()], equations, unknowns: n * n, rank };
    Ok(StabilizerResult::new(n, kernel, summary))
}

/// `⊕ gl(m_i) ⊗ Id_{d_i}` for blocks `(d_i, m_i)`, laid out copy by copy.
pub fn block_commutant(n: usize, blocks: &[(usize, usize)]) -> Result<Vec<Matrix>> {
    let total: usize = blocks.iter().map(|(d, m)| d * m).sum();
    check_dim(n, total)?;
    let mut out = Vec::new();
    let mut offset = 0;
    for &(d, m) in blocks {
        for a in 0..m {
            for b in 0..m {
                let mut e = Matrix::zero(n);
                for t in 0..d {
                    e.set(offset + a * d + t, offset + b * d + t, Scalar::one());
                }
                out.push(e);
            }
        }
        offset += d * m;
    }
    Ok(out)
}

/// Is `span(h0) = span(g0) + block commutant`?
pub fn commutant_check(h0: &StabilizerResult, g0: &StabilizerResult, blocks: &[(usize, usize)]) -> Result<bool> {
    let n = h0.ambient();
    check_dim(n, g0.ambient())?;
    let commutant = block_commutant(n, blocks)?;
    let expected = g0.space.sum(&MatrixSpace::span(n, &commutant));
    Ok(expected == h0.space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::nullcone_ideal;
    use crate::invariants::{adjoint_trace_generators, contraction_generators};
    use crate::poly::VarNames;
    use crate::scalar::int;

    fn z4() -> GeneratorSet {
        GeneratorSet::parse(VarNames::new(["x", "y"]).unwrap(), &["x^2", "x*y^2", "y^4"]).unwrap()
    }

    fn cstar() -> GeneratorSet {
        GeneratorSet::parse(VarNames::new(["x", "y", "z"]).unwrap(), &["x*y", "x^2*z"]).unwrap()
    }

    #[test]
    fn z4_algebras() {
        assert_eq!(annihilator_algebra(&z4()).unwrap().dimension(), 0);
        let h0 = ideal_stabilizer_algebra(&nullcone_ideal(z4()).unwrap()).unwrap();
        assert_eq!(h0.dimension(), 3);
        assert!(h0.closed);
        assert!(h0.contains(&Matrix::unit(2, 1, 0)));
        assert!(h0.contains(&Matrix::identity(2)));
    }

    #[test]
    fn cstar_algebras() {
        let g0 = annihilator_algebra(&cstar()).unwrap();
        assert_eq!(g0.dimension(), 1);
        let ideal = nullcone_ideal(cstar()).unwrap();
        let h0 = ideal_stabilizer_algebra(&ideal).unwrap();
        assert_eq!(h0.dimension(), 4);
        // y d/dz: e_y -> e_z
        let y_dz = Matrix::unit(3, 2, 1);
        assert!(h0.contains(&y_dz));
        assert!(preserves_ideal(&ideal, &y_dz).unwrap());
        assert!(g0.space.is_subspace_of(&h0.space));
        assert!(!commutant_check(&h0, &g0, &[(1, 1), (1, 1), (1, 1)]).unwrap());
    }

    #[test]
    fn contraction_case_one() {
        let gens = contraction_generators(2, 1, 1).unwrap();
        assert_eq!(annihilator_algebra(&gens).unwrap().dimension(), 6);
    }

    #[test]
    fn adjoint_sl2() {
        let gens = adjoint_trace_generators(2, false).unwrap();
        let g0 = annihilator_algebra(&gens).unwrap();
        assert_eq!(g0.dimension(), 3);
        let h0 = ideal_stabilizer_algebra(&nullcone_ideal(gens.clone()).unwrap()).unwrap();
        assert_eq!(h0.dimension(), 4);
        assert!(commutant_check(&h0, &g0, &[(3, 1)]).unwrap());
        assert!(commutant_check(&h0, &g0, &[(2, 1)]).is_err());

        let fiber = FiberIdeal::new(gens.clone(), vec![int(1)]).unwrap();
        let aff = affine_stabilizer_algebra(&fiber, 0).unwrap();
        assert_eq!(aff.dimension(), 3);
        assert_eq!(aff.translation_rank(), 0);
        assert!(aff.closed);
        assert!(aff.fields.iter().all(|f| field_preserves_fiber(&fiber, f, 0).unwrap()));

        let cone = FiberIdeal::null_cone(gens).unwrap();
        let aff = affine_stabilizer_algebra(&cone, 2).unwrap();
        assert_eq!(aff.linear_parts(), h0.space);
        assert_eq!(aff.translation_rank(), 0);
    }

    #[test]
    fn watkins_fiber() {
        let gens = adjoint_trace_generators(2, true).unwrap();
        let fiber = FiberIdeal::new(gens, vec![int(3), int(5)]).unwrap();
        let aff = affine_stabilizer_algebra(&fiber, 4).unwrap();
        assert_eq!(aff.dimension(), 7);
        assert_eq!(aff.vanishing_dimension(), 4);
        assert_eq!(aff.effective_dimension(), 3);
        assert_eq!(aff.translation_rank(), 4);
        assert_eq!(aff.effective_translation_rank(), 0);
        assert_eq!(linear_fiber_stabilizer(&fiber, 4).unwrap().dimension(), 3);
    }
}
