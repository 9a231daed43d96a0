//! Structure of matrix Lie algebras over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::matrix::{Matrix, MatrixSpace};
use crate::scalar::{self, Scalar};

/// `AB - BA`.
pub fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.bracket(b)
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

/// Whether every bracket of two basis elements lies in the span.
pub fn is_closed(space: &MatrixSpace) -> bool {
    let basis = space.basis();
    (0..basis.len()).all(|i| (i + 1..basis.len()).all(|j| space.contains(&commutator(&basis[i], &basis[j]))))
}

/// `c[i][j]` holds the coordinates of `[b_i, b_j]` in the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants(pub Vec<Vec<Vec<Scalar>>>);

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.0[i][j]
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Coordinates with respect to an arbitrary independent list of matrices,
/// read off the echelon form of `[flattened basis | identity]`.
struct Coordinator {
    width: usize,
    k: usize,
    echelon: Echelon,
}

impl Coordinator {
    fn new(basis: &[Matrix]) -> Result<Self> {
        let k = basis.len();
        let width = basis.first().map_or(0, |b| b.dim() * b.dim());
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = b.flatten().to_vec();
                r.extend((0..k).map(|t| if t == i { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        let echelon = Echelon::from_rows(&rows, width + k);
        if echelon.pivots().iter().any(|&p| p >= width) {
            return Err(Error::DependentBasis);
        }
        Ok(Coordinator { width, k, echelon })
    }

    fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let mut v = m.flatten().to_vec();
        v.extend(std::iter::repeat_n(Scalar::zero(), self.k));
        let reduced = self.echelon.reduce(&v);
        if reduced[..self.width].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(reduced[self.width..].iter().map(|x| -x).collect())
    }
}

/// Structure constants of `basis` if it spans a Lie algebra, `None` if
/// some bracket leaves the span; fails on a dependent basis.
pub fn close_check(basis: &[Matrix]) -> Result<Option<StructureConstants>> {
    let coord = Coordinator::new(basis)?;
    let k = basis.len();
    let mut c = vec![vec![vec![Scalar::zero(); k]; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let Some(v) = coord.coordinates(&basis[i].bracket(&basis[j])?) else { return Ok(None) };
            c[j][i] = v.iter().map(|x| -x).collect();
            c[i][j] = v;
        }
    }
    Ok(Some(StructureConstants(c)))
}

/// A Lie subalgebra of `gl(n)` with its canonical (reduced echelon) basis.
#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra {
    space: MatrixSpace,
    basis: Vec<Matrix>,
    structure: StructureConstants,
}

impl MatrixLieAlgebra {
    /// Rejects dependent input and spans that are not closed.
    pub fn new(n: usize, basis: &[Matrix]) -> Result<Self> {
        let space = MatrixSpace::span(n, basis);
        if space.dim() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Self::from_space(space)
    }

    pub fn from_space(space: MatrixSpace) -> Result<Self> {
        let basis = space.basis();
        let k = basis.len();
        let mut c = vec![vec![vec![Scalar::zero(); k]; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let v = space.coordinates(&basis[i].bracket(&basis[j])?).ok_or(Error::NotClosed)?;
                c[j][i] = v.iter().map(|x| -x).collect();
                c[i][j] = v;
            }
        }
        Ok(MatrixLieAlgebra { space, basis, structure: StructureConstants(c) })
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn space(&self) -> &MatrixSpace {
        &self.space
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.space.contains(m)
    }

    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        self.space.coordinates(m)
    }

    /// `ad(b_i)` as a dense matrix: column `j` holds the coordinates of `[b_i, b_j]`.
    fn ad_basis(&self, i: usize) -> Vec<Vec<Scalar>> {
        let k = self.dim();
        (0..k).map(|row| (0..k).map(|col| self.structure.get(i, col)[row].clone()).collect()).collect()
    }

    /// Gram matrix of `kappa(x, y) = tr(ad x ad y)` in the basis.
    pub fn killing_form(&self) -> Vec<Vec<Scalar>> {
        let k = self.dim();
        let ads: Vec<Vec<Vec<Scalar>>> = (0..k).map(|i| self.ad_basis(i)).collect();
        let sparse: Vec<Vec<(usize, usize, Scalar)>> = ads
            .iter()
            .map(|ad| {
                let mut nz = Vec::new();
                for (r, row) in ad.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            nz.push((r, c, x.clone()));
                        }
                    }
                }
                nz
            })
            .collect();
        let mut gram = vec![vec![Scalar::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let mut acc = Scalar::zero();
                for (r, c, x) in &sparse[i] {
                    let y = &ads[j][*c][*r];
                    if !y.is_zero() {
                        acc += x * y;
                    }
                }
                gram[j][i] = acc.clone();
                gram[i][j] = acc;
            }
        }
        gram
    }

    /// `kappa(x, y)` for elements of the algebra.
    pub fn killing(&self, x: &Matrix, y: &Matrix) -> Result<Scalar> {
        let not_in = || Error::Invalid("matrix is not in the algebra".into());
        let cx = self.coordinates(x).ok_or_else(not_in)?;
        let cy = self.coordinates(y).ok_or_else(not_in)?;
        let gram = self.killing_form();
        let mut acc = Scalar::zero();
        for (i, a) in cx.iter().enumerate() {
            for (j, b) in cy.iter().enumerate() {
                acc += a * &gram[i][j] * b;
            }
        }
        Ok(acc)
    }

    /// Is the Killing form nondegenerate?
    pub fn killing_nondegenerate(&self) -> bool {
        linalg::rank(&self.killing_form(), self.dim()) == self.dim()
    }

    pub fn derived_algebra(&self) -> MatrixSpace {
        derived(&self.space)
    }

    /// Dimensions of `L, [L,L], [[L,L],[L,L]], ...` until the sequence stabilizes.
    pub fn derived_series(&self) -> Vec<usize> {
        derived_series(&self.space)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last() == Some(&0)
    }

    pub fn is_abelian(&self) -> bool {
        self.derived_algebra().dim() == 0
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> MatrixSpace {
        let k = self.dim();
        // x = sum_i xi_i b_i with sum_i xi_i c[i][j][t] = 0 for all j, t
        let mut rows = Vec::new();
        for j in 0..k {
            for t in 0..k {
                rows.push((0..k).map(|i| self.structure.get(i, j)[t].clone()).collect::<Vec<_>>());
            }
        }
        self.span_of_coordinates(&linalg::kernel(&rows, k))
    }

    fn span_of_coordinates(&self, coords: &[Vec<Scalar>]) -> MatrixSpace {
        let mats: Vec<Matrix> = coords.iter().map(|c| self.space.combine(c)).collect();
        MatrixSpace::span(self.ambient(), &mats)
    }

    /// Solvable radical: the Killing-orthogonal of `[L, L]` inside `L`,
    /// re-verified to be a solvable ideal.
    pub fn radical(&self) -> Result<MatrixSpace> {
        let k = self.dim();
        let gram = self.killing_form();
        let derived = self.derived_algebra();
        let mut rows = Vec::new();
        for y in derived.basis() {
            let eta = self.coordinates(&y).ok_or_else(|| Error::Internal("derived algebra left the algebra".into()))?;
            rows.push((0..k).map(|i| (0..k).fold(Scalar::zero(), |acc, j| acc + &gram[i][j] * &eta[j])).collect::<Vec<_>>());
        }
        let rad = self.span_of_coordinates(&linalg::kernel(&rows, k));
        for b in &self.basis {
            for r in rad.basis() {
                if !rad.contains(&b.bracket(&r)?) {
                    return Err(Error::Internal("radical is not an ideal".into()));
                }
            }
        }
        if derived_series(&rad).last() != Some(&0) {
            return Err(Error::Internal("radical is not solvable".into()));
        }
        Ok(rad)
    }
}

fn derived(space: &MatrixSpace) -> MatrixSpace {
    let basis = space.basis();
    let mut brackets = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let b = commutator(&basis[i], &basis[j]);
            if !b.is_zero() {
                brackets.push(b);
            }
        }
    }
    MatrixSpace::span(space.ambient(), &brackets)
}

/// Derived series of a bracket-closed span.
pub fn derived_series(space: &MatrixSpace) -> Vec<usize> {
    let mut dims = vec![space.dim()];
    let mut cur = space.clone();
    while cur.dim() > 0 {
        let next = derived(&cur);
        let stable = next.dim() == cur.dim();
        dims.push(next.dim());
        if stable {
            break;
        }
        cur = next;
    }
    dims
}

pub fn is_nilpotent(a: &Matrix) -> bool {
    a.is_nilpotent()
}

/// Coefficients (constant term first) of the monic minimal polynomial.
pub fn minimal_polynomial(a: &Matrix) -> Vec<Scalar> {
    let n = a.dim();
    let mut powers: Vec<Vec<Scalar>> = vec![Matrix::identity(n).flatten().to_vec()];
    let mut cur = Matrix::identity(n);
    loop {
        cur = &cur * a;
        let target = cur.flatten().to_vec();
        let rows = linalg::columns_to_rows(&powers, n * n);
        if let Some(x) = linalg::solve(&rows, &target, powers.len()) {
            let mut mu: Vec<Scalar> = x.into_iter().map(|c| -c).collect();
            mu.push(Scalar::one());
            return mu;
        }
        powers.push(target);
    }
}

fn trim(p: &mut Vec<Scalar>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty") / &lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Diagonalizable over the algebraic closure: the minimal polynomial is
/// squarefree, i.e. coprime to its derivative.
pub fn is_semisimple_matrix(a: &Matrix) -> bool {
    let mu = minimal_polynomial(a);
    let deriv: Vec<Scalar> = mu.iter().enumerate().skip(1).map(|(k, c)| c * scalar::int(k as i64)).collect();
    poly_gcd(&mu, &deriv).len() == 1
}

/// Whether every element of the span is nilpotent, assuming the span lies
/// in a solvable algebra: the associative powers of the span vanish by
/// step `n`.
pub fn is_nil_subspace(space: &MatrixSpace) -> bool {
    let n = space.ambient();
    let gens = space.basis();
    let mut power = space.clone();
    for _ in 1..n {
        if power.dim() == 0 {
            return true;
        }
        let products: Vec<Matrix> = power.basis().iter().flat_map(|p| gens.iter().map(move |g| p * g)).collect();
        power = MatrixSpace::span(n, &products);
    }
    power.dim() == 0
}

/// Nilpotent elements of a solvable matrix algebra `r`, computed as the
/// radical of the trace form `tr(xy)` on `r`; `None` if that radical is
/// not a nil subspace.
pub fn nilpotent_part(r: &MatrixSpace) -> Option<MatrixSpace> {
    let basis = r.basis();
    let k = basis.len();
    let rows: Vec<Vec<Scalar>> =
        (0..k).map(|i| (0..k).map(|j| (&basis[i] * &basis[j]).trace()).collect()).collect();
    let kernel = linalg::kernel(&rows, k);
    let nil = MatrixSpace::span(r.ambient(), &kernel.iter().map(|c| r.combine(c)).collect::<Vec<_>>());
    is_nil_subspace(&nil).then_some(nil)
}

/// Three-valued reductivity verdict for a matrix Lie algebra acting on `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductivityVerdict {
    Reductive,
    /// A nonzero nilpotent matrix in the radical.
    NonReductive { witness: Matrix },
    Indeterminate(String),
}

impl ReductivityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ReductivityVerdict::Reductive => "reductive",
            ReductivityVerdict::NonReductive { .. } => "non-reductive",
            ReductivityVerdict::Indeterminate(_) => "indeterminate",
        }
    }
}

const WITNESS_COEFFS: [i64; 4] = [-2, -1, 1, 2];

/// Radical zero, or abelian with semisimple basis: reductive. Otherwise the
/// first nonzero nilpotent among the basis of `[r, r]`, the basis of `r`,
/// and the combinations `a b_i + c b_j` with `a, c` in `{-2, -1, 1, 2}` is a
/// witness; failing that the verdict is indeterminate.
pub fn reductivity_verdict(l: &MatrixLieAlgebra) -> Result<ReductivityVerdict> {
    let rad = l.radical()?;
    if rad.dim() == 0 {
        return Ok(ReductivityVerdict::Reductive);
    }
    let rad_basis = rad.basis();
    let derived_rad = derived(&rad);
    if derived_rad.dim() == 0 && rad_basis.iter().all(is_semisimple_matrix) {
        return Ok(ReductivityVerdict::Reductive);
    }
    let accept = |m: &Matrix| !m.is_zero() && m.is_nilpotent() && rad.contains(m);
    for m in derived_rad.basis().into_iter().chain(rad_basis.iter().cloned()) {
        if accept(&m) {
            return Ok(ReductivityVerdict::NonReductive { witness: m });
        }
    }
    for i in 0..rad_basis.len() {
        for j in i + 1..rad_basis.len() {
            for a in WITNESS_COEFFS {
                for c in WITNESS_COEFFS {
                    let m = &rad_basis[i].scale(&scalar::int(a)) + &rad_basis[j].scale(&scalar::int(c));
                    if accept(&m) {
                        return Ok(ReductivityVerdict::NonReductive { witness: m });
                    }
                }
            }
        }
    }
    Ok(ReductivityVerdict::Indeterminate(format!(
        "radical of dimension {} has no nilpotent element in the searched combinations",
        rad.dim()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_int_rows(rows).unwrap()
    }

    fn sl2() -> Vec<Matrix> {
        vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]]), m(&[&[1, 0], &[0, -1]])]
    }

    #[test]
    fn brackets() {
        let [e, f, h]: [Matrix; 3] = sl2().try_into().unwrap();
        assert!(bracket(&e, &e).unwrap().is_zero());
        assert_eq!(bracket(&e, &f).unwrap(), h);
        assert_eq!(bracket(&h, &f).unwrap(), f.scale(&int(-2)));
    }

    #[test]
    fn closure() {
        let so3 = vec![
            m(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]),
            m(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
            m(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]),
        ];
        assert!(close_check(&so3).unwrap().is_some());
        let [e, f, _h]: [Matrix; 3] = sl2().try_into().unwrap();
        assert!(close_check(&[e.clone(), f]).unwrap().is_none());
        assert_eq!(close_check(&[e.clone(), e.scale(&int(2))]).unwrap_err(), Error::DependentBasis);
        let sc = close_check(&sl2()).unwrap().unwrap();
        assert_eq!(sc.get(0, 1), &[int(0), int(0), int(1)]);
    }

    #[test]
    fn series_and_radicals() {
        let l = MatrixLieAlgebra::new(2, &sl2()).unwrap();
        assert_eq!(l.derived_series(), vec![3, 3]);
        assert_eq!(l.radical().unwrap().dim(), 0);
        assert!(l.killing_nondegenerate());
        assert_eq!(reductivity_verdict(&l).unwrap(), ReductivityVerdict::Reductive);

        let b = MatrixLieAlgebra::new(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]]), m(&[&[0, 0], &[1, 0]])]).unwrap();
        assert_eq!(b.derived_series(), vec![3, 1, 0]);
        assert!(b.is_solvable());
        match reductivity_verdict(&b).unwrap() {
            ReductivityVerdict::NonReductive { witness } => assert_eq!(witness, m(&[&[0, 0], &[1, 0]])),
            other => panic!("{other:?}"),
        }

        let diag = MatrixLieAlgebra::new(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]])]).unwrap();
        assert_eq!(diag.derived_series(), vec![2, 0]);
        assert_eq!(diag.center().dim(), 2);
        assert_eq!(reductivity_verdict(&diag).unwrap(), ReductivityVerdict::Reductive);

        assert_eq!(MatrixLieAlgebra::new(2, &sl2()[..2]).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn matrix_predicates() {
        assert!(is_nilpotent(&m(&[&[0, 0], &[1, 0]])));
        assert!(is_semisimple_matrix(&m(&[&[1, 0], &[0, -1]])));
        assert!(is_semisimple_matrix(&m(&[&[0, 1], &[-1, 0]])));
        assert!(!is_semisimple_matrix(&m(&[&[1, 1], &[0, 1]])));
        assert!(is_semisimple_matrix(&Matrix::zero(3)));
        assert_eq!(minimal_polynomial(&Matrix::identity(3)), vec![int(-1), int(1)]);
    }

    #[test]
    fn nilpotent_part_of_a_borel() {
        let r = MatrixSpace::span(2, &[m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]]), m(&[&[0, 0], &[1, 0]])]);
        let nil = nilpotent_part(&r).unwrap();
        assert_eq!(nil, MatrixSpace::span(2, &[m(&[&[0, 0], &[1, 0]])]));
    }
}
