use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use nullcone::ideals::{GradedIdeal, Membership};
use nullcone::liealg::{is_closed, MatrixLieAlgebra};
use nullcone::scalar::int;
use nullcone::stabilizer::{annihilator_algebra, ideal_stabilizer_algebra};
use nullcone::{derivation_apply, monomials_of_degree, GeneratorSet, Matrix, Monomial, Polynomial};

pub const N: usize = 3;

pub fn small_matrix() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, N * N)
        .prop_map(|v| Matrix::from_flat(N, v.into_iter().map(int).collect()))
}

pub fn small_polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, N), -4i64..=4), 0..5).prop_map(|terms| {
        Polynomial::from_terms(N, terms.into_iter().map(|(e, c)| (Monomial::new(e), int(c))))
    })
}

pub fn homogeneous(d: usize) -> impl Strategy<Value = Polynomial> {
    let count = monomials_of_degree(N, d).len();
    prop::collection::vec((0..count, -3i64..=3), 1..3).prop_map(move |terms| {
        let monos = monomials_of_degree(N, d);
        Polynomial::from_terms(N, terms.into_iter().map(|(k, c)| (monos[k].clone(), int(c))))
    })
}

/// One to three nonzero homogeneous generators of degree 2 or 3.
pub fn generator_set() -> impl Strategy<Value = GeneratorSet> {
    prop::collection::vec((2usize..=3).prop_flat_map(homogeneous), 1..=3).prop_filter_map(
        "nonzero generators",
        |gens| {
            let gens: Vec<Polynomial> = gens.into_iter().filter(|p| !p.is_zero()).collect();
            if gens.is_empty() {
                None
            } else {
                GeneratorSet::with_default_names(N, gens).ok()
            }
        },
    )
}

fn err(e: nullcone::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn leibniz(a: &Matrix, f: &Polynomial, g: &Polynomial) -> Result<(), TestCaseError> {
    let lhs = derivation_apply(a, &(f * g)).map_err(err)?;
    let rhs = &(&derivation_apply(a, f).map_err(err)? * g) + &(f * &derivation_apply(a, g).map_err(err)?);
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// `D_A D_B - D_B D_A = D_{[B, A]}` for `D_A = sum A_ij x_j d/dx_i`.
pub fn commutator(a: &Matrix, b: &Matrix, f: &Polynomial) -> Result<(), TestCaseError> {
    let ab = derivation_apply(a, &derivation_apply(b, f).map_err(err)?).map_err(err)?;
    let ba = derivation_apply(b, &derivation_apply(a, f).map_err(err)?).map_err(err)?;
    let bracket = b.bracket(a).map_err(err)?;
    prop_assert_eq!(&ab - &ba, derivation_apply(&bracket, f).map_err(err)?);
    Ok(())
}

/// A combination of the generators is a member, with a certificate that
/// expands back to it; anything reported outside has a nonzero residual.
pub fn certificate_soundness(
    gens: &GeneratorSet,
    multipliers: &[Polynomial],
    extra: &Polynomial,
) -> Result<(), TestCaseError> {
    let ideal = GradedIdeal::new(gens.clone()).map_err(err)?;
    let d = gens.max_degree() + 1;
    let mut f = Polynomial::zero(N);
    for (p, m) in gens.generators().iter().zip(multipliers) {
        let dm = d - p.degree().unwrap();
        f = &f + &(p * &m.homogeneous_component(dm));
    }
    match ideal.membership(&f).map_err(err)? {
        Membership::Member(cert) => prop_assert!(cert.verifies(&f, gens.generators())),
        Membership::NotMember { .. } => prop_assert!(false, "combination reported outside the ideal"),
    }
    let g = extra.homogeneous_component(d);
    match ideal.membership(&g).map_err(err)? {
        Membership::Member(cert) => prop_assert!(cert.verifies(&g, gens.generators())),
        Membership::NotMember { residual } => {
            prop_assert!(!residual.is_zero());
            prop_assert!(ideal.contains(&(&g - &residual)).map_err(err)?);
        }
    }
    Ok(())
}

pub struct Stabilizers {
    pub g0: nullcone::stabilizer::StabilizerResult,
    pub h0: nullcone::stabilizer::StabilizerResult,
}

pub fn stabilizers(gens: &GeneratorSet) -> Result<Stabilizers, TestCaseError> {
    let g0 = annihilator_algebra(gens).map_err(err)?;
    let h0 = ideal_stabilizer_algebra(&GradedIdeal::new(gens.clone()).map_err(err)?).map_err(err)?;
    Ok(Stabilizers { g0, h0 })
}

pub fn closure(s: &Stabilizers) -> Result<(), TestCaseError> {
    prop_assert!(is_closed(&s.g0.space));
    prop_assert!(is_closed(&s.h0.space));
    prop_assert!(s.g0.closed && s.h0.closed);
    Ok(())
}

pub fn containment(s: &Stabilizers) -> Result<(), TestCaseError> {
    prop_assert!(s.g0.space.is_subspace_of(&s.h0.space));
    Ok(())
}

pub fn identity_inside(s: &Stabilizers) -> Result<(), TestCaseError> {
    prop_assert!(s.h0.contains(&Matrix::identity(N)));
    Ok(())
}

/// `K([x, y], z) = K(x, [y, z])` on elements of `h0` picked by coefficients
/// (three vectors of length at least `dim h0`).
pub fn killing_invariance(s: &Stabilizers, coeffs: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let l = MatrixLieAlgebra::from_space(s.h0.space.clone()).map_err(err)?;
    let pick = |k: usize| l.space().combine(&coeffs[k][..l.dim()].iter().copied().map(int).collect::<Vec<_>>());
    let (x, y, z) = (pick(0), pick(1), pick(2));
    let lhs = l.killing(&x.bracket(&y).map_err(err)?, &z).map_err(err)?;
    let rhs = l.killing(&x, &y.bracket(&z).map_err(err)?).map_err(err)?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn radical_is_ideal(s: &Stabilizers) -> Result<(), TestCaseError> {
    for space in [&s.g0.space, &s.h0.space] {
        let l = MatrixLieAlgebra::from_space(space.clone()).map_err(err)?;
        let rad = l.radical().map_err(err)?;
        for x in l.basis() {
            for r in rad.basis() {
                prop_assert!(rad.contains(&x.bracket(&r).map_err(err)?));
            }
        }
        prop_assert!(rad.is_subspace_of(space));
    }
    Ok(())
}
