mod support;

use nullcone::ideals::{regular_sequence_check, FiberIdeal, GradedIdeal, RegSeqVerdict};
use nullcone::invariants::{self, GeneratorSet};
use nullcone::scalar::int;
use nullcone::stabilizer::{
    affine_stabilizer_algebra, annihilator_algebra, ideal_stabilizer_algebra, linear_fiber_stabilizer,
};
use nullcone::{Polynomial, VarNames};
use support::oracle::*;

fn explicit(vars: &[&str], polys: &[&str]) -> GeneratorSet {
    GeneratorSet::parse(VarNames::new(vars.iter().copied()).unwrap(), polys).unwrap()
}

/// Frozen dimensions `(g0, h0)` per scenario.
fn cases() -> Vec<(&'static str, GeneratorSet, usize, usize)> {
    vec![
        ("z4", explicit(&["x", "y"], &["x^2", "x*y^2", "y^4"]), 0, 3),
        ("cstar", explicit(&["x", "y", "z"], &["x*y", "x^2*z"]), 1, 4),
        ("contraction (2,1,1)", invariants::contraction_generators(2, 1, 1).unwrap(), 6, 7),
        ("contraction (2,1,2)", invariants::contraction_generators(2, 1, 2).unwrap(), 6, 10),
        ("contraction (2,2,2)", invariants::contraction_generators(2, 2, 2).unwrap(), 4, 11),
        ("sym2 + vector", invariants::sym2_vector_generators(2).unwrap(), 3, 7),
        ("adjoint sl2", invariants::adjoint_trace_generators(2, false).unwrap(), 3, 4),
        ("adjoint sl3", invariants::adjoint_trace_generators(3, false).unwrap(), 8, 9),
        ("pfaffian", invariants::pfaffian_scenario_generators(), 55, 56),
    ]
}

#[test]
fn oracle_confirms_frozen_stabilizer_dimensions() {
    for (name, gens, g0, h0) in cases() {
        let n = gens.nvars();
        assert_eq!(annihilator_dim(n, gens.generators()), g0, "{name}: g0");
        assert_eq!(ideal_stabilizer_dim(n, gens.generators()), h0, "{name}: h0");
    }
}

#[test]
fn library_agrees_with_oracle_on_stabilizers() {
    for (name, gens, g0, h0) in cases() {
        assert_eq!(annihilator_algebra(&gens).unwrap().dimension(), g0, "{name}: g0");
        let ideal = GradedIdeal::new(gens.clone()).unwrap();
        assert_eq!(ideal_stabilizer_algebra(&ideal).unwrap().dimension(), h0, "{name}: h0");
    }
}

#[test]
fn oracle_confirms_affine_counts() {
    // sl2 adjoint, fiber q = 1, headroom 0: cap = 2, 12 unknowns.
    let sl2 = invariants::adjoint_trace_generators(2, false).unwrap();
    let counts = affine_counts(3, sl2.generators(), &[int(1)], 2);
    assert_eq!(counts, AffineCounts { dimension: 3, translation_rank: 0, linear_dimension: 3 });
    let lib = affine_stabilizer_algebra(&FiberIdeal::new(sl2, vec![int(1)]).unwrap(), 0).unwrap();
    assert_eq!((lib.dimension(), lib.translation_rank()), (3, 0));

    // gl2 adjoint, fiber tr = 3, tr^2 = 5, default headroom 4: cap = 6, 20 unknowns.
    let gl2 = invariants::adjoint_trace_generators(2, true).unwrap();
    let counts = affine_counts(4, gl2.generators(), &[int(3), int(5)], 6);
    assert_eq!(counts, AffineCounts { dimension: 7, translation_rank: 4, linear_dimension: 3 });
    let fiber = FiberIdeal::new(gl2, vec![int(3), int(5)]).unwrap();
    let lib = affine_stabilizer_algebra(&fiber, 4).unwrap();
    assert_eq!((lib.dimension(), lib.translation_rank()), (7, 4));
    assert_eq!(linear_fiber_stabilizer(&fiber, 4).unwrap().dimension(), 3);
    assert_eq!((lib.effective_dimension(), lib.effective_translation_rank()), (3, 0));
}

#[test]
fn oracle_confirms_noncofree_hilbert_count() {
    let expected = complete_intersection_series(3, &[2, 3], 4);
    assert_eq!(expected, vec![1, 3, 5, 6, 6]);
    let standard: Vec<usize> = (0..=4).map(|d| standard_monomial_count(3, &[vec![1, 1, 0], vec![2, 0, 1]], d)).collect();
    assert_eq!(standard, vec![1, 3, 5, 6, 7]);
    // First disagreement at degree 4: 6 expected, 7 actual.
    let first = (0..=4).find(|&d| standard[d] as i64 != expected[d]).unwrap();
    assert_eq!((first, expected[first], standard[first]), (4, 6, 7));

    let gens = explicit(&["x", "y", "z"], &["x*y", "x^2*z"]);
    assert_eq!(
        regular_sequence_check(&gens, 4).unwrap(),
        RegSeqVerdict::NotRegular { witness_degree: 4, expected_dim: 6, actual_dim: 7 }
    );
}

#[test]
fn oracle_null_space_basics() {
    let q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    // Columns (1,2), (2,4), (0,1): kernel spanned by (2,-1,0).
    let k = null_space(&[q(&[1, 2]), q(&[2, 4]), q(&[0, 1])]);
    assert_eq!(k.len(), 1);
    assert_eq!(RowSpace::new(3, [k[0].clone(), q(&[2, -1, 0])]).rank(), 1);
    assert_eq!(exponent_vectors(3, 2).len(), 6);
    let p = Polynomial::parse("x*y", &VarNames::new(["x", "y"]).unwrap()).unwrap();
    assert_eq!(annihilator_dim(2, &[p]), 1);
}
