mod support;

use proptest::prelude::*;

use nullcone::poly::VarNames;
use nullcone::Polynomial;
use support::properties::*;

fn coefficient_vectors() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, N * N), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivations_obey_leibniz(a in small_matrix(), f in small_polynomial(), g in small_polynomial()) {
        leibniz(&a, &f, &g)?;
    }

    #[test]
    fn derivation_commutator_is_bracket(a in small_matrix(), b in small_matrix(), f in small_polynomial()) {
        commutator(&a, &b, &f)?;
    }

    #[test]
    fn membership_certificates_expand_back(
        gens in generator_set(),
        multipliers in prop::collection::vec(small_polynomial(), 3),
        extra in small_polynomial(),
    ) {
        certificate_soundness(&gens, &multipliers, &extra)?;
    }

    #[test]
    fn stabilizers_are_closed_under_bracket(gens in generator_set()) {
        closure(&stabilizers(&gens)?)?;
    }

    #[test]
    fn annihilator_sits_inside_ideal_stabilizer(gens in generator_set()) {
        containment(&stabilizers(&gens)?)?;
    }

    #[test]
    fn identity_preserves_homogeneous_ideals(gens in generator_set()) {
        identity_inside(&stabilizers(&gens)?)?;
    }

    #[test]
    fn killing_form_is_ad_invariant(gens in generator_set(), coeffs in coefficient_vectors()) {
        killing_invariance(&stabilizers(&gens)?, &coeffs)?;
    }

    #[test]
    fn radical_is_an_ideal(gens in generator_set()) {
        radical_is_ideal(&stabilizers(&gens)?)?;
    }

    #[test]
    fn polynomial_text_round_trips(f in small_polynomial()) {
        let names = VarNames::default_for(N);
        let text = f.to_string_with(&names);
        prop_assert_eq!(Polynomial::parse(&text, &names).unwrap(), f);
    }

    #[test]
    fn multiplication_distributes(f in small_polynomial(), g in small_polynomial(), h in small_polynomial()) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
    }
}
