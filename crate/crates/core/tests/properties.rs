use monoid_witt::text::{parse_descriptor, parse_element, parse_field_element, parse_witt_vector};
use monoid_witt::verify::{delta_product_rule_holds, delta_sum_rule_holds, standard_configurations};
use monoid_witt::witt_core::{normal_form, quotient_add, quotient_mul};
use monoid_witt::witt_polynomials::{build_witt_polynomials, parse_set};
use monoid_witt::{
    alpha, beta, canonical_map, congruent_mod_ideal_power, Algebra, AlgebraElement, MonoidAlgebraElement as Z,
    WittVector,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn algebras() -> Vec<Algebra> {
    standard_configurations().into_iter().map(|c| c.algebra).collect()
}

fn nth_element(alg: &Algebra, index: u64) -> AlgebraElement {
    let size = alg.cardinality() as u64;
    alg.enumerate().unwrap().nth((index % size) as usize).unwrap()
}

fn build(alg: &Algebra, terms: &[(i64, u64)]) -> Z {
    Z::from_terms(alg, terms.iter().map(|&(c, r)| (BigInt::from(c), nth_element(alg, r)))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(i64, u64)>> {
    prop::collection::vec((-100i64..=100, any::<u64>()), 0..6)
}

fn level_for(alg: &Algebra, pick: usize) -> usize {
    let p = alg.characteristic() as usize;
    let max = if p >= 4 { p.min(5) } else { 3 };
    1 + pick % max
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn element_text_round_trips(a in 0usize..9, t in terms()) {
        let alg = &algebras()[a];
        let x = build(alg, &t);
        prop_assert_eq!(parse_element(&x.to_string(), alg).unwrap(), x);
    }

    #[test]
    fn field_element_text_round_trips(a in 0usize..9, r in any::<u64>()) {
        let alg = &algebras()[a];
        let r = nth_element(alg, r);
        prop_assert_eq!(parse_field_element(&r.to_string(), alg).unwrap(), r);
    }

    #[test]
    fn descriptor_text_round_trips(a in 0usize..9) {
        let alg = &algebras()[a];
        let back = parse_descriptor(&alg.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), alg.to_string());
    }

    #[test]
    fn witt_vector_text_round_trips(a in 0usize..9, coords in prop::collection::vec(any::<u64>(), 1..6)) {
        let alg = &algebras()[a];
        let w = WittVector::new(alg, coords.iter().map(|&c| nth_element(alg, c)).collect()).unwrap();
        prop_assert_eq!(parse_witt_vector(&w.to_string(), alg).unwrap(), w);
    }

    #[test]
    fn field_operations_form_a_ring(a in 0usize..9, r in any::<u64>(), s in any::<u64>(), t in any::<u64>()) {
        let alg = &algebras()[a];
        let (r, s, t) = (nth_element(alg, r), nth_element(alg, s), nth_element(alg, t));
        prop_assert_eq!(&(&r * &s) * &t, &r * &(&s * &t));
        prop_assert_eq!(&r * &(&s + &t), &(&r * &s) + &(&r * &t));
        prop_assert_eq!(r.frobenius().frobenius_inv(), r.clone());
        prop_assert_eq!((&r * &s).frobenius(), &r.frobenius() * &s.frobenius());
    }

    #[test]
    fn delta_identities_hold(a in 0usize..9, t in terms(), u in terms()) {
        let alg = &algebras()[a];
        let (x, y) = (build(alg, &t), build(alg, &u));
        prop_assert!(delta_sum_rule_holds(&x, &y));
        prop_assert!(delta_product_rule_holds(&x, &y));
    }

    #[test]
    fn alpha_agrees_with_the_oracle(a in 0usize..9, t in terms(), pick in 0usize..5) {
        let alg = &algebras()[a];
        let n = level_for(alg, pick);
        let x = build(alg, &t);
        prop_assert_eq!(alpha(&x, n).unwrap(), canonical_map(&x, n).unwrap());
    }

    #[test]
    fn beta_is_a_section(a in 0usize..9, t in terms(), pick in 0usize..5) {
        let alg = &algebras()[a];
        let n = level_for(alg, pick);
        let x = build(alg, &t);
        let w = alpha(&x, n).unwrap();
        prop_assert!(congruent_mod_ideal_power(&beta(&w), &x, n).unwrap());
        prop_assert_eq!(normal_form(&x, n).unwrap(), w);
    }

    #[test]
    fn quotient_operations_follow_alpha(a in 0usize..9, t in terms(), u in terms(), pick in 0usize..5) {
        let alg = &algebras()[a];
        let n = level_for(alg, pick);
        let (x, y) = (build(alg, &t), build(alg, &u));
        let (ax, ay) = (alpha(&x, n).unwrap(), alpha(&y, n).unwrap());
        prop_assert_eq!(quotient_add(&ax, &ay).unwrap(), alpha(&(&x + &y), n).unwrap());
        prop_assert_eq!(quotient_mul(&ax, &ay).unwrap(), alpha(&(&x * &y), n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exchange_format_round_trips(pn in prop::sample::select(vec![(2u64, 1usize), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])) {
        let set = build_witt_polynomials(pn.0, pn.1).unwrap();
        let text = set.to_exchange_string();
        let back = parse_set(&text).unwrap();
        prop_assert_eq!(back.to_exchange_string(), text);
        prop_assert_eq!(back, set);
    }
}
