mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use sqrtpc::polyring::{multilinear_reduce, Polynomial, Scalar, VarId};

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_a_commutative_group(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &Polynomial::zero(), a.clone());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
    }

    #[test]
    fn lin_comb_matches_scale_and_add(a in poly(), b in poly(), s in scalar(), t in scalar()) {
        prop_assert_eq!(a.lin_comb(&s, &b, &t), &a.scale(&s) + &b.scale(&t));
    }

    #[test]
    fn canonical_form_ignores_term_order(terms in proptest::collection::vec((monomial(vec![VarId::x(1), VarId::x(2)], 2), scalar()), 0..6)) {
        let forward = Polynomial::from_terms(terms.clone());
        let backward = Polynomial::from_terms(terms.into_iter().rev());
        prop_assert_eq!(&forward, &backward);
        prop_assert!(forward.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn scaling_substitution_inverts(a in poly(), t in 1i64..=12) {
        // treat x₁ as the scaled variable: x₁ ↦ t·x₁ then x₁ ↦ x₁/t
        let v = VarId::x(1);
        let up = BTreeMap::from([(v, Polynomial::var(v).scale(&Scalar::from_int(t)))]);
        let down = BTreeMap::from([(v, Polynomial::var(v).scale(&Scalar::new(1, t).unwrap()))]);
        prop_assert_eq!(a.substitute(&up).substitute(&down), a);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), pt in proptest::collection::vec(scalar(), NVARS as usize)) {
        let point: BTreeMap<VarId, Scalar> = pt.into_iter().enumerate().map(|(i, s)| (VarId::x(i as u32 + 1), s)).collect();
        let (ea, eb) = (a.evaluate(&point).unwrap(), b.evaluate(&point).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&point).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&point).unwrap(), &ea + &eb);
    }

    #[test]
    fn reduction_is_exhaustive_and_exact(a in poly(), keep in proptest::collection::btree_set(1..=NVARS, 0..=NVARS as usize)) {
        let vars: BTreeSet<VarId> = keep.into_iter().map(VarId::x).collect();
        let (reduced, ledger) = multilinear_reduce(&a, &vars);
        for (m, _) in reduced.terms() {
            for v in &vars {
                prop_assert!(m.exponent(*v) <= 1, "{} still has {}²", m, v);
            }
        }
        let replay = ledger.iter().fold(reduced.clone(), |acc, s| &acc + &s.polynomial());
        prop_assert_eq!(&replay, &a);
        if vars.len() == NVARS as usize {
            for point in cube(NVARS) {
                let point = as_scalars(&point);
                prop_assert_eq!(reduced.evaluate(&point).unwrap(), a.evaluate(&point).unwrap());
            }
        }
    }

    #[test]
    fn size_is_additive_under_disjoint_concatenation(a in int_poly(), b in int_poly()) {
        let lines = [a.clone(), b.clone()];
        let total: u64 = lines.iter().map(|p| p.size_paper()).sum();
        prop_assert_eq!(total, a.size_paper() + b.size_paper());
        prop_assert!(a.is_integral());
    }
}
