use profile_galois::{entails, equivalent, Atom, Formula, SzondiProfile};
use profile_galois::{spp_formula, Signature};
use proptest::prelude::*;

/// Atoms used by generated formulas; small enough for a truth table.
const POOL: usize = 10;

fn pool_atom(i: usize) -> Atom {
    // spread over several factors and signatures
    Atom::from_index((i * 37) % Atom::COUNT).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        8 => (0..POOL).prop_map(|i| Formula::Atom(pool_atom(i))),
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::And),
            prop::collection::vec(inner, 0..4).prop_map(Formula::Or),
        ]
    })
}

/// Truth of `phi` under the valuation making pool atom `i` true iff bit `i`
/// of `bits` is set.
fn truth(phi: &Formula, bits: u32) -> bool {
    match phi {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(a) => (0..POOL).any(|i| pool_atom(i) == *a && bits & (1 << i) != 0),
        Formula::And(xs) => xs.iter().all(|x| truth(x, bits)),
        Formula::Or(xs) => xs.iter().any(|x| truth(x, bits)),
    }
}

fn table_entails(sigma: &Formula, phi: &Formula) -> bool {
    (0..1u32 << POOL).all(|bits| !truth(sigma, bits) || truth(phi, bits))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn entailment_matches_truth_tables(sigma in formula(), phi in formula()) {
        prop_assert_eq!(entails(&sigma, &phi).unwrap(), table_entails(&sigma, &phi));
    }

    #[test]
    fn entailment_is_a_preorder(a in formula(), b in formula(), c in formula()) {
        prop_assert!(entails(&a, &a).unwrap());
        if entails(&a, &b).unwrap() && entails(&b, &c).unwrap() {
            prop_assert!(entails(&a, &c).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_equivalent(phi in formula()) {
        let c = phi.canonical();
        prop_assert!(equivalent(&phi, &c).unwrap());
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn text_round_trip(phi in formula()) {
        let parsed: Formula = phi.to_string().parse().unwrap();
        prop_assert_eq!(parsed, phi);
    }

    #[test]
    fn profile_entailment_is_evaluation(
        sigs in prop::array::uniform8((0..Signature::COUNT).prop_map(|i| Signature::from_index(i).unwrap())),
        phi in formula(),
    ) {
        let p = SzondiProfile::new(sigs);
        prop_assert_eq!(entails(&spp_formula(&p), &phi).unwrap(), phi.eval(&p));
    }
}
