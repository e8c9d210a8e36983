mod common;

use common::{chain_tree, scramble, with_universe};
use necklace::autgroup::homogeneity_group;
use necklace::equivalence::sher_equivalent;
use necklace::genus::genus_spectrum;
use necklace::model::{canonical_serialize, deserialize, validate};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_trees_validate_and_round_trip(root in chain_tree()) {
        let s = with_universe(root);
        prop_assert!(validate(&s).is_ok(), "{}", validate(&s));
        let bytes = canonical_serialize(&s);
        prop_assert_eq!(deserialize(&bytes).unwrap(), s);
    }

    #[test]
    fn reflexive(root in chain_tree()) {
        let s = with_universe(root);
        let e = sher_equivalent(&s, &s).unwrap();
        let cert = e.certificate().expect("a sequence matches itself");
        prop_assert!(cert.verify(&s, &s));
    }

    #[test]
    fn scrambled_copies_are_equivalent_both_ways(
        root in chain_tree(),
        choices in prop::collection::vec(0usize..64, 80),
    ) {
        let a = with_universe(root);
        let b = with_universe(scramble(&a.root, &mut choices.into_iter()));
        let ab = sher_equivalent(&a, &b).unwrap();
        let cert = ab.certificate().expect("scrambling preserves equivalence");
        prop_assert!(cert.verify(&a, &b));
        prop_assert!(cert.inverse().verify(&b, &a));
        prop_assert!(sher_equivalent(&b, &a).unwrap().is_equivalent());
    }

    #[test]
    fn certificates_compose(
        root in chain_tree(),
        c1 in prop::collection::vec(0usize..64, 80),
        c2 in prop::collection::vec(0usize..64, 80),
    ) {
        let a = with_universe(root);
        let b = with_universe(scramble(&a.root, &mut c1.into_iter()));
        let c = with_universe(scramble(&b.root, &mut c2.into_iter()));
        let ab = sher_equivalent(&a, &b).unwrap().certificate().unwrap().clone();
        let bc = sher_equivalent(&b, &c).unwrap().certificate().unwrap().clone();
        let ac = ab.then(&bc).expect("certificates are composable");
        prop_assert!(ac.verify(&a, &c));
        prop_assert!(sher_equivalent(&a, &c).unwrap().is_equivalent());
    }

    #[test]
    fn symmetric_verdicts(x in chain_tree(), y in chain_tree()) {
        let (a, b) = (with_universe(x), with_universe(y));
        let ab = sher_equivalent(&a, &b).unwrap().is_equivalent();
        let ba = sher_equivalent(&b, &a).unwrap().is_equivalent();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn equivalent_sequences_share_invariants(
        root in chain_tree(),
        choices in prop::collection::vec(0usize..64, 80),
    ) {
        let a = with_universe(root);
        let b = with_universe(scramble(&a.root, &mut choices.into_iter()));
        let (ga, gb) = (homogeneity_group(&a), homogeneity_group(&b));
        prop_assert_eq!(ga.is_ok(), gb.is_ok());
        if let (Ok(ga), Ok(gb)) = (ga, gb) {
            prop_assert_eq!(ga.as_abelian(), gb.as_abelian());
            prop_assert_eq!(ga.finite_order(), gb.finite_order());
        }
        let (sa, sb) = (genus_spectrum(&a), genus_spectrum(&b));
        prop_assert_eq!(sa.is_ok(), sb.is_ok());
        if let (Ok(sa), Ok(sb)) = (sa, sb) {
            prop_assert_eq!(sa.counts, sb.counts);
        }
    }
}
