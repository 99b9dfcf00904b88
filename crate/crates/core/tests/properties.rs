use std::collections::BTreeSet;

use proptest::prelude::*;
use seaweed_core::index::closed_form_gcd;
use seaweed_core::liealg::{brute_index, realize, rotate_cuts, DEFAULT_SEED};
use seaweed_core::render::{to_json, Document};
use seaweed_core::verify::{check_instance, invariant_suite, VerifyConfig};
use seaweed_core::{analyze, CutPair, Family, Flavor, Oracles};

fn cuts_for(flavor: Flavor, outer_mask: u64, inner_mask: u64) -> CutPair {
    let pick = |mask: u64| -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = flavor
            .root_indices()
            .filter(|&i| mask >> flavor.slot(i) & 1 == 1)
            .collect();
        if flavor.is_affine() && s.is_empty() {
            s.insert(flavor.first_root());
        }
        s
    };
    CutPair {
        outer: pick(outer_mask),
        inner: pick(inner_mask),
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// A flavor of moderate rank with random cuts.
fn instance(max_rank: usize) -> impl Strategy<Value = (Flavor, CutPair)> {
    (family(), 0..max_rank, any::<u64>(), any::<u64>()).prop_map(|(family, extra, o, i)| {
        let flavor = Flavor::new(family, family.min_rank() + extra).unwrap();
        let cuts = cuts_for(flavor, o, i);
        (flavor, cuts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn formula_matches_tyj_and_invariants_hold((flavor, cuts) in instance(24)) {
        let a = analyze(flavor, &cuts, &Oracles::default()).unwrap();
        prop_assert_eq!(a.report.index_tyj, Some(a.report.index_combinatorial));
        invariant_suite(&a.graph, &a.components, a.tyj.as_ref().unwrap()).map_err(|f| TestCaseError::fail(f.to_string()))?;
    }

    #[test]
    fn swapping_cuts_preserves_index((flavor, cuts) in instance(24)) {
        let a = analyze(flavor, &cuts, &Oracles::default()).unwrap().report;
        let b = analyze(flavor, &cuts.swapped(), &Oracles::default()).unwrap().report;
        prop_assert_eq!(a.index_combinatorial, b.index_combinatorial);
    }

    #[test]
    fn rotating_affine_a_cuts_preserves_index(n in 2_usize..40, o in any::<u64>(), i in any::<u64>(), k in 0_usize..40) {
        let flavor = Flavor::affine_a(n).unwrap();
        let cuts = cuts_for(flavor, o, i);
        let rotated = rotate_cuts(n, &cuts, k);
        let a = analyze(flavor, &cuts, &Oracles::default()).unwrap().report;
        let b = analyze(flavor, &rotated, &Oracles::default()).unwrap().report;
        prop_assert_eq!(a.index_combinatorial, b.index_combinatorial);
        prop_assert_eq!(a.iota, b.iota);
    }

    #[test]
    fn json_round_trips((flavor, cuts) in instance(12)) {
        let a = analyze(flavor, &cuts, &Oracles::default()).unwrap();
        let back: Document = serde_json::from_str(&to_json(&a)).unwrap();
        prop_assert_eq!(back, Document::new(&a));
    }

    #[test]
    fn single_cut_pairs_follow_gcd_rule(n in 2_usize..200, d in 1_usize..100) {
        let d = 1 + d % (n / 2);
        let flavor = Flavor::affine_a(n).unwrap();
        let a = analyze(flavor, &CutPair::new([0], [d]), &Oracles::default()).unwrap().report;
        prop_assert_eq!(a.index_combinatorial, closed_form_gcd(n, d).unwrap());
    }

    #[test]
    fn index_is_nonnegative_and_bounded((flavor, cuts) in instance(24)) {
        let a = analyze(flavor, &cuts, &Oracles::default()).unwrap().report;
        prop_assert!(a.index_combinatorial >= 0);
        prop_assert!(a.index_combinatorial <= flavor.vertex_count() as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brute_force_matches_formula_beyond_exhaustive_bounds(
        affine in any::<bool>(), n in 7_usize..9, o in any::<u64>(), i in any::<u64>()
    ) {
        let flavor = if affine { Flavor::affine_a(n) } else { Flavor::finite_a(n) }.unwrap();
        let cuts = cuts_for(flavor, o, i);
        let cfg = VerifyConfig { brute: Some(Default::default()) };
        let outcome = check_instance(flavor, &cuts, &cfg).map_err(|f| TestCaseError::fail(f.to_string()))?;
        prop_assert!(outcome.brute_checked);
    }

    #[test]
    fn brute_force_never_undershoots(n in 2_usize..6, o in any::<u64>(), i in any::<u64>(), seed in any::<u64>()) {
        let flavor = Flavor::affine_a(n).unwrap();
        let cuts = cuts_for(flavor, o, i);
        let truth = analyze(flavor, &cuts, &Oracles::default()).unwrap().report.index_combinatorial;
        let sc = realize(flavor, &cuts).unwrap();
        prop_assert!(brute_index(&sc, 1, seed ^ DEFAULT_SEED) as i64 >= truth);
    }
}
