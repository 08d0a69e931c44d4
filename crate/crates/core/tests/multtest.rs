// SPDX-License-Identifier: MIT OR Apache-2.0

use mcp2::multtest::*;
use proptest::prelude::*;

mod common;
use common::{bh_brute_force, bonferroni_brute_force};

/// P-values with a healthy share of small values and exact ties.
fn pvalues() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![0.0f64..0.02, 0.0f64..1.0, Just(0.01), Just(0.05), Just(1.0),],
        0..=20,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn procedures_match_brute_force(p in pvalues(), alpha in 0.001f64..0.5) {
        prop_assert_eq!(bh_procedure(&p, alpha).unwrap().rejected, bh_brute_force(&p, alpha));
        prop_assert_eq!(
            bonferroni_procedure(&p, alpha).unwrap().rejected,
            bonferroni_brute_force(&p, alpha)
        );
    }

    #[test]
    fn bonferroni_rejections_are_bh_rejections(p in pvalues(), alpha in 0.001f64..0.5) {
        let bh = bh_procedure(&p, alpha).unwrap();
        let bonf = bonferroni_procedure(&p, alpha).unwrap();
        for (b, f) in bh.rejected.iter().zip(&bonf.rejected) {
            prop_assert!(!f || *b);
        }
    }

    #[test]
    fn lowering_a_p_value_never_loses_rejections(
        p in pvalues(),
        i in any::<prop::sample::Index>(),
        shrink in 0.0f64..1.0,
    ) {
        prop_assume!(!p.is_empty());
        let i = i.index(p.len());
        let mut lower = p.clone();
        lower[i] *= shrink;
        for c in [Correction::Bh, Correction::Bonferroni] {
            let before = c.apply(&p, 0.05).unwrap();
            let after = c.apply(&lower, 0.05).unwrap();
            prop_assert!(after.rejected_indices().count() >= before.rejected_indices().count());
            prop_assert!(!before.rejected[i] || after.rejected[i]);
        }
    }

    #[test]
    fn rejections_follow_a_permutation(p in pvalues(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..p.len()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled: Vec<f64> = perm.iter().map(|&j| p[j]).collect();
        for c in [Correction::Bh, Correction::Bonferroni] {
            let base = c.apply(&p, 0.05).unwrap();
            let moved = c.apply(&shuffled, 0.05).unwrap();
            for (k, &j) in perm.iter().enumerate() {
                prop_assert_eq!(moved.rejected[k], base.rejected[j]);
            }
        }
    }
}

#[test]
fn empty_input_rejects_nothing() {
    for c in [Correction::Bh, Correction::Bonferroni] {
        let out = c.apply(&[], 0.05).unwrap();
        assert!(out.rejected.is_empty());
    }
}

#[test]
fn invalid_inputs_are_refused() {
    assert!(bh_procedure(&[0.1, 1.5], 0.05).is_err());
    assert!(bh_procedure(&[0.1, f64::NAN], 0.05).is_err());
    assert!(bonferroni_procedure(&[0.1], 0.0).is_err());
    assert!(bonferroni_procedure(&[0.1], 1.0).is_err());
}

#[test]
fn bh_rejects_more_than_bonferroni_on_a_textbook_vector() {
    let p = [
        0.001, 0.008, 0.039, 0.041, 0.042, 0.06, 0.074, 0.205, 0.212, 0.216,
    ];
    let bh: Vec<usize> = bh_procedure(&p, 0.05).unwrap().rejected_indices().collect();
    let bonf: Vec<usize> = bonferroni_procedure(&p, 0.05)
        .unwrap()
        .rejected_indices()
        .collect();
    assert_eq!(bh, vec![0, 1]);
    assert_eq!(bonf, vec![0]);
}
