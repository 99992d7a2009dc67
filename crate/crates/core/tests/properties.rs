mod common;

use chordal_core::chordal::{complete_with_order, graph_of_system};
use chordal_core::cliques::{cliques_elim, merge_solutions, MergeMode, MergeResult};
use chordal_core::elim::chordal_eliminate;
use chordal_core::gen::gen_colorings;
use chordal_core::groebner::elimination_ideal;
use chordal_core::{EliminationOptions, FieldSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const SMALL: SystemShape = SystemShape {
    max_vars: 4,
    max_gens: 5,
    max_degree: 3,
    max_support: 2,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certified_levels_have_projected_zero_sets(seed in any::<u64>(), pi in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = PRIMES[pi + 1];
        let f = random_system(&mut rng, &SMALL, p, true);
        let n = f.ring().nvars();
        let ctx = complete_with_order(&graph_of_system(&f));
        let t = chordal_eliminate(&f, &ctx, n - 1, EliminationOptions::default()).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let points = zero_set_of(&f, &all);
        for l in 1..t.ideals.len() {
            if !t.steps.iter().take(l).all(|s| s.certificate.is_certified()) {
                break;
            }
            let tail: Vec<usize> = (l..n).collect();
            let got = zero_set_of(&t.ideals[l], &tail);
            prop_assert_eq!(&got, &project_tail(&points, n, l));
            prop_assert_eq!(&got, &zero_set_of(&elimination_ideal(&f, l), &tail));
        }
    }

    #[test]
    fn clique_counts_match_enumeration(seed in any::<u64>(), n in 2usize..7, q in 2u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        let s = gen_colorings(&g, q, FieldSpec::Prime(7)).unwrap();
        let ci = cliques_elim(&s.generators, &complete_with_order(&g)).unwrap();
        prop_assert!(ci.certified);
        let count = merge_solutions(&ci, MergeMode::Count).unwrap();
        prop_assert_eq!(count, MergeResult::Count(count_colorings(&g, q).into()));
    }
}
