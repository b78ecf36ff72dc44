//! Property tests for the structural invariants of codes, joints, and the
//! entropy algebra.

mod common;

use ambicode::code::{Alphabet, DeterministicCode, Prior, StochasticChannel};
use ambicode::info;
use proptest::prelude::*;

fn build_code(n: usize, m: usize, assignment: Vec<usize>) -> DeterministicCode {
    DeterministicCode::new(
        Alphabet::numbered_referents(n).unwrap(),
        Alphabet::numbered_signals(m).unwrap(),
        assignment,
    )
    .unwrap()
}

fn build_prior(weights: Vec<f64>) -> Prior {
    let total: f64 = weights.iter().sum();
    let mut normalized: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let partial: f64 = normalized.iter().sum();
    let last = normalized.len() - 1;
    normalized[last] += 1.0 - partial;
    Prior::new(normalized).unwrap()
}

prop_compose! {
    fn code_and_prior(max_n: usize, max_m: usize)
        ((n, m) in (1..=8usize, 1..=6usize).prop_map(move |(n, m)| (n.min(max_n), m.min(max_m))))
        (assignment in proptest::collection::vec(0..m, n),
         weights in proptest::collection::vec(0.05f64..1.0, n),
         n in Just(n), m in Just(m))
        -> (DeterministicCode, Prior)
    {
        (build_code(n, m, assignment), build_prior(weights))
    }
}

prop_compose! {
    fn code_prior_channel()
        ((code, prior) in code_and_prior(6, 5), out in 1..=5usize)
        (rows in proptest::collection::vec(
            proptest::collection::vec(0.05f64..1.0, out), code.signal_count()),
         code in Just(code), prior in Just(prior))
        -> (DeterministicCode, Prior, StochasticChannel)
    {
        let matrix = rows
            .into_iter()
            .map(|row| {
                let total: f64 = row.iter().sum();
                let mut normalized: Vec<f64> = row.iter().map(|w| w / total).collect();
                let partial: f64 = normalized.iter().sum();
                let last = normalized.len() - 1;
                normalized[last] += 1.0 - partial;
                normalized
            })
            .collect();
        (code, prior, StochasticChannel::new(matrix).unwrap())
    }
}

proptest! {
    #[test]
    fn joint_marginals_match_their_sources((code, prior) in code_and_prior(8, 6)) {
        let joint = code.joint_distribution(&prior).unwrap();
        let induced = code.induced_signal_distribution(&prior).unwrap();
        for (a, b) in joint.col_marginal().iter().zip(&induced) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        for (a, b) in joint.row_marginal().iter().zip(prior.as_slice()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn posterior_columns_are_distributions_or_undefined((code, prior) in code_and_prior(8, 6)) {
        let posterior = code.posterior(&prior).unwrap();
        let q = code.induced_signal_distribution(&prior).unwrap();
        for (signal, &mass) in q.iter().enumerate() {
            if mass > 0.0 {
                let column = posterior.column(signal).unwrap();
                let sum: f64 = column.iter().sum();
                prop_assert!((sum - 1.0).abs() <= 1e-12);
                prop_assert!(column.iter().all(|&p| p >= 0.0));
            } else {
                prop_assert!(!posterior.is_defined(signal));
            }
        }
    }

    #[test]
    fn reversibility_iff_zero_ambiguity((code, prior) in code_and_prior(8, 6)) {
        let joint = code.joint_distribution(&prior).unwrap();
        let ambiguity = info::conditional_entropy(&joint);
        let reversible = code.is_logically_reversible(&prior).unwrap();
        prop_assert_eq!(reversible, ambiguity <= 1e-12);
    }

    #[test]
    fn reversibilize_always_restores_reversibility((code, prior) in code_and_prior(8, 6)) {
        let extended = code.reversibilize();
        prop_assert!(extended.is_logically_reversible(&prior).unwrap());
        let joint = extended.joint_distribution(&prior).unwrap();
        prop_assert!(info::conditional_entropy(&joint) <= 1e-12);

        // Dropping the rank tags recovers the original code exactly.
        for referent in 0..code.referent_count() {
            let label = extended.signals().label(extended.signal_of(referent));
            let (base, _) = ambicode::code::split_composite_label(label).unwrap();
            prop_assert_eq!(base, code.signals().label(code.signal_of(referent)));
        }

        // Idempotent up to relabeling: a second pass only re-tags.
        let twice = extended.reversibilize();
        prop_assert_eq!(twice.assignment(), extended.assignment());
        for signal in 0..twice.signal_count() {
            let (base, rank) =
                ambicode::code::split_composite_label(twice.signals().label(signal)).unwrap();
            prop_assert_eq!(rank, 0);
            prop_assert_eq!(base, extended.signals().label(signal));
        }
    }

    #[test]
    fn identity_channel_composition_is_identity((code, prior) in code_and_prior(8, 6)) {
        let channel = StochasticChannel::identity(code.signal_count()).unwrap();
        let composed = code.compose_with_channel(&prior, &channel).unwrap();
        let joint = code.joint_distribution(&prior).unwrap();
        for (a, b) in composed.table().iter().flatten().zip(joint.table().iter().flatten()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn channels_cannot_create_information((code, prior, channel) in code_prior_channel()) {
        let direct = info::mutual_information(&code.joint_distribution(&prior).unwrap());
        let routed = info::mutual_information(&code.compose_with_channel(&prior, &channel).unwrap());
        prop_assert!(routed <= direct + 1e-10);
    }

    #[test]
    fn deterministic_code_identities((code, prior) in code_and_prior(8, 6)) {
        let joint = code.joint_distribution(&prior).unwrap();
        let report = info::info_report(&joint);
        // The coder never hesitates, so the joint carries no extra bits...
        prop_assert!(report.h_s_given_omega <= 1e-12);
        prop_assert!((report.h_joint - report.h_omega).abs() <= 1e-10);
        // ...and the ambiguity is exactly the entropy the signals dropped.
        prop_assert!((report.h_omega_given_s - (report.h_omega - report.h_s)).abs() <= 1e-10);
        prop_assert!((report.h_joint - (report.h_omega + report.h_s_given_omega)).abs() <= 1e-10);
    }

    #[test]
    fn mutual_information_is_symmetric((code, prior) in code_and_prior(8, 6)) {
        let joint = code.joint_distribution(&prior).unwrap();
        let forward = info::mutual_information(&joint);
        let backward = info::mutual_information(&joint.transpose());
        prop_assert!((forward - backward).abs() <= 1e-10);
    }

    #[test]
    fn entropies_stay_in_range((code, prior) in code_and_prior(8, 6)) {
        let joint = code.joint_distribution(&prior).unwrap();
        let report = info::info_report(&joint);
        prop_assert!(report.h_omega_given_s >= -1e-12);
        prop_assert!(report.h_omega >= 0.0);
        prop_assert!(report.h_omega <= (code.referent_count() as f64).log2() + 1e-12);
        prop_assert!(report.h_s <= (code.signal_count() as f64).log2() + 1e-12);
        prop_assert!(report.mutual_information >= -1e-12);
    }

    #[test]
    fn uniform_residual_identity(
        (n, m) in (1..=8usize, 1..=6usize),
        seed in 0u64..1_000_000
    ) {
        let mut rng = common::rng(seed);
        let code = common::random_code(&mut rng, n, m);
        let prior = Prior::uniform(n).unwrap();
        let residual = info::symmetry_residual(&code, &prior).unwrap();
        let q = code.induced_signal_distribution(&prior).unwrap();
        let h_s = info::entropy(&q).unwrap();
        prop_assert!((residual - (2.0 * h_s - (n as f64).log2())).abs() <= 1e-10);
    }

    #[test]
    fn noise_strictly_degrades_the_balanced_code(flip in 0.001f64..0.5) {
        let code = ambicode::synthesis::balanced_partition_code(4).unwrap();
        let prior = Prior::uniform(4).unwrap();
        let channel = StochasticChannel::binary_symmetric(flip).unwrap();
        let clean = info::mutual_information(&code.joint_distribution(&prior).unwrap());
        let noisy = info::mutual_information(&code.compose_with_channel(&prior, &channel).unwrap());
        prop_assert!(noisy < clean);
    }
}
