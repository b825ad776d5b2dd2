//! Structural invariants of the mechanism families and the analysis
//! operations, checked on randomized inputs.

use proptest::prelude::*;

use fairloc::fairness::{
    ifs_at, is_ifs, is_pf, is_proportional, is_unanimous, pf_at, pf_at_bruteforce, ufs_at,
};
use fairloc::incentives::{
    best_case_utility, construct_nomw_violation, construct_sp_violation, is_nom, is_sp,
    reachable_interval, worst_case_utility,
};
use fairloc::model::{utility, GmvsParams};
use fairloc::verify::simplex_weights;
use fairloc::{AgmvsParams, Location, OwaWeights, Profile};

fn location() -> impl Strategy<Value = f64> {
    0.0f64..=1.0
}

fn profile(n: usize) -> impl Strategy<Value = Profile> {
    prop::collection::vec(location(), n).prop_map(|v| Profile::from_values(v).unwrap())
}

fn any_profile() -> impl Strategy<Value = Profile> {
    (1usize..=8).prop_flat_map(profile)
}

fn weights(n: usize) -> impl Strategy<Value = OwaWeights> {
    prop::collection::vec(0.0f64..=1.0, n)
        .prop_filter("some mass", |v| v.iter().sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let total: f64 = v.iter().sum();
            OwaWeights::new(v.into_iter().map(|w| w / total).collect()).unwrap()
        })
}

fn weights_and_profile() -> impl Strategy<Value = (OwaWeights, Profile)> {
    (1usize..=8).prop_flat_map(|n| (weights(n), profile(n)))
}

fn betas_and_profile() -> impl Strategy<Value = (AgmvsParams, Profile)> {
    (1usize..=8).prop_flat_map(|n| {
        (
            prop::collection::vec(location(), n - 1)
                .prop_map(move |b| AgmvsParams::new(n, b).unwrap()),
            profile(n),
        )
    })
}

/// All permutations of `0..n` via Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut items, &mut out);
    out
}

fn permute(profile: &Profile, order: &[usize]) -> Profile {
    Profile::new(order.iter().map(|&i| profile.get(i)).collect()).unwrap()
}

proptest! {
    #[test]
    fn owa_outcome_is_pareto_efficient((w, p) in weights_and_profile()) {
        let out = w.locate(&p).unwrap().value();
        prop_assert!(out >= p.min_value() - 1e-9);
        prop_assert!(out <= p.max_value() + 1e-9);
    }

    #[test]
    fn agmvs_outcome_is_pareto_efficient((params, p) in betas_and_profile()) {
        let out = params.locate(&p).unwrap().value();
        prop_assert!(out >= p.min_value() - 1e-9);
        prop_assert!(out <= p.max_value() + 1e-9);
    }

    #[test]
    fn owa_is_monotone((w, p) in weights_and_profile(), agent_seed: usize, bump in 0.0f64..=1.0) {
        let agent = agent_seed % p.n();
        let old = p.get(agent).value();
        let raised = (old + bump).min(1.0);
        let higher = p.with_report(agent, Location::new(raised).unwrap());
        let before = w.locate(&p).unwrap().value();
        let after = w.locate(&higher).unwrap().value();
        prop_assert!(after >= before - 1e-9);
    }

    #[test]
    fn owa_and_agmvs_are_unanimous(n in 1usize..=8, c in location(), seed in prop::collection::vec(location(), 8)) {
        let at = Location::new(c).unwrap();
        let constant = Profile::constant(n, at).unwrap();
        let raw: Vec<f64> = seed.iter().take(n).map(|x| x + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let w = OwaWeights::new(raw.into_iter().map(|x| x / total).collect()).unwrap();
        prop_assert!((w.locate(&constant).unwrap().value() - c).abs() <= 1e-9);
        let betas = AgmvsParams::new(n, seed.iter().take(n - 1).copied().collect()).unwrap();
        prop_assert!((betas.locate(&constant).unwrap().value() - c).abs() <= 1e-9);
    }

    #[test]
    fn reachable_interval_contains_every_grid_outcome((w, p) in weights_and_profile(), agent_seed: usize) {
        let agent = agent_seed % p.n();
        let report = p.get(agent);
        let interval = reachable_interval(&w, report);
        let out = w.locate(&p).unwrap().value();
        prop_assert!(out >= interval.lo().value() - 1e-9);
        prop_assert!(out <= interval.hi().value() + 1e-9);
    }

    #[test]
    fn best_case_of_truth_is_always_one((w, _) in weights_and_profile(), t in location()) {
        let truth = Location::new(t).unwrap();
        prop_assert!((best_case_utility(&w, truth, truth) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn sp_witnesses_replay_with_positive_gain((w, _) in weights_and_profile()) {
        match construct_sp_violation(&w) {
            None => prop_assert!(is_sp(&w)),
            Some(witness) => {
                prop_assert!(!is_sp(&w));
                let truthful = w.locate(&witness.truthful_profile().unwrap()).unwrap();
                let manipulated = w.locate(&witness.manipulated_profile().unwrap()).unwrap();
                let gain = utility(witness.truth, manipulated) - utility(witness.truth, truthful);
                prop_assert!(gain > 0.0);
                prop_assert!((gain - witness.gain).abs() < 1e-9);
                prop_assert!(witness.recomputed_gain() > 0.0);
            }
        }
    }

    #[test]
    fn nomw_witnesses_replay_with_positive_gain((w, _) in weights_and_profile()) {
        match construct_nomw_violation(&w) {
            None => prop_assert!(is_nom(&w)),
            Some(witness) => {
                prop_assert!(!is_nom(&w));
                let truthful_worst = worst_case_utility(&w, witness.truth, witness.truth);
                let misreport_worst = worst_case_utility(&w, witness.truth, witness.misreport);
                prop_assert!(misreport_worst > truthful_worst);
                prop_assert!((witness.gain - (misreport_worst - truthful_worst)).abs() < 1e-9);
                // the recorded misreport outcome is realized against the
                // recorded opponents
                let manipulated = w.locate(&witness.manipulated_profile().unwrap()).unwrap();
                prop_assert!((manipulated.value() - witness.manipulated_outcome.value()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn pf_reduction_matches_brute_force(p in any_profile(), y in location()) {
        let outcome = Location::new(y).unwrap();
        let fast = pf_at(&p, outcome);
        let slow = pf_at_bruteforce(&p, outcome).unwrap();
        prop_assert_eq!(fast.holds, slow.holds);
    }

    #[test]
    fn point_level_fairness_chain(p in any_profile(), y in location()) {
        let outcome = Location::new(y).unwrap();
        if pf_at(&p, outcome).holds {
            prop_assert!(ufs_at(&p, outcome).holds);
        }
        if ufs_at(&p, outcome).holds {
            prop_assert!(ifs_at(&p, outcome).holds);
        }
    }

    #[test]
    fn violated_verdicts_carry_negative_slack(p in any_profile(), y in location()) {
        let outcome = Location::new(y).unwrap();
        for verdict in [ifs_at(&p, outcome), ufs_at(&p, outcome), pf_at(&p, outcome)] {
            if verdict.holds {
                prop_assert!(verdict.witness.is_none());
            } else {
                let witness = verdict.witness.unwrap();
                prop_assert!(witness.slack < 0.0);
                prop_assert!(witness.coalition.contains(&witness.binding_agent));
            }
        }
    }
}

#[test]
fn owa_and_agmvs_are_anonymous_for_small_n() {
    // exhaustive permutations, profiles with deliberate ties
    let profiles = [
        vec![0.3, 0.7],
        vec![0.5, 0.5, 0.1],
        vec![0.9, 0.2, 0.2, 0.6],
        vec![0.1, 0.8, 0.8, 0.0, 1.0],
    ];
    for values in profiles {
        let n = values.len();
        let p = Profile::from_values(values).unwrap();
        let w = OwaWeights::new((1..=n).map(|j| 2.0 * j as f64 / (n * (n + 1)) as f64).collect())
            .unwrap();
        let betas =
            AgmvsParams::new(n, (1..n).map(|l| l as f64 / n as f64).collect()).unwrap();
        let owa_base = w.locate(&p).unwrap().value();
        let agmvs_base = betas.locate(&p).unwrap().value();
        for order in permutations(n) {
            let shuffled = permute(&p, &order);
            assert_eq!(w.locate(&shuffled).unwrap().value(), owa_base);
            assert_eq!(betas.locate(&shuffled).unwrap().value(), agmvs_base);
        }
    }
}

#[test]
fn gmvs_with_zero_full_set_parameter_is_pareto_efficient() {
    // the phantom-median lift pins the full-set parameter to zero, which is
    // exactly what keeps the outcome inside the reported range
    let agmvs = AgmvsParams::new(3, vec![0.8, 0.3]).unwrap();
    let gmvs = GmvsParams::from_agmvs(&agmvs).unwrap();
    for a in 0..=5 {
        for b in 0..=5 {
            for c in 0..=5 {
                let p =
                    Profile::from_values([a as f64 / 5.0, b as f64 / 5.0, c as f64 / 5.0]).unwrap();
                let out = gmvs.locate(&p).unwrap().value();
                assert!(out >= p.min_value() - 1e-9 && out <= p.max_value() + 1e-9);
            }
        }
    }
}

#[test]
fn mechanism_level_fairness_chain_on_the_simplex_grid() {
    for n in 3..=5usize {
        for w in simplex_weights(n, 2 * n as u32) {
            if is_pf(&w) {
                assert!(is_ifs(&w), "PF implies IFS at {:?}", w.weights());
            }
            if is_ifs(&w) {
                assert!(is_unanimous(&w));
            }
            assert_eq!(
                is_proportional(&w),
                is_pf(&w),
                "P and PF coincide at {:?}",
                w.weights()
            );
        }
    }
}
