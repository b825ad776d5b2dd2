//! Built-in worked examples, replayed end to end with every intermediate
//! quantity exposed.

use serde::Serialize;

use fairloc::fairness::{ifs_at, pf_at};
use fairloc::incentives::{
    construct_sp_violation, reachable_interval, worst_case_utility,
};
use fairloc::model::{cost, utility};
use fairloc::{FairnessVerdict, Location, ManipulationWitness, OwaWeights, Profile};

use crate::output::num;

fn loc(v: f64) -> Location {
    Location::new(v).expect("example constants are in range")
}

fn profile(values: &[f64]) -> Profile {
    Profile::from_values(values.iter().copied()).expect("example profiles are valid")
}

/// Five agents at 0.1, 0.3, ..., 0.9; agent 2 considers misreporting 0.
/// The olympic average moves under the deviation but not in the worst case;
/// the standard average rewards the deviation even in the worst case.
#[derive(Serialize)]
pub struct FiveAgentWalkthrough {
    pub profile: Vec<f64>,
    pub agent: usize,
    pub truth: f64,
    pub misreport: f64,
    pub olympic_average: WalkthroughSide,
    pub standard_average: WalkthroughSide,
}

#[derive(Serialize)]
pub struct WalkthroughSide {
    pub weights: Vec<f64>,
    pub truthful_outcome: f64,
    pub deviated_outcome: f64,
    pub truthful_worst_outcome: f64,
    pub misreport_worst_outcome: f64,
    pub truthful_worst_utility: f64,
    pub misreport_worst_utility: f64,
    pub nom_w_violated: bool,
}

fn walkthrough_side(weights: &OwaWeights) -> WalkthroughSide {
    let truthful = profile(&[0.1, 0.3, 0.5, 0.7, 0.9]);
    let deviated = profile(&[0.1, 0.0, 0.5, 0.7, 0.9]);
    let truth = loc(0.3);
    let zero = loc(0.0);
    let truthful_worst = worst_case_utility(weights, truth, truth);
    let misreport_worst = worst_case_utility(weights, truth, zero);
    WalkthroughSide {
        weights: weights.weights().to_vec(),
        truthful_outcome: weights.locate(&truthful).unwrap().value(),
        deviated_outcome: weights.locate(&deviated).unwrap().value(),
        truthful_worst_outcome: reachable_interval(weights, truth)
            .farthest_from(truth)
            .value(),
        misreport_worst_outcome: reachable_interval(weights, zero)
            .farthest_from(truth)
            .value(),
        truthful_worst_utility: truthful_worst,
        misreport_worst_utility: misreport_worst,
        nom_w_violated: misreport_worst > truthful_worst + 1e-9,
    }
}

pub fn five_agent_walkthrough() -> FiveAgentWalkthrough {
    FiveAgentWalkthrough {
        profile: vec![0.1, 0.3, 0.5, 0.7, 0.9],
        agent: 2,
        truth: 0.3,
        misreport: 0.0,
        olympic_average: walkthrough_side(&OwaWeights::olympic_average(5).unwrap()),
        standard_average: walkthrough_side(&OwaWeights::standard_average(5).unwrap()),
    }
}

pub fn five_agent_walkthrough_text(example: &FiveAgentWalkthrough) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "profile: ({})\nagent {} weighs reporting {} instead of {}\n",
        example
            .profile
            .iter()
            .map(|&v| num(v))
            .collect::<Vec<_>>()
            .join(", "),
        example.agent,
        num(example.misreport),
        num(example.truth),
    ));
    for (name, side) in [
        ("olympic average", &example.olympic_average),
        ("standard average", &example.standard_average),
    ] {
        out.push_str(&format!(
            "\n{name}:\n  truthful outcome {} -> deviated outcome {}\n  \
             worst case for truth: outcome {}, utility {}\n  \
             worst case for misreport: outcome {}, utility {}\n  \
             worst-case deviation {}\n",
            num(side.truthful_outcome),
            num(side.deviated_outcome),
            num(side.truthful_worst_outcome),
            num(side.truthful_worst_utility),
            num(side.misreport_worst_outcome),
            num(side.misreport_worst_utility),
            if side.nom_w_violated { "pays off" } else { "does not pay off" },
        ));
    }
    out
}

/// The canonical profitable deviation for the center mechanism with three
/// agents: the manipulator at 1/2 drags the outcome toward itself.
#[derive(Serialize)]
pub struct SpViolationExample {
    pub weights: Vec<f64>,
    pub witness: ManipulationWitness,
    pub replayed_truthful_outcome: f64,
    pub replayed_manipulated_outcome: f64,
    pub replayed_gain: f64,
}

pub fn sp_violation_example() -> SpViolationExample {
    let weights = OwaWeights::center(3).unwrap();
    let witness = construct_sp_violation(&weights).expect("the center mechanism is manipulable");
    let truthful = weights
        .locate(&witness.truthful_profile().unwrap())
        .unwrap();
    let manipulated = weights
        .locate(&witness.manipulated_profile().unwrap())
        .unwrap();
    SpViolationExample {
        weights: weights.weights().to_vec(),
        replayed_truthful_outcome: truthful.value(),
        replayed_manipulated_outcome: manipulated.value(),
        replayed_gain: utility(witness.truth, manipulated) - utility(witness.truth, truthful),
        witness,
    }
}

pub fn sp_violation_text(example: &SpViolationExample) -> String {
    let w = &example.witness;
    format!(
        "center mechanism, weights ({})\n\
         agent {} at {} with the others at ({})\n\
         truthful outcome {}\n\
         misreporting {} moves the outcome to {}\n\
         utility gain {}\n",
        example
            .weights
            .iter()
            .map(|&v| num(v))
            .collect::<Vec<_>>()
            .join(", "),
        w.agent,
        num(w.truth.value()),
        w.profile_others
            .iter()
            .map(|l| num(l.value()))
            .collect::<Vec<_>>()
            .join(", "),
        num(example.replayed_truthful_outcome),
        num(w.misreport.value()),
        num(example.replayed_manipulated_outcome),
        num(example.replayed_gain),
    )
}

/// Worst-case comparison with the bottom weight at 0.4 and a true location
/// of 0.2: misreporting 0 improves the worst case from 0.68 to 0.6.
#[derive(Serialize)]
pub struct WorstCaseExample {
    pub weights: Vec<f64>,
    pub truth: f64,
    pub misreport: f64,
    pub truthful_reachable: [f64; 2],
    pub misreport_reachable: [f64; 2],
    pub truthful_worst_outcome: f64,
    pub misreport_worst_outcome: f64,
    pub truthful_worst_utility: f64,
    pub misreport_worst_utility: f64,
    pub nom_w_violated: bool,
}

pub fn worst_case_example() -> WorstCaseExample {
    let weights = OwaWeights::new(vec![0.4, 0.15, 0.15, 0.15, 0.15]).unwrap();
    let truth = loc(0.2);
    let zero = loc(0.0);
    let truthful_interval = reachable_interval(&weights, truth);
    let misreport_interval = reachable_interval(&weights, zero);
    let truthful_worst = worst_case_utility(&weights, truth, truth);
    let misreport_worst = worst_case_utility(&weights, truth, zero);
    WorstCaseExample {
        weights: weights.weights().to_vec(),
        truth: truth.value(),
        misreport: 0.0,
        truthful_reachable: [
            truthful_interval.lo().value(),
            truthful_interval.hi().value(),
        ],
        misreport_reachable: [
            misreport_interval.lo().value(),
            misreport_interval.hi().value(),
        ],
        truthful_worst_outcome: truthful_interval.farthest_from(truth).value(),
        misreport_worst_outcome: misreport_interval.farthest_from(truth).value(),
        truthful_worst_utility: truthful_worst,
        misreport_worst_utility: misreport_worst,
        nom_w_violated: misreport_worst > truthful_worst + 1e-9,
    }
}

pub fn worst_case_text(example: &WorstCaseExample) -> String {
    format!(
        "weights ({}), agent at {}\n\
         truthful reachable outcomes [{}, {}], worst outcome {} (utility {})\n\
         reporting {} shrinks them to [{}, {}], worst outcome {} (utility {})\n\
         the misreport {} the worst case\n",
        example
            .weights
            .iter()
            .map(|&v| num(v))
            .collect::<Vec<_>>()
            .join(", "),
        num(example.truth),
        num(example.truthful_reachable[0]),
        num(example.truthful_reachable[1]),
        num(example.truthful_worst_outcome),
        num(example.truthful_worst_utility),
        num(example.misreport),
        num(example.misreport_reachable[0]),
        num(example.misreport_reachable[1]),
        num(example.misreport_worst_outcome),
        num(example.misreport_worst_utility),
        if example.nom_w_violated { "improves" } else { "does not improve" },
    )
}

/// One agent at 0 against four at 1: the median violates individual fair
/// share, the center keeps it but violates proportional fairness, and the
/// standard average satisfies proportional fairness.
#[derive(Serialize)]
pub struct SplitProfileExample {
    pub profile: Vec<f64>,
    pub median: SplitProfileSide,
    pub center: SplitProfileSide,
    pub standard_average: SplitProfileSide,
}

#[derive(Serialize)]
pub struct SplitProfileSide {
    pub outcome: f64,
    pub agent_costs: Vec<f64>,
    pub ifs: FairnessVerdict,
    pub pf: FairnessVerdict,
}

fn split_profile_side(weights: &OwaWeights, split: &Profile) -> SplitProfileSide {
    let outcome = weights.locate(split).unwrap();
    SplitProfileSide {
        outcome: outcome.value(),
        agent_costs: split
            .locations()
            .iter()
            .map(|&peak| cost(peak, outcome))
            .collect(),
        ifs: ifs_at(split, outcome),
        pf: pf_at(split, outcome),
    }
}

pub fn split_profile_example() -> SplitProfileExample {
    let split = profile(&[0.0, 1.0, 1.0, 1.0, 1.0]);
    SplitProfileExample {
        profile: split.locations().iter().map(|l| l.value()).collect(),
        median: split_profile_side(&OwaWeights::median(5).unwrap(), &split),
        center: split_profile_side(&OwaWeights::center(5).unwrap(), &split),
        standard_average: split_profile_side(&OwaWeights::standard_average(5).unwrap(), &split),
    }
}

pub fn split_profile_text(example: &SplitProfileExample) -> String {
    let mut out = format!(
        "profile: ({})\n",
        example
            .profile
            .iter()
            .map(|&v| num(v))
            .collect::<Vec<_>>()
            .join(", ")
    );
    for (name, side) in [
        ("median", &example.median),
        ("center", &example.center),
        ("standard average", &example.standard_average),
    ] {
        let describe = |verdict: &FairnessVerdict| match (&verdict.holds, &verdict.witness) {
            (true, _) => "holds".to_string(),
            (false, Some(w)) => format!(
                "violated by coalition {{{}}} (slack {})",
                w.coalition
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                num(w.slack)
            ),
            (false, None) => "violated".to_string(),
        };
        out.push_str(&format!(
            "\n{name}: outcome {}\n  agent costs ({})\n  individual fair share {}\n  proportional fairness {}\n",
            num(side.outcome),
            side.agent_costs
                .iter()
                .map(|&v| num(v))
                .collect::<Vec<_>>()
                .join(", "),
            describe(&side.ifs),
            describe(&side.pf),
        ));
    }
    out
}
