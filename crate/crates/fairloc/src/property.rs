//! Names for the incentive and fairness properties a mechanism can satisfy.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A mechanism property that can be decided analytically or checked on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    /// Strategy-proofness: no agent ever gains by misreporting.
    #[serde(rename = "SP")]
    Sp,
    /// Non-obvious manipulability: truth-telling is weakly best in both the
    /// best and the worst case over the other agents' reports.
    #[serde(rename = "NOM")]
    Nom,
    /// The best-case half of non-obvious manipulability.
    #[serde(rename = "NOM-B")]
    NomB,
    /// Individual fair share: every agent's cost is at most `1 - 1/n`.
    #[serde(rename = "IFS")]
    Ifs,
    /// Unanimous fair share: a coalition of `s` co-located agents has cost
    /// at most `1 - s/n`.
    #[serde(rename = "UFS")]
    Ufs,
    /// Proportional fairness: every coalition `S` with location range `r`
    /// has cost at most `1 - |S|/n + r`.
    #[serde(rename = "PF")]
    Pf,
    /// Proportionality: on `{0,1}`-profiles the outcome equals the fraction
    /// of agents at 1.
    #[serde(rename = "P")]
    Proportionality,
    /// Unanimity: a constant profile maps to that constant.
    #[serde(rename = "UN")]
    Unanimity,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Sp => "SP",
            Property::Nom => "NOM",
            Property::NomB => "NOM-B",
            Property::Ifs => "IFS",
            Property::Ufs => "UFS",
            Property::Pf => "PF",
            Property::Proportionality => "P",
            Property::Unanimity => "UN",
        }
    }

    /// The fairness properties that have a point-level check for a
    /// (profile, outcome) pair.
    pub const FAIRNESS: [Property; 5] = [
        Property::Ifs,
        Property::Ufs,
        Property::Pf,
        Property::Proportionality,
        Property::Unanimity,
    ];

    /// The incentive properties.
    pub const INCENTIVE: [Property; 3] = [Property::Sp, Property::Nom, Property::NomB];

    pub fn is_fairness(self) -> bool {
        Self::FAIRNESS.contains(&self)
    }

    pub fn is_incentive(self) -> bool {
        Self::INCENTIVE.contains(&self)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_names_match_display() {
        for prop in [
            Property::Sp,
            Property::Nom,
            Property::NomB,
            Property::Ifs,
            Property::Ufs,
            Property::Pf,
            Property::Proportionality,
            Property::Unanimity,
        ] {
            let json = serde_json::to_string(&prop).unwrap();
            assert_eq!(json, format!("\"{prop}\""));
            let back: Property = serde_json::from_str(&json).unwrap();
            assert_eq!(back, prop);
        }
    }
}
