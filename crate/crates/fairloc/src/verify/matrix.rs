//! Compatibility of incentive and fairness properties over OWA weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fairness::{is_ifs, is_pf, is_proportional, is_unanimous};
use crate::incentives::{is_nom, is_nom_b, is_sp};
use crate::property::Property;
use crate::verify::grid::simplex_weights;
use crate::OwaWeights;

/// One cell of the matrix: whether some weight vector satisfies both the
/// row's incentive property and the column's fairness property. Compatible
/// cells carry a witness; incompatible ones record the size of the simplex
/// grid searched without finding one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityCell {
    pub incentive: Property,
    pub fairness: Property,
    pub compatible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<OwaWeights>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vectors_searched: Option<usize>,
}

/// The full incentive-by-fairness table for a fixed agent count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityMatrix {
    pub n: usize,
    /// Simplex step denominator used to confirm incompatible cells.
    pub simplex_m: u32,
    /// Row-major cells: rows SP, NOM, NOM-B; columns PF, IFS, UN.
    pub cells: Vec<CompatibilityCell>,
}

pub const MATRIX_ROWS: [Property; 3] = [Property::Sp, Property::Nom, Property::NomB];
pub const MATRIX_COLUMNS: [Property; 3] = [Property::Pf, Property::Ifs, Property::Unanimity];

impl CompatibilityMatrix {
    pub fn cell(&self, incentive: Property, fairness: Property) -> Option<&CompatibilityCell> {
        self.cells
            .iter()
            .find(|c| c.incentive == incentive && c.fairness == fairness)
    }

    /// CSV with one row per incentive property and one column per fairness
    /// property.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            ",{}\n",
            MATRIX_COLUMNS.map(|c| c.name().to_string()).join(",")
        ));
        for row in MATRIX_ROWS {
            out.push_str(row.name());
            for col in MATRIX_COLUMNS {
                let cell = self.cell(row, col).expect("matrix is complete");
                out.push(',');
                out.push_str(if cell.compatible {
                    "compatible"
                } else {
                    "incompatible"
                });
            }
            out.push('\n');
        }
        out
    }
}

fn satisfies(property: Property, weights: &OwaWeights) -> bool {
    match property {
        Property::Sp => is_sp(weights),
        Property::Nom => is_nom(weights),
        Property::NomB => is_nom_b(weights),
        Property::Ifs => is_ifs(weights),
        Property::Ufs | Property::Pf => is_pf(weights),
        Property::Proportionality => is_proportional(weights),
        Property::Unanimity => is_unanimous(weights),
    }
}

/// Decides each cell of the matrix. Preset mechanisms are tried first so
/// compatible cells carry a recognizable witness; otherwise the simplex
/// grid with step `1/(2n)` is searched, and an empty search marks the cell
/// incompatible.
pub fn compatibility_matrix(n: usize) -> Result<CompatibilityMatrix> {
    if n < 3 {
        return Err(Error::MatrixTooSmall(n));
    }
    let simplex_m = 2 * n as u32;
    let candidates: Vec<OwaWeights> = [
        OwaWeights::median(n),
        OwaWeights::standard_average(n),
        OwaWeights::center(n),
        OwaWeights::olympic_average(n),
    ]
    .into_iter()
    .collect::<Result<_>>()?;
    let grid = simplex_weights(n, simplex_m);

    let mut cells = Vec::with_capacity(9);
    for row in MATRIX_ROWS {
        for col in MATRIX_COLUMNS {
            let both = |w: &OwaWeights| satisfies(row, w) && satisfies(col, w);
            if let Some(witness) = candidates.iter().find(|w| both(w)) {
                cells.push(CompatibilityCell {
                    incentive: row,
                    fairness: col,
                    compatible: true,
                    witness: Some(witness.clone()),
                    vectors_searched: None,
                });
                continue;
            }
            match grid.iter().find(|w| both(w)) {
                Some(witness) => cells.push(CompatibilityCell {
                    incentive: row,
                    fairness: col,
                    compatible: true,
                    witness: Some(witness.clone()),
                    vectors_searched: None,
                }),
                None => cells.push(CompatibilityCell {
                    incentive: row,
                    fairness: col,
                    compatible: false,
                    witness: None,
                    vectors_searched: Some(grid.len()),
                }),
            }
        }
    }
    Ok(CompatibilityMatrix {
        n,
        simplex_m,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_matrices() {
        assert!(matches!(compatibility_matrix(2), Err(Error::MatrixTooSmall(2))));
        assert!(compatibility_matrix(3).is_ok());
    }

    #[test]
    fn pattern_for_five_agents() {
        let matrix = compatibility_matrix(5).unwrap();
        let expect = |row: Property, col: Property, compatible: bool| {
            let cell = matrix.cell(row, col).unwrap();
            assert_eq!(cell.compatible, compatible, "{row} x {col}");
            if compatible {
                let w = cell.witness.as_ref().unwrap();
                assert!(satisfies(row, w) && satisfies(col, w));
            } else {
                assert_eq!(cell.vectors_searched, Some(simplex_weights(5, 10).len()));
            }
        };
        expect(Property::Sp, Property::Pf, false);
        expect(Property::Sp, Property::Ifs, false);
        expect(Property::Sp, Property::Unanimity, true);
        expect(Property::Nom, Property::Pf, false);
        expect(Property::Nom, Property::Ifs, false);
        expect(Property::Nom, Property::Unanimity, true);
        expect(Property::NomB, Property::Pf, true);
        expect(Property::NomB, Property::Ifs, true);
        expect(Property::NomB, Property::Unanimity, true);
    }

    #[test]
    fn witnesses_use_the_presets() {
        let matrix = compatibility_matrix(5).unwrap();
        let median = OwaWeights::median(5).unwrap();
        let uniform = OwaWeights::standard_average(5).unwrap();
        assert_eq!(
            matrix.cell(Property::Sp, Property::Unanimity).unwrap().witness,
            Some(median)
        );
        assert_eq!(
            matrix.cell(Property::NomB, Property::Pf).unwrap().witness,
            Some(uniform.clone())
        );
        assert_eq!(
            matrix.cell(Property::NomB, Property::Ifs).unwrap().witness,
            Some(uniform)
        );
    }

    #[test]
    fn csv_shape() {
        let matrix = compatibility_matrix(4).unwrap();
        let csv = matrix.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], ",PF,IFS,UN");
        assert_eq!(lines[1], "SP,incompatible,incompatible,compatible");
        assert_eq!(lines[2], "NOM,incompatible,incompatible,compatible");
        assert_eq!(lines[3], "NOM-B,compatible,compatible,compatible");
    }
}
