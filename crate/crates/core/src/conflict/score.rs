//! Dissimilarity of residents' value preferences, measured as the
//! information gain of the attribute value given the resident.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on probability sums.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-9;
/// Gains at or below this are treated as zero.
pub const ZERO_GAIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConflictClass {
    Strong,
    Tau,
    Weak,
    #[serde(rename = "none")]
    NoConflict,
    Pruned,
}

impl ConflictClass {
    /// Classes a ground truth can assign.
    pub const SCORED: [ConflictClass; 4] = [
        ConflictClass::Strong,
        ConflictClass::Tau,
        ConflictClass::Weak,
        ConflictClass::NoConflict,
    ];

    pub fn is_conflict(self) -> bool {
        matches!(
            self,
            ConflictClass::Strong | ConflictClass::Tau | ConflictClass::Weak
        )
    }

    /// Severity rank, higher is stronger; `Pruned` has none.
    pub fn severity(self) -> Option<u8> {
        match self {
            ConflictClass::Strong => Some(3),
            ConflictClass::Tau => Some(2),
            ConflictClass::Weak => Some(1),
            ConflictClass::NoConflict => Some(0),
            ConflictClass::Pruned => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConflictClass::Strong => "strong",
            ConflictClass::Tau => "tau",
            ConflictClass::Weak => "weak",
            ConflictClass::NoConflict => "none",
            ConflictClass::Pruned => "pruned",
        }
    }
}

impl fmt::Display for ConflictClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConflictClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(ConflictClass::Strong),
            "tau" => Ok(ConflictClass::Tau),
            "weak" => Ok(ConflictClass::Weak),
            "none" => Ok(ConflictClass::NoConflict),
            "pruned" => Ok(ConflictClass::Pruned),
            other => Err(Error::InvalidProfile(format!(
                "unknown conflict class `{other}`"
            ))),
        }
    }
}

fn check_distribution(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty distribution".into()));
    }
    if let Some(x) = p.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        return Err(Error::InvalidDistribution(format!(
            "probability {x} is not a non-negative number"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > DISTRIBUTION_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    Ok(())
}

fn entropy_unchecked(p: &[f64]) -> f64 {
    // 0 log 0 = 0
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

/// Shannon entropy in bits.
pub fn entropy(p: &[f64]) -> Result<f64> {
    check_distribution(p)?;
    Ok(entropy_unchecked(p).max(0.0))
}

/// Entropy ceiling `log2(n)` for an attribute with `n` values.
pub fn max_entropy(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroValueCount);
    }
    Ok((n as f64).log2())
}

/// Per-resident value distributions over a shared value universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyTable {
    users: Vec<String>,
    values: Vec<String>,
    rows: Vec<Vec<f64>>,
    masses: Vec<f64>,
}

impl ConsistencyTable {
    /// Rows are probability distributions; every resident weighs the same.
    pub fn from_rows(users: Vec<String>, values: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let masses = vec![1.0; rows.len()];
        let table = ConsistencyTable {
            users,
            values,
            rows,
            masses,
        };
        table.check()?;
        Ok(table)
    }

    /// Rows of raw usage counts; each row is normalised and weighted by its
    /// total.
    pub fn from_counts(
        users: Vec<String>,
        values: Vec<String>,
        counts: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(counts.len());
        let mut masses = Vec::with_capacity(counts.len());
        for row in counts {
            let total: f64 = row.iter().sum();
            if !(total > 0.0 && total.is_finite()) || row.iter().any(|c| *c < 0.0) {
                return Err(Error::InvalidTable(
                    "count rows must be non-negative with positive total".into(),
                ));
            }
            rows.push(row.iter().map(|c| c / total).collect());
            masses.push(total);
        }
        let table = ConsistencyTable {
            users,
            values,
            rows,
            masses,
        };
        table.check()?;
        Ok(table)
    }

    fn check(&self) -> Result<()> {
        if self.rows.len() < 2 {
            return Err(Error::InvalidTable(
                "at least two residents required".into(),
            ));
        }
        if self.values.is_empty() {
            return Err(Error::InvalidTable("empty value universe".into()));
        }
        if self.users.len() != self.rows.len() {
            return Err(Error::InvalidTable(
                "one user label per row required".into(),
            ));
        }
        for (user, row) in self.users.iter().zip(&self.rows) {
            if row.len() != self.values.len() {
                return Err(Error::InvalidTable(format!(
                    "row of `{user}` has {} columns",
                    row.len()
                )));
            }
            check_distribution(row)
                .map_err(|e| Error::InvalidTable(format!("row of `{user}`: {e}")))?;
        }
        Ok(())
    }

    pub fn users(&self) -> &[String] {
        &self.users
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    fn weights(&self) -> Vec<f64> {
        let total: f64 = self.masses.iter().sum();
        self.masses.iter().map(|m| m / total).collect()
    }

    /// Mass-weighted mixture of the rows.
    pub fn mixture(&self) -> Vec<f64> {
        let weights = self.weights();
        (0..self.values.len())
            .map(|j| {
                self.rows
                    .iter()
                    .zip(&weights)
                    .map(|(row, w)| w * row[j])
                    .sum()
            })
            .collect()
    }

    /// Entropy of the value regardless of resident.
    pub fn entropy(&self) -> f64 {
        entropy_unchecked(&self.mixture()).max(0.0)
    }

    /// Expected entropy of the value once the resident is known.
    pub fn conditional_entropy(&self) -> f64 {
        self.rows
            .iter()
            .zip(self.weights())
            .map(|(row, w)| w * entropy_unchecked(row))
            .sum()
    }
}

/// Information gain of the value given the resident, in bits.
pub fn gain(table: &ConsistencyTable) -> f64 {
    (table.entropy() - table.conditional_entropy()).max(0.0)
}

/// Maps a gain onto the conflict bands anchored at `e_max`.
///
/// Strong from `e_max / 2`, Tau from `e_max / 2^n`, Weak above zero and
/// none otherwise; a gain on a shared band boundary takes the stronger class.
pub fn classify(gain: f64, e_max: f64, n: usize) -> Result<ConflictClass> {
    if n == 0 {
        return Err(Error::ZeroValueCount);
    }
    if gain.is_nan() || gain > e_max + ZERO_GAIN || gain < -ZERO_GAIN {
        return Err(Error::GainExceedsMax {
            gain,
            max_entropy: e_max,
        });
    }
    let tau_floor = e_max / 2f64.powf(n as f64);
    Ok(if gain <= ZERO_GAIN {
        ConflictClass::NoConflict
    } else if gain >= e_max / 2.0 {
        ConflictClass::Strong
    } else if gain >= tau_floor {
        ConflictClass::Tau
    } else {
        ConflictClass::Weak
    })
}
