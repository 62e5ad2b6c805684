//! Scoring detector output against planted ground truth.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::conflict::{detect, ConflictClass, ConflictReport, GroupKey, OverlapGroup};
use crate::error::{Error, Result};
use crate::io::synthetic::{generate_synthetic, SyntheticProfile, TruthEntry};
use crate::pipeline;

/// Classes a truth entry can carry, in matrix order.
pub const TRUTH_CLASSES: [ConflictClass; 4] = ConflictClass::SCORED;

/// Column of the confusion matrix for a predicted class; pruned and unseen
/// groups land in the trailing "missed" column.
fn column(class: ConflictClass) -> usize {
    TRUTH_CLASSES
        .iter()
        .position(|&c| c == class)
        .unwrap_or(TRUTH_CLASSES.len())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub class: ConflictClass,
    pub support: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationMetrics {
    /// Rows: true Strong, Tau, Weak, None. Columns: the same four, then missed.
    pub confusion: [[usize; 5]; 4],
    /// Predictions with no truth entry, per predicted class.
    pub unmatched: BTreeMap<ConflictClass, usize>,
    pub per_class: Vec<ClassMetrics>,
    /// Diagonal over all truth entries.
    pub accuracy: Option<f64>,
}

impl EvaluationMetrics {
    pub fn class(&self, class: ConflictClass) -> Option<&ClassMetrics> {
        self.per_class.iter().find(|m| m.class == class)
    }

    pub fn recall(&self, class: ConflictClass) -> Option<f64> {
        self.class(class).and_then(|m| m.recall)
    }

    pub fn truth_count(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    /// Plain-text table for terminals and TSV consumers.
    pub fn to_tsv(&self) -> String {
        let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
        let mut out = String::from("class\tsupport\tprecision\trecall\tf1\taccuracy\n");
        for m in &self.per_class {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                m.class,
                m.support,
                fmt(m.precision),
                fmt(m.recall),
                fmt(m.f1),
                fmt(m.accuracy)
            ));
        }
        out.push_str(&format!(
            "overall\t{}\t-\t-\t-\t{}\n",
            self.truth_count(),
            fmt(self.accuracy)
        ));
        out.push_str("\ntruth\\predicted\tstrong\ttau\tweak\tnone\tmissed\n");
        for (class, row) in TRUTH_CLASSES.iter().zip(&self.confusion) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&format!("{class}\t{}\n", cells.join("\t")));
        }
        out
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// One-vs-rest metrics of `predicted` against `truth`.
///
/// Truth and reports are matched on location, attribute and resident set.
/// A truth entry with no report is missed; a truth entry naming a group the
/// detector never formed at all is still a miss, but a truth entry that is
/// malformed (fewer than two residents, or a Pruned class) is rejected.
pub fn evaluate(predicted: &[ConflictReport], truth: &[TruthEntry]) -> Result<EvaluationMetrics> {
    let mut by_key: BTreeMap<GroupKey, ConflictClass> = BTreeMap::new();
    for report in predicted {
        by_key.insert(report.key(), report.class);
    }
    let mut confusion = [[0usize; 5]; 4];
    let mut seen = BTreeSet::new();
    for entry in truth {
        let row = TRUTH_CLASSES
            .iter()
            .position(|&c| c == entry.class)
            .ok_or_else(|| {
                Error::UnknownTruthKey(format!("{} has class {}", entry.key, entry.class))
            })?;
        if entry.key.residents.len() < 2 {
            return Err(Error::UnknownTruthKey(format!(
                "{} names fewer than two residents",
                entry.key
            )));
        }
        if !seen.insert(&entry.key) {
            return Err(Error::UnknownTruthKey(format!(
                "{} listed twice",
                entry.key
            )));
        }
        let col = by_key
            .get(&entry.key)
            .map_or(TRUTH_CLASSES.len(), |&c| column(c));
        confusion[row][col] += 1;
    }
    let mut unmatched: BTreeMap<ConflictClass, usize> = BTreeMap::new();
    for (key, &class) in &by_key {
        if !seen.contains(key) && class != ConflictClass::Pruned {
            *unmatched.entry(class).or_default() += 1;
        }
    }

    let extra: usize = unmatched.values().sum();
    let total: usize = confusion.iter().flatten().sum::<usize>() + extra;
    let per_class = TRUTH_CLASSES
        .iter()
        .enumerate()
        .map(|(i, &class)| {
            let tp = confusion[i][i];
            let support: usize = confusion[i].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[i]).sum::<usize>()
                + unmatched.get(&class).copied().unwrap_or(0);
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            let f1 = match (precision, recall) {
                (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
                _ => None,
            };
            let tn = total - support - (predicted - tp);
            ClassMetrics {
                class,
                support,
                precision,
                recall,
                f1,
                accuracy: ratio(tp + tn, total),
            }
        })
        .collect();
    let trace: usize = (0..TRUTH_CLASSES.len()).map(|i| confusion[i][i]).sum();
    let accuracy = ratio(trace, confusion.iter().flatten().sum());
    Ok(EvaluationMetrics {
        confusion,
        unmatched,
        per_class,
        accuracy,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mu: f64,
    pub recall: BTreeMap<ConflictClass, Option<f64>>,
    pub accuracy: Option<f64>,
}

/// Detection and evaluation at each threshold in `mus`.
pub fn sweep_threshold(
    groups: &[OverlapGroup],
    truth: &[TruthEntry],
    mus: &[f64],
) -> Result<Vec<SweepRow>> {
    mus.iter()
        .map(|&mu| {
            let metrics = evaluate(&detect(groups, mu)?, truth)?;
            let recall = TRUTH_CLASSES
                .iter()
                .map(|&c| (c, metrics.recall(c)))
                .collect();
            Ok(SweepRow {
                mu,
                recall,
                accuracy: metrics.accuracy,
            })
        })
        .collect()
}

/// Sweep rows as a delimited plot data file.
pub fn sweep_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from("mu\tstrong\ttau\tweak\tnone\taccuracy\n");
    let fmt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
    for row in rows {
        let recalls: Vec<String> = TRUTH_CLASSES
            .iter()
            .map(|c| fmt(row.recall.get(c).copied().flatten()))
            .collect();
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            row.mu,
            recalls.join("\t"),
            fmt(row.accuracy)
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleRow {
    pub residents: usize,
    pub groups: usize,
    pub conflicts: usize,
}

/// Conflicts detected when the profile is cut down to its first `k`
/// residents, for each `k` in `counts`.
pub fn scale_residents(
    profile: &SyntheticProfile,
    counts: &[usize],
    config: &Config,
    mu: f64,
) -> Result<Vec<ScaleRow>> {
    counts
        .iter()
        .map(|&k| {
            let members: Vec<String> = profile.residents.iter().take(k).cloned().collect();
            let data = generate_synthetic(&profile.restricted(&members)?)?;
            let reports = pipeline::run(&data.events, config, mu)?;
            Ok(ScaleRow {
                residents: members.len(),
                groups: reports.len(),
                conflicts: reports.iter().filter(|r| r.class.is_conflict()).count(),
            })
        })
        .collect()
}

pub fn scale_tsv(rows: &[ScaleRow]) -> String {
    let mut out = String::from("residents\tgroups\tconflicts\n");
    for row in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            row.residents, row.groups, row.conflicts
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::habit::AttributeKey;
    use crate::io::synthetic::presets;

    fn entry(i: usize, class: ConflictClass) -> TruthEntry {
        TruthEntry {
            key: GroupKey {
                location: format!("room{i}"),
                attribute: AttributeKey::new("TV", "channel"),
                residents: ["R1", "R2"].iter().map(|s| s.to_string()).collect(),
            },
            class,
            gain: 0.0,
        }
    }

    fn report(key: &GroupKey, class: ConflictClass) -> ConflictReport {
        use crate::conflict::OverlapGroup;
        use crate::habit::{FuzzyServiceAttribute, ServiceUsageHabit};
        let habits = key
            .residents
            .iter()
            .map(|r| ServiceUsageHabit {
                id: format!("{r}/h"),
                user_id: r.clone(),
                fsas: vec![FuzzyServiceAttribute {
                    fsa_id: "f".into(),
                    name: "channel".into(),
                    service_id: "TV".into(),
                    values: BTreeMap::from([("Fox".to_string(), 1.0)]),
                }],
                window_start: 60,
                start_tolerance: 0,
                window_end: 120,
                end_tolerance: 0,
                location: key.location.clone(),
                support: 5,
            })
            .collect();
        let group = OverlapGroup::new(&key.location, key.attribute.clone(), habits).unwrap();
        ConflictReport {
            group,
            scores: None,
            proximity: 1.0,
            class,
            users: key.residents.iter().cloned().collect(),
        }
    }

    #[test]
    fn half_pruned_strong_gives_half_recall() {
        let truth: Vec<TruthEntry> = (0..200).map(|i| entry(i, ConflictClass::Strong)).collect();
        let predicted: Vec<ConflictReport> = truth
            .iter()
            .enumerate()
            .map(|(i, t)| {
                report(
                    &t.key,
                    if i < 100 {
                        ConflictClass::Strong
                    } else {
                        ConflictClass::Pruned
                    },
                )
            })
            .collect();
        let m = evaluate(&predicted, &truth).unwrap();
        assert_eq!(m.recall(ConflictClass::Strong), Some(0.5));
        assert_eq!(m.class(ConflictClass::Strong).unwrap().precision, Some(1.0));
        assert_eq!(m.confusion[0], [100, 0, 0, 0, 100]);
        assert_eq!(m.recall(ConflictClass::Tau), None);
    }

    #[test]
    fn perfect_prediction() {
        let classes = [
            ConflictClass::Strong,
            ConflictClass::Tau,
            ConflictClass::Weak,
            ConflictClass::NoConflict,
        ];
        let truth: Vec<TruthEntry> = (0..8).map(|i| entry(i, classes[i % 4])).collect();
        let predicted: Vec<ConflictReport> =
            truth.iter().map(|t| report(&t.key, t.class)).collect();
        let m = evaluate(&predicted, &truth).unwrap();
        assert_eq!(m.accuracy, Some(1.0));
        for c in &m.per_class {
            assert_eq!(
                (c.precision, c.recall, c.f1, c.accuracy),
                (Some(1.0), Some(1.0), Some(1.0), Some(1.0))
            );
        }
    }

    #[test]
    fn all_pruned_recalls_zero() {
        let classes = [
            ConflictClass::Strong,
            ConflictClass::Tau,
            ConflictClass::Weak,
            ConflictClass::NoConflict,
        ];
        let truth: Vec<TruthEntry> = (0..8).map(|i| entry(i, classes[i % 4])).collect();
        let predicted: Vec<ConflictReport> = truth
            .iter()
            .map(|t| report(&t.key, ConflictClass::Pruned))
            .collect();
        let m = evaluate(&predicted, &truth).unwrap();
        for c in &m.per_class {
            assert_eq!(c.recall, Some(0.0));
            assert_eq!(c.precision, None);
            assert_eq!(c.f1, None);
        }
        assert_eq!(m.accuracy, Some(0.0));
    }

    #[test]
    fn confusion_rows_match_truth_counts() {
        let truth = vec![
            entry(0, ConflictClass::Strong),
            entry(1, ConflictClass::Strong),
            entry(2, ConflictClass::Weak),
        ];
        let predicted = vec![
            report(&truth[0].key, ConflictClass::Tau),
            report(&truth[2].key, ConflictClass::Weak),
        ];
        let m = evaluate(&predicted, &truth).unwrap();
        assert_eq!(m.confusion[0], [0, 1, 0, 0, 1]);
        assert_eq!(m.confusion[2], [0, 0, 1, 0, 0]);
        assert_eq!(m.accuracy, Some(1.0 / 3.0));
        assert_eq!(m.class(ConflictClass::Tau).unwrap().precision, Some(0.0));
    }

    #[test]
    fn malformed_truth_is_rejected() {
        let mut bad = entry(0, ConflictClass::Pruned);
        assert!(matches!(
            evaluate(&[], &[bad.clone()]),
            Err(Error::UnknownTruthKey(_))
        ));
        bad.class = ConflictClass::Strong;
        bad.key.residents.pop_first();
        assert!(matches!(
            evaluate(&[], &[bad]),
            Err(Error::UnknownTruthKey(_))
        ));
    }

    #[test]
    fn unmatched_predictions_lower_precision() {
        let truth = vec![entry(0, ConflictClass::Strong)];
        let predicted = vec![
            report(&truth[0].key, ConflictClass::Strong),
            report(&entry(1, ConflictClass::Strong).key, ConflictClass::Strong),
        ];
        let m = evaluate(&predicted, &truth).unwrap();
        assert_eq!(m.class(ConflictClass::Strong).unwrap().precision, Some(0.5));
        assert_eq!(m.unmatched[&ConflictClass::Strong], 1);
    }

    #[test]
    fn sweep_rejects_out_of_range_threshold() {
        assert!(matches!(
            sweep_threshold(&[], &[], &[1.0 + 1e-9]),
            Err(Error::InvalidThreshold(_))
        ));
    }

    #[test]
    fn single_resident_scales_to_zero() {
        let rows = scale_residents(
            &presets::definite_conflict(5, 10),
            &[1, 2, 3, 4],
            &Config::default(),
            0.0,
        )
        .unwrap();
        let conflicts: Vec<usize> = rows.iter().map(|r| r.conflicts).collect();
        assert_eq!(conflicts[0], 0);
        assert!(conflicts.windows(2).all(|w| w[0] <= w[1]));
    }
}
