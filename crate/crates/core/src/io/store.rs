//! JSON documents for habit databases, conflict reports and ground truth.
//!
//! Every document carries `"schema_version": "1"`; loading a document with
//! any other version fails.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conflict::ConflictReport;
use crate::error::{Error, Result};
use crate::habit::{quantize_score, ServiceUsageHabit};
use crate::io::synthetic::TruthEntry;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
struct HabitDocument {
    schema_version: String,
    habits: Vec<ServiceUsageHabit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub mu: f64,
    pub reports: Vec<ConflictReport>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TruthDocument {
    schema_version: String,
    conflicts: Vec<TruthEntry>,
}

fn checked(text: &str) -> Result<serde_json::Value> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let found = value
        .get("schema_version")
        .and_then(|v| v.as_str())
        .unwrap_or("<missing>");
    if found != SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            expected: SCHEMA_VERSION.into(),
            found: found.into(),
        });
    }
    Ok(value)
}

/// Serialises a habit database; scores are written with 12 significant
/// digits.
pub fn save_habits(habits: &[ServiceUsageHabit]) -> Result<String> {
    let mut habits = habits.to_vec();
    for fsa in habits.iter_mut().flat_map(|h| h.fsas.iter_mut()) {
        for score in fsa.values.values_mut() {
            *score = quantize_score(*score);
        }
    }
    let doc = HabitDocument {
        schema_version: SCHEMA_VERSION.into(),
        habits,
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Loads a habit database and re-checks every habit invariant.
pub fn load_habits(text: &str) -> Result<Vec<ServiceUsageHabit>> {
    let doc: HabitDocument = serde_json::from_value(checked(text)?)?;
    let mut ids = BTreeSet::new();
    for habit in &doc.habits {
        habit.validate()?;
        if !ids.insert(habit.id.as_str()) {
            return Err(Error::InvalidHabit {
                id: habit.id.clone(),
                reason: "duplicate habit id".into(),
            });
        }
    }
    Ok(doc.habits)
}

pub fn save_reports(reports: &[ConflictReport], mu: f64) -> Result<String> {
    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        mu,
        reports: reports.to_vec(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn load_reports(text: &str) -> Result<ReportDocument> {
    Ok(serde_json::from_value(checked(text)?)?)
}

/// One tab-separated line per report, with a header.
pub fn reports_tsv(reports: &[ConflictReport]) -> String {
    let mut out = String::from(
        "location\tattribute\tresidents\tspan_start\tspan_end\tproximity\tentropy\tmax_entropy\tgain\tvalues\tclass\n",
    );
    for r in reports {
        let (entropy, max_entropy, gain, n) = match &r.scores {
            Some(s) => (
                format!("{:.6}", s.entropy),
                format!("{:.6}", s.max_entropy),
                format!("{:.6}", s.gain),
                s.value_count.to_string(),
            ),
            None => ("-".into(), "-".into(), "-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{entropy}\t{max_entropy}\t{gain}\t{n}\t{}\n",
            r.group.location,
            r.group.attribute,
            r.users.join(","),
            r.group.span.start(),
            r.group.span.end(),
            r.proximity,
            r.class
        ));
    }
    out
}

pub fn save_truth(truth: &[TruthEntry]) -> Result<String> {
    let doc = TruthDocument {
        schema_version: SCHEMA_VERSION.into(),
        conflicts: truth.to_vec(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn load_truth(text: &str) -> Result<Vec<TruthEntry>> {
    let doc: TruthDocument = serde_json::from_value(checked(text)?)?;
    Ok(doc.conflicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::habit::{mine_habits, MiningParams};
    use crate::io::synthetic::{generate_synthetic, presets};

    #[test]
    fn empty_database_round_trips() {
        let text = save_habits(&[]).unwrap();
        assert!(load_habits(&text).unwrap().is_empty());
    }

    #[test]
    fn mined_database_round_trips() {
        let data = generate_synthetic(&presets::probable_conflict(3, 30)).unwrap();
        let habits = mine_habits(&data.events, &MiningParams::default());
        assert_eq!(habits.len(), 4);
        let text = save_habits(&habits).unwrap();
        assert_eq!(load_habits(&text).unwrap(), habits);
    }

    #[test]
    fn version_mismatch_names_both_versions() {
        let text = r#"{"schema_version": "2", "habits": []}"#;
        let err = load_habits(text).unwrap_err();
        assert_eq!(
            err.to_string(),
            "schema version mismatch: expected 1, found 2"
        );
        assert!(matches!(
            load_habits(r#"{"habits": []}"#),
            Err(Error::SchemaVersion { .. })
        ));
    }

    #[test]
    fn scores_not_summing_to_one_are_rejected() {
        let text = r#"{
          "schema_version": "1",
          "habits": [{
            "id": "h1", "user_id": "R1", "location": "living", "support": 5,
            "window_start": 480, "start_tolerance": 5, "window_end": 540, "end_tolerance": 5,
            "fsas": [{"fsa_id": "f1", "name": "channel", "service_id": "TV",
                      "values": {"Fox": 0.5, "MTV": 0.48}}]
          }]
        }"#;
        assert!(matches!(load_habits(text), Err(Error::InvalidHabit { .. })));
        let fixed = text.replace("0.48", "0.5");
        assert_eq!(load_habits(&fixed).unwrap().len(), 1);
    }

    #[test]
    fn truth_round_trips() {
        let data = generate_synthetic(&presets::definite_conflict(3, 10)).unwrap();
        let text = save_truth(&data.truth).unwrap();
        assert_eq!(load_truth(&text).unwrap(), data.truth);
    }
}
