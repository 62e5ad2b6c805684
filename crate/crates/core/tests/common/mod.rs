//! Brute-force reference implementations shared by the integration tests.
//! They avoid the library's own algorithms on purpose.

#![allow(dead_code)]

use std::collections::BTreeMap;

use conflict_lens::habit::{AttributeKey, FuzzyServiceAttribute, ServiceUsageHabit};
use conflict_lens::model::{AttrValue, ServiceEvent, TimeInterval};

/// -Σ p log2 p with an explicit loop, skipping zero terms.
pub fn entropy(p: &[f64]) -> f64 {
    let mut h = 0.0;
    for &x in p {
        if x > 0.0 {
            h -= x * x.log2();
        }
    }
    h
}

/// Mutual information between resident and value under a uniform choice of
/// resident: H(U) + H(V) - H(U, V).
pub fn gain(rows: &[Vec<f64>]) -> f64 {
    let u = rows.len() as f64;
    let n = rows[0].len();
    let mut joint = Vec::new();
    let mut marginal = vec![0.0; n];
    for row in rows {
        for (j, &p) in row.iter().enumerate() {
            joint.push(p / u);
            marginal[j] += p / u;
        }
    }
    let users = vec![1.0 / u; rows.len()];
    (entropy(&users) + entropy(&marginal) - entropy(&joint)).max(0.0)
}

/// Mixture entropy of equally weighted rows.
pub fn table_entropy(rows: &[Vec<f64>]) -> f64 {
    let n = rows[0].len();
    let mut mix = vec![0.0; n];
    for row in rows {
        for j in 0..n {
            mix[j] += row[j] / rows.len() as f64;
        }
    }
    entropy(&mix)
}

/// Minute-by-minute count of active windows over the combined span.
pub fn proximity(windows: &[(i64, i64)]) -> f64 {
    let lo = windows.iter().map(|w| w.0).min().unwrap();
    let hi = windows.iter().map(|w| w.1).max().unwrap();
    let mut covered = 0i64;
    for t in lo..hi {
        covered += windows.iter().filter(|w| w.0 <= t && t < w.1).count() as i64;
    }
    covered as f64 / ((hi - lo) as f64 * windows.len() as f64)
}

fn sse(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|v| (v - mean).powi(2)).sum()
}

/// Smallest within-bin squared error over every split of the sorted values
/// into exactly `k` non-empty groups of distinct values.
pub fn best_binning_cost(values: &[f64], k: usize) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct: Vec<f64> = sorted.clone();
    distinct.dedup();
    let d = distinct.len();
    assert!(k >= 1 && k <= d);
    let mut best = f64::INFINITY;
    // every (k-1)-subset of the d-1 gaps between distinct values
    for mask in 0u32..(1 << (d - 1)) {
        if mask.count_ones() as usize != k - 1 {
            continue;
        }
        let mut groups: Vec<Vec<f64>> = vec![Vec::new()];
        let mut gi = 0;
        for (i, &dv) in distinct.iter().enumerate() {
            if i > 0 && mask & (1 << (i - 1)) != 0 {
                groups.push(Vec::new());
                gi += 1;
            }
            groups[gi].extend(sorted.iter().filter(|&&v| v == dv));
        }
        best = best.min(groups.iter().map(|g| sse(g)).sum());
    }
    best
}

/// Within-bin squared error of an actual assignment.
pub fn assignment_cost(values: &[f64], bins: &[usize]) -> f64 {
    let mut groups: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (&v, &b) in values.iter().zip(bins) {
        groups.entry(b).or_default().push(v);
    }
    groups.values().map(|g| sse(g)).sum()
}

pub fn habit(
    id: &str,
    user: &str,
    window: (i64, i64),
    values: &[(&str, f64)],
) -> ServiceUsageHabit {
    ServiceUsageHabit {
        id: id.into(),
        user_id: user.into(),
        fsas: vec![FuzzyServiceAttribute {
            fsa_id: format!("{id}/channel"),
            name: "channel".into(),
            service_id: "TV".into(),
            values: values.iter().map(|(v, p)| (v.to_string(), *p)).collect(),
        }],
        window_start: window.0,
        start_tolerance: 0,
        window_end: window.1,
        end_tolerance: 0,
        location: "living".into(),
        support: 10,
    }
}

pub fn tv_channel() -> AttributeKey {
    AttributeKey::new("TV", "channel")
}

pub fn event(user: &str, start: i64, end: i64, channel: &str) -> ServiceEvent {
    ServiceEvent {
        service_id: "TV".into(),
        attributes: BTreeMap::from([(
            "channel".to_string(),
            AttrValue::Categorical(channel.into()),
        )]),
        interval: TimeInterval::new(start, end).unwrap(),
        location: "living".into(),
        user_id: user.into(),
    }
}
