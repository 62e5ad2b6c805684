//! Event clean-up ahead of habit mining: value stabilization and optimal
//! binning of numeric attributes into categorical labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AttrValue, ServiceEvent};

/// Cut points over one numeric attribute. Values below the first edge fall in
/// bin 0, values at or above the last edge in the final bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinScheme {
    pub attribute: String,
    pub edges: Vec<f64>,
    pub labels: Vec<String>,
}

impl BinScheme {
    pub fn assign(&self, value: f64) -> usize {
        self.edges.partition_point(|&edge| edge <= value)
    }

    pub fn label(&self, value: f64) -> &str {
        &self.labels[self.assign(value)]
    }
}

/// Fits `k` bins minimising the total within-bin sum of squared deviations.
///
/// Exact dynamic program over the sorted distinct values (weighted by
/// multiplicity); groups are contiguous, edges sit at the midpoints between
/// neighbouring groups and each label spells out its group's value range.
pub fn fit_bins(attribute: &str, values: &[f64], k: usize) -> Result<BinScheme> {
    if values.is_empty() {
        return Err(Error::EmptyInput("no values to bin"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidDistribution(
            "non-finite value in binning input".into(),
        ));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for v in sorted {
        match distinct.last_mut() {
            Some((last, w)) if *last == v => *w += 1.0,
            _ => distinct.push((v, 1.0)),
        }
    }
    let m = distinct.len();
    if k == 0 || k > m {
        return Err(Error::InfeasibleBinCount { k, distinct: m });
    }

    // prefix sums over values shifted by the first one to limit cancellation
    let shift = distinct[0].0;
    let mut w = vec![0.0; m + 1];
    let mut s1 = vec![0.0; m + 1];
    let mut s2 = vec![0.0; m + 1];
    for (i, &(v, c)) in distinct.iter().enumerate() {
        let x = v - shift;
        w[i + 1] = w[i] + c;
        s1[i + 1] = s1[i] + c * x;
        s2[i + 1] = s2[i] + c * x * x;
    }
    // sse of distinct[i..j]
    let sse = |i: usize, j: usize| -> f64 {
        let cw = w[j] - w[i];
        let cs = s1[j] - s1[i];
        ((s2[j] - s2[i]) - cs * cs / cw).max(0.0)
    };

    // cost[g][j]: best cost of splitting the first j distinct values into g groups
    let mut cost = vec![vec![f64::INFINITY; m + 1]; k + 1];
    let mut back = vec![vec![0usize; m + 1]; k + 1];
    cost[0][0] = 0.0;
    for g in 1..=k {
        for j in g..=m {
            for i in (g - 1)..j {
                let c = cost[g - 1][i] + sse(i, j);
                if c < cost[g][j] {
                    cost[g][j] = c;
                    back[g][j] = i;
                }
            }
        }
    }

    let mut bounds = Vec::with_capacity(k);
    let mut j = m;
    for g in (1..=k).rev() {
        let i = back[g][j];
        bounds.push((i, j));
        j = i;
    }
    bounds.reverse();

    let edges = bounds
        .windows(2)
        .map(|pair| (distinct[pair[0].1 - 1].0 + distinct[pair[1].0].0) / 2.0)
        .collect();
    let labels = bounds
        .iter()
        .map(|&(i, j)| {
            let (lo, hi) = (distinct[i].0, distinct[j - 1].0);
            // always a range, so a label never reads back as a number
            format!("{lo}..{hi}")
        })
        .collect();
    Ok(BinScheme {
        attribute: attribute.to_string(),
        edges,
        labels,
    })
}

/// Collapses bursts of rapid value changes to the value the resident
/// settled on.
///
/// Within each (service, user, location) stream, consecutive events whose
/// starts are at most `settle_window` apart form a run. A run becomes one
/// event spanning from its first start to its last event's end, carrying the
/// last event's attribute values. Output stays sorted by start time.
pub fn stabilize(events: &[ServiceEvent], settle_window: i64) -> Result<Vec<ServiceEvent>> {
    if settle_window <= 0 {
        return Err(Error::InvalidSettleWindow);
    }
    if let Some(i) = events.windows(2).position(|w| w[1].start() < w[0].start()) {
        return Err(Error::Unsorted(i + 1));
    }

    let mut streams: BTreeMap<(&str, &str, &str), Vec<usize>> = BTreeMap::new();
    for (i, event) in events.iter().enumerate() {
        streams.entry(event.stream_key()).or_default().push(i);
    }

    let mut settled: Vec<(usize, ServiceEvent)> = Vec::with_capacity(events.len());
    for indices in streams.values() {
        let mut run_first = indices[0];
        let mut run_last = indices[0];
        for &i in &indices[1..] {
            if events[i].start() - events[run_last].start() <= settle_window {
                run_last = i;
            } else {
                settled.push((run_first, collapse(&events[run_first], &events[run_last])));
                run_first = i;
                run_last = i;
            }
        }
        settled.push((run_first, collapse(&events[run_first], &events[run_last])));
    }
    settled.sort_by_key(|(i, e)| (e.start(), *i));
    Ok(settled.into_iter().map(|(_, e)| e).collect())
}

fn collapse(first: &ServiceEvent, last: &ServiceEvent) -> ServiceEvent {
    let mut out = last.clone();
    out.interval = crate::model::TimeInterval::new(first.start(), last.interval.end())
        .expect("run ends after it starts");
    out
}

/// Fits one scheme per numeric (service, attribute) across the whole home.
///
/// The bin count is capped at the number of distinct values so sparse
/// attributes still get a scheme.
pub fn fit_home_bins(
    events: &[ServiceEvent],
    k: usize,
) -> Result<BTreeMap<(String, String), BinScheme>> {
    let mut numeric: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for event in events {
        for (name, value) in &event.attributes {
            if let Some(v) = value.as_numeric() {
                numeric
                    .entry((event.service_id.clone(), name.clone()))
                    .or_default()
                    .push(v);
            }
        }
    }
    numeric
        .into_iter()
        .map(|(key, values)| {
            let mut distinct = values.clone();
            distinct.sort_by(f64::total_cmp);
            distinct.dedup();
            let scheme = fit_bins(
                &format!("{}.{}", key.0, key.1),
                &values,
                k.min(distinct.len()),
            )?;
            Ok((key, scheme))
        })
        .collect()
}

/// Replaces numeric values that have a scheme with their bin label.
pub fn apply_bins(events: &mut [ServiceEvent], schemes: &BTreeMap<(String, String), BinScheme>) {
    for event in events {
        for (name, value) in event.attributes.iter_mut() {
            if let AttrValue::Numeric(v) = *value {
                if let Some(scheme) = schemes.get(&(event.service_id.clone(), name.clone())) {
                    *value = AttrValue::Categorical(scheme.label(v).to_string());
                }
            }
        }
    }
}
