//! End-to-end runs: events to habits to classified overlap groups.

use chrono::NaiveDate;

use crate::config::Config;
use crate::conflict::{detect, overlap_groups, ConflictReport, OverlapGroup};
use crate::error::Result;
use crate::habit::{mine_habits, ServiceUsageHabit};
use crate::io::log::sort_events;
use crate::model::{datetime, ServiceEvent};
use crate::preprocess::{apply_bins, fit_home_bins, stabilize};

/// Stabilizes values, then bins numeric attributes with one scheme per
/// (service, attribute) for the whole home.
pub fn preprocess(events: &[ServiceEvent], config: &Config) -> Result<Vec<ServiceEvent>> {
    let mut sorted = events.to_vec();
    sort_events(&mut sorted);
    let mut settled = stabilize(&sorted, config.stabilize.window_seconds)?;
    let schemes = fit_home_bins(&settled, config.binning.k)?;
    apply_bins(&mut settled, &schemes);
    Ok(settled)
}

pub fn mine(events: &[ServiceEvent], config: &Config) -> Result<Vec<ServiceUsageHabit>> {
    Ok(mine_habits(&preprocess(events, config)?, &config.habit))
}

/// Events whose start date lies in `from..=until`; open bounds keep all.
pub fn date_range(
    events: &[ServiceEvent],
    from: Option<NaiveDate>,
    until: Option<NaiveDate>,
) -> Vec<ServiceEvent> {
    events
        .iter()
        .filter(|e| {
            let date = datetime(e.start()).date();
            from.is_none_or(|f| date >= f) && until.is_none_or(|u| date <= u)
        })
        .cloned()
        .collect()
}

/// Habits and overlap groups of an event set.
pub fn groups(
    events: &[ServiceEvent],
    config: &Config,
) -> Result<(Vec<ServiceUsageHabit>, Vec<OverlapGroup>)> {
    let habits = mine(events, config)?;
    let groups = overlap_groups(&habits);
    Ok((habits, groups))
}

/// Full run at proximity threshold `mu`.
pub fn run(events: &[ServiceEvent], config: &Config, mu: f64) -> Result<Vec<ConflictReport>> {
    let (_, groups) = groups(events, config)?;
    detect(&groups, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::ConflictClass;
    use crate::io::synthetic::{generate_synthetic, presets, NoiseParams};

    #[test]
    fn definite_scenario_end_to_end() {
        let data = generate_synthetic(&presets::definite_conflict(11, 20)).unwrap();
        let reports = run(&data.events, &Config::default(), 0.0).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].class, ConflictClass::Strong);
        assert_eq!(reports[0].key(), data.truth[0].key);
    }

    #[test]
    fn noisy_surfing_is_settled_before_mining() {
        let mut profile = presets::probable_conflict(11, 40);
        profile.noise = NoiseParams {
            jitter_minutes: 5,
            skip_probability: 0.0,
            surf_probability: 0.5,
        };
        let data = generate_synthetic(&profile).unwrap();
        let settled = preprocess(&data.events, &Config::default()).unwrap();
        assert_eq!(settled.len(), 4 * 40);
        let habits = mine(&data.events, &Config::default()).unwrap();
        assert_eq!(habits.len(), 4);
        // settled values keep the quota distribution exactly
        let r1 = habits.iter().find(|h| h.user_id == "R1").unwrap();
        assert_eq!(r1.fsas[0].values["Fox"], 0.5);
    }

    #[test]
    fn date_range_filters_inclusively() {
        let data = generate_synthetic(&presets::definite_conflict(1, 10)).unwrap();
        let from = NaiveDate::from_ymd_opt(2011, 6, 17);
        let until = NaiveDate::from_ymd_opt(2011, 6, 18);
        assert_eq!(date_range(&data.events, from, until).len(), 8);
        assert_eq!(date_range(&data.events, None, None).len(), 40);
    }
}
