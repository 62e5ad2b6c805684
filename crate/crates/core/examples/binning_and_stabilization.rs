//! Settling rapid channel changes, then binning thermostat readings.

use std::collections::BTreeMap;

use conflict_lens::model::{AttrValue, ServiceEvent, TimeInterval};
use conflict_lens::preprocess::{fit_bins, stabilize};

fn tv(start: i64, end: i64, channel: &str) -> ServiceEvent {
    ServiceEvent {
        service_id: "TV".into(),
        attributes: BTreeMap::from([("channel".into(), AttrValue::Categorical(channel.into()))]),
        interval: TimeInterval::new(start, end).unwrap(),
        location: "living".into(),
        user_id: "R1".into(),
    }
}

fn main() -> conflict_lens::Result<()> {
    // channel surfing: three quick hops before settling on Fox
    let events = vec![
        tv(0, 10, "MTV"),
        tv(10, 20, "HBO"),
        tv(20, 30, "CNN"),
        tv(30, 3600, "Fox"),
    ];
    for e in stabilize(&events, 60)? {
        println!(
            "settled: {}..{} {}",
            e.start(),
            e.interval.end(),
            e.attributes["channel"]
        );
    }

    let readings = [20.0, 21.0, 22.0, 25.0, 26.0, 27.0, 21.5, 26.5];
    let scheme = fit_bins("temperature", &readings, 2)?;
    println!("edges {:?}, labels {:?}", scheme.edges, scheme.labels);
    for t in [19.0, 23.4, 23.5, 30.0] {
        println!("{t} -> {}", scheme.label(t));
    }
    Ok(())
}
