//! Three residents who always want different channels at breakfast time.

use conflict_lens::config::Config;
use conflict_lens::conflict::{consistency_table, detect, overlap_groups};
use conflict_lens::io::generate_synthetic;
use conflict_lens::io::synthetic::presets;
use conflict_lens::pipeline;

fn main() -> conflict_lens::Result<()> {
    let data = generate_synthetic(&presets::definite_conflict(1, 20))?;
    let habits = pipeline::mine(&data.events, &Config::default())?;
    let groups = overlap_groups(&habits);
    println!("{} habits, {} overlap group(s)", habits.len(), groups.len());
    let table = consistency_table(&groups[0])?;
    println!("values {:?}", table.values());
    for (user, row) in table.users().iter().zip(table.rows()) {
        println!("  {user}: {row:?}");
    }
    for report in detect(&groups, 0.0)? {
        let s = report.scores.as_ref().expect("not pruned");
        println!(
            "{}: E={:.3} G={:.3} Emax={:.3} -> {}",
            report.key(),
            s.entropy,
            s.gain,
            s.max_entropy,
            report.class
        );
    }
    Ok(())
}
