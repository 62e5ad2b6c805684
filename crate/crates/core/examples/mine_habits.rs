//! Mining a resident's daily TV habit from three weeks of usage.

use conflict_lens::habit::{mine_habits, MiningParams};
use conflict_lens::io::synthetic::presets;
use conflict_lens::io::{generate_synthetic, save_habits};

fn main() -> conflict_lens::Result<()> {
    let mut profile = presets::probable_conflict(42, 21);
    profile.noise.jitter_minutes = 8;
    let data = generate_synthetic(&profile)?;
    let habits = mine_habits(&data.events, &MiningParams::default());
    for h in &habits {
        println!(
            "{}: {:02}:{:02}±{} to {:02}:{:02}±{} on {} days",
            h.id,
            h.window_start / 60,
            h.window_start % 60,
            h.start_tolerance,
            h.window_end / 60,
            h.window_end % 60,
            h.end_tolerance,
            h.support
        );
        for fsa in &h.fsas {
            println!("    {} {:?}", fsa.key(), fsa.values);
        }
    }
    print!("{}", save_habits(&habits[..1])?);
    Ok(())
}
