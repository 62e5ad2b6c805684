//! More residents sharing the same devices means more conflicts.

use conflict_lens::config::Config;
use conflict_lens::eval::{scale_residents, scale_tsv};
use conflict_lens::io::synthetic::presets;

fn main() -> conflict_lens::Result<()> {
    let rows = scale_residents(
        &presets::household(1, 20),
        &[1, 2, 3, 4],
        &Config::default(),
        0.0,
    )?;
    print!("{}", scale_tsv(&rows));
    Ok(())
}
