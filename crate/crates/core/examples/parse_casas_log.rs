//! Reading a sensor log with users, locations and value changes.

use conflict_lens::io::{parse_log, print_log, ParseOptions};

const LOG: &str = "\
# date time sensor[@location] status [value] [user]
2011-06-15 07:58:02 TV@living ON channel=Fox,volume=30 R1
2011-06-15 08:20:40 TV@living channel=MTV,volume=30 R1
2011-06-15 09:01:10 TV@living OFF R1
2011-06-15 21:00:00 M003 ON
2011-06-15 21:30:00 M003 OFF
2011-06-15 23:50:00 D001 OPEN
2011-06-16 00:20:00 D001 CLOSE
2011-06-16 07:00:00 this line is garbage
";

fn main() -> conflict_lens::Result<()> {
    let mut options = ParseOptions {
        default_user: Some("R2".into()),
        ..ParseOptions::default()
    };
    options
        .sensor_locations
        .insert("M003".into(), "bedroom".into());
    let parsed = parse_log(LOG, &options);
    for e in &parsed.events {
        println!(
            "{} {} {}..{} {} {:?}",
            e.user_id,
            e.service_id,
            e.start(),
            e.interval.end(),
            e.location,
            e.attributes
        );
    }
    for issue in parsed.malformed.iter().chain(&parsed.flagged) {
        println!("line {}: {}", issue.line, issue.reason);
    }
    print!("{}", print_log(&parsed.events)?);
    Ok(())
}
