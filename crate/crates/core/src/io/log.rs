//! Plain-text sensor logs in the CASAS layout.
//!
//! ```text
//! <YYYY-MM-DD> <HH:MM:SS> <sensor>[@location] <ON|OFF|value> [value] [user]
//! ```
//!
//! Fields are separated by runs of spaces and `#` starts a comment line. A
//! value token is either a bare value (stored under the attribute `value`)
//! or a comma-separated list of `attribute=value` pairs; `-` stands for no
//! value. OFF lines carry no value, so a single trailing token there is the
//! user. A status that is neither ON nor OFF is a value change: it closes
//! the open event of that stream and opens a new one.

use std::collections::BTreeMap;

use chrono::{NaiveDate, NaiveTime, Timelike};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{datetime, timestamp, AttrValue, ServiceEvent, TimeInterval, Timestamp};

/// Attribute that bare value tokens are stored under.
pub const DEFAULT_ATTRIBUTE: &str = "value";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    On,
    Off,
    Value(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RawLogRecord {
    pub line: usize,
    pub date: NaiveDate,
    pub time: NaiveTime,
    pub sensor: String,
    pub location: Option<String>,
    pub status: Status,
    pub value: Option<String>,
    pub user: Option<String>,
}

impl RawLogRecord {
    pub fn timestamp(&self) -> Timestamp {
        timestamp(self.date, self.time)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogIssue {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParseOptions {
    /// Resident for lines without a user column.
    pub default_user: Option<String>,
    /// Location of sensors not written as `sensor@location`.
    pub sensor_locations: BTreeMap<String, String>,
    pub default_location: String,
    /// Duration given to events whose OFF never arrives.
    pub max_open_seconds: i64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            default_user: None,
            sensor_locations: BTreeMap::new(),
            default_location: "home".into(),
            max_open_seconds: 4 * 3600,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedLog {
    pub events: Vec<ServiceEvent>,
    /// Lines that could not be read at all.
    pub malformed: Vec<LogIssue>,
    /// Readable lines whose pairing needed repair.
    pub flagged: Vec<LogIssue>,
}

/// Parses one line; `Ok(None)` for blank and comment lines.
pub fn parse_record(
    line_no: usize,
    line: &str,
) -> std::result::Result<Option<RawLogRecord>, String> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let tokens: Vec<&str> = trimmed.split_whitespace().collect();
    if tokens.len() < 4 {
        return Err(format!(
            "expected at least 4 fields, found {}",
            tokens.len()
        ));
    }
    let date = NaiveDate::parse_from_str(tokens[0], "%Y-%m-%d")
        .map_err(|e| format!("bad date `{}`: {e}", tokens[0]))?;
    let time = NaiveTime::parse_from_str(tokens[1], "%H:%M:%S%.f")
        .map_err(|e| format!("bad time `{}`: {e}", tokens[1]))?
        .with_nanosecond(0)
        .expect("zero nanoseconds");
    let (sensor, location) = match tokens[2].split_once('@') {
        Some((s, l)) if !s.is_empty() && !l.is_empty() => (s.to_string(), Some(l.to_string())),
        Some(_) => return Err(format!("bad sensor `{}`", tokens[2])),
        None => (tokens[2].to_string(), None),
    };
    let status = match tokens[3] {
        "ON" | "OPEN" => Status::On,
        "OFF" | "CLOSE" | "CLOSED" => Status::Off,
        other => Status::Value(other.to_string()),
    };
    let extras = &tokens[4..];
    let placeholder = |t: &str| (t != "-").then(|| t.to_string());
    let (value, user) = match (&status, extras) {
        (_, []) => (None, None),
        (Status::On, [v]) => (placeholder(v), None),
        (Status::Off | Status::Value(_), [u]) => (None, Some(u.to_string())),
        (Status::On, [v, u]) => (placeholder(v), Some(u.to_string())),
        (Status::Off, [_, u]) => (None, Some(u.to_string())),
        _ => return Err(format!("unexpected trailing fields `{}`", extras.join(" "))),
    };
    let value = match &status {
        Status::Value(v) => Some(v.clone()),
        _ => value,
    };
    Ok(Some(RawLogRecord {
        line: line_no,
        date,
        time,
        sensor,
        location,
        status,
        value,
        user,
    }))
}

fn parse_value_token(token: &str) -> std::result::Result<BTreeMap<String, AttrValue>, String> {
    let mut attributes = BTreeMap::new();
    for piece in token.split(',') {
        let (name, raw) = piece.split_once('=').unwrap_or((DEFAULT_ATTRIBUTE, piece));
        if name.is_empty() || raw.is_empty() {
            return Err(format!("bad value `{token}`"));
        }
        attributes.insert(name.to_string(), AttrValue::parse(raw));
    }
    Ok(attributes)
}

/// (sensor, location, user)
type StreamKey = (String, String, String);

struct OpenEvent {
    start: Timestamp,
    attributes: BTreeMap<String, AttrValue>,
    line: usize,
}

/// Pairs ON/OFF lines of every (sensor, location, user) stream into events.
///
/// Events crossing midnight are split at the day boundary. A second ON
/// before an OFF restarts the event (flagged), an OFF without ON is skipped
/// (flagged), and an ON that is never closed is capped at
/// `max_open_seconds` (flagged).
pub fn parse_log(text: &str, options: &ParseOptions) -> ParsedLog {
    let mut parsed = ParsedLog::default();
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_record(i + 1, line) {
            Ok(Some(record)) => records.push(record),
            Ok(None) => {}
            Err(reason) => parsed.malformed.push(LogIssue {
                line: i + 1,
                reason,
            }),
        }
    }
    records.sort_by_key(|r| (r.timestamp(), r.line));

    let mut open: BTreeMap<StreamKey, OpenEvent> = BTreeMap::new();
    let mut closed: Vec<(Timestamp, Timestamp, StreamKey, BTreeMap<String, AttrValue>)> =
        Vec::new();
    let mut close =
        |key: &StreamKey, ev: OpenEvent, end: Timestamp, flagged: &mut Vec<LogIssue>| {
            if end > ev.start {
                closed.push((ev.start, end, key.clone(), ev.attributes));
            } else {
                flagged.push(LogIssue {
                    line: ev.line,
                    reason: "zero-length event dropped".into(),
                });
            }
        };

    for record in records {
        let Some(user) = record.user.clone().or_else(|| options.default_user.clone()) else {
            parsed.malformed.push(LogIssue {
                line: record.line,
                reason: "no user column and no default resident".into(),
            });
            continue;
        };
        let location = record
            .location
            .clone()
            .or_else(|| options.sensor_locations.get(&record.sensor).cloned())
            .unwrap_or_else(|| options.default_location.clone());
        let attributes = match record.value.as_deref().map(parse_value_token).transpose() {
            Ok(a) => a.unwrap_or_default(),
            Err(reason) => {
                parsed.malformed.push(LogIssue {
                    line: record.line,
                    reason,
                });
                continue;
            }
        };
        let key = (record.sensor.clone(), location, user);
        let ts = record.timestamp();
        match record.status {
            Status::On | Status::Value(_) => {
                if let Some(prev) = open.remove(&key) {
                    if record.status == Status::On {
                        parsed.flagged.push(LogIssue {
                            line: record.line,
                            reason: format!(
                                "repeated ON for {}; previous event closed here",
                                key.0
                            ),
                        });
                    }
                    close(&key, prev, ts, &mut parsed.flagged);
                }
                open.insert(
                    key,
                    OpenEvent {
                        start: ts,
                        attributes,
                        line: record.line,
                    },
                );
            }
            Status::Off => match open.remove(&key) {
                Some(prev) => close(&key, prev, ts, &mut parsed.flagged),
                None => parsed.flagged.push(LogIssue {
                    line: record.line,
                    reason: format!("OFF without ON for {}; skipped", key.0),
                }),
            },
        }
    }
    for (key, ev) in std::mem::take(&mut open) {
        parsed.flagged.push(LogIssue {
            line: ev.line,
            reason: format!(
                "ON never closed for {}; capped at {} s",
                key.0, options.max_open_seconds
            ),
        });
        let end = ev.start + options.max_open_seconds.max(1);
        close(&key, ev, end, &mut parsed.flagged);
    }

    for (start, end, (service, location, user), attributes) in closed {
        let interval = TimeInterval::new(start, end).expect("checked positive duration");
        for part in interval.split_at_midnight() {
            parsed.events.push(ServiceEvent {
                service_id: service.clone(),
                attributes: attributes.clone(),
                interval: part,
                location: location.clone(),
                user_id: user.clone(),
            });
        }
    }
    parsed.malformed.sort_by_key(|i| i.line);
    parsed.flagged.sort_by_key(|i| i.line);
    sort_events(&mut parsed.events);
    parsed
}

/// Canonical event order: start, then stream identity.
pub fn sort_events(events: &mut [ServiceEvent]) {
    events.sort_by(|a, b| {
        (
            a.start(),
            &a.service_id,
            &a.user_id,
            &a.location,
            a.interval.end(),
        )
            .cmp(&(
                b.start(),
                &b.service_id,
                &b.user_id,
                &b.location,
                b.interval.end(),
            ))
    });
}

fn check_token(what: &str, token: &str, value_like: bool) -> Result<()> {
    let bad_char = |c: char| {
        c.is_whitespace() || c == '#' || (value_like && (c == ',' || c == '=')) || c == '@'
    };
    if token.is_empty() || token == "-" || token.chars().any(bad_char) {
        return Err(Error::Unprintable(format!("{what} `{token}`")));
    }
    Ok(())
}

fn value_token(attributes: &BTreeMap<String, AttrValue>) -> Result<String> {
    if attributes.is_empty() {
        return Ok("-".into());
    }
    let mut pieces = Vec::with_capacity(attributes.len());
    for (name, value) in attributes {
        check_token("attribute", name, true)?;
        let text = value.to_string();
        check_token("value", &text, true)?;
        if AttrValue::parse(&text) != *value {
            return Err(Error::Unprintable(format!(
                "value `{text}` would not read back unchanged"
            )));
        }
        pieces.push(format!("{name}={text}"));
    }
    Ok(pieces.join(","))
}

/// Writes events as ON/OFF line pairs that [`parse_log`] reads back.
///
/// Every line carries the location and user so the output needs no parse
/// options. Events of one stream must not overlap.
pub fn print_log(events: &[ServiceEvent]) -> Result<String> {
    // (timestamp, OFF before ON, sensor, user, text)
    let mut lines: Vec<(Timestamp, u8, &str, &str, String)> = Vec::with_capacity(events.len() * 2);
    for event in events {
        check_token("sensor", &event.service_id, false)?;
        check_token("location", &event.location, false)?;
        check_token("user", &event.user_id, false)?;
        let value = value_token(&event.attributes)?;
        let stamp = |ts: Timestamp| datetime(ts).format("%Y-%m-%d %H:%M:%S").to_string();
        let sensor = format!("{}@{}", event.service_id, event.location);
        lines.push((
            event.start(),
            1,
            &event.service_id,
            &event.user_id,
            format!(
                "{} {sensor} ON {value} {}",
                stamp(event.start()),
                event.user_id
            ),
        ));
        lines.push((
            event.interval.end(),
            0,
            &event.service_id,
            &event.user_id,
            format!(
                "{} {sensor} OFF {}",
                stamp(event.interval.end()),
                event.user_id
            ),
        ));
    }
    lines.sort();
    let mut out = String::with_capacity(lines.len() * 48);
    for (_, _, _, _, line) in lines {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
