//! Records shared by the text and line-oriented renderers.
//!
//! A line record is `STATUS LABEL FIELDS` with `FIELDS` either `-` or
//! `key=value` pairs joined by `;`. Values never contain whitespace.

use std::fmt::Write as _;

use alg_core::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Bounded,
    Info,
}

impl Status {
    pub fn token(self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAIL",
            Status::Bounded => "HOLDS-UP-TO-BOUND",
            Status::Info => "INFO",
        }
    }

    pub fn from_token(t: &str) -> Option<Status> {
        [Status::Holds, Status::Fails, Status::Bounded, Status::Info].into_iter().find(|s| s.token() == t)
    }

    pub fn of<W>(v: &Verdict<W>) -> Status {
        match v {
            Verdict::Holds => Status::Holds,
            Verdict::Fails(_) => Status::Fails,
            Verdict::HoldsUpToBound => Status::Bounded,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub status: Status,
    pub label: String,
    pub fields: Vec<(String, String)>,
    /// Human-readable lines for text mode.
    pub text: Vec<String>,
}

impl Record {
    pub fn new(status: Status, label: impl Into<String>) -> Record {
        let label: String = label.into().split_whitespace().collect::<Vec<_>>().join("_");
        Record { status, label, fields: Vec::new(), text: Vec::new() }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Record {
        let v: String = value.to_string().split_whitespace().collect::<Vec<_>>().join("");
        self.fields.push((key.into(), v));
        self
    }

    pub fn fields(mut self, kv: impl IntoIterator<Item = (String, usize)>) -> Record {
        for (k, v) in kv {
            self = self.field(&k, v);
        }
        self
    }

    pub fn line(mut self, text: impl Into<String>) -> Record {
        self.text.push(text.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render_line(&self) -> String {
        let fields = if self.fields.is_empty() {
            "-".to_string()
        } else {
            self.fields.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
        };
        format!("{} {} {}", self.status.token(), self.label, fields)
    }

    /// Inverse of [`Record::render_line`]; the text part is left empty.
    pub fn parse_line(line: &str) -> Option<Record> {
        let mut parts = line.split(' ');
        let status = Status::from_token(parts.next()?)?;
        let label = parts.next()?.to_string();
        let rest = parts.next()?;
        if parts.next().is_some() {
            return None;
        }
        let mut fields = Vec::new();
        if rest != "-" {
            for kv in rest.split(';') {
                let (k, v) = kv.split_once('=')?;
                fields.push((k.to_string(), v.to_string()));
            }
        }
        Some(Record { status, label, fields, text: Vec::new() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputMode {
    #[default]
    Text,
    Lines,
}

/// Exit status for a batch of records: 1 if anything failed.
pub fn exit_code(records: &[Record]) -> i32 {
    if records.iter().any(|r| r.status == Status::Fails) {
        1
    } else {
        0
    }
}

pub fn render(records: &[Record], mode: OutputMode) -> String {
    let mut out = String::new();
    for r in records {
        match mode {
            OutputMode::Lines => writeln!(out, "{}", r.render_line()).unwrap(),
            OutputMode::Text => {
                for t in &r.text {
                    writeln!(out, "{t}").unwrap();
                }
            }
        }
    }
    out
}

/// `p = 1, q = 0` rendering of a valuation for text output.
pub fn valuation_text(v: &[(String, usize)]) -> String {
    if v.is_empty() {
        return "(no variables)".into();
    }
    v.iter().map(|(k, x)| format!("{k} = {x}")).collect::<Vec<_>>().join(", ")
}
