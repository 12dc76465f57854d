//! Line-oriented output: `key: value`, one record per line.

use std::fmt::Display;

pub const SCHEMA: &str = "thetacells/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification ran and failed.
    Fail,
    /// A search ran out of budget before deciding.
    Budget,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Budget => 2,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Budget => "budget-exhausted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    lines: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            lines: vec![format!("schema: {SCHEMA}"), format!("command: {command}")],
            status: Status::Ok,
        }
    }

    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn list<T: Display>(&mut self, key: &str, values: impl IntoIterator<Item = T>) -> &mut Self {
        let v: Vec<String> = values.into_iter().map(|x| x.to_string()).collect();
        self.put(key, v.join(" "))
    }

    /// Lowers the status; a failure is never upgraded by a later success.
    pub fn set(&mut self, s: Status) -> &mut Self {
        if self.status == Status::Ok || s == Status::Fail {
            self.status = s;
        }
        self
    }

    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push_str(&format!("\nstatus: {}\n", self.status.word()));
        out
    }
}
