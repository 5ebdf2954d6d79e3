//! Line-oriented verdict reports ending in a `RESULT pass|fail|inconclusive` footer.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// Noted but does not change the outcome.
    Warn,
    Info,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Warn => "WARN",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    /// 0 for pass, 1 for fail, 2 for inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn from_footer(text: &str) -> Option<Outcome> {
        let last = text.lines().rev().find(|l| !l.trim().is_empty())?;
        match last.trim().strip_prefix("RESULT ")? {
            "pass" => Some(Outcome::Pass),
            "fail" => Some(Outcome::Fail),
            "inconclusive" => Some(Outcome::Inconclusive),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), lines: Vec::new() }
    }

    pub fn push(&mut self, status: Status, name: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(ReportLine { status, name: name.into(), detail: detail.into() });
    }

    pub fn check(&mut self, ok: bool, name: impl Into<String>, detail: impl Into<String>) {
        self.push(if ok { Status::Pass } else { Status::Fail }, name, detail);
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Info, name, detail);
    }

    /// Appends another report's lines with `prefix/` on each name.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for l in other.lines {
            self.lines.push(ReportLine { name: format!("{prefix}/{}", l.name), ..l });
        }
    }

    pub fn outcome(&self) -> Outcome {
        if self.lines.iter().any(|l| l.status == Status::Fail) {
            Outcome::Fail
        } else if self.lines.iter().any(|l| l.status == Status::Inconclusive) {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for l in &self.lines {
            writeln!(f, "{:<12} {}: {}", l.status.tag(), l.name, l.detail)?;
        }
        writeln!(f, "RESULT {}", self.outcome())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn footer_reflects_worst_line() {
        let mut r = Report::new("t");
        r.info("x", "y");
        assert_eq!(r.outcome(), Outcome::Pass);
        r.push(Status::Inconclusive, "a", "b");
        assert_eq!(r.outcome(), Outcome::Inconclusive);
        r.check(false, "c", "d");
        assert_eq!(r.outcome(), Outcome::Fail);
        let text = r.to_string();
        assert!(text.ends_with("RESULT fail\n"));
        assert_eq!(Outcome::from_footer(&text), Some(Outcome::Fail));
    }
}
