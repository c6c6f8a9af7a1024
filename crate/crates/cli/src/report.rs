//! The report envelope shared by every subcommand.

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The computation finished and every checked claim holds.
    Ok,
    /// A checked claim does not hold.
    Fail,
    /// A budget ran out; the result is partial but not wrong.
    Capped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
    #[serde(skip)]
    pub text: String,
    /// Claim records of the suite, printed one per line in JSON mode.
    #[serde(skip)]
    pub records: Option<Vec<Value>>,
}

impl Report {
    pub fn new(command: &str, status: Status, result: impl Serialize, text: String) -> Self {
        Report {
            command: command.to_string(),
            status,
            result: serde_json::to_value(result).expect("reports serialize"),
            text,
            records: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Capped => 3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (format, &self.records) {
            (Format::Text, _) => self.text.clone(),
            (Format::Json, Some(records)) => records
                .iter()
                .map(|r| serde_json::to_string(r).expect("records serialize"))
                .collect::<Vec<_>>()
                .join("\n"),
            (Format::Json, None) => serde_json::to_string_pretty(self).expect("reports serialize"),
        }
    }

    pub fn print(&self, format: Format) {
        println!("{}", self.render(format).trim_end());
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.iter().map(|s| s.to_string()).collect())];
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }

    #[test]
    fn exit_codes() {
        let r = Report::new("x", Status::Capped, 1, String::new());
        assert_eq!(r.exit_code(), 3);
        assert!(r.render(Format::Json).contains("\"capped\""));
    }
}
