use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One named check. `lhs`/`rhs` are `[re, im]`; integer checks use `im = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub tag: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Informational rows never affect the exit status.
    pub asserted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Row {
    /// `|lhs − rhs| ≤ tol`.
    pub fn approx(name: impl Into<String>, tag: &str, lhs: Complex64, rhs: Complex64, tol: f64) -> Row {
        let deviation = (lhs - rhs).norm();
        Row {
            name: name.into(),
            tag: tag.into(),
            lhs: c2(lhs),
            rhs: c2(rhs),
            deviation,
            tolerance: tol,
            pass: deviation <= tol,
            asserted: true,
            note: None,
        }
    }

    /// Exact integer equality.
    pub fn exact(name: impl Into<String>, tag: &str, lhs: i64, rhs: i64) -> Row {
        let mut r = Row::approx(name, tag, Complex64::new(lhs as f64, 0.0), Complex64::new(rhs as f64, 0.0), 0.0);
        r.pass = lhs == rhs;
        r
    }

    /// A deviation that must not exceed `tol` (`lhs` = deviation, `rhs` = 0).
    pub fn bound(name: impl Into<String>, tag: &str, deviation: f64, tol: f64) -> Row {
        Row::approx(name, tag, Complex64::new(deviation, 0.0), Complex64::new(0.0, 0.0), tol)
    }

    /// A check that failed to run, e.g. because of an error.
    pub fn failed(name: impl Into<String>, tag: &str, note: String) -> Row {
        Row {
            name: name.into(),
            tag: tag.into(),
            lhs: [0.0, 0.0],
            rhs: [0.0, 0.0],
            deviation: 0.0,
            tolerance: 0.0,
            pass: false,
            asserted: true,
            note: Some(note),
        }
    }

    pub fn informational(mut self) -> Row {
        self.asserted = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Row {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub asserted: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Summary {
        let asserted = rows.iter().filter(|r| r.asserted).count();
        let passed = rows.iter().filter(|r| r.asserted && r.pass).count();
        Summary { asserted, passed, failed: asserted - passed, informational: rows.len() - asserted }
    }
}

/// Header of a report section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub family: String,
    pub n: usize,
    pub q: u32,
    /// `E`-code of the parameter of `ψ` over `E`, in hex.
    pub beta: String,
    /// `F`-code of the parameter of `ψ` over `F`, in hex.
    pub beta_f: String,
    pub seed: u64,
    pub tol: f64,
    pub zero_tol: f64,
    pub table_cap: usize,
    pub model_cap: usize,
}

/// All rows for one configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ReportConfig,
    pub rows: Vec<Row>,
    pub summary: Summary,
    /// Character-table cache keys consulted.
    pub provenance: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Reports for several configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub command: String,
    pub reports: Vec<Report>,
    pub summary: Summary,
}

impl GridReport {
    pub fn new(command: &str, reports: Vec<Report>) -> Self {
        let rows: Vec<Row> = reports.iter().flat_map(|r| r.rows.iter().cloned()).collect();
        GridReport { command: command.into(), summary: Summary::of(&rows), reports }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flags_follow_deviation() {
        let r = Row::approx("a", "t", Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-9, 0.0), 1e-8);
        assert!(r.pass);
        assert!(!Row::bound("b", "t", 1e-7, 1e-8).pass);
        assert!(Row::exact("c", "t", 3, 3).pass);
        assert!(!Row::exact("d", "t", 3, 4).pass);
        let rows = vec![r, Row::exact("d", "t", 3, 4), Row::exact("e", "t", 1, 2).informational()];
        assert_eq!(Summary::of(&rows), Summary { asserted: 2, passed: 1, failed: 1, informational: 1 });
    }

    #[test]
    fn json_round_trip() {
        let rows = vec![Row::exact("x", "t", 1, 1).with_note("ok")];
        let rep = Report {
            config: ReportConfig {
                family: "gl".into(),
                n: 2,
                q: 2,
                beta: "0x2".into(),
                beta_f: "0x1".into(),
                seed: 1,
                tol: 1e-6,
                zero_tol: 1e-8,
                table_cap: 10,
                model_cap: 10,
            },
            summary: Summary::of(&rows),
            rows,
            provenance: vec![],
        };
        let grid = GridReport::new("verify all", vec![rep]);
        let back: GridReport = serde_json::from_str(&grid.to_json()).unwrap();
        assert_eq!(back, grid);
        assert!(grid.passed());
    }
}
