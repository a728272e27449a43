use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Schema tag embedded in report files.
pub const REPORT_SCHEMA: &str = "biharm-report/1";

/// One verification outcome; `pass ⇔ margin ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
}

impl CheckReport {
    /// `lhs ≤ rhs`, margin `rhs − lhs`.
    pub fn inequality(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_margin(name, lhs, rhs, rhs - lhs, tolerance)
    }

    /// `lhs = rhs`, margin `−|rhs − lhs|`.
    pub fn identity(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::with_margin(name, lhs, rhs, -(rhs - lhs).abs(), tolerance)
    }

    fn with_margin(name: impl Into<String>, lhs: f64, rhs: f64, margin: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
            params: Map::new(),
            seed: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Serialize)]
struct ReportFile<'a> {
    schema: &'static str,
    suite: &'a str,
    passed: usize,
    failed: usize,
    reports: &'a [CheckReport],
}

/// Pretty JSON document with summary counts.
pub fn reports_to_json(suite: &str, reports: &[CheckReport]) -> String {
    let passed = reports.iter().filter(|r| r.pass).count();
    let doc = ReportFile {
        schema: REPORT_SCHEMA,
        suite,
        passed,
        failed: reports.len() - passed,
        reports,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialise");
    s.push('\n');
    s
}

/// Flat CSV; `params` become `key=value` pairs joined by `;`.
pub fn write_reports_csv<W: Write>(reports: &[CheckReport], mut out: W) -> std::io::Result<()> {
    writeln!(out, "# schema={REPORT_SCHEMA}")?;
    writeln!(out, "name,lhs,rhs,margin,tolerance,pass,seed,params")?;
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{:e},{:e},{:e},{:e},{},{},\"{}\"",
            r.name,
            r.lhs,
            r.rhs,
            r.margin,
            r.tolerance,
            r.pass,
            seed,
            params.join(";").replace('"', "'")
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule() {
        assert!(CheckReport::inequality("a", 1.0, 1.0, 0.0).pass);
        assert!(!CheckReport::inequality("a", 1.0 + 1e-9, 1.0, 1e-10).pass);
        assert!(CheckReport::inequality("a", 1.0 + 1e-11, 1.0, 1e-10).pass);
        assert!(!CheckReport::inequality("a", f64::NAN, 1.0, 1.0).pass);
        let id = CheckReport::identity("b", 2.0, 2.5, 0.1);
        assert_eq!(id.margin, -0.5);
        assert!(!id.pass);
    }

    #[test]
    fn json_shape() {
        let r = CheckReport::inequality("x", 0.0, 1.0, 0.0).param("k", 2).seed(7);
        let text = reports_to_json("demo", &[r]);
        let v: Value = serde_json::from_str(&text).unwrap();
        let rep = &v["reports"][0];
        for key in ["name", "lhs", "rhs", "margin", "tolerance", "pass", "params", "seed"] {
            assert!(rep.get(key).is_some(), "{key}");
        }
        assert_eq!(v["passed"], 1);
    }
}
