use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

/// One solver run, as printed by `solve` and `ratio`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub system: &'static str,
    pub k: Option<usize>,
    pub algorithm: String,
    pub objective: String,
    pub psf: String,
    pub value: u64,
    /// Proven lower bound on `value` (satisfaction objectives only).
    pub bound: Option<f64>,
    pub bound_ok: Option<bool>,
    pub oracle: Option<u64>,
    pub ratio: Option<f64>,
    pub seed: Option<u64>,
    pub branch: Option<&'static str>,
    pub sampling_runs: Option<u64>,
    pub guarantee_void: bool,
    pub elapsed_ms: Option<f64>,
    pub committee: Vec<usize>,
    pub targets: Vec<usize>,
}

fn quoted(s: &str) -> String {
    if s.is_empty() || s.contains(char::is_whitespace) || s.contains('"') {
        format!("{s:?}")
    } else {
        s.to_string()
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

impl RunRecord {
    /// The `key=value` line; absent optional fields are left out.
    pub fn line(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: String| {
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "{key}={value}");
        };
        if let Some(t) = self.trial {
            put("trial", t.to_string());
        }
        put("instance", quoted(&self.instance));
        put("n", self.n.to_string());
        put("m", self.m.to_string());
        put("system", self.system.to_string());
        if let Some(k) = self.k {
            put("k", k.to_string());
        }
        put("algorithm", self.algorithm.clone());
        put("objective", quoted(&self.objective));
        put("psf", self.psf.clone());
        put("value", self.value.to_string());
        if let Some(b) = self.bound {
            put("bound", format!("{b:.6}"));
        }
        if let Some(ok) = self.bound_ok {
            put("bound_ok", ok.to_string());
        }
        if let Some(o) = self.oracle {
            put("oracle", o.to_string());
        }
        if let Some(r) = self.ratio {
            put("ratio", format!("{r:.6}"));
        }
        if let Some(s) = self.seed {
            put("seed", s.to_string());
        }
        if let Some(b) = self.branch {
            put("branch", b.to_string());
        }
        if let Some(r) = self.sampling_runs {
            put("sampling_runs", r.to_string());
        }
        if self.guarantee_void {
            put("guarantee_void", "true".into());
        }
        if let Some(ms) = self.elapsed_ms {
            put("elapsed_ms", format!("{ms:.3}"));
        }
        out
    }

    /// Record line followed by the committee and targets lines, or one JSON object.
    pub fn render(&self, json: bool) -> Result<String> {
        if json {
            return Ok(serde_json::to_string(self)? + "\n");
        }
        Ok(format!(
            "{}\ncommittee: {}\ntargets: {}\n",
            self.line(),
            join(&self.committee),
            join(&self.targets)
        ))
    }
}
