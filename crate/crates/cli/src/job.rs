use std::time::Instant;

use kappa_core::{
    certify_right_veering, kappa, negative_destab_obstruction, psi, psi_gradings, self_linking, skh_dims, ss_page_dim,
    word_problem, BasepointAddress, BraidWord, Destabilization, Kappa, Variant, Veering, WordProblem,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{JobKind, JobOptions};

/// Errors from turning text into a job. The split decides the exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid options: {0}")]
    Options(String),
}

/// A validated job: a braid, what to compute on it, and the options that matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub braid: BraidWord,
    pub command: JobKind,
    pub basepoint: Option<BasepointAddress>,
    pub page: u32,
    pub h: i64,
    pub q: i64,
    pub k: i64,
    pub witness: bool,
}

impl JobSpec {
    pub fn new(braid: BraidWord, command: JobKind, opts: &JobOptions) -> Result<Self, JobError> {
        let basepoint = match (&opts.basepoint, command.is_reduced()) {
            (Some(text), true) => Some(parse_basepoint(&braid, text)?),
            (None, true) => {
                return Err(JobError::Options(format!(
                    "{} needs --basepoint position,gap",
                    command.name()
                )))
            }
            (Some(_), false) => return Err(JobError::Options(format!("{} takes no --basepoint", command.name()))),
            (None, false) => None,
        };
        if command == JobKind::Ss && opts.page == 0 {
            return Err(JobError::Options("--page must be at least 1".into()));
        }
        let n = braid.strands() as i64;
        Ok(Self {
            q: opts.q.unwrap_or_else(|| self_linking(&braid)),
            h: opts.h.unwrap_or(0),
            k: opts.k.unwrap_or(-n),
            page: opts.page,
            witness: opts.witness,
            basepoint,
            command,
            braid,
        })
    }

    /// Cache key text: everything the result depends on and nothing else.
    pub fn key(&self) -> String {
        let mut key = format!(
            "{}\n{}\n{}",
            self.braid.normalized_text(),
            self.braid.strands(),
            self.command.name()
        );
        match self.command {
            JobKind::KappaSub | JobKind::KappaQuot => {
                let p = self.basepoint.expect("reduced jobs carry a basepoint");
                key += &format!("\nbasepoint={},{}", p.position, p.gap);
            }
            JobKind::Ss => key += &format!("\npage={} h={} q={} k={}", self.page, self.h, self.q, self.k),
            _ => {}
        }
        if self.witness && self.has_witness() {
            key += "\nwitness";
        }
        key
    }

    fn has_witness(&self) -> bool {
        matches!(self.command, JobKind::Kappa | JobKind::KappaSub | JobKind::KappaQuot)
    }

    fn variant(&self) -> Variant {
        match (self.command, self.basepoint) {
            (JobKind::KappaSub, Some(p)) => Variant::ReducedSub(p),
            (JobKind::KappaQuot, Some(p)) => Variant::ReducedQuot(p),
            _ => Variant::Unreduced,
        }
    }
}

fn parse_basepoint(braid: &BraidWord, text: &str) -> Result<BasepointAddress, JobError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
    match nums.as_deref() {
        Some(&[position, gap]) => {
            BasepointAddress::new(braid, position, gap).map_err(|e| JobError::Options(e.to_string()))
        }
        _ => Err(JobError::Options(format!("basepoint {text:?} is not `position,gap`"))),
    }
}

pub fn parse_word(strands: Option<usize>, word: &str) -> Result<BraidWord, JobError> {
    kappa_core::parse_braid(word, strands).map_err(|e| JobError::Parse(e.to_string()))
}

/// Result of one job. Field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct Output {
    pub word: String,
    pub n: usize,
    pub command: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<(u64, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub time_ms: Option<f64>,
}

fn kappa_value(k: Kappa) -> Value {
    match k {
        Kappa::Finite(v) => json!(v),
        Kappa::Infinite => json!("infinity"),
    }
}

/// Runs the job. `time_ms` is left empty for the caller to fill.
pub fn execute(job: &JobSpec) -> Output {
    let b = &job.braid;
    let mut out = Output {
        word: b.normalized_text(),
        n: b.strands(),
        command: job.command.name().to_string(),
        value: Value::Null,
        witness_k: None,
        witness_size: None,
        witness: None,
        time_ms: None,
    };
    match job.command {
        JobKind::Kappa | JobKind::KappaSub | JobKind::KappaQuot => {
            let r = kappa(b, job.variant());
            out.value = kappa_value(r.value);
            if let Some(w) = r.witness {
                out.witness_k = Some(w.k);
                out.witness_size = Some(w.generators.len());
                if job.witness {
                    out.witness = Some(w.generators.iter().map(|g| (g.res.0, g.labels)).collect());
                }
            }
        }
        JobKind::Psi => {
            let g = psi(b, Variant::Unreduced);
            let gr = psi_gradings(b, Variant::Unreduced);
            out.value = json!({ "res": g.res.0, "labels": g.labels, "h": gr.h, "q": gr.q, "k": gr.k });
        }
        JobKind::Skh => {
            let table = skh_dims(b, Variant::Unreduced);
            out.value = table
                .iter()
                .map(|((h, q, k), dim)| json!({ "h": h, "q": q, "k": k, "dim": dim }))
                .collect();
        }
        JobKind::Ss => {
            let dim = ss_page_dim(b, job.page, job.h, job.q, job.k);
            out.value = json!({ "page": job.page, "h": job.h, "q": job.q, "k": job.k, "dim": dim });
        }
        JobKind::WordProblem => {
            out.value = json!(match word_problem(b) {
                WordProblem::Trivial => "trivial",
                WordProblem::Nontrivial => "nontrivial",
            })
        }
        JobKind::Veering => {
            out.value = json!(match certify_right_veering(b) {
                Veering::RightVeering => "right-veering",
                Veering::Unknown => "unknown",
            })
        }
        JobKind::Destab => {
            out.value = json!(match negative_destab_obstruction(b) {
                Destabilization::Obstructed => "obstructed",
                Destabilization::Unknown => "unknown",
            })
        }
    }
    out
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1000.0)
}

/// Human-readable rendering.
pub fn human(job: &JobSpec, out: &Output) -> String {
    let text = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut s = match job.command {
        JobKind::Kappa => format!("kappa = {}", text(&out.value)),
        JobKind::KappaSub | JobKind::KappaQuot => {
            let p = job.basepoint.expect("reduced jobs carry a basepoint");
            let name = if job.command == JobKind::KappaSub {
                "kappa_sub"
            } else {
                "kappa_quot"
            };
            format!("{name}({},{}) = {}", p.position, p.gap, text(&out.value))
        }
        JobKind::Psi => {
            let v = &out.value;
            format!(
                "psi: res = {:#b}, labels = {:#b}, (h, q, k) = ({}, {}, {})",
                v["res"].as_u64().unwrap_or(0),
                v["labels"].as_u64().unwrap_or(0),
                v["h"],
                v["q"],
                v["k"]
            )
        }
        JobKind::Skh => {
            let mut lines = vec!["h\tq\tk\tdim".to_string()];
            for row in out.value.as_array().into_iter().flatten() {
                lines.push(format!("{}\t{}\t{}\t{}", row["h"], row["q"], row["k"], row["dim"]));
            }
            lines.join("\n")
        }
        JobKind::Ss => format!("E^{}({}, {}, {}) = {}", job.page, job.h, job.q, job.k, out.value["dim"]),
        JobKind::WordProblem | JobKind::Veering | JobKind::Destab => text(&out.value),
    };
    if let (Some(k), Some(size)) = (out.witness_k, out.witness_size) {
        if job.witness {
            s += &format!("\nwitness: {size} generators, k = {k}");
            for (res, labels) in out.witness.iter().flatten() {
                s += &format!("\n  res = {res:#b}, labels = {labels:#b}");
            }
        }
    }
    s
}
