//! Command-line front end: single jobs, batch files, JSON output and a result cache.

pub mod args;
pub mod cache;
pub mod job;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;
use serde_json::json;

use args::{BatchArgs, Cli, Command, JobArgs, JobKind, JobOptions};
use cache::Cache;
use job::{execute, human, parse_word, timed, JobError, JobSpec, Output};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OPTIONS: i32 = 3;

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Parse(_) => EXIT_PARSE,
            JobError::Options(_) => EXIT_OPTIONS,
        }
    }
}

/// Runs a job, consulting the cache when there is one. Cache trouble is
/// reported through `warnings` and never fails the job.
pub fn run_job(job: &JobSpec, cache: Option<&Cache>, warnings: &mut Vec<String>) -> Output {
    let key = job.key();
    let (mut out, ms) = timed(|| {
        let hit = cache.and_then(|c| c.lookup(&key));
        hit.unwrap_or_else(|| {
            let out = execute(job);
            if let Some(c) = cache {
                if let Err(e) = c.store(&key, &out) {
                    warnings.push(format!("warning: cache write to {} failed: {e}", c.dir().display()));
                }
            }
            out
        })
    });
    out.time_ms = Some(ms);
    out
}

/// Parses one batch line `n : w1 w2 ...`.
pub fn parse_batch_line(line: &str) -> Result<kappa_core::BraidWord, JobError> {
    let (n, word) = line
        .split_once(':')
        .ok_or_else(|| JobError::Parse(format!("expected `n : word`, got {line:?}")))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| JobError::Parse(format!("bad strand count {:?}", n.trim())))?;
    parse_word(Some(n), word)
}

fn single(kind: JobKind, a: JobArgs, cache: Option<&Cache>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let spec = parse_word(a.strands, &a.word).and_then(|b| JobSpec::new(b, kind, &a.options));
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "kappa: {e}");
            return e.exit_code();
        }
    };
    let mut warnings = Vec::new();
    let result = run_job(&spec, cache, &mut warnings);
    for w in warnings {
        let _ = writeln!(err, "{w}");
    }
    let text = if a.json {
        serde_json::to_string(&result).expect("output serializes")
    } else {
        human(&spec, &result)
    };
    let _ = writeln!(out, "{text}");
    EXIT_OK
}

fn batch(a: BatchArgs, cache: Option<&Cache>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(&a.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "kappa: cannot read {}: {e}", a.file.display());
            return EXIT_PARSE;
        }
    };
    if a.command.is_reduced() && a.options.basepoint.is_none() {
        let _ = writeln!(err, "kappa: {} needs --basepoint position,gap", a.command.name());
        return EXIT_OPTIONS;
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(String, Vec<String>)> = lines
        .par_iter()
        .map(|&(number, line)| batch_line(number, line, a.command, &a.options, cache))
        .collect();
    for (json, warnings) in results {
        for w in warnings {
            let _ = writeln!(err, "{w}");
        }
        let _ = writeln!(out, "{json}");
    }
    EXIT_OK
}

fn batch_line(
    number: usize,
    line: &str,
    kind: JobKind,
    options: &JobOptions,
    cache: Option<&Cache>,
) -> (String, Vec<String>) {
    let mut warnings = Vec::new();
    let spec = parse_batch_line(line).and_then(|b| JobSpec::new(b, kind, options));
    let json = match spec {
        Ok(spec) => serde_json::to_string(&run_job(&spec, cache, &mut warnings)).expect("output serializes"),
        Err(e) => json!({ "line": number, "input": line, "error": e.to_string() }).to_string(),
    };
    (json, warnings)
}

/// Runs the program on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_OPTIONS
                }
            };
        }
    };
    let cache = cli.cache_dir.map(Cache::new);
    let cache = cache.as_ref();
    match cli.command {
        Command::Kappa(a) => single(JobKind::Kappa, a, cache, out, err),
        Command::KappaSub(a) => single(JobKind::KappaSub, a, cache, out, err),
        Command::KappaQuot(a) => single(JobKind::KappaQuot, a, cache, out, err),
        Command::Psi(a) => single(JobKind::Psi, a, cache, out, err),
        Command::Skh(a) => single(JobKind::Skh, a, cache, out, err),
        Command::Ss(a) => single(JobKind::Ss, a, cache, out, err),
        Command::WordProblem(a) => single(JobKind::WordProblem, a, cache, out, err),
        Command::Veering(a) => single(JobKind::Veering, a, cache, out, err),
        Command::Destab(a) => single(JobKind::Destab, a, cache, out, err),
        Command::Batch(a) => batch(a, cache, out, err),
    }
}
