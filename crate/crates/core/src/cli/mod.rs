//! The `girthlab` command-line tool.
//!
//! Exit codes: 0 on success, 1 on a semantic failure (failed certificate,
//! violated precondition, strict audit violation), 2 on usage or parse errors.

mod tsv;

use std::io::{Read, Write};
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::constants::{
    ab, alpha, beta_table, bound_table_with_tol, c, certify_theorem1, certify_theorem2_with,
    ConstantsError, DEFAULT_GRID, DEFAULT_ROOT_TOL,
};
use crate::cycles::{find_short_cycle_constructive, girth, shortest_cycle};
use crate::fas::{beta_best, check_fact1, check_lemma2, sullivan_ratio, Fact1Verdict, FasError};
use crate::graph::{self, parse_edge_list, Digraph, GenSpec, GraphError};
use crate::report::{
    FasPayload, FileDigest, FindCyclePayload, GirthPayload, Inputs, Payload, Report, StatsPayload,
};
use crate::stats::{
    audit_lemma1, audit_lemma3, audit_lemma45, audit_lemma6, audit_tauineq1, audit_tauineq2,
    compute_edge_stats, AuditError, Verdict,
};

fn parse_m(s: &str) -> Result<usize, String> {
    let m: usize = s
        .trim()
        .parse()
        .map_err(|_| format!("not a count: {s:?}"))?;
    if m < 3 {
        return Err("m must be ≥ 3".to_string());
    }
    Ok(m)
}

/// `N` or `A..B` (inclusive).
fn parse_m_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse_m(lo)?, parse_m(hi.trim_start_matches('='))?),
        None => {
            let m = parse_m(s)?;
            (m, m)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err("value must lie in (0, 1)".to_string())
    }
}

fn parse_density(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err("density must lie in [0, 1]".to_string())
    }
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let g: usize = s.parse().map_err(|_| format!("not a count: {s:?}"))?;
    if g < 2 {
        return Err("grid needs at least 2 points".to_string());
    }
    Ok(g)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err("tolerance must be positive".to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "girthlab",
    version,
    about = "Short directed cycles under minimum outdegree bounds"
)]
pub struct Cli {
    /// Emit a versioned JSON report instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit 1 when an audit or bound check reports a violation.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "GIRTHLAB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of alpha(m), c_m, beta(m), a, b, tau* and comparison bounds.
    Constants {
        #[arg(long, value_parser = parse_m_range, default_value = "3..8")]
        m: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_tol, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
    },
    /// Numerical certificate for Theorem 1 or Theorem 2.
    Certify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long, value_parser = parse_m)]
        m: usize,
        /// Theorem 2 only; defaults to the tabulated beta(m).
        #[arg(long, value_parser = parse_unit)]
        alpha: Option<f64>,
        #[arg(long, value_parser = parse_grid, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Girth and a shortest cycle.
    Girth { file: String },
    /// Constructive search for a cycle of length at most m.
    FindCycle {
        file: String,
        #[arg(long, value_parser = parse_m)]
        m: usize,
        /// Defaults to alpha(m).
        #[arg(long, value_parser = parse_unit)]
        alpha: Option<f64>,
    },
    /// Edge and vertex counting statistics.
    Stats {
        file: String,
        /// Include per-edge and per-vertex records.
        #[arg(long)]
        detail: bool,
    },
    /// Evaluate one counting inequality on every edge or vertex.
    Audit {
        #[arg(value_enum)]
        id: AuditId,
        file: String,
        #[arg(long, value_parser = parse_m)]
        m: usize,
        /// Defaults to alpha(m).
        #[arg(long, value_parser = parse_unit)]
        alpha: Option<f64>,
        /// Defaults to b computed from alpha.
        #[arg(long)]
        b: Option<f64>,
        /// Defaults to c_m.
        #[arg(long)]
        c: Option<f64>,
    },
    /// Feedback arc set; with --m also the missing-edge bounds.
    Fas {
        file: String,
        #[arg(long, value_parser = parse_m)]
        m: Option<usize>,
    },
    /// Write a generated digraph in the edge-list format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditId {
    Lemma1,
    Lemma3,
    Lemma45,
    Lemma6,
    Tauineq1,
    Tauineq2,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        offsets: Vec<usize>,
    },
    Outregular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    Mfree {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_m)]
        m: usize,
        #[arg(long, value_parser = parse_density)]
        density: f64,
        #[command(flatten)]
        seed: SeedArg,
    },
    Tournament {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: GraphError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Semantic(_) => 1,
            _ => 2,
        }
    }
}

impl From<ConstantsError> for CliError {
    fn from(e: ConstantsError) -> Self {
        match e {
            ConstantsError::OutOfRange { .. } | ConstantsError::InvalidAlpha(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Semantic(e.to_string()),
        }
    }
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<FasError> for CliError {
    fn from(e: FasError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

/// What a command produced and whether it counts as success.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub ok: bool,
}

struct Loaded {
    graph: Digraph,
    digest: FileDigest,
}

fn load(path: &str, stdin: &[u8]) -> Result<Loaded, CliError> {
    let bytes = if path == "-" {
        stdin.to_vec()
    } else {
        std::fs::read(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?
    };
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Parse {
        path: path.to_string(),
        source: GraphError::Parse {
            line: 0,
            message: "input is not UTF-8".to_string(),
        },
    })?;
    let graph = parse_edge_list(&text).map_err(|source| CliError::Parse {
        path: path.to_string(),
        source,
    })?;
    Ok(Loaded {
        graph,
        digest: FileDigest::of(path, &bytes),
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Constants { .. } => "constants",
        Command::Certify { .. } => "certify",
        Command::Girth { .. } => "girth",
        Command::FindCycle { .. } => "find-cycle",
        Command::Stats { .. } => "stats",
        Command::Audit { .. } => "audit",
        Command::Fas { .. } => "fas",
        Command::Gen { .. } => "gen",
    }
}

fn gen_spec(kind: &GenKind) -> GenSpec {
    match kind {
        GenKind::Circulant { n, offsets } => GenSpec::Circulant {
            n: *n,
            offsets: offsets.clone(),
        },
        GenKind::Outregular { n, r, seed } => GenSpec::OutregularRandom {
            n: *n,
            r: *r,
            seed: seed.seed,
        },
        GenKind::Mfree {
            n,
            m,
            density,
            seed,
        } => GenSpec::MfreeRandom {
            n: *n,
            m: *m,
            density: *density,
            seed: seed.seed,
        },
        GenKind::Tournament { n } => GenSpec::TransitiveTournament { n: *n },
    }
}

/// Runs every command except `gen`.
fn execute(cli: &Cli, stdin: &[u8]) -> Result<Outcome, CliError> {
    let name = command_name(&cli.command);
    let inputs = Inputs::default();
    let (inputs, payload, ok) = match &cli.command {
        Command::Constants { m, tol } => {
            let rows = bound_table_with_tol(*m.start(), *m.end(), *tol)?;
            let inputs = inputs
                .param("m_from", m.start())
                .param("m_to", m.end())
                .param("tol", tol);
            (inputs, Payload::Constants(rows), true)
        }
        Command::Certify {
            theorem,
            m,
            alpha: alpha_arg,
            grid,
        } => {
            let cert = if *theorem == 1 {
                if alpha_arg.is_some() {
                    return Err(CliError::Usage(
                        "--alpha applies to --theorem 2 only".into(),
                    ));
                }
                certify_theorem1(*m)?
            } else {
                let a = match alpha_arg.or_else(|| beta_table(*m)) {
                    Some(a) => a,
                    None => {
                        return Err(CliError::Usage(format!(
                            "theorem 2 has tabulated values for 3 <= m <= 8 only; pass --alpha for m = {m}"
                        )))
                    }
                };
                certify_theorem2_with(*m, a, *grid).map_err(|e| match e {
                    ConstantsError::GridTooCoarse { .. } => {
                        CliError::Semantic(format!("{e}; increase --grid"))
                    }
                    other => other.into(),
                })?
            };
            let ok = cert.is_certified();
            let inputs = inputs
                .param("theorem", theorem)
                .param("m", m)
                .param("alpha", cert.alpha)
                .param("grid", grid);
            (inputs, Payload::Certificate(cert), ok)
        }
        Command::Girth { file } => {
            let l = load(file, stdin)?;
            let witness = shortest_cycle(&l.graph);
            let payload = Payload::Girth(GirthPayload {
                girth: witness.as_ref().map(|w| w.len()),
                witness,
            });
            (inputs.file(l.digest), payload, true)
        }
        Command::FindCycle {
            file,
            m,
            alpha: alpha_arg,
        } => {
            let l = load(file, stdin)?;
            let a = alpha_arg.unwrap_or_else(|| alpha(*m));
            let result = find_short_cycle_constructive(&l.graph, *m, a)
                .map_err(|e| CliError::Semantic(e.to_string()))?;
            result
                .witness
                .validate(&l.graph)
                .map_err(|e| CliError::Semantic(format!("witness failed validation: {e}")))?;
            let bfs_girth = girth(&l.graph);
            let ok =
                result.witness.len() <= *m && bfs_girth.is_some_and(|g| g <= result.witness.len());
            let inputs = inputs.param("m", m).param("alpha", a).file(l.digest);
            (
                inputs,
                Payload::FindCycle(FindCyclePayload { result, bfs_girth }),
                ok,
            )
        }
        Command::Stats { file, detail } => {
            let l = load(file, stdin)?;
            let (stats, global) = compute_edge_stats(&l.graph);
            let payload = Payload::Stats(StatsPayload {
                global,
                detail: detail.then_some(stats),
            });
            (inputs.param("detail", detail).file(l.digest), payload, true)
        }
        Command::Audit {
            id,
            file,
            m,
            alpha: alpha_arg,
            b,
            c: c_arg,
        } => {
            let l = load(file, stdin)?;
            let d = &l.graph;
            let a = alpha_arg.unwrap_or_else(|| alpha(*m));
            let b = b.unwrap_or_else(|| ab(*m, a).1);
            let cm = c_arg.unwrap_or_else(|| c(*m));
            let payload = match id {
                AuditId::Lemma1 => Payload::Audit(audit_lemma1(d, a, *m)?),
                AuditId::Lemma3 => Payload::Audit(audit_lemma3(d, a, *m)?),
                AuditId::Lemma45 => Payload::AuditPair(audit_lemma45(d, *m, b)?),
                AuditId::Lemma6 => Payload::Audit(audit_lemma6(d, a, *m, cm)?),
                AuditId::Tauineq1 => Payload::Audit(audit_tauineq1(d, a, *m)?),
                AuditId::Tauineq2 => Payload::Audit(audit_tauineq2(d, a, *m, b, cm)?),
            };
            let violated = match &payload {
                Payload::Audit(r) => r.verdict != Verdict::AllHold,
                Payload::AuditPair(p) => {
                    p.lemma4.verdict != Verdict::AllHold || p.lemma5.verdict != Verdict::AllHold
                }
                _ => unreachable!(),
            };
            let inputs = inputs
                .param("id", format!("{id:?}").to_lowercase())
                .param("m", m)
                .param("alpha", a)
                .param("b", b)
                .param("c", cm)
                .file(l.digest);
            (inputs, payload, !(cli.strict && violated))
        }
        Command::Fas { file, m } => {
            let l = load(file, stdin)?;
            let d = &l.graph;
            let fas = beta_best(d);
            let (fact1, lemma2, sullivan) = match m {
                Some(m) => (
                    Some(check_fact1(d, *m)?),
                    Some(check_lemma2(d, *m)?),
                    sullivan_ratio(d, *m).ok(),
                ),
                None => (None, None, None),
            };
            let violated = fact1
                .as_ref()
                .is_some_and(|f| f.verdict == Fact1Verdict::Violated)
                || lemma2.as_ref().is_some_and(|l| !l.holds);
            let payload = Payload::Fas(FasPayload {
                fas,
                fact1,
                lemma2,
                sullivan,
            });
            (
                inputs.param("m", m).file(l.digest),
                payload,
                !(cli.strict && violated),
            )
        }
        Command::Gen { .. } => unreachable!("handled by run"),
    };
    let report = Report::new(name, inputs, payload);
    let text = tsv::render(&report.payload);
    Ok(Outcome { report, text, ok })
}

fn run_gen(cli: &Cli, kind: &GenKind) -> Result<String, CliError> {
    let spec = gen_spec(kind);
    let d = spec.build().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(if cli.json {
        graph::to_json(&d) + "\n"
    } else {
        graph::to_edge_list(&d)
    })
}

fn file_arg(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Girth { file }
        | Command::FindCycle { file, .. }
        | Command::Stats { file, .. }
        | Command::Audit { file, .. }
        | Command::Fas { file, .. } => Some(file),
        _ => None,
    }
}

/// Output text and success flag.
fn dispatch(cli: &Cli, stdin: &[u8]) -> Result<(String, bool), CliError> {
    Ok(if let Command::Gen { kind } = &cli.command {
        (run_gen(cli, kind)?, true)
    } else {
        let outcome = execute(cli, stdin)?;
        let text = if cli.json {
            outcome.report.to_json() + "\n"
        } else {
            outcome.text
        };
        (text, outcome.ok)
    })
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let mut input = Vec::new();
    if file_arg(&cli.command) == Some("-") {
        if let Err(e) = stdin.read_to_end(&mut input) {
            let _ = writeln!(err, "error: <stdin>: {e}");
            return 2;
        }
    }
    let result = match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &input)),
            Err(e) => Err(CliError::Usage(e.to_string())),
        },
        None => dispatch(&cli, &input),
    };
    let result = result.and_then(|(text, ok)| {
        out.write_all(text.as_bytes())
            .map(|_| ok)
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
