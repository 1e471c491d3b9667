//! The `qlag` command line: argument parsing, the embedded run
//! configuration, output formats and exit codes.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::basis::{is_identity, one_vertex_basis, AlgebraConfig, Distinguisher};
use crate::algebra::euler::{euler_characteristic, OracleConfig, DEFAULT_PRIMES};
use crate::algebra::expr::{parse_word, parse_word_text, FunctionExpr};
use crate::components::{enumerate_components, export_crystal_graph, ComponentLabel, EnumerationConfig};
use crate::error::Error;
use crate::field::{is_prime, Rat};
use crate::quiver::{DimVector, Quiver, QuiverSpec};
use crate::rep::QRep;
use crate::sampler::{Certificate, Sampler, SamplerConfig};
use crate::verify::{run_suite, SuiteConfig};

pub const TOOL: &str = "qlag";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "QLAG_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_FILE: i32 = 66;

#[derive(Parser, Debug)]
#[command(name = "qlag", version, about = "Components, samples and constructible functions on seminilpotent quiver varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the irreducible components of Λ(α)
    Components(Common),
    /// Sample a certified point of one component
    Sample {
        #[command(flatten)]
        common: Common,
        /// `1,2` for a one-vertex tuple, or a JSON label
        #[arg(long)]
        label: String,
    },
    /// Run the verification suite over every component
    Verify {
        #[command(flatten)]
        common: Common,
        /// Resamples after an excess slice dimension
        #[arg(long, default_value_t = 8)]
        resamples: usize,
    },
    /// One-vertex basis {1_w} on a one-vertex quiver
    Basis(Common),
    /// Distinguished functions dual to the components
    Distinguish(Common),
    /// Euler characteristic of one fiber
    Euler {
        #[command(flatten)]
        common: Common,
        /// Word, top first: `0:1,1:1` or `1,1` on one vertex
        #[arg(long)]
        word: String,
        /// Representation JSON (arrow id to rows); otherwise sample `--label`
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        label: Option<String>,
    },
    /// Peeling graph of the components in DOT
    Graph(Common),
    /// Re-run the configuration embedded in an earlier output
    Rerun {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver JSON file
    #[arg(long)]
    pub quiver: PathBuf,
    /// Dimension vector, comma separated in vertex order
    #[arg(long)]
    pub alpha: String,
    /// Base seed (default from QLAG_SEED, else 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random integers lie in [-bound, bound]
    #[arg(long, default_value_t = 10)]
    pub bound: i64,
    #[arg(long, default_value_t = 64)]
    pub retries: usize,
    #[arg(long = "n-seeds", default_value_t = 3)]
    pub n_seeds: usize,
    /// Prime pool for point counts, e.g. `2,3,5,7,11`
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
    Dot,
}

/// Everything a run depends on; echoed into every output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub quiver_file: String,
    pub quiver: QuiverSpec,
    pub alpha: Vec<usize>,
    pub seed: u64,
    pub bound: i64,
    pub retries: usize,
    pub n_seeds: usize,
    pub primes: Vec<u64>,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resamples: Option<usize>,
}

/// Result of one invocation: exit code and the two streams.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("qlag: {msg}\n") }
    }
}

/// An error already mapped to its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, msg: e.to_string() }
    }

    fn file(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_FILE, msg: format!("{}: {e}", path.display()) }
    }

    /// Errors raised while computing.
    fn math(e: Error) -> Self {
        let code = match &e {
            Error::SamplingFailed { .. } | Error::NoConsensus { .. } | Error::DedupInconclusive { .. } | Error::PrimePoolExhausted { .. } => {
                EXIT_INCONCLUSIVE
            }
            Error::Usage(_) | Error::DegreeMismatch { .. } | Error::Precondition(_) => EXIT_USAGE,
            Error::Io { .. } => EXIT_FILE,
            _ => EXIT_FAIL,
        };
        Failure { code, msg: e.to_string() }
    }
}

/// Parse and run; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let (config, out) = match configure(cli.command) {
        Ok(c) => c,
        Err(f) => return Outcome::error(f.code, f.msg),
    };
    let mut outcome = match execute(&config) {
        Ok((code, text)) => Outcome { code, stdout: text, stderr: String::new() },
        Err(f) => return Outcome::error(f.code, f.msg),
    };
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &outcome.stdout) {
            return Outcome::error(EXIT_FILE, format!("{}: {e}", path.display()));
        }
        outcome.stdout.clear();
    }
    outcome
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::file(path, e))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_file(path)?).map_err(|e| Failure::file(path, e))
}

fn parse_primes(s: &str) -> Result<Vec<u64>, Failure> {
    let ps = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Failure::usage(format!("bad prime `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Failure::usage(format!("{p} is not prime")));
    }
    Ok(ps)
}

fn base_config(command: &str, c: &Common, default_format: Format) -> Result<(RunConfig, Quiver), Failure> {
    let text = read_file(&c.quiver)?;
    let spec: QuiverSpec = serde_json::from_str(&text).map_err(|e| Failure::file(&c.quiver, e))?;
    let q = Quiver::from_spec(&spec).map_err(|e| Failure::file(&c.quiver, e))?;
    let alpha = q.parse_alpha(&c.alpha).map_err(Failure::usage)?;
    let seed = match c.seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("{SEED_ENV}=`{v}` is not a seed")))?,
            Err(_) => 0,
        },
    };
    let primes = match &c.primes {
        Some(s) => parse_primes(s)?,
        None => DEFAULT_PRIMES.to_vec(),
    };
    let sampler = SamplerConfig { seed, bound: c.bound, retries: c.retries };
    sampler.validate().map_err(Failure::usage)?;
    if c.n_seeds == 0 {
        return Err(Failure::usage("--n-seeds must be at least 1"));
    }
    let config = RunConfig {
        command: command.into(),
        quiver_file: c.quiver.display().to_string(),
        quiver: spec,
        alpha: alpha.0,
        seed,
        bound: c.bound,
        retries: c.retries,
        n_seeds: c.n_seeds,
        primes,
        format: c.format.unwrap_or(default_format),
        label: None,
        word: None,
        rep: None,
        resamples: None,
    };
    Ok((config, q))
}

fn configure(cmd: Command) -> Result<(RunConfig, Option<PathBuf>), Failure> {
    Ok(match cmd {
        Command::Components(c) => (base_config("components", &c, Format::Json)?.0, c.out),
        Command::Graph(c) => (base_config("graph", &c, Format::Dot)?.0, c.out),
        Command::Basis(c) => (base_config("basis", &c, Format::Json)?.0, c.out),
        Command::Distinguish(c) => (base_config("distinguish", &c, Format::Json)?.0, c.out),
        Command::Verify { common, resamples } => {
            let (mut cfg, _) = base_config("verify", &common, Format::Json)?;
            cfg.resamples = Some(resamples);
            (cfg, common.out)
        }
        Command::Sample { common, label } => {
            let (mut cfg, q) = base_config("sample", &common, Format::Json)?;
            let l = ComponentLabel::parse(&q, &DimVector(cfg.alpha.clone()), &label).map_err(Failure::usage)?;
            cfg.label = Some(l.to_json(&q));
            (cfg, common.out)
        }
        Command::Euler { common, word, rep, label } => {
            let (mut cfg, q) = base_config("euler", &common, Format::Json)?;
            let alpha = DimVector(cfg.alpha.clone());
            let w = parse_word_text(&q, &word).map_err(Failure::usage)?;
            cfg.word = Some(FunctionExpr::word(q.vertex_count(), w).to_json(&q)[0]["word"].clone());
            match (rep, label) {
                (Some(path), _) => {
                    let v = read_json(&path)?;
                    QRep::from_json(Arc::new(q.clone()), alpha, &v).map_err(|e| Failure::file(&path, e))?;
                    cfg.rep = Some(v);
                }
                (None, Some(text)) => {
                    let l = ComponentLabel::parse(&q, &alpha, &text).map_err(Failure::usage)?;
                    cfg.label = Some(l.to_json(&q));
                }
                (None, None) => return Err(Failure::usage("euler needs --rep or --label")),
            }
            (cfg, common.out)
        }
        Command::Rerun { from, out } => (embedded_config(&from)?, out),
    })
}

/// The configuration echoed into an output file of any format.
pub fn embedded_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = read_file(path)?;
    let value: Value = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::file(path, e))?;
        v.get("config").cloned().ok_or_else(|| Failure::file(path, "no embedded config"))?
    } else {
        let first = text.lines().next().unwrap_or("");
        let at = first.find("config=").ok_or_else(|| Failure::file(path, "no embedded config"))?;
        serde_json::from_str(&first[at + "config=".len()..]).map_err(|e| Failure::file(path, e))?
    };
    serde_json::from_value(value).map_err(|e| Failure::file(path, e))
}

fn algebra_config(c: &RunConfig) -> AlgebraConfig {
    AlgebraConfig {
        enumeration: EnumerationConfig { sampler: SamplerConfig { seed: c.seed, bound: c.bound, retries: c.retries }, n_seeds: c.n_seeds },
        oracle: OracleConfig { primes: c.primes.clone() },
    }
}

fn named(q: &Quiver, v: &[usize]) -> Value {
    Value::Object(q.vertices().iter().zip(v).map(|(k, e)| (k.clone(), json!(e))).collect::<Map<_, _>>())
}

fn matrix_json(m: &[Vec<Rat>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_table(m: &[Vec<Rat>]) -> String {
    m.iter().map(|r| format!("  [{}]\n", r.iter().map(|v| format!("{v:>3}")).collect::<Vec<_>>().join(" "))).collect()
}

/// Run a configuration; returns the exit code and the rendered output.
pub fn execute(c: &RunConfig) -> Result<(i32, String), Failure> {
    let q = Arc::new(Quiver::from_spec(&c.quiver).map_err(Failure::usage)?);
    let alpha = DimVector(c.alpha.clone());
    if alpha.len() != q.vertex_count() {
        return Err(Failure::usage("α does not match the quiver"));
    }
    let acfg = algebra_config(c);
    let fmt = c.format;
    let only = |allowed: &[Format]| -> Result<(), Failure> {
        if allowed.contains(&fmt) {
            Ok(())
        } else {
            Err(Failure::usage(format!("format {fmt:?} is not available for `{}`", c.command)))
        }
    };
    let label_of = |c: &RunConfig| -> Result<ComponentLabel, Failure> {
        let v = c.label.as_ref().ok_or_else(|| Failure::usage("missing label"))?;
        let l = ComponentLabel::from_json(&q, v).map_err(Failure::usage)?;
        if l.alpha != alpha {
            return Err(Failure::usage("label dimension differs from α"));
        }
        Ok(l)
    };
    let (code, result, table): (i32, Value, String) = match c.command.as_str() {
        "components" => {
            only(&[Format::Json, Format::Table])?;
            let cat = enumerate_components(&q, &alpha, &acfg.enumeration).map_err(Failure::math)?;
            let mut t = format!("{} components of Λ{alpha}\n", cat.components.len());
            for comp in &cat.components {
                t.push_str(&format!("{}  dim={}  ε={:?}  {}\n", comp.label.short(), comp.dim, comp.eps, comp.consensus.as_str()));
            }
            let merged: Vec<Value> =
                cat.merged.iter().map(|m| json!({ "kept": m.kept.to_json(&q), "merged": m.merged.to_json(&q) })).collect();
            let v = json!({
                "alpha": named(&q, &c.alpha),
                "count": cat.components.len(),
                "components": cat.components.iter().map(|x| x.to_json(&q)).collect::<Vec<_>>(),
                "merged": merged,
            });
            (EXIT_OK, v, t)
        }
        "graph" => {
            only(&[Format::Dot, Format::Json])?;
            let cat = enumerate_components(&q, &alpha, &acfg.enumeration).map_err(Failure::math)?;
            let dot = export_crystal_graph(&q, &cat);
            (EXIT_OK, json!({ "dot": dot }), dot)
        }
        "sample" => {
            only(&[Format::Json, Format::Table])?;
            let label = label_of(c)?;
            let x = Sampler::new(&acfg.enumeration.sampler).component(&q, &label).map_err(Failure::math)?;
            let cert = Certificate::of(&x, c.seed);
            let cj = cert.to_json(q.vertices());
            let ok = cert.mu_zero && cert.seminilpotent;
            let t = format!("{}\ncertificate: {}\n", x.fmt_maps(), serde_json::to_string(&cj).unwrap());
            (if ok { EXIT_OK } else { EXIT_FAIL }, json!({ "label": label.to_json(&q), "rep": x.to_json(), "certificate": cj }), t)
        }
        "verify" => {
            only(&[Format::Json, Format::Table])?;
            let scfg = SuiteConfig { enumeration: acfg.enumeration.clone(), oracle: acfg.oracle.clone(), resamples: c.resamples.unwrap_or(8) };
            let rep = run_suite(&q, &alpha, &scfg).map_err(Failure::math)?;
            (rep.exit_code(), rep.to_json(), rep.to_table())
        }
        "basis" => {
            only(&[Format::Json, Format::Table])?;
            if q.vertex_count() != 1 {
                return Err(Failure::usage("basis needs a one-vertex quiver"));
            }
            let b = one_vertex_basis(&q, alpha[0], &acfg).map_err(Failure::math)?;
            let good = b.is_unitriangular() && is_identity(&b.verification);
            let mut v = b.to_json(&q);
            v["transition"] = matrix_json(&b.transition);
            v["verification"] = matrix_json(&b.verification);
            let mut t = String::new();
            for e in &b.entries {
                t.push_str(&format!("1_{:?} = {}\n", e.w, e.expr));
            }
            t.push_str(&format!("transition ρ_Z(1̃_w):\n{}", matrix_table(&b.transition)));
            t.push_str(&format!("unitriangular: {}  dual: {}\n", b.is_unitriangular(), is_identity(&b.verification)));
            (if good { EXIT_OK } else { EXIT_FAIL }, v, t)
        }
        "distinguish" => {
            only(&[Format::Json, Format::Table])?;
            let cat = enumerate_components(&q, &alpha, &acfg.enumeration).map_err(Failure::math)?;
            let mut d = Distinguisher::new(q.clone(), &cat, acfg.clone());
            let (labels, funcs, m) = d.all(&alpha).map_err(Failure::math)?;
            let id = is_identity(&m);
            let mut t = String::new();
            for (l, f) in labels.iter().zip(&funcs) {
                t.push_str(&format!("f[{}] = {}\n", l.short(), f));
            }
            t.push_str(&format!("ρ matrix:\n{}identity: {id}\n", matrix_table(&m)));
            let v = json!({
                "alpha": named(&q, &c.alpha),
                "functions": labels.iter().zip(&funcs).map(|(l, f)| json!({ "label": l.to_json(&q), "expr": f.to_json(&q) })).collect::<Vec<_>>(),
                "matrix": matrix_json(&m),
                "identity": id,
            });
            (if id { EXIT_OK } else { EXIT_FAIL }, v, t)
        }
        "euler" => {
            only(&[Format::Json, Format::Table])?;
            let word = parse_word(&q, c.word.as_ref().ok_or_else(|| Failure::usage("missing word"))?).map_err(Failure::usage)?;
            let x = match &c.rep {
                Some(v) => QRep::from_json(q.clone(), alpha.clone(), v).map_err(Failure::usage)?,
                None => Sampler::new(&acfg.enumeration.sampler).component(&q, &label_of(c)?).map_err(Failure::math)?,
            };
            let r = euler_characteristic(&x, &word, &acfg.oracle).map_err(Failure::math)?;
            let counts: Vec<Value> = r.counts.iter().map(|&(p, n)| json!([p, n])).collect();
            let t = format!("χ = {}\ndegree bound {}\ncounts {:?}\nskipped {:?}\n", r.chi, r.degree_bound, r.counts, r.skipped);
            let v = json!({ "chi": r.chi, "degree_bound": r.degree_bound, "counts": counts, "skipped": r.skipped, "point": x.to_json() });
            (EXIT_OK, v, t)
        }
        other => return Err(Failure::usage(format!("unknown command `{other}`"))),
    };
    let config = serde_json::to_value(c).unwrap();
    let header = format!("{TOOL} {VERSION} config={}", serde_json::to_string(&config).unwrap());
    let text = match fmt {
        Format::Json => {
            let doc = json!({ "tool": TOOL, "version": VERSION, "config": config, "result": result });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Table => format!("# {header}\n{table}"),
        Format::Dot => format!("// {header}\n{table}"),
    };
    Ok((code, text))
}
