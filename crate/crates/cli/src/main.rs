mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nakct::cluster::{
    self, check_full, check_partial, classify, glue_subcats, search_with, ModuleSet, SearchMode, SearchOptions,
};
use nakct::kupisch::{self, KupischSeries};
use nakct::modcat::{DNakayama, StableIndex};
use nakct::ordseq::OrdSeq;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nakct", version, about = "Cluster tilting for higher Nakayama algebras")]
struct Cli {
    /// Write JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a Kupisch series and report its shape.
    Validate {
        #[arg(long)]
        series: String,
    },
    /// Closed-form existence of an nd𝐙-cluster-tilting subcategory.
    Classify {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Check a subcategory read from a JSON file.
    Check {
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subcat: PathBuf,
        /// Only the partial conditions (a)–(e).
        #[arg(long)]
        partial: bool,
    },
    /// Brute-force search for nd𝐙-cluster-tilting subcategories.
    Search {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Accept candidates satisfying the partial conditions only.
        #[arg(long)]
        partial: bool,
    },
    /// dim Ext^{kd}(M(y), M(x)).
    Ext {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        y: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Minimal projective resolution of M(x).
    Resolve {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: String,
    },
    /// τ_{nd} or its inverse on M(x).
    Tau {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        inverse: bool,
    },
    /// Glue two acyclic series, and optionally two subcategories over them.
    Glue {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, requires = "cb")]
        ca: Option<PathBuf>,
        #[arg(long, requires = "ca")]
        cb: Option<PathBuf>,
    },
    /// Split a series into homogeneous pieces (self-degluing for cyclic series).
    Deglue {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Also cut runs of 2s compatibly with this n.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Auslander–Reiten quiver of the distinguished subcategory.
    Arquiver {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Subcategory JSON whose members are coloured in the DOT output.
        #[arg(long)]
        highlight: Option<PathBuf>,
    },
    /// Compare the module calculus against the exact algebra oracle.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_width: usize,
        #[arg(long, default_value_t = 4)]
        max_ell: u32,
        #[arg(long, default_value_t = 2)]
        max_d: usize,
        /// Largest k for Ext^{kd}.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A finished command: payload plus a yes/no answer.
struct Answer {
    body: Output,
    yes: bool,
}

enum Output {
    Json(Value),
    Text(String),
}

impl Answer {
    fn yes(v: Value) -> Self {
        Answer { body: Output::Json(v), yes: true }
    }

    fn with(v: Value, yes: bool) -> Self {
        Answer { body: Output::Json(v), yes }
    }
}

type Run = Result<Answer, String>;

fn series(s: &str) -> Result<KupischSeries, String> {
    s.parse().map_err(|e| format!("invalid series {s:?}: {e}"))
}

fn algebra(s: &str, d: usize) -> Result<DNakayama, String> {
    DNakayama::new(series(s)?, d).map_err(|e| e.to_string())
}

fn index(alg: &DNakayama, s: &str) -> Result<OrdSeq, String> {
    let coords = s
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("invalid index {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    alg.index(&OrdSeq::new(coords)).map_err(|e| e.to_string())
}

fn read_subcat(path: &PathBuf) -> Result<ModuleSet, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn positive(n: usize, what: &str) -> Result<(), String> {
    if n == 0 {
        return Err(format!("{what} must be at least 1"));
    }
    Ok(())
}

fn stable(s: &StableIndex) -> Value {
    match s {
        StableIndex::Zero => Value::Null,
        StableIndex::Module(x) => json!(x),
    }
}

fn search_options(partial: bool) -> Result<SearchOptions, String> {
    let mut opts = SearchOptions {
        mode: if partial { SearchMode::PartialOnly } else { SearchMode::Full },
        ..SearchOptions::default()
    };
    if let Ok(v) = std::env::var("NAKCT_CAP") {
        let cap: usize = v.parse().map_err(|_| format!("NAKCT_CAP={v:?} is not a number"))?;
        opts.module_cap = cap;
        opts.candidate_cap = cap;
    }
    Ok(opts)
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Validate { series: s } => {
            let (cyclic, body) = match s.trim().strip_prefix('~') {
                Some(rest) => (true, rest),
                None => (false, s.trim()),
            };
            let entries: Vec<u32> = body
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| format!("invalid entry {t:?}")))
                .collect::<Result<_, _>>()?;
            Ok(match kupisch::validate(&entries, cyclic) {
                Ok(k) => Answer::yes(json!({
                    "valid": true,
                    "canonical": k.to_string(),
                    "shape": kupisch::classify_shape(&k),
                })),
                Err(e) => Answer::with(json!({ "valid": false, "error": e.to_string() }), false),
            })
        }
        Command::Classify { series: s, d, n } => {
            positive(d, "d")?;
            positive(n, "n")?;
            let c = classify(&algebra(&s, d)?, n);
            let yes = c.exists == Some(true);
            Ok(Answer::with(serde_json::to_value(&c).unwrap(), yes))
        }
        Command::Check { series: s, d, n, subcat, partial } => {
            positive(n, "n")?;
            let c = read_subcat(&subcat)?;
            if let Some(s) = s {
                if series(&s)? != *c.series() {
                    return Err(format!("--series {s} does not match the subcategory file"));
                }
            }
            if d.is_some_and(|d| d != c.d()) {
                return Err("--d does not match the subcategory file".into());
            }
            let v = if partial { check_partial(&c, n) } else { check_full(&c, n) };
            let yes = v.accepted;
            Ok(Answer::with(serde_json::to_value(&v).unwrap(), yes))
        }
        Command::Search { series: s, d, n, partial } => {
            positive(d, "d")?;
            positive(n, "n")?;
            let alg = algebra(&s, d)?;
            let found = search_with(&alg, n, &search_options(partial)?).map_err(|e| e.to_string())?;
            let yes = !found.is_empty();
            Ok(Answer::with(json!({ "count": found.len(), "results": found }), yes))
        }
        Command::Ext { series: s, d, y, x, k } => {
            positive(d, "d")?;
            positive(k, "k")?;
            let alg = algebra(&s, d)?;
            let (y, x) = (index(&alg, &y)?, index(&alg, &x)?);
            let dim = alg.ext_kd_dim(&y, &x, k);
            Ok(Answer::yes(json!({ "degree": k * d, "y": y, "x": x, "dim": dim })))
        }
        Command::Resolve { series: s, d, x } => {
            positive(d, "d")?;
            let alg = algebra(&s, d)?;
            let x = index(&alg, &x)?;
            let (terms, last) = alg.proj_resolution(&x).map_err(|e| e.to_string())?;
            let tops: Vec<OrdSeq> = terms.iter().map(|p| alg.top_vertex(p)).collect();
            Ok(Answer::yes(json!({
                "module": x,
                "terms": terms,
                "tops": tops,
                "omega_d": stable(&last),
                "projective": alg.is_projective(&x),
            })))
        }
        Command::Tau { series: s, d, x, n, inverse } => {
            positive(d, "d")?;
            positive(n, "n")?;
            let alg = algebra(&s, d)?;
            let x = index(&alg, &x)?;
            let r = if inverse { alg.tau_nd_inv(&x, n) } else { alg.tau_nd(&x, n) };
            let yes = !r.is_zero();
            Ok(Answer::with(json!({ "module": x, "n": n, "inverse": inverse, "result": stable(&r) }), yes))
        }
        Command::Glue { a, b, ca, cb } => {
            let (a, b) = (series(&a)?, series(&b)?);
            let glued = kupisch::glue(&a, &b).map_err(|e| e.to_string())?;
            let mut out = json!({ "series": glued.to_string() });
            if let (Some(ca), Some(cb)) = (ca, cb) {
                let (ca, cb) = (read_subcat(&ca)?, read_subcat(&cb)?);
                if *ca.series() != a || *cb.series() != b {
                    return Err("subcategory files do not match --a/--b".into());
                }
                match glue_subcats(&ca, &cb) {
                    Ok(c) => out["subcategory"] = c.to_json(),
                    Err(e @ cluster::ClusterError::BridgeMissing(_)) => {
                        out["error"] = json!(e.to_string());
                        return Ok(Answer::with(out, false));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            Ok(Answer::yes(out))
        }
        Command::Deglue { series: s, d, n } => {
            positive(d, "d")?;
            let s = series(&s)?;
            if s.is_cyclic() {
                let points = kupisch::self_deglue_points(&s);
                let pieces: Vec<Value> = points
                    .iter()
                    .map(|&p| json!({ "point": p, "series": kupisch::self_deglue_at(&s, p).unwrap().to_string() }))
                    .collect();
                let yes = !pieces.is_empty();
                return Ok(Answer::with(json!({ "self_degluings": pieces }), yes));
            }
            match kupisch::deglue_all(&s, d, n) {
                Ok(deg) => Ok(Answer::yes(json!({
                    "pieces": deg.pieces.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "bridges": deg.bridges,
                }))),
                Err(e) => Ok(Answer::with(json!({ "error": e.to_string() }), false)),
            }
        }
        Command::Arquiver { series: s, d, format, highlight } => {
            positive(d, "d")?;
            let alg = algebra(&s, d)?;
            let q = alg.ar_quiver();
            let marked = match highlight {
                Some(p) => {
                    let c = read_subcat(&p)?;
                    if c.series() != alg.series() || c.d() != d {
                        return Err("highlight file does not match --series/--d".into());
                    }
                    c.modules().to_vec()
                }
                None => Vec::new(),
            };
            Ok(match format {
                Format::Json => {
                    let mut v = q.to_json();
                    v["highlight"] = json!(marked);
                    Answer::yes(v)
                }
                Format::Dot => Answer { body: Output::Text(q.to_dot(&marked)), yes: true },
            })
        }
        Command::Verify { max_width, max_ell, max_d, max_n } => {
            let report = verify::sweep(max_width, max_ell, max_d, max_n);
            let yes = report.mismatch_count == 0 && report.skipped.is_empty();
            Ok(Answer::with(serde_json::to_value(&report).unwrap(), yes))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let answer = match run(cli.command) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match answer.body {
        Output::Json(v) => serde_json::to_string_pretty(&v).unwrap() + "\n",
        Output::Text(t) => t,
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if answer.yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
