use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hdx_core::cochain::Cochain;
use hdx_core::complex::SimplicialComplex;
use hdx_core::correction::{correct_abelian, correct_nonabelian, Path as CorrectionPath};
use hdx_core::delta1::{
    check_delta1_theorem_abelian, classify_non_local, classify_weakly_non_local, delta1, delta_i,
};
use hdx_core::error::Error;
use hdx_core::generate;
use hdx_core::group::FiniteGroup;
use hdx_core::io;
use hdx_core::oracle::{coboundary_expansion_constant, cosystolic_expansion_constants, EnumerationBudget};
use hdx_core::rational::{self, Rational};
use hdx_core::spectral::local_spectral_lambda_lenient;
use hdx_core::verify::{self, Samples, Suite, Verdict, VerifyConfig};

#[derive(Parser)]
#[command(name = "hdx", version, about = "Exact experiments on expansion of simplicial complexes")]
struct Cli {
    /// Enumeration budget in states.
    #[arg(long, global = true, env = "HDX_BUDGET")]
    budget: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a complex file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Spectral and expansion report for a complex.
    Analyze {
        complex: PathBuf,
        #[arg(long, default_value = "Z2")]
        group: String,
    },
    /// δ₁ expansion and locality of a set of faces.
    Delta1 {
        complex: PathBuf,
        /// Cochain file; the set is its support.
        set: PathBuf,
        #[command(flatten)]
        params: Thresholds,
    },
    /// Run the correction algorithm on a cochain.
    Correct {
        complex: PathBuf,
        cochain: PathBuf,
        /// Override the group named in the cochain file.
        #[arg(long)]
        group: Option<String>,
        /// `abelian` or `nonabelian`; chosen from the group when absent.
        #[arg(long)]
        path: Option<String>,
    },
    /// Run verification suites, or replay a counterexample bundle.
    Verify {
        /// `all`, `none`, or a comma-separated list of suites.
        #[arg(default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay the bundle in this directory instead of running suites.
        #[arg(long)]
        bundle: Option<PathBuf>,
        /// Where counterexample bundles are written.
        #[arg(long, default_value = "hdx-bundles")]
        bundle_dir: PathBuf,
        /// A tenth of the default instance counts.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// All (d+1)-subsets of n vertices.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Read a complex file and write it in canonical form.
    File { path: PathBuf },
    /// Copies of a d-simplex sharing one facet.
    GluedSimplices {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        count: usize,
    },
    /// The 7-vertex torus.
    Torus,
}

#[derive(Args)]
struct Thresholds {
    #[arg(long, default_value = "1/10")]
    eta: String,
    #[arg(long, default_value = "1/10")]
    eps: String,
    /// Also classify the set as weakly non-local at this α.
    #[arg(long)]
    alpha: Option<String>,
    /// Accepted for symmetry with other commands; unused here.
    #[arg(long, hide = true)]
    beta: Option<String>,
}

/// Outcome of a command: its output and whether a claim was falsified.
struct Output {
    text: String,
    falsified: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.falsified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) if !matches!(cli.command, Command::Correct { .. }) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        _ => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn budget(cli: &Cli) -> EnumerationBudget {
    cli.budget.map(EnumerationBudget::new).unwrap_or_default()
}

fn render(cli: &Cli, value: &Value, text: impl FnOnce(&Value) -> String) -> String {
    match cli.format {
        Format::Json => serde_json::to_string_pretty(value).expect("json") + "\n",
        Format::Text => text(value),
    }
}

fn rat(s: &str, name: &str) -> Result<Rational> {
    let r = rational::parse(s).with_context(|| format!("--{name}"))?;
    if r <= Rational::from_integer(0.into()) || r >= Rational::from_integer(1.into()) {
        bail!("--{name} must lie strictly between 0 and 1, got {s}");
    }
    Ok(r)
}

fn load_complex(path: &Path) -> Result<Arc<SimplicialComplex>> {
    Ok(Arc::new(io::read_complex(path).with_context(|| format!("reading {}", path.display()))?))
}

fn load_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(io::resolve_group(spec, Some(Path::new(".")))?))
}

fn run(cli: &Cli) -> Result<Output> {
    let budget = budget(cli);
    let ok = |text: String| Output { text, falsified: false };
    match &cli.command {
        Command::Generate { kind } => {
            let x = match kind {
                GenerateKind::Complete { n, d } => generate::complete(*n, *d)?,
                GenerateKind::File { path } => io::read_complex(path)?,
                GenerateKind::GluedSimplices { d, count } => generate::glued_simplices(*d, *count)?,
                GenerateKind::Torus => generate::torus(),
            };
            Ok(ok(io::write_complex(&x)))
        }
        Command::Analyze { complex, group } => {
            let x = load_complex(complex)?;
            let g = load_group(group)?;
            let report = analyze(&x, &g, &budget)?;
            Ok(ok(render(cli, &report, analyze_text)))
        }
        Command::Delta1 { complex, set, params } => {
            let x = load_complex(complex)?;
            let f = io::read_cochain(set, &x, None)?;
            let report = delta1_report(&x, &f, params)?;
            Ok(ok(render(cli, &report, |v| serde_json::to_string_pretty(v).expect("json") + "\n")))
        }
        Command::Correct { complex, cochain, group, path } => {
            let x = load_complex(complex)?;
            let g = group.as_deref().map(load_group).transpose()?;
            let f = io::read_cochain(cochain, &x, g.as_ref())?;
            let path: CorrectionPath = match path {
                Some(p) => p.parse()?,
                None if f.group().is_abelian() => CorrectionPath::Abelian,
                None => CorrectionPath::NonAbelian,
            };
            let verdict = correct(cli, &f, path, &budget)?;
            let falsified = !verdict["bounds_hold"].as_bool().unwrap_or(false);
            Ok(Output { text: render(cli, &verdict, |v| serde_json::to_string_pretty(v).expect("json") + "\n"), falsified })
        }
        Command::Verify { suites, seed, bundle, bundle_dir, quick } => {
            if let Some(dir) = bundle {
                let (claim, outcome) = verify::replay(dir, &budget)?;
                let value = json!({ "claim": claim, "outcome": outcome });
                let text = render(cli, &value, |v| {
                    format!("{} {}: {}\n", verdict_label(outcome.verdict), v["claim"].as_str().unwrap_or_default(), outcome.detail)
                });
                return Ok(Output { text, falsified: outcome.verdict == Verdict::Fail });
            }
            let cfg = VerifyConfig {
                seed: *seed,
                budget,
                bundle_dir: Some(bundle_dir.clone()),
                samples: if *quick { Samples::quick() } else { Samples::default() },
            };
            let report = verify::run(&cfg, &Suite::parse_list(suites)?)?;
            let value = report.to_json();
            Ok(Output { text: render(cli, &value, verify::render_report), falsified: !report.passed })
        }
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Skip => "SKIP",
    }
}

/// A value, or a `skipped` record when the budget is exceeded.
fn or_skipped(r: hdx_core::error::Result<Value>) -> Result<Value> {
    match r {
        Ok(v) => Ok(v),
        Err(e @ Error::BudgetExceeded { .. }) => Ok(json!({ "skipped": e.to_string() })),
        Err(e) => Err(e.into()),
    }
}

fn analyze(x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, budget: &EnumerationBudget) -> Result<Value> {
    let d = x.dim();
    let (spectral, disconnected) = local_spectral_lambda_lenient(x)?;
    let links: Vec<Value> = spectral
        .per_link
        .iter()
        .map(|l| {
            json!({
                "face": l.face,
                "lambda": l.certificate.lambda,
                "lambda_upper": rational::format(&l.certificate.lambda_upper_rational()),
            })
        })
        .collect();
    let top = if g.is_abelian() { d } else { d.min(2) };
    let mut link_beta = Vec::new();
    for j in 0..=(d - 2) {
        for sigma in x.faces(j) {
            let link = x.link(sigma)?;
            let link_top = if g.is_abelian() { link.dim() } else { link.dim().min(2) };
            for k in 0..link_top {
                let v = or_skipped(
                    coboundary_expansion_constant(&link, g, k, budget).map(|c| json!(c.value.as_ref().map(rational::format))),
                )?;
                link_beta.push(json!({ "face": sigma.vertices(), "k": k, "beta": v }));
            }
        }
    }
    let mut coboundary = Vec::new();
    for k in 0..top {
        let v = or_skipped(coboundary_expansion_constant(x, g, k, budget).map(|c| json!(c.value.as_ref().map(rational::format))))?;
        coboundary.push(json!({ "k": k, "value": v }));
    }
    let cosystolic = or_skipped(cosystolic_expansion_constants(x, g, budget).map(|c| {
        json!({
            "eps": c.eps().as_ref().map(rational::format),
            "mu": c.mu().as_ref().map(rational::format),
            "per_dimension": c.cosystolic.iter().zip(&c.systole).map(|(e, m)| json!({
                "k": e.k,
                "eps": e.value.as_ref().map(rational::format),
                "mu": m.value.as_ref().map(rational::format),
                "systole_witness": m.witness,
            })).collect::<Vec<_>>(),
        })
    }))?;
    let faces: Vec<usize> = (0..=d).map(|k| x.num_faces(k)).collect();
    Ok(json!({
        "complex": { "dim": d, "faces": faces, "uniform_weights": x.is_uniform() },
        "degree_bound": x.degree_bound(),
        "group": { "spec": g.spec(), "order": g.order(), "abelian": g.is_abelian() },
        "spectral": {
            "lambda": spectral.global.lambda,
            "lambda_upper": rational::format(&spectral.global.lambda_upper_rational()),
            "worst_face": spectral.worst_face,
            "disconnected_links": disconnected,
            "links": links,
        },
        "link_beta": link_beta,
        "coboundary": coboundary,
        "cosystolic": cosystolic,
    }))
}

fn analyze_text(v: &Value) -> String {
    let show = |v: &Value| match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = String::new();
    out.push_str(&format!(
        "complex: dim {}, faces {}, degree bound {}\n",
        v["complex"]["dim"],
        v["complex"]["faces"],
        v["degree_bound"]
    ));
    out.push_str(&format!("group: {} of order {}\n", show(&v["group"]["spec"]), v["group"]["order"]));
    out.push_str(&format!(
        "lambda: {} (certified upper {}) at link of {}\n",
        v["spectral"]["lambda"],
        show(&v["spectral"]["lambda_upper"]),
        v["spectral"]["worst_face"]
    ));
    for l in v["spectral"]["links"].as_array().into_iter().flatten() {
        out.push_str(&format!("  link {}: lambda {}\n", l["face"], show(&l["lambda_upper"])));
    }
    for b in v["link_beta"].as_array().into_iter().flatten() {
        out.push_str(&format!("  link {} beta_{}: {}\n", b["face"], b["k"], show(&b["beta"])));
    }
    for c in v["coboundary"].as_array().into_iter().flatten() {
        out.push_str(&format!("coboundary expansion in dimension {}: {}\n", c["k"], show(&c["value"])));
    }
    let cs = &v["cosystolic"];
    if let Some(s) = cs.get("skipped") {
        out.push_str(&format!("cosystolic: skipped ({})\n", show(s)));
    } else {
        out.push_str(&format!("cosystolic: eps {}, mu {}\n", show(&cs["eps"]), show(&cs["mu"])));
    }
    out
}

fn delta1_report(x: &Arc<SimplicialComplex>, f: &Cochain, params: &Thresholds) -> Result<Value> {
    let eta = rat(&params.eta, "eta")?;
    let eps = rat(&params.eps, "eps")?;
    let a = f.support();
    let k = a.dim();
    let parts: Vec<String> =
        (0..=(k + 2) as usize).map(|i| delta_i(x, &a, i).map(|s| rational::format(&s.weight(x)))).collect::<Result<_, _>>()?;
    let verdict = classify_non_local(x, &a, &eta, &eps)?;
    let (spectral, _) = local_spectral_lambda_lenient(x)?;
    let lambda = spectral.global.lambda_upper_rational();
    let theorem = match check_delta1_theorem_abelian(x, &a, &lambda, &eta, &eps) {
        Ok(c) => serde_json::to_value(c)?,
        Err(Error::NotNonLocal) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let weak = match &params.alpha {
        Some(s) if k >= 1 => serde_json::to_value(classify_weakly_non_local(x, &a, &eta, &eps, &rat(s, "alpha")?)?)?,
        _ => Value::Null,
    };
    Ok(json!({
        "k": k,
        "size": a.len(),
        "weight": rational::format(&a.weight(x)),
        "delta1": rational::format(&delta1(x, &a)?.weight(x)),
        "delta_i": parts,
        "lambda_upper": rational::format(&lambda),
        "non_local": verdict,
        "theorem": theorem,
        "weakly_non_local": weak,
    }))
}

/// Runs the correction, writing `trace.jsonl`, `corrected.cochain` and
/// `verdict.json` into the output directory when one is given.
fn correct(cli: &Cli, f: &Cochain, path: CorrectionPath, budget: &EnumerationBudget) -> Result<Value> {
    let (corrected, trace) = match path {
        CorrectionPath::Abelian => correct_abelian(f, budget)?,
        CorrectionPath::NonAbelian => correct_nonabelian(f, budget)?,
    };
    let verdict = json!({
        "path": trace.path,
        "k": trace.k,
        "steps": trace.r(),
        "initial_delta_weight": rational::format(&trace.initial_delta_weight),
        "final_delta_weight": rational::format(&trace.final_delta_weight),
        "distance": rational::format(&trace.distance),
        "distance_bound": rational::format(&trace.distance_bound),
        "step_bound": rational::format(&trace.step_bound),
        "strictly_monotone": trace.strictly_monotone(),
        "step_bound_holds": trace.step_bound_holds(),
        "distance_bound_holds": trace.distance_bound_holds(),
        "bounds_hold": trace.all_bounds_hold(),
    });
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        let mut lines = String::new();
        for s in &trace.steps {
            lines.push_str(&serde_json::to_string(s)?);
            lines.push('\n');
        }
        fs::write(dir.join("trace.jsonl"), lines)?;
        fs::write(dir.join("corrected.cochain"), io::write_cochain(&corrected))?;
        fs::write(dir.join("verdict.json"), serde_json::to_string_pretty(&verdict)? + "\n")?;
    }
    Ok(verdict)
}
