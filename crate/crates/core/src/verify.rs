//! Verification suites.
//!
//! A claim is a function of an [`Instance`]: a complex, named cochains and
//! string parameters. Suites draw instances from a ChaCha8 stream per suite,
//! seeded by the run seed, and evaluate them in parallel with results kept
//! in generation order. Failing instances are written as bundles that
//! [`replay`] re-checks. Reports carry no timings, so a seed determines its
//! report byte for byte.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::seq::{index, IndexedRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::Cochain;
use crate::complex::{Face, FaceSet, SimplicialComplex, Vertex};
use crate::correction::{
    coboundary_constant_by_search, correct_abelian, correct_nonabelian, cosystolic_certificate, is_locally_minimal,
    is_locally_minimal_coboundary, link_coboundary_expansion, max_edge_localization, minimize, step_move_bound, LinkCache,
    Path as CorrectionPath,
};
use crate::delta1::{
    check_claim_bound, check_delta1_decomposition, check_delta1_theorem_abelian, check_delta1_theorem_nonabelian,
    check_empty_set_balanced, check_fat_face_contribution, check_negligible_degenerate, check_small_degenerate,
    check_vanishing_abelian, classify_non_local, classify_weakly_non_local, delta1, delta_i, f_down_sigma,
    theorem_thin_faces, upsilon_set, BoundCheck, HierarchyPath, ThinHierarchy, UpsilonVariant,
};
use crate::error::{Error, Result};
use crate::generate;
use crate::group::{FiniteGroup, GroupElement};
use crate::io::{self, Bundle};
use crate::oracle::{
    coboundary_expansion_constant, cosystolic_expansion_constants, enumerate_spaces, exact_coboundary, exact_distance,
    exact_is_cocycle, exact_is_minimal, exact_locally_minimal, EnumerationBudget, Space,
};
use crate::rational::{self, int, pow_int, ratio, Rational};
use crate::spectral::{local_spectral_lambda_lenient, second_eigenvalue, WeightedGraph};

/// Largest link graph whose vertex subsets are enumerated exhaustively.
pub const CHEEGER_VERTEX_LIMIT: usize = 14;

/// Failing instances written per claim.
const MAX_BUNDLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Delta1,
    Hierarchy,
    Correction,
    Cosystolic,
    NonAbelian,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Delta1, Suite::Hierarchy, Suite::Correction, Suite::Cosystolic, Suite::NonAbelian];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Delta1 => "delta1",
            Suite::Hierarchy => "hierarchy",
            Suite::Correction => "correction",
            Suite::Cosystolic => "cosystolic",
            Suite::NonAbelian => "nonabelian",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }

    /// `all`, `none`, or a comma-separated list of suite names. An empty
    /// string selects nothing.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        match s.trim() {
            "all" => Ok(Suite::ALL.to_vec()),
            "" | "none" => Ok(Vec::new()),
            s => s.split(',').map(|p| p.trim().parse()).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }
}

/// Instance counts per claim family.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Samples {
    /// Random cochains for `δδ = 0`, per group family.
    pub algebra: usize,
    pub decomposition: usize,
    /// Random sets for the δ₁ and non-abelian set claims.
    pub sets: usize,
    /// Random `(f, η)` pairs per hierarchy lemma.
    pub hierarchy: usize,
    /// Planted correction instances, split between the two paths.
    pub correction: usize,
    /// Random instances per fast-path versus oracle claim.
    pub oracle: usize,
    pub conjugation: usize,
}

impl Default for Samples {
    fn default() -> Self {
        Samples { algebra: 1000, decomposition: 500, sets: 200, hierarchy: 500, correction: 200, oracle: 100, conjugation: 500 }
    }
}

impl Samples {
    /// A tenth of the default counts, for quick runs.
    pub fn quick() -> Self {
        Samples { algebra: 100, decomposition: 50, sets: 20, hierarchy: 50, correction: 20, oracle: 10, conjugation: 50 }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: EnumerationBudget,
    /// Where failing instances are written; `None` disables bundles.
    pub bundle_dir: Option<PathBuf>,
    pub samples: Samples,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, budget: EnumerationBudget::default(), bundle_dir: None, samples: Samples::default() }
    }
}

/// A complex, named cochains and string parameters. Sets are stored as
/// cochains whose support is the set.
#[derive(Clone, Debug)]
pub struct Instance {
    pub complex: Arc<SimplicialComplex>,
    pub cochains: Vec<(String, Cochain)>,
    pub params: BTreeMap<String, String>,
}

impl Instance {
    pub fn new(complex: &Arc<SimplicialComplex>) -> Self {
        Instance { complex: complex.clone(), cochains: Vec::new(), params: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, f: Cochain) -> Self {
        self.cochains.push((name.to_string(), f));
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn rat_param(self, key: &str, value: &Rational) -> Self {
        self.param(key, rational::format(value))
    }

    pub fn rat_list(self, key: &str, values: &[Rational]) -> Self {
        let text = values.iter().map(rational::format).join(",");
        self.param(key, text)
    }

    pub fn cochain(&self, name: &str) -> Result<&Cochain> {
        self.cochains
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::BadParams(format!("instance has no cochain `{name}`")))
    }

    pub fn text(&self, key: &str) -> Result<&str> {
        self.params.get(key).map(String::as_str).ok_or_else(|| Error::BadParams(format!("missing parameter `{key}`")))
    }

    pub fn rat(&self, key: &str) -> Result<Rational> {
        rational::parse(self.text(key)?)
    }

    pub fn rats(&self, key: &str) -> Result<Vec<Rational>> {
        self.text(key)?.split(',').map(|s| rational::parse(s.trim())).collect()
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        let t = self.text(key)?;
        t.parse().map_err(|_| Error::BadParams(format!("parameter `{key}` is not an integer: {t}")))
    }

    pub fn group(&self) -> Result<Arc<FiniteGroup>> {
        Ok(Arc::new(FiniteGroup::parse(self.text("group")?)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Premises did not hold or the instance exceeded the budget.
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { verdict: Verdict::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { verdict: Verdict::Fail, detail: detail.into() }
}

fn skip(detail: impl Into<String>) -> Outcome {
    Outcome { verdict: Verdict::Skip, detail: detail.into() }
}

fn describe(c: &BoundCheck) -> String {
    let params = c.params.iter().map(|(k, v)| format!("{k}={v}")).join(" ");
    format!("{}: {} {} {} [{params}]", c.claim, rational::format(&c.lhs), c.relation, rational::format(&c.rhs))
}

fn from_checks(checks: &[BoundCheck]) -> Outcome {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => fail(describe(c)),
        None => pass(format!("{} inequalities hold", checks.len())),
    }
}

fn fmt(x: &Rational) -> String {
    rational::format(x)
}

/// Result of one claim over all its instances.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub suite: String,
    pub claim: String,
    pub instances: usize,
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
    pub passed: bool,
    /// First skip reason.
    pub note: Option<String>,
    /// First failure detail.
    pub failure: Option<String>,
    pub bundles: Vec<String>,
}

impl ClaimResult {
    pub fn status(&self) -> &'static str {
        if self.failed > 0 {
            "FAIL"
        } else if self.checked == 0 {
            "SKIP"
        } else {
            "PASS"
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub budget: u64,
    pub suites: Vec<String>,
    pub claims: Vec<ClaimResult>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Human-readable form, rendered from the JSON report.
    pub fn render_text(&self) -> String {
        render_report(&self.to_json())
    }
}

/// Renders a JSON report as text.
pub fn render_report(v: &serde_json::Value) -> String {
    let s = |v: &serde_json::Value| v.as_str().unwrap_or_default().to_string();
    let n = |v: &serde_json::Value| v.as_u64().unwrap_or_default();
    let mut out = String::new();
    let _ = writeln!(out, "hdx verify report");
    let _ = writeln!(out, "seed: {}", n(&v["seed"]));
    let _ = writeln!(out, "budget: {}", n(&v["budget"]));
    let suites: Vec<String> = v["suites"].as_array().map(|a| a.iter().map(s).collect()).unwrap_or_default();
    let _ = writeln!(out, "suites: {}", suites.join(" "));
    let claims = v["claims"].as_array().cloned().unwrap_or_default();
    let mut falsified = 0;
    for c in &claims {
        let status = if n(&c["failed"]) > 0 {
            falsified += 1;
            "FAIL"
        } else if n(&c["checked"]) == 0 {
            "SKIP"
        } else {
            "PASS"
        };
        let _ = write!(
            out,
            "{status} {}/{}: {} checked, {} failed, {} skipped of {}",
            s(&c["suite"]),
            s(&c["claim"]),
            n(&c["checked"]),
            n(&c["failed"]),
            n(&c["skipped"]),
            n(&c["instances"])
        );
        if let Some(note) = c["note"].as_str() {
            let _ = write!(out, " (skip: {note})");
        }
        out.push('\n');
        if let Some(f) = c["failure"].as_str() {
            let _ = writeln!(out, "  first failure: {f}");
        }
        for b in c["bundles"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "  bundle: {}", s(b));
        }
    }
    let passed = v["passed"].as_bool().unwrap_or(false);
    let _ = writeln!(
        out,
        "result: {} ({} claims, {falsified} falsified)",
        if passed { "PASS" } else { "FAIL" },
        claims.len()
    );
    out
}

type ClaimFn = fn(&Instance, &EnumerationBudget) -> Result<Outcome>;

/// Every registered claim, by name.
pub const CLAIMS: &[&str] = &[
    "coboundary-squares-to-zero",
    "coboundary-matches-oracle",
    "delta-partition",
    "delta1-below-coboundary",
    "locality-decomposition",
    "cheeger",
    "delta1-theorem",
    "star-example",
    "vanishing-abelian",
    "claim-bound",
    "empty-set-balanced",
    "negligible-degenerate",
    "small-degenerate",
    "hierarchy-membership",
    "f-down-oracle",
    "upsilon-oracle",
    "fat-face-contribution",
    "correction-contract",
    "minimality-oracle",
    "cocycle-oracle",
    "local-minimality-oracle",
    "expansion-constant-oracle",
    "systole-oracle",
    "trivial-cohomology",
    "certificate-soundness",
    "conjugation-invariance",
    "weakly-non-local-definition",
    "delta1-decomposition",
    "delta1-theorem-nonabelian",
    "localization-vs-restriction",
];

fn claim_fn(name: &str) -> Option<ClaimFn> {
    Some(match name {
        "coboundary-squares-to-zero" => squares_to_zero,
        "coboundary-matches-oracle" => coboundary_matches_oracle,
        "delta-partition" => delta_partition,
        "delta1-below-coboundary" => delta1_below_coboundary,
        "locality-decomposition" => locality_decomposition,
        "cheeger" => cheeger,
        "delta1-theorem" => delta1_theorem,
        "star-example" => star_example,
        "vanishing-abelian" => vanishing_abelian,
        "claim-bound" => claim_bound,
        "empty-set-balanced" => empty_set_balanced,
        "negligible-degenerate" => negligible_degenerate,
        "small-degenerate" => small_degenerate,
        "hierarchy-membership" => hierarchy_membership,
        "f-down-oracle" => f_down_oracle,
        "upsilon-oracle" => upsilon_oracle,
        "fat-face-contribution" => fat_face_contribution,
        "correction-contract" => correction_contract,
        "minimality-oracle" => minimality_oracle,
        "cocycle-oracle" => cocycle_oracle,
        "local-minimality-oracle" => local_minimality_oracle,
        "expansion-constant-oracle" => expansion_constant_oracle,
        "systole-oracle" => systole_oracle,
        "trivial-cohomology" => trivial_cohomology,
        "certificate-soundness" => certificate_soundness,
        "conjugation-invariance" => conjugation_invariance,
        "weakly-non-local-definition" => weakly_non_local_definition,
        "delta1-decomposition" => delta1_decomposition,
        "delta1-theorem-nonabelian" => delta1_theorem_nonabelian,
        "localization-vs-restriction" => localization_vs_restriction,
        _ => return None,
    })
}

/// Evaluates one claim on one instance. Budget, premise and parameter
/// errors are skips; any other error is a failure.
pub fn evaluate(claim: &str, inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let check = claim_fn(claim).ok_or_else(|| Error::UnknownVariant(claim.to_string()))?;
    Ok(match check(inst, budget) {
        Ok(o) => o,
        Err(e @ (Error::BudgetExceeded { .. } | Error::ParameterViolation(_) | Error::PremiseFailed(_))) => skip(e.to_string()),
        Err(e) => fail(format!("error: {e}")),
    })
}

/// Runs `claim` on every instance and writes bundles for failures.
pub fn run_claim(suite: &str, claim: &str, instances: &[Instance], cfg: &VerifyConfig) -> Result<ClaimResult> {
    claim_fn(claim).ok_or_else(|| Error::UnknownVariant(claim.to_string()))?;
    let outcomes: Vec<Outcome> =
        instances.par_iter().map(|inst| evaluate(claim, inst, &cfg.budget)).collect::<Result<_>>()?;
    let mut result = ClaimResult {
        suite: suite.to_string(),
        claim: claim.to_string(),
        instances: instances.len(),
        checked: 0,
        failed: 0,
        skipped: 0,
        passed: true,
        note: None,
        failure: None,
        bundles: Vec::new(),
    };
    for (i, (inst, o)) in instances.iter().zip(&outcomes).enumerate() {
        match o.verdict {
            Verdict::Pass => result.checked += 1,
            Verdict::Skip => {
                result.skipped += 1;
                result.note.get_or_insert_with(|| o.detail.clone());
            }
            Verdict::Fail => {
                result.checked += 1;
                result.failed += 1;
                result.failure.get_or_insert_with(|| format!("instance {i}: {}", o.detail));
                if let Some(dir) = &cfg.bundle_dir {
                    if result.bundles.len() < MAX_BUNDLES {
                        let path = dir.join(suite).join(format!("{claim}-{i}"));
                        write_instance(&path, suite, claim, inst, o)?;
                        result.bundles.push(path.display().to_string());
                    }
                }
            }
        }
    }
    result.passed = result.failed == 0;
    Ok(result)
}

fn write_instance(dir: &Path, suite: &str, claim: &str, inst: &Instance, o: &Outcome) -> Result<()> {
    let bundle = Bundle {
        complex: inst.complex.clone(),
        cochains: inst.cochains.clone(),
        claim: serde_json::json!({
            "suite": suite,
            "claim": claim,
            "params": inst.params,
            "detail": o.detail,
        }),
    };
    io::write_bundle(dir, &bundle)?;
    Ok(())
}

/// Re-checks the claim recorded in a bundle directory.
pub fn replay(dir: &Path, budget: &EnumerationBudget) -> Result<(String, Outcome)> {
    let bundle = io::read_bundle(dir)?;
    let claim = bundle
        .claim
        .get("claim")
        .and_then(|c| c.as_str())
        .ok_or_else(|| Error::Parse("claim.json has no `claim` field".into()))?
        .to_string();
    let params = bundle
        .claim
        .get("params")
        .and_then(|p| p.as_object())
        .map(|o| o.iter().map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string())).collect())
        .unwrap_or_default();
    let inst = Instance { complex: bundle.complex, cochains: bundle.cochains, params };
    let outcome = evaluate(&claim, &inst, budget)?;
    Ok((claim, outcome))
}

/// Runs the given suites.
pub fn run(cfg: &VerifyConfig, suites: &[Suite]) -> Result<Report> {
    let zoo = Zoo::new()?;
    let mut claims = Vec::new();
    for &suite in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite.stream());
        let plan = match suite {
            Suite::Delta1 => delta1_plan(&zoo, cfg, &mut rng)?,
            Suite::Hierarchy => hierarchy_plan(&zoo, cfg, &mut rng)?,
            Suite::Correction => correction_plan(&zoo, cfg, &mut rng)?,
            Suite::Cosystolic => cosystolic_plan(&zoo)?,
            Suite::NonAbelian => nonabelian_plan(&zoo, cfg, &mut rng)?,
        };
        for (claim, instances) in plan {
            claims.push(run_claim(suite.name(), claim, &instances, cfg)?);
        }
    }
    let passed = claims.iter().all(|c| c.passed);
    Ok(Report {
        seed: cfg.seed,
        budget: cfg.budget.max_states,
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        claims,
        passed,
    })
}

// ---------------------------------------------------------------------------
// Instance sources

/// A named complex with its certified `λ⁺`.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub complex: Arc<SimplicialComplex>,
    pub lambda: Rational,
}

/// The bundled instance set.
#[derive(Clone, Debug)]
pub struct Zoo {
    pub entries: Vec<ZooEntry>,
}

const WEIGHTED_SPHERE: &str = "dim 2\n0 1 2 w 1\n0 1 3 w 2\n0 2 3 w 3\n1 2 3 w 4\n";
const BOWTIE: &str = "dim 2\n0 1 2\n0 3 4\n";

impl Zoo {
    pub fn new() -> Result<Self> {
        let mut list: Vec<(&'static str, SimplicialComplex)> = vec![
            ("complete-4-2", generate::complete(4, 2)?),
            ("complete-5-2", generate::complete(5, 2)?),
            ("complete-6-2", generate::complete(6, 2)?),
            ("complete-7-2", generate::complete(7, 2)?),
            ("complete-8-2", generate::complete(8, 2)?),
            ("complete-5-3", generate::complete(5, 3)?),
            ("complete-6-3", generate::complete(6, 3)?),
            ("complete-7-3", generate::complete(7, 3)?),
            ("complete-8-3", generate::complete(8, 3)?),
            ("simplex-2", generate::simplex(2)?),
            ("simplex-3", generate::simplex(3)?),
            ("glued-2-3", generate::glued_simplices(2, 3)?),
            ("glued-3-2", generate::glued_simplices(3, 2)?),
            ("torus", generate::torus()),
        ];
        list.push(("weighted-sphere", io::parse_complex(WEIGHTED_SPHERE)?));
        list.push(("bowtie", io::parse_complex(BOWTIE)?));
        let entries = list
            .into_par_iter()
            .map(|(name, x)| {
                let lambda = local_spectral_lambda_lenient(&x)?.0.global.lambda_upper_rational();
                Ok(ZooEntry { name, complex: Arc::new(x), lambda })
            })
            .collect::<Result<_>>()?;
        Ok(Zoo { entries })
    }

    pub fn get(&self, name: &str) -> &ZooEntry {
        self.entries.iter().find(|e| e.name == name).expect("zoo member")
    }

    fn pick<R: Rng>(&self, rng: &mut R, names: &[&str]) -> ZooEntry {
        self.get(names.choose(rng).expect("non-empty list")).clone()
    }
}

const ABELIAN: [&str; 4] = ["Z2", "Z3", "Z6", "Z2xZ2"];
const NON_ABELIAN: [&str; 2] = ["S3", "D4"];
const ALGEBRA_COMPLEXES: [&str; 13] = [
    "complete-4-2",
    "complete-6-2",
    "complete-8-2",
    "complete-5-3",
    "complete-6-3",
    "complete-7-3",
    "complete-8-3",
    "simplex-3",
    "glued-2-3",
    "glued-3-2",
    "torus",
    "weighted-sphere",
    "bowtie",
];
const HIERARCHY_COMPLEXES: [&str; 7] =
    ["complete-6-2", "complete-7-2", "complete-8-2", "complete-6-3", "complete-7-3", "torus", "weighted-sphere"];
const ETAS: [(i64, i64); 7] = [(1, 3), (1, 2), (2, 3), (3, 4), (4, 5), (9, 10), (19, 20)];

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::parse(spec).expect("built-in group"))
}

fn pick_group<R: Rng>(rng: &mut R, specs: &[&str]) -> Arc<FiniteGroup> {
    group(specs.choose(rng).expect("non-empty list"))
}

/// A dimension drawn uniformly from `lo..=hi`.
fn dim_in<R: Rng>(rng: &mut R, lo: isize, hi: isize) -> isize {
    rng.random_range(lo as i64..=hi as i64) as isize
}

fn pick_eta<R: Rng>(rng: &mut R) -> Rational {
    let &(p, q) = ETAS.choose(rng).expect("non-empty list");
    ratio(p, q)
}

/// A random cochain: uniform, or sparse at a random density.
fn random_cochain<R: Rng>(rng: &mut R, x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize) -> Result<Cochain> {
    if rng.random_bool(0.3) {
        Cochain::uniform(x, g, k, rng)
    } else {
        let density = *[0.05, 0.15, 0.3, 0.6].choose(rng).expect("non-empty list");
        Cochain::random(x, g, k, density, rng)
    }
}

/// A cochain with exactly `m` random non-identity entries.
fn sparse_cochain<R: Rng>(rng: &mut R, x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize, m: usize) -> Result<Cochain> {
    let mut f = Cochain::zero(x, g, k)?;
    let n = x.num_faces(k);
    for i in index::sample(rng, n, m.min(n)) {
        f.set(i, GroupElement::from_index(rng.random_range(1..g.order())));
    }
    Ok(f)
}

/// A random set of `k`-faces: sparse or at a random density.
fn random_set<R: Rng>(rng: &mut R, x: &Arc<SimplicialComplex>, k: isize) -> Result<Cochain> {
    let z2 = group("Z2");
    if rng.random_bool(0.5) {
        let m = rng.random_range(1..=3);
        sparse_cochain(rng, x, &z2, k, m)
    } else {
        random_cochain(rng, x, &z2, k)
    }
}

/// The indicator of a set as a `Z2`-cochain.
fn indicator(x: &Arc<SimplicialComplex>, set: &FaceSet) -> Result<Cochain> {
    let mut f = Cochain::zero(x, &group("Z2"), set.dim())?;
    for &i in set.members() {
        f.set(i, GroupElement::from_index(1));
    }
    Ok(f)
}

fn face_text(face: &Face) -> String {
    face.vertices().iter().join(" ")
}

fn parse_face(text: &str) -> Result<Face> {
    let verts = text
        .split_whitespace()
        .map(|t| t.parse::<Vertex>().map_err(|_| Error::Parse(format!("bad vertex `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Face::new(verts))
}

type Plan = Vec<(&'static str, Vec<Instance>)>;

fn delta1_plan(zoo: &Zoo, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Plan> {
    let s = cfg.samples;
    let mut plan: Plan = Vec::new();

    let mut algebra = Vec::new();
    for _ in 0..s.algebra {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let g = pick_group(rng, &ABELIAN);
        let k = dim_in(rng, 0, e.complex.dim() - 2);
        algebra.push(Instance::new(&e.complex).with("f", random_cochain(rng, &e.complex, &g, k)?));
    }
    for _ in 0..s.algebra {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let g = pick_group(rng, &NON_ABELIAN);
        algebra.push(Instance::new(&e.complex).with("f", Cochain::uniform(&e.complex, &g, 0, rng)?));
    }
    plan.push(("coboundary-squares-to-zero", algebra));

    let mut matches = Vec::new();
    for _ in 0..s.sets {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let abelian = rng.random_bool(0.6);
        let g = pick_group(rng, if abelian { &ABELIAN[..] } else { &NON_ABELIAN[..] });
        let top = if abelian { e.complex.dim() - 1 } else { 1 };
        let k = dim_in(rng, 0, top);
        matches.push(Instance::new(&e.complex).with("f", random_cochain(rng, &e.complex, &g, k)?));
    }
    plan.push(("coboundary-matches-oracle", matches.clone()));
    plan.push(("delta1-below-coboundary", matches));

    let mut sets = Vec::new();
    for _ in 0..s.sets {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let k = dim_in(rng, 0, e.complex.dim() - 1);
        sets.push(Instance::new(&e.complex).with("a", random_set(rng, &e.complex, k)?));
    }
    plan.push(("delta-partition", sets));

    let mut locality = Vec::new();
    let all_groups: Vec<&str> = ABELIAN.iter().chain(NON_ABELIAN.iter()).copied().collect();
    for _ in 0..s.decomposition {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let g = pick_group(rng, &all_groups);
        let k = dim_in(rng, 0, e.complex.dim());
        locality.push(Instance::new(&e.complex).with("f", random_cochain(rng, &e.complex, &g, k)?));
    }
    plan.push(("locality-decomposition", locality));

    plan.push(("cheeger", cheeger_instances(zoo)));

    let mut theorem = Vec::new();
    for _ in 0..s.sets {
        let n = rng.random_range(6..=8);
        let k = dim_in(rng, 1, 2);
        let e = zoo.get(&format!("complete-{n}-{}", k + 1)).clone();
        let m = rng.random_range(1..=3);
        let a = sparse_cochain(rng, &e.complex, &group("Z2"), k, m)?;
        theorem.push(delta1_theorem_instance(&e, a));
    }
    plan.push(("delta1-theorem", theorem));

    plan.push(("star-example", star_instances(zoo)));

    let e = zoo.get("complete-7-2");
    plan.push((
        "vanishing-abelian",
        vec![Instance::new(&e.complex)
            .param("group", "Z2")
            .param("k", 1)
            .rat_param("lambda", &e.lambda)
            .rat_param("eta", &ratio(1, 100))
            .rat_param("eps", &ratio(1, 200))],
    ));
    Ok(plan)
}

/// Every link graph of every zoo complex, one instance per face.
pub fn cheeger_instances(zoo: &Zoo) -> Vec<Instance> {
    let mut out = Vec::new();
    for e in &zoo.entries {
        let x = &e.complex;
        for k in -1..=x.dim() - 2 {
            for face in x.faces(k) {
                out.push(Instance::new(x).param("face", face_text(face)).param("complex", e.name));
            }
        }
    }
    out
}

/// Star instances on complete 2-complexes, with `η` at the link threshold.
pub fn star_instances(zoo: &Zoo) -> Vec<Instance> {
    (4..=8)
        .flat_map(|n| {
            let e = zoo.get(&format!("complete-{n}-2"));
            [0, n as Vertex - 1].map(|v| Instance::new(&e.complex).param("vertex", v).rat_param("eta", &ratio(1, n as i64 - 1)))
        })
        .collect()
}

fn delta1_theorem_instance(e: &ZooEntry, a: Cochain) -> Instance {
    let n = e.complex.num_faces(0) as i64;
    let k = a.dim() as i64;
    // Thresholds at which a few faces of a small set are thin.
    let etas = [ratio(1, n - k), ratio(2, n - k), ratio(1, 2)];
    let epss = [ratio(1, 100), ratio(1, 10), ratio(1, 3)];
    Instance::new(&e.complex).with("a", a).rat_param("lambda", &e.lambda).rat_list("eta", &etas).rat_list("eps", &epss)
}

/// Every set of at most `max_size` `k`-faces of the complete complex on
/// `n` vertices of dimension `k+1`.
pub fn delta1_sweep_instances(zoo: &Zoo, n: usize, k: isize, max_size: usize) -> Result<Vec<Instance>> {
    let e = zoo.get(&format!("complete-{n}-{}", k + 1)).clone();
    let x = &e.complex;
    let z2 = group("Z2");
    let faces = x.num_faces(k);
    let mut out = Vec::new();
    for size in 1..=max_size {
        for combo in (0..faces).combinations(size) {
            let mut a = Cochain::zero(x, &z2, k)?;
            for i in combo {
                a.set(i, GroupElement::from_index(1));
            }
            out.push(delta1_theorem_instance(&e, a));
        }
    }
    Ok(out)
}

fn hierarchy_plan(zoo: &Zoo, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Plan> {
    let s = cfg.samples.hierarchy;
    let mut plan: Plan = Vec::new();
    let z = ["Z2", "Z3"];

    let mut claim = Vec::new();
    for _ in 0..s {
        let e = zoo.pick(rng, &HIERARCHY_COMPLEXES);
        let g = pick_group(rng, &z);
        let k = dim_in(rng, 0, e.complex.dim() - 1);
        let f = random_cochain(rng, &e.complex, &g, k)?;
        claim.push(Instance::new(&e.complex).with("f", f).rat_param("eta", &pick_eta(rng)));
    }
    plan.push(("claim-bound", claim));

    // Draws are repeated until the lemma's premise holds, so every instance
    // exercises the bound.
    let mut empty = Vec::new();
    while empty.len() < s {
        let e = zoo.pick(rng, &HIERARCHY_COMPLEXES);
        let g = pick_group(rng, &z);
        let k = dim_in(rng, 0, e.complex.dim() - 1);
        let m = rng.random_range(0..=2);
        let f = sparse_cochain(rng, &e.complex, &g, k, m)?;
        let eta = ratio(*[3, 4, 9, 19].choose(rng).expect("list"), 1);
        let eta = &eta / (&eta + int(1));
        if f.weight() <= pow_int(&eta, (1i64 << (k + 1)) - 1) {
            empty.push(Instance::new(&e.complex).with("f", f).rat_param("eta", &eta));
        }
    }
    plan.push(("empty-set-balanced", empty));

    let mut negligible = Vec::new();
    while negligible.len() < s {
        let e = zoo.pick(rng, &HIERARCHY_COMPLEXES);
        let d = e.complex.dim();
        // Thresholds meeting the spectral premise λ⁺ ≤ η^(2^(d-1)).
        let admissible: Vec<Rational> = ETAS
            .iter()
            .map(|&(p, q)| ratio(p, q))
            .filter(|eta| pow_int(eta, 1i64 << (d - 1)) >= e.lambda)
            .collect();
        let Some(eta) = admissible.choose(rng).cloned() else { continue };
        let g = pick_group(rng, &z);
        let k = dim_in(rng, 0, d - 1);
        let f = random_cochain(rng, &e.complex, &g, k)?;
        negligible.push(Instance::new(&e.complex).with("f", f).rat_param("eta", &eta).rat_param("lambda", &e.lambda));
    }
    plan.push(("negligible-degenerate", negligible));

    let mut small = Vec::new();
    for _ in 0..s {
        let e = zoo.pick(rng, &HIERARCHY_COMPLEXES);
        let k = dim_in(rng, 1, e.complex.dim());
        let a = random_set(rng, &e.complex, k)?;
        small.push(Instance::new(&e.complex).with("a", a).rat_param("eta", &pick_eta(rng)).rat_param("lambda", &e.lambda));
    }
    plan.push(("small-degenerate", small));

    let oracle_count = (s / 5).max(1);
    let mut membership = Vec::new();
    let mut upsilon = Vec::new();
    for _ in 0..oracle_count {
        let e = zoo.pick(rng, &HIERARCHY_COMPLEXES);
        let k = dim_in(rng, 1, e.complex.dim() - 1);
        let f = random_set(rng, &e.complex, k)?;
        membership.push(Instance::new(&e.complex).with("f", f.clone()).rat_param("eta", &pick_eta(rng)));
        upsilon.push(Instance::new(&e.complex).with("a", f).rat_param("eta", &pick_eta(rng)));
    }
    plan.push(("hierarchy-membership", membership.clone()));
    plan.push(("f-down-oracle", membership));
    plan.push(("upsilon-oracle", upsilon));

    plan.push(("fat-face-contribution", fat_face_instances(zoo, &cfg.budget)?));
    Ok(plan)
}

/// Every cocycle of the torus over `Z2`, at a few thresholds.
fn fat_face_instances(zoo: &Zoo, budget: &EnumerationBudget) -> Result<Vec<Instance>> {
    let e = zoo.get("torus");
    let g = group("Z2");
    let spaces = enumerate_spaces(&e.complex, &g, 1, budget)?;
    let etas = [ratio(1, 2), ratio(3, 4), ratio(9, 10)];
    spaces
        .cocycles
        .into_iter()
        .map(|z| {
            let f = Cochain::from_values(&e.complex, &g, 1, z)?;
            Ok(Instance::new(&e.complex).with("f", f).rat_list("eta", &etas))
        })
        .collect()
}

/// A cocycle plus random noise on `m` faces through one vertex.
fn planted<R: Rng>(rng: &mut R, x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize) -> Result<Cochain> {
    let lift = Cochain::uniform(x, g, k - 1, rng)?;
    let mut f = lift.delta()?;
    let v = *x.vertices().choose(rng).expect("vertices");
    let through: Vec<usize> = (0..x.num_faces(k)).filter(|&i| x.face(k, i).contains_vertex(v)).collect();
    let m = rng.random_range(1..=3.min(through.len()));
    for i in index::sample(rng, through.len(), m) {
        let t = through[i];
        let noise = GroupElement::from_index(rng.random_range(1..g.order()));
        f.set(t, g.op(noise, f.value(t)));
    }
    Ok(f)
}

fn correction_plan(zoo: &Zoo, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Plan> {
    let s = cfg.samples;
    let mut plan: Plan = Vec::new();

    let mut contracts = Vec::new();
    for _ in 0..s.correction / 2 {
        let e = zoo.pick(rng, &["complete-6-2", "complete-7-2", "complete-6-3", "complete-7-3", "torus"]);
        let g = pick_group(rng, &["Z2", "Z3"]);
        let k = dim_in(rng, 1, e.complex.dim() - 1);
        let f = planted(rng, &e.complex, &g, k)?;
        contracts.push(Instance::new(&e.complex).with("f", f).param("path", "abelian"));
    }
    for _ in 0..s.correction - s.correction / 2 {
        let e = zoo.pick(rng, &["glued-3-2", "complete-5-3", "complete-6-3"]);
        let g = pick_group(rng, &NON_ABELIAN);
        let f = planted(rng, &e.complex, &g, 1)?;
        contracts.push(Instance::new(&e.complex).with("f", f).param("path", "nonabelian"));
    }
    plan.push(("correction-contract", contracts));

    let small = ["complete-4-2", "complete-5-2", "torus", "glued-3-2", "simplex-3", "glued-2-3"];
    let all_groups = ["Z2", "Z3", "S3", "D4"];
    let mut minimality = Vec::new();
    let mut cocycle = Vec::new();
    let mut local = Vec::new();
    while minimality.len() < s.oracle || cocycle.len() < s.oracle || local.len() < s.oracle {
        let e = zoo.pick(rng, &small);
        let x = &e.complex;
        let g = pick_group(rng, &all_groups);
        let top = if g.is_abelian() { x.dim() } else { 1 };
        let k = dim_in(rng, 0, top);
        let below = if k == 0 { 1 } else { x.num_faces(k - 1) };
        let fits = |count: usize, cap: u32| (g.order() as f64).powi(count as i32) <= f64::from(cap).exp2();
        let f = random_cochain(rng, x, &g, k)?;
        if minimality.len() < s.oracle && fits(below, 17) {
            minimality.push(Instance::new(x).with("f", f.clone()));
        }
        if cocycle.len() < s.oracle && fits(x.num_faces(k), 20) {
            cocycle.push(Instance::new(x).with("f", f.clone()));
        }
        let local_ok = if g.is_abelian() { k >= 1 && k < x.dim() } else { k == 1 && x.dim() >= 2 };
        if local.len() < s.oracle && local_ok {
            local.push(Instance::new(x).with("f", f));
        }
    }
    plan.push(("minimality-oracle", minimality));
    plan.push(("cocycle-oracle", cocycle));
    plan.push(("local-minimality-oracle", local));
    plan.push(("expansion-constant-oracle", expansion_constant_instances(zoo)));
    Ok(plan)
}

/// Small complexes, groups and dimensions for the expansion constant check.
pub fn expansion_constant_instances(zoo: &Zoo) -> Vec<Instance> {
    let cases: &[(&str, &str, &[isize])] = &[
        ("complete-4-2", "Z2", &[0, 1]),
        ("complete-4-2", "Z3", &[0, 1]),
        ("complete-4-2", "S3", &[0, 1]),
        ("complete-5-2", "Z2", &[0, 1]),
        ("complete-5-2", "Z3", &[0]),
        ("simplex-2", "Z2", &[0, 1]),
        ("simplex-3", "Z2", &[0, 1, 2]),
        ("simplex-3", "Z3", &[0, 1, 2]),
        ("glued-2-3", "Z2", &[0, 1]),
        ("glued-3-2", "Z2", &[0, 1, 2]),
        ("glued-3-2", "S3", &[0]),
        ("weighted-sphere", "Z2", &[0, 1]),
        ("bowtie", "Z2", &[0, 1]),
        ("torus", "Z2", &[0]),
    ];
    cases
        .iter()
        .flat_map(|&(name, g, ks)| {
            let x = zoo.get(name).complex.clone();
            ks.iter().map(move |&k| Instance::new(&x).param("group", g).param("k", k))
        })
        .collect()
}

fn cosystolic_plan(zoo: &Zoo) -> Result<Plan> {
    let mut plan: Plan = Vec::new();
    plan.push((
        "systole-oracle",
        vec![
            Instance::new(&zoo.get("torus").complex).param("group", "Z2").param("k", 1),
            Instance::new(&zoo.get("complete-4-2").complex).param("group", "Z2").param("k", 1),
            Instance::new(&zoo.get("glued-2-3").complex).param("group", "Z3").param("k", 1),
        ],
    ));
    let mut trivial = Vec::new();
    for name in ["simplex-2", "simplex-3"] {
        for g in ["Z2", "Z3", "Z2xZ2", "S3"] {
            trivial.push(Instance::new(&zoo.get(name).complex).param("group", g));
        }
    }
    plan.push(("trivial-cohomology", trivial));
    let certs: [(&str, &str, &str); 6] = [
        ("complete-5-2", "Z2", "abelian"),
        ("complete-6-3", "Z2", "abelian"),
        ("torus", "Z2", "abelian"),
        ("bowtie", "Z2", "abelian"),
        ("glued-3-2", "S3", "nonabelian"),
        ("complete-5-3", "S3", "nonabelian"),
    ];
    plan.push((
        "certificate-soundness",
        certs
            .iter()
            .map(|&(name, g, path)| {
                Instance::new(&zoo.get(name).complex).param("group", g).param("path", path).rat_param("beta", &ratio(1, 2))
            })
            .collect(),
    ));
    Ok(plan)
}

fn nonabelian_plan(zoo: &Zoo, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Plan> {
    let s = cfg.samples;
    let mut plan: Plan = Vec::new();

    let mut conj = Vec::new();
    for _ in 0..s.conjugation {
        let e = zoo.pick(rng, &ALGEBRA_COMPLEXES);
        let g = pick_group(rng, &NON_ABELIAN);
        let h = Cochain::uniform(&e.complex, &g, 0, rng)?;
        let f = random_cochain(rng, &e.complex, &g, 1)?;
        conj.push(Instance::new(&e.complex).with("h", h).with("g", f));
    }
    plan.push(("conjugation-invariance", conj));

    let three = ["complete-5-3", "complete-6-3", "complete-7-3", "glued-3-2"];
    let mut weak = Vec::new();
    let mut decomposition = Vec::new();
    for _ in 0..s.sets {
        let e = zoo.pick(rng, &three);
        let k = dim_in(rng, 1, 2);
        let a = random_set(rng, &e.complex, k)?;
        let alpha = [ratio(1, 10), ratio(1, 6), ratio(1, 4), ratio(1, 2)].choose(rng).expect("list").clone();
        weak.push(
            Instance::new(&e.complex)
                .with("a", a.clone())
                .rat_param("eta", &pick_eta(rng))
                .rat_param("eps", &[ratio(1, 100), ratio(1, 10), ratio(1, 2)].choose(rng).expect("list").clone())
                .rat_param("alpha", &alpha),
        );
        decomposition.push(
            Instance::new(&e.complex)
                .with("a", a)
                .rat_param("eta", &pick_eta(rng))
                .rat_param("alpha", &alpha)
                .rat_param("lambda", &e.lambda),
        );
    }
    plan.push(("weakly-non-local-definition", weak));
    plan.push(("delta1-decomposition", decomposition.clone()));

    // The theorem's own parameter regime: α = 1/|G|, ε = α/(3d³), η = ε³.
    let theorem = decomposition
        .iter()
        .take(20)
        .map(|inst| {
            let alpha = ratio(1, 6);
            let eps = &alpha / int(81);
            let eta = pow_int(&eps, 3);
            Instance { params: BTreeMap::new(), ..inst.clone() }
                .rat_param("lambda", &inst.rat("lambda").expect("set above"))
                .rat_param("alpha", &alpha)
                .rat_param("eps", &eps)
                .rat_param("eta", &eta)
        })
        .collect();
    plan.push(("delta1-theorem-nonabelian", theorem));

    let mut localization = Vec::new();
    for _ in 0..(s.correction / 10).max(2) {
        let e = zoo.pick(rng, &["glued-3-2", "complete-5-3"]);
        let g = pick_group(rng, &NON_ABELIAN);
        localization.push(Instance::new(&e.complex).with("f", planted(rng, &e.complex, &g, 1)?));
    }
    plan.push(("localization-vs-restriction", localization));
    Ok(plan)
}

// ---------------------------------------------------------------------------
// Claims

fn squares_to_zero(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let f = inst.cochain("f")?;
    let dd = f.delta()?.delta()?;
    Ok(if dd.is_zero() {
        pass(format!("{}-cochain over {}", f.dim(), f.group().spec()))
    } else {
        fail(format!("|δδf| = {} for a {}-cochain over {}", fmt(&dd.weight()), f.dim(), f.group().spec()))
    })
}

fn coboundary_matches_oracle(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let f = inst.cochain("f")?;
    let fast = f.delta()?;
    let exact = exact_coboundary(f)?;
    if fast != exact {
        let differ = fast.values().iter().zip(exact.values()).filter(|(a, b)| a != b).count();
        return Ok(fail(format!("fast and recomputed coboundaries differ on {differ} faces")));
    }
    if f.is_cocycle()? != exact_is_cocycle(f)? {
        return Ok(fail("cocycle verdicts differ"));
    }
    Ok(pass("coboundaries agree"))
}

fn delta_partition(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let a = inst.cochain("a")?.support();
    let k = a.dim();
    let mut total = Rational::zero();
    let mut incidences = Rational::zero();
    for i in 0..=(k + 2) as usize {
        let w = delta_i(x, &a, i)?.weight(x);
        incidences += &w * int(i as i64);
        total += w;
    }
    let expected = int(k as i64 + 2) * a.weight(x);
    Ok(if total != Rational::one() {
        fail(format!("Σ|δ_i(A)| = {}", fmt(&total)))
    } else if incidences != expected {
        fail(format!("Σ i|δ_i(A)| = {} but (k+2)|A| = {}", fmt(&incidences), fmt(&expected)))
    } else {
        pass("partition and incidence count hold")
    })
}

fn delta1_below_coboundary(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let f = inst.cochain("f")?;
    if f.dim() >= x.dim() {
        return Ok(skip("top-dimensional cochain"));
    }
    let lhs = delta1(x, &f.support())?.weight(x);
    let rhs = f.delta()?.weight();
    Ok(if lhs <= rhs {
        pass(format!("{} <= {}", fmt(&lhs), fmt(&rhs)))
    } else {
        fail(format!("|δ₁(supp f)| = {} > |δf| = {}", fmt(&lhs), fmt(&rhs)))
    })
}

fn locality_decomposition(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let f = inst.cochain("f")?;
    let a = f.support();
    let ind = indicator(x, &a)?;
    let weight = f.weight();
    for l in -1..f.dim() {
        let per_face = x.mutual_weights_by_face(&a, l)?;
        let total: Rational = per_face.iter().sum();
        if total != weight {
            return Ok(fail(format!("level {l}: Σ_τ |(f,τ)| = {} but |f| = {}", fmt(&total), fmt(&weight))));
        }
        for (i, m) in per_face.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let tau = x.face(l, i);
            let through_link = ind.localize(tau)?.weight() * x.weight(l, i);
            if *m != through_link {
                return Ok(fail(format!(
                    "face {:?}: |(f,τ)| = {} but |f_τ| P(τ) = {}",
                    tau.vertices(),
                    fmt(m),
                    fmt(&through_link)
                )));
            }
        }
    }
    Ok(pass(format!("{} levels", f.dim() + 1)))
}

fn cheeger(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let face = parse_face(inst.text("face")?)?;
    let graph = WeightedGraph::underlying(&x.link(&face)?)?;
    let n = graph.num_vertices();
    if n > CHEEGER_VERTEX_LIMIT {
        return Ok(skip(format!("link graph has {n} vertices")));
    }
    let lambda = match second_eigenvalue(&graph) {
        Ok(c) => c.lambda_upper_rational(),
        Err(Error::DisconnectedGraph { .. }) => Rational::one(),
        Err(e) => return Err(e),
    };
    let factor = int(2) * (Rational::one() - &lambda);
    let mut inside = vec![false; n];
    for mask in 1u32..(1u32 << n) - 1 {
        for (i, slot) in inside.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        let (cut, _) = graph.cheeger_by_mask(&inside);
        let a = graph.mask_weight(&inside);
        let rhs = &factor * &a * (Rational::one() - &a);
        if cut < rhs {
            return Ok(fail(format!("subset mask {mask:#b}: cut {} < {}", fmt(&cut), fmt(&rhs))));
        }
    }
    Ok(pass(format!("{} subsets, lambda+ = {}", (1u64 << n) - 2, fmt(&lambda))))
}

fn delta1_theorem(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let a = inst.cochain("a")?.support();
    let lambda = inst.rat("lambda")?;
    let mut applicable = 0;
    for eta in inst.rats("eta")? {
        for eps in inst.rats("eps")? {
            match check_delta1_theorem_abelian(x, &a, &lambda, &eta, &eps) {
                Ok(c) if c.holds => applicable += 1,
                Ok(c) => return Ok(fail(describe(&c))),
                Err(Error::NotNonLocal) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(if applicable == 0 { skip("not non-local at any parameter pair") } else { pass(format!("{applicable} parameter pairs")) })
}

fn star_example(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let v: Vertex = inst.int("vertex")? as Vertex;
    let eta = inst.rat("eta")?;
    let star: Vec<usize> = (0..x.num_faces(1)).filter(|&i| x.face(1, i).contains_vertex(v)).collect();
    let a = FaceSet::new(x, 1, star)?;
    let d1 = delta1(x, &a)?;
    if !d1.is_empty() {
        return Ok(fail(format!("δ₁ of the star has {} faces", d1.len())));
    }
    let verdict = classify_non_local(x, &a, &eta, &ratio(1, 2))?;
    Ok(if int(2) * &verdict.mutual == verdict.weight {
        pass(format!("|(A,S_0)| = {} = |A|/2", fmt(&verdict.mutual)))
    } else {
        fail(format!("|(A,S_0)| = {} but |A| = {}", fmt(&verdict.mutual), fmt(&verdict.weight)))
    })
}

fn vanishing_abelian(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let g = inst.group()?;
    let k = inst.int("k")? as isize;
    let (lambda, eta, eps) = (inst.rat("lambda")?, inst.rat("eta")?, inst.rat("eps")?);
    let spaces = enumerate_spaces(x, &g, k, budget)?;
    let mut non_local = 0;
    for z in &spaces.cocycles {
        let f = Cochain::from_values(x, &g, k, z.clone())?;
        let r = check_vanishing_abelian(&f, &lambda, &eta, &eps)?;
        if r.falsified {
            return Ok(fail(format!("a nonzero non-local cocycle of weight {}", fmt(&f.weight()))));
        }
        non_local += usize::from(r.premise_holds);
    }
    Ok(pass(format!("{} cocycles, {non_local} non-local, all zero", spaces.cocycles.len())))
}

fn abelian_hierarchy(inst: &Instance, name: &str) -> Result<ThinHierarchy> {
    let f = inst.cochain(name)?;
    ThinHierarchy::new(&inst.complex, &f.support(), &inst.rat("eta")?, HierarchyPath::Abelian)
}

fn claim_bound(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let h = abelian_hierarchy(inst, "f")?;
    Ok(from_checks(&check_claim_bound(&inst.complex, &h)?))
}

fn empty_set_balanced(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let h = abelian_hierarchy(inst, "f")?;
    Ok(match check_empty_set_balanced(&inst.complex, &h)? {
        Some(c) => from_checks(&[c]),
        None => skip("|f| exceeds the threshold"),
    })
}

fn negligible_degenerate(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let h = abelian_hierarchy(inst, "f")?;
    Ok(match check_negligible_degenerate(&inst.complex, &h, &inst.rat("lambda")?)? {
        Some(c) => from_checks(&[c]),
        None => skip("lambda+ exceeds eta^(2^(d-1))"),
    })
}

fn small_degenerate(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let a = inst.cochain("a")?.support();
    let h = ThinHierarchy::new(&inst.complex, &a, &inst.rat("eta")?, HierarchyPath::NonAbelian)?;
    Ok(from_checks(&[check_small_degenerate(&inst.complex, &h, &inst.rat("lambda")?)?]))
}

/// Faces of `x` in `set`, as a hash set.
fn face_set(x: &SimplicialComplex, set: &FaceSet) -> HashSet<Face> {
    set.faces(x).cloned().collect()
}

/// `‖B_σ‖` through the localized indicator cochain.
fn link_weights(x: &Arc<SimplicialComplex>, b: &FaceSet, level: isize) -> Result<Vec<Rational>> {
    let ind = indicator(x, b)?;
    x.faces(level).iter().map(|sigma| Ok(ind.localize(sigma)?.weight())).collect()
}

fn hierarchy_membership(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let a = inst.cochain("f")?.support();
    let eta = inst.rat("eta")?;
    let k = a.dim();
    let h = ThinHierarchy::new(x, &a, &eta, HierarchyPath::Abelian)?;
    for i in (-1..k).rev() {
        let above = h.s_bar(i + 1).expect("level");
        let threshold = pow_int(&eta, 1i64 << (k - i - 1));
        for (idx, w) in link_weights(x, &above, i)?.iter().enumerate() {
            if (*w <= threshold) != h.s(i).expect("level").contains(idx) {
                return Ok(fail(format!("abelian level {i}: face {:?} misclassified", x.face(i, idx).vertices())));
            }
        }
    }
    if k >= 1 {
        let hn = ThinHierarchy::new(x, &a, &eta, HierarchyPath::NonAbelian)?;
        let cube = |w: &Rational| w * w * w;
        for (idx, w) in link_weights(x, &a, k - 1)?.iter().enumerate() {
            if (cube(w) <= eta) != hn.s(k - 1).expect("level").contains(idx) {
                return Ok(fail(format!("non-abelian level {}: face {:?} misclassified", k - 1, x.face(k - 1, idx).vertices())));
            }
        }
        for (idx, w) in link_weights(x, &a, k - 2)?.iter().enumerate() {
            if (*w <= eta) != hn.s(k - 2).expect("level").contains(idx) {
                return Ok(fail(format!("non-abelian level {}: face {:?} misclassified", k - 2, x.face(k - 2, idx).vertices())));
            }
        }
    }
    Ok(pass(format!("{} levels", k + 1)))
}

/// All facets of the faces in `faces`.
fn facets_of(faces: &HashSet<Face>) -> HashSet<Face> {
    faces.iter().flat_map(|f| (0..f.len()).map(move |p| f.without(p))).collect()
}

fn f_down_oracle(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let h = abelian_hierarchy(inst, "f")?;
    let k = h.k;
    let bars: Vec<HashSet<Face>> = (-1..=k).map(|j| face_set(x, &h.s_bar(j).expect("level"))).collect();
    let bar = |j: isize| &bars[(j + 1) as usize];
    // touched[τ][i + 1]: i-faces below τ through a chain of non-thin faces.
    let tops: Vec<&Face> = h.support().faces(x).collect();
    let mut touched: Vec<Vec<HashSet<Face>>> = Vec::new();
    for tau in &tops {
        let mut levels = vec![HashSet::new(); (k + 1) as usize];
        let mut frontier: HashSet<Face> = [(*tau).clone()].into();
        for j in (-1..k).rev() {
            let below = facets_of(&frontier);
            frontier = below.iter().filter(|f| bar(j).contains(*f)).cloned().collect();
            levels[(j + 1) as usize] = below;
        }
        touched.push(levels);
    }
    for i in -1..k {
        for sigma in x.faces(i) {
            let fast: HashSet<Face> = f_down_sigma(x, &h, sigma)?.faces(x).cloned().collect();
            let slow: HashSet<Face> = tops
                .iter()
                .zip(&touched)
                .filter(|(_, levels)| levels[(i + 1) as usize].contains(sigma))
                .map(|(t, _)| (*t).clone())
                .collect();
            if fast != slow {
                return Ok(fail(format!("f↓σ differs at σ = {:?}", sigma.vertices())));
            }
        }
    }
    Ok(pass("f↓σ agrees at every face"))
}

/// Faces of `outer` containing two distinct `size`-vertex faces of `inner`
/// whose common facet lies in `meet`, by a direct scan of vertex subsets.
fn pair_scan(outer: &[Face], inner: &HashSet<Face>, meet: &HashSet<Face>, size: usize) -> HashSet<Face> {
    outer
        .iter()
        .filter(|t| {
            let subs: Vec<Face> =
                t.vertices().iter().copied().combinations(size).map(Face::new).filter(|s| inner.contains(s)).collect();
            subs.iter().tuple_combinations().any(|(a, b)| {
                let common = a.difference(&a.difference(b));
                common.len() + 1 == size && meet.contains(&common)
            })
        })
        .cloned()
        .collect()
}

fn upsilon_oracle(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let a = inst.cochain("a")?.support();
    let eta = inst.rat("eta")?;
    let k = a.dim();
    let a_faces = face_set(x, &a);
    let outer = x.faces(k + 1);
    let same = |variant: UpsilonVariant, h: &ThinHierarchy, slow: HashSet<Face>| -> Result<Option<Outcome>> {
        let fast = face_set(x, &upsilon_set(x, h, variant)?);
        Ok((fast != slow).then(|| fail(format!("{variant:?} variant: {} faces by scan, {} computed", slow.len(), fast.len()))))
    };

    let th = theorem_thin_faces(x, &a, &eta)?;
    let slow = pair_scan(outer, &a_faces, &face_set(x, th.s(k - 1).expect("level")), (k + 1) as usize);
    if let Some(o) = same(UpsilonVariant::Theorem, &th, slow)? {
        return Ok(o);
    }

    let h = ThinHierarchy::new(x, &a, &eta, HierarchyPath::Abelian)?;
    let mut slow = HashSet::new();
    for i in 0..=k {
        let inner = face_set(x, &h.s_bar(i).expect("level"));
        let meet = face_set(x, h.s(i - 1).expect("level"));
        slow.extend(pair_scan(outer, &inner, &meet, (i + 1) as usize));
    }
    if let Some(o) = same(UpsilonVariant::Hierarchy, &h, slow)? {
        return Ok(o);
    }

    let hn = ThinHierarchy::new(x, &a, &eta, HierarchyPath::NonAbelian)?;
    let a_list: Vec<Face> = a_faces.iter().cloned().collect();
    let inner = face_set(x, &hn.s_bar(k - 1).expect("level"));
    let meet = face_set(x, hn.s(k - 2).expect("level"));
    let slow = pair_scan(&a_list, &inner, &meet, k as usize);
    if let Some(o) = same(UpsilonVariant::NonAbelian, &hn, slow)? {
        return Ok(o);
    }
    Ok(pass("three variants agree"))
}

fn fat_face_contribution(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let f = inst.cochain("f")?;
    if !f.is_cocycle()? {
        return Ok(skip("not a cocycle"));
    }
    if is_locally_minimal(f, &LinkCache::new(x)?, budget)?.is_some() {
        return Ok(skip("not locally minimal"));
    }
    let beta = match link_coboundary_expansion(x, f.group(), budget)? {
        Some(b) if !b.is_zero() => b,
        _ => return Ok(skip("links do not expand")),
    };
    let mut checks = Vec::new();
    for eta in inst.rats("eta")? {
        let h = ThinHierarchy::new(x, &f.support(), &eta, HierarchyPath::Abelian)?;
        for i in 0..f.dim() {
            checks.push(check_fat_face_contribution(x, &h, &beta, i)?);
        }
    }
    Ok(from_checks(&checks))
}

fn correction_contract(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let f = inst.cochain("f")?;
    let path: CorrectionPath = inst.text("path")?.parse()?;
    let (corrected, trace) = match path {
        CorrectionPath::Abelian => correct_abelian(f, budget)?,
        CorrectionPath::NonAbelian => correct_nonabelian(f, budget)?,
    };
    if !trace.strictly_monotone() {
        return Ok(fail("|δ| is not strictly decreasing"));
    }
    if !trace.step_bound_holds() {
        return Ok(fail(format!("{} steps exceed the bound {}", trace.r(), fmt(&trace.step_bound))));
    }
    if !trace.distance_bound_holds() {
        return Ok(fail(format!("dist(f,f') = {} exceeds {}", fmt(&trace.distance), fmt(&trace.distance_bound))));
    }
    if !trace.distance_within_moves() {
        return Ok(fail("dist(f,f') exceeds the total step movement"));
    }
    for s in &trace.steps {
        let bound = step_move_bound(x, path, trace.k, s.vertex)?;
        if s.moved > bound {
            return Ok(fail(format!("step {} at vertex {} moved {} > {}", s.step, s.vertex, fmt(&s.moved), fmt(&bound))));
        }
    }
    let cache = LinkCache::new(x)?;
    let stuck = match path {
        CorrectionPath::Abelian => is_locally_minimal(&corrected.coboundary()?, &cache, budget)?,
        CorrectionPath::NonAbelian => is_locally_minimal_coboundary(&corrected, &cache, budget)?,
    };
    if let Some(v) = stuck {
        return Ok(fail(format!("δf' is not minimal at vertex {v}")));
    }
    if path == CorrectionPath::NonAbelian {
        let cap = Rational::one() - ratio(1, f.group().order() as i64);
        let (worst, at) = max_edge_localization(&corrected.coboundary_nonabelian()?)?;
        if worst > cap {
            return Ok(fail(format!("|(δf')_e| = {} > 1 - 1/|G| at {at:?}", fmt(&worst))));
        }
    }
    Ok(pass(format!("{} steps, dist {}", trace.r(), fmt(&trace.distance))))
}

fn minimality_oracle(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let f = inst.cochain("f")?;
    let fast = minimize(f, budget)?;
    let exact = exact_distance(f, Space::Coboundaries, budget)?;
    if fast.best != exact.distance {
        return Ok(fail(format!("dist(f,B) = {} by search, {} by enumeration", fmt(&fast.best), fmt(&exact.distance))));
    }
    if fast.corrected.weight() != fast.best {
        return Ok(fail("corrected cochain does not attain the distance"));
    }
    if fast.is_minimal() != exact_is_minimal(f, budget)? {
        return Ok(fail("minimality verdicts differ"));
    }
    Ok(pass(format!("dist {}", fmt(&fast.best))))
}

fn cocycle_oracle(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let f = inst.cochain("f")?;
    let fast = f.is_cocycle()?;
    if fast != exact_is_cocycle(f)? {
        return Ok(fail("cocycle verdicts differ"));
    }
    let exact = exact_distance(f, Space::Cocycles, budget)?;
    if !exact.nearest.is_cocycle()? {
        return Ok(fail("nearest cocycle is not a cocycle"));
    }
    let d = f.distance(&exact.nearest)?;
    if d != exact.distance {
        return Ok(fail(format!("reported distance {} but witness at {}", fmt(&exact.distance), fmt(&d))));
    }
    if fast != exact.distance.is_zero() {
        return Ok(fail("distance to cocycles disagrees with the cocycle test"));
    }
    Ok(pass(format!("dist(f,Z) = {}", fmt(&exact.distance))))
}

fn local_minimality_oracle(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let f = inst.cochain("f")?;
    let cache = LinkCache::new(f.complex())?;
    let fast = if f.group().is_abelian() {
        is_locally_minimal(f, &cache, budget)?
    } else {
        is_locally_minimal_coboundary(f, &cache, budget)?
    };
    let exact = exact_locally_minimal(f, budget)?;
    Ok(if fast == exact {
        pass(format!("first non-minimal vertex {fast:?}"))
    } else {
        fail(format!("search reports {fast:?}, enumeration reports {exact:?}"))
    })
}

fn expansion_constant_oracle(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let g = inst.group()?;
    let k = inst.int("k")? as isize;
    let fast = coboundary_constant_by_search(x, &g, k, budget)?;
    let exact = coboundary_expansion_constant(x, &g, k, budget)?.value;
    let show = |v: &Option<Rational>| v.as_ref().map_or("inf".to_string(), fmt);
    Ok(if fast == exact {
        pass(format!("constant {}", show(&fast)))
    } else {
        fail(format!("search gives {}, enumeration gives {}", show(&fast), show(&exact)))
    })
}

/// `Z^k` and `B^k` of an abelian group by direct evaluation of alternating
/// sums over ordered vertex lists, without the library coboundary.
fn scan_systole(x: &SimplicialComplex, g: &FiniteGroup, k: isize, budget: &EnumerationBudget) -> Result<(bool, Option<Rational>)> {
    let order = g.order();
    let faces = x.faces(k);
    let index = |face: &Face| faces.iter().position(|f| f == face).expect("subface");
    let coboundary = |values: &[usize], dim: isize| -> Vec<usize> {
        let lower = x.faces(dim);
        x.faces(dim + 1)
            .iter()
            .map(|t| {
                (0..t.len()).fold(0usize, |acc, j| {
                    let s = t.without(j);
                    let v = GroupElement::from_index(values[lower.iter().position(|f| *f == s).expect("facet")]);
                    let term = if j % 2 == 1 { g.inv(v) } else { v };
                    g.op(GroupElement::from_index(acc), term).index()
                })
            })
            .collect()
    };
    let _ = index;
    let count = |n: usize| -> Result<u64> { budget.admit(order, n) };
    let mut boundaries: HashSet<Vec<usize>> = HashSet::new();
    let below = x.num_faces(k - 1);
    let mut h = vec![0usize; below];
    for _ in 0..count(below)? {
        boundaries.insert(if k == 0 { vec![h[0]; faces.len()] } else { coboundary(&h, k - 1) });
        bump(&mut h, order);
    }
    let weights = x.weights(k);
    let mut f = vec![0usize; faces.len()];
    let mut nontrivial = false;
    let mut best: Option<Rational> = None;
    for _ in 0..count(faces.len())? {
        let is_cocycle = k == x.dim() || coboundary(&f, k).iter().all(|&v| v == 0);
        if is_cocycle && !boundaries.contains(&f) {
            nontrivial = true;
            let w: Rational = f.iter().zip(weights).filter(|(v, _)| **v != 0).map(|(_, w)| w.clone()).sum();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
        bump(&mut f, order);
    }
    Ok((nontrivial, best))
}

fn bump(v: &mut [usize], order: usize) {
    for slot in v.iter_mut().rev() {
        *slot += 1;
        if *slot < order {
            return;
        }
        *slot = 0;
    }
}

fn systole_oracle(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let g = inst.group()?;
    let k = inst.int("k")? as isize;
    if !g.is_abelian() {
        return Err(Error::NonAbelianGroup(g.spec().to_string()));
    }
    let spaces = enumerate_spaces(x, &g, k, budget)?;
    let constants = cosystolic_expansion_constants(x, &g, budget)?;
    let mu = constants.systole.iter().find(|c| c.k == k).and_then(|c| c.value.clone());
    let (nontrivial, scanned) = scan_systole(x, &g, k, budget)?;
    if spaces.cohomology_trivial() == nontrivial {
        return Ok(fail(format!("enumeration says Z = B is {}, scan disagrees", spaces.cohomology_trivial())));
    }
    if mu != scanned {
        let show = |v: &Option<Rational>| v.as_ref().map_or("none".to_string(), fmt);
        return Ok(fail(format!("mu = {} but the scan finds {}", show(&mu), show(&scanned))));
    }
    Ok(pass(match mu {
        Some(m) => format!("Z != B, mu = {}", fmt(&m)),
        None => "Z = B".to_string(),
    }))
}

fn trivial_cohomology(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let g = inst.group()?;
    let top = if g.is_abelian() { x.dim() } else { x.dim().min(2) };
    for k in 0..top {
        let spaces = enumerate_spaces(x, &g, k, budget)?;
        if !spaces.inclusion_holds() {
            return Ok(fail(format!("B^{k} is not contained in Z^{k}")));
        }
        if !spaces.cohomology_trivial() {
            return Ok(fail(format!("|Z^{k}| = {} but |B^{k}| = {}", spaces.cocycles.len(), spaces.coboundaries.len())));
        }
    }
    Ok(pass(format!("Z^k = B^k for 0 <= k < {top}")))
}

fn certificate_soundness(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let g = inst.group()?;
    let path: CorrectionPath = inst.text("path")?.parse()?;
    let beta = inst.rat("beta")?;
    match cosystolic_certificate(x, &g, path, &beta, None, budget) {
        Err(Error::PremiseFailed(m)) => Ok(pass(format!("refused: {m}"))),
        Err(e) => Err(e),
        Ok(cert) => {
            let constants = cosystolic_expansion_constants(x, &g, budget)?;
            let eps_ok = constants.eps().is_none_or(|e| e >= cert.eps_lower);
            let mu_ok = constants.mu().is_none_or(|m| m >= cert.mu);
            Ok(if eps_ok && mu_ok {
                pass("certificate confirmed by enumeration")
            } else {
                fail("certified constants exceed the enumerated ones")
            })
        }
    }
}

fn conjugation_invariance(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let h = inst.cochain("h")?;
    let g = inst.cochain("g")?;
    let acted = Cochain::act(h, g)?;
    let (lhs, rhs) = (acted.coboundary_nonabelian()?.weight(), g.coboundary_nonabelian()?.weight());
    Ok(if lhs == rhs {
        pass(format!("|δg| = {}", fmt(&rhs)))
    } else {
        fail(format!("|δ(h.g)| = {} but |δg| = {}", fmt(&lhs), fmt(&rhs)))
    })
}

fn weakly_non_local_definition(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let a = inst.cochain("a")?.support();
    let (eta, eps, alpha) = (inst.rat("eta")?, inst.rat("eps")?, inst.rat("alpha")?);
    let k = a.dim();
    let verdict = classify_weakly_non_local(x, &a, &eta, &eps, &alpha)?;
    let mut thin = Rational::zero();
    for (i, w) in link_weights(x, &a, k - 2)?.iter().enumerate() {
        if *w <= eta {
            thin += x.weight(k - 2, i);
        }
    }
    let max = link_weights(x, &a, k - 1)?.into_iter().max().unwrap_or_else(Rational::zero);
    let expected = thin >= Rational::one() - &eps * a.weight(x) && max <= Rational::one() - &alpha;
    Ok(if thin != verdict.thin_weight {
        fail(format!("|S_(k-2)| = {} recomputed, {} reported", fmt(&thin), fmt(&verdict.thin_weight)))
    } else if max != verdict.max_link_weight {
        fail(format!("max |A_τ| = {} recomputed, {} reported", fmt(&max), fmt(&verdict.max_link_weight)))
    } else if expected != verdict.weakly_non_local {
        fail(format!("verdict {} but recomputed {expected}", verdict.weakly_non_local))
    } else {
        pass(format!("weakly non-local = {expected}"))
    })
}

fn delta1_decomposition(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let a = inst.cochain("a")?.support();
    let (lambda, eta, alpha) = (inst.rat("lambda")?, inst.rat("eta")?, inst.rat("alpha")?);
    Ok(match check_delta1_decomposition(&inst.complex, &a, &lambda, &eta, &alpha)? {
        Some(c) => from_checks(&[c]),
        None => skip("a (k-1)-face has |A_σ| > 1 - alpha"),
    })
}

fn delta1_theorem_nonabelian(inst: &Instance, _: &EnumerationBudget) -> Result<Outcome> {
    let a = inst.cochain("a")?.support();
    let (lambda, eta, eps, alpha) = (inst.rat("lambda")?, inst.rat("eta")?, inst.rat("eps")?, inst.rat("alpha")?);
    match check_delta1_theorem_nonabelian(&inst.complex, &a, &lambda, &eta, &eps, &alpha) {
        Ok((main, decomposition)) => {
            let mut checks = vec![main];
            checks.extend(decomposition);
            Ok(from_checks(&checks))
        }
        Err(Error::NotWeaklyNonLocal) => Ok(skip("not weakly non-local")),
        Err(e) => Err(e),
    }
}

fn localization_vs_restriction(inst: &Instance, budget: &EnumerationBudget) -> Result<Outcome> {
    let x = &inst.complex;
    let f = inst.cochain("f")?;
    let (corrected, _) = correct_nonabelian(f, budget)?;
    let beta = match link_coboundary_expansion(x, f.group(), budget)? {
        Some(b) if !b.is_zero() => b,
        _ => return Ok(skip("links do not expand")),
    };
    let h = corrected.coboundary_nonabelian()?;
    let mut checks = Vec::new();
    for v in x.vertices() {
        checks.push(crate::correction::check_localization_vs_restriction(&h, v, &beta)?);
    }
    Ok(from_checks(&checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_claim_is_registered() {
        for name in CLAIMS {
            assert!(claim_fn(name).is_some(), "{name}");
        }
        assert!(claim_fn("no-such-claim").is_none());
    }

    #[test]
    fn suite_names_roundtrip() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 5);
        assert_eq!(Suite::parse_list("delta1,nonabelian").unwrap(), vec![Suite::Delta1, Suite::NonAbelian]);
        assert!(Suite::parse_list("bogus").is_err());
    }

    #[test]
    fn pair_scan_finds_shared_edges() {
        let t = Face::new(vec![0, 1, 2]);
        let inner: HashSet<Face> = [Face::new(vec![0, 1]), Face::new(vec![1, 2])].into();
        let meet: HashSet<Face> = [Face::vertex(1)].into();
        assert_eq!(pair_scan(std::slice::from_ref(&t), &inner, &meet, 2).len(), 1);
        let meet: HashSet<Face> = [Face::vertex(0)].into();
        assert!(pair_scan(&[t], &inner, &meet, 2).is_empty());
    }

    #[test]
    fn scan_finds_the_torus_systole() {
        let x = generate::torus();
        let (nontrivial, mu) = scan_systole(&x, &FiniteGroup::cyclic(2).unwrap(), 1, &EnumerationBudget::default()).unwrap();
        assert!(nontrivial);
        // The dual graph is the Heawood graph of girth 6, so a nontrivial
        // cocycle needs 6 of the 21 edges.
        assert_eq!(mu, Some(ratio(2, 7)));
    }

    #[test]
    fn failing_instances_are_bundled_and_replayed() {
        let dir = tempfile::tempdir().unwrap();
        let x = Arc::new(generate::complete(4, 2).unwrap());
        let g = group("Z2");
        let mut f = Cochain::zero(&x, &g, 1).unwrap();
        f.set(0, GroupElement::from_index(1));
        // The claim reads a cochain named `a`, so this instance is malformed
        // and must fail, be bundled, and fail again on replay.
        let inst = Instance::new(&x).with("f", f);
        let cfg = VerifyConfig { bundle_dir: Some(dir.path().to_path_buf()), ..VerifyConfig::default() };
        let r = run_claim("delta1", "delta-partition", &[inst], &cfg).unwrap();
        assert_eq!(r.failed, 1);
        assert_eq!(r.bundles.len(), 1);
        let (claim, outcome) = replay(Path::new(&r.bundles[0]), &cfg.budget).unwrap();
        assert_eq!(claim, "delta-partition");
        assert_eq!(outcome.verdict, Verdict::Fail);
    }
}
