//! Minimality, local minimality and the iterative correction procedures.
//!
//! Minimization within a link is an exact branch-and-bound search over the
//! cochains one dimension down, visited in lexicographic order of their
//! value vectors. A candidate only replaces the incumbent when strictly
//! better, so the returned optimum is the lexicographically first one.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::Cochain;
use crate::complex::{Face, LinkView, SimplicialComplex, Vertex};
use crate::delta1::{classify_non_local, classify_weakly_non_local, BoundCheck, NonLocalVerdict, WeaklyNonLocalVerdict};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::oracle::{coboundary_expansion_constant, EnumerationBudget};
use crate::rational::{self, binomial, factorial, int, pow_int, RealPower, Rational};
use crate::spectral::local_spectral_lambda_lenient;

/// How a value vector one dimension down corrects the cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Correction {
    /// `f - δc` for abelian groups.
    Subtract,
    /// `h.f` for non-abelian 1-cochains.
    Act,
    /// `f c^-1` with `c` constant, for non-abelian 0-cochains.
    RightConstant,
}

/// Outcome of minimizing `f` over its class modulo coboundaries.
#[derive(Clone, Debug)]
pub struct Minimization {
    /// `‖f‖`.
    pub weight: Rational,
    /// `dist(f, B^k)`.
    pub best: Rational,
    /// The lexicographically first cochain one dimension down attaining `best`.
    pub lift: Cochain,
    /// The corrected cochain of weight `best`.
    pub corrected: Cochain,
}

impl Minimization {
    pub fn is_minimal(&self) -> bool {
        self.best == self.weight
    }
}

struct Search<'a> {
    group: &'a FiniteGroup,
    mode: Correction,
    values: Vec<GroupElement>,
    weights: &'a [u64],
    /// Per k-face: `(variable, odd)` pairs. For `Act` the pair order is `(u, w)`.
    vars: Vec<Vec<(usize, bool)>>,
    /// `closing[j]`: k-faces whose last variable is `j`.
    closing: Vec<Vec<usize>>,
    assign: Vec<GroupElement>,
    best: u128,
    best_assign: Vec<GroupElement>,
}

impl Search<'_> {
    fn corrected(&self, t: usize) -> GroupElement {
        let g = self.group;
        let f = self.values[t];
        match self.mode {
            Correction::Subtract => self.vars[t].iter().fold(f, |acc, &(j, odd)| {
                // f - Σ (-1)^i c(facet_i): subtract even terms, add odd ones
                let c = self.assign[j];
                g.op(acc, if odd { c } else { g.inv(c) })
            }),
            Correction::Act => {
                let (u, w) = (self.vars[t][0].0, self.vars[t][1].0);
                g.op(g.op(self.assign[u], f), g.inv(self.assign[w]))
            }
            Correction::RightConstant => g.op(f, g.inv(self.assign[0])),
        }
    }

    fn run(&mut self, j: usize, cost: u128) {
        if j == self.assign.len() {
            if cost < self.best {
                self.best = cost;
                self.best_assign = self.assign.clone();
            }
            return;
        }
        for a in 0..self.group.order() {
            self.assign[j] = GroupElement::from_index(a);
            let mut c = cost;
            for &t in &self.closing[j] {
                if !self.corrected(t).is_identity() {
                    c += self.weights[t] as u128;
                }
            }
            if c < self.best {
                self.run(j + 1, c);
            }
        }
        self.assign[j] = GroupElement::IDENTITY;
    }
}

/// Exact `dist(f, B^k)` with the minimizing correction. For non-abelian
/// 1-cochains this is `min_h ‖h.f‖` over `h ∈ C⁰`.
pub fn minimize(f: &Cochain, budget: &EnumerationBudget) -> Result<Minimization> {
    let x = f.complex();
    let g = f.group();
    let k = f.dim();
    if k == -1 {
        let zero = Cochain::zero(x, g, -1)?;
        return Ok(Minimization { weight: f.weight(), best: f.weight(), lift: zero, corrected: f.clone() });
    }
    let mode = if g.is_abelian() {
        Correction::Subtract
    } else {
        match k {
            0 => Correction::RightConstant,
            1 => Correction::Act,
            _ => return Err(Error::UndefinedCoboundary((k - 1) as usize)),
        }
    };
    let m = if mode == Correction::RightConstant { 1 } else { x.num_faces(k - 1) };
    budget.admit(g.order(), m)?;
    let n = x.num_faces(k);
    let vars: Vec<Vec<(usize, bool)>> = (0..n)
        .map(|t| match mode {
            Correction::Subtract => x.facets(k, t).iter().enumerate().map(|(i, &s)| (s, i % 2 == 1)).collect(),
            // facets of (u, w) are [{w}, {u}]
            Correction::Act => vec![(x.facets(1, t)[1], false), (x.facets(1, t)[0], false)],
            Correction::RightConstant => vec![(0, false)],
        })
        .collect();
    let mut closing = vec![Vec::new(); m];
    for (t, v) in vars.iter().enumerate() {
        closing[v.iter().map(|p| p.0).max().expect("faces have facets")].push(t);
    }
    let weights = x.int_weights(k);
    let total: u128 = f.values().iter().zip(weights).filter(|(v, _)| !v.is_identity()).map(|(_, w)| *w as u128).sum();
    let mut search = Search {
        group: g,
        mode,
        values: f.values().to_vec(),
        weights,
        vars,
        closing,
        assign: vec![GroupElement::IDENTITY; m],
        best: total,
        best_assign: vec![GroupElement::IDENTITY; m],
    };
    search.run(0, 0);
    let best_assign = search.best_assign.clone();
    search.assign = best_assign.clone();
    let corrected_values: Vec<GroupElement> = (0..n).map(|t| search.corrected(t)).collect();
    let lift = if mode == Correction::RightConstant {
        Cochain::from_values(x, g, -1, best_assign)?
    } else {
        Cochain::from_values(x, g, k - 1, best_assign)?
    };
    let den = x.weight_denominator(k);
    Ok(Minimization {
        weight: Rational::new(total.into(), den.into()),
        best: Rational::new(search.best.into(), den.into()),
        lift,
        corrected: Cochain::from_values(x, g, k, corrected_values)?,
    })
}

/// `‖f‖ = dist(f, B^k)`.
pub fn is_minimal(f: &Cochain, budget: &EnumerationBudget) -> Result<bool> {
    Ok(minimize(f, budget)?.is_minimal())
}

/// `min ‖δf‖ / dist(f, B^k)` over `f ∉ B^k`, with every distance computed by
/// [`minimize`]. `None` when every cochain is a coboundary.
pub fn coboundary_constant_by_search(
    x: &Arc<SimplicialComplex>,
    group: &Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
) -> Result<Option<Rational>> {
    if k < 0 || k >= x.dim() {
        return Err(Error::BadDimension { dim: k, max: x.dim() - 1 });
    }
    let n = x.num_faces(k);
    let total = budget.admit(group.order(), n)?;
    let order = group.order() as u64;
    let ratios = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let mut values = vec![GroupElement::IDENTITY; n];
            for slot in values.iter_mut().rev() {
                *slot = GroupElement::from_index((rest % order) as usize);
                rest /= order;
            }
            let f = Cochain::from_values(x, group, k, values)?;
            let dist = minimize(&f, budget)?.best;
            if dist.is_zero() {
                return Ok(None);
            }
            Ok(Some(f.delta()?.weight() / dist))
        })
        .collect::<Result<Vec<Option<Rational>>>>()?;
    Ok(ratios.into_iter().flatten().min())
}

/// Vertex links of a complex, computed once and reused across steps.
#[derive(Clone, Debug)]
pub struct LinkCache {
    vertices: Vec<Vertex>,
    views: Vec<LinkView>,
}

impl LinkCache {
    pub fn new(x: &SimplicialComplex) -> Result<Self> {
        let vertices = x.vertices();
        let views = vertices.par_iter().map(|&v| x.link_view(&Face::vertex(v))).collect::<Result<Vec<_>>>()?;
        Ok(LinkCache { vertices, views })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn view(&self, i: usize) -> &LinkView {
        &self.views[i]
    }
}

/// First vertex whose localization is not minimal, or `None` when `f` is
/// locally minimal.
pub fn is_locally_minimal(f: &Cochain, cache: &LinkCache, budget: &EnumerationBudget) -> Result<Option<Vertex>> {
    let verdicts = (0..cache.views.len())
        .into_par_iter()
        .map(|i| Ok(minimize(&f.localize_with(&cache.views[i])?, budget)?.is_minimal()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.iter().position(|m| !m).map(|i| cache.vertices[i]))
}

/// `g_v(u, w) = f(v,u) f(u,w) f(w,v)` on the link of `v`: the localization
/// of `δf` used by the non-abelian correction step.
pub fn link_coboundary(f: &Cochain, view: &LinkView) -> Result<Cochain> {
    if f.dim() != 1 {
        return Err(Error::WrongDimension(format!("expected a 1-cochain, got dimension {}", f.dim())));
    }
    let x = f.complex();
    let g = f.group();
    let v = view.sigma.vertices()[0];
    let ordered = |a: Vertex, b: Vertex| -> GroupElement {
        let idx = x.index_of(&Face::new(vec![a, b])).expect("edge of the link");
        let val = f.value(idx);
        if a < b { val } else { g.inv(val) }
    };
    let link = &view.link;
    let values = link
        .faces(1)
        .iter()
        .map(|e| {
            let (u, w) = (e.vertices()[0], e.vertices()[1]);
            g.op(g.op(ordered(v, u), ordered(u, w)), ordered(w, v))
        })
        .collect();
    Cochain::from_values(link, g, 1, values)
}

/// First vertex at which `δf` is not locally minimal, for a non-abelian
/// 1-cochain `f`.
pub fn is_locally_minimal_coboundary(f: &Cochain, cache: &LinkCache, budget: &EnumerationBudget) -> Result<Option<Vertex>> {
    let verdicts = (0..cache.views.len())
        .into_par_iter()
        .map(|i| Ok(minimize(&link_coboundary(f, &cache.views[i])?, budget)?.is_minimal()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.iter().position(|m| !m).map(|i| cache.vertices[i]))
}

/// One abelian correction step applied to a `(k+1)`-cochain `h`.
#[derive(Clone, Debug)]
pub struct AbelianStep {
    pub vertex: Vertex,
    /// `g ∈ C^k`, supported on faces containing `vertex`.
    pub g: Cochain,
    pub before: Rational,
    pub after: Rational,
}

/// Lifts a link cochain `c` to `g(vτ) = c(τ)` on faces containing `v`.
fn lift_from_link(x: &Arc<SimplicialComplex>, group: &Arc<FiniteGroup>, view: &LinkView, c: &Cochain) -> Result<Cochain> {
    let k = view.parent_dim(c.dim());
    let mut g = Cochain::zero(x, group, k)?;
    for i in 0..view.link.num_faces(c.dim()) {
        let (idx, odd) = view.join(c.dim(), i);
        let v = c.value(i);
        g.set(idx, if odd { group.inv(v) } else { v });
    }
    Ok(g)
}

/// Picks the vertex whose link correction decreases `‖h‖` the most (ties to
/// the smallest vertex) and returns `g` with `‖h - δg‖ < ‖h‖`.
pub fn one_step_abelian(h: &Cochain, cache: &LinkCache, budget: &EnumerationBudget) -> Result<AbelianStep> {
    let group = h.group();
    if !group.is_abelian() {
        return Err(Error::NonAbelianGroup(group.spec().to_string()));
    }
    if h.dim() < 1 {
        return Err(Error::DimensionTooLow(h.dim()));
    }
    let x = h.complex();
    let before = h.weight();
    let candidates = (0..cache.views.len())
        .into_par_iter()
        .map(|i| -> Result<Option<(Rational, Cochain)>> {
            let view = &cache.views[i];
            let m = minimize(&h.localize_with(view)?, budget)?;
            if m.is_minimal() {
                return Ok(None);
            }
            // (δg)_v = -δ(g_v), so lifting -c gives (h - δg)_v = h_v - δc.
            let g = lift_from_link(x, group, view, &m.lift.neg())?;
            let after = h.sub(&g.coboundary()?)?.weight();
            Ok(Some((after, g)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(usize, Rational, Cochain)> = None;
    for (i, c) in candidates.into_iter().enumerate() {
        if let Some((after, g)) = c {
            if best.as_ref().is_none_or(|(_, a, _)| after < *a) {
                best = Some((i, after, g));
            }
        }
    }
    let (i, after, g) = best.ok_or(Error::AlreadyLocallyMinimal)?;
    if after >= before {
        return Err(Error::Mismatch("link correction did not decrease the weight".into()));
    }
    Ok(AbelianStep { vertex: cache.vertices[i], g, before, after })
}

/// One non-abelian correction step on a 1-cochain `f`.
#[derive(Clone, Debug)]
pub struct NonAbelianStep {
    pub vertex: Vertex,
    /// `h ∈ C⁰(X_v)` with `‖h.g_v‖ < ‖g_v‖`.
    pub h: Cochain,
    /// `f'(vu) = h(u) f(vu)` on edges at `v`, `f` elsewhere.
    pub updated: Cochain,
    pub before: Rational,
    pub after: Rational,
}

/// Picks the vertex whose link correction decreases `‖δf‖` the most (ties to
/// the smallest vertex) and applies `f'(vu) = h(u) f(vu)`.
pub fn one_step_nonabelian(f: &Cochain, cache: &LinkCache, budget: &EnumerationBudget) -> Result<NonAbelianStep> {
    if f.dim() != 1 {
        return Err(Error::WrongDimension(format!("expected a 1-cochain, got dimension {}", f.dim())));
    }
    let x = f.complex();
    let group = f.group();
    let before = f.coboundary_nonabelian()?.weight();
    let candidates = (0..cache.views.len())
        .into_par_iter()
        .map(|i| -> Result<Option<(Rational, Cochain, Cochain)>> {
            let view = &cache.views[i];
            let m = minimize(&link_coboundary(f, view)?, budget)?;
            if m.is_minimal() {
                return Ok(None);
            }
            let v = view.sigma.vertices()[0];
            let mut updated = f.clone();
            for (j, u_face) in view.link.faces(0).iter().enumerate() {
                let u = u_face.vertices()[0];
                let hu = m.lift.value(j);
                let idx = x.index_of(&Face::new(vec![v, u])).expect("edge at v");
                let old = f.value(idx);
                // canonical (v,u): h(u) f(vu); canonical (u,v): f(uv) h(u)^-1
                updated.set(idx, if v < u { group.op(hu, old) } else { group.op(old, group.inv(hu)) });
            }
            let after = updated.coboundary_nonabelian()?.weight();
            Ok(Some((after, m.lift, updated)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(usize, Rational, Cochain, Cochain)> = None;
    for (i, c) in candidates.into_iter().enumerate() {
        if let Some((after, h, updated)) = c {
            if best.as_ref().is_none_or(|(_, a, _, _)| after < *a) {
                best = Some((i, after, h, updated));
            }
        }
    }
    let (i, after, h, updated) = best.ok_or(Error::AlreadyLocallyMinimal)?;
    if after >= before {
        return Err(Error::Mismatch("link correction did not decrease the weight".into()));
    }
    Ok(NonAbelianStep { vertex: cache.vertices[i], h, updated, before, after })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    Abelian,
    NonAbelian,
}

impl std::str::FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abelian" => Ok(Path::Abelian),
            "nonabelian" | "non-abelian" => Ok(Path::NonAbelian),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub vertex: Vertex,
    #[serde(serialize_with = "rational::serialize")]
    pub delta_weight_before: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub delta_weight_after: Rational,
    /// Weight of the faces changed in this step.
    #[serde(serialize_with = "rational::serialize")]
    pub moved: Rational,
}

/// Record of a full correction run and the bounds it must respect.
#[derive(Clone, Debug, Serialize)]
pub struct CorrectionTrace {
    pub path: Path,
    pub k: isize,
    pub steps: Vec<StepRecord>,
    #[serde(serialize_with = "rational::serialize")]
    pub initial_delta_weight: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub final_delta_weight: Rational,
    /// `dist(f, f')`.
    #[serde(serialize_with = "rational::serialize")]
    pub distance: Rational,
    /// Degree bound `q`: the most top faces at any vertex.
    pub q: usize,
    /// Bound on the number of steps.
    #[serde(serialize_with = "rational::serialize")]
    pub step_bound: Rational,
    /// Bound on `dist(f, f')`.
    #[serde(serialize_with = "rational::serialize")]
    pub distance_bound: Rational,
}

impl CorrectionTrace {
    pub fn r(&self) -> usize {
        self.steps.len()
    }

    /// Every step strictly decreases `‖δ‖` and continues where the last ended.
    pub fn strictly_monotone(&self) -> bool {
        let mut current = &self.initial_delta_weight;
        for s in &self.steps {
            if s.delta_weight_before != *current || s.delta_weight_after >= s.delta_weight_before {
                return false;
            }
            current = &s.delta_weight_after;
        }
        *current == self.final_delta_weight
    }

    pub fn step_bound_holds(&self) -> bool {
        int(self.r() as i64) <= self.step_bound
    }

    pub fn distance_bound_holds(&self) -> bool {
        self.distance <= self.distance_bound
    }

    /// `dist(f, f') ≤ Σ moved`.
    pub fn distance_within_moves(&self) -> bool {
        let total: Rational = self.steps.iter().map(|s| s.moved.clone()).sum();
        self.distance <= total
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.strictly_monotone() && self.step_bound_holds() && self.distance_bound_holds() && self.distance_within_moves()
    }
}

/// Repeats [`one_step_abelian`] on `δf` until it is locally minimal.
pub fn correct_abelian(f: &Cochain, budget: &EnumerationBudget) -> Result<(Cochain, CorrectionTrace)> {
    let x = f.complex();
    let d = x.dim();
    let k = f.dim();
    if !f.group().is_abelian() {
        return Err(Error::NonAbelianGroup(f.group().spec().to_string()));
    }
    if k < 0 || k >= d {
        return Err(Error::WrongDimension(format!("need 0 <= k < {d}, got {k}")));
    }
    let cache = LinkCache::new(x)?;
    let mut current = f.clone();
    let mut h = current.coboundary()?;
    let initial = h.weight();
    let mut steps = Vec::new();
    loop {
        let step = match one_step_abelian(&h, &cache, budget) {
            Ok(s) => s,
            Err(Error::AlreadyLocallyMinimal) => break,
            Err(e) => return Err(e),
        };
        current = current.sub(&step.g)?;
        h = current.coboundary()?;
        if h.weight() != step.after {
            return Err(Error::Mismatch("coboundary weight disagrees with the step record".into()));
        }
        steps.push(StepRecord {
            step: steps.len() + 1,
            vertex: step.vertex,
            delta_weight_before: step.before,
            delta_weight_after: step.after,
            moved: step.g.weight(),
        });
    }
    let q = x.degree_bound();
    let top = int(x.num_faces(d) as i64);
    let step_bound = top * int(binomial((d + 1) as usize, (k + 2) as usize) as i64) * &initial;
    let distance_bound = int(q as i64) * int(binomial(d as usize, (k + 1) as usize) as i64) * &initial;
    let trace = CorrectionTrace {
        path: Path::Abelian,
        k,
        steps,
        final_delta_weight: h.weight(),
        initial_delta_weight: initial,
        distance: f.distance(&current)?,
        q,
        step_bound,
        distance_bound,
    };
    Ok((current, trace))
}

/// Repeats [`one_step_nonabelian`] until `δf` is locally minimal. Requires a
/// 3-dimensional complex.
pub fn correct_nonabelian(f: &Cochain, budget: &EnumerationBudget) -> Result<(Cochain, CorrectionTrace)> {
    let x = f.complex();
    if x.dim() != 3 {
        return Err(Error::WrongDimension(format!("the non-abelian path needs d = 3, got d = {}", x.dim())));
    }
    if f.dim() != 1 {
        return Err(Error::WrongDimension(format!("the non-abelian path corrects 1-cochains, got {}", f.dim())));
    }
    let cache = LinkCache::new(x)?;
    let mut current = f.clone();
    let initial = current.coboundary_nonabelian()?.weight();
    let mut steps = Vec::new();
    loop {
        let step = match one_step_nonabelian(&current, &cache, budget) {
            Ok(s) => s,
            Err(Error::AlreadyLocallyMinimal) => break,
            Err(e) => return Err(e),
        };
        let moved = current.distance(&step.updated)?;
        current = step.updated;
        steps.push(StepRecord {
            step: steps.len() + 1,
            vertex: step.vertex,
            delta_weight_before: step.before,
            delta_weight_after: step.after,
            moved,
        });
    }
    let q = x.degree_bound();
    let step_bound = int(4) * int(x.num_faces(3) as i64) * &initial;
    let distance_bound = int(2) * int(q as i64) * &initial;
    let trace = CorrectionTrace {
        path: Path::NonAbelian,
        k: 1,
        steps,
        final_delta_weight: current.coboundary_nonabelian()?.weight(),
        initial_delta_weight: initial,
        distance: f.distance(&current)?,
        q,
        step_bound,
        distance_bound,
    };
    Ok((current, trace))
}

/// Per-step bounds of the single correction lemmas: `‖g‖ ≤ (k+1)‖v‖` for a
/// step on a `(k+1)`-cochain, `‖f'f^-1‖ ≤ 2‖v‖` for the non-abelian step.
pub fn step_move_bound(x: &SimplicialComplex, path: Path, k: isize, v: Vertex) -> Result<Rational> {
    let vw = x.face_weight(&Face::vertex(v))?;
    Ok(match path {
        Path::Abelian => int(k as i64 + 1) * vw,
        Path::NonAbelian => int(2) * vw,
    })
}

/// Parameters derived from `(d, q, β, ε)`.
#[derive(Clone, Debug, Serialize)]
pub struct ParameterSchedule {
    pub path: Path,
    pub d: usize,
    pub q: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub beta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eps: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub lambda: Rational,
    pub note: String,
}

/// Abelian: `η = β^(d-1) ε / (2^d ((d+1)!)²)`, `λ = η^(2^(d-1))`.
/// Non-abelian: `η = ε³`, `λ = β² η² ε / 64` (the constant 1/64 is chosen
/// here; only its order is fixed by the analysis).
pub fn parameter_schedule(d: usize, q: usize, beta: &Rational, eps: &Rational, path: Path) -> Result<ParameterSchedule> {
    for (name, v) in [("beta", beta), ("eps", eps)] {
        if *v <= Rational::zero() || *v >= Rational::one() {
            return Err(Error::BadParams(format!("{name} must lie in (0, 1)")));
        }
    }
    if d < 1 {
        return Err(Error::BadParams("d must be at least 1".into()));
    }
    let (eta, lambda, note) = match path {
        Path::Abelian => {
            let fact = Rational::from_integer(factorial(d + 1));
            let eta = pow_int(beta, d as i64 - 1) * eps / (pow_int(&int(2), d as i64) * &fact * &fact);
            let lambda = pow_int(&eta, 1i64 << (d - 1));
            (eta, lambda, "eta = beta^(d-1) eps / (2^d ((d+1)!)^2), lambda = eta^(2^(d-1))".to_string())
        }
        Path::NonAbelian => {
            let eta = pow_int(eps, 3);
            let lambda = beta * beta * &eta * &eta * eps / int(64);
            (eta, lambda, "eta = eps^3, lambda = beta^2 eta^2 eps / 64 (implementation-chosen constant)".to_string())
        }
    };
    Ok(ParameterSchedule { path, d, q, beta: beta.clone(), eps: eps.clone(), eta, lambda, note })
}

/// Measured coboundary expansion of links: the minimum, over links of faces
/// of dimension `0..=d-2` and link dimensions `0 ≤ k < dim`, of the exact
/// constants. `None` when every link is vacuous.
pub fn link_coboundary_expansion(
    x: &SimplicialComplex,
    group: &Arc<FiniteGroup>,
    budget: &EnumerationBudget,
) -> Result<Option<Rational>> {
    let mut best: Option<Rational> = None;
    for j in 0..=(x.dim() - 2) {
        for sigma in x.faces(j) {
            let link = x.link(sigma)?;
            let top = if group.is_abelian() { link.dim() } else { link.dim().min(2) };
            for k in 0..top {
                if let Some(v) = coboundary_expansion_constant(&link, group, k, budget)?.value {
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
        }
    }
    Ok(best)
}

/// A cosystolic expansion certificate with the measured premises attached.
#[derive(Clone, Debug, Serialize)]
pub struct CosystolicCertificate {
    pub schedule: ParameterSchedule,
    #[serde(serialize_with = "rational::serialize")]
    pub lambda_measured: Rational,
    #[serde(serialize_with = "rational::serialize_opt")]
    pub beta_measured: Option<Rational>,
    /// Exact `ε`.
    pub eps: RealPower,
    /// A rational lower bound on `ε`.
    #[serde(serialize_with = "rational::serialize")]
    pub eps_lower: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub mu: Rational,
}

/// Certifies `(ε, μ)`-cosystolic expansion after verifying `λ⁺ ≤ λ` and
/// measured link expansion `≥ β`; refuses with `PremiseFailed` otherwise.
///
/// Abelian: `ε = min{η^(2^d-1), 1/(q d^(d/2))}`, `μ = η^(2^d-1)` with the
/// default `ε_param = 1/(2(d+1)²)`. Non-abelian (d = 3): `ε = min{βη/2, 1/(2q)}`,
/// `μ = βη/2` with the default `ε_param = 1/(81|G|)`.
pub fn cosystolic_certificate(
    x: &SimplicialComplex,
    group: &Arc<FiniteGroup>,
    path: Path,
    beta: &Rational,
    eps_param: Option<Rational>,
    budget: &EnumerationBudget,
) -> Result<CosystolicCertificate> {
    let d = x.dim();
    if d < 1 {
        return Err(Error::BadParams("need a complex of dimension at least 1".into()));
    }
    if path == Path::Abelian && !group.is_abelian() {
        return Err(Error::NonAbelianGroup(group.spec().to_string()));
    }
    if path == Path::NonAbelian && d != 3 {
        return Err(Error::WrongDimension(format!("the non-abelian certificate needs d = 3, got d = {d}")));
    }
    let eps_param = match (eps_param, path) {
        (Some(e), _) => e,
        (None, Path::Abelian) => Rational::new(1.into(), (2 * (d + 1) * (d + 1)).into()),
        (None, Path::NonAbelian) => Rational::new(1.into(), (81 * group.order() as i64).into()),
    };
    if path == Path::NonAbelian && eps_param > Rational::new(1.into(), (81 * group.order() as i64).into()) {
        return Err(Error::BadParams("the non-abelian path needs eps <= 1/(81|G|)".into()));
    }
    let q = x.degree_bound();
    let schedule = parameter_schedule(d as usize, q, beta, &eps_param, path)?;
    let (report, disconnected) = local_spectral_lambda_lenient(x)?;
    if let Some(face) = disconnected.first() {
        return Err(Error::PremiseFailed(format!("spectral: the link of {face:?} is disconnected")));
    }
    let lambda_measured = report.global.lambda_upper_rational();
    if lambda_measured > schedule.lambda {
        return Err(Error::PremiseFailed(format!(
            "spectral: lambda+ = {} exceeds the scheduled lambda = {}",
            rational::format(&lambda_measured),
            rational::format(&schedule.lambda)
        )));
    }
    let beta_measured = link_coboundary_expansion(x, group, budget)?;
    if beta_measured.as_ref().is_some_and(|b| b < beta) {
        return Err(Error::PremiseFailed(format!(
            "coboundary expansion: measured link constant {} is below beta = {}",
            rational::format(beta_measured.as_ref().expect("checked")),
            rational::format(beta)
        )));
    }
    let (eps, mu) = match path {
        Path::Abelian => {
            let mu = pow_int(&schedule.eta, (1i64 << d) - 1);
            let degree_term = RealPower::new(Rational::new(1.into(), (q as i64).into()), int(d as i64), -(d as i64), 2);
            let eps = if degree_term.ge_rational(&mu) { RealPower::from_rational(mu.clone()) } else { degree_term };
            (eps, mu)
        }
        Path::NonAbelian => {
            let mu = beta * &schedule.eta / int(2);
            let other = Rational::new(1.into(), (2 * q as i64).into());
            (RealPower::from_rational(if mu <= other { mu.clone() } else { other }), mu)
        }
    };
    let eps_lower = eps.enclose(64).0;
    Ok(CosystolicCertificate { schedule, lambda_measured, beta_measured, eps, eps_lower, mu })
}

/// Whether the correction guarantee applies and, if so, whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct GuaranteeCheck {
    pub premises_hold: bool,
    pub premise_detail: String,
    /// `Some(false)` is a falsification.
    pub holds: Option<bool>,
    pub non_local: Option<NonLocalVerdict>,
    pub weakly_non_local: Option<WeaklyNonLocalVerdict>,
}

/// The output guarantee of the correction procedures: `δ(f')` is
/// `(η, ε)`-non-local (abelian) or `(η, ε, 1/|G|)`-weakly-non-local
/// (non-abelian), provided `λ⁺ ≤ λ`, measured `β` meets the schedule and
/// `‖δf‖` is below the threshold `η^(2^(k+2)-1)` (abelian) or `βη/2`.
pub fn check_guarantee(
    corrected: &Cochain,
    trace: &CorrectionTrace,
    schedule: &ParameterSchedule,
    lambda_upper: &Rational,
    beta_measured: Option<&Rational>,
) -> Result<GuaranteeCheck> {
    let threshold = match trace.path {
        Path::Abelian => pow_int(&schedule.eta, (1i64 << (trace.k + 2)) - 1),
        Path::NonAbelian => &schedule.beta * &schedule.eta / int(2),
    };
    let spectral = *lambda_upper <= schedule.lambda;
    let expansion = beta_measured.is_none_or(|b| *b >= schedule.beta);
    let small = trace.initial_delta_weight <= threshold;
    let premise_detail = format!("lambda ok = {spectral}, beta ok = {expansion}, small = {small}");
    if !(spectral && expansion && small) {
        return Ok(GuaranteeCheck { premises_hold: false, premise_detail, holds: None, non_local: None, weakly_non_local: None });
    }
    let x = corrected.complex();
    match trace.path {
        Path::Abelian => {
            let support = corrected.coboundary()?.support();
            let v = classify_non_local(x, &support, &schedule.eta, &schedule.eps)?;
            Ok(GuaranteeCheck { premises_hold: true, premise_detail, holds: Some(v.non_local), non_local: Some(v), weakly_non_local: None })
        }
        Path::NonAbelian => {
            let support = corrected.coboundary_nonabelian()?.support();
            let alpha = Rational::new(1.into(), (corrected.group().order() as i64).into());
            let v = classify_weakly_non_local(x, &support, &schedule.eta, &schedule.eps, &alpha)?;
            Ok(GuaranteeCheck {
                premises_hold: true,
                premise_detail,
                holds: Some(v.weakly_non_local),
                non_local: None,
                weakly_non_local: Some(v),
            })
        }
    }
}

/// `‖f_v‖ ≤ β⁻¹ ‖f^v‖` for a 2-cochain `f` on a 3-complex: localization
/// against restriction at `v`.
pub fn check_localization_vs_restriction(f: &Cochain, v: Vertex, beta: &Rational) -> Result<BoundCheck> {
    if f.dim() != 2 {
        return Err(Error::WrongDimension("expected a 2-cochain".into()));
    }
    if beta.is_zero() {
        return Err(Error::BadParams("beta must be positive".into()));
    }
    let local = f.localize(&Face::vertex(v))?.weight();
    let restricted = f.restrict(v)?.weight();
    let rhs = restricted / beta;
    let holds = local <= rhs;
    Ok(BoundCheck {
        claim: "localization-vs-restriction".into(),
        lhs: local,
        rhs,
        relation: "<=",
        holds,
        params: [("beta".to_string(), rational::format(beta)), ("vertex".to_string(), v.to_string())].into(),
    })
}

/// `max_e ‖f_e‖` over edges, to be compared with `1 - 1/|G|` for locally
/// minimal 2-coboundaries.
pub fn max_edge_localization(f: &Cochain) -> Result<(Rational, Option<Vec<Vertex>>)> {
    let x = f.complex();
    let mut best = Rational::zero();
    let mut at = None;
    for e in x.faces(1) {
        let w = f.localize(e)?.weight();
        if w > best {
            best = w;
            at = Some(e.vertices().to_vec());
        }
    }
    Ok((best, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn glued_tetrahedra() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build(vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]], 3).unwrap())
    }

    fn k4() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 2).unwrap())
    }

    fn el(i: usize) -> GroupElement {
        GroupElement::from_index(i)
    }

    #[test]
    fn zero_and_coboundaries() {
        let x = k4();
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let budget = EnumerationBudget::default();
        assert!(is_minimal(&Cochain::zero(&x, &g, 1).unwrap(), &budget).unwrap());
        let mut h = Cochain::zero(&x, &g, 0).unwrap();
        h.set(0, el(1));
        let f = h.coboundary().unwrap();
        let m = minimize(&f, &budget).unwrap();
        assert!(!m.is_minimal());
        assert_eq!(m.best, ratio(0, 1));
    }

    #[test]
    fn single_edge_is_minimal_in_k4() {
        let x = k4();
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut f = Cochain::zero(&x, &g, 1).unwrap();
        f.set(0, el(1));
        assert!(is_minimal(&f, &EnumerationBudget::default()).unwrap());
    }

    #[test]
    fn schedule_example() {
        let s = parameter_schedule(2, 3, &ratio(1, 2), &ratio(1, 18), Path::Abelian).unwrap();
        let s1 = parameter_schedule(2, 3, &ratio(999, 1000), &ratio(1, 18), Path::Abelian).unwrap();
        assert!(s.eta < s1.eta);
        assert!(parameter_schedule(2, 3, &int(1), &ratio(1, 18), Path::Abelian).is_err());
        let n = parameter_schedule(3, 3, &ratio(1, 2), &ratio(1, 10), Path::NonAbelian).unwrap();
        assert_eq!(n.eta, ratio(1, 1000));
    }

    #[test]
    fn cocycle_needs_no_correction() {
        let x = glued_tetrahedra();
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let f = Cochain::zero(&x, &g, 1).unwrap();
        let (out, trace) = correct_abelian(&f, &EnumerationBudget::default()).unwrap();
        assert_eq!(out, f);
        assert_eq!(trace.r(), 0);
        let cache = LinkCache::new(&x).unwrap();
        let err = one_step_abelian(&f.coboundary().unwrap(), &cache, &EnumerationBudget::default()).unwrap_err();
        assert_eq!(err, Error::AlreadyLocallyMinimal);
    }

    #[test]
    fn nonabelian_path_needs_dimension_three() {
        let x = k4();
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let f = Cochain::zero(&x, &g, 1).unwrap();
        assert!(matches!(correct_nonabelian(&f, &EnumerationBudget::default()), Err(Error::WrongDimension(_))));
    }

    #[test]
    fn nonabelian_cocycle_is_already_minimal() {
        let x = glued_tetrahedra();
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let f = Cochain::zero(&x, &g, 1).unwrap();
        let cache = LinkCache::new(&x).unwrap();
        let err = one_step_nonabelian(&f, &cache, &EnumerationBudget::default()).unwrap_err();
        assert_eq!(err, Error::AlreadyLocallyMinimal);
    }

    #[test]
    fn link_coboundary_has_the_support_of_the_localization() {
        let x = glued_tetrahedra();
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let mut f = Cochain::zero(&x, &g, 1).unwrap();
        f.set(0, el(1));
        f.set(3, el(4));
        let delta = f.coboundary_nonabelian().unwrap();
        let cache = LinkCache::new(&x).unwrap();
        for i in 0..cache.vertices().len() {
            let direct = link_coboundary(&f, cache.view(i)).unwrap();
            let localized = delta.localize_with(cache.view(i)).unwrap();
            assert_eq!(direct.support(), localized.support());
        }
    }
}
