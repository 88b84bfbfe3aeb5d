//! Brute-force ground truth on small instances.
//!
//! Everything here enumerates value vectors directly and recomputes
//! coboundaries from ordered faces, without the incidence tables or the
//! pruned searches used by the fast paths. Enumeration order is
//! lexicographic over face-indexed value vectors (the last face varies
//! fastest), so witnesses are deterministic.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::Cochain;
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::rational::{self, Rational};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Limit on enumerated states, checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_states: u64,
    /// Optional wall-clock cap, checked between enumeration chunks.
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_states: DEFAULT_BUDGET, time_limit: None }
    }
}

impl EnumerationBudget {
    pub fn new(max_states: u64) -> Self {
        EnumerationBudget { max_states, time_limit: None }
    }

    /// The default budget, overridden by the `HDX_BUDGET` environment variable.
    pub fn from_env() -> Self {
        match std::env::var("HDX_BUDGET").ok().and_then(|s| s.trim().parse().ok()) {
            Some(n) => EnumerationBudget::new(n),
            None => EnumerationBudget::default(),
        }
    }

    /// `order^count` if it fits the budget.
    pub fn admit(&self, order: usize, count: usize) -> Result<u64> {
        let states = checked_power(order as u64, count);
        match states {
            Some(s) if s <= self.max_states => Ok(s),
            _ => Err(Error::BudgetExceeded { states: format!("{order}^{count}"), budget: self.max_states }),
        }
    }

    /// Admits a product of state counts.
    pub fn admit_product(&self, a: u64, b: u64) -> Result<()> {
        match a.checked_mul(b) {
            Some(s) if s <= self.max_states => Ok(()),
            _ => Err(Error::BudgetExceeded { states: format!("{a}*{b}"), budget: self.max_states }),
        }
    }
}

fn checked_power(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

struct Deadline(Option<Instant>);

impl Deadline {
    fn new(budget: &EnumerationBudget) -> Self {
        Deadline(budget.time_limit.map(|t| Instant::now() + t))
    }

    fn check(&self, budget: &EnumerationBudget) -> Result<()> {
        match self.0 {
            Some(t) if Instant::now() > t => {
                Err(Error::BudgetExceeded { states: "wall-clock limit".into(), budget: budget.max_states })
            }
            _ => Ok(()),
        }
    }
}

const CHUNK: u64 = 1 << 14;

/// Writes the mixed-radix digits of `idx` into `out`, most significant first.
fn decode(mut idx: u64, order: u64, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % order) as u32;
        idx /= order;
    }
}

fn encode(values: &[u32], order: u64) -> u64 {
    values.iter().fold(0u64, |acc, &v| acc * order + v as u64)
}

fn increment(values: &mut [u32], order: u32) {
    for slot in values.iter_mut().rev() {
        *slot += 1;
        if *slot < order {
            return;
        }
        *slot = 0;
    }
}

/// Runs `visit` over every value vector of length `n`, in parallel chunks,
/// and returns the per-chunk results in enumeration order.
fn par_chunks<T: Send>(
    order: usize,
    n: usize,
    total: u64,
    budget: &EnumerationBudget,
    visit: impl Fn(u64, &[u32], &mut T) + Sync,
    init: impl Fn() -> T + Sync,
) -> Result<Vec<T>> {
    let deadline = Deadline::new(budget);
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    chunks
        .into_par_iter()
        .map(|c| {
            deadline.check(budget)?;
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut acc = init();
            let mut values = vec![0u32; n];
            decode(start, order as u64, &mut values);
            for idx in start..end {
                visit(idx, &values, &mut acc);
                increment(&mut values, order as u32);
            }
            Ok(acc)
        })
        .collect()
}

/// Coboundary of a value vector, recomputed from ordered faces.
struct Coboundary {
    group: Arc<FiniteGroup>,
    k: isize,
    /// For each `(k+1)`-face, its `k`-faces in removed-vertex order.
    faces: Vec<Vec<usize>>,
}

impl Coboundary {
    fn new(x: &SimplicialComplex, group: &Arc<FiniteGroup>, k: isize) -> Result<Self> {
        if k >= x.dim() {
            return Err(Error::TopDimension(k.max(0) as usize));
        }
        if !group.is_abelian() && k > 1 {
            return Err(Error::UndefinedCoboundary(k as usize));
        }
        let faces = x
            .faces(k + 1)
            .iter()
            .map(|t| (0..t.len()).map(|j| x.index_of(&t.without(j)).expect("closed under subsets")).collect())
            .collect();
        Ok(Coboundary { group: group.clone(), k, faces })
    }

    fn value(&self, f: &[u32], t: usize) -> u32 {
        let g = &self.group;
        let el = |i: usize| GroupElement::from_index(f[i] as usize);
        let sub = &self.faces[t];
        let out = if g.is_abelian() || self.k == -1 {
            let mut acc = g.identity();
            for (j, &s) in sub.iter().enumerate() {
                let v = el(s);
                acc = g.op(acc, if j % 2 == 1 { g.inv(v) } else { v });
            }
            acc
        } else if self.k == 0 {
            // edge (u, v): sub = [{v}, {u}]
            g.op(el(sub[1]), g.inv(el(sub[0])))
        } else {
            // triangle (u, v, w): sub = [vw, uw, uv]; g(uv) g(vw) g(uw)^-1
            g.op(g.op(el(sub[2]), el(sub[0])), g.inv(el(sub[1])))
        };
        out.index() as u32
    }

    fn is_zero(&self, f: &[u32]) -> bool {
        (0..self.faces.len()).all(|t| self.value(f, t) == 0)
    }

    fn weight(&self, f: &[u32], w: &[u64]) -> u128 {
        (0..self.faces.len()).filter(|&t| self.value(f, t) != 0).map(|t| w[t] as u128).sum()
    }

    fn apply(&self, f: &[u32]) -> Vec<u32> {
        (0..self.faces.len()).map(|t| self.value(f, t)).collect()
    }
}

fn int_weight(values: &[u32], w: &[u64]) -> u128 {
    values.iter().zip(w).filter(|(v, _)| **v != 0).map(|(_, w)| *w as u128).sum()
}

fn diff_weight(a: &[u32], b: &[u32], w: &[u64]) -> u128 {
    a.iter().zip(b).zip(w).filter(|((x, y), _)| x != y).map(|(_, w)| *w as u128).sum()
}

fn to_rational(num: u128, den: u64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn raw(f: &Cochain) -> Vec<u32> {
    f.values().iter().map(|v| v.index() as u32).collect()
}

fn to_cochain(x: &Arc<SimplicialComplex>, g: &Arc<FiniteGroup>, k: isize, values: &[u32]) -> Result<Cochain> {
    Cochain::from_values(x, g, k, values.iter().map(|&v| GroupElement::from_index(v as usize)).collect())
}

/// Enumerated cochain spaces in one dimension.
#[derive(Clone, Debug)]
pub struct Spaces {
    pub dim: isize,
    pub cochain_count: u64,
    /// `Z^k`, in enumeration order.
    pub cocycles: Vec<Vec<GroupElement>>,
    /// `B^k`, sorted by value vector.
    pub coboundaries: Vec<Vec<GroupElement>>,
}

impl Spaces {
    /// `B^k ⊆ Z^k`.
    pub fn inclusion_holds(&self) -> bool {
        let z: HashSet<&Vec<GroupElement>> = self.cocycles.iter().collect();
        self.coboundaries.iter().all(|b| z.contains(b))
    }

    pub fn cohomology_trivial(&self) -> bool {
        self.cocycles.len() == self.coboundaries.len()
    }
}

fn elements(v: &[u32]) -> Vec<GroupElement> {
    v.iter().map(|&i| GroupElement::from_index(i as usize)).collect()
}

/// All cocycles of `C^k`, as raw value vectors in enumeration order.
fn cocycle_list(x: &SimplicialComplex, g: &Arc<FiniteGroup>, k: isize, budget: &EnumerationBudget) -> Result<Vec<Vec<u32>>> {
    let n = x.num_faces(k);
    let total = budget.admit(g.order(), n)?;
    let order = g.order();
    if k == x.dim() {
        let chunks = par_chunks(order, n, total, budget, |_, v, acc: &mut Vec<Vec<u32>>| acc.push(v.to_vec()), Vec::new)?;
        return Ok(chunks.into_iter().flatten().collect());
    }
    let cob = Coboundary::new(x, g, k)?;
    let chunks = par_chunks(
        order,
        n,
        total,
        budget,
        |_, v, acc: &mut Vec<Vec<u32>>| {
            if cob.is_zero(v) {
                acc.push(v.to_vec());
            }
        },
        Vec::new,
    )?;
    Ok(chunks.into_iter().flatten().collect())
}

/// `B^k` as a sorted list of raw value vectors.
fn coboundary_list(x: &SimplicialComplex, g: &Arc<FiniteGroup>, k: isize, budget: &EnumerationBudget) -> Result<Vec<Vec<u32>>> {
    if k == -1 {
        return Ok(vec![vec![0]]);
    }
    let n = x.num_faces(k - 1);
    let total = budget.admit(g.order(), n)?;
    let cob = Coboundary::new(x, g, k - 1)?;
    let chunks = par_chunks(
        g.order(),
        n,
        total,
        budget,
        |_, v, acc: &mut HashSet<Vec<u32>>| {
            acc.insert(cob.apply(v));
        },
        HashSet::new,
    )?;
    let mut all: Vec<Vec<u32>> = chunks.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    all.sort();
    Ok(all)
}

/// `C^k`, `Z^k` and `B^k` by exhaustive enumeration.
pub fn enumerate_spaces(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
) -> Result<Spaces> {
    if k < -1 || k > x.dim() {
        return Err(Error::BadDimension { dim: k, max: x.dim() });
    }
    let cochain_count = budget.admit(g.order(), x.num_faces(k))?;
    let cocycles = cocycle_list(x, g, k, budget)?;
    let coboundaries = coboundary_list(x, g, k, budget)?;
    Ok(Spaces {
        dim: k,
        cochain_count,
        cocycles: cocycles.iter().map(|v| elements(v)).collect(),
        coboundaries: coboundaries.iter().map(|v| elements(v)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Cocycles,
    Coboundaries,
}

/// Exact distance with a witness.
#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub distance: Rational,
    /// The nearest member of the space. For the non-abelian distance to
    /// `B¹` this is the minimizing representative `h.f` of the orbit.
    pub nearest: Cochain,
    /// For distances to coboundaries: the lexicographically first cochain
    /// one dimension down realizing the minimum (the `h` of `f - δh` or `h.f`).
    pub lift: Option<Cochain>,
}

/// The `C⁰` action `(h.f)(u,v) = h(u) f(u,v) h(v)^-1`, on raw vectors.
struct Action {
    group: Arc<FiniteGroup>,
    /// Endpoints `(u, v)` of every edge, as vertex indices.
    ends: Vec<(usize, usize)>,
}

impl Action {
    fn new(x: &SimplicialComplex, g: &Arc<FiniteGroup>) -> Self {
        let ends = x
            .faces(1)
            .iter()
            .map(|e| {
                let v = e.vertices();
                let idx = |w: Vertex| x.index_of(&Face::vertex(w)).expect("vertex");
                (idx(v[0]), idx(v[1]))
            })
            .collect();
        Action { group: g.clone(), ends }
    }

    fn apply(&self, h: &[u32], f: &[u32]) -> Vec<u32> {
        let g = &self.group;
        let el = |i: u32| GroupElement::from_index(i as usize);
        self.ends
            .iter()
            .zip(f)
            .map(|(&(u, v), &val)| g.op(g.op(el(h[u]), el(val)), g.inv(el(h[v]))).index() as u32)
            .collect()
    }
}

/// `dist(f, Z^k)` or `dist(f, B^k)` by enumeration. For non-abelian groups
/// the distance to `B¹` is `min_h ‖h.f‖` over `h ∈ C⁰`.
pub fn exact_distance(f: &Cochain, space: Space, budget: &EnumerationBudget) -> Result<DistanceResult> {
    let x = f.complex();
    let g = f.group();
    let k = f.dim();
    let w = x.int_weights(k);
    let den = x.weight_denominator(k);
    let fv = raw(f);
    match space {
        Space::Cocycles => {
            let z = cocycle_list(x, g, k, budget)?;
            let (best, at) = z
                .iter()
                .enumerate()
                .map(|(i, zv)| (diff_weight(&fv, zv, w), i))
                .min()
                .expect("zero cochain is a cocycle");
            Ok(DistanceResult { distance: to_rational(best, den), nearest: to_cochain(x, g, k, &z[at])?, lift: None })
        }
        Space::Coboundaries => {
            if k == -1 {
                let zero = Cochain::zero(x, g, -1)?;
                return Ok(DistanceResult { distance: f.weight(), nearest: zero, lift: None });
            }
            let nonabelian_orbit = !g.is_abelian() && k == 1;
            let m = x.num_faces(k - 1);
            let total = budget.admit(g.order(), m)?;
            let cob = Coboundary::new(x, g, k - 1)?;
            let action = Action::new(x, g);
            let chunks = par_chunks(
                g.order(),
                m,
                total,
                budget,
                |idx, h, acc: &mut Option<(u128, u64)>| {
                    let d = if nonabelian_orbit {
                        int_weight(&action.apply(h, &fv), w)
                    } else {
                        diff_weight(&fv, &cob.apply(h), w)
                    };
                    if acc.is_none_or(|(b, _)| d < b) {
                        *acc = Some((d, idx));
                    }
                },
                || None,
            )?;
            let (best, idx) = chunks.into_iter().flatten().min().expect("nonempty enumeration");
            let mut h = vec![0u32; m];
            decode(idx, g.order() as u64, &mut h);
            let nearest = if nonabelian_orbit { action.apply(&h, &fv) } else { cob.apply(&h) };
            Ok(DistanceResult {
                distance: to_rational(best, den),
                nearest: to_cochain(x, g, k, &nearest)?,
                lift: Some(to_cochain(x, g, k - 1, &h)?),
            })
        }
    }
}

/// `‖f‖ = dist(f, B^k)`, by enumeration.
pub fn exact_is_minimal(f: &Cochain, budget: &EnumerationBudget) -> Result<bool> {
    Ok(exact_distance(f, Space::Coboundaries, budget)?.distance == f.weight())
}

/// Localization of `δf` at `v` for a non-abelian 1-cochain `f`:
/// `(u, w) ↦ f(v,u) f(u,w) f(w,v)` on the link of `v`.
pub fn nonabelian_link_coboundary(f: &Cochain, v: Vertex) -> Result<Cochain> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch("expected a 1-cochain".into()));
    }
    let x = f.complex();
    let g = f.group();
    let link = Arc::new(x.link(&Face::vertex(v))?);
    let values = link
        .faces(1)
        .iter()
        .map(|e| {
            let (u, w) = (e.vertices()[0], e.vertices()[1]);
            Ok(g.op(g.op(f.eval(&[v, u])?, f.eval(&[u, w])?), f.eval(&[w, v])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Cochain::from_values(&link, g, 1, values)
}

/// First vertex whose localization is not minimal, by enumeration.
///
/// Abelian groups: `f` is the cochain under test. Non-abelian groups: `f` is
/// a 1-cochain and the cochain under test is `δf`.
pub fn exact_locally_minimal(f: &Cochain, budget: &EnumerationBudget) -> Result<Option<Vertex>> {
    let x = f.complex();
    for v in x.vertices() {
        let local = if f.group().is_abelian() {
            f.localize(&Face::vertex(v))?
        } else {
            nonabelian_link_coboundary(f, v)?
        };
        if !exact_is_minimal(&local, budget)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// One exact constant with the cochain attaining it.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionConstant {
    pub k: isize,
    /// `None` is the `+∞` sentinel: nothing to minimize over.
    #[serde(serialize_with = "rational::serialize_opt")]
    pub value: Option<Rational>,
    /// Non-identity entries of the witness as `(face, element index)`.
    pub witness: Option<Vec<(Vec<Vertex>, usize)>>,
}

/// Exact expansion constants per dimension.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExpansionConstants {
    /// `min ‖δf‖ / dist(f, B^k)` over `f ∉ B^k`.
    pub coboundary: Vec<DimensionConstant>,
    /// `min ‖δf‖ / dist(f, Z^k)` over `f ∉ Z^k`.
    pub cosystolic: Vec<DimensionConstant>,
    /// `min ‖f‖` over `f ∈ Z^k ∖ B^k`.
    pub systole: Vec<DimensionConstant>,
}

fn min_opt(values: &[DimensionConstant]) -> Option<Rational> {
    values.iter().filter_map(|c| c.value.clone()).min()
}

impl ExpansionConstants {
    pub fn coboundary_min(&self) -> Option<Rational> {
        min_opt(&self.coboundary)
    }

    pub fn eps(&self) -> Option<Rational> {
        min_opt(&self.cosystolic)
    }

    pub fn mu(&self) -> Option<Rational> {
        min_opt(&self.systole)
    }
}

fn witness_entries(x: &SimplicialComplex, k: isize, values: &[u32]) -> Vec<(Vec<Vertex>, usize)> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, v)| (x.face(k, i).vertices().to_vec(), *v as usize))
        .collect()
}

/// Best ratio `num/den` so far, with the index attaining it.
#[derive(Clone, Copy)]
struct Ratio {
    num: u128,
    den: u128,
    idx: u64,
}

impl Ratio {
    fn better(&self, other: &Ratio) -> bool {
        let lhs = self.num * other.den;
        let rhs = other.num * self.den;
        lhs < rhs || (lhs == rhs && self.idx < other.idx)
    }
}

/// Minimizes `‖δf‖ / min-weight(class of f)` over classes other than the
/// class of 0, where classes are produced by `members`.
fn min_ratio_over_classes(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
    members: impl Fn(&[u32]) -> Vec<Vec<u32>>,
) -> Result<DimensionConstant> {
    let n = x.num_faces(k);
    let order = g.order() as u64;
    let total = budget.admit(g.order(), n)?;
    let w = x.int_weights(k);
    let w1 = x.int_weights(k + 1);
    let (den_k, den_k1) = (x.weight_denominator(k) as u128, x.weight_denominator(k + 1) as u128);
    let cob = Coboundary::new(x, g, k)?;
    let deadline = Deadline::new(budget);
    let mut visited = vec![false; total as usize];
    for b in members(&vec![0; n]) {
        visited[encode(&b, order) as usize] = true;
    }
    let mut best: Option<Ratio> = None;
    let mut values = vec![0u32; n];
    for idx in 0..total {
        if idx % CHUNK == 0 {
            deadline.check(budget)?;
        }
        if !visited[idx as usize] {
            let class = members(&values);
            let mut min_w = u128::MAX;
            for m in &class {
                visited[encode(m, order) as usize] = true;
                min_w = min_w.min(int_weight(m, w));
            }
            // ‖δf‖ / dist = (a/den_k1) / (b/den_k) = (a den_k) / (b den_k1)
            let cand = Ratio { num: cob.weight(&values, w1) * den_k, den: min_w * den_k1, idx };
            if best.is_none_or(|b| cand.better(&b)) {
                best = Some(cand);
            }
        }
        increment(&mut values, order as u32);
    }
    Ok(match best {
        None => DimensionConstant { k, value: None, witness: None },
        Some(r) => {
            let mut v = vec![0u32; n];
            decode(r.idx, order, &mut v);
            DimensionConstant {
                k,
                value: Some(Rational::new(r.num.into(), r.den.into())),
                witness: Some(witness_entries(x, k, &v)),
            }
        }
    })
}

fn add_raw(g: &FiniteGroup, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .map(|(&p, &q)| g.op(GroupElement::from_index(p as usize), GroupElement::from_index(q as usize)).index() as u32)
        .collect()
}

/// Class of `f` modulo `B^k`: cosets for abelian groups, `C⁰`-orbits for
/// non-abelian 1-cochains, right multiplication by constants for
/// non-abelian 0-cochains.
fn coboundary_classes<'a>(
    x: &'a SimplicialComplex,
    g: &'a Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
) -> Result<Box<dyn Fn(&[u32]) -> Vec<Vec<u32>> + 'a>> {
    if g.is_abelian() || k == -1 {
        let b = coboundary_list(x, g, k, budget)?;
        return Ok(Box::new(move |f: &[u32]| b.iter().map(|bv| add_raw(g, f, bv)).collect()));
    }
    match k {
        0 => Ok(Box::new(move |f: &[u32]| {
            g.elements()
                .map(|c| {
                    f.iter()
                        .map(|&v| g.op(GroupElement::from_index(v as usize), c).index() as u32)
                        .collect()
                })
                .collect()
        })),
        1 => {
            let m = x.num_faces(0);
            let total = budget.admit(g.order(), m)?;
            let action = Action::new(x, g);
            let order = g.order() as u32;
            Ok(Box::new(move |f: &[u32]| {
                let mut h = vec![0u32; m];
                let mut out = Vec::with_capacity(total as usize);
                for _ in 0..total {
                    out.push(action.apply(&h, f));
                    increment(&mut h, order);
                }
                out
            }))
        }
        _ => Err(Error::UndefinedCoboundary(k as usize)),
    }
}

/// Exact coboundary expansion constant in dimension `k`; `None` when every
/// cochain is a coboundary.
pub fn coboundary_expansion_constant(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
) -> Result<DimensionConstant> {
    if k < -1 || k >= x.dim() {
        return Err(Error::BadDimension { dim: k, max: x.dim() - 1 });
    }
    let classes = coboundary_classes(x, g, k, budget)?;
    min_ratio_over_classes(x, g, k, budget, classes)
}

/// Dimensions in which the coboundary operator is defined for `g`.
fn defined_dims(x: &SimplicialComplex, g: &FiniteGroup) -> std::ops::Range<isize> {
    let top = if g.is_abelian() { x.dim() } else { x.dim().min(2) };
    0..top
}

/// Coboundary expansion constants for `0 ≤ k < d`.
pub fn coboundary_expansion_constants(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    budget: &EnumerationBudget,
) -> Result<ExpansionConstants> {
    let coboundary = defined_dims(x, g).map(|k| coboundary_expansion_constant(x, g, k, budget)).collect::<Result<_>>()?;
    Ok(ExpansionConstants { coboundary, ..Default::default() })
}

fn cosystolic_dimension(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    k: isize,
    budget: &EnumerationBudget,
) -> Result<(DimensionConstant, DimensionConstant)> {
    let z = cocycle_list(x, g, k, budget)?;
    let b: HashSet<Vec<u32>> = coboundary_list(x, g, k, budget)?.into_iter().collect();
    let w = x.int_weights(k);
    let den = x.weight_denominator(k);
    let systole = z
        .iter()
        .enumerate()
        .filter(|(_, zv)| !b.contains(*zv))
        .map(|(i, zv)| (int_weight(zv, w), i))
        .min()
        .map(|(m, i)| DimensionConstant {
            k,
            value: Some(to_rational(m, den)),
            witness: Some(witness_entries(x, k, &z[i])),
        })
        .unwrap_or(DimensionConstant { k, value: None, witness: None });
    let eps = if g.is_abelian() {
        min_ratio_over_classes(x, g, k, budget, |f: &[u32]| z.iter().map(|zv| add_raw(g, f, zv)).collect())?
    } else {
        nonabelian_cosystolic_eps(x, g, k, &z, budget)?
    };
    Ok((eps, systole))
}

/// `min ‖δf‖ / dist(f, Z^k)` by scanning every pair `(f, z)`.
fn nonabelian_cosystolic_eps(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    k: isize,
    z: &[Vec<u32>],
    budget: &EnumerationBudget,
) -> Result<DimensionConstant> {
    let n = x.num_faces(k);
    let total = budget.admit(g.order(), n)?;
    budget.admit_product(total, z.len() as u64)?;
    let w = x.int_weights(k);
    let w1 = x.int_weights(k + 1);
    let (den_k, den_k1) = (x.weight_denominator(k) as u128, x.weight_denominator(k + 1) as u128);
    let cob = Coboundary::new(x, g, k)?;
    let chunks = par_chunks(
        g.order(),
        n,
        total,
        budget,
        |idx, f, acc: &mut Option<Ratio>| {
            let d = cob.weight(f, w1);
            if d == 0 {
                return;
            }
            let dist = z.iter().map(|zv| diff_weight(f, zv, w)).min().expect("cocycles exist");
            let cand = Ratio { num: d * den_k, den: dist * den_k1, idx };
            if acc.is_none_or(|b| cand.better(&b)) {
                *acc = Some(cand);
            }
        },
        || None,
    )?;
    let best = chunks.into_iter().flatten().reduce(|a, b| if b.better(&a) { b } else { a });
    Ok(match best {
        None => DimensionConstant { k, value: None, witness: None },
        Some(r) => {
            let mut v = vec![0u32; n];
            decode(r.idx, g.order() as u64, &mut v);
            DimensionConstant {
                k,
                value: Some(Rational::new(r.num.into(), r.den.into())),
                witness: Some(witness_entries(x, k, &v)),
            }
        }
    })
}

/// Exact cosystolic constants `(ε, μ)` for every `0 ≤ k < d`.
pub fn cosystolic_expansion_constants(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    budget: &EnumerationBudget,
) -> Result<ExpansionConstants> {
    let mut out = ExpansionConstants::default();
    for k in defined_dims(x, g) {
        let (eps, mu) = cosystolic_dimension(x, g, k, budget)?;
        out.cosystolic.push(eps);
        out.systole.push(mu);
    }
    Ok(out)
}

/// Coboundary and cosystolic constants together.
pub fn all_expansion_constants(
    x: &SimplicialComplex,
    g: &Arc<FiniteGroup>,
    budget: &EnumerationBudget,
) -> Result<ExpansionConstants> {
    let mut out = cosystolic_expansion_constants(x, g, budget)?;
    out.coboundary = coboundary_expansion_constants(x, g, budget)?.coboundary;
    Ok(out)
}

/// `f ∈ Z^k` recomputed from ordered faces.
pub fn exact_is_cocycle(f: &Cochain) -> Result<bool> {
    let x = f.complex();
    if f.dim() >= x.dim() {
        return Ok(true);
    }
    Ok(Coboundary::new(x, f.group(), f.dim())?.is_zero(&raw(f)))
}

/// `δf` recomputed from ordered faces.
pub fn exact_coboundary(f: &Cochain) -> Result<Cochain> {
    let x = f.complex();
    let cob = Coboundary::new(x, f.group(), f.dim())?;
    to_cochain(x, f.group(), f.dim() + 1, &cob.apply(&raw(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn triangle() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build(vec![vec![0, 1, 2]], 2).unwrap())
    }

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn triangle_spaces() {
        let x = triangle();
        let s = enumerate_spaces(&x, &z2(), 1, &EnumerationBudget::default()).unwrap();
        assert_eq!(s.cochain_count, 8);
        assert_eq!(s.cocycles.len(), 4);
        assert_eq!(s.coboundaries.len(), 4);
        assert!(s.inclusion_holds());
        let s0 = enumerate_spaces(&x, &z2(), 0, &EnumerationBudget::default()).unwrap();
        assert_eq!(s0.cocycles.len(), 2);
        assert!(s0.cohomology_trivial());
    }

    #[test]
    fn trivial_group_spaces_are_singletons() {
        let x = triangle();
        let g = Arc::new(FiniteGroup::trivial());
        let s = enumerate_spaces(&x, &g, 1, &EnumerationBudget::default()).unwrap();
        assert_eq!((s.cochain_count, s.cocycles.len(), s.coboundaries.len()), (1, 1, 1));
        let c = coboundary_expansion_constants(&x, &g, &EnumerationBudget::default()).unwrap();
        assert!(c.coboundary_min().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let x = triangle();
        let err = enumerate_spaces(&x, &z2(), 1, &EnumerationBudget::new(4)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn single_edge_distance_in_triangle() {
        let x = triangle();
        let mut f = Cochain::zero(&x, &z2(), 1).unwrap();
        f.set(0, GroupElement::from_index(1));
        let b = exact_distance(&f, Space::Coboundaries, &EnumerationBudget::default()).unwrap();
        assert_eq!(b.distance, ratio(1, 3));
        let z = exact_distance(&f, Space::Cocycles, &EnumerationBudget::default()).unwrap();
        assert_eq!(z.distance, ratio(1, 3));
        assert!(exact_is_minimal(&f, &EnumerationBudget::default()).unwrap());
    }

    #[test]
    fn simplex_constants_are_positive() {
        let x = triangle();
        let c = all_expansion_constants(&x, &z2(), &EnumerationBudget::default()).unwrap();
        assert!(c.coboundary.iter().all(|d| d.value.as_ref().is_some_and(|v| *v > ratio(0, 1))));
        assert!(c.mu().is_none());
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let mut v = vec![0u32; 4];
        decode(37, 3, &mut v);
        assert_eq!(encode(&v, 3), 37);
        increment(&mut v, 3);
        assert_eq!(encode(&v, 3), 38);
    }
}
