//! Unique-neighbor-like expansion: `δ₁`, the thin-face hierarchy, `Γ` and
//! `Υ` sets, non-local classification and the inequality checks built on
//! them.
//!
//! Every comparison is exact. Thresholds with fractional exponents are
//! [`RealPower`]s; `λ` always enters as the rational upper bound of a
//! spectral certificate.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cochain::Cochain;
use crate::complex::{Face, FaceSet, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::{self, binomial, int, pow_int, RealPower, Rational};

/// `δ_i(A)`: the `(k+1)`-faces containing exactly `i` faces of `A`.
pub fn delta_i(x: &SimplicialComplex, a: &FaceSet, i: usize) -> Result<FaceSet> {
    let k = a.dim();
    if k >= x.dim() {
        return Err(Error::DimensionTooHigh(k));
    }
    if i > (k + 2) as usize {
        return Err(Error::BadIndex(i));
    }
    let counts = containment_counts(x, a);
    let mask: Vec<bool> = counts.iter().map(|&c| c == i).collect();
    Ok(FaceSet::from_mask(k + 1, &mask))
}

/// `δ₁(A)`: the `(k+1)`-faces containing exactly one face of `A`.
pub fn delta1(x: &SimplicialComplex, a: &FaceSet) -> Result<FaceSet> {
    delta_i(x, a, 1)
}

/// Number of facets in `A` for every `(k+1)`-face.
fn containment_counts(x: &SimplicialComplex, a: &FaceSet) -> Vec<usize> {
    let k = a.dim();
    let mask = a.mask();
    (0..x.num_faces(k + 1)).map(|t| x.facets(k + 1, t).iter().filter(|&&s| mask[s]).count()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HierarchyPath {
    /// `S_i` for `i = k-1 .. -1`, thresholds `η^(2^(k-i-1))` on `S̄_(i+1)`.
    Abelian,
    /// `S_(k-1)` at `η^(1/3)` and `S_(k-2)` at `η`, both measured on `A`.
    NonAbelian,
}

/// The sets `S_i` of thin faces for a set `A ⊆ X(k)`.
#[derive(Clone, Debug)]
pub struct ThinHierarchy {
    pub k: isize,
    pub eta: Rational,
    pub path: HierarchyPath,
    support: FaceSet,
    /// `levels[i + 1] = (S_i, threshold)`.
    levels: Vec<Option<(FaceSet, RealPower)>>,
}

impl ThinHierarchy {
    pub fn new(x: &SimplicialComplex, a: &FaceSet, eta: &Rational, path: HierarchyPath) -> Result<Self> {
        check_unit_interval("eta", eta)?;
        let k = a.dim();
        let mut levels: Vec<Option<(FaceSet, RealPower)>> = vec![None; (k + 1).max(0) as usize];
        match path {
            HierarchyPath::Abelian => {
                let mut above = a.clone();
                for i in (-1..k).rev() {
                    let exponent = 1i64 << (k - i - 1);
                    let threshold = RealPower::power(eta.clone(), exponent, 1);
                    let set = thin_faces(x, &above, i, &threshold)?;
                    above = set.complement();
                    levels[(i + 1) as usize] = Some((set, threshold));
                }
            }
            HierarchyPath::NonAbelian => {
                if k < 1 {
                    return Err(Error::DimensionMismatch("the non-abelian hierarchy needs k >= 1".into()));
                }
                let t1 = RealPower::power(eta.clone(), 1, 3);
                levels[k as usize] = Some((thin_faces(x, a, k - 1, &t1)?, t1));
                let t2 = RealPower::power(eta.clone(), 1, 1);
                levels[(k - 1) as usize] = Some((thin_faces(x, a, k - 2, &t2)?, t2));
            }
        }
        Ok(ThinHierarchy { k, eta: eta.clone(), path, support: a.clone(), levels })
    }

    /// `S_i`, when part of this hierarchy.
    pub fn s(&self, i: isize) -> Option<&FaceSet> {
        if i < -1 || i >= self.k {
            return None;
        }
        self.levels[(i + 1) as usize].as_ref().map(|(s, _)| s)
    }

    /// `S̄_i = X(i) ∖ S_i`; `S̄_k` is the set `A` itself.
    pub fn s_bar(&self, i: isize) -> Option<FaceSet> {
        if i == self.k {
            return Some(self.support.clone());
        }
        self.s(i).map(FaceSet::complement)
    }

    pub fn threshold(&self, i: isize) -> Option<&RealPower> {
        if i < -1 || i >= self.k {
            return None;
        }
        self.levels[(i + 1) as usize].as_ref().map(|(_, t)| t)
    }

    pub fn support(&self) -> &FaceSet {
        &self.support
    }
}

/// `{σ ∈ X(i) : ‖B_σ‖ ≤ threshold}`.
fn thin_faces(x: &SimplicialComplex, b: &FaceSet, i: isize, threshold: &RealPower) -> Result<FaceSet> {
    let weights = x.localized_weights(b, i)?;
    let mask: Vec<bool> = weights.iter().map(|w| threshold.ge_rational(w)).collect();
    Ok(FaceSet::from_mask(i, &mask))
}

fn check_unit_interval(name: &str, x: &Rational) -> Result<()> {
    if *x <= Rational::zero() || *x >= Rational::one() {
        return Err(Error::BadParams(format!("{name} must lie in (0, 1), got {}", rational::format(x))));
    }
    Ok(())
}

/// `Γ(A)` and `Γ(A, S̄_(k-1))`.
pub fn gamma_sets(x: &SimplicialComplex, a: &FaceSet, s_bar: &FaceSet) -> Result<(FaceSet, FaceSet)> {
    let k = a.dim();
    if k >= x.dim() {
        return Err(Error::DimensionTooHigh(k));
    }
    if s_bar.dim() != k - 1 {
        return Err(Error::DimensionMismatch("S̄ must be (k-1)-dimensional".into()));
    }
    let n = x.num_faces(k + 1);
    let a_mask = a.mask();
    let s_mask = s_bar.mask();
    let mut gamma = vec![false; n];
    let mut gamma_bar = vec![false; n];
    for t in 0..n {
        for &s in x.facets(k + 1, t) {
            if a_mask[s] {
                gamma[t] = true;
                if k >= 0 && x.facets(k, s).iter().any(|&r| s_mask[r]) {
                    gamma_bar[t] = true;
                }
            }
        }
    }
    Ok((FaceSet::from_mask(k + 1, &gamma), FaceSet::from_mask(k + 1, &gamma_bar)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpsilonVariant {
    /// `(k+1)`-faces containing two faces of `A` meeting in `S_(k-1)`.
    Theorem,
    /// `(k+1)`-faces containing two `i`-faces of `S̄_i` meeting in `S_(i-1)`,
    /// for some `0 ≤ i ≤ k`.
    Hierarchy,
    /// `k`-faces of `A` containing two `(k-1)`-faces of `S̄_(k-1)` meeting
    /// in `S_(k-2)`.
    NonAbelian,
}

impl std::str::FromStr for UpsilonVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(UpsilonVariant::Theorem),
            "hierarchy" => Ok(UpsilonVariant::Hierarchy),
            "nonabelian" => Ok(UpsilonVariant::NonAbelian),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

/// Faces of dimension `outer_dim` containing two distinct faces of `inner`
/// whose intersection lies in `meet`.
fn pair_meeting_set(
    x: &SimplicialComplex,
    outer_dim: isize,
    inner: &FaceSet,
    meet: &FaceSet,
    restrict_to: Option<&FaceSet>,
) -> Vec<bool> {
    let i = inner.dim();
    let inner_mask = inner.mask();
    let meet_mask = meet.mask();
    let n = x.num_faces(outer_dim);
    let mut out = vec![false; n];
    for t in 0..n {
        if let Some(r) = restrict_to {
            if !r.contains(t) {
                continue;
            }
        }
        let subs: Vec<usize> = x.subfaces(outer_dim, t, i).into_iter().filter(|&s| inner_mask[s]).collect();
        'pairs: for (p, &s1) in subs.iter().enumerate() {
            for &s2 in &subs[p + 1..] {
                let f1 = x.face(i, s1);
                let f2 = x.face(i, s2);
                let common = f1.difference(&f1.difference(f2));
                if common.len() == f1.len() - 1 {
                    let idx = x.index_of(&common).expect("subface of a face");
                    if meet_mask[idx] {
                        out[t] = true;
                        break 'pairs;
                    }
                }
            }
        }
    }
    out
}

/// The `Υ` set of the given variant.
///
/// `Theorem` needs a hierarchy built with threshold `η` on `A` (see
/// [`theorem_thin_faces`]); `Hierarchy` needs the abelian hierarchy;
/// `NonAbelian` needs the non-abelian one.
pub fn upsilon_set(x: &SimplicialComplex, h: &ThinHierarchy, variant: UpsilonVariant) -> Result<FaceSet> {
    let k = h.k;
    let a = &h.support;
    match variant {
        UpsilonVariant::Theorem => {
            let s = h.s(k - 1).ok_or_else(|| Error::DimensionMismatch("missing S_(k-1)".into()))?;
            if k >= x.dim() {
                return Err(Error::DimensionTooHigh(k));
            }
            Ok(FaceSet::from_mask(k + 1, &pair_meeting_set(x, k + 1, a, s, None)))
        }
        UpsilonVariant::Hierarchy => {
            if h.path != HierarchyPath::Abelian {
                return Err(Error::UnknownVariant("hierarchy variant needs the abelian hierarchy".into()));
            }
            if k >= x.dim() {
                return Err(Error::DimensionTooHigh(k));
            }
            let mut acc = vec![false; x.num_faces(k + 1)];
            for i in 0..=k {
                let inner = h.s_bar(i).expect("abelian level");
                let meet = h.s(i - 1).expect("abelian level");
                for (slot, hit) in acc.iter_mut().zip(pair_meeting_set(x, k + 1, &inner, meet, None)) {
                    *slot |= hit;
                }
            }
            Ok(FaceSet::from_mask(k + 1, &acc))
        }
        UpsilonVariant::NonAbelian => {
            if h.path != HierarchyPath::NonAbelian {
                return Err(Error::UnknownVariant("non-abelian variant needs the non-abelian hierarchy".into()));
            }
            let inner = h.s_bar(k - 1).expect("non-abelian level");
            let meet = h.s(k - 2).expect("non-abelian level");
            Ok(FaceSet::from_mask(k, &pair_meeting_set(x, k, &inner, meet, Some(a))))
        }
    }
}

/// Hierarchy used by the δ₁ theorem: only `S_(k-1) = {σ : ‖A_σ‖ ≤ η}`.
pub fn theorem_thin_faces(x: &SimplicialComplex, a: &FaceSet, eta: &Rational) -> Result<ThinHierarchy> {
    check_unit_interval("eta", eta)?;
    let k = a.dim();
    let threshold = RealPower::power(eta.clone(), 1, 1);
    let mut levels = vec![None; (k + 1).max(0) as usize];
    if k >= 0 {
        levels[k as usize] = Some((thin_faces(x, a, k - 1, &threshold)?, threshold));
    }
    Ok(ThinHierarchy { k, eta: eta.clone(), path: HierarchyPath::Abelian, support: a.clone(), levels })
}

/// `f↓σ`: faces of `A = S̄_k` reachable from `σ ∈ X(i)` through a chain
/// `τ ⊃ τ_(k-1) ⊃ … ⊃ τ_(i+1) ⊃ σ` with `τ_j ∈ S̄_j`.
pub fn f_down_sigma(x: &SimplicialComplex, h: &ThinHierarchy, sigma: &Face) -> Result<FaceSet> {
    let i = sigma.dim();
    let k = h.k;
    if i >= k {
        return Err(Error::DimensionMismatch(format!("need dim σ < {k}")));
    }
    let start = x.require_index(sigma)?;
    let mut reach = vec![start];
    for j in i + 1..=k {
        let allowed = h.s_bar(j).ok_or_else(|| Error::DimensionMismatch(format!("missing S_{j}")))?;
        let mut next: Vec<usize> = reach
            .iter()
            .flat_map(|&r| x.cofacets(j - 1, r).iter().copied())
            .filter(|&c| allowed.contains(c))
            .collect();
        next.sort_unstable();
        next.dedup();
        reach = next;
    }
    FaceSet::new(x, k, reach)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonLocalVerdict {
    pub non_local: bool,
    /// `‖(A, S_(k-1))‖`.
    #[serde(serialize_with = "rational::serialize")]
    pub mutual: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub weight: Rational,
    /// `(1 - ε)‖A‖`.
    #[serde(serialize_with = "rational::serialize")]
    pub required: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub eps: Rational,
}

/// `A` is `(η, ε)`-non-local when `‖(A, S_(k-1))‖ ≥ (1-ε)‖A‖`.
pub fn classify_non_local(x: &SimplicialComplex, a: &FaceSet, eta: &Rational, eps: &Rational) -> Result<NonLocalVerdict> {
    check_unit_interval("eps", eps)?;
    let h = theorem_thin_faces(x, a, eta)?;
    let weight = a.weight(x);
    let mutual = match h.s(a.dim() - 1) {
        Some(s) => x.mutual_weight(a, s)?,
        None => weight.clone(),
    };
    let required = (Rational::one() - eps) * &weight;
    Ok(NonLocalVerdict {
        non_local: mutual >= required,
        mutual,
        weight,
        required,
        eta: eta.clone(),
        eps: eps.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeaklyNonLocalVerdict {
    pub weakly_non_local: bool,
    /// `‖S_(k-2)‖`.
    #[serde(serialize_with = "rational::serialize")]
    pub thin_weight: Rational,
    /// `1 - ε‖A‖`.
    #[serde(serialize_with = "rational::serialize")]
    pub required: Rational,
    /// `max_τ ‖A_τ‖` over `τ ∈ X(k-1)`.
    #[serde(serialize_with = "rational::serialize")]
    pub max_link_weight: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub cap: Rational,
    /// A `(k-1)`-face with `‖A_τ‖ > 1 - α`, if any.
    pub witness: Option<Vec<Vertex>>,
}

/// `A` is `(η, ε, α)`-weakly-non-local when `‖S_(k-2)‖ ≥ 1 - ε‖A‖` and
/// `‖A_τ‖ ≤ 1 - α` for every `τ ∈ X(k-1)`.
pub fn classify_weakly_non_local(
    x: &SimplicialComplex,
    a: &FaceSet,
    eta: &Rational,
    eps: &Rational,
    alpha: &Rational,
) -> Result<WeaklyNonLocalVerdict> {
    check_unit_interval("eta", eta)?;
    check_unit_interval("eps", eps)?;
    check_unit_interval("alpha", alpha)?;
    let k = a.dim();
    if k < 1 {
        return Err(Error::DimensionMismatch("weak non-locality needs k >= 1".into()));
    }
    let thin = thin_faces(x, a, k - 2, &RealPower::power(eta.clone(), 1, 1))?;
    let thin_weight = thin.weight(x);
    let required = Rational::one() - eps * a.weight(x);
    let cap = Rational::one() - alpha;
    let link_weights = x.localized_weights(a, k - 1)?;
    let mut max_link_weight = Rational::zero();
    let mut witness = None;
    for (i, w) in link_weights.iter().enumerate() {
        if *w > cap && witness.is_none() {
            witness = Some(x.face(k - 1, i).vertices().to_vec());
        }
        if *w > max_link_weight {
            max_link_weight = w.clone();
        }
    }
    Ok(WeaklyNonLocalVerdict {
        weakly_non_local: thin_weight >= required && witness.is_none(),
        thin_weight,
        required,
        max_link_weight,
        cap,
        witness,
    })
}

/// An inequality `lhs ≤ rhs` (or `lhs < rhs` when `strict`) evaluated
/// exactly, or through a rational enclosure of `rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub claim: String,
    #[serde(serialize_with = "rational::serialize")]
    pub lhs: Rational,
    /// Exact `rhs`, or the lower end of its enclosure.
    #[serde(serialize_with = "rational::serialize")]
    pub rhs: Rational,
    pub relation: &'static str,
    pub holds: bool,
    pub params: BTreeMap<String, String>,
}

impl BoundCheck {
    fn le(claim: &str, lhs: Rational, rhs: Rational, params: BTreeMap<String, String>) -> Self {
        let holds = lhs <= rhs;
        BoundCheck { claim: claim.into(), lhs, rhs, relation: "<=", holds, params }
    }

    fn ge(claim: &str, lhs: Rational, rhs: Rational, params: BTreeMap<String, String>) -> Self {
        let holds = lhs >= rhs;
        BoundCheck { claim: claim.into(), lhs, rhs, relation: ">=", holds, params }
    }

    fn lt(claim: &str, lhs: Rational, rhs: Rational, params: BTreeMap<String, String>) -> Self {
        let holds = lhs < rhs;
        BoundCheck { claim: claim.into(), lhs, rhs, relation: "<", holds, params }
    }
}

fn params(pairs: &[(&str, &Rational)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), rational::format(v))).collect()
}

/// `‖δ₁(A)‖ ≥ (1 - C(k+2,k)(λ⁺ + η + 2ε))‖A‖` for `(η, ε)`-non-local `A`.
pub fn check_delta1_theorem_abelian(
    x: &SimplicialComplex,
    a: &FaceSet,
    lambda_upper: &Rational,
    eta: &Rational,
    eps: &Rational,
) -> Result<BoundCheck> {
    let verdict = classify_non_local(x, a, eta, eps)?;
    if !verdict.non_local {
        return Err(Error::NotNonLocal);
    }
    let k = a.dim();
    let lhs = delta1(x, a)?.weight(x);
    let c = int(binomial((k + 2) as usize, k.max(0) as usize) as i64);
    let factor = Rational::one() - c * (lambda_upper + eta + int(2) * eps);
    let rhs = factor * &verdict.weight;
    Ok(BoundCheck::ge("delta1-theorem", lhs, rhs, params(&[("lambda", lambda_upper), ("eta", eta), ("eps", eps)])))
}

/// Lower bound on `‖δ₁(A)‖` from the decomposition over `(k-1)`-faces,
/// valid when `‖A_σ‖ ≤ 1 - α` for every `σ ∈ X(k-1)`:
/// `(k+1)(k+2)((1-λ)(1-α-η^(1/3))‖(A,S_(k-1))‖ - (k/(k+1) - (1-λ)α)‖A‖)`
/// with `S_(k-1)` at threshold `η^(1/3)`. Returns `None` when the premise fails.
pub fn check_delta1_decomposition(
    x: &SimplicialComplex,
    a: &FaceSet,
    lambda_upper: &Rational,
    eta: &Rational,
    alpha: &Rational,
) -> Result<Option<BoundCheck>> {
    check_unit_interval("alpha", alpha)?;
    let k = a.dim();
    if k < 1 || k >= x.dim() {
        return Err(Error::DimensionMismatch("decomposition needs 1 <= k <= d-1".into()));
    }
    let cap = Rational::one() - alpha;
    if x.localized_weights(a, k - 1)?.iter().any(|w| *w > cap) {
        return Ok(None);
    }
    let h = ThinHierarchy::new(x, a, eta, HierarchyPath::NonAbelian)?;
    let mutual = x.mutual_weight(a, h.s(k - 1).expect("level"))?;
    let weight = a.weight(x);
    // The bound decreases in η^(1/3); the upper end of an enclosure keeps it valid.
    let (_, cube_root_hi) = RealPower::power(eta.clone(), 1, 3).enclose(64);
    let one = Rational::one();
    let kk = int(k as i64);
    let inner = (&one - lambda_upper) * (&one - alpha - &cube_root_hi) * &mutual
        - (&kk / (&kk + &one) - (&one - lambda_upper) * alpha) * &weight;
    let rhs = (&kk + &one) * (&kk + int(2)) * inner;
    let lhs = delta1(x, a)?.weight(x);
    Ok(Some(BoundCheck::ge(
        "delta1-decomposition",
        lhs,
        rhs,
        params(&[("lambda", lambda_upper), ("eta", eta), ("alpha", alpha)]),
    )))
}

/// `‖δ₁(A)‖ ≥ α‖A‖` for weakly-non-local `A`, under `ε ≤ α/(3d³)`,
/// `λ⁺ ≤ ε²` and `η ≤ ε³`. Also returns the decomposition bound.
pub fn check_delta1_theorem_nonabelian(
    x: &SimplicialComplex,
    a: &FaceSet,
    lambda_upper: &Rational,
    eta: &Rational,
    eps: &Rational,
    alpha: &Rational,
) -> Result<(BoundCheck, Option<BoundCheck>)> {
    let d = int(x.dim() as i64);
    let eps_cap = alpha / (int(3) * &d * &d * &d);
    if *eps > eps_cap {
        return Err(Error::ParameterViolation(format!(
            "eps = {} exceeds alpha/(3d^3) = {}",
            rational::format(eps),
            rational::format(&eps_cap)
        )));
    }
    if *lambda_upper > eps * eps {
        return Err(Error::ParameterViolation(format!(
            "lambda = {} exceeds eps^2 = {}",
            rational::format(lambda_upper),
            rational::format(&(eps * eps))
        )));
    }
    if *eta > pow_int(eps, 3) {
        return Err(Error::ParameterViolation(format!("eta = {} exceeds eps^3", rational::format(eta))));
    }
    let verdict = classify_weakly_non_local(x, a, eta, eps, alpha)?;
    if !verdict.weakly_non_local {
        return Err(Error::NotWeaklyNonLocal);
    }
    let lhs = delta1(x, a)?.weight(x);
    let rhs = alpha * a.weight(x);
    let main = BoundCheck::ge(
        "delta1-theorem-nonabelian",
        lhs,
        rhs,
        params(&[("lambda", lambda_upper), ("eta", eta), ("eps", eps), ("alpha", alpha)]),
    );
    let decomposition = check_delta1_decomposition(x, a, lambda_upper, eta, alpha)?;
    Ok((main, decomposition))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub premise_holds: bool,
    /// Set when the premise holds but the cochain (set) is nonzero.
    pub falsified: bool,
    pub detail: String,
}

/// If `f` is an `(η, ε)`-non-local cocycle and `λ⁺ + η + 2ε ≤ 2/(d+1)²`
/// then `f = 0`.
pub fn check_vanishing_abelian(f: &Cochain, lambda_upper: &Rational, eta: &Rational, eps: &Rational) -> Result<VanishingReport> {
    let x = f.complex();
    let d = x.dim();
    let limit = Rational::new(2.into(), ((d + 1) * (d + 1)).into());
    let total = lambda_upper + eta + int(2) * eps;
    if total > limit {
        return Err(Error::ParameterViolation(format!(
            "lambda + eta + 2 eps = {} exceeds 2/(d+1)^2 = {}",
            rational::format(&total),
            rational::format(&limit)
        )));
    }
    if !f.is_cocycle()? {
        return Err(Error::BadParams("cochain is not a cocycle".into()));
    }
    let verdict = classify_non_local(x, &f.support(), eta, eps)?;
    let falsified = verdict.non_local && !f.is_zero();
    Ok(VanishingReport {
        premise_holds: verdict.non_local,
        falsified,
        detail: format!("non-local = {}, weight = {}", verdict.non_local, rational::format(&verdict.weight)),
    })
}

/// If `A` is `(η, ε, α)`-weakly-non-local with `‖δ₁(A)‖ = 0`, under the
/// parameter preconditions of the non-abelian theorem, then `A = ∅`.
pub fn check_vanishing_nonabelian(
    x: &SimplicialComplex,
    a: &FaceSet,
    lambda_upper: &Rational,
    eta: &Rational,
    eps: &Rational,
    alpha: &Rational,
) -> Result<VanishingReport> {
    match check_delta1_theorem_nonabelian(x, a, lambda_upper, eta, eps, alpha) {
        Ok(_) | Err(Error::NotWeaklyNonLocal) => {}
        Err(e) => return Err(e),
    }
    let verdict = classify_weakly_non_local(x, a, eta, eps, alpha)?;
    let empty_delta = delta1(x, a)?.is_empty();
    let premise = verdict.weakly_non_local && empty_delta;
    Ok(VanishingReport {
        premise_holds: premise,
        falsified: premise && !a.is_empty(),
        detail: format!("weakly non-local = {}, delta1 empty = {empty_delta}", verdict.weakly_non_local),
    })
}

/// `‖S̄_i‖ < η^(1 - 2^(k-i)) ‖f‖` for every `-1 ≤ i ≤ k-1`. For `f = 0`
/// both sides vanish and the non-strict form is checked.
pub fn check_claim_bound(x: &SimplicialComplex, h: &ThinHierarchy) -> Result<Vec<BoundCheck>> {
    if h.path != HierarchyPath::Abelian {
        return Err(Error::UnknownVariant("claim bound needs the abelian hierarchy".into()));
    }
    let weight = h.support.weight(x);
    let mut out = Vec::new();
    for i in -1..h.k {
        let lhs = h.s_bar(i).expect("level").weight(x);
        let exponent = 1 - (1i64 << (h.k - i));
        let rhs = pow_int(&h.eta, exponent) * &weight;
        let p = params(&[("eta", &h.eta), ("i", &int(i as i64))]);
        out.push(if weight.is_zero() {
            BoundCheck::le("non-balanced-faces", lhs, rhs, p)
        } else {
            BoundCheck::lt("non-balanced-faces", lhs, rhs, p)
        });
    }
    Ok(out)
}

/// If `‖f‖ ≤ η^(2^(k+1) - 1)` then `‖S_(-1)‖ = 1`. Returns `None` when the
/// premise fails.
pub fn check_empty_set_balanced(x: &SimplicialComplex, h: &ThinHierarchy) -> Result<Option<BoundCheck>> {
    if h.path != HierarchyPath::Abelian {
        return Err(Error::UnknownVariant("needs the abelian hierarchy".into()));
    }
    let weight = h.support.weight(x);
    let limit = pow_int(&h.eta, (1i64 << (h.k + 1)) - 1);
    if weight > limit {
        return Ok(None);
    }
    let s = h.s(-1).expect("level").weight(x);
    Ok(Some(BoundCheck::ge("empty-set-balanced", s, Rational::one(), params(&[("eta", &h.eta)]))))
}

/// `‖Υ‖ ≤ η C(k+2,2) 2^(k+2) ‖f‖` for the hierarchy variant, when
/// `λ⁺ ≤ η^(2^(d-1))`. Returns `None` when that premise fails.
pub fn check_negligible_degenerate(x: &SimplicialComplex, h: &ThinHierarchy, lambda_upper: &Rational) -> Result<Option<BoundCheck>> {
    let d = x.dim();
    if *lambda_upper > pow_int(&h.eta, 1i64 << (d - 1).max(0)) {
        return Ok(None);
    }
    let upsilon = upsilon_set(x, h, UpsilonVariant::Hierarchy)?.weight(x);
    let k = h.k;
    let rhs = &h.eta * int(binomial((k + 2) as usize, 2) as i64) * int(1i64 << (k + 2)) * h.support.weight(x);
    Ok(Some(BoundCheck::le(
        "negligible-degenerate-faces",
        upsilon,
        rhs,
        params(&[("eta", &h.eta), ("lambda", lambda_upper)]),
    )))
}

/// `‖Υ‖ ≤ C(k+1,2)(η^(1/3) + λ⁺ η^(-1/3)) ‖A‖` for the non-abelian variant.
/// The right side is replaced by a rational lower bound from an enclosure
/// of `η^(1/3)`, refined until the verdict is decided.
pub fn check_small_degenerate(x: &SimplicialComplex, h: &ThinHierarchy, lambda_upper: &Rational) -> Result<BoundCheck> {
    let upsilon = upsilon_set(x, h, UpsilonVariant::NonAbelian)?.weight(x);
    let k = h.k;
    let scale = int(binomial((k + 1) as usize, 2) as i64) * h.support.weight(x);
    let cube_root = RealPower::power(h.eta.clone(), 1, 3);
    let mut bits = 32;
    loop {
        let (lo, hi) = cube_root.enclose(bits);
        let rhs_low = &scale * (&lo + lambda_upper / &hi);
        let rhs_high = &scale * (&hi + lambda_upper / &lo);
        let p = params(&[("eta", &h.eta), ("lambda", lambda_upper)]);
        if upsilon <= rhs_low || upsilon > rhs_high || bits >= 512 {
            let mut check = BoundCheck::le("small-degenerate-faces", upsilon, rhs_low, p);
            if !check.holds && check.lhs <= rhs_high {
                // Undecided at maximum precision; only possible at exact equality.
                check.holds = true;
            }
            return Ok(check);
        }
        bits *= 2;
    }
}

/// Diagnostic for the fat-face contribution inequality at level `i`:
/// `Σ_(σ∈S̄_i) ‖(f↓σ, σ)‖ ≤ β⁻¹((k+1-i)(i+1) Σ_(σ'∈S̄_(i-1)) ‖(f↓σ', σ')‖ + ‖Υ‖)`.
pub fn check_fat_face_contribution(x: &SimplicialComplex, h: &ThinHierarchy, beta: &Rational, i: isize) -> Result<BoundCheck> {
    if beta.is_zero() {
        return Err(Error::BadParams("beta must be positive".into()));
    }
    let k = h.k;
    if i < 0 || i >= k {
        return Err(Error::BadIndex(i.max(0) as usize));
    }
    let contribution = |level: isize| -> Result<Rational> {
        let mut total = Rational::zero();
        let bar = h.s_bar(level).expect("level");
        for &s in bar.members() {
            let sigma = x.face(level, s).clone();
            let down = f_down_sigma(x, h, &sigma)?;
            let single = FaceSet::new(x, level, [s])?;
            total += x.mutual_weight(&down, &single)?;
        }
        Ok(total)
    };
    let lhs = contribution(i)?;
    let below = contribution(i - 1)?;
    let upsilon = upsilon_set(x, h, UpsilonVariant::Hierarchy)?.weight(x);
    let rhs = (int(((k + 1 - i) * (i + 1)) as i64) * below + upsilon) / beta;
    Ok(BoundCheck::le("fat-face-contribution", lhs, rhs, params(&[("eta", &h.eta), ("beta", beta)])))
}
