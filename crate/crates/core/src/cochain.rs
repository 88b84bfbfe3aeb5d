//! Group-valued antisymmetric cochains.
//!
//! A cochain stores one value per canonical (ascending) face. Evaluation on
//! another ordering applies the sign of the sorting permutation: the value
//! itself for even orderings, its inverse for odd ones. For non-abelian
//! groups this is only meaningful up to dimension 2.
//!
//! Dimension -1 is the augmentation: a single value on `∅`, whose
//! coboundary is the constant 0-cochain.

use std::sync::Arc;

use rand::Rng;

use crate::complex::{Face, FaceSet, LinkView, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Cochain {
    complex: Arc<SimplicialComplex>,
    group: Arc<FiniteGroup>,
    dim: isize,
    values: Vec<GroupElement>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.values == other.values && *self.group == *other.group
    }
}

/// Sign of the permutation sorting `ordered`, and the sorted face.
fn sort_parity(ordered: &[Vertex]) -> (Face, bool) {
    let mut inversions = 0usize;
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            if ordered[i] > ordered[j] {
                inversions += 1;
            }
        }
    }
    (Face::new(ordered.to_vec()), inversions % 2 == 1)
}

impl Cochain {
    pub fn zero(complex: &Arc<SimplicialComplex>, group: &Arc<FiniteGroup>, dim: isize) -> Result<Self> {
        if dim < -1 || dim > complex.dim() {
            return Err(Error::BadDimension { dim, max: complex.dim() });
        }
        Ok(Cochain {
            complex: complex.clone(),
            group: group.clone(),
            dim,
            values: vec![GroupElement::IDENTITY; complex.num_faces(dim)],
        })
    }

    pub fn from_values(
        complex: &Arc<SimplicialComplex>,
        group: &Arc<FiniteGroup>,
        dim: isize,
        values: Vec<GroupElement>,
    ) -> Result<Self> {
        let mut c = Self::zero(complex, group, dim)?;
        if values.len() != c.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} faces of dimension {dim}",
                values.len(),
                c.values.len()
            )));
        }
        for v in &values {
            group.element(v.index())?;
        }
        c.values = values;
        Ok(c)
    }

    /// Builds a cochain from values on ordered faces, converting each to the
    /// canonical orientation. Faces not listed get the identity.
    pub fn from_ordered(
        complex: &Arc<SimplicialComplex>,
        group: &Arc<FiniteGroup>,
        dim: isize,
        entries: &[(Vec<Vertex>, GroupElement)],
    ) -> Result<Self> {
        let mut c = Self::zero(complex, group, dim)?;
        let mut set = vec![false; c.values.len()];
        for (ordered, value) in entries {
            group.element(value.index())?;
            let (face, odd) = sort_parity(ordered);
            if face.len() != ordered.len() || face.dim() != dim {
                return Err(Error::DimensionMismatch(format!("{ordered:?} is not an ordered {dim}-face")));
            }
            let idx = complex.require_index(&face)?;
            if odd && !group.is_abelian() && dim >= 3 {
                return Err(Error::NonAbelianOrientation { dim: dim as usize });
            }
            let canonical = if odd { group.inv(*value) } else { *value };
            if set[idx] && c.values[idx] != canonical {
                return Err(Error::InconsistentOrientation(face.vertices().to_vec()));
            }
            set[idx] = true;
            c.values[idx] = canonical;
        }
        Ok(c)
    }

    /// A random cochain: each face independently non-identity with
    /// probability `density`, with a uniformly random non-identity value.
    pub fn random<R: Rng>(
        complex: &Arc<SimplicialComplex>,
        group: &Arc<FiniteGroup>,
        dim: isize,
        density: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut c = Self::zero(complex, group, dim)?;
        if group.order() > 1 {
            for v in &mut c.values {
                if rng.random_bool(density) {
                    *v = GroupElement::from_index(rng.random_range(1..group.order()));
                }
            }
        }
        Ok(c)
    }

    /// A uniformly random cochain over all of `C^k`.
    pub fn uniform<R: Rng>(
        complex: &Arc<SimplicialComplex>,
        group: &Arc<FiniteGroup>,
        dim: isize,
        rng: &mut R,
    ) -> Result<Self> {
        let mut c = Self::zero(complex, group, dim)?;
        for v in &mut c.values {
            *v = GroupElement::from_index(rng.random_range(0..group.order()));
        }
        Ok(c)
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn value(&self, i: usize) -> GroupElement {
        self.values[i]
    }

    pub fn set(&mut self, i: usize, value: GroupElement) {
        self.values[i] = value;
    }

    /// Value on the canonical ordering of `face`.
    pub fn value_at(&self, face: &Face) -> Result<GroupElement> {
        if face.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!("face {face} is not {}-dimensional", self.dim)));
        }
        Ok(self.values[self.complex.require_index(face)?])
    }

    /// Antisymmetric evaluation on an ordered face.
    pub fn eval(&self, ordered: &[Vertex]) -> Result<GroupElement> {
        let (face, odd) = sort_parity(ordered);
        if face.len() != ordered.len() {
            return Err(Error::UnknownFace(ordered.to_vec()));
        }
        let value = self.value_at(&face)?;
        if !odd {
            return Ok(value);
        }
        if !self.group.is_abelian() && self.dim >= 3 {
            return Err(Error::NonAbelianOrientation { dim: self.dim as usize });
        }
        Ok(self.group.inv(value))
    }

    pub fn support(&self) -> FaceSet {
        let mask: Vec<bool> = self.values.iter().map(|v| !v.is_identity()).collect();
        FaceSet::from_mask(self.dim, &mask)
    }

    /// `‖f‖`: `P_k`-mass of faces with non-identity value.
    pub fn weight(&self) -> Rational {
        self.complex.set_weight(&self.support())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_identity())
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if !Arc::ptr_eq(&self.complex, &other.complex) && *self.complex != *other.complex {
            return Err(Error::Mismatch("cochains live on different complexes".into()));
        }
        if *self.group != *other.group {
            return Err(Error::Mismatch("cochains take values in different groups".into()));
        }
        if self.dim != other.dim {
            return Err(Error::Mismatch(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// `dist(f, g)`: weight of the faces where `f` and `g` differ. This is
    /// `‖f - g‖` for abelian groups and `‖g f^-1‖` in general.
    pub fn distance(&self, other: &Cochain) -> Result<Rational> {
        self.check_compatible(other)?;
        let mask: Vec<bool> = self.values.iter().zip(&other.values).map(|(a, b)| a != b).collect();
        Ok(self.complex.set_weight(&FaceSet::from_mask(self.dim, &mask)))
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(GroupElement, GroupElement) -> GroupElement) -> Result<Cochain> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    /// Pointwise product `f g` (the sum `f + g` for abelian groups).
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        let g = self.group.clone();
        self.zip_with(other, |a, b| g.op(a, b))
    }

    /// Pointwise `f g^-1` (the difference `f - g` for abelian groups).
    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        let g = self.group.clone();
        self.zip_with(other, |a, b| g.div(a, b))
    }

    /// Pointwise inverse.
    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|v| self.group.inv(*v)).collect();
        Cochain { values, ..self.clone() }
    }

    /// Abelian coboundary `δf(σ) = Σ_i (-1)^i f(σ ∖ v_i)`.
    pub fn coboundary(&self) -> Result<Cochain> {
        if !self.group.is_abelian() {
            return Err(Error::NonAbelianGroup(self.group.spec().to_string()));
        }
        if self.dim >= self.complex.dim() {
            return Err(Error::TopDimension(self.dim.max(0) as usize));
        }
        let g = &self.group;
        let k1 = self.dim + 1;
        let values = (0..self.complex.num_faces(k1))
            .map(|i| {
                self.complex.facets(k1, i).iter().enumerate().fold(g.identity(), |acc, (j, &facet)| {
                    let v = self.values[facet];
                    let odd = j % 2 == 1 && !cfg!(feature = "mutate-coboundary-sign");
                    g.op(acc, if odd { g.inv(v) } else { v })
                })
            })
            .collect();
        Ok(Cochain { complex: self.complex.clone(), group: self.group.clone(), dim: k1, values })
    }

    /// Non-abelian coboundary: `δf(u,v) = f(u) f(v)^-1` on 0-cochains and
    /// `δg(u,v,w) = g(u,v) g(v,w) g(w,u)` on 1-cochains.
    pub fn coboundary_nonabelian(&self) -> Result<Cochain> {
        if self.dim >= self.complex.dim() {
            return Err(Error::TopDimension(self.dim.max(0) as usize));
        }
        let g = &self.group;
        let k1 = self.dim + 1;
        let n = self.complex.num_faces(k1);
        let values: Vec<GroupElement> = match self.dim {
            0 => (0..n)
                .map(|i| {
                    let f = self.complex.facets(1, i);
                    g.div(self.values[f[1]], self.values[f[0]])
                })
                .collect(),
            1 => (0..n)
                .map(|i| {
                    // facets of (u,v,w): [vw, uw, uv]
                    let f = self.complex.facets(2, i);
                    let uv = self.values[f[2]];
                    let vw = self.values[f[0]];
                    let wu = g.inv(self.values[f[1]]);
                    g.op(g.op(uv, vw), wu)
                })
                .collect(),
            d => return Err(Error::UndefinedCoboundary(d.max(0) as usize)),
        };
        Ok(Cochain { complex: self.complex.clone(), group: self.group.clone(), dim: k1, values })
    }

    /// The coboundary appropriate to the group: abelian in any dimension,
    /// non-abelian in dimensions 0 and 1.
    pub fn delta(&self) -> Result<Cochain> {
        if self.group.is_abelian() {
            self.coboundary()
        } else {
            self.coboundary_nonabelian()
        }
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        if !self.group.is_abelian() && !(0..=1).contains(&self.dim) {
            return Err(Error::UndefinedCoboundary(self.dim.max(0) as usize));
        }
        if self.dim >= self.complex.dim() {
            return Ok(true);
        }
        Ok(self.delta()?.is_zero())
    }

    /// The action `(f.g)(u,v) = f(u) g(u,v) f(v)^-1` of a 0-cochain `f` on a
    /// 1-cochain `g`.
    pub fn act(f: &Cochain, g: &Cochain) -> Result<Cochain> {
        if f.dim != 0 || g.dim != 1 {
            return Err(Error::Mismatch(format!("act needs a 0- and a 1-cochain, got {} and {}", f.dim, g.dim)));
        }
        if *f.group != *g.group || (!Arc::ptr_eq(&f.complex, &g.complex) && *f.complex != *g.complex) {
            return Err(Error::Mismatch("act operands live on different complexes or groups".into()));
        }
        let grp = &g.group;
        let values = (0..g.values.len())
            .map(|i| {
                let fc = g.complex.facets(1, i);
                let (u, v) = (fc[1], fc[0]);
                grp.op(grp.op(f.values[u], g.values[i]), grp.inv(f.values[v]))
            })
            .collect();
        Ok(Cochain { values, ..g.clone() })
    }

    /// Localization `f_σ(τ) = f(σ τ)` on the link of `σ`.
    pub fn localize(&self, sigma: &Face) -> Result<Cochain> {
        let view = self.complex.link_view(sigma)?;
        self.localize_with(&view)
    }

    /// Localization into a precomputed link view.
    pub fn localize_with(&self, view: &LinkView) -> Result<Cochain> {
        let k = self.dim - view.sigma.len() as isize;
        if k < -1 || view.sigma.dim() >= self.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot localize a {}-cochain at a {}-face",
                self.dim,
                view.sigma.dim()
            )));
        }
        let nonabelian_high = !self.group.is_abelian() && self.dim >= 3;
        let mut values = Vec::with_capacity(view.link.num_faces(k));
        for i in 0..view.link.num_faces(k) {
            let (idx, odd) = view.join(k, i);
            let v = self.values[idx];
            if odd && nonabelian_high {
                return Err(Error::NonAbelianOrientation { dim: self.dim as usize });
            }
            values.push(if odd { self.group.inv(v) } else { v });
        }
        Ok(Cochain { complex: view.link.clone(), group: self.group.clone(), dim: k, values })
    }

    /// Restriction `f^v(σ) = f(σ)` for `σ` in the link of the vertex `v`.
    pub fn restrict(&self, v: Vertex) -> Result<Cochain> {
        let link = self.complex.link(&Face::vertex(v))?;
        if self.dim > link.dim() {
            return Err(Error::DimensionMismatch(format!(
                "a {}-cochain cannot be restricted to a {}-dimensional link",
                self.dim,
                link.dim()
            )));
        }
        let values = link.faces(self.dim).iter().map(|f| self.values[self.complex.index_of(f).expect("link face")]).collect();
        Ok(Cochain { complex: Arc::new(link), group: self.group.clone(), dim: self.dim, values })
    }

    /// Entries `(canonical face, value)` with non-identity value.
    pub fn entries(&self) -> impl Iterator<Item = (&Face, GroupElement)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_identity())
            .map(move |(i, v)| (self.complex.face(self.dim, i), *v))
    }

    /// The same values viewed on an equal complex behind another handle.
    pub fn rebind(&self, complex: &Arc<SimplicialComplex>) -> Result<Cochain> {
        if **complex != *self.complex {
            return Err(Error::Mismatch("complexes differ".into()));
        }
        Ok(Cochain { complex: complex.clone(), ..self.clone() })
    }
}
