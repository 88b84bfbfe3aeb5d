//! Pure simplicial complexes with their induced face distributions.
//!
//! Faces are stored per level, where level `s` holds the faces with `s`
//! vertices (dimension `s - 1`). Level 0 is `{∅}`. Within a level faces are
//! sorted lexicographically and addressed by index.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, binomial, from_u64_ratio, Rational};

pub type Vertex = u32;

/// A face as a strictly ascending list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Sorts and deduplicates the given vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertex(v: Vertex) -> Self {
        Face(vec![v])
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Face::new(v)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    /// The face with the vertex at position `i` removed.
    pub fn without(&self, i: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(i);
        Face(v)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl From<&[Vertex]> for Face {
    fn from(v: &[Vertex]) -> Self {
        Face::new(v.to_vec())
    }
}

/// Number of positions at which the concatenation `sigma tau` is out of
/// ascending order, modulo 2. This is the sign of the sorting permutation.
pub fn concatenation_is_odd(sigma: &Face, tau: &Face) -> bool {
    let mut inversions = 0usize;
    for a in sigma.vertices() {
        inversions += tau.vertices().iter().filter(|b| *b < a).count();
    }
    inversions % 2 == 1
}

#[derive(Clone, Debug)]
struct Level {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    weights: Vec<Rational>,
    int_weights: Vec<u64>,
    int_denom: u64,
}

impl Level {
    fn new(faces: Vec<Face>, weights: Vec<Rational>) -> Result<Self> {
        let index = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let (int_weights, int_denom) = rational::common_denominator(&weights)
            .ok_or_else(|| Error::BadWeights("face weights do not fit a 64-bit common denominator".into()))?;
        Ok(Level { faces, index, weights, int_weights, int_denom })
    }
}

/// A pure simplicial complex of dimension `d >= -1` with rational top weights.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    dim: isize,
    uniform: bool,
    levels: Vec<Level>,
    /// `facets[s][i][j]`: index at level `s-1` of face `i` of level `s` with
    /// its `j`-th vertex removed.
    facets: Vec<Vec<Vec<usize>>>,
    /// `cofacets[s][i]`: ascending indices at level `s+1` of faces containing
    /// face `i` of level `s`.
    cofacets: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.faces == b.faces && a.weights == b.weights)
    }
}

impl SimplicialComplex {
    /// Downward closure of a uniform list of top faces with uniform weights.
    pub fn build(top_faces: Vec<Vec<Vertex>>, d: usize) -> Result<Self> {
        let n = top_faces.len();
        let weights = vec![from_u64_ratio(1, n.max(1) as u64); n];
        Self::build_weighted(top_faces, d, weights)
    }

    /// Downward closure with explicit positive rational top weights summing to 1.
    pub fn build_weighted(top_faces: Vec<Vec<Vertex>>, d: usize, weights: Vec<Rational>) -> Result<Self> {
        if top_faces.is_empty() {
            return Err(Error::EmptyInput("no top faces".into()));
        }
        if weights.len() != top_faces.len() {
            return Err(Error::BadWeights("one weight per top face required".into()));
        }
        if weights.iter().any(|w| *w <= Rational::zero()) {
            return Err(Error::BadWeights("weights must be positive".into()));
        }
        if weights.iter().fold(Rational::zero(), |a, w| a + w) != Rational::one() {
            return Err(Error::BadWeights("weights must sum to 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut tops = Vec::with_capacity(top_faces.len());
        for raw in top_faces {
            let face = Face::new(raw.clone());
            if face.len() != d + 1 || raw.len() != d + 1 {
                return Err(Error::NonUniformCardinality { face: raw, found: face.len(), expected: d + 1 });
            }
            if !seen.insert(face.clone()) {
                return Err(Error::DuplicateTopFace(face.0));
            }
            tops.push(face);
        }
        Self::from_tops(d as isize, tops, weights)
    }

    /// Builds from validated distinct top faces of size `dim + 1`.
    fn from_tops(dim: isize, tops: Vec<Face>, top_weights: Vec<Rational>) -> Result<Self> {
        let top_size = (dim + 1) as usize;
        let uniform = top_weights.iter().all(|w| *w == top_weights[0]);
        let mut acc: Vec<HashMap<Face, Rational>> = vec![HashMap::new(); top_size + 1];
        for (top, w) in tops.iter().zip(&top_weights) {
            let verts = top.vertices();
            for mask in 0u32..(1u32 << top_size) {
                let sub: Vec<Vertex> =
                    (0..top_size).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
                let s = sub.len();
                let share = w / Rational::from_integer(binomial(top_size, s).into());
                *acc[s].entry(Face(sub)).or_insert_with(Rational::zero) += share;
            }
        }
        let mut levels = Vec::with_capacity(top_size + 1);
        for map in acc {
            let mut entries: Vec<(Face, Rational)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let (faces, weights): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
            levels.push(Level::new(faces, weights)?);
        }
        let mut facets = vec![Vec::new(); top_size + 1];
        let mut cofacets = vec![Vec::new(); top_size + 1];
        for s in 0..=top_size {
            cofacets[s] = vec![Vec::new(); levels[s].faces.len()];
        }
        for s in 1..=top_size {
            let mut table = Vec::with_capacity(levels[s].faces.len());
            for (i, face) in levels[s].faces.iter().enumerate() {
                let row: Vec<usize> = (0..s).map(|j| levels[s - 1].index[&face.without(j)]).collect();
                for &f in &row {
                    cofacets[s - 1][f].push(i);
                }
                table.push(row);
            }
            facets[s] = table;
        }
        for level in &mut cofacets {
            for row in level.iter_mut() {
                row.sort_unstable();
            }
        }
        Ok(SimplicialComplex { dim, uniform, levels, facets, cofacets })
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    fn level(&self, k: isize) -> Result<&Level> {
        if k < -1 || k > self.dim {
            return Err(Error::BadDimension { dim: k, max: self.dim });
        }
        Ok(&self.levels[(k + 1) as usize])
    }

    fn lvl(&self, k: isize) -> &Level {
        self.level(k).expect("dimension in range")
    }

    /// The faces of dimension `k`, sorted lexicographically.
    pub fn faces(&self, k: isize) -> &[Face] {
        &self.lvl(k).faces
    }

    pub fn num_faces(&self, k: isize) -> usize {
        if k < -1 || k > self.dim {
            0
        } else {
            self.lvl(k).faces.len()
        }
    }

    pub fn face(&self, k: isize, i: usize) -> &Face {
        &self.lvl(k).faces[i]
    }

    pub fn index_of(&self, face: &Face) -> Option<usize> {
        let k = face.dim();
        if k > self.dim {
            return None;
        }
        self.levels[face.len()].index.get(face).copied()
    }

    pub fn require_index(&self, face: &Face) -> Result<usize> {
        self.index_of(face).ok_or_else(|| Error::UnknownFace(face.vertices().to_vec()))
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index_of(face).is_some()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        if self.dim < 0 {
            return Vec::new();
        }
        self.faces(0).iter().map(|f| f.vertices()[0]).collect()
    }

    /// `P_k` of the face with index `i`.
    pub fn weight(&self, k: isize, i: usize) -> &Rational {
        &self.lvl(k).weights[i]
    }

    pub fn weights(&self, k: isize) -> &[Rational] {
        &self.lvl(k).weights
    }

    /// Face weights of dimension `k` as integers over [`Self::weight_denominator`].
    pub fn int_weights(&self, k: isize) -> &[u64] {
        &self.lvl(k).int_weights
    }

    pub fn weight_denominator(&self, k: isize) -> u64 {
        self.lvl(k).int_denom
    }

    /// `P_k(σ)` for a face given by its vertices.
    pub fn face_weight(&self, face: &Face) -> Result<Rational> {
        let i = self.require_index(face)?;
        Ok(self.weight(face.dim(), i).clone())
    }

    /// Facets of face `i` of dimension `k`, ordered by removed vertex position.
    pub fn facets(&self, k: isize, i: usize) -> &[usize] {
        &self.facets[(k + 1) as usize][i]
    }

    /// Faces of dimension `k + 1` containing face `i` of dimension `k`.
    pub fn cofacets(&self, k: isize, i: usize) -> &[usize] {
        &self.cofacets[(k + 1) as usize][i]
    }

    /// Indices of the `l`-dimensional subfaces of face `i` of dimension `k`,
    /// in lexicographic order.
    pub fn subfaces(&self, k: isize, i: usize, l: isize) -> Vec<usize> {
        let face = self.face(k, i);
        let size = (l + 1) as usize;
        let verts = face.vertices();
        let lvl = self.lvl(l);
        let mut out = Vec::with_capacity(binomial(verts.len(), size) as usize);
        let n = verts.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let sub = Face(combo.iter().map(|&c| verts[c]).collect());
            out.push(lvl.index[&sub]);
            let mut p = size;
            while p > 0 && combo[p - 1] == n - size + p - 1 {
                p -= 1;
            }
            if p == 0 {
                return out;
            }
            combo[p - 1] += 1;
            for q in p..size {
                combo[q] = combo[q - 1] + 1;
            }
        }
    }

    /// Indices of the `l`-dimensional faces containing face `i` of dimension `k`.
    pub fn superfaces(&self, k: isize, i: usize, l: isize) -> Vec<usize> {
        let mut current = vec![i];
        for m in k..l {
            let mut next: Vec<usize> =
                current.iter().flat_map(|&c| self.cofacets(m, c).iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        current
    }

    /// The link `X_σ = { τ ∖ σ : σ ⊆ τ ∈ X }` with the conditional top distribution.
    pub fn link(&self, sigma: &Face) -> Result<SimplicialComplex> {
        let k = sigma.dim();
        let i = self.require_index(sigma)?;
        let tops = self.superfaces(k, i, self.dim);
        let link_dim = self.dim - sigma.len() as isize;
        let total = tops.iter().fold(Rational::zero(), |a, &t| a + self.weight(self.dim, t));
        let faces = tops.iter().map(|&t| self.face(self.dim, t).difference(sigma)).collect();
        let weights = tops.iter().map(|&t| self.weight(self.dim, t) / &total).collect();
        Self::from_tops(link_dim, faces, weights)
    }

    /// The `j`-skeleton with the uniform distribution on its `j`-faces.
    pub fn skeleton(&self, j: isize) -> Result<SimplicialComplex> {
        if j < 0 || j > self.dim {
            return Err(Error::BadDimension { dim: j, max: self.dim });
        }
        if j == self.dim {
            return Ok(self.clone());
        }
        let tops: Vec<Face> = self.faces(j).to_vec();
        let w = from_u64_ratio(1, tops.len() as u64);
        Self::from_tops(j, tops, vec![w; self.num_faces(j)])
    }

    /// Maximum number of top faces containing a single vertex.
    pub fn degree_bound(&self) -> usize {
        if self.dim < 0 {
            return 0;
        }
        (0..self.num_faces(0)).map(|v| self.superfaces(0, v, self.dim).len()).max().unwrap_or(0)
    }

    /// `‖A‖ = Σ_{a ∈ A} P_k(a)`.
    pub fn set_weight(&self, set: &FaceSet) -> Rational {
        let lvl = self.lvl(set.dim);
        let num: u128 = set.members.iter().map(|&i| lvl.int_weights[i] as u128).sum();
        Rational::new(num.into(), lvl.int_denom.into())
    }

    /// `‖(A, B)‖`: probability that a `P_k`-random face lies in `A` and a
    /// uniformly random `ℓ`-subface of it lies in `B`.
    pub fn mutual_weight(&self, a: &FaceSet, b: &FaceSet) -> Result<Rational> {
        self.check_set(a)?;
        self.check_set(b)?;
        if b.dim >= a.dim {
            return Err(Error::DimensionMismatch(format!(
                "mutual weight needs l < k, got k = {}, l = {}",
                a.dim, b.dim
            )));
        }
        let lvl = self.lvl(a.dim);
        let mut num: u128 = 0;
        for &m in &a.members {
            let hits = self.subfaces(a.dim, m, b.dim).into_iter().filter(|s| b.contains(*s)).count();
            num += lvl.int_weights[m] as u128 * hits as u128;
        }
        let denom = lvl.int_denom as u128 * binomial((a.dim + 1) as usize, (b.dim + 1) as usize) as u128;
        Ok(Rational::new(num.into(), denom.into()))
    }

    /// `‖(A, {σ})‖` for every `σ ∈ X(l)`, as integers over a shared denominator.
    fn mutual_weight_numerators(&self, a: &FaceSet, l: isize) -> (Vec<u128>, u128) {
        let lvl = self.lvl(a.dim);
        let mut num = vec![0u128; self.num_faces(l)];
        for &m in &a.members {
            for s in self.subfaces(a.dim, m, l) {
                num[s] += lvl.int_weights[m] as u128;
            }
        }
        let denom = lvl.int_denom as u128 * binomial((a.dim + 1) as usize, (l + 1) as usize) as u128;
        (num, denom)
    }

    /// `‖(A, {σ})‖` for every `σ ∈ X(l)`.
    pub fn mutual_weights_by_face(&self, a: &FaceSet, l: isize) -> Result<Vec<Rational>> {
        self.check_set(a)?;
        if l >= a.dim || l < -1 {
            return Err(Error::DimensionMismatch(format!("need -1 <= l < k = {}, got {l}", a.dim)));
        }
        let (num, denom) = self.mutual_weight_numerators(a, l);
        Ok(num.into_iter().map(|n| Rational::new(n.into(), denom.into())).collect())
    }

    /// `‖A_σ‖ = ‖(A, {σ})‖ / P_l(σ)` for every `σ ∈ X(l)`; this equals the
    /// weight of the localized set inside the link of `σ`.
    pub fn localized_weights(&self, a: &FaceSet, l: isize) -> Result<Vec<Rational>> {
        let mutual = self.mutual_weights_by_face(a, l)?;
        Ok(mutual.into_iter().zip(self.weights(l)).map(|(m, w)| m / w).collect())
    }

    fn check_set(&self, set: &FaceSet) -> Result<()> {
        if set.dim < -1 || set.dim > self.dim || set.universe != self.num_faces(set.dim) {
            return Err(Error::Mismatch(format!(
                "face set of dimension {} does not belong to this complex",
                set.dim
            )));
        }
        Ok(())
    }

    /// Verifies downward closure, purity, `X(-1) = {∅}` and that each `P_k` sums to 1.
    pub fn check_invariants(&self) -> Result<()> {
        if self.levels[0].faces != vec![Face::empty()] {
            return Err(Error::DimensionMismatch("X(-1) must be {∅}".into()));
        }
        for k in -1..=self.dim {
            let total = self.weights(k).iter().fold(Rational::zero(), |a, w| a + w);
            if total != Rational::one() {
                return Err(Error::BadWeights(format!("P_{k} sums to {}", rational::format(&total))));
            }
            for (i, face) in self.faces(k).iter().enumerate() {
                if k >= 0 {
                    for j in 0..face.len() {
                        if !self.contains(&face.without(j)) {
                            return Err(Error::UnknownFace(face.without(j).0));
                        }
                    }
                }
                if self.superfaces(k, i, self.dim).is_empty() {
                    return Err(Error::DimensionMismatch(format!("face {face} is not in a top face")));
                }
            }
        }
        Ok(())
    }

    /// Structure of the link of `σ` needed to localize cochains into it.
    pub fn link_view(&self, sigma: &Face) -> Result<LinkView> {
        let link = self.link(sigma)?;
        let shift = sigma.len();
        let mut join = Vec::with_capacity((link.dim + 2) as usize);
        for k in -1..=link.dim {
            let row = link
                .faces(k)
                .iter()
                .map(|tau| {
                    let idx = self.index_of(&sigma.union(tau)).expect("joined face exists");
                    (idx, concatenation_is_odd(sigma, tau))
                })
                .collect();
            join.push(row);
        }
        Ok(LinkView { sigma: sigma.clone(), shift, link: Arc::new(link), join })
    }
}

/// A link together with the map `τ ↦ σ ∪ τ` back into the parent complex.
#[derive(Clone, Debug)]
pub struct LinkView {
    pub sigma: Face,
    shift: usize,
    pub link: Arc<SimplicialComplex>,
    /// `join[k+1][i]`: index of `σ ∪ τ_i` among faces of dimension
    /// `k + |σ|` of the parent, and whether the concatenation `σ τ_i` is an
    /// odd reordering of that face.
    join: Vec<Vec<(usize, bool)>>,
}

impl LinkView {
    /// Parent dimension of `σ ∪ τ` for `τ` of link dimension `k`.
    pub fn parent_dim(&self, k: isize) -> isize {
        k + self.shift as isize
    }

    pub fn join(&self, k: isize, i: usize) -> (usize, bool) {
        self.join[(k + 1) as usize][i]
    }
}

/// A subset of `X(k)` given by face indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceSet {
    dim: isize,
    universe: usize,
    members: Vec<usize>,
}

impl FaceSet {
    pub fn new(complex: &SimplicialComplex, dim: isize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        complex.level(dim)?;
        let universe = complex.num_faces(dim);
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= universe) {
            return Err(Error::BadIndex(bad));
        }
        Ok(FaceSet { dim, universe, members })
    }

    pub fn from_faces(complex: &SimplicialComplex, dim: isize, faces: &[Face]) -> Result<Self> {
        let mut members = Vec::with_capacity(faces.len());
        for f in faces {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch(format!("face {f} is not {dim}-dimensional")));
            }
            members.push(complex.require_index(f)?);
        }
        Self::new(complex, dim, members)
    }

    pub fn empty(complex: &SimplicialComplex, dim: isize) -> Self {
        Self::new(complex, dim, []).expect("valid dimension")
    }

    pub fn full(complex: &SimplicialComplex, dim: isize) -> Self {
        let n = complex.num_faces(dim);
        Self::new(complex, dim, 0..n).expect("valid dimension")
    }

    pub(crate) fn from_mask(dim: isize, mask: &[bool]) -> Self {
        let members = mask.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect();
        FaceSet { dim, universe: mask.len(), members }
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.universe];
        for &i in &self.members {
            m[i] = true;
        }
        m
    }

    pub fn complement(&self) -> FaceSet {
        let mask: Vec<bool> = self.mask().into_iter().map(|b| !b).collect();
        Self::from_mask(self.dim, &mask)
    }

    pub fn weight(&self, complex: &SimplicialComplex) -> Rational {
        complex.set_weight(self)
    }

    pub fn faces<'a>(&'a self, complex: &'a SimplicialComplex) -> impl Iterator<Item = &'a Face> + 'a {
        self.members.iter().map(move |&i| complex.face(self.dim, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn k4() -> SimplicialComplex {
        SimplicialComplex::build(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 2).unwrap()
    }

    #[test]
    fn single_triangle_closure() {
        let x = SimplicialComplex::build(vec![vec![0, 1, 2]], 2).unwrap();
        assert_eq!(x.faces(-1), &[Face::empty()]);
        assert_eq!(x.faces(0).len(), 3);
        let edges: Vec<_> = x.faces(1).iter().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        x.check_invariants().unwrap();
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(SimplicialComplex::build(vec![], 2), Err(Error::EmptyInput(_))));
        assert!(matches!(
            SimplicialComplex::build(vec![vec![0, 1, 2], vec![0, 1]], 2),
            Err(Error::NonUniformCardinality { .. })
        ));
        assert!(matches!(
            SimplicialComplex::build(vec![vec![0, 0, 1]], 2),
            Err(Error::NonUniformCardinality { .. })
        ));
        assert!(matches!(
            SimplicialComplex::build(vec![vec![0, 1, 2], vec![2, 1, 0]], 2),
            Err(Error::DuplicateTopFace(_))
        ));
    }

    #[test]
    fn tetrahedron_weights() {
        let x = SimplicialComplex::build(vec![vec![0, 1, 2, 3]], 3).unwrap();
        assert!(x.weights(2).iter().all(|w| *w == ratio(1, 4)));
        assert!(x.weights(1).iter().all(|w| *w == ratio(1, 6)));
        assert_eq!(x.face_weight(&Face::vertex(2)).unwrap(), ratio(1, 4));
        assert_eq!(x.face_weight(&Face::empty()).unwrap(), ratio(1, 1));
        assert_eq!(x.degree_bound(), 1);
    }

    #[test]
    fn k4_counts_and_links() {
        let x = k4();
        assert_eq!((x.num_faces(2), x.num_faces(1), x.num_faces(0)), (4, 6, 4));
        assert_eq!(x.face_weight(&Face::new(vec![0, 1])).unwrap(), ratio(1, 6));
        assert_eq!(x.degree_bound(), 3);
        let l = x.link(&Face::vertex(0)).unwrap();
        assert_eq!(l.dim(), 1);
        let edges: Vec<_> = l.faces(1).iter().map(|f| f.vertices().to_vec()).collect();
        assert_eq!(edges, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(x.link(&Face::empty()).unwrap(), x);
        assert!(matches!(x.link(&Face::new(vec![0, 5])), Err(Error::UnknownFace(_))));
    }

    #[test]
    fn top_face_link_is_empty_complex() {
        let x = k4();
        let l = x.link(&Face::new(vec![0, 1, 2])).unwrap();
        assert_eq!(l.dim(), -1);
        assert_eq!(l.faces(-1), &[Face::empty()]);
    }

    #[test]
    fn skeletons() {
        let t = SimplicialComplex::build(vec![vec![0, 1, 2, 3]], 3).unwrap();
        assert_eq!(t.skeleton(2).unwrap(), k4());
        assert_eq!(t.skeleton(3).unwrap(), t);
        let v = t.skeleton(0).unwrap();
        assert_eq!(v.dim(), 0);
        assert_eq!(v.num_faces(0), 4);
        assert!(t.skeleton(4).is_err());
    }

    #[test]
    fn glued_tetrahedra_degree() {
        let x = SimplicialComplex::build(vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]], 3).unwrap();
        assert_eq!(x.degree_bound(), 2);
    }

    #[test]
    fn mutual_weight_examples() {
        let x = k4();
        let a = FaceSet::from_faces(&x, 1, &[Face::new(vec![0, 1])]).unwrap();
        let b = FaceSet::from_faces(&x, 0, &[Face::vertex(0)]).unwrap();
        assert_eq!(x.mutual_weight(&a, &b).unwrap(), ratio(1, 12));
        assert_eq!(x.mutual_weight(&a, &FaceSet::full(&x, 0)).unwrap(), a.weight(&x));
        assert!(x.mutual_weight(&b, &a).is_err());
    }

    #[test]
    fn subfaces_are_lexicographic() {
        let x = SimplicialComplex::build(vec![vec![0, 1, 2, 3]], 3).unwrap();
        let subs = x.subfaces(3, 0, 1);
        let faces: Vec<_> = subs.iter().map(|&i| x.face(1, i).vertices().to_vec()).collect();
        assert_eq!(faces, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(x.subfaces(3, 0, -1), vec![0]);
        assert_eq!(x.subfaces(3, 0, 3), vec![0]);
    }

    #[test]
    fn concatenation_sign() {
        assert!(!concatenation_is_odd(&Face::vertex(0), &Face::new(vec![1, 2])));
        assert!(concatenation_is_odd(&Face::vertex(1), &Face::new(vec![0, 2])));
        assert!(!concatenation_is_odd(&Face::vertex(2), &Face::new(vec![0, 1])));
    }
}
