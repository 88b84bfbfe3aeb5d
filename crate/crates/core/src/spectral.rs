//! Walk spectra of underlying graphs and local spectral expansion.
//!
//! `λ` of a connected weighted graph is the largest absolute value of a
//! nontrivial eigenvalue of its random-walk operator. The float estimate is
//! paired with a certified upper bound `λ⁺` built from the residual of the
//! computed eigendecomposition; theorem checks only ever use `λ⁺`, turned
//! into a rational by rounding up.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Graphs up to this many vertices use a dense eigensolver.
pub const DENSE_LIMIT: usize = 2000;

const CERT_BITS: u32 = 40;

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertices: Vec<Vertex>,
    vertex_weights: Vec<Rational>,
    edges: Vec<(usize, usize)>,
    edge_weights: Vec<Rational>,
}

impl WeightedGraph {
    /// Underlying graph of a complex of dimension at least 1: its vertices
    /// and edges weighted by `P_0` and `P_1`.
    pub fn underlying(x: &SimplicialComplex) -> Result<Self> {
        if x.dim() < 1 {
            return Err(Error::DimensionTooLow(x.dim()));
        }
        let vertices = x.vertices();
        let edges = (0..x.num_faces(1))
            .map(|i| {
                let f = x.facets(1, i);
                (f[1], f[0])
            })
            .collect();
        Ok(WeightedGraph {
            vertices,
            vertex_weights: x.weights(0).to_vec(),
            edges,
            edge_weights: x.weights(1).to_vec(),
        })
    }

    /// A graph from explicit edges; vertex weights are half the incident
    /// edge weight. Edge weights must sum to 1.
    pub fn from_edges(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>, edge_weights: Vec<Rational>) -> Result<Self> {
        let mut vertex_weights = vec![Rational::from_integer(0.into()); vertices.len()];
        let half = rational::ratio(1, 2);
        for (&(u, v), w) in edges.iter().zip(&edge_weights) {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::BadIndex(u.max(v)));
            }
            vertex_weights[u] += w * &half;
            vertex_weights[v] += w * &half;
        }
        Ok(WeightedGraph { vertices, vertex_weights, edges, edge_weights })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_weights(&self) -> &[Rational] {
        &self.vertex_weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_weights(&self) -> &[Rational] {
        &self.edge_weights
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Degree-normalized symmetric walk matrix `D^-1/2 W D^-1/2`, which has
    /// the same spectrum as the random-walk operator.
    fn normalized_matrix(&self) -> DMatrix<f64> {
        let n = self.vertices.len();
        let deg: Vec<f64> = self.vertex_weights.iter().map(|w| 2.0 * rational::to_f64(w)).collect();
        let mut m = DMatrix::zeros(n, n);
        for (&(u, v), w) in self.edges.iter().zip(&self.edge_weights) {
            let x = rational::to_f64(w) / (deg[u] * deg[v]).sqrt();
            m[(u, v)] += x;
            m[(v, u)] += x;
        }
        m
    }

    /// Exact rational weights `(‖E(A, Ā)‖, ‖E(A)‖)` of cut and internal
    /// edges for the vertex subset `a` (given as graph vertex ids).
    pub fn cheeger_quantities(&self, a: &[Vertex]) -> Result<(Rational, Rational)> {
        let mut inside = vec![false; self.vertices.len()];
        for v in a {
            let i = self.vertices.iter().position(|x| x == v).ok_or(Error::UnknownVertex(*v))?;
            inside[i] = true;
        }
        Ok(self.cheeger_by_mask(&inside))
    }

    /// As [`Self::cheeger_quantities`] with membership given per vertex index.
    pub fn cheeger_by_mask(&self, inside: &[bool]) -> (Rational, Rational) {
        let mut cut = Rational::from_integer(0.into());
        let mut internal = Rational::from_integer(0.into());
        for (&(u, v), w) in self.edges.iter().zip(&self.edge_weights) {
            match (inside[u], inside[v]) {
                (true, true) => internal += w,
                (true, false) | (false, true) => cut += w,
                _ => {}
            }
        }
        (cut, internal)
    }

    /// `‖A‖` for a vertex mask.
    pub fn mask_weight(&self, inside: &[bool]) -> Rational {
        self.vertex_weights
            .iter()
            .zip(inside)
            .filter(|(_, b)| **b)
            .fold(Rational::from_integer(0.into()), |a, (w, _)| a + w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralMethod {
    DenseEigensolve,
    PowerIteration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCertificate {
    /// Estimated max absolute nontrivial eigenvalue.
    pub lambda: f64,
    /// Certified upper bound on `lambda`.
    pub lambda_upper: f64,
    /// Largest nontrivial eigenvalue (signed), when computed.
    pub second_largest: Option<f64>,
    pub tolerance: f64,
    pub method: SpectralMethod,
}

impl SpectralCertificate {
    /// `λ⁺` rounded up to a dyadic rational, capped at 1.
    pub fn lambda_upper_rational(&self) -> Rational {
        let r = rational::dyadic_upper_bound(self.lambda_upper, CERT_BITS);
        r.min(Rational::from_integer(1.into()))
    }

    fn disconnected() -> Self {
        SpectralCertificate {
            lambda: 1.0,
            lambda_upper: 1.0,
            second_largest: Some(1.0),
            tolerance: 0.0,
            method: SpectralMethod::DenseEigensolve,
        }
    }
}

/// `λ` of a connected graph with a certified upper bound.
pub fn second_eigenvalue(graph: &WeightedGraph) -> Result<SpectralCertificate> {
    second_eigenvalue_with(graph, DENSE_LIMIT)
}

pub fn second_eigenvalue_with(graph: &WeightedGraph, dense_limit: usize) -> Result<SpectralCertificate> {
    if !graph.is_connected() {
        return Err(Error::DisconnectedGraph { face: Vec::new() });
    }
    if graph.num_vertices() == 1 {
        // The walk on a single vertex has no nontrivial eigenvalue.
        return Ok(SpectralCertificate {
            lambda: 0.0,
            lambda_upper: 0.0,
            second_largest: None,
            tolerance: 0.0,
            method: SpectralMethod::DenseEigensolve,
        });
    }
    if graph.num_vertices() <= dense_limit {
        Ok(dense(graph))
    } else {
        Ok(power_iteration(graph))
    }
}

fn dense(graph: &WeightedGraph) -> SpectralCertificate {
    let m = graph.normalized_matrix();
    let eig = SymmetricEigen::new(m.clone());
    let v = &eig.eigenvectors;
    let values = &eig.eigenvalues;
    let reconstructed = v * DMatrix::from_diagonal(values) * v.transpose();
    let residual = (&m - reconstructed).norm();
    let n = m.nrows();
    let orthogonality = (v.transpose() * v - DMatrix::<f64>::identity(n, n)).norm();
    let max_abs = values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    // Every true eigenvalue lies within this distance of a computed one.
    let tolerance = residual + orthogonality * max_abs + 1e-12;
    let mut sorted: Vec<f64> = values.iter().copied().collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    // sorted[0] is the trivial eigenvalue 1 of a connected graph.
    let nontrivial = &sorted[1..];
    let lambda = nontrivial.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    SpectralCertificate {
        lambda,
        lambda_upper: (lambda + tolerance).min(1.0),
        second_largest: Some(nontrivial[0]),
        tolerance,
        method: SpectralMethod::DenseEigensolve,
    }
}

fn power_iteration(graph: &WeightedGraph) -> SpectralCertificate {
    let n = graph.num_vertices();
    let deg: Vec<f64> = graph.vertex_weights.iter().map(|w| 2.0 * rational::to_f64(w)).collect();
    let mut top = DVector::from_iterator(n, deg.iter().map(|d| d.sqrt()));
    top /= top.norm();
    let weights: Vec<f64> = graph
        .edges
        .iter()
        .zip(&graph.edge_weights)
        .map(|(&(u, v), w)| rational::to_f64(w) / (deg[u] * deg[v]).sqrt())
        .collect();
    // Deflated operator M' = M - t tᵀ applied twice, so that ± pairs of
    // eigenvalues do not stall the iteration.
    let apply = |x: &DVector<f64>| -> DVector<f64> {
        let mut y = DVector::zeros(n);
        for (&(u, v), w) in graph.edges.iter().zip(&weights) {
            y[u] += w * x[v];
            y[v] += w * x[u];
        }
        let proj = top.dot(x);
        y - &top * proj
    };
    let mut x = DVector::from_iterator(n, (0..n).map(|i| ((i * 7919 + 13) % 101) as f64 / 101.0 - 0.5));
    x -= &top * top.dot(&x);
    x /= x.norm();
    let mut rho2 = 0.0;
    for _ in 0..5000 {
        let y = apply(&apply(&x));
        rho2 = x.dot(&y);
        let norm = y.norm();
        if norm == 0.0 {
            break;
        }
        let next = y / norm;
        let diff = (&next - &x).norm();
        x = next;
        if diff < 1e-13 {
            break;
        }
    }
    let y = apply(&apply(&x));
    let rq = x.dot(&y);
    let residual = (&y - &x * rq).norm();
    let lambda = rho2.max(0.0).sqrt();
    let upper = (rq.max(0.0) + residual + 1e-12).sqrt();
    SpectralCertificate {
        lambda,
        lambda_upper: upper.min(1.0),
        second_largest: None,
        tolerance: upper - lambda,
        method: SpectralMethod::PowerIteration,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkLambda {
    pub face: Vec<Vertex>,
    pub certificate: SpectralCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalSpectralReport {
    /// Worst certificate over all links, including the link of `∅`.
    pub global: SpectralCertificate,
    pub worst_face: Vec<Vertex>,
    pub per_link: Vec<LinkLambda>,
}

/// Maximum `λ` over the underlying graphs of the links of all faces of
/// dimension at most `d - 2` (including `∅`).
pub fn local_spectral_lambda(x: &SimplicialComplex) -> Result<LocalSpectralReport> {
    if x.dim() < 1 {
        return Err(Error::DimensionTooLow(x.dim()));
    }
    let faces: Vec<Face> = (-1..=x.dim() - 2).flat_map(|k| x.faces(k).iter().cloned()).collect();
    let per_link: Vec<Result<LinkLambda>> = faces
        .par_iter()
        .map(|sigma| {
            let link = x.link(sigma)?;
            let graph = WeightedGraph::underlying(&link)?;
            let certificate = second_eigenvalue(&graph).map_err(|e| match e {
                Error::DisconnectedGraph { .. } => Error::DisconnectedGraph { face: sigma.vertices().to_vec() },
                e => e,
            })?;
            Ok(LinkLambda { face: sigma.vertices().to_vec(), certificate })
        })
        .collect();
    let per_link: Vec<LinkLambda> = per_link.into_iter().collect::<Result<_>>()?;
    let worst = per_link
        .iter()
        .fold(None::<&LinkLambda>, |acc, l| match acc {
            Some(a) if a.certificate.lambda_upper >= l.certificate.lambda_upper => Some(a),
            _ => Some(l),
        })
        .expect("at least the empty face");
    Ok(LocalSpectralReport { global: worst.certificate.clone(), worst_face: worst.face.clone(), per_link })
}

/// Like [`local_spectral_lambda`] but reports disconnected links as `λ = 1`
/// instead of failing.
pub fn local_spectral_lambda_lenient(x: &SimplicialComplex) -> Result<(LocalSpectralReport, Vec<Vec<Vertex>>)> {
    if x.dim() < 1 {
        return Err(Error::DimensionTooLow(x.dim()));
    }
    let mut disconnected = Vec::new();
    let mut per_link = Vec::new();
    for k in -1..=x.dim() - 2 {
        for sigma in x.faces(k) {
            let graph = WeightedGraph::underlying(&x.link(sigma)?)?;
            let certificate = match second_eigenvalue(&graph) {
                Ok(c) => c,
                Err(Error::DisconnectedGraph { .. }) => {
                    disconnected.push(sigma.vertices().to_vec());
                    SpectralCertificate::disconnected()
                }
                Err(e) => return Err(e),
            };
            per_link.push(LinkLambda { face: sigma.vertices().to_vec(), certificate });
        }
    }
    let worst = per_link
        .iter()
        .fold(None::<&LinkLambda>, |acc, l| match acc {
            Some(a) if a.certificate.lambda_upper >= l.certificate.lambda_upper => Some(a),
            _ => Some(l),
        })
        .expect("at least the empty face")
        .clone();
    Ok((LocalSpectralReport { global: worst.certificate, worst_face: worst.face, per_link }, disconnected))
}

/// The triangle graph of a 3-dimensional complex: triangles `t1, t2` are
/// joined when a vertex `u` completes both to tetrahedra, with weight
/// `Σ_u P_0(u) p_u(t1) p_u(t2)` where `p_u` is the conditional triangle
/// distribution in the link of `u` (self-loops included). Returns its
/// certificate; informational only.
pub fn swap_walk_certificate(x: &SimplicialComplex) -> Result<SpectralCertificate> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch(format!("swap walk needs a 3-complex, got {}", x.dim())));
    }
    let n = x.num_faces(2);
    let mut w = DMatrix::<f64>::zeros(n, n);
    for u in 0..x.num_faces(0) {
        let pu = rational::to_f64(x.weight(0, u));
        let vertex = x.face(0, u).clone();
        let link = x.link(&vertex)?;
        let tris: Vec<(usize, f64)> = (0..link.num_faces(2))
            .map(|i| {
                let t = x.index_of(link.face(2, i)).expect("link triangle is a triangle");
                (t, rational::to_f64(link.weight(2, i)))
            })
            .collect();
        for &(a, pa) in &tris {
            for &(b, pb) in &tris {
                w[(a, b)] += pu * pa * pb;
            }
        }
    }
    let deg: Vec<f64> = (0..n).map(|i| w.row(i).sum()).collect();
    let present: Vec<usize> = (0..n).filter(|&i| deg[i] > 0.0).collect();
    let m = present.len();
    let mut norm = DMatrix::<f64>::zeros(m, m);
    for (a, &i) in present.iter().enumerate() {
        for (b, &j) in present.iter().enumerate() {
            norm[(a, b)] = w[(i, j)] / (deg[i] * deg[j]).sqrt();
        }
    }
    let eig = SymmetricEigen::new(norm.clone());
    let residual = (&norm - &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues) * eig.eigenvectors.transpose()).norm();
    let mut sorted: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let lambda = sorted[1..].iter().fold(0.0f64, |a, x| a.max(x.abs()));
    Ok(SpectralCertificate {
        lambda,
        lambda_upper: (lambda + residual + 1e-12).min(1.0),
        second_largest: sorted.get(1).copied(),
        tolerance: residual + 1e-12,
        method: SpectralMethod::DenseEigensolve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn complete_graph(m: u32) -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..m as usize {
            for v in u + 1..m as usize {
                edges.push((u, v));
            }
        }
        let w = ratio(1, edges.len() as i64);
        let n = edges.len();
        WeightedGraph::from_edges((0..m).collect(), edges, vec![w; n]).unwrap()
    }

    #[test]
    fn complete_graph_lambda() {
        for m in 3..9 {
            let c = second_eigenvalue(&complete_graph(m)).unwrap();
            assert!((c.lambda - 1.0 / (m as f64 - 1.0)).abs() < 1e-9);
            assert!(c.lambda <= c.lambda_upper);
            assert!(c.lambda_upper - c.lambda < 1e-9);
        }
    }

    #[test]
    fn single_edge_is_bipartite() {
        let g = WeightedGraph::from_edges(vec![0, 1], vec![(0, 1)], vec![ratio(1, 1)]).unwrap();
        let c = second_eigenvalue(&g).unwrap();
        assert!((c.lambda - 1.0).abs() < 1e-9);
    }

    #[test]
    fn six_cycle() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let g = WeightedGraph::from_edges((0..6).collect(), edges, vec![ratio(1, 6); 6]).unwrap();
        let c = second_eigenvalue(&g).unwrap();
        // Bipartite: -1 is an eigenvalue, so the absolute-value λ is 1 while
        // the second largest eigenvalue is cos(π/3).
        assert!((c.lambda - 1.0).abs() < 1e-9);
        assert!((c.second_largest.unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = WeightedGraph::from_edges(vec![0, 1, 2, 3], vec![(0, 1), (2, 3)], vec![ratio(1, 2); 2]).unwrap();
        assert!(matches!(second_eigenvalue(&g), Err(Error::DisconnectedGraph { .. })));
    }

    #[test]
    fn power_iteration_agrees_with_dense() {
        let g = complete_graph(12);
        let p = second_eigenvalue_with(&g, 4).unwrap();
        assert_eq!(p.method, SpectralMethod::PowerIteration);
        assert!((p.lambda - 1.0 / 11.0).abs() < 1e-6);
        assert!(p.lambda_upper >= 1.0 / 11.0 - 1e-12);
    }

    #[test]
    fn k4_cheeger() {
        let g = complete_graph(4);
        let (cut, internal) = g.cheeger_quantities(&[0]).unwrap();
        assert_eq!(cut, ratio(1, 2));
        assert_eq!(internal, ratio(0, 1));
        assert_eq!(g.cheeger_quantities(&[]).unwrap(), (ratio(0, 1), ratio(0, 1)));
        assert_eq!(g.cheeger_quantities(&[0, 1, 2, 3]).unwrap(), (ratio(0, 1), ratio(1, 1)));
        assert!(matches!(g.cheeger_quantities(&[9]), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn rational_bound_is_above_estimate() {
        let c = second_eigenvalue(&complete_graph(4)).unwrap();
        assert!(c.lambda_upper_rational() >= ratio(1, 3));
        assert!(rational::to_f64(&c.lambda_upper_rational()) < 1.0 / 3.0 + 1e-9);
    }
}
