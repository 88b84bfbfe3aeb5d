//! Standard test complexes.

use itertools::Itertools;

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// All `(d+1)`-subsets of `n` vertices.
pub fn complete(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d + 1 > n {
        return Err(Error::BadParams(format!("a complete {d}-complex needs at least {} vertices, got {n}", d + 1)));
    }
    let tops: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(d + 1).collect();
    SimplicialComplex::build(tops, d)
}

/// A single `d`-simplex.
pub fn simplex(d: usize) -> Result<SimplicialComplex> {
    complete(d + 1, d)
}

/// `count` copies of a `d`-simplex sharing the facet `{0, …, d-1}`.
pub fn glued_simplices(d: usize, count: usize) -> Result<SimplicialComplex> {
    if d < 1 || count < 1 {
        return Err(Error::BadParams("glued simplices need d >= 1 and count >= 1".into()));
    }
    let tops = (0..count)
        .map(|i| {
            let mut t: Vec<Vertex> = (0..d as Vertex).collect();
            t.push((d + i) as Vertex);
            t
        })
        .collect();
    SimplicialComplex::build(tops, d)
}

/// The 7-vertex triangulation of the torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` modulo 7.
pub fn torus() -> SimplicialComplex {
    let tops = (0..7u32)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    SimplicialComplex::build(tops, 2).expect("valid triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_counts() {
        let x = complete(6, 2).unwrap();
        assert_eq!(x.num_faces(2), 20);
        assert_eq!(complete(3, 2).unwrap().num_faces(2), 1);
        assert!(complete(2, 2).is_err());
    }

    #[test]
    fn torus_is_a_closed_surface() {
        let t = torus();
        assert_eq!((t.num_faces(0), t.num_faces(1), t.num_faces(2)), (7, 21, 14));
        for e in 0..t.num_faces(1) {
            assert_eq!(t.cofacets(1, e).len(), 2);
        }
    }

    #[test]
    fn glued_tetrahedra() {
        let x = glued_simplices(3, 2).unwrap();
        assert_eq!(x.num_faces(3), 2);
        assert_eq!(x.num_faces(0), 5);
    }
}
