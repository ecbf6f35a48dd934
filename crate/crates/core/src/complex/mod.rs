//! Two-dimensional Δ-complexes with explicit gluing data.
//!
//! Edges have two endpoint *slots*; the slots stay distinct incidences even
//! when both are glued to the same vertex. Facet side `i` is opposite corner
//! `i` and runs from corner `i+1` to corner `i+2` (indices mod 3); an
//! unflipped side sends corner `i+1` to slot 0 of its edge.

mod parse;

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::util::UnionFind;

pub(crate) use parse::write_complex;
pub use parse::{parse_complex, parse_complex_with_alpha, ParsedComplex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub ends: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub flip: bool,
}

impl Side {
    /// Slot of this side's edge that receives corner `j` of a facet in which
    /// this is side `i`.
    pub fn slot_at_corner(&self, i: usize, j: usize) -> usize {
        debug_assert_ne!(i, j);
        let first = (i + 1) % 3 == j;
        usize::from(first == self.flip)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub name: String,
    pub corners: [usize; 3],
    pub sides: [Side; 3],
}

impl Facet {
    /// The two side incidences meeting at corner `j`, sides `j+1` then `j+2`.
    pub fn corner_incidences(&self, j: usize) -> [Incidence; 2] {
        [(j + 1) % 3, (j + 2) % 3].map(|i| {
            let s = self.sides[i];
            Incidence::new(s.edge, s.slot_at_corner(i, j))
        })
    }
}

/// An edge together with one of its two endpoint slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub edge: usize,
    pub slot: usize,
}

impl Incidence {
    pub fn new(edge: usize, slot: usize) -> Self {
        debug_assert!(slot < 2);
        Incidence { edge, slot }
    }

    /// Dense index `2·edge + slot`.
    pub fn id(&self) -> usize {
        2 * self.edge + self.slot
    }

    pub fn opposite(&self) -> Incidence {
        Incidence::new(self.edge, 1 - self.slot)
    }
}

/// The graph `link(v)`: one node per incidence at `v`, one link edge per
/// facet corner at `v`. A loop is stored once as `(t, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: usize,
    pub nodes: Vec<Incidence>,
    pub link_edges: Vec<(usize, usize)>,
}

impl VertexLink {
    /// `E_v`
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `F_v`
    pub fn edge_count(&self) -> usize {
        self.link_edges.len()
    }

    pub fn loops_at(&self, t: usize) -> usize {
        self.link_edges
            .iter()
            .filter(|&&(a, b)| a == t && b == t)
            .count()
    }

    pub fn edges_between(&self, t: usize, u: usize) -> usize {
        self.link_edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (t, u) || (a, b) == (u, t))
            .count()
    }

    pub fn position(&self, inc: Incidence) -> Option<usize> {
        self.nodes.iter().position(|&n| n == inc)
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.nodes.len());
        for &(a, b) in &self.link_edges {
            uf.union(a, b);
        }
        uf.components() <= 1
    }

    /// Connected with every node of degree two (loops count twice).
    pub fn is_cycle(&self) -> bool {
        let mut degree = vec![0usize; self.nodes.len()];
        for &(a, b) in &self.link_edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        !self.nodes.is_empty() && self.is_connected() && degree.iter().all(|&d| d == 2)
    }
}

/// `link(e)`: the facet sides glued to `e`, as (facet, opposite corner).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLink {
    pub edge: usize,
    pub entries: Vec<(usize, usize)>,
}

impl EdgeLink {
    pub fn degree(&self) -> usize {
        self.entries.len()
    }
}

/// A facet side whose edge endpoint differs from the facet corner it should
/// be glued to.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error(
    "facet {facet} side {side}: edge {edge} slot {slot} is vertex {found}, but corner {corner} is vertex {expected}"
)]
pub struct CornerMismatch {
    pub facet: String,
    pub side: usize,
    pub edge: String,
    pub slot: usize,
    pub corner: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("{kind} index {index} out of range")]
    BadReference { kind: &'static str, index: usize },
    #[error("{0}")]
    CornerMismatch(Box<CornerMismatch>),
    #[error("vertex {0} lies on no edge")]
    IsolatedVertex(String),
    #[error("complex is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    facets: Vec<Facet>,
}

impl DeltaComplex {
    /// Validates referential integrity, the corner/side attachment,
    /// absence of isolated vertices, and connectedness.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        facets: Vec<Facet>,
    ) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let nv = vertices.len();
        for e in &edges {
            if let Some(&bad) = e.ends.iter().find(|&&v| v >= nv) {
                return Err(ComplexError::BadReference {
                    kind: "vertex",
                    index: bad,
                });
            }
        }
        for f in &facets {
            if let Some(&bad) = f.corners.iter().find(|&&v| v >= nv) {
                return Err(ComplexError::BadReference {
                    kind: "vertex",
                    index: bad,
                });
            }
            for (i, s) in f.sides.iter().enumerate() {
                let Some(edge) = edges.get(s.edge) else {
                    return Err(ComplexError::BadReference {
                        kind: "edge",
                        index: s.edge,
                    });
                };
                for j in [(i + 1) % 3, (i + 2) % 3] {
                    let slot = s.slot_at_corner(i, j);
                    if edge.ends[slot] != f.corners[j] {
                        return Err(ComplexError::CornerMismatch(Box::new(CornerMismatch {
                            facet: f.name.clone(),
                            side: i,
                            edge: edge.name.clone(),
                            slot,
                            corner: j,
                            found: vertices[edge.ends[slot]].clone(),
                            expected: vertices[f.corners[j]].clone(),
                        })));
                    }
                }
            }
        }
        let mut touched = vec![false; nv];
        for e in &edges {
            touched[e.ends[0]] = true;
            touched[e.ends[1]] = true;
        }
        if let Some(v) = touched.iter().position(|&t| !t) {
            return Err(ComplexError::IsolatedVertex(vertices[v].clone()));
        }

        // cells: vertices, then edges, then facets
        let ne = edges.len();
        let mut uf = UnionFind::new(nv + ne + facets.len());
        for (k, e) in edges.iter().enumerate() {
            uf.union(nv + k, e.ends[0]);
            uf.union(nv + k, e.ends[1]);
        }
        for (k, f) in facets.iter().enumerate() {
            for s in &f.sides {
                uf.union(nv + ne + k, nv + s.edge);
            }
        }
        let components = uf.components();
        if components > 1 {
            return Err(ComplexError::Disconnected(components));
        }
        Ok(DeltaComplex {
            vertices,
            edges,
            facets,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// `N = 2E`
    pub fn num_incidences(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, ComplexError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, name: &str) -> Result<usize, ComplexError> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| ComplexError::UnknownEdge(name.to_string()))
    }

    pub fn edge_name_map(&self) -> HashMap<&str, usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.as_str(), i))
            .collect()
    }

    /// Vertex at an incidence.
    pub fn endpoint(&self, inc: Incidence) -> usize {
        self.edges[inc.edge].ends[inc.slot]
    }

    /// Incidences at `v`, in edge file order then slot order.
    pub fn incidences_at(&self, v: usize) -> Vec<Incidence> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(k, e)| {
                (0..2)
                    .filter(move |&s| e.ends[s] == v)
                    .map(move |s| Incidence::new(k, s))
            })
            .collect()
    }

    pub fn vertex_link(&self, v: usize) -> Result<VertexLink, ComplexError> {
        if v >= self.vertices.len() {
            return Err(ComplexError::BadReference {
                kind: "vertex",
                index: v,
            });
        }
        let nodes = self.incidences_at(v);
        let pos = |inc: Incidence| {
            nodes
                .iter()
                .position(|&n| n == inc)
                .expect("incidence at v")
        };
        let mut link_edges = Vec::new();
        for f in &self.facets {
            for j in 0..3 {
                if f.corners[j] != v {
                    continue;
                }
                let [a, b] = f.corner_incidences(j);
                link_edges.push((pos(a), pos(b)));
            }
        }
        Ok(VertexLink {
            vertex: v,
            nodes,
            link_edges,
        })
    }

    pub fn vertex_links(&self) -> Vec<VertexLink> {
        (0..self.vertices.len())
            .map(|v| self.vertex_link(v).expect("vertex in range"))
            .collect()
    }

    pub fn edge_link(&self, e: usize) -> Result<EdgeLink, ComplexError> {
        if e >= self.edges.len() {
            return Err(ComplexError::BadReference {
                kind: "edge",
                index: e,
            });
        }
        let entries = self
            .facets
            .iter()
            .enumerate()
            .flat_map(|(k, f)| {
                (0..3)
                    .filter(move |&i| f.sides[i].edge == e)
                    .map(move |i| (k, i))
            })
            .collect();
        Ok(EdgeLink { edge: e, entries })
    }

    /// `deg(e)` for every edge.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for f in &self.facets {
            for s in &f.sides {
                deg[s.edge] += 1;
            }
        }
        deg
    }

    /// `V − E + F`
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.facets.len() as i64
    }

    /// Whether each vertex link is connected.
    pub fn local_connectivity(&self) -> Vec<bool> {
        self.vertex_links()
            .iter()
            .map(VertexLink::is_connected)
            .collect()
    }

    pub fn is_locally_connected(&self) -> bool {
        self.local_connectivity().into_iter().all(|b| b)
    }

    /// `(∂₁, ∂₂)` in the column convention: `∂₁` is `V×E` with
    /// `∂₁(e) = end₁ − end₀`; `∂₂` is `E×F` with `∂₂(f) = Σᵢ ±sideᵢ`, the sign
    /// being `+` for an unflipped side. Sides traverse the triangle
    /// cyclically, so `∂₁·∂₂ = 0`.
    pub fn boundary_matrices(&self) -> (IntMatrix, IntMatrix) {
        let (nv, ne, nf) = (self.num_vertices(), self.num_edges(), self.num_facets());
        let mut d1 = IntMatrix::zeros(nv, ne);
        for (k, e) in self.edges.iter().enumerate() {
            d1[(e.ends[1], k)] += 1;
            d1[(e.ends[0], k)] -= 1;
        }
        let mut d2 = IntMatrix::zeros(ne, nf);
        for (k, f) in self.facets.iter().enumerate() {
            for s in &f.sides {
                d2[(s.edge, k)] += if s.flip { -1 } else { 1 };
            }
        }
        (d1, d2)
    }

    /// Simplicial coboundary on 1-cochains, the `F×E` matrix `∂₂ᵀ`.
    pub fn coboundary_1(&self) -> IntMatrix {
        self.boundary_matrices().1.transpose()
    }

    /// `(δγ)(f)` for an integer 1-cochain.
    pub fn coboundary_of(&self, gamma: &[BigInt]) -> Vec<BigInt> {
        self.coboundary_1().mul_vec(gamma)
    }

    pub fn to_text(&self) -> String {
        parse::write_complex(self, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn triangle_counts() {
        let c = corpus::triangle().complex().clone();
        assert_eq!(c.num_incidences(), 6);
        assert_eq!(c.euler_characteristic(), 1);
        for v in 0..3 {
            let l = c.vertex_link(v).unwrap();
            assert_eq!((l.node_count(), l.edge_count()), (2, 1));
            assert_eq!(l.loops_at(0) + l.loops_at(1), 0);
        }
        for e in 0..3 {
            assert_eq!(c.edge_link(e).unwrap().degree(), 1);
        }
    }

    #[test]
    fn torus_links() {
        let c = corpus::torus().complex().clone();
        let l = c.vertex_link(0).unwrap();
        assert_eq!((l.node_count(), l.edge_count()), (6, 6));
        assert!(l.is_cycle());
        assert!(c.edge_degrees().iter().all(|&d| d == 2));
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.is_locally_connected());
    }

    #[test]
    fn octahedron_quotient_links() {
        let c = corpus::octahedron_quotient().complex().clone();
        assert_eq!(c.euler_characteristic(), 1);
        for l in c.vertex_links() {
            assert_eq!((l.node_count(), l.edge_count()), (4, 4));
            assert!(l.is_cycle());
        }
    }

    #[test]
    fn bowtie_is_not_locally_connected() {
        let c = corpus::bowtie().complex().clone();
        let conn = c.local_connectivity();
        let hub = c.vertex_index("hub").unwrap();
        assert!(!conn[hub]);
        assert_eq!(conn.iter().filter(|&&b| !b).count(), 1);
    }

    #[test]
    fn boundary_conventions() {
        let c = corpus::triangle().complex().clone();
        let (d1, d2) = c.boundary_matrices();
        assert!(d1.matmul(&d2).is_zero());
        let e = &c.edges()[0];
        assert_eq!(d1[(e.ends[0], 0)], BigInt::from(-1));
        assert_eq!(d1[(e.ends[1], 0)], BigInt::from(1));

        let t = corpus::torus().complex().clone();
        let (d1, _) = t.boundary_matrices();
        assert!(d1.is_zero());
    }

    #[test]
    fn dangling_edge_has_degree_zero() {
        let text = "complex 2\nvertex a\nvertex b\nvertex c\nvertex d\n\
                    edge ab a b\nedge bc b c\nedge ca c a\nedge ad a d\n\
                    facet f corners a b c sides bc ca ab\n";
        let c = parse_complex(text).unwrap();
        let ad = c.edge_index("ad").unwrap();
        assert_eq!(c.edge_link(ad).unwrap().degree(), 0);
        // the dangling incidence is an isolated node of link(a)
        assert!(!c
            .vertex_link(c.vertex_index("a").unwrap())
            .unwrap()
            .is_connected());
    }

    #[test]
    fn isolated_vertex_rejected() {
        let r = DeltaComplex::new(vec!["a".into()], vec![], vec![]);
        assert!(matches!(r, Err(ComplexError::IsolatedVertex(_))));
    }
}
