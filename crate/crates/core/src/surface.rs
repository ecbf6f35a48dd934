//! Weak tropical surfaces: structure constants, local and global
//! intersection matrices, and the tropical classification.

use std::fmt;

use thiserror::Error;

use crate::complex::{parse_complex_with_alpha, DeltaComplex, Incidence, VertexLink};
use crate::error::Error as CrateError;
use crate::linalg::{inertia, int_to_rat, Inertia, IntMatrix};
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeViolation {
    pub edge: String,
    pub degree: usize,
    pub alpha: [i64; 2],
}

impl fmt::Display for EdgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: alpha {} + {} != deg {}",
            self.edge, self.alpha[0], self.alpha[1], self.degree
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphaError {
    #[error("expected {expected} alpha values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("alpha(e,0) + alpha(e,1) = deg(e) fails on {}", list(.0))]
    Violations(Vec<EdgeViolation>),
}

fn list(v: &[EdgeViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A Δ-complex with `α` per incidence satisfying `α(e,0) + α(e,1) = deg(e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakTropicalSurface {
    complex: DeltaComplex,
    alpha: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMatrix {
    pub vertex: usize,
    pub index: Vec<Incidence>,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalMatrix {
    /// Row order: vertex file order, then link node order.
    pub index: Vec<Incidence>,
    /// Row of each incidence, by incidence id.
    pub position: Vec<usize>,
    pub matrix: IntMatrix,
    /// Row range of each vertex block.
    pub blocks: Vec<std::ops::Range<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tropical: bool,
    pub inertia: Vec<Inertia>,
}

impl Classification {
    pub fn failing_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.inertia
            .iter()
            .enumerate()
            .filter(|(_, i)| i.positive != 1)
            .map(|(v, _)| v)
    }
}

/// Validates `α` against the degrees of `complex`. Values are indexed by
/// incidence id `2·edge + slot`.
pub fn attach_alpha(
    complex: DeltaComplex,
    alpha: Vec<i64>,
) -> Result<WeakTropicalSurface, AlphaError> {
    if alpha.len() != complex.num_incidences() {
        return Err(AlphaError::WrongLength {
            expected: complex.num_incidences(),
            found: alpha.len(),
        });
    }
    let violations: Vec<EdgeViolation> = complex
        .edge_degrees()
        .into_iter()
        .enumerate()
        .filter(|&(e, d)| alpha[2 * e] + alpha[2 * e + 1] != d as i64)
        .map(|(e, d)| EdgeViolation {
            edge: complex.edges()[e].name.clone(),
            degree: d,
            alpha: [alpha[2 * e], alpha[2 * e + 1]],
        })
        .collect();
    if !violations.is_empty() {
        return Err(AlphaError::Violations(violations));
    }
    Ok(WeakTropicalSurface { complex, alpha })
}

/// Parses a complex file whose alpha lines cover every incidence.
pub fn parse_surface(text: &str) -> Result<WeakTropicalSurface, CrateError> {
    let parsed = parse_complex_with_alpha(text)?;
    let alpha = parsed.complete_alpha()?;
    Ok(attach_alpha(parsed.complex, alpha)?)
}

impl WeakTropicalSurface {
    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn alpha_values(&self) -> &[i64] {
        &self.alpha
    }

    pub fn alpha(&self, inc: Incidence) -> i64 {
        self.alpha[inc.id()]
    }

    pub fn to_text(&self) -> String {
        crate::complex::write_complex(&self.complex, Some(&self.alpha))
    }

    fn matrix_from_link(&self, link: &VertexLink) -> IntMatrix {
        let n = link.node_count();
        let mut m = IntMatrix::zeros(n, n);
        for &(a, b) in &link.link_edges {
            if a == b {
                m[(a, a)] += 2;
            } else {
                m[(a, b)] += 1;
                m[(b, a)] += 1;
            }
        }
        for (t, inc) in link.nodes.iter().enumerate() {
            m[(t, t)] -= self.alpha(inc.opposite());
        }
        m
    }

    /// `M_v`, indexed by the incidences at `v` in link order.
    pub fn local_matrix(&self, v: usize) -> Result<LocalMatrix, crate::complex::ComplexError> {
        let link = self.complex.vertex_link(v)?;
        Ok(LocalMatrix {
            vertex: v,
            matrix: self.matrix_from_link(&link),
            index: link.nodes,
        })
    }

    pub fn local_matrices(&self) -> Vec<LocalMatrix> {
        (0..self.complex.num_vertices())
            .map(|v| self.local_matrix(v).expect("vertex in range"))
            .collect()
    }

    /// `M_Δ`, the block-diagonal assembly of every `M_v`.
    pub fn global_matrix(&self) -> GlobalMatrix {
        let locals = self.local_matrices();
        let mut index = Vec::with_capacity(self.complex.num_incidences());
        let mut blocks = Vec::with_capacity(locals.len());
        for l in &locals {
            blocks.push(index.len()..index.len() + l.index.len());
            index.extend_from_slice(&l.index);
        }
        let mut position = vec![0; index.len()];
        for (row, inc) in index.iter().enumerate() {
            position[inc.id()] = row;
        }
        let matrices: Vec<IntMatrix> = locals.into_iter().map(|l| l.matrix).collect();
        GlobalMatrix {
            index,
            position,
            matrix: IntMatrix::block_diagonal(&matrices),
            blocks,
        }
    }

    /// Tropical iff every `M_v` has exactly one positive eigenvalue.
    pub fn classify(&self) -> Classification {
        self.classify_with(Execution::default())
    }

    pub fn classify_with(&self, exec: Execution) -> Classification {
        let locals = self.local_matrices();
        let inertia: Vec<Inertia> = par::map(exec, &locals, |l| {
            inertia(&int_to_rat(&l.matrix)).expect("local matrices are symmetric")
        });
        Classification {
            tropical: inertia.iter().all(|i| i.positive == 1),
            inertia,
        }
    }
}

impl GlobalMatrix {
    /// Reorders a vector indexed by incidence id into row order.
    pub fn to_rows<T: Clone>(&self, by_id: &[T]) -> Vec<T> {
        self.index
            .iter()
            .map(|inc| by_id[inc.id()].clone())
            .collect()
    }

    /// Reorders a vector in row order back to incidence-id order.
    pub fn to_ids<T: Clone>(&self, by_row: &[T]) -> Vec<T> {
        let mut out = by_row.to_vec();
        for (row, inc) in self.index.iter().enumerate() {
            out[inc.id()] = by_row[row].clone();
        }
        out
    }
}
