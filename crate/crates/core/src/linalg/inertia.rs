//! Signature of a symmetric rational matrix by congruence.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;
use super::LinalgError;

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Inertia {
            positive,
            zero,
            negative,
        }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.positive, self.zero, self.negative)
    }
}

/// Sylvester reduction with 1×1 pivots. When every remaining diagonal
/// entry vanishes but some `s_ij ≠ 0`, row/column `j` is added to `i`,
/// which makes the new `s_ii = 2·s_ij` nonzero.
pub fn inertia(s: &RatMatrix) -> Result<Inertia, LinalgError> {
    if !s.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut m = s.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let mut out = Inertia::default();

    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !m[(i, i)].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(a, &i)| {
                    active[a + 1..]
                        .iter()
                        .find(|&&j| !m[(i, j)].is_zero())
                        .map(|&j| (a, i, j))
                });
                let Some((a, i, j)) = pair else {
                    out.zero += active.len();
                    break;
                };
                // row_i += row_j, then col_i += col_j
                for &k in &active {
                    let x = m[(j, k)].clone();
                    m[(i, k)] += x;
                }
                for &k in &active {
                    let x = m[(k, j)].clone();
                    m[(k, i)] += x;
                }
                a
            }
        };
        let p = active.remove(pivot);
        let d = m[(p, p)].clone();
        if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for &i in &active {
            if m[(i, p)].is_zero() {
                continue;
            }
            let f: BigRational = &m[(i, p)] / &d;
            for &j in &active {
                let delta = &f * &m[(p, j)];
                m[(i, j)] -= delta;
            }
        }
    }
    Ok(out)
}
