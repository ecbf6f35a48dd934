//! Row reduction over ℚ: kernels, ranks, particular solutions.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;

/// Reduced row echelon form with leading ones.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: RatMatrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Pivots are the first nonzero entry at or below the current row,
/// scanning columns left to right.
pub fn rref(a: &RatMatrix) -> Echelon {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m[(row, col)].recip();
        for j in col..m.cols() {
            let x = &m[(row, j)] * &inv;
            m[(row, j)] = x;
        }
        for i in 0..m.rows() {
            if i == row || m[(i, col)].is_zero() {
                continue;
            }
            let factor = m[(i, col)].clone();
            for j in col..m.cols() {
                let delta = &factor * &m[(row, j)];
                m[(i, j)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { reduced: m, pivots }
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).rank()
}

/// Basis of the right null space. One vector per free column (in index
/// order) with that free variable set to one and the others to zero.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let e = rref(a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.reduced[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A·x = b`, free variables zero; `None` if inconsistent.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve_rational");
    let n = a.cols();
    let aug = a.hconcat(&RatMatrix::from_cols(b.len(), &[b.to_vec()]));
    let e = rref(&aug);
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.reduced[(r, n)].clone();
    }
    Some(x)
}

/// Dimension of the span of a set of vectors.
pub fn span_dim(vectors: &[Vec<BigRational>]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => rank(&RatMatrix::from_cols(v.len(), vectors)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::rat_matrix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_is_injective() {
        assert!(kernel_basis(&rat_matrix(&[&[1, 0], &[0, 1]])).is_empty());
    }

    #[test]
    fn single_row_kernel_normalisation() {
        let k = kernel_basis(&rat_matrix(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn all_ones_has_two_dimensional_kernel() {
        let k = kernel_basis(&rat_matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]));
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn particular_solutions() {
        let id = rat_matrix(&[&[1, 0], &[0, 1]]);
        assert_eq!(solve_rational(&id, &[q(3), q(-2)]), Some(vec![q(3), q(-2)]));
        assert_eq!(
            solve_rational(&rat_matrix(&[&[1, 1]]), &[q(1)]),
            Some(vec![q(1), q(0)])
        );
        assert_eq!(
            solve_rational(&rat_matrix(&[&[1, 1], &[1, 1]]), &[q(1), q(2)]),
            None
        );
    }
}
