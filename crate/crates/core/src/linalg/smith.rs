//! Smith normal form over the integers.
//!
//! Pivoting rule: the entry of smallest nonzero absolute value in the
//! active submatrix, ties broken by row-major position. The rule is fixed
//! so that `U` and `V` are reproducible for a given input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if d[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

// row[dst] += k * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for j in 0..m.cols() {
        let delta = k * &m[(src, j)];
        m[(dst, j)] += delta;
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    for i in 0..m.rows() {
        let delta = k * &m[(i, src)];
        m[(i, dst)] += delta;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;

    while t < m.min(n) {
        let Some((pi, pj)) = find_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot appeared
                let (pi, pj) = find_pivot(&d, t).expect("nonzero entries remain");
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -&d[(t, j)];
            }
            for j in 0..m {
                u[(t, j)] = -&u[(t, j)];
            }
        }
        t += 1;
    }

    SmithForm { u, d, v, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_matrix;
    use proptest::prelude::*;

    fn diag(f: &SmithForm) -> Vec<i64> {
        f.invariant_factors()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn coprime_diagonal_becomes_one_and_product() {
        let f = smith_normal_form(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(diag(&f), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let f = smith_normal_form(&int_matrix(&[&[0, 0], &[0, 0], &[0, 0]]));
        assert_eq!(f.rank, 0);
        assert!(f.d.is_zero());
    }

    #[test]
    fn primitive_column() {
        let f = smith_normal_form(&int_matrix(&[&[-1], &[1]]));
        assert_eq!(diag(&f), vec![1]);
    }

    #[test]
    fn sum_difference_lattice() {
        let f = smith_normal_form(&int_matrix(&[&[1, 1], &[1, -1]]));
        assert_eq!(diag(&f), vec![1, 2]);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn decomposition_is_exact(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let a = int_matrix(&refs);
            let f = smith_normal_form(&a);
            prop_assert_eq!(f.u.matmul(&a).matmul(&f.v), f.d.clone());
            for i in 0..f.d.rows() {
                for j in 0..f.d.cols() {
                    if i != j {
                        prop_assert!(f.d[(i, j)].is_zero());
                    }
                }
            }
            let factors = f.invariant_factors();
            for w in factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for x in &factors {
                prop_assert!(x.is_positive());
            }
            // unimodularity via SNF of U and V themselves
            for w in [&f.u, &f.v] {
                let g = smith_normal_form(w);
                prop_assert_eq!(g.rank, w.rows());
                prop_assert!(g.invariant_factors().iter().all(One::is_one));
            }
        }
    }
}
