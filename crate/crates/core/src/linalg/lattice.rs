//! Integral solving and finitely generated abelian group quotients, all via
//! Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{int_to_rat, IntMatrix, Matrix};
use super::rref::solve_rational;
use super::smith::smith_normal_form;
use super::LinalgError;

/// Integer solution of `A·x = b`: solve `D·y = U·b`, then `x = V·y`.
pub fn solve_integral(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve_integral");
    let f = smith_normal_form(a);
    let ub = f.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < f.rank {
            let (q, r) = c.div_rem(&f.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(f.v.mul_vec(&y))
}

/// A ℤ-basis of `{x ∈ ℤⁿ : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let f = smith_normal_form(a);
    (f.rank..a.cols()).map(|j| f.v.col(j)).collect()
}

/// `ℤ^free ⊕ ⊕ ℤ/tᵢ`, with explicit generators in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub free_rank: usize,
    /// Invariant factors greater than one, as a divisibility chain.
    pub torsion: Vec<BigInt>,
    /// One generator per torsion factor (same order), then one per free
    /// summand.
    pub generators: Vec<Vec<BigInt>>,
}

impl LatticeQuotient {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Computes `span_ℤ(big) / span_ℤ(small)`.
///
/// Both sets live in the same `ℤⁿ`. Fails if some small generator is not an
/// integral combination of the big ones.
pub fn lattice_quotient(
    dim: usize,
    big: &[Vec<BigInt>],
    small: &[Vec<BigInt>],
) -> Result<LatticeQuotient, LinalgError> {
    if big.is_empty() {
        if small.iter().flatten().any(|x| !x.is_zero()) {
            return Err(LinalgError::NotContained(0));
        }
        return Ok(LatticeQuotient {
            free_rank: 0,
            torsion: vec![],
            generators: vec![],
        });
    }
    // Basis of the big lattice: first r columns of B·V, since B·V = U⁻¹·D.
    let b = Matrix::from_cols(dim, big);
    let fb = smith_normal_form(&b);
    let r = fb.rank;
    let bv = b.matmul(&fb.v);
    let basis: Vec<Vec<BigInt>> = (0..r).map(|j| bv.col(j)).collect();

    // Coordinates of each small generator: cᵢ = (U·s)ᵢ / dᵢ.
    let mut coords = Vec::with_capacity(small.len());
    for (k, s) in small.iter().enumerate() {
        let us = fb.u.mul_vec(s);
        let mut c = Vec::with_capacity(r);
        for (i, x) in us.iter().enumerate() {
            if i < r {
                let (q, rem) = x.div_rem(&fb.d[(i, i)]);
                if !rem.is_zero() {
                    return Err(LinalgError::NotContained(k));
                }
                c.push(q);
            } else if !x.is_zero() {
                return Err(LinalgError::NotContained(k));
            }
        }
        coords.push(c);
    }

    if coords.is_empty() {
        return Ok(LatticeQuotient {
            free_rank: r,
            torsion: vec![],
            generators: basis,
        });
    }

    // ℤ^r / C·ℤ^q with U'·C·V' = D': generators are the columns of U'⁻¹.
    let c = Matrix::from_cols(r, &coords);
    let fc = smith_normal_form(&c);
    let u_inv = invert_unimodular(&fc.u);
    let factors = fc.invariant_factors();
    let mut torsion = Vec::new();
    let mut generators = Vec::new();
    let lift = |j: usize| -> Vec<BigInt> {
        let w = u_inv.col(j);
        let mut out = vec![BigInt::zero(); dim];
        for (wk, bk) in w.iter().zip(&basis) {
            for (o, x) in out.iter_mut().zip(bk) {
                *o += wk * x;
            }
        }
        out
    };
    for (j, d) in factors.iter().enumerate() {
        if !d.is_one() {
            torsion.push(d.clone());
            generators.push(lift(j));
        }
    }
    for j in fc.rank..r {
        generators.push(lift(j));
    }
    Ok(LatticeQuotient {
        free_rank: r - fc.rank,
        torsion,
        generators,
    })
}

fn invert_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let ur = int_to_rat(u);
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigRational::zero(); n];
            e[j] = BigRational::one();
            solve_rational(&ur, &e)
                .expect("unimodular matrix is invertible")
                .into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse of unimodular matrix is integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    Matrix::from_cols(n, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_matrix;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integral_solutions() {
        let two = int_matrix(&[&[2]]);
        assert_eq!(solve_integral(&two, &z(&[4])), Some(z(&[2])));
        assert_eq!(solve_integral(&two, &z(&[3])), None);
        let d = int_matrix(&[&[1, 0], &[0, 6]]);
        assert_eq!(solve_integral(&d, &z(&[1, 3])), None);
        assert_eq!(solve_integral(&d, &z(&[1, 12])), Some(z(&[1, 2])));
    }

    #[test]
    fn quotient_by_even_multiple() {
        let q = lattice_quotient(2, &[z(&[1, 0]), z(&[0, 1])], &[z(&[2, 0])]).unwrap();
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.torsion, z(&[2]));
        assert_eq!(q.generators.len(), 2);
    }

    #[test]
    fn quotient_by_itself_is_trivial() {
        let g = [z(&[1, 2]), z(&[0, 3])];
        let q = lattice_quotient(2, &g, &g).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn sum_and_difference() {
        let q = lattice_quotient(2, &[z(&[1, 0]), z(&[0, 1])], &[z(&[1, 1]), z(&[1, -1])]).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, z(&[2]));
    }

    #[test]
    fn containment_violation() {
        let r = lattice_quotient(2, &[z(&[2, 0]), z(&[0, 1])], &[z(&[1, 0])]);
        assert!(matches!(r, Err(LinalgError::NotContained(0))));
    }

    #[test]
    fn integer_kernel_of_boundary() {
        let k = integer_kernel(&int_matrix(&[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v == &z(&[1, -1, 1]) || v == &z(&[-1, 1, -1]));
        assert_eq!(int_matrix(&[&[1, 1, 0], &[0, 1, 1]]).mul_vec(v), z(&[0, 0]));
    }
}
