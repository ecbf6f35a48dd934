//! `Pic_ridge`: integral Cartier ridge divisors modulo principal ones.

use num_bigint::BigInt;

use super::{DivisorError, Divisors};
use crate::linalg::{integer_kernel, lattice_quotient, rats_to_ints, IntMatrix, LatticeQuotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardReport {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Divisors by edge: one per torsion factor, then one per free summand.
    pub generators: Vec<Vec<BigInt>>,
}

impl Divisors<'_> {
    /// Integral Cartier ridge divisors: the edge part of `ker [R | −M_Δ]`,
    /// where `R` copies each edge coefficient to both of its incidences.
    pub fn cartier_lattice(&self) -> Vec<Vec<BigInt>> {
        let e = self.complex().num_edges();
        let n = self.dim();
        let m = self.int_matrix();
        let mut a = IntMatrix::zeros(n, e + n);
        for (row, inc) in self.global().index.iter().enumerate() {
            a[(row, inc.edge)] = 1.into();
            for col in 0..n {
                a[(row, e + col)] = -m[(row, col)].clone();
            }
        }
        integer_kernel(&a)
            .into_iter()
            .map(|mut v| {
                v.truncate(e);
                v
            })
            .collect()
    }

    pub fn principal_lattice(&self) -> Vec<Vec<BigInt>> {
        let nv = self.complex().num_vertices();
        (0..nv)
            .map(|v| {
                let phi: Vec<_> = (0..nv)
                    .map(|w| {
                        num_rational::BigRational::from_integer(BigInt::from(u8::from(v == w)))
                    })
                    .collect();
                let d = self.divisor_of_function(&phi).expect("length matches");
                rats_to_ints(&d).expect("hat functions have integral divisors")
            })
            .collect()
    }

    pub fn picard_ridge(&self) -> Result<PicardReport, DivisorError> {
        let LatticeQuotient {
            free_rank,
            torsion,
            generators,
        } = lattice_quotient(
            self.complex().num_edges(),
            &self.cartier_lattice(),
            &self.principal_lattice(),
        )?;
        Ok(PicardReport {
            free_rank,
            torsion,
            generators,
        })
    }
}
