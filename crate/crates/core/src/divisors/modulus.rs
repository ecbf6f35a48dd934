//! Search for nonconstant functions, linear on simplices, with effective
//! divisor.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DivisorError, Divisors, PlFunction};
use crate::linalg::{linear_feasibility, Feasibility, LinearSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxModulus {
    NoneExists,
    /// A nonconstant `φ` with `div(φ) ≥ 0`, normalized to vanish at the
    /// first vertex.
    Counterexample(PlFunction),
}

impl Divisors<'_> {
    /// Fixes `φ(v₀) = 0` and tries `φ(v) ≥ 1`, then `−φ(v) ≥ 1`, for each
    /// other vertex in turn. The cone of solutions is scale invariant, so
    /// this decides existence exactly.
    pub fn max_modulus_check(&self, cap: usize) -> Result<MaxModulus, DivisorError> {
        let nv = self.complex().num_vertices();
        let vars = nv - 1;
        // Column j of the divisor map, for the hat function at vertex j + 1.
        let columns: Vec<Vec<BigRational>> = (1..nv)
            .map(|v| {
                let phi: Vec<BigRational> = (0..nv)
                    .map(|w| {
                        if v == w {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                self.divisor_of_function(&phi).expect("length matches")
            })
            .collect();
        let mut base = LinearSystem::new(vars);
        for e in 0..self.complex().num_edges() {
            base.ge(
                columns.iter().map(|c| c[e].clone()).collect(),
                BigRational::zero(),
            );
        }
        for j in 0..vars {
            for sign in [1, -1] {
                let mut sys = base.clone();
                let mut row = vec![BigRational::zero(); vars];
                row[j] = BigRational::from_integer(sign.into());
                sys.ge(row, BigRational::one());
                if let Feasibility::Feasible(x) = linear_feasibility(&sys, cap)? {
                    let mut phi = vec![BigRational::zero()];
                    phi.extend(x);
                    return Ok(MaxModulus::Counterexample(phi));
                }
            }
        }
        Ok(MaxModulus::NoneExists)
    }
}
