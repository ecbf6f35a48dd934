//! Integral simplicial homology and cohomology of a Δ-complex.

use std::fmt;

use num_bigint::BigInt;

use crate::complex::DeltaComplex;
use crate::linalg::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub degree: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl HomologyReport {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct Snf {
    rank: usize,
    torsion: Vec<BigInt>,
}

fn snf(m: &IntMatrix) -> Snf {
    let f = smith_normal_form(m);
    Snf {
        rank: f.rank,
        torsion: f.torsion(),
    }
}

/// `H_i(Δ; ℤ)` for `i ∈ {0, 1, 2}`; `None` for other degrees.
pub fn integral_homology(c: &DeltaComplex, i: usize) -> Option<HomologyReport> {
    let (d1, d2) = c.boundary_matrices();
    let (s1, s2) = (snf(&d1), snf(&d2));
    let (nv, ne, nf) = (c.num_vertices(), c.num_edges(), c.num_facets());
    let (free_rank, torsion) = match i {
        0 => (nv - s1.rank, s1.torsion),
        1 => (ne - s1.rank - s2.rank, s2.torsion),
        2 => (nf - s2.rank, vec![]),
        _ => return None,
    };
    Some(HomologyReport {
        degree: i,
        free_rank,
        torsion,
    })
}

/// `Hⁱ(Δ; ℤ)` from the transposed boundary maps, computed independently of
/// [`integral_homology`].
pub fn integral_cohomology(c: &DeltaComplex, i: usize) -> Option<HomologyReport> {
    let (d1, d2) = c.boundary_matrices();
    let (delta0, delta1) = (snf(&d1.transpose()), snf(&d2.transpose()));
    let (nv, ne, nf) = (c.num_vertices(), c.num_edges(), c.num_facets());
    let (free_rank, torsion) = match i {
        0 => (nv - delta0.rank, vec![]),
        1 => (ne - delta0.rank - delta1.rank, delta0.torsion),
        2 => (nf - delta1.rank, delta1.torsion),
        _ => return None,
    };
    Some(HomologyReport {
        degree: i,
        free_rank,
        torsion,
    })
}

/// Universal coefficients: equal ranks in every degree, `Hⁱ` torsion equal
/// to `H_{i−1}` torsion, and `H⁰` torsion-free.
pub fn universal_coefficients_hold(c: &DeltaComplex) -> bool {
    let h: Vec<_> = (0..3).map(|i| integral_homology(c, i).unwrap()).collect();
    let co: Vec<_> = (0..3).map(|i| integral_cohomology(c, i).unwrap()).collect();
    (0..3).all(|i| h[i].free_rank == co[i].free_rank)
        && co[0].torsion.is_empty()
        && co[1].torsion == h[0].torsion
        && co[2].torsion == h[1].torsion
}

/// `Σ (−1)ⁱ rank H_i`.
pub fn homological_euler_characteristic(c: &DeltaComplex) -> i64 {
    (0..3)
        .map(|i| {
            let r = integral_homology(c, i).unwrap().free_rank as i64;
            if i % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .sum()
}
