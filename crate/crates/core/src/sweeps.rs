//! Batch checks over seeds and random samples. Every sweep takes an
//! [`Execution`] and gives identical results in both modes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisors::{is_cocycle, Divisors};
use crate::fans::{AbstractConeComplex, EmbeddedFan2, FanError};
use crate::linalg::{dot, inertia, int_to_rat, integer_kernel, IntMatrix};
use crate::par::{self, Execution};
use crate::random::random_weak_surface;
use crate::surface::WeakTropicalSurface;
use crate::todd::{noether_check, NoetherReport};

/// Facet count used for seed `s` in the Noether sweep.
pub fn facets_for_seed(seed: u64) -> usize {
    1 + (seed % 12) as usize
}

pub fn noether_sweep(
    seeds: std::ops::RangeInclusive<u64>,
    exec: Execution,
) -> Vec<(u64, NoetherReport)> {
    let seeds: Vec<u64> = seeds.collect();
    par::map(exec, &seeds, |&s| {
        (
            s,
            noether_check(&random_weak_surface(s, facets_for_seed(s))),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    pub td2_preserved: bool,
    pub positive_preserved: bool,
    /// The abstract update agreed with the embedded subdivision at every
    /// step.
    pub abstract_agrees: bool,
}

impl ChainResult {
    pub fn ok(&self) -> bool {
        self.td2_preserved && self.positive_preserved && self.abstract_agrees
    }
}

fn positive_count(m: &IntMatrix) -> usize {
    inertia(&int_to_rat(m))
        .expect("fan matrices are symmetric")
        .positive
}

/// One chain of `length` stellar subdivisions at uniformly chosen cones.
pub fn subdivision_chain(
    fan: &EmbeddedFan2,
    length: usize,
    seed: u64,
) -> Result<ChainResult, FanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let td2 = fan.td2()?;
    let pos = positive_count(&fan.fan_matrix()?);
    let mut current = fan.clone();
    let mut result = ChainResult {
        td2_preserved: true,
        positive_preserved: true,
        abstract_agrees: true,
    };
    for _ in 0..length {
        let (v, w) = current.cones()[rng.gen_range(0..current.cones().len())];
        let next = current.stellar_subdivide(v, w)?;
        let predicted = AbstractConeComplex::from_fan(&current)?.subdivide(v, w)?;
        let m = next.fan_matrix()?;
        result.abstract_agrees &= predicted.matrix == m;
        result.td2_preserved &= next.td2()? == td2;
        result.positive_preserved &= positive_count(&m) == pos;
        current = next;
    }
    Ok(result)
}

pub fn subdivision_sweep(
    fan: &EmbeddedFan2,
    chains: usize,
    length: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ChainResult>, FanError> {
    par::map_range(exec, chains, |i| {
        subdivision_chain(fan, length, seed.wrapping_add(i as u64))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleSweep {
    pub samples: usize,
    pub cocycles: usize,
    /// Samples where the Cartier flag disagreed with the cocycle test.
    pub flag_mismatches: usize,
    /// Cocycle divisors with a nonzero pairing against `W`.
    pub pairing_failures: usize,
}

/// Even samples are uniform in `[−3, 3]^E`; odd samples are random
/// combinations of a basis of the cocycle lattice, so both sides of the
/// biconditional are exercised.
pub fn cocycle_sweep(
    t: &WeakTropicalSurface,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> CocycleSweep {
    let d = Divisors::new(t);
    let ne = t.complex().num_edges();
    let cocycle_basis = integer_kernel(&t.complex().coboundary_1());
    let w = d.qcartier_space();
    let mw: Vec<Vec<BigRational>> = w.iter().map(|x| d.matrix().mul_vec(x)).collect();
    let outcomes = par::map_range(exec, samples, |i| {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let gamma: Vec<BigInt> = if i % 2 == 0 || cocycle_basis.is_empty() {
            (0..ne)
                .map(|_| BigInt::from(rng.gen_range(-3..=3)))
                .collect()
        } else {
            let mut g = vec![BigInt::zero(); ne];
            for b in &cocycle_basis {
                let c = BigInt::from(rng.gen_range(-3..=3));
                for (x, y) in g.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
            g
        };
        let cocycle = is_cocycle(t.complex(), &gamma);
        let flag = d.cochain_divisor(&gamma).expect("length matches").cartier;
        let pairs_zero = !cocycle || {
            let f = d.cochain_slopes(&gamma).expect("length matches");
            mw.iter().all(|m| dot(m, &f).is_zero())
        };
        (cocycle, flag == cocycle, pairs_zero)
    });
    let mut s = CocycleSweep {
        samples,
        ..Default::default()
    };
    for (cocycle, agree, pairs_zero) in outcomes {
        s.cocycles += usize::from(cocycle);
        s.flag_mismatches += usize::from(!agree);
        s.pairing_failures += usize::from(!pairs_zero);
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualitySweep {
    pub samples: usize,
    pub in_image: usize,
    pub mismatches: usize,
}

/// Per vertex, `samples` integer vectors: half uniform in `[−3, 3]`, half
/// of the form `M_v y`.
pub fn duality_sweep(
    t: &WeakTropicalSurface,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> DualitySweep {
    let d = Divisors::new(t);
    let nv = t.complex().num_vertices();
    let outcomes = par::map_range(exec, nv * samples, |k| {
        let (v, i) = (k / samples, k % samples);
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let block = d.global().blocks[v].clone();
        let len = block.len();
        let random: Vec<BigRational> = (0..len)
            .map(|_| BigRational::from_integer(rng.gen_range(-3..=3).into()))
            .collect();
        let x = if i % 2 == 0 {
            random
        } else {
            let rows: Vec<usize> = block.collect();
            int_to_rat(&d.int_matrix().submatrix(&rows, &rows)).mul_vec(&random)
        };
        d.local_duality(v, &x)
    });
    let mut s = DualitySweep {
        samples: outcomes.len(),
        ..Default::default()
    };
    for (image, orth) in outcomes {
        s.in_image += usize::from(image);
        s.mismatches += usize::from(image != orth);
    }
    s
}
