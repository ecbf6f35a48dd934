//! The second Todd class of a weak tropical surface and Noether's formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::complex::ComplexError;
use crate::surface::WeakTropicalSurface;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToddError {
    #[error("the link of vertex {0} is not a single cycle")]
    NotACycle(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Vertex-supported class with coefficients `numerators[v] / 12`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToddClass {
    pub numerators: Vec<i64>,
}

impl ToddClass {
    pub fn coefficient(&self, v: usize) -> BigRational {
        BigRational::new(self.numerators[v].into(), 12.into())
    }

    pub fn degree(&self) -> BigRational {
        BigRational::new(self.numerators.iter().sum::<i64>().into(), 12.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherReport {
    pub degree: BigRational,
    pub euler: i64,
    pub holds: bool,
}

/// `td₂` at `v` is `(12 + 5F_v − 6E_v − Σ α)/12`, the sum taking each link
/// node's own `α`.
pub fn td2_surface(t: &WeakTropicalSurface) -> ToddClass {
    let numerators = t
        .complex()
        .vertex_links()
        .iter()
        .map(|link| {
            let alpha: i64 = link.nodes.iter().map(|&n| t.alpha(n)).sum();
            12 + 5 * link.edge_count() as i64 - 6 * link.node_count() as i64 - alpha
        })
        .collect();
    ToddClass { numerators }
}

pub fn noether_check(t: &WeakTropicalSurface) -> NoetherReport {
    let degree = td2_surface(t).degree();
    let euler = t.complex().euler_characteristic();
    NoetherReport {
        holds: degree == BigRational::from_integer(BigInt::from(euler)),
        degree,
        euler,
    }
}

/// `1 − (1/12) Σ (α + 1)` over the link nodes, defined when `link(v)` is a
/// cycle.
pub fn ks_invariant(t: &WeakTropicalSurface, v: usize) -> Result<BigRational, ToddError> {
    let link = t.complex().vertex_link(v)?;
    if !link.is_cycle() {
        return Err(ToddError::NotACycle(t.complex().vertices()[v].clone()));
    }
    let s: i64 = link.nodes.iter().map(|&n| t.alpha(n) + 1).sum();
    Ok(BigRational::new((12 - s).into(), 12.into()))
}

/// Vertices with a cycle link, paired with `(ks_invariant, td₂ coefficient)`.
pub fn ks_comparison(t: &WeakTropicalSurface) -> Vec<(usize, BigRational, BigRational)> {
    let td = td2_surface(t);
    (0..t.complex().num_vertices())
        .filter_map(|v| ks_invariant(t, v).ok().map(|k| (v, k, td.coefficient(v))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::random::random_weak_surface;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn corpus_values() {
        let t = corpus::torus();
        assert_eq!(td2_surface(&t).numerators, [0]);
        assert_eq!(ks_invariant(&t, 0).unwrap(), q(0, 1));

        let o = corpus::octahedron_quotient();
        let td = td2_surface(&o);
        for v in 0..3 {
            assert_eq!(td.coefficient(v), q(1, 3));
            assert_eq!(ks_invariant(&o, v).unwrap(), q(1, 3));
        }
        assert!(noether_check(&o).holds);
        assert_eq!(noether_check(&o).degree, q(1, 1));

        let tri = corpus::triangle();
        assert!(matches!(
            ks_invariant(&tri, 0),
            Err(ToddError::NotACycle(_))
        ));
        assert_eq!(noether_check(&tri).euler, 1);
        assert!(noether_check(&tri).holds);
    }

    #[test]
    fn ks_agrees_where_defined() {
        for (_, s) in corpus::surfaces() {
            for (_, ks, td) in ks_comparison(&s) {
                assert_eq!(ks, td);
            }
        }
    }

    proptest! {
        #[test]
        fn noether_on_random_surfaces(seed in any::<u64>(), n in 1usize..12) {
            let s = random_weak_surface(seed, n);
            let r = noether_check(&s);
            prop_assert!(r.holds, "{} != {}", r.degree, r.euler);
        }

        #[test]
        fn ks_matches_on_cycle_links(seed in any::<u64>(), n in 1usize..12) {
            let s = random_weak_surface(seed, n);
            for (_, ks, td) in ks_comparison(&s) {
                prop_assert_eq!(ks, td);
            }
        }

        #[test]
        fn link_double_counting(seed in any::<u64>(), n in 1usize..12) {
            let s = random_weak_surface(seed, n);
            let c = s.complex();
            let links = c.vertex_links();
            prop_assert_eq!(links.iter().map(|l| l.node_count()).sum::<usize>(), 2 * c.num_edges());
            prop_assert_eq!(links.iter().map(|l| l.edge_count()).sum::<usize>(), 3 * c.num_facets());
            prop_assert_eq!(c.edge_degrees().iter().sum::<usize>(), 3 * c.num_facets());
            let (d1, d2) = c.boundary_matrices();
            prop_assert!(d1.matmul(&d2).is_zero());
        }
    }
}
