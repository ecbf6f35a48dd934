//! Cone complexes without coordinates, carrying only the local matrix.

use num_bigint::BigInt;

use super::{EmbeddedFan2, FanError};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractConeComplex {
    pub rays: Vec<String>,
    pub cones: Vec<(usize, usize)>,
    pub matrix: IntMatrix,
}

impl AbstractConeComplex {
    /// Checks that the off-diagonal entries are the cone-adjacency counts.
    pub fn new(
        rays: Vec<String>,
        cones: Vec<(usize, usize)>,
        matrix: IntMatrix,
    ) -> Result<Self, FanError> {
        let k = AbstractConeComplex {
            rays,
            cones,
            matrix,
        };
        k.check_adjacency()?;
        Ok(k)
    }

    pub fn from_fan(fan: &EmbeddedFan2) -> Result<Self, FanError> {
        Self::new(
            fan.names().to_vec(),
            fan.cones().to_vec(),
            fan.fan_matrix()?,
        )
    }

    pub fn check_adjacency(&self) -> Result<(), FanError> {
        let n = self.rays.len();
        assert_eq!((self.matrix.rows(), self.matrix.cols()), (n, n));
        let mut adj = vec![vec![0i64; n]; n];
        for &(a, b) in &self.cones {
            if a >= n || b >= n {
                return Err(FanError::BadIndex(a.max(b)));
            }
            adj[a][b] += 1;
            adj[b][a] += 1;
        }
        for (i, row) in adj.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                if i != j && self.matrix[(i, j)] != BigInt::from(count) {
                    return Err(FanError::AdjacencyMismatch(i, j));
                }
            }
        }
        Ok(())
    }

    /// The matrix update of a stellar subdivision of the cone on `{v, w}`:
    /// the diagonal at `v` and `w` and their mutual entry drop by one, and
    /// the new ray gets a row with `1` at `v`, `w` and `−1` on the diagonal.
    pub fn subdivide(&self, v: usize, w: usize) -> Result<Self, FanError> {
        let pos = self
            .cones
            .iter()
            .position(|&(a, b)| (a, b) == (v, w) || (a, b) == (w, v))
            .ok_or_else(|| {
                let name = |i: usize| self.rays.get(i).cloned().unwrap_or_else(|| i.to_string());
                FanError::MissingCone(name(v), name(w))
            })?;
        let (v, w) = self.cones[pos];
        let n = self.rays.len();
        let mut m = IntMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        m[(v, v)] -= 1;
        m[(w, w)] -= 1;
        m[(v, w)] -= 1;
        m[(w, v)] -= 1;
        for x in [v, w] {
            m[(x, n)] = 1.into();
            m[(n, x)] = 1.into();
        }
        m[(n, n)] = (-1).into();
        let mut rays = self.rays.clone();
        rays.push(super::joined_name(&self.rays, v, w));
        let mut cones = self.cones.clone();
        cones.splice(pos..=pos, [(v, n), (n, w)]);
        Self::new(rays, cones, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{inertia, int_to_rat};
    use proptest::prelude::*;

    #[test]
    fn matches_embedded_subdivision() {
        for (_, f) in corpus::fans() {
            let k = AbstractConeComplex::from_fan(&f).unwrap();
            for &(v, w) in f.cones() {
                let embedded = f.stellar_subdivide(v, w).unwrap().fan_matrix().unwrap();
                assert_eq!(k.subdivide(v, w).unwrap().matrix, embedded);
            }
        }
    }

    #[test]
    fn all_ones_keeps_one_positive() {
        let f = crate::fans::parse_fan(corpus::PLANE_FAN).unwrap().fan;
        let k = AbstractConeComplex::from_fan(&f)
            .unwrap()
            .subdivide(0, 1)
            .unwrap();
        let i = inertia(&int_to_rat(&k.matrix)).unwrap();
        assert_eq!((i.positive, i.zero, i.negative), (1, 2, 1));
    }

    fn arb_complex() -> impl Strategy<Value = AbstractConeComplex> {
        (2usize..7)
            .prop_flat_map(|n| {
                let pairs = proptest::collection::vec((0..n, 0..n), 1..12);
                let diag = proptest::collection::vec(-4i64..5, n);
                (Just(n), pairs, diag)
            })
            .prop_filter_map("needs a cone", |(n, pairs, diag)| {
                let cones: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
                if cones.is_empty() {
                    return None;
                }
                let mut m = IntMatrix::zeros(n, n);
                for &(a, b) in &cones {
                    m[(a, b)] += 1;
                    m[(b, a)] += 1;
                }
                for (i, d) in diag.into_iter().enumerate() {
                    m[(i, i)] = d.into();
                }
                let rays = (0..n).map(|i| format!("r{i}")).collect();
                Some(AbstractConeComplex::new(rays, cones, m).unwrap())
            })
    }

    proptest! {
        #[test]
        fn positive_count_invariant(k in arb_complex(), pick in any::<prop::sample::Index>()) {
            let (v, w) = k.cones[pick.index(k.cones.len())];
            let k2 = k.subdivide(v, w).unwrap();
            let a = inertia(&int_to_rat(&k.matrix)).unwrap();
            let b = inertia(&int_to_rat(&k2.matrix)).unwrap();
            prop_assert_eq!(a.positive, b.positive);
            prop_assert_eq!(a.negative + 1, b.negative);
            prop_assert_eq!(a.zero, b.zero);
        }
    }
}
