//! Divisors on weak tropical surfaces: functions linear on simplices, ridge
//! divisors, Cartier tests, the intersection pairing and its audits.
//!
//! Slope vectors are indexed like the rows of the global matrix `M_Δ`
//! (vertex file order, then link order); ridge divisors and cochains are
//! indexed by edge; functions by vertex.

mod files;
mod modulus;
mod pairing;
mod picard;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::DeltaComplex;
use crate::linalg::{
    int_to_rat, kernel_basis, rats_to_ints, solve_integral, solve_rational, IntMatrix, LinalgError,
    RatMatrix,
};
use crate::par::{self, Execution};
use crate::surface::{GlobalMatrix, WeakTropicalSurface};

pub use files::{parse_cochain_file, parse_divisor_file, parse_function_file};
pub use modulus::MaxModulus;
pub use pairing::{PairingReport, Triviality};
pub use picard::PicardReport;

/// Values at vertices.
pub type PlFunction = Vec<BigRational>;
/// Local equations, in `M_Δ` row order.
pub type SlopeVector = Vec<BigRational>;
/// Coefficients on edges.
pub type RidgeDivisor = Vec<BigRational>;
/// Integer values on edges oriented from slot 0 to slot 1.
pub type Cochain = Vec<BigInt>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    #[error("expected {expected} {what}, found {found}")]
    Length {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("local equations disagree on edge {0}")]
    Incompatible(String),
    #[error("coefficient on edge {0} is not an integer")]
    NonInteger(String),
    #[error("divisor is not Q-Cartier")]
    NotQCartier,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartierMode {
    Rational,
    Integral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierStatus {
    pub cartier: bool,
    /// Per vertex, a local slope vector `f_v` with `M_v f_v = d_v`.
    pub witnesses: Vec<Option<Vec<BigRational>>>,
}

impl CartierStatus {
    /// The witnesses concatenated into one slope vector.
    pub fn slopes(&self) -> Option<SlopeVector> {
        let mut out = Vec::new();
        for w in &self.witnesses {
            out.extend(w.as_ref()?.iter().cloned());
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainDivisor {
    pub divisor: RidgeDivisor,
    pub cartier: bool,
}

/// `γ` is a cocycle iff `∂₂ᵀ γ = 0`.
pub fn is_cocycle(c: &DeltaComplex, gamma: &[BigInt]) -> bool {
    c.coboundary_of(gamma).iter().all(Zero::is_zero)
}

/// Divisor computations on one surface, with `M_Δ` built once.
#[derive(Clone, Debug)]
pub struct Divisors<'a> {
    surface: &'a WeakTropicalSurface,
    global: GlobalMatrix,
    m: RatMatrix,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

impl<'a> Divisors<'a> {
    pub fn new(surface: &'a WeakTropicalSurface) -> Self {
        let global = surface.global_matrix();
        let m = int_to_rat(&global.matrix);
        Divisors { surface, global, m }
    }

    pub fn surface(&self) -> &WeakTropicalSurface {
        self.surface
    }

    fn complex(&self) -> &DeltaComplex {
        self.surface.complex()
    }

    pub fn global(&self) -> &GlobalMatrix {
        &self.global
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.m
    }

    pub fn int_matrix(&self) -> &IntMatrix {
        &self.global.matrix
    }

    pub fn dim(&self) -> usize {
        self.global.index.len()
    }

    fn check_len(
        &self,
        what: &'static str,
        expected: usize,
        found: usize,
    ) -> Result<(), DivisorError> {
        if expected == found {
            Ok(())
        } else {
            Err(DivisorError::Length {
                what,
                expected,
                found,
            })
        }
    }

    /// Entry at `(e, s)` is `φ(end[1−s]) − φ(end[s])`.
    pub fn encode_function(&self, phi: &[BigRational]) -> Result<SlopeVector, DivisorError> {
        let c = self.complex();
        self.check_len("vertex values", c.num_vertices(), phi.len())?;
        Ok(self
            .global
            .index
            .iter()
            .map(|&inc| &phi[c.endpoint(inc.opposite())] - &phi[c.endpoint(inc)])
            .collect())
    }

    /// `−α(e,0)φ(end₀) − α(e,1)φ(end₁) + Σ φ(w)` over the facet corners
    /// opposite `e`.
    pub fn divisor_of_function(&self, phi: &[BigRational]) -> Result<RidgeDivisor, DivisorError> {
        let c = self.complex();
        self.check_len("vertex values", c.num_vertices(), phi.len())?;
        let mut d: RidgeDivisor = c
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let a0 = q(self.surface.alpha_values()[2 * k]);
                let a1 = q(self.surface.alpha_values()[2 * k + 1]);
                -(a0 * &phi[e.ends[0]]) - a1 * &phi[e.ends[1]]
            })
            .collect();
        for f in c.facets() {
            for (i, s) in f.sides.iter().enumerate() {
                d[s.edge] += &phi[f.corners[i]];
            }
        }
        Ok(d)
    }

    /// `M_Δ f`, in row order.
    pub fn apply(&self, f: &[BigRational]) -> Vec<BigRational> {
        self.m.mul_vec(f)
    }

    /// The divisor whose local equations are `f`, read off `M_Δ f`; both
    /// slots of each edge must agree.
    pub fn divisor_of_slopes(&self, f: &[BigRational]) -> Result<RidgeDivisor, DivisorError> {
        self.check_len("slope entries", self.dim(), f.len())?;
        let mf = self.global.to_ids(&self.apply(f));
        (0..self.complex().num_edges())
            .map(|e| {
                if mf[2 * e] == mf[2 * e + 1] {
                    Ok(mf[2 * e].clone())
                } else {
                    Err(DivisorError::Incompatible(
                        self.complex().edges()[e].name.clone(),
                    ))
                }
            })
            .collect()
    }

    pub fn is_compatible(&self, f: &[BigRational]) -> bool {
        self.divisor_of_slopes(f).is_ok()
    }

    /// Solves `M_v f_v = d_v` at every vertex, over `ℚ` or `ℤ`.
    pub fn cartier_status(
        &self,
        d: &[BigRational],
        mode: CartierMode,
    ) -> Result<CartierStatus, DivisorError> {
        let c = self.complex();
        self.check_len("edge coefficients", c.num_edges(), d.len())?;
        let d_int = match mode {
            CartierMode::Rational => None,
            CartierMode::Integral => Some(rats_to_ints(d).ok_or_else(|| {
                let e = d.iter().position(|x| !x.is_integer()).unwrap_or(0);
                DivisorError::NonInteger(c.edges()[e].name.clone())
            })?),
        };
        let witnesses: Vec<Option<Vec<BigRational>>> =
            par::map(Execution::default(), &self.global.blocks, |block| {
                let rows: Vec<usize> = block.clone().collect();
                let local = self.global.matrix.submatrix(&rows, &rows);
                let incs = &self.global.index[block.clone()];
                match &d_int {
                    None => {
                        let rhs: Vec<BigRational> =
                            incs.iter().map(|i| d[i.edge].clone()).collect();
                        solve_rational(&int_to_rat(&local), &rhs)
                    }
                    Some(di) => {
                        let rhs: Vec<BigInt> = incs.iter().map(|i| di[i.edge].clone()).collect();
                        solve_integral(&local, &rhs)
                            .map(|x| x.into_iter().map(BigRational::from_integer).collect())
                    }
                }
            });
        Ok(CartierStatus {
            cartier: witnesses.iter().all(Option::is_some),
            witnesses,
        })
    }

    /// `fᵀ M_Δ f′` for two compatible local-equation vectors.
    pub fn intersection_degree(
        &self,
        f: &[BigRational],
        g: &[BigRational],
    ) -> Result<BigRational, DivisorError> {
        self.divisor_of_slopes(f)?;
        self.divisor_of_slopes(g)?;
        Ok(self.m.bilinear(f, g))
    }

    /// `f_γ` with `γ(e)` at `(e, 0)` and `−γ(e)` at `(e, 1)`.
    pub fn cochain_slopes(&self, gamma: &[BigInt]) -> Result<SlopeVector, DivisorError> {
        self.check_len("cochain values", self.complex().num_edges(), gamma.len())?;
        Ok(self
            .global
            .index
            .iter()
            .map(|inc| {
                let g = BigRational::from_integer(gamma[inc.edge].clone());
                if inc.slot == 0 {
                    g
                } else {
                    -g
                }
            })
            .collect())
    }

    /// The divisor read from slot 0 of `M_Δ f_γ`, and whether `f_γ` is a
    /// compatible system of local equations.
    pub fn cochain_divisor(&self, gamma: &[BigInt]) -> Result<CochainDivisor, DivisorError> {
        let f = self.cochain_slopes(gamma)?;
        let mf = self.global.to_ids(&self.apply(&f));
        let n = self.complex().num_edges();
        Ok(CochainDivisor {
            divisor: (0..n).map(|e| mf[2 * e].clone()).collect(),
            cartier: (0..n).all(|e| mf[2 * e] == mf[2 * e + 1]),
        })
    }

    /// Encodings of the hat functions `φ_v(w) = δ_vw`.
    pub fn hat_encodings(&self) -> Vec<SlopeVector> {
        let nv = self.complex().num_vertices();
        (0..nv)
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
                self.encode_function(&phi).expect("length matches")
            })
            .collect()
    }

    /// The `E × N` matrix with rows `c_e`: `+1` at `(e,0)`, `−1` at `(e,1)`.
    pub fn compatibility_matrix(&self) -> RatMatrix {
        let n = self.dim();
        let mut c = RatMatrix::zeros(self.complex().num_edges(), n);
        for (row, inc) in self.global.index.iter().enumerate() {
            c[(inc.edge, row)] = if inc.slot == 0 { q(1) } else { q(-1) };
        }
        c
    }

    pub fn kernel_of_m(&self) -> Vec<SlopeVector> {
        kernel_basis(&self.m)
    }

    /// Rational image membership of a local vector at a vertex block, and
    /// its orthogonality to `ker M_v`.
    pub fn local_duality(&self, v: usize, x: &[BigRational]) -> (bool, bool) {
        let block = self.global.blocks[v].clone();
        let rows: Vec<usize> = block.collect();
        let local = int_to_rat(&self.global.matrix.submatrix(&rows, &rows));
        let in_image = solve_rational(&local, x).is_some();
        let orthogonal = kernel_basis(&local)
            .iter()
            .all(|k| crate::linalg::dot(k, x).is_zero());
        (in_image, orthogonal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{inertia, Inertia};
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn zs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn constant_functions() {
        for (_, s) in corpus::surfaces() {
            let d = Divisors::new(&s);
            let phi = vec![q(3); s.complex().num_vertices()];
            assert!(d.encode_function(&phi).unwrap().iter().all(Zero::is_zero));
            assert!(d
                .divisor_of_function(&phi)
                .unwrap()
                .iter()
                .all(Zero::is_zero));
        }
    }

    #[test]
    fn octahedron_quotient_function() {
        let s = corpus::octahedron_quotient();
        let d = Divisors::new(&s);
        let phi = qs(&[1, 0, 0]);
        // edges XY_p XY_m XZ_p XZ_m YZ_p YZ_m
        let expected = qs(&[-1, -1, -1, -1, 2, 2]);
        assert_eq!(d.divisor_of_function(&phi).unwrap(), expected);
        let f = d.encode_function(&phi).unwrap();
        assert_eq!(d.divisor_of_slopes(&f).unwrap(), expected);
        let ids = d.global().to_ids(&f);
        for e in 0..6 {
            let nonzero =
                usize::from(!ids[2 * e].is_zero()) + usize::from(!ids[2 * e + 1].is_zero());
            assert_eq!(nonzero, if e < 4 { 2 } else { 0 });
        }
    }

    #[test]
    fn single_edge_on_octahedron_quotient() {
        let s = corpus::octahedron_quotient();
        let d = Divisors::new(&s);
        let mut div = vec![q(0); 6];
        div[0] = q(1);
        let status = d.cartier_status(&div, CartierMode::Rational).unwrap();
        // Oracle: each M_v is the 4-cycle adjacency minus the identity,
        // with eigenvalues 1, -1, -1, -3, hence invertible.
        for lm in s.local_matrices() {
            let i = inertia(&int_to_rat(&lm.matrix)).unwrap();
            assert_eq!(i, Inertia::new(1, 0, 3));
        }
        assert!(status.cartier);
        let f = status.slopes().unwrap();
        assert_eq!(d.divisor_of_slopes(&f).unwrap(), div);
    }

    #[test]
    fn torus_edge_pairing() {
        let s = corpus::torus();
        let d = Divisors::new(&s);
        let slopes: Vec<SlopeVector> = (0..3)
            .map(|e| {
                let mut div = vec![q(0); 3];
                div[e] = q(1);
                d.cartier_status(&div, CartierMode::Rational)
                    .unwrap()
                    .slopes()
                    .unwrap()
            })
            .collect();
        let mut p = RatMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                p[(i, j)] = d.intersection_degree(&slopes[i], &slopes[j]).unwrap();
            }
        }
        assert_eq!(
            p,
            crate::linalg::rat_matrix(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
        assert_eq!(inertia(&p).unwrap(), Inertia::new(1, 0, 2));
    }

    #[test]
    fn cochains_on_a_triangle() {
        let s = corpus::triangle();
        let d = Divisors::new(&s);
        assert!(is_cocycle(s.complex(), &zs(&[0, 0, 0])));
        assert!(!is_cocycle(s.complex(), &zs(&[1, 0, 0])));
        assert!(!d.cochain_divisor(&zs(&[1, 0, 0])).unwrap().cartier);
        let zero = d.cochain_divisor(&zs(&[0, 0, 0])).unwrap();
        assert!(zero.cartier && zero.divisor.iter().all(Zero::is_zero));
    }

    #[test]
    fn integral_mode_rejects_fractions() {
        let s = corpus::torus();
        let d = Divisors::new(&s);
        let div = vec![BigRational::new(1.into(), 2.into()), q(0), q(0)];
        assert!(matches!(
            d.cartier_status(&div, CartierMode::Integral),
            Err(DivisorError::NonInteger(_))
        ));
    }

    #[test]
    fn incompatible_slopes_named() {
        let s = corpus::triangle();
        let d = Divisors::new(&s);
        let mut f = vec![q(0); 6];
        f[0] = q(1);
        assert!(matches!(
            d.intersection_degree(&f, &f),
            Err(DivisorError::Incompatible(_))
        ));
    }

    fn small_rats(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
        proptest::collection::vec(-5i64..6, n).prop_map(|v| qs(&v))
    }

    proptest! {
        #[test]
        fn divisor_formula_matches_matrix(seed in any::<u64>(), n in 1usize..8, vals in proptest::collection::vec(-5i64..6, 32)) {
            let s = crate::random::random_weak_surface(seed, n);
            let d = Divisors::new(&s);
            let phi = qs(&vals[..s.complex().num_vertices()]);
            let f = d.encode_function(&phi).unwrap();
            prop_assert_eq!(d.divisor_of_slopes(&f).unwrap(), d.divisor_of_function(&phi).unwrap());
        }

        #[test]
        fn pairing_symmetric_and_invariant(seed in any::<u64>(), n in 1usize..7,
                                           a in small_rats(32), b in small_rats(32), phi in small_rats(32)) {
            let s = crate::random::random_weak_surface(seed, n);
            let d = Divisors::new(&s);
            let w = d.qcartier_space();
            prop_assume!(!w.is_empty());
            let comb = |c: &[BigRational]| -> SlopeVector {
                let mut out = vec![q(0); d.dim()];
                for (k, v) in w.iter().enumerate() {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += &c[k % c.len()] * x;
                    }
                }
                out
            };
            let f = comb(&a);
            let g = comb(&b);
            let fg = d.intersection_degree(&f, &g).unwrap();
            prop_assert_eq!(&fg, &d.intersection_degree(&g, &f).unwrap());
            let enc = d.encode_function(&phi[..s.complex().num_vertices()]).unwrap();
            let shifted: SlopeVector = f.iter().zip(&enc).map(|(x, y)| x + y).collect();
            prop_assert_eq!(d.intersection_degree(&shifted, &g).unwrap(), fg);
        }
    }
}
