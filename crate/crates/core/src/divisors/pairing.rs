//! The intersection pairing on `Pic_ridge ⊗ ℚ` and numerical triviality.

use num_rational::BigRational;
use num_traits::Zero;

use super::{CartierMode, DivisorError, Divisors, SlopeVector};
use crate::linalg::{inertia, kernel_basis, rank, solve_rational, span_dim, Inertia, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub w_dim: usize,
    /// Dimension of hat encodings plus `ker M_Δ`.
    pub trivial_dim: usize,
    /// `dim W − trivial_dim`, the rank of `Pic_ridge ⊗ ℚ`.
    pub pic_rank: usize,
    /// Representatives in `W` of a basis of the quotient.
    pub basis: Vec<SlopeVector>,
    pub pairing: RatMatrix,
    pub inertia: Inertia,
    pub kernel_dim: usize,
    /// Inertia after quotienting the kernel of the pairing.
    pub reduced: Inertia,
    /// Radical of the pairing on `W` equals `W ∩ (C + ker M_Δ)`.
    pub kernel_matches: bool,
}

impl PairingReport {
    pub fn rank_after_kernel(&self) -> usize {
        self.pic_rank - self.kernel_dim
    }

    /// `m + k ≤ 1`.
    pub fn hodge_verdict(&self) -> bool {
        self.inertia.positive + self.kernel_dim <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triviality {
    /// Local equations lie in `C + ker M_Δ`.
    pub algebraic: bool,
    /// Local equations pair to zero with all of `W`.
    pub numerical: bool,
}

fn combination(coeffs: &[BigRational], basis: &[SlopeVector], n: usize) -> SlopeVector {
    let mut out = vec![BigRational::zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

impl Divisors<'_> {
    /// Basis of `W = {f : c_eᵀ M_Δ f = 0 for every edge}`.
    pub fn qcartier_space(&self) -> Vec<SlopeVector> {
        kernel_basis(&self.compatibility_matrix().matmul(self.matrix()))
    }

    /// Columns spanning `C + ker M_Δ`.
    fn algebraic_generators(&self) -> Vec<SlopeVector> {
        let c = self.compatibility_matrix();
        let mut gens: Vec<SlopeVector> = (0..c.rows()).map(|e| c.row(e).to_vec()).collect();
        gens.extend(self.kernel_of_m());
        gens
    }

    pub fn ns_pairing(&self) -> PairingReport {
        let n = self.dim();
        let w = self.qcartier_space();
        let mut trivial: Vec<SlopeVector> = self.hat_encodings();
        trivial.extend(self.kernel_of_m());
        let trivial_dim = span_dim(&trivial);

        // Extend the trivial part greedily by elements of W.
        let mut span = trivial.clone();
        let mut current = trivial_dim;
        let mut basis = Vec::new();
        for v in &w {
            span.push(v.clone());
            let d = span_dim(&span);
            if d > current {
                current = d;
                basis.push(v.clone());
            } else {
                span.pop();
            }
        }

        let k = basis.len();
        let mut pairing = RatMatrix::zeros(k, k);
        for i in 0..k {
            let mb = self.matrix().mul_vec(&basis[i]);
            for j in 0..k {
                pairing[(i, j)] = crate::linalg::dot(&mb, &basis[j]);
            }
        }
        let inertia = inertia(&pairing).expect("pairing is symmetric");

        PairingReport {
            w_dim: w.len(),
            trivial_dim,
            pic_rank: k,
            kernel_dim: inertia.zero,
            reduced: Inertia::new(inertia.positive, 0, inertia.negative),
            kernel_matches: self.radical_matches(&w, n),
            basis,
            pairing,
            inertia,
        }
    }

    // rad(W) against W ∩ (C + ker M_Δ), by dimension and containment.
    fn radical_matches(&self, w: &[SlopeVector], n: usize) -> bool {
        if w.is_empty() {
            return true;
        }
        let wm = RatMatrix::from_cols(n, w);
        let gram = wm.transpose().matmul(self.matrix()).matmul(&wm);
        let radical: Vec<SlopeVector> = kernel_basis(&gram)
            .iter()
            .map(|c| combination(c, w, n))
            .collect();
        let alg = self.algebraic_generators();
        let alg_dim = span_dim(&alg);
        let mut both = w.to_vec();
        both.extend(alg.iter().cloned());
        let meet_dim = w.len() + alg_dim - span_dim(&both);
        if span_dim(&radical) != meet_dim {
            return false;
        }
        let g = RatMatrix::from_cols(n, &alg);
        let g_rank = rank(&g);
        radical.iter().all(|r| {
            let mut cols = alg.clone();
            cols.push(r.clone());
            rank(&RatMatrix::from_cols(n, &cols)) == g_rank
        })
    }

    /// Decides whether a ℚ-Cartier divisor is algebraically trivial, and
    /// independently whether it is numerically trivial.
    pub fn algebraic_triviality_q(&self, d: &[BigRational]) -> Result<Triviality, DivisorError> {
        let status = self.cartier_status(d, CartierMode::Rational)?;
        let f = status.slopes().ok_or(DivisorError::NotQCartier)?;
        let n = self.dim();
        let gens = self.algebraic_generators();
        let algebraic = solve_rational(&RatMatrix::from_cols(n, &gens), &f).is_some();
        let mf = self.matrix().mul_vec(&f);
        let numerical = self
            .qcartier_space()
            .iter()
            .all(|w| crate::linalg::dot(&mf, w).is_zero());
        Ok(Triviality {
            algebraic,
            numerical,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_bigint::BigInt;

    #[test]
    fn torus_report() {
        let s = corpus::torus();
        let d = Divisors::new(&s);
        let r = d.ns_pairing();
        assert_eq!(r.pic_rank, 3);
        assert_eq!(r.kernel_dim, 0);
        assert_eq!(r.rank_after_kernel(), 3);
        assert_eq!(r.inertia, Inertia::new(1, 0, 2));
        assert!(r.hodge_verdict());
        assert!(r.kernel_matches);
    }

    #[test]
    fn octahedron_quotient_report() {
        let s = corpus::octahedron_quotient();
        let r = Divisors::new(&s).ns_pairing();
        assert!(r.hodge_verdict());
        assert!(r.kernel_matches);
        assert_eq!(r.inertia.dim(), r.pic_rank);
    }

    #[test]
    fn encodings_and_cocycles_lie_in_w() {
        for (name, s) in corpus::surfaces() {
            let d = Divisors::new(&s);
            let w = d.qcartier_space();
            let wd = span_dim(&w);
            for h in d.hat_encodings() {
                let mut t = w.clone();
                t.push(h);
                assert_eq!(span_dim(&t), wd);
            }
            let nv = s.complex().num_vertices();
            let km = d.kernel_of_m().len();
            let mut trivial = d.hat_encodings();
            trivial.extend(d.kernel_of_m());
            assert!(w.len() >= span_dim(&trivial), "{name}");
            // Hat encodings meet ker M_Δ only in nonconstant functions with
            // zero divisor, which the weak-only strip has.
            if s.classify().tropical {
                assert!(w.len() + 1 >= nv + km, "{name}");
            } else if name == "strip" {
                assert_eq!(span_dim(&trivial) + 1, nv - 1 + km);
            }
        }
    }

    #[test]
    fn torus_triviality() {
        let s = corpus::torus();
        let d = Divisors::new(&s);
        let zero = vec![BigRational::zero(); 3];
        let t = d.algebraic_triviality_q(&zero).unwrap();
        assert!(t.algebraic && t.numerical);
        let mut edge = zero.clone();
        edge[0] = BigRational::from_integer(1.into());
        let t = d.algebraic_triviality_q(&edge).unwrap();
        assert!(!t.algebraic && !t.numerical);
        let mut cocycles = 0;
        for g in 0..27i64 {
            let gamma: Vec<BigInt> = [g % 3, g / 3 % 3, g / 9]
                .map(|x| BigInt::from(x - 1))
                .to_vec();
            if !super::super::is_cocycle(s.complex(), &gamma) {
                continue;
            }
            cocycles += 1;
            let cd = d.cochain_divisor(&gamma).unwrap();
            let t = d.algebraic_triviality_q(&cd.divisor).unwrap();
            assert!(t.algebraic && t.numerical);
        }
        assert!(cocycles > 1);
    }
}
