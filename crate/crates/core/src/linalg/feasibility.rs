//! Exact feasibility of `{x : A·x = b, C·x ≥ d}` by Fourier–Motzkin
//! elimination.
//!
//! Equalities are eliminated first by substitution (row reduction); the
//! remaining inequalities are projected one variable at a time. The worst
//! case is doubly exponential, so both the variable count and the size of
//! intermediate systems are capped.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::RatMatrix;
use super::rref::rref;
use super::LinalgError;

pub const DEFAULT_VARIABLE_CAP: usize = 64;
const CONSTRAINT_CAP: usize = 200_000;

/// `coeffs · x (= | ≥) rhs`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, rhs }
    }

    fn holds_ge(&self, x: &[BigRational]) -> bool {
        super::matrix::dot(&self.coeffs, x) >= self.rhs
    }

    // Scale so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = &*c / &lead;
            }
            self.rhs = &self.rhs / &lead;
        }
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub equalities: Vec<Constraint>,
    pub inequalities: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            ..Default::default()
        }
    }

    pub fn eq(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.equalities.push(Constraint::new(coeffs, rhs));
        self
    }

    pub fn ge(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.inequalities.push(Constraint::new(coeffs, rhs));
        self
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        self.equalities
            .iter()
            .all(|c| super::matrix::dot(&c.coeffs, x) == c.rhs)
            && self.inequalities.iter().all(|c| c.holds_ge(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides feasibility and returns one exact witness.
///
/// Back-substitution gives each variable the smallest admissible value
/// (its lower bound), or `min(0, upper)` when only an upper bound exists.
pub fn linear_feasibility(sys: &LinearSystem, cap: usize) -> Result<Feasibility, LinalgError> {
    let n = sys.num_vars;
    if n > cap {
        return Err(LinalgError::ResourceLimit(format!(
            "{n} variables exceeds the cap of {cap}"
        )));
    }

    // x_pivot = rhs - Σ_free coeff·x_free
    let mut pivot_rows: Vec<(usize, Vec<BigRational>, BigRational)> = Vec::new();
    let mut free: Vec<usize> = (0..n).collect();
    if !sys.equalities.is_empty() {
        let rows: Vec<Vec<BigRational>> = sys
            .equalities
            .iter()
            .map(|c| {
                let mut r = c.coeffs.clone();
                r.push(c.rhs.clone());
                r
            })
            .collect();
        let e = rref(&RatMatrix::from_rows(rows));
        if e.pivots.last() == Some(&n) {
            return Ok(Feasibility::Infeasible);
        }
        free.retain(|j| !e.pivots.contains(j));
        for (r, &p) in e.pivots.iter().enumerate() {
            let coeffs = free.iter().map(|&j| e.reduced[(r, j)].clone()).collect();
            pivot_rows.push((p, coeffs, e.reduced[(r, n)].clone()));
        }
    }

    // Rewrite inequalities over the free variables only.
    let m = free.len();
    let mut system: Vec<Constraint> = Vec::with_capacity(sys.inequalities.len());
    for c in &sys.inequalities {
        let mut coeffs: Vec<BigRational> = free.iter().map(|&j| c.coeffs[j].clone()).collect();
        let mut rhs = c.rhs.clone();
        for (p, pc, prhs) in &pivot_rows {
            let a = &c.coeffs[*p];
            if a.is_zero() {
                continue;
            }
            rhs -= a * prhs;
            for (k, x) in pc.iter().enumerate() {
                coeffs[k] -= a * x;
            }
        }
        system.push(Constraint::new(coeffs, rhs));
    }

    // Eliminate free variables from last to first, keeping every stage.
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(m + 1);
    let mut current = prune(system)?;
    for k in (0..m).rev() {
        let next = eliminate(&current, k)?;
        stages.push(current);
        current = next;
    }
    if current.iter().any(|c| c.rhs.is_positive()) {
        return Ok(Feasibility::Infeasible);
    }

    // stages[i] constrains free variables 0..=m-1-i.
    let mut y = vec![BigRational::zero(); m];
    for k in 0..m {
        let stage = &stages[m - 1 - k];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for c in stage {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = (0..k).map(|j| &c.coeffs[j] * &y[j]).sum();
            let bound = (&c.rhs - rest) / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        y[k] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }

    let mut x = vec![BigRational::zero(); n];
    for (k, &j) in free.iter().enumerate() {
        x[j] = y[k].clone();
    }
    for (p, pc, prhs) in &pivot_rows {
        let s: BigRational = pc.iter().zip(&y).map(|(a, b)| a * b).sum();
        x[*p] = prhs - s;
    }
    debug_assert!(sys.is_satisfied_by(&x));
    Ok(Feasibility::Feasible(x))
}

fn eliminate(system: &[Constraint], k: usize) -> Result<Vec<Constraint>, LinalgError> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for c in system {
        let a = &c.coeffs[k];
        if a.is_positive() {
            pos.push(c);
        } else if a.is_negative() {
            neg.push(c);
        } else {
            out.push(c.clone());
        }
    }
    if pos.len() * neg.len() + out.len() > CONSTRAINT_CAP {
        return Err(LinalgError::ResourceLimit(format!(
            "Fourier-Motzkin system exceeds {CONSTRAINT_CAP} constraints"
        )));
    }
    for p in &pos {
        for q in &neg {
            let sp = p.coeffs[k].recip();
            let sq = -q.coeffs[k].recip();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(a, b)| a * &sp + b * &sq)
                .collect();
            out.push(Constraint::new(coeffs, &p.rhs * &sp + &q.rhs * &sq));
        }
    }
    prune(out)
}

// Drops trivially true rows and exact duplicates; keeps infeasible constant
// rows so the caller can detect them.
fn prune(system: Vec<Constraint>) -> Result<Vec<Constraint>, LinalgError> {
    let mut seen = BTreeSet::new();
    for c in system {
        let c = c.normalized();
        if c.coeffs.iter().all(Zero::is_zero) {
            if c.rhs.is_positive() {
                return Ok(vec![c]);
            }
            continue;
        }
        seen.insert(c);
    }
    Ok(seen.into_iter().collect())
}
