//! Rank-3 simple matroids given by their rank-2 flats, their Bergman fans,
//! and the canonical-class and Todd-class audit.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::error::{Error as CrateError, ParseError, ParseErrorKind};
use crate::fans::{EmbeddedFan2, FanError};
use crate::linalg::{dot, int_to_rat, ints_to_rats, kernel_basis, solve_rational};
use crate::text::{expect_arity, parse_i64, syntax, tokenized_lines};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("need at least 3 elements, found {0}")]
    TooFewElements(usize),
    #[error("element {0} out of range")]
    ElementOutOfRange(usize),
    #[error("flat {0} repeats an element")]
    RepeatedElement(usize),
    #[error("flat {0} has fewer than two elements")]
    SmallFlat(usize),
    #[error("pair {{{0}, {1}}} lies in no flat")]
    UncoveredPair(usize, usize),
    #[error("pair {{{0}, {1}}} lies in two flats")]
    DoublyCoveredPair(usize, usize),
    #[error("need at least two flats")]
    TooFewFlats,
    #[error("K_V is not in the image of the fan matrix")]
    CanonicalNotCartier,
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid3 {
    n: usize,
    flats: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidInvariants {
    pub n: usize,
    pub m: usize,
    /// Complete flags, `Σ_S #S`.
    pub ell: usize,
    /// Number of flats through each element.
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidAudit {
    pub invariants: MatroidInvariants,
    pub kv2_closed: BigInt,
    pub kv2_fan: BigRational,
    pub td2_closed: BigRational,
    pub td2_fan: BigRational,
    pub c2: BigInt,
    pub k_cartier: bool,
    /// Both particular solutions of `M₀ f = [K_V]` give the same `K_V²`.
    pub solution_independent: bool,
    /// The explicit witness with values −2, 1, −1, 2 solves `M₀ f = [K_V]`.
    pub witness_ok: bool,
    pub chern: bool,
}

impl MatroidAudit {
    pub fn all_ok(&self) -> bool {
        self.k_cartier
            && self.solution_independent
            && self.witness_ok
            && self.chern
            && BigRational::from_integer(self.kv2_closed.clone()) == self.kv2_fan
            && self.td2_closed == self.td2_fan
    }
}

impl Matroid3 {
    pub fn new(n: usize, flats: Vec<Vec<usize>>) -> Result<Self, MatroidError> {
        if n < 3 {
            return Err(MatroidError::TooFewElements(n));
        }
        let mut cover = vec![vec![0u8; n]; n];
        for (k, f) in flats.iter().enumerate() {
            if f.len() < 2 {
                return Err(MatroidError::SmallFlat(k));
            }
            if let Some(&x) = f.iter().find(|&&x| x >= n) {
                return Err(MatroidError::ElementOutOfRange(x));
            }
            if f.iter().collect::<BTreeSet<_>>().len() != f.len() {
                return Err(MatroidError::RepeatedElement(k));
            }
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    let (a, b) = (a.min(b), a.max(b));
                    cover[a][b] += 1;
                    if cover[a][b] > 1 {
                        return Err(MatroidError::DoublyCoveredPair(a, b));
                    }
                }
            }
        }
        for (a, row) in cover.iter().enumerate() {
            for (b, &count) in row.iter().enumerate().skip(a + 1) {
                if count == 0 {
                    return Err(MatroidError::UncoveredPair(a, b));
                }
            }
        }
        if flats.len() < 2 {
            return Err(MatroidError::TooFewFlats);
        }
        Ok(Matroid3 { n, flats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Vec<usize>] {
        &self.flats
    }

    pub fn invariants(&self) -> MatroidInvariants {
        let mut b = vec![0; self.n];
        for f in &self.flats {
            for &a in f {
                b[a] += 1;
            }
        }
        MatroidInvariants {
            n: self.n,
            m: self.flats.len(),
            ell: self.flats.iter().map(Vec::len).sum(),
            b,
        }
    }

    /// Element rays `e0..` then flat rays `S0..` in `ℤ^{n−1}`, where
    /// `v_i = e_i` for `i < n−1`, `v_{n−1} = −Σ e_i`, `v_S = Σ_{A∈S} v_A`.
    /// One cone `(v_A, v_S)` per element of each flat.
    pub fn bergman_fan(&self) -> Result<EmbeddedFan2, MatroidError> {
        let d = self.n - 1;
        let element = |i: usize| -> Vec<i64> {
            if i < d {
                (0..d).map(|k| i64::from(k == i)).collect()
            } else {
                vec![-1; d]
            }
        };
        let mut names: Vec<String> = (0..self.n).map(|i| format!("e{i}")).collect();
        let mut rays: Vec<Vec<i64>> = (0..self.n).map(element).collect();
        let mut cones = Vec::new();
        for (k, f) in self.flats.iter().enumerate() {
            let mut v = vec![0; d];
            for &a in f {
                for (x, y) in v.iter_mut().zip(element(a)) {
                    *x += y;
                }
                cones.push((a, self.n + k));
            }
            names.push(format!("S{k}"));
            rays.push(v);
        }
        Ok(EmbeddedFan2::new(d, names, rays, cones)?)
    }

    /// The witness from the canonical-class computation: −2 on the first
    /// element, 1 on the others, −1 on flats through the first element and
    /// 2 on the rest.
    pub fn canonical_witness(&self) -> Vec<BigInt> {
        let mut f: Vec<BigInt> = (0..self.n)
            .map(|i| if i == 0 { -2 } else { 1 }.into())
            .collect();
        f.extend(
            self.flats
                .iter()
                .map(|s| if s.contains(&0) { -1 } else { 2 }.into()),
        );
        f
    }

    pub fn audit(&self) -> Result<MatroidAudit, MatroidError> {
        let inv = self.invariants();
        let (n, m, l) = (inv.n as i64, inv.m as i64, inv.ell as i64);
        let fan = self.bergman_fan()?;
        let m0 = fan.fan_matrix()?;
        let kv: Vec<BigInt> = (0..fan.rays().len())
            .map(|r| BigInt::from(fan.cone_degree(r) as i64 - 2))
            .collect();
        let m0q = int_to_rat(&m0);
        let kvq = ints_to_rats(&kv);
        let f1 = solve_rational(&m0q, &kvq).ok_or(MatroidError::CanonicalNotCartier)?;
        let kv2_fan = dot(&f1, &kvq);
        let kernel = kernel_basis(&m0q);
        let f2: Vec<BigRational> = kernel.iter().fold(f1.clone(), |acc, k| {
            acc.iter().zip(k).map(|(a, b)| a + b).collect()
        });
        let solution_independent = m0q.mul_vec(&f2) == kvq && dot(&f2, &kvq) == kv2_fan;
        let witness_ok = m0.mul_vec(&self.canonical_witness()) == kv;
        let td2_fan = fan.td2()?;
        let c2 = BigInt::from(3 - 2 * n - m + l);
        let twelve = BigRational::from_integer(12.into());
        let chern = &twelve * &td2_fan == &kv2_fan + BigRational::from_integer(c2.clone());
        Ok(MatroidAudit {
            kv2_closed: BigInt::from(-5 * n - 4 * m + 3 * l + 9),
            td2_closed: BigRational::new((-7 * n - 5 * m + 4 * l + 12).into(), 12.into()),
            invariants: inv,
            kv2_fan,
            td2_fan,
            c2,
            k_cartier: true,
            solution_independent,
            witness_ok,
            chern,
        })
    }
}

pub fn parse_matroid(text: &str) -> Result<Matroid3, CrateError> {
    let mut n: Option<usize> = None;
    let mut flats = Vec::new();
    for (line, toks) in tokenized_lines(text) {
        match toks[0].text {
            "elements" => {
                expect_arity(line, &toks, 2)?;
                if n.is_some() {
                    return Err(syntax(line, toks[0].column, "repeated `elements`").into());
                }
                let v = parse_i64(line, toks[1])?;
                if v < 0 {
                    return Err(
                        syntax(line, toks[1].column, "element count must be nonnegative").into(),
                    );
                }
                n = Some(v as usize);
            }
            "flat" => {
                let Some(size) = n else {
                    return Err(syntax(line, toks[0].column, "`elements` must come first").into());
                };
                let mut f = Vec::with_capacity(toks.len() - 1);
                for &t in &toks[1..] {
                    let x = parse_i64(line, t)?;
                    if x < 0 || x as usize >= size {
                        return Err(ParseError::new(
                            line,
                            t.column,
                            ParseErrorKind::UnknownIdentifier {
                                kind: "element",
                                name: t.text.to_string(),
                            },
                        )
                        .into());
                    }
                    f.push(x as usize);
                }
                flats.push(f);
            }
            other => {
                return Err(
                    syntax(line, toks[0].column, format!("unknown keyword `{other}`")).into(),
                );
            }
        }
    }
    let n = n.ok_or_else(|| syntax(1, 1, "missing `elements` line"))?;
    Ok(Matroid3::new(n, flats)?)
}
