//! Two-dimensional unimodular fans: balancing, local matrices, the fan
//! Todd class, and stellar subdivision.

mod cone_complex;

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::error::{Error as CrateError, ParseError, ParseErrorKind};
use crate::linalg::IntMatrix;
use crate::text::{expect_arity, expect_name, parse_i64, syntax, tokenized_lines};

pub use cone_complex::AbstractConeComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("ray {0} is zero")]
    ZeroRay(String),
    #[error("ray {0} is not primitive")]
    NonPrimitive(String),
    #[error("ray {0} has {1} coordinates, expected {2}")]
    WrongDimension(String, usize, usize),
    #[error("rays {0} and {1} coincide")]
    DuplicateRay(String, String),
    #[error("duplicate ray name {0}")]
    DuplicateName(String),
    #[error("cone ({0}, {1}) has linearly dependent rays")]
    Dependent(String, String),
    #[error("cone ({0}, {1}) is not unimodular (minor gcd {2})")]
    NonUnimodular(String, String, i64),
    #[error("ray {0} is not balanced")]
    Unbalanced(String),
    #[error("no cone ({0}, {1})")]
    MissingCone(String, String),
    #[error("unknown ray {0}")]
    UnknownRay(String),
    #[error("ray index {0} out of range")]
    BadIndex(usize),
    #[error("matrix does not match the cone adjacency at ({0}, {1})")]
    AdjacencyMismatch(usize, usize),
}

/// A 2-dimensional fan in `ℤᴺ` with primitive rays and unimodular cones.
/// Cones form a multiset of unordered ray pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedFan2 {
    ambient: usize,
    names: Vec<String>,
    rays: Vec<Vec<i64>>,
    cones: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BalancingData {
    pub ray: usize,
    pub d: i64,
    pub c: i64,
    pub alpha0: i64,
}

/// `a_b` for the ray between `a` and `b`, with a numeric suffix if taken.
pub(crate) fn joined_name(names: &[String], v: usize, w: usize) -> String {
    let base = format!("{}_{}", names[v], names[w]);
    let mut name = base.clone();
    let mut k = 2;
    while names.contains(&name) {
        name = format!("{base}_{k}");
        k += 1;
    }
    name
}

/// gcd of all 2×2 minors of the pair.
pub fn minor_gcd(u: &[i64], w: &[i64]) -> i64 {
    let mut g = 0i64;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            g = g.gcd(&(u[i] * w[j] - u[j] * w[i]));
        }
    }
    g
}

fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

impl EmbeddedFan2 {
    pub fn new(
        ambient: usize,
        names: Vec<String>,
        rays: Vec<Vec<i64>>,
        cones: Vec<(usize, usize)>,
    ) -> Result<Self, FanError> {
        let fan = EmbeddedFan2 {
            ambient,
            names,
            rays,
            cones,
        };
        fan.validate()?;
        Ok(fan)
    }

    /// Checks every invariant and returns the minor gcd of each cone (all
    /// equal to one on success).
    pub fn validate(&self) -> Result<Vec<i64>, FanError> {
        assert_eq!(self.names.len(), self.rays.len());
        let mut seen_names = HashMap::new();
        let mut seen_rays: HashMap<&[i64], usize> = HashMap::new();
        for (i, (name, r)) in self.names.iter().zip(&self.rays).enumerate() {
            if seen_names.insert(name.as_str(), i).is_some() {
                return Err(FanError::DuplicateName(name.clone()));
            }
            if r.len() != self.ambient {
                return Err(FanError::WrongDimension(
                    name.clone(),
                    r.len(),
                    self.ambient,
                ));
            }
            match content(r) {
                0 => return Err(FanError::ZeroRay(name.clone())),
                1 => {}
                _ => return Err(FanError::NonPrimitive(name.clone())),
            }
        }
        let mut minors = Vec::with_capacity(self.cones.len());
        for &(a, b) in &self.cones {
            for x in [a, b] {
                if x >= self.rays.len() {
                    return Err(FanError::BadIndex(x));
                }
            }
            let g = minor_gcd(&self.rays[a], &self.rays[b]);
            let (na, nb) = (self.names[a].clone(), self.names[b].clone());
            match g {
                0 => return Err(FanError::Dependent(na, nb)),
                1 => {}
                _ => return Err(FanError::NonUnimodular(na, nb, g)),
            }
            minors.push(g);
        }
        for (i, r) in self.rays.iter().enumerate() {
            if let Some(&j) = seen_rays.get(r.as_slice()) {
                return Err(FanError::DuplicateRay(
                    self.names[j].clone(),
                    self.names[i].clone(),
                ));
            }
            seen_rays.insert(r, i);
        }
        Ok(minors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[(usize, usize)] {
        &self.cones
    }

    pub fn ray_index(&self, name: &str) -> Result<usize, FanError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FanError::UnknownRay(name.to_string()))
    }

    /// Number of cones containing the ray.
    pub fn cone_degree(&self, ray: usize) -> usize {
        self.cones
            .iter()
            .map(|&(a, b)| usize::from(a == ray) + usize::from(b == ray))
            .sum()
    }

    /// `(d, c, α₀ = d − c)` with `Σ neighbors = c·v`.
    pub fn balancing_alpha(&self, ray: usize) -> Result<BalancingData, FanError> {
        let v = self.rays.get(ray).ok_or(FanError::BadIndex(ray))?;
        let mut sum = vec![0i64; self.ambient];
        let mut d = 0;
        for &(a, b) in &self.cones {
            let other = if a == ray {
                b
            } else if b == ray {
                a
            } else {
                continue;
            };
            d += 1;
            for (s, x) in sum.iter_mut().zip(&self.rays[other]) {
                *s += x;
            }
        }
        let k = v.iter().position(|&x| x != 0).expect("rays are nonzero");
        let unbalanced = || FanError::Unbalanced(self.names[ray].clone());
        if sum[k] % v[k] != 0 {
            return Err(unbalanced());
        }
        let c = sum[k] / v[k];
        if sum.iter().zip(v).any(|(s, x)| *s != c * x) {
            return Err(unbalanced());
        }
        Ok(BalancingData {
            ray,
            d,
            c,
            alpha0: d - c,
        })
    }

    pub fn balancing(&self) -> Result<Vec<BalancingData>, FanError> {
        (0..self.rays.len())
            .map(|r| self.balancing_alpha(r))
            .collect()
    }

    /// `M₀`: cone-adjacency counts off the diagonal, `−c` on it.
    pub fn fan_matrix(&self) -> Result<IntMatrix, FanError> {
        let bal = self.balancing()?;
        let n = self.rays.len();
        let mut m = IntMatrix::zeros(n, n);
        for &(a, b) in &self.cones {
            m[(a, b)] += 1;
            m[(b, a)] += 1;
        }
        for b in bal {
            m[(b.ray, b.ray)] = BigInt::from(-b.c);
        }
        Ok(m)
    }

    /// `(12 + 5·#cones − 6·#rays − Σ α₀)/12`.
    pub fn td2(&self) -> Result<BigRational, FanError> {
        let alpha: i64 = self.balancing()?.iter().map(|b| b.alpha0).sum();
        let p = 12 + 5 * self.cones.len() as i64 - 6 * self.rays.len() as i64 - alpha;
        Ok(BigRational::new(p.into(), 12.into()))
    }

    /// Position of the first cone on `{v, w}`.
    pub fn find_cone(&self, v: usize, w: usize) -> Option<usize> {
        self.cones
            .iter()
            .position(|&(a, b)| (a, b) == (v, w) || (a, b) == (w, v))
    }

    /// Replaces the cone on `{v, w}` by `(v, v+w)` and `(v+w, w)`. The new
    /// ray is appended and named `v+w`.
    pub fn stellar_subdivide(&self, v: usize, w: usize) -> Result<EmbeddedFan2, FanError> {
        let name = |i: usize| self.names.get(i).cloned().unwrap_or_else(|| i.to_string());
        let pos = self
            .find_cone(v, w)
            .ok_or_else(|| FanError::MissingCone(name(v), name(w)))?;
        let (v, w) = self.cones[pos];
        let ray: Vec<i64> = self.rays[v]
            .iter()
            .zip(&self.rays[w])
            .map(|(a, b)| a + b)
            .collect();
        let mut fan = self.clone();
        let n = fan.rays.len();
        fan.names.push(joined_name(&self.names, v, w));
        fan.rays.push(ray);
        fan.cones.splice(pos..=pos, [(v, n), (n, w)]);
        fan.validate()?;
        Ok(fan)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ambient {}\n", self.ambient);
        for (n, r) in self.names.iter().zip(&self.rays) {
            let coords: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(out, "ray {n} {}", coords.join(" ")).unwrap();
        }
        for &(a, b) in &self.cones {
            writeln!(out, "cone {} {}", self.names[a], self.names[b]).unwrap();
        }
        out
    }
}

/// A parsed fan plus notes about rays that were scaled to be primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanFile {
    pub fan: EmbeddedFan2,
    pub warnings: Vec<String>,
}

pub fn parse_fan(text: &str) -> Result<FanFile, CrateError> {
    let mut ambient: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    let mut warnings = Vec::new();
    for (line, toks) in tokenized_lines(text) {
        match toks[0].text {
            "ambient" => {
                expect_arity(line, &toks, 2)?;
                if ambient.is_some() {
                    return Err(syntax(line, toks[0].column, "repeated `ambient`").into());
                }
                let n = parse_i64(line, toks[1])?;
                if n < 2 {
                    return Err(syntax(
                        line,
                        toks[1].column,
                        "ambient dimension must be at least 2",
                    )
                    .into());
                }
                ambient = Some(n as usize);
            }
            "ray" => {
                let Some(n) = ambient else {
                    return Err(syntax(line, toks[0].column, "`ambient` must come first").into());
                };
                expect_arity(line, &toks, n + 2)?;
                let name = expect_name(line, toks[1])?;
                if names.iter().any(|x| x == name) {
                    return Err(ParseError::new(
                        line,
                        toks[1].column,
                        ParseErrorKind::Duplicate {
                            kind: "ray",
                            name: name.to_string(),
                        },
                    )
                    .into());
                }
                let mut r = toks[2..]
                    .iter()
                    .map(|&t| parse_i64(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let g = content(&r);
                if g == 0 {
                    return Err(syntax(line, toks[2].column, format!("ray {name} is zero")).into());
                }
                if g > 1 {
                    r.iter_mut().for_each(|x| *x /= g);
                    warnings.push(format!(
                        "line {line}: ray {name} divided by {g} to make it primitive"
                    ));
                }
                names.push(name.to_string());
                rays.push(r);
            }
            "cone" => {
                expect_arity(line, &toks, 3)?;
                let mut ends = [0; 2];
                for (k, e) in ends.iter_mut().enumerate() {
                    let t = toks[1 + k];
                    *e = names.iter().position(|x| x == t.text).ok_or_else(|| {
                        ParseError::new(
                            line,
                            t.column,
                            ParseErrorKind::UnknownIdentifier {
                                kind: "ray",
                                name: t.text.to_string(),
                            },
                        )
                    })?;
                }
                cones.push((ends[0], ends[1]));
            }
            other => {
                return Err(
                    syntax(line, toks[0].column, format!("unknown keyword `{other}`")).into(),
                );
            }
        }
    }
    let ambient = ambient.ok_or_else(|| syntax(1, 1, "missing `ambient` line"))?;
    let fan = EmbeddedFan2::new(ambient, names, rays, cones)?;
    Ok(FanFile { fan, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{inertia, int_matrix, int_to_rat, Inertia};

    fn fan(text: &str) -> EmbeddedFan2 {
        parse_fan(text).unwrap().fan
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn new_ray_names_stay_valid() {
        let names: Vec<String> = ["a", "b", "a_b"].map(String::from).to_vec();
        assert_eq!(joined_name(&names, 0, 1), "a_b_2");
        let plane = corpus::fans().remove(0).1;
        let sub = plane.stellar_subdivide(0, 1).unwrap();
        assert_eq!(sub.names().last().unwrap(), "r1_r2");
        assert_eq!(fan(&sub.to_text()), sub);
    }

    #[test]
    fn plane_fan() {
        let f = fan(corpus::PLANE_FAN);
        for r in 0..3 {
            let b = f.balancing_alpha(r).unwrap();
            assert_eq!((b.d, b.c, b.alpha0), (2, -1, 3));
        }
        let m = f.fan_matrix().unwrap();
        assert_eq!(m, int_matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]));
        assert_eq!(inertia(&int_to_rat(&m)).unwrap(), Inertia::new(1, 2, 0));
        assert_eq!(f.td2().unwrap(), q(0, 1));
    }

    #[test]
    fn invalid_cones() {
        let bad = "ambient 2\nray a 1 0\nray b 1 2\ncone a b\n";
        assert!(matches!(
            parse_fan(bad),
            Err(CrateError::Fan(FanError::NonUnimodular(_, _, 2)))
        ));
        let dep = "ambient 2\nray a 1 0\nray b 2 0\ncone a b\n";
        assert!(matches!(
            parse_fan(dep),
            Err(CrateError::Fan(FanError::Dependent(..)))
        ));
        let dup = "ambient 2\nray a 1 0\nray b 2 0\n";
        assert!(matches!(
            parse_fan(dup),
            Err(CrateError::Fan(FanError::DuplicateRay(..)))
        ));
        let r = EmbeddedFan2::new(
            2,
            vec!["a".into(), "b".into()],
            vec![vec![1, 0], vec![-1, 0]],
            vec![(0, 1)],
        );
        assert!(matches!(r, Err(FanError::Dependent(..))));
        let np = EmbeddedFan2::new(2, vec!["a".into()], vec![vec![2, 0]], vec![]);
        assert!(matches!(np, Err(FanError::NonPrimitive(_))));
    }

    #[test]
    fn normalization_warns() {
        let f = parse_fan("ambient 2\nray a 2 4\nray b 0 1\ncone a b\n").unwrap();
        assert_eq!(f.fan.rays()[0], [1, 2]);
        assert_eq!(f.warnings.len(), 1);
    }

    #[test]
    fn tripod_line() {
        let f = fan(corpus::TRIPOD_LINE_FAN);
        let up = f.balancing_alpha(f.ray_index("up").unwrap()).unwrap();
        assert_eq!((up.d, up.c, up.alpha0), (3, 0, 3));
        let a = f.balancing_alpha(f.ray_index("a").unwrap()).unwrap();
        assert_eq!((a.d, a.c, a.alpha0), (2, 0, 2));
        let m = f.fan_matrix().unwrap();
        assert!((0..5).all(|i| m[(i, i)] == BigInt::from(0)));
        assert_eq!(f.td2().unwrap(), q(0, 1));
    }

    #[test]
    fn quadrant_subdivision() {
        let f = fan("ambient 2\nray x 1 0\nray y 0 1\ncone x y\n");
        let g = f.stellar_subdivide(0, 1).unwrap();
        assert_eq!(g.rays()[2], [1, 1]);
        assert_eq!(g.names()[2], "x_y");
        assert_eq!(g.cones(), [(0, 2), (2, 1)]);
        assert!(matches!(
            g.stellar_subdivide(0, 1),
            Err(FanError::MissingCone(..))
        ));
    }

    #[test]
    fn subdivision_alpha_update() {
        let f = fan(corpus::PLANE_FAN);
        let g = f.stellar_subdivide(0, 1).unwrap();
        let before = f.balancing().unwrap();
        let after = g.balancing().unwrap();
        assert_eq!(after[0].alpha0, before[0].alpha0 - 1);
        assert_eq!(after[1].alpha0, before[1].alpha0 - 1);
        assert_eq!(after[2].alpha0, before[2].alpha0);
        assert_eq!(after[3].alpha0, 1);
        assert_eq!(g.td2().unwrap(), f.td2().unwrap());
    }

    #[test]
    fn unbalanced_ray() {
        let f = fan("ambient 2\nray x 1 0\nray y 0 1\ncone x y\n");
        assert!(matches!(f.balancing_alpha(0), Err(FanError::Unbalanced(_))));
        assert!(f.td2().is_err());
    }

    #[test]
    fn text_round_trip() {
        for (_, f) in corpus::fans() {
            assert_eq!(fan(&f.to_text()), f);
        }
    }
}
