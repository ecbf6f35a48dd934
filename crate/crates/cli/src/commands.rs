use std::path::{Path, PathBuf};

use num_rational::BigRational;

use trop_core::cohomology::{integral_cohomology, integral_homology};
use trop_core::complex::parse_complex_with_alpha;
use trop_core::divisors::{
    is_cocycle, parse_cochain_file, parse_divisor_file, parse_function_file, CartierMode, Divisors,
    MaxModulus,
};
use trop_core::fans::{parse_fan, EmbeddedFan2};
use trop_core::matroid::parse_matroid;
use trop_core::random::random_weak_surface;
use trop_core::surface::{attach_alpha, parse_surface, WeakTropicalSurface};
use trop_core::text::format_rational;
use trop_core::todd::{ks_comparison, noether_check, td2_surface};

use crate::report::{read_input, write_output, Failure, Report};

type Outcome = Result<Report, Failure>;

fn in_file<E: Into<trop_core::Error>>(path: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| match Failure::from(e.into()) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn load_surface(r: &mut Report, path: &Path) -> Result<WeakTropicalSurface, Failure> {
    let text = read_input(r, path)?;
    parse_surface(&text).map_err(in_file(path))
}

fn q(x: &BigRational) -> String {
    format_rational(x)
}

fn join(xs: &[BigRational]) -> String {
    xs.iter().map(q).collect::<Vec<_>>().join(" ")
}

fn edge_lines(r: &mut Report, t: &WeakTropicalSurface, key: &str, d: &[BigRational]) {
    for (e, x) in t.complex().edges().iter().zip(d) {
        r.line(key, format_args!("{} {}", e.name, q(x)));
    }
}

pub fn validate(path: &Path) -> Outcome {
    let mut r = Report::new();
    let text = read_input(&mut r, path)?;
    let parsed = parse_complex_with_alpha(&text).map_err(in_file(path))?;
    let c = &parsed.complex;
    r.line("vertices", c.num_vertices());
    r.line("edges", c.num_edges());
    r.line("facets", c.num_facets());
    r.line("locally_connected", c.is_locally_connected());
    if parsed.alpha.iter().all(Option::is_none) {
        r.line("alpha", "none");
    } else {
        let alpha = parsed.complete_alpha().map_err(in_file(path))?;
        attach_alpha(parsed.complex.clone(), alpha).map_err(in_file(path))?;
        r.line("alpha", "OK");
    }
    r.line("valid", "OK");
    Ok(r)
}

pub fn check_tropical(path: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let cls = t.classify();
    for (v, i) in cls.inertia.iter().enumerate() {
        r.line(
            "inertia",
            format_args!(
                "{} {} {} {}",
                t.complex().vertices()[v],
                i.positive,
                i.zero,
                i.negative
            ),
        );
    }
    r.line("tropical", cls.tropical);
    r.verdict = cls.tropical;
    Ok(r)
}

pub fn euler(path: &Path) -> Outcome {
    let mut r = Report::new();
    let text = read_input(&mut r, path)?;
    let c = parse_complex_with_alpha(&text)
        .map_err(in_file(path))?
        .complex;
    r.line("euler", c.euler_characteristic());
    Ok(r)
}

pub fn cohomology(path: &Path, degree: usize, homology: bool) -> Outcome {
    let mut r = Report::new();
    let text = read_input(&mut r, path)?;
    let c = parse_complex_with_alpha(&text)
        .map_err(in_file(path))?
        .complex;
    let (key, group) = if homology {
        (format!("H_{degree}"), integral_homology(&c, degree))
    } else {
        (format!("H^{degree}"), integral_cohomology(&c, degree))
    };
    let group = group.ok_or_else(|| Failure::Input(format!("degree {degree} out of range")))?;
    r.line(&key, group);
    Ok(r)
}

pub fn todd(path: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let td = td2_surface(&t);
    for (v, name) in t.complex().vertices().iter().enumerate() {
        r.line("td2", format_args!("{name} {}", q(&td.coefficient(v))));
    }
    r.line("td2_degree", q(&td.degree()));
    for (v, ks, local) in ks_comparison(&t) {
        let status = if ks == local { "agree" } else { "differ" };
        r.line(
            "ks",
            format_args!("{} {} {status}", t.complex().vertices()[v], q(&ks)),
        );
    }
    Ok(r)
}

pub fn noether(path: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let n = noether_check(&t);
    r.line("td2_degree", q(&n.degree));
    r.line("euler", n.euler);
    r.line("noether", if n.holds { "OK" } else { "FAIL" });
    r.verdict = n.holds;
    Ok(r)
}

pub fn divisor_of(path: &Path, function: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let text = read_input(&mut r, function)?;
    let phi = parse_function_file(t.complex(), &text).map_err(in_file(function))?;
    let d = Divisors::new(&t);
    let div = d.divisor_of_function(&phi).map_err(in_file(path))?;
    edge_lines(&mut r, &t, "coeff", &div);
    Ok(r)
}

fn load_divisor(
    r: &mut Report,
    t: &WeakTropicalSurface,
    path: &Path,
) -> Result<Vec<BigRational>, Failure> {
    let text = read_input(r, path)?;
    parse_divisor_file(t.complex(), &text).map_err(in_file(path))
}

pub fn cartier(path: &Path, divisor: &Path, integral: bool) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let div = load_divisor(&mut r, &t, divisor)?;
    let mode = if integral {
        CartierMode::Integral
    } else {
        CartierMode::Rational
    };
    let status = Divisors::new(&t)
        .cartier_status(&div, mode)
        .map_err(in_file(divisor))?;
    r.line("mode", if integral { "integral" } else { "rational" });
    r.line("cartier", status.cartier);
    for (v, w) in status.witnesses.iter().enumerate() {
        let name = &t.complex().vertices()[v];
        match w {
            Some(w) => r.line("witness", format_args!("{name} {}", join(w))),
            None => r.line("fails_at", name),
        }
    }
    Ok(r)
}

pub fn intersect(path: &Path, divisors: &[PathBuf]) -> Outcome {
    if divisors.len() != 2 {
        return Err(Failure::Input(format!(
            "intersect takes exactly two --divisor files, got {}",
            divisors.len()
        )));
    }
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let d = Divisors::new(&t);
    let mut slopes = Vec::new();
    for p in divisors {
        let div = load_divisor(&mut r, &t, p)?;
        let status = d
            .cartier_status(&div, CartierMode::Rational)
            .map_err(in_file(p))?;
        let f = status
            .slopes()
            .ok_or_else(|| Failure::Input(format!("{}: divisor is not Q-Cartier", p.display())))?;
        slopes.push(f);
    }
    let x = d
        .intersection_degree(&slopes[0], &slopes[1])
        .map_err(in_file(path))?;
    r.line("intersection", q(&x));
    Ok(r)
}

pub fn cocycle_divisor(path: &Path, cochain: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let text = read_input(&mut r, cochain)?;
    let gamma = parse_cochain_file(t.complex(), &text).map_err(in_file(cochain))?;
    let cd = Divisors::new(&t)
        .cochain_divisor(&gamma)
        .map_err(in_file(cochain))?;
    r.line("cocycle", is_cocycle(t.complex(), &gamma));
    r.line("cartier", cd.cartier);
    edge_lines(&mut r, &t, "coeff", &cd.divisor);
    Ok(r)
}

pub fn picard(path: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let p = Divisors::new(&t).picard_ridge().map_err(in_file(path))?;
    r.line("free_rank", p.free_rank);
    let torsion: Vec<String> = p.torsion.iter().map(ToString::to_string).collect();
    r.line(
        "torsion",
        if torsion.is_empty() {
            "none".to_string()
        } else {
            torsion.join(" ")
        },
    );
    for g in &p.generators {
        let g: Vec<String> = g.iter().map(ToString::to_string).collect();
        r.line("generator", g.join(" "));
    }
    Ok(r)
}

pub fn hodge(path: &Path) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let rep = Divisors::new(&t).ns_pairing();
    r.line("tropical", t.classify().tropical);
    r.line("locally_connected", t.complex().is_locally_connected());
    r.line("w_dim", rep.w_dim);
    r.line("pic_rank", rep.pic_rank);
    for row in rep.pairing.row_iter() {
        r.line("pairing", join(row));
    }
    let i = rep.inertia;
    r.line(
        "inertia",
        format_args!("{} {} {}", i.positive, i.zero, i.negative),
    );
    r.line("kernel_dim", rep.kernel_dim);
    r.line("rank_after_kernel", rep.rank_after_kernel());
    let red = rep.reduced;
    r.line(
        "reduced_inertia",
        format_args!("{} {} {}", red.positive, red.zero, red.negative),
    );
    r.line("kernel_matches", rep.kernel_matches);
    r.line("hodge", if rep.hodge_verdict() { "OK" } else { "FAIL" });
    r.verdict = rep.hodge_verdict();
    Ok(r)
}

pub fn max_modulus(path: &Path, cap: usize) -> Outcome {
    let mut r = Report::new();
    let t = load_surface(&mut r, path)?;
    let verdict = Divisors::new(&t)
        .max_modulus_check(cap)
        .map_err(in_file(path))?;
    match verdict {
        MaxModulus::NoneExists => r.line("max_modulus", "none-exists"),
        MaxModulus::Counterexample(phi) => {
            r.line("max_modulus", "counterexample");
            for (name, x) in t.complex().vertices().iter().zip(&phi) {
                r.line("value", format_args!("{name} {}", q(x)));
            }
            r.verdict = false;
        }
    }
    Ok(r)
}

fn load_fan(r: &mut Report, path: &Path) -> Result<EmbeddedFan2, Failure> {
    let text = read_input(r, path)?;
    let file = parse_fan(&text).map_err(in_file(path))?;
    for w in &file.warnings {
        r.line("warning", w);
    }
    Ok(file.fan)
}

pub fn fan_validate(path: &Path) -> Outcome {
    let mut r = Report::new();
    let fan = load_fan(&mut r, path)?;
    r.line("ambient", fan.ambient());
    r.line("rays", fan.rays().len());
    r.line("cones", fan.cones().len());
    let balanced = fan.balancing().is_ok();
    r.line("balanced", balanced);
    r.line("valid", "OK");
    Ok(r)
}

pub fn fan_td2(path: &Path) -> Outcome {
    let mut r = Report::new();
    let fan = load_fan(&mut r, path)?;
    for b in fan.balancing().map_err(in_file(path))? {
        r.line(
            "balancing",
            format_args!(
                "{} d {} c {} alpha0 {}",
                fan.names()[b.ray],
                b.d,
                b.c,
                b.alpha0
            ),
        );
    }
    r.line("td2", q(&fan.td2().map_err(in_file(path))?));
    Ok(r)
}

pub fn fan_subdivide(path: &Path, cone: &str, out: Option<&Path>) -> Outcome {
    let mut r = Report::new();
    let fan = load_fan(&mut r, path)?;
    let (a, b) = cone
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("--cone expects RAY_A,RAY_B, got `{cone}`")))?;
    let v = fan.ray_index(a.trim()).map_err(in_file(path))?;
    let w = fan.ray_index(b.trim()).map_err(in_file(path))?;
    let next = fan.stellar_subdivide(v, w).map_err(in_file(path))?;
    r.line(
        "new_ray",
        next.names().last().expect("subdivision adds a ray"),
    );
    r.line("td2_before", q(&fan.td2().map_err(in_file(path))?));
    r.line("td2_after", q(&next.td2().map_err(in_file(path))?));
    match out {
        Some(p) => {
            write_output(p, &next.to_text())?;
            r.line("wrote", p.display());
        }
        None => {
            for l in next.to_text().lines() {
                r.line("fan", l);
            }
        }
    }
    Ok(r)
}

pub fn matroid_invariants(path: &Path) -> Outcome {
    let mut r = Report::new();
    let text = read_input(&mut r, path)?;
    let m = parse_matroid(&text).map_err(in_file(path))?;
    let inv = m.invariants();
    r.line("n", inv.n);
    r.line("m", inv.m);
    r.line("ell", inv.ell);
    let b: Vec<String> = inv.b.iter().map(ToString::to_string).collect();
    r.line("b", b.join(" "));
    Ok(r)
}

pub fn matroid_audit(path: &Path) -> Outcome {
    let mut r = Report::new();
    let text = read_input(&mut r, path)?;
    let m = parse_matroid(&text).map_err(in_file(path))?;
    let a = m.audit().map_err(in_file(path))?;
    r.line("K2", q(&a.kv2_fan));
    r.line("K2_closed", &a.kv2_closed);
    r.line("td2", q(&a.td2_fan));
    r.line("td2_closed", q(&a.td2_closed));
    r.line("c2", &a.c2);
    let ok = |b: bool| if b { "OK" } else { "FAIL" };
    r.line("witness", ok(a.witness_ok));
    r.line("solution_independent", ok(a.solution_independent));
    r.line("chern", ok(a.chern));
    r.line("audit", ok(a.all_ok()));
    r.verdict = a.all_ok();
    Ok(r)
}

pub fn gen_weak(seed: u64, facets: usize, out: &Path) -> Outcome {
    if facets == 0 {
        return Err(Failure::Input("--facets must be at least 1".into()));
    }
    let mut r = Report::new();
    r.digest(format!("gen weak {seed} {facets}").as_bytes());
    let t = random_weak_surface(seed, facets);
    write_output(out, &t.to_text())?;
    r.line("wrote", out.display());
    r.line("vertices", t.complex().num_vertices());
    r.line("edges", t.complex().num_edges());
    r.line("facets", t.complex().num_facets());
    Ok(r)
}
