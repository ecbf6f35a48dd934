//! Bundled example complexes, fans and matroids.

use crate::fans::{parse_fan, EmbeddedFan2};
use crate::matroid::{parse_matroid, Matroid3};
use crate::surface::{parse_surface, WeakTropicalSurface};

pub const TORUS: &str = include_str!("../corpus/torus.trop");
pub const OCTAHEDRON_QUOTIENT: &str = include_str!("../corpus/octahedron_quotient.trop");
pub const TRIANGLE: &str = include_str!("../corpus/triangle.trop");
pub const STRIP: &str = include_str!("../corpus/strip.trop");
pub const BOWTIE: &str = include_str!("../corpus/bowtie.trop");

pub const PLANE_FAN: &str = include_str!("../corpus/plane.fan");
pub const TRIPOD_LINE_FAN: &str = include_str!("../corpus/tripod_line.fan");
pub const QUAD_LINE_FAN: &str = include_str!("../corpus/quad_line.fan");
pub const SKEW_TRIPOD_LINE_FAN: &str = include_str!("../corpus/skew_tripod_line.fan");

pub const U33: &str = include_str!("../corpus/u33.mat");
pub const U34: &str = include_str!("../corpus/u34.mat");
pub const U35: &str = include_str!("../corpus/u35.mat");
pub const FANO: &str = include_str!("../corpus/fano.mat");
pub const NON_FANO: &str = include_str!("../corpus/nonfano.mat");

fn surface(text: &str) -> WeakTropicalSurface {
    parse_surface(text).expect("bundled surface parses")
}

pub fn torus() -> WeakTropicalSurface {
    surface(TORUS)
}

pub fn octahedron_quotient() -> WeakTropicalSurface {
    surface(OCTAHEDRON_QUOTIENT)
}

pub fn triangle() -> WeakTropicalSurface {
    surface(TRIANGLE)
}

/// Weak-only: two triangles on a common edge.
pub fn strip() -> WeakTropicalSurface {
    surface(STRIP)
}

/// Two triangles sharing a single vertex.
pub fn bowtie() -> WeakTropicalSurface {
    surface(BOWTIE)
}

pub fn surfaces() -> Vec<(&'static str, WeakTropicalSurface)> {
    vec![
        ("torus", torus()),
        ("octahedron_quotient", octahedron_quotient()),
        ("triangle", triangle()),
        ("strip", strip()),
        ("bowtie", bowtie()),
    ]
}

pub fn fans() -> Vec<(&'static str, EmbeddedFan2)> {
    [
        ("plane", PLANE_FAN),
        ("tripod_line", TRIPOD_LINE_FAN),
        ("quad_line", QUAD_LINE_FAN),
        ("skew_tripod_line", SKEW_TRIPOD_LINE_FAN),
    ]
    .into_iter()
    .map(|(n, t)| (n, parse_fan(t).expect("bundled fan parses").fan))
    .collect()
}

pub fn matroids() -> Vec<(&'static str, Matroid3)> {
    [
        ("u33", U33),
        ("u34", U34),
        ("u35", U35),
        ("fano", FANO),
        ("nonfano", NON_FANO),
    ]
    .into_iter()
    .map(|(n, t)| (n, parse_matroid(t).expect("bundled matroid parses")))
    .collect()
}
