//! Seeded random weak tropical surfaces for fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{DeltaComplex, Edge, Facet, Side};
use crate::surface::{attach_alpha, WeakTropicalSurface};
use crate::util::UnionFind;

// Union-find over facet sides that also tracks whether two glued sides
// traverse their common edge in the same direction.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ flip;
        true
    }
}

/// Glues `n_facets` triangles by random side identifications. Facet `i ≥ 1`
/// is first glued to an earlier facet, so the result is connected; a few
/// extra gluings then raise edge degrees. `α(e,0)` is uniform on
/// `[−2, deg(e)+2]`.
pub fn random_weak_surface(seed: u64, n_facets: usize) -> WeakTropicalSurface {
    assert!(n_facets >= 1, "need at least one facet");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sides = 3 * n_facets;
    let mut glue = ParityUnionFind::new(sides);
    for f in 1..n_facets {
        let a = 3 * f + rng.gen_range(0..3);
        let b = 3 * rng.gen_range(0..f) + rng.gen_range(0..3);
        glue.union(a, b, rng.gen());
    }
    if n_facets >= 2 {
        let extra = rng.gen_range(0..=n_facets);
        for _ in 0..extra {
            let a = rng.gen_range(0..sides);
            let b = rng.gen_range(0..sides);
            glue.union(a, b, rng.gen());
        }
    }

    // Corner identifications forced by the side gluings: slot 0 of every
    // side in a class is one vertex, likewise slot 1.
    let slot_corner = |side: usize, flip: bool, slot: usize| {
        let (f, i) = (side / 3, side % 3);
        let first = 3 * f + (i + 1) % 3;
        let second = 3 * f + (i + 2) % 3;
        if (slot == 0) != flip {
            first
        } else {
            second
        }
    };
    let mut corners = UnionFind::new(sides);
    let mut class_rep: Vec<Option<[usize; 2]>> = vec![None; sides];
    for s in 0..sides {
        let (root, flip) = glue.find(s);
        let here = [slot_corner(s, flip, 0), slot_corner(s, flip, 1)];
        match class_rep[root] {
            None => class_rep[root] = Some(here),
            Some(rep) => {
                corners.union(rep[0], here[0]);
                corners.union(rep[1], here[1]);
            }
        }
    }

    let mut vertex_of_root = vec![usize::MAX; sides];
    let mut vertices = Vec::new();
    let mut vertex_of = |corners: &mut UnionFind, c: usize| {
        let r = corners.find(c);
        if vertex_of_root[r] == usize::MAX {
            vertex_of_root[r] = vertices.len();
            vertices.push(format!("v{}", vertices.len()));
        }
        vertex_of_root[r]
    };
    let corner_vertex: Vec<usize> = (0..sides).map(|c| vertex_of(&mut corners, c)).collect();

    let mut edge_of_root = vec![usize::MAX; sides];
    let mut edges = Vec::new();
    let mut facets = Vec::with_capacity(n_facets);
    for f in 0..n_facets {
        let mut fs = [Side {
            edge: 0,
            flip: false,
        }; 3];
        for (i, side) in fs.iter_mut().enumerate() {
            let s = 3 * f + i;
            let (root, flip) = glue.find(s);
            if edge_of_root[root] == usize::MAX {
                edge_of_root[root] = edges.len();
                let ends =
                    [slot_corner(s, flip, 0), slot_corner(s, flip, 1)].map(|c| corner_vertex[c]);
                edges.push(Edge {
                    name: format!("e{}", edges.len()),
                    ends,
                });
            }
            *side = Side {
                edge: edge_of_root[root],
                flip,
            };
        }
        facets.push(Facet {
            name: format!("f{f}"),
            corners: [0, 1, 2].map(|j| corner_vertex[3 * f + j]),
            sides: fs,
        });
    }
    let complex = DeltaComplex::new(vertices, edges, facets).expect("random gluing is valid");
    let alpha = complex
        .edge_degrees()
        .into_iter()
        .flat_map(|d| {
            let d = d as i64;
            let a0 = rng.gen_range(-2..=d + 2);
            [a0, d - a0]
        })
        .collect();
    attach_alpha(complex, alpha).expect("alpha satisfies the degree identity")
}
