//! Bundled test complexes and complex generators.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{FilteredComplex, OrderPolicy};
use crate::error::{Error, Result};
use crate::io::{ComplexDocument, InputOrder};
use crate::simplex::{Chain, Simplex, Vertex};

const BUNDLED: &[(&str, &str)] = &[
    (
        "adem_example",
        include_str!("../fixtures/adem_example.json"),
    ),
    (
        "hollow_triangle",
        include_str!("../fixtures/hollow_triangle.json"),
    ),
    ("triangle", include_str!("../fixtures/triangle.json")),
    ("tetrahedron", include_str!("../fixtures/tetrahedron.json")),
    ("simplex6", include_str!("../fixtures/simplex6.json")),
    ("sphere", include_str!("../fixtures/sphere.json")),
    ("rp2", include_str!("../fixtures/rp2.json")),
    ("torus", include_str!("../fixtures/torus.json")),
    ("wedge", include_str!("../fixtures/wedge.json")),
];

/// Names of the bundled fixtures.
pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn document(name: &str) -> Result<ComplexDocument> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Unsupported(format!("no bundled fixture named {name:?}")))?;
    ComplexDocument::parse(text)
}

/// A bundled fixture in dimension-then-lexicographic order.
pub fn load(name: &str) -> Result<FilteredComplex> {
    document(name)?.to_complex(InputOrder::Lex)
}

/// Staircase triangulation of `K × L`. The pair `(v, w)` is labelled
/// `i·|L₀| + j + 1` where `i`, `j` are the ranks of `v`, `w` among the vertices.
pub fn product(k: &FilteredComplex, l: &FilteredComplex) -> Result<FilteredComplex> {
    let kv: Vec<Vertex> = k.vertices().collect();
    let lv: Vec<Vertex> = l.vertices().collect();
    let rank = |vs: &[Vertex], v: Vertex| vs.binary_search(&v).expect("vertex of complex");
    let width = lv.len() as Vertex;
    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        for t in l.maximal_simplices() {
            let (p, q) = (s.dim(), t.dim());
            // each path is the set of positions among p+q steps that move in K
            for moves in combinations(p + q, p) {
                let (mut i, mut j) = (0, 0);
                let mut verts = Vec::with_capacity(p + q + 1);
                let label = |i: usize, j: usize| {
                    rank(&kv, s.vertices()[i]) as Vertex * width
                        + rank(&lv, t.vertices()[j]) as Vertex
                        + 1
                };
                verts.push(label(0, 0));
                for step in 0..p + q {
                    if moves.contains(&step) {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    verts.push(label(i, j));
                }
                maximal.push(Simplex::new(verts)?);
            }
        }
    }
    FilteredComplex::close(&maximal, OrderPolicy::DimensionLex)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Barycentric subdivision; the barycentre of the simplex at filtration
/// position `i` of `k` is labelled `i + 1`.
pub fn barycentric(k: &FilteredComplex) -> Result<FilteredComplex> {
    let mut maximal = Vec::new();
    for top in k.maximal_simplices() {
        let mut verts = top.vertices().to_vec();
        for_each_permutation(&mut verts, 0, &mut |perm| {
            let mut flag = Vec::with_capacity(perm.len());
            let mut face = BTreeSet::new();
            for &v in perm {
                face.insert(v);
                let s = Simplex::new(face.iter().copied()).expect("nonempty face");
                flag.push(k.position(&s).expect("face of complex") as Vertex + 1);
            }
            maximal.push(flag);
        });
    }
    let maximal = maximal
        .into_iter()
        .map(Simplex::new)
        .collect::<Result<Vec<_>>>()?;
    FilteredComplex::close(&maximal, OrderPolicy::DimensionLex)
}

fn for_each_permutation(v: &mut [Vertex], k: usize, visit: &mut impl FnMut(&[Vertex])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        for_each_permutation(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Maximal simplices of a random complex on vertices `1..=vertices`:
/// between 1 and `count` simplices of dimension at most `max_dim`.
pub fn random_maximal<R: Rng>(
    rng: &mut R,
    vertices: usize,
    count: usize,
    max_dim: usize,
) -> Vec<Simplex> {
    let labels: Vec<Vertex> = (1..=vertices as Vertex).collect();
    let n = rng.gen_range(1..=count.max(1));
    (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(vertices));
            let picked: Vec<Vertex> = labels.choose_multiple(rng, size).copied().collect();
            Simplex::new(picked).expect("distinct labels")
        })
        .collect()
}

pub fn random_complex<R: Rng>(
    rng: &mut R,
    vertices: usize,
    count: usize,
    max_dim: usize,
) -> FilteredComplex {
    let maximal = random_maximal(rng, vertices, count, max_dim);
    FilteredComplex::close(&maximal, OrderPolicy::DimensionLex).expect("closure is valid")
}

/// A uniformly random `q`-cochain of `k`.
pub fn random_cochain<R: Rng>(rng: &mut R, k: &FilteredComplex, q: usize) -> Chain {
    let mut c = Chain::zero(q);
    for s in k.of_dim(q) {
        if rng.gen_bool(0.5) {
            c.toggle(s.clone());
        }
    }
    c
}

/// Simplex counts per dimension.
pub fn f_vector(k: &FilteredComplex) -> BTreeMap<usize, usize> {
    k.simplices().iter().fold(BTreeMap::new(), |mut m, s| {
        *m.entry(s.dim()).or_default() += 1;
        m
    })
}
