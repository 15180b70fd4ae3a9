//! Independent reference computations for the integration tests. Nothing in
//! here calls into the library's linear algebra or cochain operations; the
//! conversions at the bottom are the only bridge.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use atmodel::{Chain, FilteredComplex, Simplex};

pub type Face = Vec<u32>;
pub type Cochain = BTreeSet<Face>;

/// Downward closure of a list of maximal faces.
pub fn closure(maximal: &[Face]) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for m in maximal {
        let n = m.len();
        for mask in 1u32..(1 << n) {
            out.insert(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| m[i])
                    .collect(),
            );
        }
    }
    out
}

pub fn of_dim(faces: &BTreeSet<Face>, q: usize) -> Vec<Face> {
    faces.iter().filter(|f| f.len() == q + 1).cloned().collect()
}

fn drop_at(f: &Face, i: usize) -> Face {
    let mut g = f.clone();
    g.remove(i);
    g
}

/// Rank over GF(2) by Gaussian elimination on rows of booleans.
pub fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Matrix of the boundary from dimension `q` to `q-1`, rows indexed by the
/// `(q-1)`-faces.
pub fn boundary_rows(faces: &BTreeSet<Face>, q: usize) -> Vec<Vec<bool>> {
    if q == 0 {
        return Vec::new();
    }
    let lower = of_dim(faces, q - 1);
    let upper = of_dim(faces, q);
    let index: BTreeMap<&Face, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut rows = vec![vec![false; upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            rows[index[&drop_at(s, i)]][j] = true;
        }
    }
    rows
}

/// Betti numbers through the top dimension from ranks of boundary matrices.
pub fn betti(faces: &BTreeSet<Face>) -> Vec<usize> {
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    let ranks: Vec<usize> = (0..=top).map(|q| rank(boundary_rows(faces, q))).collect();
    (0..top)
        .map(|q| of_dim(faces, q).len() - ranks[q] - ranks[q + 1])
        .collect()
}

/// Betti numbers without trailing zeros, for comparing complexes of
/// different dimension.
pub fn trimmed_betti(k: &FilteredComplex) -> Vec<usize> {
    let mut b = betti(&faces_of(k));
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

pub fn coboundary(faces: &BTreeSet<Face>, c: &Cochain, q: usize) -> Cochain {
    of_dim(faces, q + 1)
        .into_iter()
        .filter(|s| (0..s.len()).filter(|&i| c.contains(&drop_at(s, i))).count() % 2 == 1)
        .collect()
}

fn sum(a: &Cochain, b: &Cochain) -> Cochain {
    a.symmetric_difference(b).cloned().collect()
}

pub fn add(terms: &[&Cochain]) -> Cochain {
    terms.iter().fold(Cochain::new(), |acc, t| sum(&acc, t))
}

/// `u ⌣_n v` from the interval formula: for `0 ≤ j_0 < … < j_n ≤ N`, `u`
/// sees the union of the even intervals `[0,j_0], [j_1,j_2], …` and `v` the
/// odd ones `[j_0,j_1], [j_2,j_3], …`. Terms whose vertex counts differ
/// from the degrees contribute nothing.
pub fn cup_i(
    faces: &BTreeSet<Face>,
    u: &Cochain,
    p: usize,
    v: &Cochain,
    q: usize,
    n: usize,
) -> Cochain {
    if p + q < n {
        return Cochain::new();
    }
    let top = p + q - n;
    let mut out = Cochain::new();
    for s in of_dim(faces, top) {
        let mut value = false;
        for cuts in increasing_tuples(n + 1, top) {
            let mut bounds = vec![0];
            bounds.extend(&cuts);
            bounds.push(top);
            let (mut left, mut right) = (BTreeSet::new(), BTreeSet::new());
            for (k, w) in bounds.windows(2).enumerate() {
                let side = if k % 2 == 0 { &mut left } else { &mut right };
                side.extend(w[0]..=w[1]);
            }
            if left.len() != p + 1 || right.len() != q + 1 {
                continue;
            }
            let lf: Face = left.iter().map(|&i| s[i]).collect();
            let rf: Face = right.iter().map(|&i| s[i]).collect();
            if u.contains(&lf) && v.contains(&rf) {
                value = !value;
            }
        }
        if value {
            out.insert(s);
        }
    }
    out
}

/// All strictly increasing `len`-tuples in `0..=top`.
fn increasing_tuples(len: usize, top: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for t in increasing_tuples(len - 1, top) {
        let start = t.last().map_or(0, |&x| x + 1);
        for x in start..=top {
            let mut u = t.clone();
            u.push(x);
            out.push(u);
        }
    }
    out
}

/// Classical front/back face cup product.
pub fn cup(faces: &BTreeSet<Face>, u: &Cochain, p: usize, v: &Cochain, q: usize) -> Cochain {
    of_dim(faces, p + q)
        .into_iter()
        .filter(|s| u.contains(&s[..=p].to_vec()) && v.contains(&s[p..].to_vec()))
        .collect()
}

pub fn faces_of(k: &FilteredComplex) -> BTreeSet<Face> {
    k.simplices()
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect()
}

pub fn to_cochain(c: &Chain) -> Cochain {
    c.to_lists().into_iter().collect()
}

pub fn to_chain(q: usize, c: &Cochain) -> Chain {
    Chain::new(q, c.iter().map(|f| Simplex::new(f.clone()).unwrap())).unwrap()
}

pub fn simplex(labels: &[u32]) -> Simplex {
    Simplex::new(labels.to_vec()).unwrap()
}

pub fn chain(lists: &[&[u32]]) -> Chain {
    Chain::from_lists(lists)
}
