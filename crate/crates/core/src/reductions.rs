//! Contractions between complexes: simplicial collapses, edge contractions
//! and cones. Every contraction returned here has passed
//! [`Contraction::verified`].

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{FilteredComplex, OrderPolicy, VertexMap};
use crate::contraction::{Contraction, Target};
use crate::error::{Error, Result};
use crate::simplex::{Chain, Simplex, Vertex};

fn single(s: Simplex) -> Chain {
    std::iter::once(s).collect()
}

/// The subcomplex of `k` on the given alive positions, in `k`'s order.
fn restrict(k: &FilteredComplex, alive: &[bool]) -> FilteredComplex {
    let order = (0..k.len())
        .filter(|&i| alive[i])
        .map(|i| k.simplex(i).clone())
        .collect();
    FilteredComplex::from_filtration(order).expect("collapses keep the complex prefix-closed")
}

/// Finds the first maximal simplex (in filtration order) owning a free
/// facet, and its first free facet.
fn find_collapse(k: &FilteredComplex, alive: &[bool], cofaces: &[usize]) -> Option<(usize, usize)> {
    for i in 0..k.len() {
        if !alive[i] || cofaces[i] != 0 || k.simplex(i).dim() == 0 {
            continue;
        }
        let free = k
            .simplex(i)
            .facets()
            .map(|f| k.position(&f).expect("facet in complex"))
            .filter(|&j| cofaces[j] == 1)
            .min();
        if let Some(j) = free {
            return Some((i, j));
        }
    }
    None
}

/// Whether some maximal simplex of `k` has a free facet.
pub fn has_free_face(k: &FilteredComplex) -> bool {
    let alive = vec![true; k.len()];
    let cofaces: Vec<usize> = (0..k.len()).map(|i| k.cofacets(i).len()).collect();
    find_collapse(k, &alive, &cofaces).is_some()
}

/// One elementary collapse removing the maximal simplex `sigma` and its
/// free facet `face`.
pub fn collapse_step(
    k: &FilteredComplex,
    sigma: &Simplex,
    face: &Simplex,
) -> Result<(FilteredComplex, Contraction)> {
    let i = k
        .position(sigma)
        .ok_or_else(|| Error::NotInComplex(sigma.clone()))?;
    let j = k
        .position(face)
        .ok_or_else(|| Error::NotInComplex(face.clone()))?;
    let free = face.dim() + 1 == sigma.dim()
        && face.is_face_of(sigma)
        && k.cofacets(i).is_empty()
        && k.cofacets(j) == [i];
    if !free {
        return Err(Error::NotAFreeFace {
            face: face.clone(),
            simplex: sigma.clone(),
        });
    }
    let mut alive = vec![true; k.len()];
    alive[i] = false;
    alive[j] = false;
    let m = restrict(k, &alive);
    let mut c = Contraction::identity(k);
    c.target = Target::Complex(m.clone());
    c.g.remove(sigma);
    c.g.remove(face);
    c.f.remove(sigma);
    c.f.insert(face.clone(), &sigma.boundary() + &single(face.clone()));
    c.phi.insert(face.clone(), single(sigma.clone()));
    Ok((m, c.verified()?))
}

/// Repeatedly collapses the first maximal simplex with a free facet until
/// none is left, returning the thinned complex and the total contraction.
pub fn collapse_thinning(k: &FilteredComplex) -> Result<(FilteredComplex, Contraction)> {
    let n = k.len();
    let mut alive = vec![true; n];
    let mut cofaces: Vec<usize> = (0..n).map(|i| k.cofacets(i).len()).collect();
    // f and φ as sets of positions; holders[y] = {x : y ∈ f(x)}
    let mut f: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
    let mut phi: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut holders: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();

    while let Some((s, t)) = find_collapse(k, &alive, &cofaces) {
        let others: Vec<usize> = k
            .simplex(s)
            .facets()
            .map(|x| k.position(&x).expect("facet in complex"))
            .filter(|&x| x != t)
            .collect();
        for x in std::mem::take(&mut holders[t]) {
            f[x].remove(&t);
            for &y in &others {
                if f[x].insert(y) {
                    holders[y].insert(x);
                } else {
                    f[x].remove(&y);
                    holders[y].remove(&x);
                }
            }
            if !phi[x].insert(s) {
                phi[x].remove(&s);
            }
        }
        for x in std::mem::take(&mut holders[s]) {
            f[x].remove(&s);
        }
        alive[s] = false;
        alive[t] = false;
        for removed in [s, t] {
            for facet in k.simplex(removed).facets() {
                cofaces[k.position(&facet).expect("facet in complex")] -= 1;
            }
        }
    }

    let m = restrict(k, &alive);
    let chain = |dim: usize, idx: &BTreeSet<usize>| {
        Chain::new(dim, idx.iter().map(|&i| k.simplex(i).clone())).expect("homogeneous")
    };
    let mut c = Contraction {
        source: k.clone(),
        target: Target::Complex(m.clone()),
        f: (0..n)
            .map(|i| (k.simplex(i).clone(), chain(k.simplex(i).dim(), &f[i])))
            .collect(),
        g: m.simplices()
            .iter()
            .map(|s| (s.clone(), single(s.clone())))
            .collect(),
        phi: (0..n)
            .map(|i| (k.simplex(i).clone(), chain(k.simplex(i).dim() + 1, &phi[i])))
            .collect(),
    };
    c.prune();
    Ok((m, c.verified()?))
}

/// The edge `⟨a, b⟩` as a pair, or an error when `edge` is not an edge of `k`.
fn endpoints(k: &FilteredComplex, edge: &Simplex) -> Result<(Vertex, Vertex)> {
    if edge.dim() != 1 {
        return Err(Error::NotAnEdge(edge.clone()));
    }
    if !k.contains(edge) {
        return Err(Error::NotInComplex(edge.clone()));
    }
    Ok((edge.vertices()[0], edge.vertices()[1]))
}

/// The link condition `Lk a ∩ Lk b = Lk ⟨a,b⟩`.
pub fn edge_contractible(k: &FilteredComplex, edge: &Simplex) -> Result<bool> {
    let (a, b) = endpoints(k, edge)?;
    let la = k.link_of(&Simplex::vertex(a));
    let lb = k.link_of(&Simplex::vertex(b));
    let common: BTreeSet<Simplex> = la.intersection(&lb).cloned().collect();
    Ok(common == k.link_of(edge))
}

/// Contracts `⟨a, b⟩` to a new vertex `label`. Returns the image complex
/// and the contraction `f = f_#`, with `g` and `φ` supported on the star of
/// the new vertex.
pub fn edge_contract(
    k: &FilteredComplex,
    edge: &Simplex,
    label: Vertex,
) -> Result<(FilteredComplex, Contraction)> {
    let (a, b) = endpoints(k, edge)?;
    if label != a && label != b && k.contains(&Simplex::vertex(label)) {
        return Err(Error::LabelInUse(label));
    }
    if !edge_contractible(k, edge)? {
        return Err(Error::LinkCondition { edge: edge.clone() });
    }
    let mapping: BTreeMap<Vertex, Vertex> = k
        .vertices()
        .map(|v| (v, if v == a || v == b { label } else { v }))
        .collect();
    let image: Vec<Simplex> = k
        .maximal_simplices()
        .iter()
        .map(|s| {
            let verts: BTreeSet<Vertex> = s.vertices().iter().map(|v| mapping[v]).collect();
            Simplex::new(verts).expect("nonempty image")
        })
        .collect();
    let l = FilteredComplex::close(&image, OrderPolicy::DimensionLex)?;
    let vm = VertexMap::new(mapping, k, &l)?;

    let lk_a = k.link_of(&Simplex::vertex(a));
    let lk_edge = k.link_of(edge);
    let ab = edge.clone();

    let mut f = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for s in k.simplices() {
        if let Some(t) = vm.map_simplex(s) {
            f.insert(s.clone(), single(t));
        }
        // φ(ω ∪ b) = ω ∪ ⟨a, b⟩ for ω in Lk ⟨a,b⟩ (or ω empty)
        if s.contains_vertex(b) && !s.contains_vertex(a) {
            let omega: Vec<Vertex> = s.vertices().iter().copied().filter(|&v| v != b).collect();
            let in_link = omega.is_empty()
                || lk_edge.contains(&Simplex::new(omega.iter().copied()).expect("nonempty"));
            if in_link {
                phi.insert(s.clone(), single(s.with_vertex(a).expect("a not in s")));
            }
        }
    }

    let mut g = BTreeMap::new();
    for t in l.simplices() {
        let image = if !t.contains_vertex(label) {
            single(t.clone())
        } else if t.dim() == 0 {
            single(Simplex::vertex(a))
        } else {
            let omega = Simplex::new(t.vertices().iter().copied().filter(|&v| v != label))
                .expect("nonempty");
            if lk_a.contains(&omega) {
                single(omega.with_vertex(a).expect("a not in ω"))
            } else {
                let mut out = single(omega.with_vertex(b).expect("b not in ω"));
                if omega.dim() == 0 {
                    out.toggle(ab.clone());
                } else {
                    for facet in omega.facets() {
                        if lk_edge.contains(&facet) {
                            out.toggle(facet.join(&ab).expect("facet joins the edge"));
                        }
                    }
                }
                out
            }
        };
        g.insert(t.clone(), image);
    }

    let c = Contraction {
        source: k.clone(),
        target: Target::Complex(l.clone()),
        f,
        g,
        phi,
    };
    Ok((l, c.verified()?))
}

/// The contraction of the full simplex on `sigma` onto its first vertex:
/// `f⟨vᵢ⟩ = ⟨v₀⟩`, `φτ = ⟨v₀⟩ ∪ τ` for `v₀ ∉ τ`, `g` the inclusion.
pub fn cone_contraction(sigma: &Simplex) -> Result<Contraction> {
    let k = FilteredComplex::close(std::slice::from_ref(sigma), OrderPolicy::DimensionLex)?;
    let v0 = sigma.vertices()[0];
    let apex = Simplex::vertex(v0);
    let point = FilteredComplex::from_filtration(vec![apex.clone()])?;
    let mut f = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for s in k.simplices() {
        if s.dim() == 0 {
            f.insert(s.clone(), single(apex.clone()));
        }
        if let Some(cone) = s.with_vertex(v0) {
            phi.insert(s.clone(), single(cone));
        }
    }
    let c = Contraction {
        source: k,
        target: Target::Complex(point),
        f,
        g: BTreeMap::from([(apex.clone(), single(apex))]),
        phi,
    };
    c.verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::at_model::ATModel;
    use crate::contraction::compose;
    use crate::fixtures;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn closure(max: &[&[Vertex]]) -> FilteredComplex {
        let m: Vec<Simplex> = max.iter().map(|v| s(v)).collect();
        FilteredComplex::close(&m, OrderPolicy::default()).unwrap()
    }

    #[test]
    fn triangle_collapses_to_a_point() {
        let (m, c) = collapse_thinning(&closure(&[&[1, 2, 3]])).unwrap();
        assert_eq!(m.len(), 1);
        assert!(c.verify().is_empty());
        assert!(!has_free_face(&m));
    }

    #[test]
    fn thinned_complexes_are_fixed() {
        for name in ["hollow_triangle", "sphere"] {
            let k = fixtures::load(name).unwrap();
            let (m, c) = collapse_thinning(&k).unwrap();
            assert_eq!(m, k);
            assert_eq!(c.f, Contraction::identity(&k).f);
            assert!(c.phi.is_empty());
        }
        let pt = closure(&[&[1]]);
        assert_eq!(collapse_thinning(&pt).unwrap().0, pt);
    }

    #[test]
    fn successive_steps_match_thinning() {
        let k = closure(&[&[1, 2, 3]]);
        let (m1, c1) = collapse_step(&k, &s(&[1, 2, 3]), &s(&[1, 2])).unwrap();
        let (m2, c2) = collapse_step(&m1, &s(&[1, 3]), &s(&[1])).unwrap();
        let (m3, c3) = collapse_step(&m2, &s(&[2, 3]), &s(&[2])).unwrap();
        let total = compose(&compose(&c1, &c2).unwrap(), &c3).unwrap();
        assert_eq!(m3, collapse_thinning(&k).unwrap().0);
        assert_eq!(total.target_complex(), Some(&m3));
        assert!(matches!(
            collapse_step(&k, &s(&[1, 2]), &s(&[1])),
            Err(Error::NotAFreeFace { .. })
        ));
    }

    #[test]
    fn thinning_then_homology() {
        let k = fixtures::load("adem_example").unwrap();
        let (m, c) = collapse_thinning(&k).unwrap();
        let model = ATModel::new(m);
        let total = compose(&c, &model.to_contraction()).unwrap();
        assert!(total.verify().is_empty());
        assert_eq!(model.betti_numbers(), vec![1, 0, 4, 0, 0, 1]);
    }

    #[test]
    fn link_condition_examples() {
        let path = closure(&[&[1, 2], &[2, 3]]);
        assert!(edge_contractible(&path, &s(&[1, 2])).unwrap());
        let hollow = fixtures::load("hollow_triangle").unwrap();
        assert!(!edge_contractible(&hollow, &s(&[1, 2])).unwrap());
        assert!(matches!(
            edge_contractible(&path, &s(&[4, 5])),
            Err(Error::NotInComplex(_))
        ));
        assert!(matches!(
            edge_contract(&hollow, &s(&[1, 2]), 9),
            Err(Error::LinkCondition { .. })
        ));
    }

    #[test]
    fn edge_contraction_examples() {
        let path = closure(&[&[1, 2], &[2, 3]]);
        let (l, c) = edge_contract(&path, &s(&[1, 2]), 7).unwrap();
        assert_eq!(l, closure(&[&[3, 7]]));
        assert!(c.verify().is_empty());

        let edge = closure(&[&[1, 2]]);
        let (l, c) = edge_contract(&edge, &s(&[1, 2]), 5).unwrap();
        assert_eq!(l.simplices(), &[s(&[5])]);
        assert_eq!(c.g[&s(&[5])], Chain::from_lists(&[&[1]]));
        assert_eq!(c.phi[&s(&[2])], Chain::from_lists(&[&[1, 2]]));
        assert!(matches!(
            edge_contract(&path, &s(&[1, 2]), 3),
            Err(Error::LabelInUse(3))
        ));
    }

    #[test]
    fn edge_contraction_in_a_disk() {
        let k = closure(&[&[1, 2, 3], &[2, 3, 4], &[1, 3, 5], &[3, 4, 5]]);
        let (l, c) = edge_contract(&k, &s(&[2, 3]), 9).unwrap();
        assert!(c.verify().is_empty());
        assert_eq!(ATModel::new(l).betti_numbers(), vec![1, 0, 0]);
    }

    #[test]
    fn cone_examples() {
        let c = cone_contraction(&s(&[1, 2])).unwrap();
        assert_eq!(c.phi[&s(&[2])], Chain::from_lists(&[&[1, 2]]));
        assert!(!c.phi.contains_key(&s(&[1])));
        assert_eq!(c.f[&s(&[2])], Chain::from_lists(&[&[1]]));

        let id = cone_contraction(&s(&[1])).unwrap();
        assert!(id.phi.is_empty());

        let c = cone_contraction(&s(&[1, 2, 3])).unwrap();
        assert_eq!(c.phi[&s(&[2, 3])], Chain::from_lists(&[&[1, 2, 3]]));
        assert!(!c.phi.contains_key(&s(&[1, 2, 3])));
    }
}
