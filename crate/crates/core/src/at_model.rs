//! Incremental chain contraction from `C_*K` to its homology.
//!
//! Simplices are processed in filtration order. A simplex whose boundary has
//! zero image under the current `f` opens a new homology generator; otherwise
//! it kills one generator `τ` from the image of its boundary, and every stored
//! `f`/`φ` entry mentioning `τ` is rewritten.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{FilteredComplex, VertexMap};
use crate::contraction::{self, ChainContraction, Contraction, Target, Violation};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::simplex::{Chain, Simplex};

/// Which generator a boundary-killing simplex eliminates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauStrategy {
    /// The youngest generator (largest filtration index).
    #[default]
    Largest,
    /// The oldest generator (smallest filtration index).
    Smallest,
}

/// An AT-model: `f` and `φ` per simplex plus the surviving generators.
/// `g` is recomputed on demand as `γ + φ∂γ`.
#[derive(Clone, Debug)]
pub struct ATModel {
    complex: FilteredComplex,
    /// Filtration indices of generators, ascending.
    generators: Vec<usize>,
    /// `f[i]`: sorted filtration indices of generators.
    f: Vec<Vec<usize>>,
    /// `phi[i]`: sorted filtration indices of `(dim+1)`-simplices.
    phi: Vec<Vec<usize>>,
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl ATModel {
    /// Runs the incremental algorithm with the default `τ` rule.
    pub fn new(complex: FilteredComplex) -> Self {
        Self::build(complex, TauStrategy::default())
    }

    pub fn build(complex: FilteredComplex, tau: TauStrategy) -> Self {
        let n = complex.len();
        let mut f: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut phi: Vec<Vec<usize>> = Vec::with_capacity(n);
        // holders[τ]: processed simplices whose f-image contains τ
        let mut holders: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut generators: BTreeSet<usize> = BTreeSet::new();

        for i in 0..n {
            let s = complex.simplex(i);
            let mut u: Vec<usize> = Vec::new();
            let mut w: Vec<usize> = vec![i];
            if s.dim() > 0 {
                for facet in s.facets() {
                    let j = complex.position(&facet).expect("prefix-closed");
                    u = xor_sorted(&u, &f[j]);
                    w = xor_sorted(&w, &phi[j]);
                }
            }
            f.push(Vec::new());
            phi.push(Vec::new());
            if u.is_empty() {
                generators.insert(i);
                f[i] = vec![i];
                holders[i].insert(i);
                continue;
            }
            let t = match tau {
                TauStrategy::Largest => *u.last().expect("nonempty"),
                TauStrategy::Smallest => u[0],
            };
            generators.remove(&t);
            let affected: Vec<usize> = std::mem::take(&mut holders[t]).into_iter().collect();
            for x in affected {
                for &y in &u {
                    if y == t {
                        continue;
                    }
                    if !holders[y].remove(&x) {
                        holders[y].insert(x);
                    }
                }
                f[x] = xor_sorted(&f[x], &u);
                phi[x] = xor_sorted(&phi[x], &w);
            }
        }

        ATModel {
            complex,
            generators: generators.into_iter().collect(),
            f,
            phi,
        }
    }

    /// Reassembles a model from stored maps, e.g. a replayed dump. Only
    /// membership and dimensions are checked; use
    /// [`verify_contraction`](Self::verify_contraction) for the identities.
    pub fn from_parts(
        complex: FilteredComplex,
        generators: &[Simplex],
        f: &BTreeMap<Simplex, Chain>,
        phi: &BTreeMap<Simplex, Chain>,
    ) -> Result<Self> {
        let pos = |s: &Simplex| {
            complex
                .position(s)
                .ok_or_else(|| Error::NotInComplex(s.clone()))
        };
        let mut gens = generators.iter().map(pos).collect::<Result<Vec<_>>>()?;
        gens.sort_unstable();
        gens.dedup();
        let n = complex.len();
        let mut fv = vec![Vec::new(); n];
        let mut phiv = vec![Vec::new(); n];
        for (table, out, shift) in [(f, &mut fv, 0), (phi, &mut phiv, 1)] {
            for (s, image) in table {
                let i = pos(s)?;
                if !image.is_zero() && image.dim() != s.dim() + shift {
                    return Err(Error::DimensionMismatch(format!(
                        "image of {s} has dimension {}",
                        image.dim()
                    )));
                }
                let mut idx = image.iter().map(pos).collect::<Result<Vec<_>>>()?;
                idx.sort_unstable();
                out[i] = idx;
            }
        }
        Ok(ATModel {
            complex,
            generators: gens,
            f: fv,
            phi: phiv,
        })
    }

    pub fn complex(&self) -> &FilteredComplex {
        &self.complex
    }

    fn chain_of(&self, dim: usize, idx: &[usize]) -> Chain {
        Chain::new(dim, idx.iter().map(|&i| self.complex.simplex(i).clone()))
            .expect("stored images are homogeneous")
    }

    /// All generators in filtration order.
    pub fn generators(&self) -> Vec<Simplex> {
        self.generators
            .iter()
            .map(|&i| self.complex.simplex(i).clone())
            .collect()
    }

    /// Generators of dimension `q`, in filtration order. Class coordinates
    /// refer to this order.
    pub fn generators_of_dim(&self, q: usize) -> Vec<Simplex> {
        self.generators
            .iter()
            .map(|&i| self.complex.simplex(i))
            .filter(|s| s.dim() == q)
            .cloned()
            .collect()
    }

    pub fn is_generator(&self, s: &Simplex) -> bool {
        self.complex
            .position(s)
            .is_some_and(|i| self.generators.binary_search(&i).is_ok())
    }

    pub fn betti(&self, q: usize) -> usize {
        self.generators
            .iter()
            .filter(|&&i| self.complex.simplex(i).dim() == q)
            .count()
    }

    /// Betti numbers in dimensions `0..=dim K` (empty for the empty complex).
    pub fn betti_numbers(&self) -> Vec<usize> {
        match self.complex.dim() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|q| self.betti(q)).collect(),
        }
    }

    /// `f(σ)`; zero for simplices outside the complex.
    pub fn f_of(&self, s: &Simplex) -> Chain {
        match self.complex.position(s) {
            Some(i) => self.chain_of(s.dim(), &self.f[i]),
            None => Chain::zero(s.dim()),
        }
    }

    /// `φ(σ)`; zero for simplices outside the complex.
    pub fn phi_of(&self, s: &Simplex) -> Chain {
        match self.complex.position(s) {
            Some(i) => self.chain_of(s.dim() + 1, &self.phi[i]),
            None => Chain::zero(s.dim() + 1),
        }
    }

    /// Representative cycle `γ + φ∂γ` of a generator.
    pub fn g_of(&self, gamma: &Simplex) -> Result<Chain> {
        if !self.is_generator(gamma) {
            return Err(Error::NotAGenerator(gamma.clone()));
        }
        Ok(self.g_unchecked(gamma))
    }

    fn g_unchecked(&self, gamma: &Simplex) -> Chain {
        let mut out = self.phi_chain(&gamma.boundary());
        if out.is_zero() {
            out = Chain::zero(gamma.dim());
        }
        out.toggle(gamma.clone());
        out
    }

    /// `f(a)` for a cycle `a`; zero iff `a` bounds.
    pub fn homology_class(&self, a: &Chain) -> Result<Chain> {
        self.complex.check_support(a)?;
        let d = a.boundary();
        if !d.is_zero() {
            return Err(Error::NotACycle { boundary: d });
        }
        Ok(self.f_chain(a))
    }

    /// A chain `b` with `∂b = a`, for a bounding cycle `a`.
    pub fn boundary_witness(&self, a: &Chain) -> Result<Chain> {
        let class = self.homology_class(a)?;
        if !class.is_zero() {
            return Err(Error::NotABoundary { class });
        }
        let b = self.phi_chain(a);
        if &b.boundary() != a {
            return Err(Error::Internal(format!(
                "∂φ({a}) = {} differs from the cycle",
                b.boundary()
            )));
        }
        Ok(b)
    }

    pub fn verify_contraction(&self) -> Vec<Violation> {
        contraction::verify(self)
    }

    /// The same maps as a tabulated [`Contraction`] onto the generators.
    pub fn to_contraction(&self) -> Contraction {
        let mut f = BTreeMap::new();
        let mut phi = BTreeMap::new();
        for (i, s) in self.complex.simplices().iter().enumerate() {
            if !self.f[i].is_empty() {
                f.insert(s.clone(), self.chain_of(s.dim(), &self.f[i]));
            }
            if !self.phi[i].is_empty() {
                phi.insert(s.clone(), self.chain_of(s.dim() + 1, &self.phi[i]));
            }
        }
        let gens = self.generators();
        let g = gens
            .iter()
            .map(|gamma| (gamma.clone(), self.g_unchecked(gamma)))
            .collect();
        Contraction {
            source: self.complex.clone(),
            target: Target::Homology(gens),
            f,
            g,
            phi,
        }
    }

    /// Coordinates of a class (a chain on generators of dimension `q`) in
    /// the basis [`generators_of_dim`](Self::generators_of_dim).
    pub fn class_coords(&self, q: usize, class: &Chain) -> crate::gf2::GF2Vector {
        let gens = self.generators_of_dim(q);
        let bits: Vec<bool> = gens.iter().map(|g| class.contains(g)).collect();
        crate::gf2::GF2Vector::from_bits(&bits)
    }
}

impl ChainContraction for ATModel {
    fn source(&self) -> &FilteredComplex {
        &self.complex
    }

    fn target_cells(&self) -> Vec<Simplex> {
        self.generators()
    }

    fn target_boundary(&self, cell: &Simplex) -> Chain {
        Chain::zero(cell.dim().saturating_sub(1))
    }

    fn f(&self, s: &Simplex) -> Chain {
        self.f_of(s)
    }

    fn g(&self, cell: &Simplex) -> Chain {
        self.g_unchecked(cell)
    }

    fn phi(&self, s: &Simplex) -> Chain {
        self.phi_of(s)
    }
}

/// Matrices of `H_q(vm): H_q K → H_q L` for `q = 0..=dim K`; column `j` is
/// the image of the `j`-th generator of `model_k`.
pub fn induced_homology_map(
    vm: &VertexMap,
    model_k: &ATModel,
    model_l: &ATModel,
) -> Result<Vec<GF2Matrix>> {
    vm.validate(model_k.complex(), model_l.complex())?;
    let top = model_k.complex().dim().map_or(0, |d| d + 1);
    let mut out = Vec::with_capacity(top);
    for q in 0..top {
        let rows = model_l.generators_of_dim(q);
        let columns: Vec<_> = model_k
            .generators_of_dim(q)
            .iter()
            .map(|gamma| {
                let cycle = model_k.g_unchecked(gamma);
                let image = model_l.f_chain(&vm.induced_chain_map(&cycle));
                model_l.class_coords(q, &image)
            })
            .collect();
        out.push(GF2Matrix::from_columns(rows.len(), &columns));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::OrderPolicy;
    use crate::contraction::Identity;
    use crate::simplex::Vertex;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn closure(max: &[&[Vertex]]) -> FilteredComplex {
        let m: Vec<Simplex> = max.iter().map(|v| s(v)).collect();
        FilteredComplex::close(&m, OrderPolicy::default()).unwrap()
    }

    fn hollow() -> ATModel {
        ATModel::new(closure(&[&[1, 2], &[1, 3], &[2, 3]]))
    }

    #[test]
    fn hollow_triangle_trace() {
        let m = hollow();
        assert_eq!(m.generators(), vec![s(&[1]), s(&[2, 3])]);
        assert_eq!(m.f_of(&s(&[2])), Chain::from_lists(&[&[1]]));
        assert_eq!(m.f_of(&s(&[3])), Chain::from_lists(&[&[1]]));
        assert_eq!(m.phi_of(&s(&[2])), Chain::from_lists(&[&[1, 2]]));
        assert_eq!(m.phi_of(&s(&[3])), Chain::from_lists(&[&[1, 3]]));
        assert_eq!(
            m.g_of(&s(&[2, 3])).unwrap(),
            Chain::from_lists(&[&[1, 2], &[1, 3], &[2, 3]])
        );
        assert_eq!(m.g_of(&s(&[1])).unwrap(), Chain::from_lists(&[&[1]]));
        assert!(matches!(m.g_of(&s(&[2])), Err(Error::NotAGenerator(_))));
        assert_eq!(m.betti_numbers(), vec![1, 1]);
        assert!(m.verify_contraction().is_empty());
    }

    #[test]
    fn single_vertex_and_empty() {
        let m = ATModel::new(closure(&[&[1]]));
        assert_eq!(m.generators(), vec![s(&[1])]);
        assert!(m.phi_of(&s(&[1])).is_zero());
        let e = ATModel::new(FilteredComplex::empty());
        assert!(e.betti_numbers().is_empty());
        assert!(e.verify_contraction().is_empty());
    }

    #[test]
    fn full_triangle_is_acyclic() {
        let m = ATModel::new(closure(&[&[1, 2, 3]]));
        assert_eq!(m.betti_numbers(), vec![1, 0, 0]);
        let a = s(&[1, 2, 3]).boundary();
        assert!(m.homology_class(&a).unwrap().is_zero());
        assert_eq!(
            m.boundary_witness(&a).unwrap(),
            Chain::from_lists(&[&[1, 2, 3]])
        );
        assert!(m.boundary_witness(&Chain::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn classes_and_witness_errors() {
        let m = hollow();
        let cycle = Chain::from_lists(&[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(
            m.homology_class(&cycle).unwrap(),
            Chain::from_lists(&[&[2, 3]])
        );
        assert!(m.homology_class(&Chain::zero(1)).unwrap().is_zero());
        assert!(matches!(
            m.boundary_witness(&cycle),
            Err(Error::NotABoundary { .. })
        ));
        assert!(matches!(
            m.homology_class(&Chain::from_lists(&[&[1, 2]])),
            Err(Error::NotACycle { .. })
        ));
    }

    #[test]
    fn corrupted_phi_names_homotopy_identity() {
        let m = hollow();
        let mut c = m.to_contraction();
        assert!(c.verify().is_empty());
        c.phi.insert(s(&[2]), Chain::from_lists(&[&[1, 3]]));
        let rebuilt =
            ATModel::from_parts(m.complex().clone(), &m.generators(), &c.f, &c.phi).unwrap();
        let v = rebuilt.verify_contraction();
        assert!(v.iter().any(|x| x.identity == Identity::Homotopy));
    }

    #[test]
    fn tau_strategy_keeps_betti() {
        let k = closure(&[&[1, 2, 3], &[3, 4], &[4, 5], &[3, 5], &[5, 6, 7, 8]]);
        let a = ATModel::build(k.clone(), TauStrategy::Largest);
        let b = ATModel::build(k, TauStrategy::Smallest);
        assert_eq!(a.betti_numbers(), b.betti_numbers());
        assert!(a.verify_contraction().is_empty());
        assert!(b.verify_contraction().is_empty());
    }

    #[test]
    fn induced_maps() {
        let k = hollow();
        let id = VertexMap::identity(k.complex());
        let mats = induced_homology_map(&id, &k, &k).unwrap();
        assert_eq!(mats[0], GF2Matrix::identity(1));
        assert_eq!(mats[1], GF2Matrix::identity(1));

        let pt = ATModel::new(closure(&[&[9]]));
        let squash =
            VertexMap::new([(1, 9), (2, 9), (3, 9)].into(), k.complex(), pt.complex()).unwrap();
        let mats = induced_homology_map(&squash, &k, &pt).unwrap();
        assert_eq!(mats[1].rows(), 0);
        assert_eq!(mats[1].cols(), 1);

        let l = ATModel::new(closure(&[&[4, 5], &[4, 6], &[5, 6]]));
        let relabel =
            VertexMap::new([(1, 4), (2, 5), (3, 6)].into(), k.complex(), l.complex()).unwrap();
        let mats = induced_homology_map(&relabel, &k, &l).unwrap();
        assert_eq!(mats[1], GF2Matrix::identity(1));
    }
}
