//! Filtered simplicial complexes, coboundaries, neighbourhoods and vertex maps.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::simplex::{Chain, Simplex, Vertex};

/// How [`FilteredComplex::close`] orders the generated simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Increasing dimension, lexicographic within a dimension.
    #[default]
    DimensionLex,
    /// Maximal simplices in the given order; each contributes its faces not
    /// yet seen, in dimension-then-lexicographic order.
    MaximalOrder,
    /// A caller-supplied full order, validated for prefix-closure.
    Supplied(Vec<Simplex>),
}

/// All simplices of a complex in an order where every face precedes its
/// cofaces.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    by_dim: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for FilteredComplex {}

impl FilteredComplex {
    pub fn empty() -> Self {
        FilteredComplex {
            simplices: Vec::new(),
            index: HashMap::new(),
            by_dim: Vec::new(),
            cofacets: Vec::new(),
        }
    }

    /// Validates a full filtration: no duplicates, every facet earlier.
    pub fn from_filtration(order: Vec<Simplex>) -> Result<Self> {
        let mut index = HashMap::with_capacity(order.len());
        for (i, s) in order.iter().enumerate() {
            for f in s.facets() {
                if !index.contains_key(&f) {
                    return Err(Error::NotPrefixClosed {
                        simplex: s.clone(),
                        facet: f,
                    });
                }
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSimplex(s.clone()));
            }
        }
        Ok(Self::build(order, index))
    }

    fn build(simplices: Vec<Simplex>, index: HashMap<Simplex, usize>) -> Self {
        let top = simplices.iter().map(Simplex::dim).max();
        let mut by_dim = vec![Vec::new(); top.map_or(0, |d| d + 1)];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            by_dim[s.dim()].push(i);
            for f in s.facets() {
                cofacets[index[&f]].push(i);
            }
        }
        FilteredComplex {
            simplices,
            index,
            by_dim,
            cofacets,
        }
    }

    /// The complex generated by `maximal` (overlaps allowed), in the order
    /// given by `policy`.
    pub fn close(maximal: &[Simplex], policy: OrderPolicy) -> Result<Self> {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for m in maximal {
            all.extend(m.faces());
        }
        let order = match policy {
            OrderPolicy::DimensionLex => dim_lex(all.into_iter().collect()),
            OrderPolicy::MaximalOrder => {
                let mut seen = BTreeSet::new();
                let mut order = Vec::with_capacity(all.len());
                for m in maximal {
                    let fresh: Vec<Simplex> = m
                        .faces()
                        .into_iter()
                        .filter(|f| seen.insert(f.clone()))
                        .collect();
                    order.extend(dim_lex(fresh));
                }
                order
            }
            OrderPolicy::Supplied(order) => {
                let k = Self::from_filtration(order)?;
                for m in maximal {
                    if !k.contains(m) {
                        return Err(Error::MissingFromFiltration(m.clone()));
                    }
                }
                return Ok(k);
            }
        };
        Self::from_filtration(order)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Filtration indices of the `q`-simplices, in filtration order.
    pub fn indices_of_dim(&self, q: usize) -> &[usize] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn of_dim(&self, q: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.indices_of_dim(q)
            .iter()
            .map(move |&i| &self.simplices[i])
    }

    pub fn count(&self, q: usize) -> usize {
        self.indices_of_dim(q).len()
    }

    /// Filtration indices of the simplices having `self.simplex(i)` as a facet.
    pub fn cofacets(&self, i: usize) -> &[usize] {
        &self.cofacets[i]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.of_dim(0).map(|s| s.vertices()[0])
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        (0..self.len())
            .filter(|&i| self.cofacets[i].is_empty())
            .map(|i| self.simplices[i].clone())
            .collect()
    }

    pub fn check_support(&self, c: &Chain) -> Result<()> {
        match c.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::NotInComplex(s.clone())),
            None => Ok(()),
        }
    }

    /// `(δc)(τ) = c(∂τ)`: the `(q+1)`-simplices with an odd number of facets
    /// in the support of `c`.
    pub fn coboundary(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.dim() + 1);
        for s in c.iter() {
            let Some(i) = self.position(s) else {
                continue;
            };
            for &j in &self.cofacets[i] {
                out.toggle(self.simplices[j].clone());
            }
        }
        out
    }

    /// Matrix of `∂_q : C_q → C_{q-1}` in filtration order (rows = (q−1)-simplices).
    pub fn boundary_matrix(&self, q: usize) -> GF2Matrix {
        if q == 0 {
            return GF2Matrix::zeros(0, self.count(0));
        }
        let rows: HashMap<usize, usize> = self
            .indices_of_dim(q - 1)
            .iter()
            .enumerate()
            .map(|(r, &i)| (i, r))
            .collect();
        let mut m = GF2Matrix::zeros(rows.len(), self.count(q));
        for (c, &j) in self.indices_of_dim(q).iter().enumerate() {
            for f in self.simplices[j].facets() {
                m.set(rows[&self.index[&f]], c, true);
            }
        }
        m
    }

    /// Betti numbers from boundary ranks, `|K_q| − rank ∂_q − rank ∂_{q+1}`,
    /// independently of any contraction.
    pub fn betti_by_rank(&self) -> Vec<usize> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        let ranks: Vec<usize> = (0..=d + 1)
            .map(|q| self.boundary_matrix(q).rank())
            .collect();
        (0..=d)
            .map(|q| self.count(q) - ranks[q] - ranks[q + 1])
            .collect()
    }

    /// Every simplex of the complex having a member of `b` as a face.
    pub fn star(&self, b: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        self.simplices
            .iter()
            .filter(|s| b.iter().any(|x| x.is_face_of(s)))
            .cloned()
            .collect()
    }

    /// Every face of a member of `b`.
    pub fn closure(&self, b: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        b.iter().flat_map(Simplex::faces).collect()
    }

    /// `closure(star(B)) − star(closure(B))`.
    pub fn link(&self, b: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        let cl_st = self.closure(&self.star(b));
        let st_cl = self.star(&self.closure(b));
        cl_st.difference(&st_cl).cloned().collect()
    }

    pub fn link_of(&self, s: &Simplex) -> BTreeSet<Simplex> {
        self.link(&BTreeSet::from([s.clone()]))
    }
}

fn dim_lex(mut v: Vec<Simplex>) -> Vec<Simplex> {
    v.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    v
}

/// A map on vertex labels sending every simplex of the source onto a simplex
/// of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    mapping: BTreeMap<Vertex, Vertex>,
}

impl VertexMap {
    pub fn new(
        mapping: BTreeMap<Vertex, Vertex>,
        source: &FilteredComplex,
        target: &FilteredComplex,
    ) -> Result<Self> {
        let vm = VertexMap { mapping };
        vm.validate(source, target)?;
        Ok(vm)
    }

    pub fn identity(k: &FilteredComplex) -> Self {
        VertexMap {
            mapping: k.vertices().map(|v| (v, v)).collect(),
        }
    }

    pub fn validate(&self, source: &FilteredComplex, target: &FilteredComplex) -> Result<()> {
        for s in source.simplices() {
            let image = self.image_vertices(s)?;
            if !target.contains(&image) {
                return Err(Error::InvalidVertexMap(format!(
                    "{s} maps onto {image}, which is not a simplex of the target"
                )));
            }
        }
        Ok(())
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.mapping.get(&v).copied()
    }

    /// The simplex spanned by the images (duplicates merged).
    pub fn image_vertices(&self, s: &Simplex) -> Result<Simplex> {
        let imgs = s
            .vertices()
            .iter()
            .map(|v| {
                self.get(*v)
                    .ok_or_else(|| Error::InvalidVertexMap(format!("vertex {v} is unmapped")))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Simplex::from_sorted(imgs.into_iter().collect()))
    }

    /// `f_#`: the image simplex when the images are distinct, zero otherwise.
    pub fn map_simplex(&self, s: &Simplex) -> Option<Simplex> {
        let img = self.image_vertices(s).ok()?;
        (img.dim() == s.dim()).then_some(img)
    }

    /// `f_#` extended linearly.
    pub fn induced_chain_map(&self, a: &Chain) -> Chain {
        let mut out = Chain::zero(a.dim());
        for s in a.iter() {
            if let Some(t) = self.map_simplex(s) {
                out.toggle(t);
            }
        }
        out
    }
}
