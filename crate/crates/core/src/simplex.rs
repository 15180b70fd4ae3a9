//! Simplices and GF(2) chains.
//!
//! A [`Chain`] is a finite set of same-dimension simplices read as a formal
//! sum with coefficients in GF(2). The same carrier is used for cochains: a
//! cochain's value on a simplex is membership in the support, and its value on
//! a chain is the parity of the support intersection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An oriented-free simplex: a strictly increasing, non-empty list of vertex
/// labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from labels in any order. Labels must be distinct.
    pub fn new(labels: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = labels.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Simplex(v))
    }

    /// Wraps an already sorted, duplicate-free, non-empty list.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True if `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The facets, in the order obtained by omitting `v_0`, `v_1`, ...
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// All non-empty faces, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// The sub-simplex on the given positions (ascending, non-empty).
    pub fn select(&self, positions: &[usize]) -> Simplex {
        Simplex(positions.iter().map(|&i| self.0[i]).collect())
    }

    /// Vertex union. Returns `None` when the two share a vertex.
    pub fn join(&self, other: &Simplex) -> Option<Simplex> {
        let mut v = self.0.clone();
        for &x in &other.0 {
            match v.binary_search(&x) {
                Ok(_) => return None,
                Err(pos) => v.insert(pos, x),
            }
        }
        Some(Simplex(v))
    }

    pub fn with_vertex(&self, x: Vertex) -> Option<Simplex> {
        self.join(&Simplex::vertex(x))
    }

    pub fn boundary(&self) -> Chain {
        let dim = self.dim().saturating_sub(1);
        let mut out = Chain::zero(dim);
        for f in self.facets() {
            out.toggle(f);
        }
        out
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A GF(2) chain (or cochain) of a fixed dimension.
///
/// The empty chain of a vertex boundary is represented in dimension 0; the
/// augmented degree −1 is not modelled.
#[derive(Clone)]
pub struct Chain {
    dim: usize,
    support: BTreeSet<Simplex>,
}

/// Zero chains are equal whatever their dimension tag.
impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        self.support == other.support && (self.dim == other.dim || self.is_zero())
    }
}

impl Eq for Chain {}

impl std::hash::Hash for Chain {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.support.hash(state);
    }
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            support: BTreeSet::new(),
        }
    }

    /// Builds a chain from simplices; repeated simplices cancel mod 2.
    pub fn new(dim: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut c = Chain::zero(dim);
        for s in simplices {
            if s.dim() != dim {
                return Err(Error::MixedDimensions {
                    expected: dim,
                    found: s.dim(),
                });
            }
            c.toggle(s);
        }
        Ok(c)
    }

    /// Convenience constructor from vertex lists; panics on malformed input.
    pub fn from_lists(lists: &[&[Vertex]]) -> Self {
        lists
            .iter()
            .map(|l| Simplex::new(l.iter().copied()).expect("valid simplex"))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &BTreeSet<Simplex> {
        &self.support
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.support.iter()
    }

    /// Coefficient of `s` (as a chain) or value on `s` (as a cochain).
    pub fn contains(&self, s: &Simplex) -> bool {
        self.support.contains(s)
    }

    pub fn toggle(&mut self, s: Simplex) {
        debug_assert_eq!(s.dim(), self.dim, "toggling {s} into a {}-chain", self.dim);
        if !self.support.remove(&s) {
            self.support.insert(s);
        }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.dim = other.dim;
        }
        debug_assert_eq!(self.dim, other.dim);
        for s in &other.support {
            if !self.support.remove(s) {
                self.support.insert(s.clone());
            }
        }
    }

    /// Cochain evaluation: parity of the support intersection.
    pub fn evaluate(&self, chain: &Chain) -> bool {
        let (small, large) = if self.len() <= chain.len() {
            (self, chain)
        } else {
            (chain, self)
        };
        small.support.iter().filter(|s| large.contains(s)).count() % 2 == 1
    }

    /// GF(2) boundary, the sum of the member boundaries.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.dim.saturating_sub(1));
        if self.dim == 0 {
            return out;
        }
        for s in &self.support {
            for f in s.facets() {
                out.toggle(f);
            }
        }
        out
    }

    pub fn to_lists(&self) -> Vec<Vec<Vertex>> {
        self.support.iter().map(|s| s.vertices().to_vec()).collect()
    }
}

impl FromIterator<Simplex> for Chain {
    /// Dimension is taken from the first element (0 for an empty iterator).
    fn from_iter<I: IntoIterator<Item = Simplex>>(iter: I) -> Self {
        let mut it = iter.into_iter().peekable();
        let dim = it.peek().map_or(0, Simplex::dim);
        let mut c = Chain::zero(dim);
        for s in it {
            c.toggle(s);
        }
        c
    }
}

impl std::ops::Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        Chain::add_assign(self, rhs);
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, s) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain[{}]({self})", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn make_simplex_sorts() {
        assert_eq!(s(&[3, 1, 7]).vertices(), &[1, 3, 7]);
        assert_eq!(s(&[5]).dim(), 0);
        assert!(matches!(
            Simplex::new([2, 2]),
            Err(Error::DuplicateVertex(2))
        ));
        assert!(matches!(Simplex::new([]), Err(Error::EmptySimplex)));
    }

    #[test]
    fn simplex_boundary() {
        assert_eq!(
            s(&[1, 2, 3]).boundary(),
            Chain::from_lists(&[&[2, 3], &[1, 3], &[1, 2]])
        );
        assert!(s(&[5]).boundary().is_zero());
        assert_eq!(s(&[1, 2]).boundary(), Chain::from_lists(&[&[1], &[2]]));
    }

    #[test]
    fn chain_boundary() {
        let path = Chain::from_lists(&[&[1, 2], &[2, 3]]);
        assert_eq!(path.boundary(), Chain::from_lists(&[&[1], &[3]]));
        assert!(Chain::zero(1).boundary().is_zero());
        let cycle = Chain::from_lists(&[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(cycle.boundary().is_zero());
    }

    #[test]
    fn boundary_squared_vanishes_on_a_4_simplex() {
        let sigma = s(&[0, 3, 4, 8, 9]);
        assert!(sigma.boundary().boundary().is_zero());
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let a = Chain::from_lists(&[&[1, 2], &[2, 3]]);
        let b = Chain::from_lists(&[&[2, 3], &[3, 4]]);
        assert_eq!(&a + &b, Chain::from_lists(&[&[1, 2], &[3, 4]]));
        assert!((&a + &a).is_zero());
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let err = Chain::new(1, [s(&[1, 2]), s(&[1])]).unwrap_err();
        assert!(matches!(
            err,
            Error::MixedDimensions {
                expected: 1,
                found: 0
            }
        ));
    }

    #[test]
    fn evaluation_is_intersection_parity() {
        let c = Chain::from_lists(&[&[1, 2], &[2, 3]]);
        assert!(c.evaluate(&Chain::from_lists(&[&[1, 2], &[1, 3]])));
        assert!(!c.evaluate(&Chain::from_lists(&[&[1, 2], &[2, 3]])));
    }

    #[test]
    fn join_and_faces() {
        assert_eq!(s(&[1, 4]).join(&s(&[2])), Some(s(&[1, 2, 4])));
        assert_eq!(s(&[1, 4]).join(&s(&[4])), None);
        assert_eq!(s(&[1, 2, 3]).faces().len(), 7);
        assert!(s(&[1, 3]).is_face_of(&s(&[1, 2, 3])));
        assert!(!s(&[1, 4]).is_face_of(&s(&[1, 2, 3])));
    }

    #[test]
    fn serde_rejects_duplicates() {
        let ok: Simplex = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(ok, s(&[1, 3]));
        assert!(serde_json::from_str::<Simplex>("[2,2]").is_err());
    }
}
