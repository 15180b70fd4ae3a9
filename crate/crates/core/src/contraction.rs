//! Chain contractions `(f, g, φ)` and their identity verifier.
//!
//! A contraction from `C_*K` to a target complex `T` satisfies
//!
//! * `f` and `g` are chain maps,
//! * `f g = 1` on `T`,
//! * `1 + g f = ∂φ + φ∂` on `C_*K`,
//! * `f φ = 0`, `φ g = 0`, `φ φ = 0`.
//!
//! The target is either another simplicial complex or a set of homology
//! generators carrying the zero differential.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::simplex::{Chain, Simplex};

/// Read access to the three maps of a contraction, cell by cell.
pub trait ChainContraction {
    fn source(&self) -> &FilteredComplex;
    /// Basis cells of the target.
    fn target_cells(&self) -> Vec<Simplex>;
    /// Differential of the target on one basis cell.
    fn target_boundary(&self, cell: &Simplex) -> Chain;
    fn f(&self, s: &Simplex) -> Chain;
    fn g(&self, cell: &Simplex) -> Chain;
    fn phi(&self, s: &Simplex) -> Chain;

    fn f_chain(&self, a: &Chain) -> Chain {
        extend(a, a.dim(), |s| self.f(s))
    }

    fn g_chain(&self, a: &Chain) -> Chain {
        extend(a, a.dim(), |s| self.g(s))
    }

    fn phi_chain(&self, a: &Chain) -> Chain {
        extend(a, a.dim() + 1, |s| self.phi(s))
    }

    fn target_boundary_chain(&self, a: &Chain) -> Chain {
        extend(a, a.dim().saturating_sub(1), |s| self.target_boundary(s))
    }
}

fn extend(a: &Chain, dim: usize, map: impl Fn(&Simplex) -> Chain) -> Chain {
    let mut out = Chain::zero(dim);
    for s in a.iter() {
        out += &map(s);
    }
    out
}

/// The identities checked by [`verify`], numbered as in the report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Identity {
    /// (i) `f ∂ = ∂ f`
    FChainMap,
    /// (ii) `σ + g f σ = ∂ φ σ + φ ∂ σ`
    Homotopy,
    /// (iii) `f g = 1`
    Section,
    /// (iv) `f φ = 0`
    FPhi,
    /// (v) `φ g = 0`
    PhiG,
    /// (vi) `φ φ = 0`
    PhiPhi,
    /// (vii) `∂ g = g ∂`
    GChainMap,
}

impl Identity {
    pub fn label(self) -> &'static str {
        match self {
            Identity::FChainMap => "(i) f∂ = ∂f",
            Identity::Homotopy => "(ii) 1 + gf = ∂φ + φ∂",
            Identity::Section => "(iii) fg = 1",
            Identity::FPhi => "(iv) fφ = 0",
            Identity::PhiG => "(v) φg = 0",
            Identity::PhiPhi => "(vi) φφ = 0",
            Identity::GChainMap => "(vii) ∂g = g∂",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    pub cell: Simplex,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: {}",
            self.identity, self.cell, self.detail
        )
    }
}

/// Checks all seven identities on every source simplex and target cell.
/// Returns the violations found (empty iff the maps form a contraction).
pub fn verify<C: ChainContraction + ?Sized>(c: &C) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut report = |identity, cell: &Simplex, lhs: &Chain, rhs: &Chain| {
        if lhs != rhs {
            out.push(Violation {
                identity,
                cell: cell.clone(),
                detail: format!("{lhs} ≠ {rhs}"),
            });
        }
    };
    let zero = Chain::zero(0);

    for s in c.source().simplices() {
        let fs = c.f(s);
        let ds = s.boundary();
        let phis = c.phi(s);

        report(
            Identity::FChainMap,
            s,
            &c.f_chain(&ds),
            &c.target_boundary_chain(&fs),
        );

        let mut lhs = c.g_chain(&fs);
        lhs.toggle(s.clone());
        let rhs = &phis.boundary() + &c.phi_chain(&ds);
        report(Identity::Homotopy, s, &lhs, &rhs);

        report(Identity::FPhi, s, &c.f_chain(&phis), &zero);
        report(Identity::PhiPhi, s, &c.phi_chain(&phis), &zero);
    }

    for cell in c.target_cells() {
        let gc = c.g(&cell);
        report(
            Identity::Section,
            &cell,
            &c.f_chain(&gc),
            &Chain::new(cell.dim(), [cell.clone()]).expect("single simplex"),
        );
        report(Identity::PhiG, &cell, &c.phi_chain(&gc), &zero);
        report(
            Identity::GChainMap,
            &cell,
            &gc.boundary(),
            &c.g_chain(&c.target_boundary(&cell)),
        );
    }
    out
}

/// The target of a [`Contraction`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A simplicial complex with its usual boundary.
    Complex(FilteredComplex),
    /// Homology generators with the zero differential.
    Homology(Vec<Simplex>),
}

impl Target {
    pub fn cells(&self) -> Vec<Simplex> {
        match self {
            Target::Complex(k) => k.simplices().to_vec(),
            Target::Homology(gens) => gens.clone(),
        }
    }
}

/// An explicit contraction with tabulated maps. Absent entries are zero for
/// `f` and `φ`; `g` must list every target cell.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub source: FilteredComplex,
    pub target: Target,
    pub f: BTreeMap<Simplex, Chain>,
    pub g: BTreeMap<Simplex, Chain>,
    pub phi: BTreeMap<Simplex, Chain>,
}

impl Contraction {
    /// `(1, 1, 0)` on `k`.
    pub fn identity(k: &FilteredComplex) -> Self {
        let id: BTreeMap<Simplex, Chain> = k
            .simplices()
            .iter()
            .map(|s| (s.clone(), std::iter::once(s.clone()).collect()))
            .collect();
        Contraction {
            source: k.clone(),
            target: Target::Complex(k.clone()),
            f: id.clone(),
            g: id,
            phi: BTreeMap::new(),
        }
    }

    pub fn target_complex(&self) -> Option<&FilteredComplex> {
        match &self.target {
            Target::Complex(k) => Some(k),
            Target::Homology(_) => None,
        }
    }

    pub fn verify(&self) -> Vec<Violation> {
        verify(self)
    }

    /// Returns `self` if it verifies, the violations otherwise.
    pub fn verified(self) -> Result<Self> {
        let v = self.verify();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Verification(v))
        }
    }

    /// Drops zero entries of `f` and `φ`.
    pub(crate) fn prune(&mut self) {
        self.f.retain(|_, c| !c.is_zero());
        self.phi.retain(|_, c| !c.is_zero());
    }
}

impl ChainContraction for Contraction {
    fn source(&self) -> &FilteredComplex {
        &self.source
    }

    fn target_cells(&self) -> Vec<Simplex> {
        self.target.cells()
    }

    fn target_boundary(&self, cell: &Simplex) -> Chain {
        match self.target {
            Target::Complex(_) => cell.boundary(),
            Target::Homology(_) => Chain::zero(cell.dim().saturating_sub(1)),
        }
    }

    fn f(&self, s: &Simplex) -> Chain {
        self.f
            .get(s)
            .cloned()
            .unwrap_or_else(|| Chain::zero(s.dim()))
    }

    fn g(&self, cell: &Simplex) -> Chain {
        self.g
            .get(cell)
            .cloned()
            .unwrap_or_else(|| Chain::zero(cell.dim()))
    }

    fn phi(&self, s: &Simplex) -> Chain {
        self.phi
            .get(s)
            .cloned()
            .unwrap_or_else(|| Chain::zero(s.dim() + 1))
    }
}

/// Composes `K ⇒ M` with `M ⇒ N`:
/// `f = f₂f₁`, `g = g₁g₂`, `φ = φ₁ + g₁φ₂f₁`. The result is verified.
pub fn compose(first: &Contraction, second: &Contraction) -> Result<Contraction> {
    let middle = first.target_complex().ok_or_else(|| {
        Error::MismatchedComplexes("first contraction ends in homology, not a complex".into())
    })?;
    if middle != &second.source {
        return Err(Error::MismatchedComplexes(format!(
            "first target has {} simplices, second source has {}",
            middle.len(),
            second.source.len()
        )));
    }
    let mut f = BTreeMap::new();
    let mut phi = BTreeMap::new();
    for s in first.source.simplices() {
        let f1 = first.f(s);
        f.insert(s.clone(), second.f_chain(&f1));
        let correction = first.g_chain(&second.phi_chain(&f1));
        phi.insert(s.clone(), &first.phi(s) + &correction);
    }
    let g = second
        .target_cells()
        .into_iter()
        .map(|cell| {
            let image = first.g_chain(&second.g(&cell));
            (cell, image)
        })
        .collect();
    let mut out = Contraction {
        source: first.source.clone(),
        target: second.target.clone(),
        f,
        g,
        phi,
    };
    out.prune();
    out.verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::OrderPolicy;

    fn tri() -> FilteredComplex {
        FilteredComplex::close(&[Simplex::new([1, 2, 3]).unwrap()], OrderPolicy::default()).unwrap()
    }

    #[test]
    fn identity_contraction_verifies() {
        assert!(Contraction::identity(&tri()).verify().is_empty());
        assert!(Contraction::identity(&FilteredComplex::empty())
            .verify()
            .is_empty());
    }

    #[test]
    fn corrupted_phi_is_reported_as_homotopy_failure() {
        let mut c = Contraction::identity(&tri());
        let v = Simplex::vertex(2);
        c.phi.insert(v.clone(), Chain::from_lists(&[&[1, 2]]));
        let violations = c.verify();
        assert!(violations
            .iter()
            .any(|x| x.identity == Identity::Homotopy && x.cell == v));
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let k = tri();
        let id = Contraction::identity(&k);
        let c = compose(&id, &id).unwrap();
        assert_eq!(c.f, id.f);
        assert_eq!(c.g, id.g);
        assert!(c.phi.is_empty());
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = Contraction::identity(&tri());
        let other =
            FilteredComplex::close(&[Simplex::new([1, 2]).unwrap()], OrderPolicy::default())
                .unwrap();
        let b = Contraction::identity(&other);
        assert!(matches!(
            compose(&a, &b),
            Err(Error::MismatchedComplexes(_))
        ));
    }
}
