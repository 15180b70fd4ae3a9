//! Cochain-level operations: the dual contraction `(f*, g*, φ*)`, cup and
//! cup-`n` products, ring structure constants and Steenrod squares.
//!
//! Cochains share the [`Chain`] carrier; a cochain's value on a simplex is
//! membership in its support.

use serde::{Deserialize, Serialize};

use crate::at_model::ATModel;
use crate::complex::FilteredComplex;
use crate::contraction::ChainContraction;
use crate::error::{Error, Result};
use crate::gf2::{GF2Matrix, GF2Vector};
use crate::simplex::{Chain, Simplex};

/// A cohomology class in the basis dual to the generators of one dimension
/// (ordered as in [`ATModel::generators_of_dim`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub dim: usize,
    pub coords: GF2Vector,
}

impl CohomologyClass {
    pub fn zero(model: &ATModel, dim: usize) -> Self {
        CohomologyClass {
            dim,
            coords: GF2Vector::zeros(model.betti(dim)),
        }
    }

    /// The sum of the duals of the given generators.
    pub fn from_generators(model: &ATModel, dim: usize, gens: &[Simplex]) -> Result<Self> {
        let basis = model.generators_of_dim(dim);
        let mut coords = GF2Vector::zeros(basis.len());
        for g in gens {
            if g.dim() != dim {
                return Err(Error::WrongDegree {
                    expected: dim,
                    found: g.dim(),
                });
            }
            let j = basis
                .iter()
                .position(|b| b == g)
                .ok_or_else(|| Error::NotAGenerator(g.clone()))?;
            coords.flip(j);
        }
        Ok(CohomologyClass { dim, coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Generators whose duals make up the class.
    pub fn support(&self, model: &ATModel) -> Vec<Simplex> {
        let basis = model.generators_of_dim(self.dim);
        self.coords.ones().map(|j| basis[j].clone()).collect()
    }

    fn check(&self, model: &ATModel) -> Result<()> {
        let n = model.betti(self.dim);
        if self.coords.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                found: self.coords.len(),
            });
        }
        Ok(())
    }
}

/// `g*α = α f`: the cocycle taking value `Σ α(γ)·[γ ∈ f σ]` on `σ`.
pub fn g_star(model: &ATModel, alpha: &CohomologyClass) -> Result<Chain> {
    alpha.check(model)?;
    let gens = alpha.support(model);
    let mut out = Chain::zero(alpha.dim);
    if gens.is_empty() {
        return Ok(out);
    }
    let dual: Chain = gens.into_iter().collect();
    for s in model.complex().of_dim(alpha.dim) {
        if dual.evaluate(&model.f_of(s)) {
            out.toggle(s.clone());
        }
    }
    Ok(out)
}

/// `f*c = c g` for a cocycle `c`.
pub fn f_star(model: &ATModel, c: &Chain) -> Result<CohomologyClass> {
    model.complex().check_support(c)?;
    let d = model.complex().coboundary(c);
    if !d.is_zero() {
        return Err(Error::NotACocycle { coboundary: d });
    }
    let q = c.dim();
    let bits: Vec<bool> = model
        .generators_of_dim(q)
        .iter()
        .map(|g| c.evaluate(&model.g(g)))
        .collect();
    Ok(CohomologyClass {
        dim: q,
        coords: GF2Vector::from_bits(&bits),
    })
}

/// `φ*c = c φ`, one dimension lower (zero for 0-cochains).
pub fn phi_star(model: &ATModel, c: &Chain) -> Chain {
    let q = c.dim();
    let mut out = Chain::zero(q.saturating_sub(1));
    if q == 0 || c.is_zero() {
        return out;
    }
    for s in model.complex().of_dim(q - 1) {
        if c.evaluate(&model.phi_of(s)) {
            out.toggle(s.clone());
        }
    }
    out
}

/// Front-face/back-face cup product on the simplices of `k`.
pub fn cup(k: &FilteredComplex, c: &Chain, c2: &Chain) -> Chain {
    let (p, q) = (c.dim(), c2.dim());
    let mut out = Chain::zero(p + q);
    if c.is_zero() || c2.is_zero() {
        return out;
    }
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=p + q).collect();
    for s in k.of_dim(p + q) {
        if c.contains(&s.select(&front)) && c2.contains(&s.select(&back)) {
            out.toggle(s.clone());
        }
    }
    out
}

/// Position pairs `(even blocks, odd blocks)` of the cup-`n` formula on an
/// `N`-simplex that have the right sizes for degrees `p` and `q`.
fn cup_n_terms(p: usize, q: usize, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let top = p + q - n;
    assert!(top < 64, "cup_n on simplices above dimension 63");
    let range = |a: usize, b: usize| -> u64 { ((1u64 << (b - a + 1)) - 1) << a };
    let positions =
        |mask: u64| -> Vec<usize> { (0..=top).filter(|i| mask >> i & 1 == 1).collect() };
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..=n).collect();
    if n > top {
        return out;
    }
    loop {
        let (mut even, mut odd) = (range(0, idx[0]), 0u64);
        for j in 1..=n {
            let block = range(idx[j - 1], idx[j]);
            if j % 2 == 0 {
                even |= block;
            } else {
                odd |= block;
            }
        }
        let last = range(idx[n], top);
        if (n + 1).is_multiple_of(2) {
            even |= last;
        } else {
            odd |= last;
        }
        if even.count_ones() as usize == p + 1 && odd.count_ones() as usize == q + 1 {
            out.push((positions(even), positions(odd)));
        }
        // next strictly increasing tuple in [0, top]
        let mut j = n + 1;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < top - (n - j) {
                idx[j] += 1;
                for l in j + 1..=n {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `c ⌣_n c′`, a `(p+q−n)`-cochain. Terms whose blocks have the wrong
/// number of vertices vanish.
pub fn cup_n(k: &FilteredComplex, c: &Chain, c2: &Chain, n: usize) -> Chain {
    let (p, q) = (c.dim(), c2.dim());
    if p + q < n {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(p + q - n);
    if c.is_zero() || c2.is_zero() {
        return out;
    }
    let terms = cup_n_terms(p, q, n);
    if terms.is_empty() {
        return out;
    }
    for s in k.of_dim(p + q - n) {
        let mut value = false;
        for (even, odd) in &terms {
            if c.contains(&s.select(even)) && c2.contains(&s.select(odd)) {
                value = !value;
            }
        }
        if value {
            out.toggle(s.clone());
        }
    }
    out
}

/// `Sq^i c = c ⌣_{q−i} c`; zero when `i > q`.
pub fn sq_cochain(k: &FilteredComplex, c: &Chain, i: usize) -> Chain {
    let q = c.dim();
    if i > q {
        return Chain::zero(q + i);
    }
    cup_n(k, c, c, q - i)
}

/// One ring structure constant: the coefficient of `γ*` in `α* ⌣ β*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub alpha: Simplex,
    pub beta: Simplex,
    pub gamma: Simplex,
    pub value: bool,
}

/// All structure constants `((α*f) ⌣ (β*f))(gγ)`, for every generator pair
/// and every generator in the sum dimension.
pub fn cohomology_ring(model: &ATModel) -> Vec<StructureConstant> {
    let gens = model.generators();
    let duals: Vec<Chain> = gens
        .iter()
        .map(|g| {
            let class = CohomologyClass::from_generators(model, g.dim(), std::slice::from_ref(g))
                .expect("generator");
            g_star(model, &class).expect("consistent class")
        })
        .collect();
    let cycles: Vec<Chain> = gens.iter().map(|g| model.g(g)).collect();
    let mut out = Vec::new();
    for (a, ca) in gens.iter().zip(&duals) {
        for (b, cb) in gens.iter().zip(&duals) {
            let (p, q) = (a.dim(), b.dim());
            let front: Vec<usize> = (0..=p).collect();
            let back: Vec<usize> = (p..=p + q).collect();
            for (gamma, cycle) in gens.iter().zip(&cycles) {
                if gamma.dim() != p + q {
                    continue;
                }
                let value = cycle
                    .iter()
                    .filter(|s| ca.contains(&s.select(&front)) && cb.contains(&s.select(&back)))
                    .count()
                    % 2
                    == 1;
                out.push(StructureConstant {
                    alpha: a.clone(),
                    beta: b.clone(),
                    gamma: gamma.clone(),
                    value,
                });
            }
        }
    }
    out
}

/// Matrix of `Sq^i: H^q → H^{q+i}` in the generator bases.
pub fn sq_matrix(model: &ATModel, i: usize, q: usize) -> GF2Matrix {
    let k = model.complex();
    let rows = model.betti(q + i);
    let columns: Vec<GF2Vector> = model
        .generators_of_dim(q)
        .iter()
        .map(|g| {
            let class = CohomologyClass::from_generators(model, q, std::slice::from_ref(g))
                .expect("generator");
            let c = g_star(model, &class).expect("consistent class");
            let sq = sq_cochain(k, &c, i);
            if rows == 0 {
                return GF2Vector::zeros(0);
            }
            f_star(model, &sq)
                .expect("Sq of a cocycle is a cocycle")
                .coords
        })
        .collect();
    GF2Matrix::from_columns(rows, &columns)
}

/// Basis of the kernel of `Sq^i` on `H^q`.
pub fn sq_kernel_basis(model: &ATModel, i: usize, q: usize) -> Vec<CohomologyClass> {
    sq_matrix(model, i, q)
        .null_space()
        .into_iter()
        .map(|coords| CohomologyClass { dim: q, coords })
        .collect()
}

/// Basis of the image of `Sq^i` on `H^q`, as classes in `H^{q+i}`.
pub fn sq_image_basis(model: &ATModel, i: usize, q: usize) -> Vec<CohomologyClass> {
    let m = sq_matrix(model, i, q);
    m.independent_columns()
        .into_iter()
        .map(|j| CohomologyClass {
            dim: q + i,
            coords: m.column(j),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::OrderPolicy;
    use crate::fixtures;
    use crate::simplex::Vertex;

    fn s(v: &[Vertex]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn hollow() -> ATModel {
        ATModel::new(fixtures::load("hollow_triangle").unwrap())
    }

    #[test]
    fn dual_maps_on_hollow_triangle() {
        let m = hollow();
        let a = CohomologyClass::from_generators(&m, 1, &[s(&[2, 3])]).unwrap();
        assert_eq!(g_star(&m, &a).unwrap(), Chain::from_lists(&[&[2, 3]]));
        assert!(g_star(&m, &CohomologyClass::zero(&m, 1)).unwrap().is_zero());
        assert_eq!(f_star(&m, &Chain::from_lists(&[&[1, 2]])).unwrap(), a);
        let not_cocycle = Chain::from_lists(&[&[2]]);
        assert!(matches!(
            f_star(&m, &not_cocycle),
            Err(Error::NotACocycle { .. })
        ));
        assert!(phi_star(&m, &Chain::zero(1)).is_zero());
        assert_eq!(
            phi_star(&m, &Chain::from_lists(&[&[1, 2]])),
            Chain::from_lists(&[&[2]])
        );
    }

    #[test]
    fn cup_examples() {
        let k = FilteredComplex::close(&[s(&[1, 2, 3])], OrderPolicy::default()).unwrap();
        let c = Chain::from_lists(&[&[1, 2]]);
        let c2 = Chain::from_lists(&[&[2, 3]]);
        assert_eq!(cup(&k, &c, &c2), Chain::from_lists(&[&[1, 2, 3]]));
        assert_eq!(cup_n(&k, &c, &c2, 0), cup(&k, &c, &c2));
        assert!(cup(&k, &c2, &c).is_zero());
    }

    #[test]
    fn cup_n_full_block() {
        let k = fixtures::load("tetrahedron").unwrap();
        for q in 0..=3 {
            let top: Vec<Vertex> = (1..=q as Vertex + 1).collect();
            let c: Chain = std::iter::once(s(&top)).collect();
            assert!(cup_n(&k, &c, &c, q).contains(&s(&top)), "q = {q}");
        }
    }

    #[test]
    fn cup_n_terms_count() {
        // n = 0 leaves only the front/back split
        assert_eq!(
            cup_n_terms(2, 3, 0),
            vec![(vec![0, 1, 2], vec![2, 3, 4, 5])]
        );
        assert!(cup_n_terms(1, 1, 2).is_empty());
        // 1-cochains, n = 1: (c ⌣₁ c′)⟨0,1⟩ = c⟨0,1⟩c′⟨0,1⟩
        assert_eq!(cup_n_terms(1, 1, 1), vec![(vec![0, 1], vec![0, 1])]);
    }

    #[test]
    fn rp2_sq1_is_nonzero() {
        let m = ATModel::new(fixtures::load("rp2").unwrap());
        assert_eq!(sq_matrix(&m, 1, 1), GF2Matrix::identity(1));
        assert!(sq_kernel_basis(&m, 1, 1).is_empty());
        assert_eq!(sq_image_basis(&m, 1, 1).len(), 1);
    }

    #[test]
    fn sphere_sq_degenerate() {
        let m = ATModel::new(fixtures::load("sphere").unwrap());
        let sq = sq_matrix(&m, 1, 2);
        assert_eq!((sq.rows(), sq.cols()), (0, 1));
        assert_eq!(sq_kernel_basis(&m, 3, 2).len(), 1);
    }

    #[test]
    fn unit_row_of_ring() {
        let m = ATModel::new(fixtures::load("torus").unwrap());
        let pt = s(&[1]);
        for sc in cohomology_ring(&m).iter().filter(|x| x.alpha == pt) {
            assert_eq!(sc.value, sc.beta == sc.gamma, "{sc:?}");
        }
    }
}
