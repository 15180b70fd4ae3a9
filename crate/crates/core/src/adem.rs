//! The Adem secondary operation `Ψ₂` on the kernel of `Sq²: H² → H⁴`.
//!
//! For a class `α` with `Sq²α = 0`, take `c = g*α`, `b = φ*(c ⌣ c)` so that
//! `δb = c ⌣ c`, and form the 5-cocycle
//!
//! `w = E₃(c) + b ⌣₁ b + b ⌣₂ δb + c ⌣ (c ⌣₁ c)`.
//!
//! `Ψ₂α` is the class of `w` modulo the image of `Sq²: H³ → H⁵`.

use serde::{Deserialize, Serialize};

use crate::at_model::ATModel;
use crate::complex::FilteredComplex;
use crate::coops::{self, CohomologyClass};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::simplex::Chain;

/// Face positions of the five four-factor terms of `E₃` on a 5-simplex.
type E3Terms = [[[usize; 3]; 4]; 5];

/// Which combinatorial `E₃` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum E3Table {
    /// Satisfies `δE₃(c) = (c⌣c) ⌣₂ (c⌣c) + (c⌣₁c) ⌣ (c⌣₁c)` on cocycles.
    #[default]
    Standard,
    /// Differs from `Standard` in the second factor of the second term; it
    /// does not satisfy the relation in general. Kept for comparison.
    Alternate,
}

const STANDARD: E3Terms = [
    [[0, 2, 3], [0, 1, 2], [3, 4, 5], [2, 3, 5]],
    [[0, 4, 5], [2, 3, 4], [0, 1, 2], [0, 1, 2]],
    [[0, 1, 5], [3, 4, 5], [1, 2, 3], [1, 2, 3]],
    [[0, 1, 2], [2, 4, 5], [2, 3, 4], [2, 3, 4]],
    [[0, 1, 2], [2, 3, 5], [3, 4, 5], [3, 4, 5]],
];

const ALTERNATE: E3Terms = [
    [[0, 2, 3], [0, 1, 2], [3, 4, 5], [2, 3, 5]],
    [[0, 4, 5], [3, 4, 5], [0, 1, 2], [0, 1, 2]],
    [[0, 1, 5], [3, 4, 5], [1, 2, 3], [1, 2, 3]],
    [[0, 1, 2], [2, 4, 5], [2, 3, 4], [2, 3, 4]],
    [[0, 1, 2], [2, 3, 5], [3, 4, 5], [3, 4, 5]],
];

impl E3Table {
    pub fn terms(self) -> &'static E3Terms {
        match self {
            E3Table::Standard => &STANDARD,
            E3Table::Alternate => &ALTERNATE,
        }
    }
}

/// `E₃(c)` with the [`E3Table::Standard`] table.
pub fn e3(k: &FilteredComplex, c: &Chain) -> Chain {
    e3_with(k, c, E3Table::Standard)
}

/// `E₃(c)` for a 2-cochain `c`: on each 5-simplex, the sum of the products
/// of `c` over the listed 2-faces.
pub fn e3_with(k: &FilteredComplex, c: &Chain, table: E3Table) -> Chain {
    let mut out = Chain::zero(5);
    if c.is_zero() || c.dim() != 2 {
        return out;
    }
    for s in k.of_dim(5) {
        let value = table.terms().iter().fold(false, |acc, term| {
            acc ^ term.iter().all(|face| c.contains(&s.select(face)))
        });
        if value {
            out.toggle(s.clone());
        }
    }
    out
}

/// The intermediate cochains of one `Ψ₂` evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi2Cochains {
    /// `c = g*α`
    pub c: Chain,
    /// `c ⌣ c`, which equals `δb`
    pub delta_b: Chain,
    /// `b = φ*(c ⌣ c)`
    pub b: Chain,
    /// `c ⌣₁ c`
    pub delta_eta: Chain,
    pub e3: Chain,
    pub w: Chain,
}

fn check_degree_two(model: &ATModel, alpha: &CohomologyClass) -> Result<()> {
    if alpha.dim != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: alpha.dim,
        });
    }
    let n = model.betti(2);
    if alpha.coords.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            found: alpha.coords.len(),
        });
    }
    let sq2 = coops::sq_matrix(model, 2, 2).mul_vec(&alpha.coords);
    if !sq2.is_zero() {
        let h4 = model.generators_of_dim(4);
        return Err(Error::NotInSq2Kernel {
            image: sq2.ones().map(|j| h4[j].clone()).collect(),
        });
    }
    Ok(())
}

/// All cochains of the construction for a representative cocycle `c` of a
/// class in the kernel of `Sq²`.
pub fn psi2_cochains(model: &ATModel, c: &Chain, table: E3Table) -> Result<Psi2Cochains> {
    let k = model.complex();
    let delta_b = coops::cup(k, c, c);
    let b = coops::phi_star(model, &delta_b);
    let db = k.coboundary(&b);
    if db != delta_b {
        return Err(Error::Internal(format!(
            "δφ*(c⌣c) = {db} differs from c⌣c = {delta_b}"
        )));
    }
    let delta_eta = coops::cup_n(k, c, c, 1);
    let e3 = e3_with(k, c, table);
    let mut w = e3.clone();
    w += &coops::cup_n(k, &b, &b, 1);
    w += &coops::cup_n(k, &b, &delta_b, 2);
    w += &coops::cup(k, c, &delta_eta);
    let dw = k.coboundary(&w);
    if !dw.is_zero() {
        return Err(Error::NotACocycle { coboundary: dw });
    }
    Ok(Psi2Cochains {
        c: c.clone(),
        delta_b,
        b,
        delta_eta,
        e3,
        w,
    })
}

/// The 5-cocycle `w` for `α ∈ ker Sq²`, using `c = g*α`.
pub fn psi2_cocycle(model: &ATModel, alpha: &CohomologyClass) -> Result<Chain> {
    psi2_cocycle_with(model, alpha, E3Table::Standard)
}

pub fn psi2_cocycle_with(
    model: &ATModel,
    alpha: &CohomologyClass,
    table: E3Table,
) -> Result<Chain> {
    check_degree_two(model, alpha)?;
    let c = coops::g_star(model, alpha)?;
    Ok(psi2_cochains(model, &c, table)?.w)
}

/// Outcome of `Ψ₂` on one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi2Result {
    pub input: CohomologyClass,
    pub w_cochain: Chain,
    pub w_class: CohomologyClass,
    /// Basis of `Sq² H³` inside `H⁵`.
    pub image_basis: Vec<CohomologyClass>,
    /// `w_class` reduced modulo the image.
    pub coset_rep: GF2Vector,
    pub is_zero: bool,
}

pub fn psi2(model: &ATModel, alpha: &CohomologyClass) -> Result<Psi2Result> {
    psi2_with(model, alpha, E3Table::Standard)
}

pub fn psi2_with(model: &ATModel, alpha: &CohomologyClass, table: E3Table) -> Result<Psi2Result> {
    let w = psi2_cocycle_with(model, alpha, table)?;
    let w_class = coops::f_star(model, &w)?;
    let image = coops::sq_matrix(model, 2, 3);
    let coset_rep = image.reduce_mod_image(&w_class.coords)?;
    Ok(Psi2Result {
        input: alpha.clone(),
        w_cochain: w,
        w_class,
        image_basis: coops::sq_image_basis(model, 2, 3),
        is_zero: coset_rep.is_zero(),
        coset_rep,
    })
}

/// `Ψ_q`; only `q = 2` has an explicit `E_{3q−3}`.
pub fn psi(model: &ATModel, q: usize, alpha: &CohomologyClass) -> Result<Psi2Result> {
    if q != 2 {
        return Err(Error::Unsupported(format!(
            "Ψ_{q}: no combinatorial E_{} is available",
            3 * q - 3
        )));
    }
    psi2(model, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simplex::Simplex;

    #[test]
    fn e3_vanishes_trivially() {
        let k = fixtures::load("simplex6").unwrap();
        assert!(e3(&k, &Chain::zero(2)).is_zero());
        let sphere = fixtures::load("sphere").unwrap();
        let c: Chain = sphere.of_dim(2).cloned().collect();
        assert!(e3(&sphere, &c).is_zero());
    }

    #[test]
    fn tables_differ_in_one_factor() {
        let diff: usize = STANDARD
            .iter()
            .zip(&ALTERNATE)
            .flat_map(|(a, b)| a.iter().zip(b))
            .filter(|(x, y)| x != y)
            .count();
        assert_eq!(diff, 1);
    }

    #[test]
    fn example_cocycle_under_both_tables() {
        let k = fixtures::document("adem_example")
            .unwrap()
            .to_complex(crate::io::InputOrder::Maximal)
            .unwrap();
        let m = ATModel::new(k);
        let gens = [
            Simplex::new([1, 2, 3]).unwrap(),
            Simplex::new([1, 5, 6]).unwrap(),
        ];
        let a = CohomologyClass::from_generators(&m, 2, &gens).unwrap();
        let c = coops::g_star(&m, &a).unwrap();
        assert!(e3(m.complex(), &c).is_zero());
        assert_eq!(
            e3_with(m.complex(), &c, E3Table::Alternate),
            Chain::from_lists(&[&[1, 2, 3, 4, 5, 6]])
        );
    }

    #[test]
    fn zero_class_gives_zero() {
        let m = ATModel::new(fixtures::load("adem_example").unwrap());
        let r = psi2(&m, &CohomologyClass::zero(&m, 2)).unwrap();
        assert!(r.w_cochain.is_zero());
        assert!(r.is_zero);
    }

    #[test]
    fn sphere_has_zero_codomain() {
        let m = ATModel::new(fixtures::load("sphere").unwrap());
        let a = CohomologyClass::from_generators(&m, 2, &m.generators_of_dim(2)).unwrap();
        let r = psi2(&m, &a).unwrap();
        assert!(r.is_zero);
        assert_eq!(r.w_class.coords.len(), 0);
    }

    #[test]
    fn wrong_degree_and_q() {
        let m = ATModel::new(fixtures::load("torus").unwrap());
        let a = CohomologyClass::zero(&m, 1);
        assert!(matches!(psi2(&m, &a), Err(Error::WrongDegree { .. })));
        assert!(matches!(psi(&m, 3, &a), Err(Error::Unsupported(_))));
    }
}
