//! Serializable reports produced by the command-line tool.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adem::{E3Table, Psi2Result};
use crate::at_model::ATModel;
use crate::complex::FilteredComplex;
use crate::contraction::{ChainContraction, Violation};
use crate::coops::{self, CohomologyClass};
use crate::io::ModelDump;
use crate::simplex::{Simplex, Vertex};

type Lists = Vec<Vec<Vertex>>;

fn lists(simplices: &[Simplex]) -> Lists {
    simplices.iter().map(|s| s.vertices().to_vec()).collect()
}

fn class_lists(model: &ATModel, class: &CohomologyClass) -> Lists {
    lists(&class.support(model))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub generator: Vec<Vertex>,
    pub cycle: Lists,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEntry {
    pub alpha: Vec<Vertex>,
    pub beta: Vec<Vertex>,
    pub gamma: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqReport {
    pub i: usize,
    pub q: usize,
    /// Rows index `H^{q+i}` generators, columns `H^q` generators.
    pub matrix: Vec<Vec<u8>>,
    pub kernel: Vec<Lists>,
    pub image: Vec<Lists>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psi2Report {
    pub class: Lists,
    pub e3: E3Table,
    pub w_support: Lists,
    pub w_class: Lists,
    pub image_basis: Vec<Lists>,
    pub coset: Vec<u8>,
    pub is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationEntry {
    pub identity: String,
    pub cell: Vec<Vertex>,
    pub detail: String,
}

impl From<&Violation> for ViolationEntry {
    fn from(v: &Violation) -> Self {
        ViolationEntry {
            identity: v.identity.label().to_string(),
            cell: v.cell.vertices().to_vec(),
            detail: v.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub violations: Vec<ViolationEntry>,
    pub betti_oracle: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub maximal_simplices: Lists,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub vertices: usize,
    pub failures: Vec<FuzzFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub simplices_before: usize,
    pub simplices_after: usize,
    pub maximal_after: Lists,
    pub betti_after: Vec<usize>,
    pub verified: bool,
}

/// Everything a CLI run can print; absent sections are omitted from JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub simplices: usize,
    #[serde(default)]
    pub betti: Vec<usize>,
    #[serde(default)]
    pub generators: Lists,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<CycleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Vec<RingEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sq: Option<SqReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi2: Option<Psi2Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<FuzzReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ModelDump>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionReport>,
}

impl Report {
    /// Betti numbers and generators of `model`.
    pub fn new(name: Option<String>, model: &ATModel) -> Self {
        Report {
            name,
            simplices: model.complex().len(),
            betti: model.betti_numbers(),
            generators: lists(&model.generators()),
            ..Report::default()
        }
    }

    pub fn with_cycles(mut self, model: &ATModel) -> Self {
        self.cycles = model
            .generators()
            .iter()
            .map(|g| CycleEntry {
                generator: g.vertices().to_vec(),
                cycle: model.g(g).to_lists(),
            })
            .collect();
        self
    }

    /// Keeps only the nonzero structure constants.
    pub fn with_ring(mut self, model: &ATModel) -> Self {
        self.ring = Some(
            coops::cohomology_ring(model)
                .into_iter()
                .filter(|sc| sc.value)
                .map(|sc| RingEntry {
                    alpha: sc.alpha.vertices().to_vec(),
                    beta: sc.beta.vertices().to_vec(),
                    gamma: sc.gamma.vertices().to_vec(),
                })
                .collect(),
        );
        self
    }

    pub fn with_sq(mut self, model: &ATModel, i: usize, q: usize) -> Self {
        let classes = |v: Vec<CohomologyClass>| v.iter().map(|c| class_lists(model, c)).collect();
        self.sq = Some(SqReport {
            i,
            q,
            matrix: coops::sq_matrix(model, i, q).to_rows(),
            kernel: classes(coops::sq_kernel_basis(model, i, q)),
            image: classes(coops::sq_image_basis(model, i, q)),
        });
        self
    }

    pub fn with_psi2(mut self, model: &ATModel, r: &Psi2Result, e3: E3Table) -> Self {
        self.psi2 = Some(Psi2Report {
            class: class_lists(model, &r.input),
            e3,
            w_support: r.w_cochain.to_lists(),
            w_class: class_lists(model, &r.w_class),
            image_basis: r
                .image_basis
                .iter()
                .map(|c| class_lists(model, c))
                .collect(),
            coset: r.coset_rep.to_bits().into_iter().map(u8::from).collect(),
            is_zero: r.is_zero,
        });
        self
    }

    /// Runs the identity verifier and the rank oracle.
    pub fn with_verification(mut self, model: &ATModel) -> Self {
        let violations: Vec<ViolationEntry> =
            model.verify_contraction().iter().map(Into::into).collect();
        let betti_oracle = model.complex().betti_by_rank();
        let passed = violations.is_empty() && betti_oracle == model.betti_numbers();
        self.verification = Some(VerificationReport {
            violations,
            betti_oracle,
            passed,
        });
        self
    }

    pub fn with_contraction(mut self, model: &ATModel) -> Self {
        self.contraction = Some(ModelDump::from_model(model));
        self
    }

    pub fn with_reduction(mut self, before: &FilteredComplex, after: &FilteredComplex) -> Self {
        self.reduction = Some(ReductionReport {
            simplices_before: before.len(),
            simplices_after: after.len(),
            maximal_after: lists(&after.maximal_simplices()),
            betti_after: ATModel::new(after.clone()).betti_numbers(),
            verified: true,
        });
        self
    }

    /// Key-sorted, pretty-printed JSON.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }
}

fn fmt_simplex(v: &[Vertex]) -> String {
    let inner: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("<{}>", inner.join(","))
}

fn fmt_sum(l: &[Vec<Vertex>]) -> String {
    if l.is_empty() {
        return "0".into();
    }
    l.iter()
        .map(|v| fmt_simplex(v))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fmt_dual_sum(l: &[Vec<Vertex>]) -> String {
    if l.is_empty() {
        return "0".into();
    }
    l.iter()
        .map(|v| format!("{}*", fmt_simplex(v)))
        .collect::<Vec<_>>()
        .join(" + ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "complex: {name}")?;
        }
        if self.simplices > 0 {
            writeln!(f, "simplices: {}", self.simplices)?;
            writeln!(f, "betti: {:?}", self.betti)?;
            let gens: Vec<String> = self.generators.iter().map(|g| fmt_simplex(g)).collect();
            writeln!(f, "generators: {}", gens.join(" "))?;
        }
        if !self.cycles.is_empty() {
            writeln!(f, "representative cycles:")?;
            for c in &self.cycles {
                writeln!(
                    f,
                    "  g{} = {}",
                    fmt_simplex(&c.generator),
                    fmt_sum(&c.cycle)
                )?;
            }
        }
        if let Some(ring) = &self.ring {
            writeln!(f, "nonzero products ({}):", ring.len())?;
            for e in ring {
                writeln!(
                    f,
                    "  {}* ⌣ {}* ∋ {}*",
                    fmt_simplex(&e.alpha),
                    fmt_simplex(&e.beta),
                    fmt_simplex(&e.gamma)
                )?;
            }
        }
        if let Some(sq) = &self.sq {
            writeln!(f, "Sq^{}: H^{} -> H^{}", sq.i, sq.q, sq.q + sq.i)?;
            for row in &sq.matrix {
                let r: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  [{}]", r.join(" "))?;
            }
            writeln!(f, "kernel basis ({}):", sq.kernel.len())?;
            for k in &sq.kernel {
                writeln!(f, "  {}", fmt_dual_sum(k))?;
            }
            writeln!(f, "image basis ({}):", sq.image.len())?;
            for k in &sq.image {
                writeln!(f, "  {}", fmt_dual_sum(k))?;
            }
        }
        if let Some(p) = &self.psi2 {
            writeln!(
                f,
                "Psi2 of {} (E3 table: {:?})",
                fmt_dual_sum(&p.class),
                p.e3
            )?;
            writeln!(f, "  w = {}", fmt_dual_sum(&p.w_support))?;
            writeln!(f, "  [w] = {}", fmt_dual_sum(&p.w_class))?;
            writeln!(
                f,
                "  image of Sq2 in H5: {} element(s)",
                p.image_basis.len()
            )?;
            writeln!(f, "  coset representative: {:?}", p.coset)?;
            writeln!(f, "  zero: {}", p.is_zero)?;
        }
        if let Some(v) = &self.verification {
            writeln!(f, "rank oracle betti: {:?}", v.betti_oracle)?;
            for x in &v.violations {
                writeln!(
                    f,
                    "  violation {} at {}: {}",
                    x.identity,
                    fmt_simplex(&x.cell),
                    x.detail
                )?;
            }
            writeln!(
                f,
                "verification: {}",
                if v.passed { "passed" } else { "FAILED" }
            )?;
        }
        if let Some(z) = &self.fuzz {
            writeln!(
                f,
                "random complexes: {} trials on {} vertices (seed {}), {} failure(s)",
                z.trials,
                z.vertices,
                z.seed,
                z.failures.len()
            )?;
            for x in &z.failures {
                writeln!(f, "  trial {}: {}", x.trial, x.reason)?;
            }
        }
        if let Some(c) = &self.contraction {
            writeln!(f, "f (nonzero, non-generator entries):")?;
            for e in &c.f {
                if c.generators.contains(&e.simplex) {
                    continue;
                }
                writeln!(f, "  f{} = {}", fmt_simplex(&e.simplex), fmt_sum(&e.image))?;
            }
            writeln!(f, "phi (nonzero entries):")?;
            for e in &c.phi {
                writeln!(
                    f,
                    "  phi{} = {}",
                    fmt_simplex(&e.simplex),
                    fmt_sum(&e.image)
                )?;
            }
        }
        if let Some(r) = &self.reduction {
            writeln!(
                f,
                "collapse thinning: {} -> {} simplices, betti after {:?}, contraction verified: {}",
                r.simplices_before, r.simplices_after, r.betti_after, r.verified
            )?;
            writeln!(f, "maximal simplices after: {}", fmt_sum(&r.maximal_after))?;
        }
        Ok(())
    }
}
