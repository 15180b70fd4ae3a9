//! Complex documents (JSON or plain text) and AT-model dumps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::at_model::ATModel;
use crate::complex::{FilteredComplex, OrderPolicy};
use crate::error::{Error, Result};
use crate::simplex::{Chain, Simplex, Vertex};

/// How a document's simplices are ordered into a filtration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputOrder {
    /// Dimension, then lexicographic.
    #[default]
    Lex,
    /// The document's `filtration` if present, else the maximal simplices in
    /// the order listed, each followed by its new faces.
    Input,
    /// Maximal simplices in listed order, ignoring any `filtration`.
    Maximal,
}

/// A complex as written on disk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub maximal_simplices: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<Vertex>>>,
}

impl ComplexDocument {
    pub fn from_maximal(name: &str, maximal: &[Simplex]) -> Self {
        ComplexDocument {
            name: Some(name.to_string()),
            maximal_simplices: maximal.iter().map(|s| s.vertices().to_vec()).collect(),
            filtration: None,
        }
    }

    /// The document describing exactly `k` with its filtration.
    pub fn from_complex(name: Option<String>, k: &FilteredComplex) -> Self {
        ComplexDocument {
            name,
            maximal_simplices: k
                .maximal_simplices()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
            filtration: Some(
                k.simplices()
                    .iter()
                    .map(|s| s.vertices().to_vec())
                    .collect(),
            ),
        }
    }

    pub fn maximal(&self) -> Result<Vec<Simplex>> {
        self.maximal_simplices
            .iter()
            .map(|v| Simplex::new(v.iter().copied()))
            .collect()
    }

    pub fn to_complex(&self, order: InputOrder) -> Result<FilteredComplex> {
        let maximal = self.maximal()?;
        let policy = match (order, &self.filtration) {
            (InputOrder::Lex, _) => OrderPolicy::DimensionLex,
            (InputOrder::Input, Some(f)) => OrderPolicy::Supplied(
                f.iter()
                    .map(|v| Simplex::new(v.iter().copied()))
                    .collect::<Result<_>>()?,
            ),
            (InputOrder::Input, None) | (InputOrder::Maximal, _) => OrderPolicy::MaximalOrder,
        };
        FilteredComplex::close(&maximal, policy)
    }

    /// Parses JSON if the text starts with `{`, the line format otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// One maximal simplex per line as whitespace-separated labels; blank
    /// lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut maximal = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            let mut simplex = Vec::new();
            let mut offset = 0;
            for token in content.split_whitespace() {
                let column = content[offset..].find(token).map_or(0, |p| p + offset) + 1;
                offset = column - 1 + token.len();
                let v: Vertex = token.parse().map_err(|_| Error::Parse {
                    line: ln + 1,
                    column,
                    message: format!("expected a vertex label, found {token:?}"),
                })?;
                simplex.push(v);
            }
            if !simplex.is_empty() {
                maximal.push(simplex);
            }
        }
        Ok(ComplexDocument {
            name: None,
            maximal_simplices: maximal,
            filtration: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// One `simplex ↦ chain` entry of a dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub simplex: Vec<Vertex>,
    pub image: Vec<Vec<Vertex>>,
}

/// Serialized AT-model; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDump {
    pub filtration: Vec<Vec<Vertex>>,
    pub generators: Vec<Vec<Vertex>>,
    pub f: Vec<MapEntry>,
    pub phi: Vec<MapEntry>,
}

impl ModelDump {
    pub fn from_model(model: &ATModel) -> Self {
        let k = model.complex();
        let entries = |image: &dyn Fn(&Simplex) -> Chain| {
            k.simplices()
                .iter()
                .filter_map(|s| {
                    let c = image(s);
                    (!c.is_zero()).then(|| MapEntry {
                        simplex: s.vertices().to_vec(),
                        image: c.to_lists(),
                    })
                })
                .collect()
        };
        ModelDump {
            filtration: k
                .simplices()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
            generators: model
                .generators()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
            f: entries(&|s| model.f_of(s)),
            phi: entries(&|s| model.phi_of(s)),
        }
    }

    /// Rebuilds the model without re-running the algorithm.
    pub fn to_model(&self) -> Result<ATModel> {
        let simplex = |v: &Vec<Vertex>| Simplex::new(v.iter().copied());
        let k = FilteredComplex::from_filtration(
            self.filtration.iter().map(simplex).collect::<Result<_>>()?,
        )?;
        let gens = self
            .generators
            .iter()
            .map(simplex)
            .collect::<Result<Vec<_>>>()?;
        let table = |entries: &[MapEntry], shift: usize| -> Result<BTreeMap<Simplex, Chain>> {
            entries
                .iter()
                .map(|e| {
                    let s = simplex(&e.simplex)?;
                    let image = Chain::new(
                        s.dim() + shift,
                        e.image.iter().map(simplex).collect::<Result<Vec<_>>>()?,
                    )?;
                    Ok((s, image))
                })
                .collect()
        };
        ATModel::from_parts(k, &gens, &table(&self.f, 0)?, &table(&self.phi, 1)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let d = ComplexDocument::parse("1 2\n# comment\n\n2 3  # trailing\n").unwrap();
        assert_eq!(d.maximal_simplices, vec![vec![1, 2], vec![2, 3]]);
        let k = d.to_complex(InputOrder::Lex).unwrap();
        assert_eq!(k.len(), 5);
    }

    #[test]
    fn text_errors_carry_position() {
        match ComplexDocument::parse("1 2\n3  x4 5\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_errors_carry_position() {
        match ComplexDocument::parse("{\"maximal_simplices\": [[1,2],\n [3,]]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn input_order_uses_filtration() {
        let d = ComplexDocument::parse(
            r#"{"maximal_simplices": [[1,2]], "filtration": [[2],[1],[1,2]]}"#,
        )
        .unwrap();
        let k = d.to_complex(InputOrder::Input).unwrap();
        assert_eq!(k.simplex(0), &Simplex::vertex(2));
        let bad = ComplexDocument::parse(
            r#"{"maximal_simplices": [[1,2]], "filtration": [[1,2],[1],[2]]}"#,
        )
        .unwrap();
        assert!(matches!(
            bad.to_complex(InputOrder::Input),
            Err(Error::NotPrefixClosed { .. })
        ));
    }

    #[test]
    fn dump_round_trip() {
        let d = ComplexDocument::parse("1 2\n1 3\n2 3\n").unwrap();
        let m = ATModel::new(d.to_complex(InputOrder::Lex).unwrap());
        let dump = ModelDump::from_model(&m);
        let text = serde_json::to_string(&dump).unwrap();
        let back = ModelDump::parse(&text).unwrap().to_model().unwrap();
        assert_eq!(ModelDump::from_model(&back), dump);
        assert!(back.verify_contraction().is_empty());
    }
}
