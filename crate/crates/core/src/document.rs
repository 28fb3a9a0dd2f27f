//! JSON documents for algebras and chains. Exact values travel as `"num/den"` strings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ainfty::{AInfinityStructure, ClassIndex};
use crate::basis::{BasisEntry, GradedBasis};
use crate::chain::ChainElement;
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::field::{format_rational, FieldValue};
use crate::novikov::{Energy, NovikovScalar};
use crate::pairing::CyclicPairing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub rat: String,
    pub sqrt2: String,
}

impl FieldDoc {
    pub fn from_value(v: &FieldValue) -> Self {
        FieldDoc {
            rat: format_rational(&v.rat),
            sqrt2: format_rational(&v.sqrt2),
        }
    }

    pub fn value(&self) -> Result<FieldValue> {
        FieldValue::parse_parts(&self.rat, &self.sqrt2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingEntryDoc {
    pub left: String,
    pub right: String,
    pub value: FieldDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputTermDoc {
    pub basis: String,
    pub coeff: FieldDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationDoc {
    pub k: usize,
    pub energy: String,
    pub maslov: i32,
    pub inputs: Vec<String>,
    pub output: Vec<OutputTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub energy: String,
    pub maslov: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub unit: Option<String>,
    pub e_max: String,
    /// Arity up to which the operations are complete; defaults to the largest `k` present.
    #[serde(default)]
    pub max_arity: Option<usize>,
    /// Declared classes; defaults to those appearing in `operations`.
    #[serde(default)]
    pub classes: Option<Vec<ClassDoc>>,
    #[serde(default)]
    pub pairing: Vec<PairingEntryDoc>,
    pub operations: Vec<OperationDoc>,
}

fn energy_text(e: &Energy) -> String {
    format_rational(&e.0)
}

impl AlgebraDocument {
    pub fn from_structure(s: &AInfinityStructure, p: Option<&CyclicPairing>) -> Self {
        let b = s.basis();
        let operations = s
            .sorted_constants()
            .into_iter()
            .map(|(class, word, v)| OperationDoc {
                k: word.len(),
                energy: energy_text(&class.energy),
                maslov: class.maslov,
                inputs: word.iter().map(|&l| b.name(l).to_string()).collect(),
                output: v
                    .iter()
                    .map(|(l, c)| OutputTermDoc {
                        basis: b.name(l).to_string(),
                        coeff: FieldDoc::from_value(c),
                    })
                    .collect(),
            })
            .collect();
        let pairing = p.map_or_else(Vec::new, |p| {
            let mut v: Vec<_> = p
                .entries()
                .map(|((x, y), c)| PairingEntryDoc {
                    left: b.name(*x).to_string(),
                    right: b.name(*y).to_string(),
                    value: FieldDoc::from_value(c),
                })
                .collect();
            v.sort_by(|a, c| (&a.left, &a.right).cmp(&(&c.left, &c.right)));
            v
        });
        AlgebraDocument {
            basis: b.entries().to_vec(),
            unit: s.unit().map(|u| b.name(u).to_string()),
            e_max: energy_text(s.cap()),
            max_arity: Some(s.max_arity()),
            classes: Some(
                s.classes()
                    .iter()
                    .map(|c| ClassDoc {
                        energy: energy_text(&c.energy),
                        maslov: c.maslov,
                    })
                    .collect(),
            ),
            pairing,
            operations,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn basis(&self) -> Result<GradedBasis> {
        GradedBasis::new(self.basis.clone())
    }

    /// The structure and, when pairing entries are present, the pairing.
    pub fn build(&self) -> Result<(AInfinityStructure, Option<CyclicPairing>)> {
        let b = self.basis()?;
        let unit = self.unit.as_deref().map(|u| b.letter(u)).transpose()?;
        let cap = Energy::parse(&self.e_max)?;
        let max_arity = self
            .max_arity
            .unwrap_or_else(|| self.operations.iter().map(|o| o.k).max().unwrap_or(2));
        let mut s = AInfinityStructure::new(b.clone(), unit, cap, max_arity);
        let mut classes = BTreeSet::new();
        if let Some(cs) = &self.classes {
            for c in cs {
                classes.insert(ClassIndex::new(Energy::parse(&c.energy)?, c.maslov));
            }
        }
        for (i, op) in self.operations.iter().enumerate() {
            let at = |e: Error| Error::Input(format!("operations[{i}]: {e}"));
            if op.inputs.len() != op.k {
                return Err(at(Error::Input(format!(
                    "k = {} but {} inputs",
                    op.k,
                    op.inputs.len()
                ))));
            }
            let class = ClassIndex::new(Energy::parse(&op.energy).map_err(at)?, op.maslov);
            let word = b.parse_word(&op.inputs).map_err(at)?;
            let mut v = s.op_vector(&class, &word).unwrap_or_default();
            for t in &op.output {
                v.add_term(
                    b.letter(&t.basis).map_err(at)?,
                    t.coeff.value().map_err(at)?,
                );
            }
            s.set(&class, &word, v).map_err(at)?;
            classes.insert(class);
        }
        for c in classes {
            s.declare_class(c)?;
        }
        let pairing = if self.pairing.is_empty() {
            None
        } else {
            let mut entries = Vec::new();
            for (i, e) in self.pairing.iter().enumerate() {
                let at = |err: Error| Error::Input(format!("pairing[{i}]: {err}"));
                entries.push((
                    (
                        b.letter(&e.left).map_err(at)?,
                        b.letter(&e.right).map_err(at)?,
                    ),
                    e.value.value().map_err(at)?,
                ));
            }
            Some(CyclicPairing::new(b, entries)?)
        };
        Ok((s, pairing))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCoeffDoc {
    pub rat: String,
    pub sqrt2: String,
    pub energy: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWordDoc {
    pub coeff: ChainCoeffDoc,
    pub letters: Vec<String>,
}

/// A Hochschild chain; position 0 of each word is the module slot. Words with
/// several energies appear once per energy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub words: Vec<ChainWordDoc>,
}

impl ChainDocument {
    pub fn from_chain(c: &ChainElement, basis: &GradedBasis) -> Self {
        let mut words = Vec::new();
        for (letters, coeff) in c.iter() {
            for (e, v) in coeff.terms() {
                words.push(ChainWordDoc {
                    coeff: ChainCoeffDoc {
                        rat: format_rational(&v.rat),
                        sqrt2: format_rational(&v.sqrt2),
                        energy: energy_text(e),
                    },
                    letters: letters.iter().map(|&l| basis.name(l).to_string()).collect(),
                });
            }
        }
        ChainDocument { words }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("chain document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn build(&self, basis: &GradedBasis, cap: &Energy) -> Result<ChainElement> {
        let mut c = ChainElement::zero(cap);
        for (i, w) in self.words.iter().enumerate() {
            let at = |e: Error| Error::Input(format!("words[{i}]: {e}"));
            if w.letters.is_empty() {
                return Err(at(Error::Input("empty word".into())));
            }
            let letters = basis.parse_word(&w.letters).map_err(at)?;
            let value = FieldValue::parse_parts(&w.coeff.rat, &w.coeff.sqrt2).map_err(at)?;
            let energy = Energy::parse(&w.coeff.energy).map_err(at)?;
            c.add_word(letters, NovikovScalar::monomial(value, energy, cap));
        }
        Ok(c)
    }
}

/// Shorthand used by tests and the CLI.
pub fn vector_doc(v: &Vector, basis: &GradedBasis) -> Vec<OutputTermDoc> {
    v.iter()
        .map(|(l, c)| OutputTermDoc {
            basis: basis.name(l).to_string(),
            coeff: FieldDoc::from_value(c),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordModel;

    #[test]
    fn algebra_round_trip() {
        let m = CliffordModel::build().unwrap();
        let doc = AlgebraDocument::from_structure(&m.structure, Some(&m.pairing));
        let text = doc.to_json();
        let back = AlgebraDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let (s, p) = back.build().unwrap();
        assert_eq!(s.sorted_constants(), m.structure.sorted_constants());
        assert_eq!(s.classes(), m.structure.classes());
        assert_eq!(
            AlgebraDocument::from_structure(&s, p.as_ref()).to_json(),
            text
        );
    }

    #[test]
    fn chain_round_trip() {
        let m = CliffordModel::build().unwrap();
        let alpha = m.build_alpha();
        let doc = ChainDocument::from_chain(&alpha, m.basis());
        let back = ChainDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.build(m.basis(), m.structure.cap()).unwrap(), alpha);
    }

    #[test]
    fn malformed_input_is_located() {
        let err = AlgebraDocument::from_json("{\"basis\": [").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        let m = CliffordModel::build().unwrap();
        let mut doc = AlgebraDocument::from_structure(&m.structure, Some(&m.pairing));
        doc.operations[3].inputs[0] = "nope".into();
        let err = doc.build().unwrap_err().to_string();
        assert!(err.contains("operations[3]"), "{err}");
    }
}
