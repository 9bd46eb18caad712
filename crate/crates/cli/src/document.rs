//! JSON documents describing an algebra by basis labels and brackets.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use lie_tame::lie::{LieAlgebra, StructureConstants};
use lie_tame::linalg::{parse_rational, zero_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra, DocumentError> {
    let doc: AlgebraDocument =
        serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))?;
    document_to_algebra(&doc)
}

pub fn document_to_algebra(doc: &AlgebraDocument) -> Result<LieAlgebra, DocumentError> {
    let n = doc.basis.len();
    if doc.dim != n {
        return Err(DocumentError::Parse(format!(
            "dim is {} but {n} basis labels are given",
            doc.dim
        )));
    }
    let mut index = HashMap::new();
    for (k, label) in doc.basis.iter().enumerate() {
        if index.insert(label.as_str(), k).is_some() {
            return Err(DocumentError::Parse(format!("duplicate basis label {label:?}")));
        }
    }
    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| DocumentError::Parse(format!("undeclared basis label {label:?}")))
    };

    // (i, j) with i < j → [e_i, e_j]
    let mut table: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
    for entry in &doc.brackets {
        let (i, j) = (lookup(&entry.left)?, lookup(&entry.right)?);
        let mut v = zero_vec(n);
        for term in &entry.result {
            let k = lookup(&term.basis)?;
            let c = parse_rational(&term.coeff).map_err(|e| DocumentError::Parse(e.to_string()))?;
            v[k] += c;
        }
        if i == j {
            if v.iter().any(|x| *x != Rational::default()) {
                return Err(DocumentError::Validation(format!(
                    "[{0}, {0}] must vanish by antisymmetry",
                    entry.left
                )));
            }
            continue;
        }
        let (key, v) = if i < j {
            ((i, j), v)
        } else {
            ((j, i), v.into_iter().map(|x| -x).collect())
        };
        if let Some(prev) = table.get(&key) {
            if *prev != v {
                return Err(DocumentError::Validation(format!(
                    "[{}, {}] given twice with inconsistent values",
                    entry.left, entry.right
                )));
            }
        }
        table.insert(key, v);
    }
    let mut sc = StructureConstants::new(doc.basis.clone());
    for ((i, j), v) in table {
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| *x != Rational::default())
            .collect();
        sc.set(i, j, coeffs);
    }
    LieAlgebra::validate(sc).map_err(|e| DocumentError::Validation(e.to_string()))
}

pub fn algebra_to_document(name: &str, l: &LieAlgebra) -> AlgebraDocument {
    let names = l.basis_names();
    let brackets = l
        .structure_constants()
        .table
        .iter()
        .filter(|(_, _, c)| !c.is_empty())
        .map(|(i, j, c)| BracketEntry {
            left: names[*i].clone(),
            right: names[*j].clone(),
            result: c
                .iter()
                .map(|(k, x)| Term {
                    basis: names[*k].clone(),
                    coeff: x.to_string(),
                })
                .collect(),
        })
        .collect();
    AlgebraDocument {
        name: name.to_string(),
        dim: l.dim(),
        basis: names.to_vec(),
        brackets,
    }
}

pub fn emit_algebra(name: &str, l: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&algebra_to_document(name, l)).expect("document serializes")
}
