//! JSON setup files. Rationals are strings `"p"` or `"p/q"`; vectors are
//! maps from basis names to coefficients.
//!
//! ```json
//! {
//!   "name": "so3_sphere",
//!   "basis": ["X", "Y", "Z"],
//!   "brackets": [{"left": "X", "right": "Y", "value": {"Z": "1"}}],
//!   "subspaces": {"h": {"names": ["Z"], "vectors": [{"Z": "1"}]}},
//!   "chi": ["0"]
//! }
//! ```
//!
//! `m` is optional (a complement is then chosen by pivoting), `chi`
//! defaults to zero, and subspaces other than `h` and `m` are kept as
//! informational labels.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{check_structure, make_setup, CharacterDiff, CosetSetup, LieAlgebra, Subspace};
use crate::linalg::{parse_rational, unit_vec, zero_vec, Matrix, Rational};
use crate::presets;

pub type VectorEntry = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupFile {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub reference: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub subspaces: BTreeMap<String, SubspaceBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<String>>,
    #[serde(default)]
    pub component_reps: Vec<RepEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: VectorEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceBlock {
    #[serde(default)]
    pub names: Vec<String>,
    pub vectors: Vec<VectorEntry>,
}

/// `matrix[i][j]` is the `i`-th coordinate of the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepEntry {
    #[serde(default)]
    pub label: String,
    pub matrix: Vec<Vec<String>>,
}

/// A validated setup with the file's metadata.
#[derive(Debug)]
pub struct LoadedSetup {
    pub name: String,
    pub description: String,
    pub reference: String,
    pub rep_labels: Vec<String>,
    /// informational subspaces (everything except `h` and `m`)
    pub labels: Vec<(String, Subspace)>,
    pub setup: CosetSetup,
}

pub fn parse_setup(text: &str) -> Result<SetupFile> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn rational(s: &str, at: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Format(format!("{at}: `{s}` is not a rational p/q")))
}

impl SetupFile {
    fn index(&self, name: &str, at: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Format(format!("{at}: unknown basis name `{name}`")))
    }

    fn vector(&self, entry: &VectorEntry, at: &str) -> Result<Vec<Rational>> {
        let mut v = zero_vec(self.basis.len());
        for (name, c) in entry {
            let i = self.index(name, at)?;
            v[i] = rational(c, at)?;
        }
        Ok(v)
    }

    fn algebra(&self) -> Result<LieAlgebra> {
        let brackets = self
            .brackets
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let at = format!("brackets[{k}]");
                Ok(((self.index(&b.left, &at)?, self.index(&b.right, &at)?), self.vector(&b.value, &at)?))
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::new(self.basis.clone(), brackets)
    }

    fn subspace(&self, label: &str, block: &SubspaceBlock) -> Result<Subspace> {
        let n = self.basis.len();
        let at = format!("subspaces.{label}");
        if !block.names.is_empty() && block.names.len() != block.vectors.len() {
            return Err(Error::Format(format!(
                "{at}: {} names for {} vectors",
                block.names.len(),
                block.vectors.len()
            )));
        }
        let vectors = block.vectors.iter().map(|v| self.vector(v, &at)).collect::<Result<Vec<_>>>()?;
        let names: Vec<Option<String>> = if block.names.is_empty() {
            vec![None; vectors.len()]
        } else {
            block.names.iter().cloned().map(Some).collect()
        };
        // a subspace name that is also a basis name must denote that vector
        for (name, v) in names.iter().zip(&vectors) {
            if let Some(i) = name.as_deref().and_then(|nm| self.basis.iter().position(|b| b == nm)) {
                if *v != unit_vec(n, i) {
                    return Err(Error::Format(format!("{at}: name `{}` clashes with a basis vector", self.basis[i])));
                }
            }
        }
        Subspace::with_names(n, vectors, names, label)
    }

    fn rep(&self, k: usize, rep: &RepEntry) -> Result<Matrix> {
        let n = self.basis.len();
        let at = format!("component_reps[{k}]");
        if rep.matrix.len() != n || rep.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Format(format!("{at}: matrix must be {n}x{n}")));
        }
        rep.matrix.iter().map(|row| row.iter().map(|c| rational(c, &at)).collect()).collect()
    }

    /// Validates the file: Jacobi identity, `h` a subalgebra, `χ` vanishing
    /// on `[h, h]`, complementarity and the component representatives.
    pub fn build(&self) -> Result<LoadedSetup> {
        let alg = self.algebra()?;
        let report = check_structure(&alg);
        if let Some(v) = report.violations.first() {
            let (a, b, c) = &v.names;
            return Err(Error::Jacobi(format!("({a}, {b}, {c}), residual [{}]", v.residual.join(", "))));
        }
        let h_block = self.subspaces.get("h").ok_or_else(|| Error::Format("subspaces.h is required".into()))?;
        let h = self.subspace("h", h_block)?;
        let m = self.subspaces.get("m").map(|b| self.subspace("m", b)).transpose()?;
        let chi = match &self.chi {
            None => CharacterDiff::trivial(h.len()),
            Some(values) => CharacterDiff::new(values.iter().map(|c| rational(c, "chi")).collect::<Result<Vec<_>>>()?),
        };
        let reps = self.component_reps.iter().enumerate().map(|(k, r)| self.rep(k, r)).collect::<Result<Vec<_>>>()?;
        let labels = self
            .subspaces
            .iter()
            .filter(|(k, _)| *k != "h" && *k != "m")
            .map(|(k, b)| Ok((k.clone(), self.subspace(k, b)?)))
            .collect::<Result<Vec<_>>>()?;
        let setup = make_setup(alg, h, m, chi, reps)?;
        Ok(LoadedSetup {
            name: self.name.clone(),
            description: self.description.clone(),
            reference: self.reference.clone(),
            rep_labels: self
                .component_reps
                .iter()
                .enumerate()
                .map(|(k, r)| if r.label.is_empty() { format!("rep#{k}") } else { r.label.clone() })
                .collect(),
            labels,
            setup,
        })
    }
}

pub fn load_setup(path: &Path) -> Result<LoadedSetup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_setup(&text)?.build()
}

/// A preset name, or else a path to a setup file.
pub fn load_named(name: &str) -> Result<LoadedSetup> {
    match presets::get(name) {
        Some(text) => parse_setup(text)?.build(),
        None => load_setup(Path::new(name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2: &str = r#"{
        "name": "t",
        "basis": ["H", "E", "F"],
        "brackets": [
            {"left": "H", "right": "E", "value": {"E": "2"}},
            {"left": "H", "right": "F", "value": {"F": "-2"}},
            {"left": "E", "right": "F", "value": {"H": "1"}}
        ],
        "subspaces": {"h": {"names": ["E"], "vectors": [{"E": "1"}]}}
    }"#;

    #[test]
    fn auto_complement_when_m_missing() {
        let l = parse_setup(SL2).unwrap().build().unwrap();
        assert!(l.setup.m_auto());
        assert_eq!(l.setup.r(), 2);
    }

    #[test]
    fn perturbed_constant_is_rejected() {
        let bad = SL2.replace(r#"{"E": "2"}"#, r#"{"E": "2", "H": "1"}"#);
        let err = parse_setup(&bad).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::Jacobi(ref s) if s.contains("(H, E, F)")), "{err}");
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_setup("{"), Err(Error::Format(_))));
        let bad = SL2.replace(r#""2""#, r#""2.5""#);
        assert!(matches!(parse_setup(&bad).unwrap().build(), Err(Error::Format(_))));
        let bad = SL2.replace(r#"{"E": "1"}"#, r#"{"Q": "1"}"#);
        assert!(matches!(parse_setup(&bad).unwrap().build(), Err(Error::Format(_))));
        let clash =
            SL2.replace(r#""names": ["E"], "vectors": [{"E": "1"}]"#, r#""names": ["F"], "vectors": [{"E": "1"}]"#);
        assert!(matches!(parse_setup(&clash).unwrap().build(), Err(Error::Format(_))));
    }

    #[test]
    fn round_trips_through_json() {
        for name in presets::NAMES {
            let file = parse_setup(presets::get(name).unwrap()).unwrap();
            let again = parse_setup(&serde_json::to_string(&file).unwrap()).unwrap();
            assert_eq!(file, again);
        }
    }
}
