//! Problem files: a TOML document with `field`, `algebra`, `lie`, `anchor`
//! and `action` tables.
//!
//! ```toml
//! [field]
//! kind = "rationals"        # or kind = "prime", p = 5
//!
//! [algebra]
//! kind = "monomial-quotient"
//! variables = ["x", "y"]
//! relations = ["x*y", "x^2", "y^2"]
//! # kind = "structure-constants", dim = 2, labels = ["1", "e"],
//! # constants = [["e", "e", "1", "1"]]      # e·e = 1
//!
//! [lie]
//! dim = 1
//! labels = ["alpha"]
//! brackets = []             # [["h", "e", "e", "1"], ["e", "h", "e", "-1"]]
//!
//! [anchor.alpha]            # images of the variables (or basis labels)
//! x = "y"
//!
//! [action]
//! kind = "character"        # or kind = "tensor", entries = [["x", "a", "b", "1"]]
//! [action.values]
//! x = "0"
//! ```
//!
//! Bracket and structure-constant triples are taken as written, so both
//! orders of a nonzero bracket must be listed. When no structure constant
//! (or action entry) mentions the unit, the unit products are filled in.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_terms, ExprError};
use crate::finalg::{AlgebraElement, AlgebraError, Character, CommAlgebra, Derivation};
use crate::lierinehart::{Anchor, LieAlgebra, LieError, LieRinehartData, ModuleAction};
use crate::presets;
use crate::scalars::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Syntax {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{place}: unknown label {label:?}")]
    UnknownLabel { place: String, label: String },
    #[error("{place}: {source}")]
    Literal { place: String, source: ScalarError },
    #[error("{place}: {message}")]
    Invalid { place: String, message: String },
    #[error("algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("lie: {0}")]
    Lie(#[from] LieError),
}

/// `[label_i, label_j, label_k, coefficient]`.
pub type Triple = [String; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub algebra: AlgebraSection,
    pub lie: LieSection,
    #[serde(default)]
    pub anchor: BTreeMap<String, BTreeMap<String, String>>,
    pub action: ActionSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSection {
    MonomialQuotient {
        variables: Vec<String>,
        #[serde(default)]
        relations: Vec<String>,
    },
    StructureConstants {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default)]
        constants: Vec<Triple>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<Triple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionSection {
    Character {
        #[serde(default)]
        values: BTreeMap<String, String>,
    },
    Tensor {
        #[serde(default)]
        entries: Vec<Triple>,
    },
}

/// A parsed file together with the data it describes. The data has passed
/// shape checks only; call [`LieRinehartData::validate`] for the axioms.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    pub data: LieRinehartData,
}

impl Problem {
    pub fn character(&self) -> Option<&Character> {
        self.data.action().character()
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, ProblemError> {
        Self::parse_named(text, "<input>")
    }

    pub fn parse_named(text: &str, source_name: &str) -> Result<Self, ProblemError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((1, 1));
            ProblemError::Syntax {
                source_name: source_name.to_string(),
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem files serialize")
    }

    pub fn build(&self) -> Result<Problem, ProblemError> {
        let field = self.field;
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p).map_err(|e| ProblemError::Literal {
                place: "field.p".into(),
                source: e,
            })?;
        }
        let r = self.build_algebra()?;
        let l = self.build_lie()?;
        let anchor = self.build_anchor(&r, &l)?;
        let action = self.build_action(&r, &l)?;
        let data = LieRinehartData::new(r, l, action, anchor)?;
        Ok(Problem {
            file: self.clone(),
            data,
        })
    }

    fn build_algebra(&self) -> Result<CommAlgebra, ProblemError> {
        match &self.algebra {
            AlgebraSection::MonomialQuotient { variables, relations } => {
                let v: Vec<&str> = variables.iter().map(String::as_str).collect();
                let rel: Vec<&str> = relations.iter().map(String::as_str).collect();
                Ok(CommAlgebra::monomial_quotient(self.field, &v, &rel)?)
            }
            AlgebraSection::StructureConstants { dim, labels, constants } => {
                let labels = default_labels(labels, *dim, "algebra.labels", |i| {
                    if i == 0 {
                        "1".into()
                    } else {
                        format!("e{i}")
                    }
                })?;
                let index = |place: &str, s: &str| {
                    labels.iter().position(|l| l == s).ok_or_else(|| ProblemError::UnknownLabel {
                        place: place.to_string(),
                        label: s.to_string(),
                    })
                };
                let mut triples = Vec::new();
                for (n, [i, j, k, c]) in constants.iter().enumerate() {
                    let place = format!("algebra.constants[{n}]");
                    triples.push((
                        index(&place, i)?,
                        index(&place, j)?,
                        index(&place, k)?,
                        literal(self.field, &place, c)?,
                    ));
                }
                if !triples.iter().any(|t| t.0 == 0 || t.1 == 0) {
                    for i in 0..*dim {
                        triples.push((0, i, i, self.field.one()));
                        if i != 0 {
                            triples.push((i, 0, i, self.field.one()));
                        }
                    }
                }
                Ok(CommAlgebra::from_structure_constants(self.field, labels, &triples)?)
            }
        }
    }

    fn build_lie(&self) -> Result<LieAlgebra, ProblemError> {
        let lie = &self.lie;
        let labels = default_labels(&lie.labels, lie.dim, "lie.labels", |i| format!("xi{}", i + 1))?;
        let mut triples = Vec::new();
        for (n, [a, b, c, f]) in lie.brackets.iter().enumerate() {
            let place = format!("lie.brackets[{n}]");
            let index = |s: &str| {
                labels.iter().position(|l| l == s).ok_or_else(|| ProblemError::UnknownLabel {
                    place: place.clone(),
                    label: s.to_string(),
                })
            };
            triples.push((index(a)?, index(b)?, index(c)?, literal(self.field, &place, f)?));
        }
        Ok(LieAlgebra::from_brackets(self.field, labels, &triples)?)
    }

    /// Keys of `anchor.<label>` (and of `action.values`) are the variables
    /// for a monomial quotient and the basis labels otherwise.
    fn generator_keys(&self, r: &CommAlgebra) -> Vec<String> {
        match r.monomials() {
            Some(m) => m.variables.clone(),
            None => r.labels().to_vec(),
        }
    }

    fn build_anchor(&self, r: &CommAlgebra, l: &LieAlgebra) -> Result<Anchor, ProblemError> {
        for name in self.anchor.keys() {
            if l.index_of(name).is_none() {
                return Err(ProblemError::UnknownLabel {
                    place: "anchor".into(),
                    label: name.clone(),
                });
            }
        }
        let keys = self.generator_keys(r);
        let mut maps = Vec::new();
        for a in 0..l.dim() {
            let label = l.label(a);
            let given = self.anchor.get(label);
            if let Some(given) = given {
                for k in given.keys() {
                    if !keys.contains(k) {
                        return Err(ProblemError::UnknownLabel {
                            place: format!("anchor.{label}"),
                            label: k.clone(),
                        });
                    }
                }
            }
            let mut images = Vec::new();
            for k in &keys {
                let place = format!("anchor.{label}.{k}");
                images.push(match given.and_then(|g| g.get(k)) {
                    Some(text) => element(r, &place, text)?,
                    None => r.zero(),
                });
            }
            let d = match r.derivation_from_generators(&images) {
                Some(d) => d?,
                None => Derivation::from_images(r, &images)?,
            };
            maps.push(d);
        }
        Ok(Anchor::new(maps))
    }

    fn build_action(&self, r: &CommAlgebra, l: &LieAlgebra) -> Result<ModuleAction, ProblemError> {
        let field = self.field;
        match &self.action {
            ActionSection::Character { values } => {
                let keys = self.generator_keys(r);
                for k in values.keys() {
                    if !keys.contains(k) {
                        return Err(ProblemError::UnknownLabel {
                            place: "action.values".into(),
                            label: k.clone(),
                        });
                    }
                }
                let mut given = Vec::new();
                for k in &keys {
                    let place = format!("action.values.{k}");
                    match values.get(k) {
                        Some(text) => given.push(literal(field, &place, text)?),
                        None if r.monomials().is_none() && k == r.label(0) => given.push(field.one()),
                        None => {
                            return Err(ProblemError::Invalid {
                                place,
                                message: "missing character value".into(),
                            })
                        }
                    }
                }
                let values = match r.monomials() {
                    Some(m) => m
                        .exponents
                        .iter()
                        .map(|exps| {
                            exps.iter()
                                .zip(&given)
                                .fold(field.one(), |acc, (&e, v)| (0..e).fold(acc, |acc, _| &acc * v))
                        })
                        .collect(),
                    None => given,
                };
                Ok(ModuleAction::Character(Character::new(values)))
            }
            ActionSection::Tensor { entries } => {
                let (n, m) = (r.dim(), l.dim());
                let mut t = vec![vec![vec![field.zero(); m]; m]; n];
                let mut unit_given = false;
                for (idx, [i, a, b, c]) in entries.iter().enumerate() {
                    let place = format!("action.entries[{idx}]");
                    let unknown = |s: &str| ProblemError::UnknownLabel {
                        place: place.clone(),
                        label: s.to_string(),
                    };
                    let i = r.index_of(i).ok_or_else(|| unknown(i))?;
                    let a = l.index_of(a).ok_or_else(|| unknown(a))?;
                    let b = l.index_of(b).ok_or_else(|| unknown(b))?;
                    unit_given |= i == 0;
                    t[i][a][b] = literal(field, &place, c)?;
                }
                if !unit_given {
                    for a in 0..m {
                        t[0][a][a] = field.one();
                    }
                }
                Ok(ModuleAction::Tensor(t))
            }
        }
    }
}

fn default_labels(
    given: &Option<Vec<String>>,
    dim: usize,
    place: &str,
    make: impl Fn(usize) -> String,
) -> Result<Vec<String>, ProblemError> {
    match given {
        Some(l) if l.len() != dim => Err(ProblemError::Invalid {
            place: place.to_string(),
            message: format!("{} labels for dimension {dim}", l.len()),
        }),
        Some(l) => Ok(l.clone()),
        None => Ok((0..dim).map(make).collect()),
    }
}

fn literal(field: FieldSpec, place: &str, text: &str) -> Result<Scalar, ProblemError> {
    field.parse(text).map_err(|e| ProblemError::Literal {
        place: place.to_string(),
        source: e,
    })
}

/// Parses a polynomial expression in the basis labels of `r`; a product of
/// labels is multiplied out in `r`.
pub fn element(r: &CommAlgebra, place: &str, text: &str) -> Result<AlgebraElement, ProblemError> {
    let terms = parse_terms(r.field(), text, |s| r.index_of(s)).map_err(|e| match e {
        ExprError::UnknownLabel(label) => ProblemError::UnknownLabel {
            place: place.to_string(),
            label,
        },
        ExprError::Scalar(source) => ProblemError::Literal {
            place: place.to_string(),
            source,
        },
        ExprError::EmptyTerm(t) => ProblemError::Invalid {
            place: place.to_string(),
            message: format!("empty term in {t:?}"),
        },
    })?;
    let mut out = r.zero();
    for (c, word) in terms {
        let v = word
            .into_iter()
            .fold(r.one(), |acc, i| r.mul(&acc, &r.basis_element(i)));
        out = out.add(&v.scale(&c));
    }
    Ok(out)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses a problem from a file path, or from a built-in preset name.
pub fn load(path_or_preset: &str) -> Result<Problem, ProblemError> {
    let (text, name) = match presets::named(path_or_preset) {
        Some(text) => (text.to_string(), path_or_preset.to_string()),
        None => {
            let text = std::fs::read_to_string(Path::new(path_or_preset)).map_err(|e| ProblemError::Io {
                path: path_or_preset.to_string(),
                message: e.to_string(),
            })?;
            (text, path_or_preset.to_string())
        }
    };
    ProblemFile::parse_named(&text, &name)?.build()
}

/// Parses and builds problem text.
pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    ProblemFile::parse(text)?.build()
}
