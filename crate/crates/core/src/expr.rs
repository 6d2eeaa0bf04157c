//! The small linear-expression grammar used in problem files and on the
//! command line: `"x + 2*y"`, `"alpha x - y"`, `"-1/2*x^2"`.
//!
//! An expression is a sum of terms separated by `+` / `-`. A term is a
//! whitespace-separated product of factors; a factor is a label, a scalar,
//! `scalar*label`, or `label*label*...` when every piece is a label. A factor
//! that is itself a label always wins, so monomial labels such as `x*y` work.

use thiserror::Error;

use crate::scalars::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("empty term in {0:?}")]
    EmptyTerm(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Parses `text` into `(coefficient, word)` terms, resolving labels with
/// `resolve`. Terms are returned in input order and are not combined.
pub fn parse_terms<T: Clone>(
    field: FieldSpec,
    text: &str,
    resolve: impl Fn(&str) -> Option<T>,
) -> Result<Vec<(Scalar, Vec<T>)>, ExprError> {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    for ch in text.chars() {
        if ch == '+' || ch == '-' {
            if !current.trim().is_empty() {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = false;
            } else if !current.is_empty() && current.trim().is_empty() {
                current.clear();
            }
            if ch == '-' {
                negative = !negative;
            }
            continue;
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        pieces.push((negative, current));
    } else if pieces.is_empty() || negative {
        return Err(ExprError::EmptyTerm(text.to_string()));
    }

    pieces
        .into_iter()
        .map(|(neg, term)| {
            let mut coeff = if neg { -field.one() } else { field.one() };
            let mut word = Vec::new();
            for factor in term.split_whitespace() {
                let pieces: Vec<&str> = factor.split('*').map(str::trim).filter(|p| !p.is_empty()).collect();
                let mut p = 0;
                'outer: while p < pieces.len() {
                    // longest run of pieces that names a label
                    for q in (p + 1..=pieces.len()).rev() {
                        if let Some(t) = resolve(&pieces[p..q].join("*")) {
                            word.push(t);
                            p = q;
                            continue 'outer;
                        }
                    }
                    match field.parse(pieces[p]) {
                        Ok(c) => coeff = &coeff * &c,
                        Err(e) if pieces[p].contains('/') => return Err(e.into()),
                        Err(_) => return Err(ExprError::UnknownLabel(pieces[p].to_string())),
                    }
                    p += 1;
                }
            }
            Ok((coeff, word))
        })
        .collect()
}
