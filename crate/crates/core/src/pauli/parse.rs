// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Plain-text Hamiltonian format: one `<coefficient> <pauli-string>` per line,
//! `#` starts a comment, blank lines are ignored.

use std::str::FromStr;

use super::string::PauliString;
use super::sum::PauliSum;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn parse_pauli_sum<T: Real>(text: &str) -> Result<PauliSum<T>> {
    let mut terms = Vec::new();
    let mut n_qubits: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (coef, label) = match (fields.next(), fields.next(), fields.next()) {
            (Some(c), Some(l), None) => (c, l),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected `<coefficient> <pauli-string>`, got {line:?}"),
                })
            }
        };
        if coef.contains(['j', 'i']) && coef.parse::<f64>().is_err() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("complex coefficient {coef:?} not supported; weights must be real"),
            });
        }
        let c: f64 = coef.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("invalid coefficient {coef:?}"),
        })?;
        if !c.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("non-finite coefficient {coef:?}"),
            });
        }
        let s = PauliString::from_str(label).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
            other => other,
        })?;
        match n_qubits {
            None => n_qubits = Some(s.n_qubits()),
            Some(n) if n != s.n_qubits() => {
                return Err(Error::InconsistentLength {
                    line: line_no,
                    expected: n,
                    found: s.n_qubits(),
                })
            }
            _ => {}
        }
        terms.push((T::lit(c), s));
    }
    let n = n_qubits.ok_or(Error::Parse {
        line: 0,
        msg: "no terms found".into(),
    })?;
    PauliSum::new(n, terms)
}

impl<T: Real> FromStr for PauliSum<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli_sum(s)
    }
}
