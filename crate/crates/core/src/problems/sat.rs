// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    pub fn is_true(&self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

/// 3-SAT formula in conjunctive normal form. Variable `i` maps to qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    n_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(n_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if n_vars == 0 || n_vars > crate::pauli::MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "unsupported variable count {n_vars}"
            )));
        }
        for lit in clauses.iter().flatten() {
            if lit.var >= n_vars {
                return Err(Error::IndexOutOfRange {
                    index: lit.var,
                    len: n_vars,
                });
            }
        }
        Ok(Self { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Number of clauses violated by `assignment`.
    pub fn violated(&self, assignment: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().all(|l| !l.is_true(assignment)))
            .count()
    }

    /// Assignment encoded by computational basis index `b` (qubit 0 is the
    /// most significant bit).
    pub fn assignment_of(&self, b: usize) -> Vec<bool> {
        (0..self.n_vars)
            .map(|i| (b >> (self.n_vars - 1 - i)) & 1 == 1)
            .collect()
    }

    /// Exhaustive count of satisfying assignments.
    pub fn count_solutions(&self) -> usize {
        (0..1usize << self.n_vars)
            .filter(|&b| self.violated(&self.assignment_of(b)) == 0)
            .count()
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64 + 1;
                let _ = write!(s, "{} ", if l.negated { -v } else { v });
            }
            s.push_str("0\n");
        }
        s
    }

    /// Parses the DIMACS CNF subset with exactly three literals per clause.
    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            if line.starts_with('p') {
                let f: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                    return Err(err(format!("bad header `{line}`")));
                }
                let n = f[2]
                    .parse()
                    .map_err(|_| err(format!("bad variable count `{}`", f[2])))?;
                let m = f[3]
                    .parse()
                    .map_err(|_| err(format!("bad clause count `{}`", f[3])))?;
                header = Some((n, m, line_no));
                continue;
            }
            let (n_vars, _, _) =
                header.ok_or_else(|| err("clause before `p cnf` header".into()))?;
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| err(format!("bad literal `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if nums.last() != Some(&0) {
                return Err(err("clause must end with 0".into()));
            }
            let lits = &nums[..nums.len() - 1];
            if lits.len() != 3 || lits.contains(&0) {
                return Err(err(format!(
                    "expected 3 nonzero literals, got {}",
                    lits.len()
                )));
            }
            let mut clause = [Literal::pos(0); 3];
            for (slot, &v) in clause.iter_mut().zip(lits) {
                let var = v.unsigned_abs() as usize - 1;
                if var >= n_vars {
                    return Err(err(format!("variable {} exceeds {n_vars}", v.abs())));
                }
                *slot = Literal {
                    var,
                    negated: v < 0,
                };
            }
            clauses.push(clause);
        }
        let (n_vars, m, line) = header.ok_or(Error::Parse {
            line: 0,
            msg: "missing `p cnf` header".into(),
        })?;
        if clauses.len() != m {
            return Err(Error::Parse {
                line,
                msg: format!("header declares {m} clauses, found {}", clauses.len()),
            });
        }
        Self::new(n_vars, clauses)
    }

    /// Random instance with `n_clauses` clauses over distinct variable
    /// triples, all satisfied by a planted assignment (also returned).
    pub fn random_satisfiable<R: Rng + ?Sized>(
        n_vars: usize,
        n_clauses: usize,
        rng: &mut R,
    ) -> Result<(Self, Vec<bool>)> {
        if n_vars < 3 {
            return Err(Error::InvalidArgument("need at least 3 variables".into()));
        }
        let planted: Vec<bool> = (0..n_vars).map(|_| rng.random_bool(0.5)).collect();
        let mut clauses = Vec::with_capacity(n_clauses);
        while clauses.len() < n_clauses {
            let vars = sample(rng, n_vars, 3);
            let mut clause = [Literal::pos(0); 3];
            for (slot, var) in clause.iter_mut().zip(vars.iter()) {
                *slot = Literal {
                    var,
                    negated: rng.random_bool(0.5),
                };
            }
            if clause.iter().any(|l| l.is_true(&planted)) {
                clauses.push(clause);
            }
        }
        Ok((Self::new(n_vars, clauses)?, planted))
    }
}

/// Sum of clause projectors; `<b|H|b>` is the number of clauses the
/// assignment `b` violates.
///
/// A clause is violated only when every literal is false, i.e. on
/// `prod_l (I + s_l Z_l) / 2` with `s_l = +1` for a plain literal and `-1`
/// for a negated one. The product expands over subsets of the literals.
pub fn compile_sat<T: Real>(inst: &SatInstance) -> PauliSum<T> {
    let n = inst.n_vars;
    let mut terms = Vec::with_capacity(8 * inst.clauses.len());
    for clause in &inst.clauses {
        for subset in 0u8..8 {
            let mut z = 0u64;
            let mut sign = 1.0;
            for (k, l) in clause.iter().enumerate() {
                if subset >> k & 1 == 1 {
                    z ^= 1 << (n - 1 - l.var);
                    if l.negated {
                        sign = -sign;
                    }
                }
            }
            terms.push((T::lit(sign / 8.0), PauliString::from_masks(n, 0, z)));
        }
    }
    PauliSum::new(n, terms).expect("well-formed clause terms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenbasis;
    use crate::pauli::StateVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn clause(a: Literal, b: Literal, c: Literal) -> [Literal; 3] {
        [a, b, c]
    }

    #[test]
    fn all_positive_clause_projects_on_zero_state() {
        let inst = SatInstance::new(
            3,
            vec![clause(Literal::pos(0), Literal::pos(1), Literal::pos(2))],
        )
        .unwrap();
        let h = compile_sat::<f64>(&inst);
        let dense = h.to_dense().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((dense[(i, j)].re - want).abs() < 1e-15 && dense[(i, j)].im == 0.0);
            }
        }
        assert_eq!(
            h.expectation(&StateVector::basis(3, 7).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn all_negated_clause_projects_on_ones() {
        let inst = SatInstance::new(
            3,
            vec![clause(Literal::neg(0), Literal::neg(1), Literal::neg(2))],
        )
        .unwrap();
        let h = compile_sat::<f64>(&inst);
        for b in 0..8 {
            let e = h.expectation(&StateVector::basis(3, b).unwrap()).unwrap();
            assert!((e - if b == 7 { 1.0 } else { 0.0 }).abs() < 1e-15);
        }
    }

    #[test]
    fn spectrum_counts_violations() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..5 {
            let clauses = (0..10)
                .map(|_| {
                    let mut c = [Literal::pos(0); 3];
                    for l in &mut c {
                        *l = Literal {
                            var: rng.random_range(0..5),
                            negated: rng.random_bool(0.5),
                        };
                    }
                    c
                })
                .collect();
            let inst = SatInstance::new(5, clauses).unwrap();
            let h = compile_sat::<f64>(&inst);
            assert!(h.is_diagonal());
            for b in 0..32 {
                let e = h.expectation(&StateVector::basis(5, b).unwrap()).unwrap();
                assert!((e - inst.violated(&inst.assignment_of(b)) as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn satisfiable_ground_space_counts_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [4, 6, 8] {
            let (inst, planted) = SatInstance::random_satisfiable(n, 3 * n, &mut rng).unwrap();
            assert_eq!(inst.violated(&planted), 0);
            let eig = eigenbasis(&compile_sat::<f64>(&inst)).unwrap();
            assert!(eig.values[0].abs() < 1e-12);
            assert_eq!(eig.ground_degeneracy(1e-9), inst.count_solutions());
            assert!(eig.values.iter().all(|v| (v - v.round()).abs() < 1e-12));
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 4 2\n1 -2 3 0\n-4 2 1 0\n";
        let inst = SatInstance::from_dimacs(text).unwrap();
        assert_eq!(inst.n_vars(), 4);
        assert_eq!(
            inst.clauses()[0],
            clause(Literal::pos(0), Literal::neg(1), Literal::pos(2))
        );
        assert_eq!(SatInstance::from_dimacs(&inst.to_dimacs()).unwrap(), inst);
    }

    #[test]
    fn dimacs_errors() {
        let bad = [
            ("1 2 3 0\n", 1),
            ("p cnf 3 1\n1 2 0\n", 2),
            ("p cnf 3 1\n1 2 4 0\n", 2),
            ("p cnf 3 1\n1 2 3\n", 2),
            ("p cnf 3 2\n1 2 3 0\n", 1),
            ("p cnf 3 1\n1 x 3 0\n", 2),
        ];
        for (text, line) in bad {
            match SatInstance::from_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn generator_is_seeded() {
        let a = SatInstance::random_satisfiable(7, 20, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = SatInstance::random_satisfiable(7, 20, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a, b);
    }
}
