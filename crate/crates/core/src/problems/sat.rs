use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamcore::DiagonalOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Self { var, negated }
    }

    /// Truth value under an assignment where bit `var` is the variable's value.
    pub fn value(self, assignment: u64) -> bool {
        (assignment >> self.var & 1 == 1) != self.negated
    }
}

/// CNF formula over `n_vars` Boolean variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatFormula {
    n_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl SatFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (k, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidArgument(format!("clause {k} is empty")));
            }
            if let Some(l) = c.iter().find(|l| l.var >= n_vars) {
                return Err(Error::Bounds(format!(
                    "clause {k} uses variable {} of {n_vars}",
                    l.var
                )));
            }
        }
        Ok(Self { n_vars, clauses })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// True when every clause has three literals on distinct variables.
    pub fn is_3sat(&self) -> bool {
        self.clauses.iter().all(|c| {
            c.len() == 3 && c[0].var != c[1].var && c[0].var != c[2].var && c[1].var != c[2].var
        })
    }

    pub fn unsatisfied(&self, assignment: u64) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().all(|l| !l.value(assignment)))
            .count()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64 + 1;
                let _ = write!(out, "{} ", if l.negated { -v } else { v });
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Uniform random 3-SAT: distinct variables per clause, fair-coin negations.
pub fn random_3sat(n_vars: usize, n_clauses: usize, seed: u64) -> Result<SatFormula> {
    if n_vars < 3 {
        return Err(Error::InvalidArgument(format!(
            "random 3-SAT needs at least 3 variables, got {n_vars}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..n_clauses)
        .map(|_| {
            sample(&mut rng, n_vars, 3)
                .into_iter()
                .map(|var| Literal::new(var, rng.random_bool(0.5)))
                .collect()
        })
        .collect();
    SatFormula::new(n_vars, clauses)
}

/// Unsatisfied-clause count for every assignment.
pub fn sat_cost(formula: &SatFormula) -> Result<DiagonalOperator> {
    DiagonalOperator::from_fn(formula.n_vars, |x| formula.unsatisfied(x) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimacsMode {
    /// Only width-3 clauses on distinct variables.
    ThreeSat,
    General,
}

pub fn parse_dimacs(text: &str, mode: DimacsMode) -> Result<SatFormula> {
    const FMT: &str = "DIMACS";
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(FMT, line_no, "duplicate header"));
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(Error::parse(
                    FMT,
                    line_no,
                    "expected `p cnf <vars> <clauses>`",
                ));
            }
            let n = f[2].parse().map_err(|_| {
                Error::parse(FMT, line_no, format!("bad variable count `{}`", f[2]))
            })?;
            let m = f[3]
                .parse()
                .map_err(|_| Error::parse(FMT, line_no, format!("bad clause count `{}`", f[3])))?;
            header = Some((n, m, line_no));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(Error::parse(FMT, line_no, "clause before `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(FMT, line_no, format!("bad literal `{tok}`")))?;
            if v == 0 {
                if current.is_empty() {
                    return Err(Error::parse(FMT, line_no, "empty clause"));
                }
                if mode == DimacsMode::ThreeSat {
                    let c = &current;
                    let distinct = c.len() == 3
                        && c[0].var != c[1].var
                        && c[0].var != c[2].var
                        && c[1].var != c[2].var;
                    if !distinct {
                        return Err(Error::parse(
                            FMT,
                            line_no,
                            format!("clause of width {} in 3-SAT mode", c.len()),
                        ));
                    }
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = v.unsigned_abs() as usize;
            if var > n {
                return Err(Error::parse(
                    FMT,
                    line_no,
                    format!("variable {var} exceeds declared count {n}"),
                ));
            }
            if current.is_empty() {
                current_line = line_no;
            }
            current.push(Literal::new(var - 1, v < 0));
        }
    }
    let Some((n, m, header_line)) = header else {
        return Err(Error::parse(FMT, 1, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(
            FMT,
            current_line,
            "clause not terminated by 0",
        ));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            FMT,
            header_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    SatFormula::new(n, clauses)
}
