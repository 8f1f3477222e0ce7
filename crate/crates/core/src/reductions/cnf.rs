//! Positive 3-CNF formulas, the `pcnf` text format, and exhaustive satisfiability.
//!
//! ```text
//! p pcnf <vars> <clauses>
//! <a> <b> <c> 0       # one clause per line, 1-based positive variables
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::content_lines;

/// Largest variable count `brute_force_sat` accepts.
pub const SAT_VAR_CAP: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("{0} variables exceed the exhaustive cap of {SAT_VAR_CAP}")]
    TooManyVariables(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Exactly one variable of every clause is true.
    OneInThree,
    /// No clause has all three variables equal.
    Nae,
}

impl Variant {
    pub fn clause_ok(self, vals: [bool; 3]) -> bool {
        let k = vals.iter().filter(|&&b| b).count();
        match self {
            Variant::OneInThree => k == 1,
            Variant::Nae => k == 1 || k == 2,
        }
    }
}

/// Variables are 1-based in clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveCnf {
    pub var_count: usize,
    pub clauses: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A literal is zero or negative in the source text.
    NonPositive { clause: usize },
    VariableRange { clause: usize, var: usize },
    DistinctVars { clause: usize },
    OccurrenceCount { var: usize, count: usize },
}

impl PositiveCnf {
    pub fn new(var_count: usize, clauses: Vec<[usize; 3]>) -> Self {
        PositiveCnf { var_count, clauses }
    }

    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.var_count];
        for c in &self.clauses {
            for &v in c {
                if (1..=self.var_count).contains(&v) {
                    occ[v - 1] += 1;
                }
            }
        }
        occ
    }

    pub fn satisfies(&self, assignment: &[bool], variant: Variant) -> bool {
        assignment.len() == self.var_count
            && self.clauses.iter().all(|c| variant.clause_ok(c.map(|v| assignment[v - 1])))
    }
}

/// Checks variables are in range, distinct per clause, and occur exactly four times.
/// Both variants share the same structural rules.
pub fn validate_formula(f: &PositiveCnf, _variant: Variant) -> Vec<Violation> {
    let mut out = Vec::new();
    for (k, c) in f.clauses.iter().enumerate() {
        for &v in c {
            if v == 0 || v > f.var_count {
                out.push(Violation::VariableRange { clause: k, var: v });
            }
        }
        if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
            out.push(Violation::DistinctVars { clause: k });
        }
    }
    for (i, &count) in f.occurrences().iter().enumerate() {
        if count != 4 {
            out.push(Violation::OccurrenceCount { var: i + 1, count });
        }
    }
    out
}

/// All satisfying assignments in increasing bitmask order (variable 1 is the low bit).
pub fn brute_force_sat(f: &PositiveCnf, variant: Variant) -> Result<Vec<Vec<bool>>, CnfError> {
    let n = f.var_count;
    if n > SAT_VAR_CAP {
        return Err(CnfError::TooManyVariables(n));
    }
    let masks: Vec<[u32; 3]> = f.clauses.iter().map(|c| c.map(|v| 1u32 << (v - 1))).collect();
    let ok = |m: u32| masks.iter().all(|c| variant.clause_ok(c.map(|b| m & b != 0)));
    Ok((0..1u32 << n).filter(|&m| ok(m)).map(|m| (0..n).map(|i| m >> i & 1 == 1).collect()).collect())
}

/// First satisfying assignment, without collecting the rest.
pub fn first_sat(f: &PositiveCnf, variant: Variant) -> Result<Option<Vec<bool>>, CnfError> {
    let n = f.var_count;
    if n > SAT_VAR_CAP {
        return Err(CnfError::TooManyVariables(n));
    }
    let masks: Vec<[u32; 3]> = f.clauses.iter().map(|c| c.map(|v| 1u32 << (v - 1))).collect();
    Ok((0..1u32 << n)
        .find(|&m| masks.iter().all(|c| variant.clause_ok(c.map(|b| m & b != 0))))
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect()))
}

pub fn parse_pcnf(text: &str) -> Result<PositiveCnf, CnfError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(CnfError::Parse { line: 1, msg: "empty input".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || CnfError::Parse { line: hl, msg: format!("expected `p pcnf <vars> <clauses>`, got {header:?}") };
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "pcnf" {
        return Err(bad_header());
    }
    let var_count: usize = toks[2].parse().map_err(|_| bad_header())?;
    let declared: usize = toks[3].parse().map_err(|_| bad_header())?;
    let mut clauses = Vec::with_capacity(declared);
    for (ln, line) in lines {
        let nums: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| CnfError::Parse { line: ln, msg: "expected integers".into() })?;
        if nums.len() != 4 || nums[3] != 0 {
            return Err(CnfError::Parse { line: ln, msg: "expected `a b c 0`".into() });
        }
        if nums[..3].iter().any(|&x| x <= 0) {
            return Err(CnfError::Parse { line: ln, msg: "literals must be positive".into() });
        }
        clauses.push([nums[0] as usize, nums[1] as usize, nums[2] as usize]);
    }
    if clauses.len() != declared {
        return Err(CnfError::ClauseCount { declared, found: clauses.len() });
    }
    Ok(PositiveCnf { var_count, clauses })
}

pub fn format_pcnf(f: &PositiveCnf) -> String {
    let mut s = format!("p pcnf {} {}\n", f.var_count, f.clauses.len());
    for [a, b, c] in &f.clauses {
        writeln!(s, "{a} {b} {c} 0").unwrap();
    }
    s
}
