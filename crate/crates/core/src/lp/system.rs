//! Linear systems over nonnegative variables, with exact verification of witnesses and certificates.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::scalar::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_qs<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// `Σ coeffs · x  (relation)  rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    #[serde(serialize_with = "ser_terms")]
    pub coeffs: Vec<(usize, Q)>,
    pub relation: Relation,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Q,
    pub label: String,
}

fn ser_terms<S: Serializer>(xs: &[(usize, Q)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|(i, c)| (i, c.to_string())))
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, Q)>, relation: Relation, rhs: Q, label: impl Into<String>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Constraint { coeffs, relation, rhs, label: label.into() }
    }

    pub fn lhs(&self, x: &[Q]) -> Q {
        self.coeffs.iter().map(|(i, c)| c * &x[*i]).sum()
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let l = self.lhs(x);
        match self.relation {
            Relation::Le => l <= self.rhs,
            Relation::Eq => l == self.rhs,
            Relation::Ge => l >= self.rhs,
        }
    }
}

/// Constraints over variables that are all implicitly `>= 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearSystem {
    pub names: Vec<String>,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(names: Vec<String>) -> Self {
        LinearSystem { names, constraints: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Exact check of nonnegativity and every constraint.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        x.len() == self.var_count() && x.iter().all(|v| !v.is_negative()) && self.constraints.iter().all(|c| c.holds(x))
    }

    /// Exact check of a Farkas certificate: `y_i ≥ 0` on `≤` rows, `y_i ≤ 0` on `≥` rows,
    /// `yᵀA ≥ 0` columnwise and `yᵀb = -1`. Any `x ≥ 0` would then give `0 ≤ yᵀAx ≤ yᵀb = -1`.
    pub fn certificate_refutes(&self, y: &[Q]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self.constraints.iter().zip(y).all(|(c, yi)| match c.relation {
            Relation::Le => !yi.is_negative(),
            Relation::Ge => !yi.is_positive(),
            Relation::Eq => true,
        });
        let mut col = vec![Q::zero(); self.var_count()];
        let mut rhs = Q::zero();
        for (c, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &c.coeffs {
                col[*j] += a * yi;
            }
            rhs += &c.rhs * yi;
        }
        signs_ok && col.iter().all(|v| !v.is_negative()) && rhs == -super::scalar::q(1)
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let terms: Vec<String> = c.coeffs.iter().map(|(i, a)| format!("{a}*{}", self.names[*i])).collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "[{}] {lhs} {} {}", c.label, c.relation, c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Feasibility {
    Feasible {
        #[serde(serialize_with = "ser_qs")]
        witness: Vec<Q>,
    },
    Infeasible {
        #[serde(serialize_with = "ser_qs")]
        certificate: Vec<Q>,
    },
    Unknown {
        #[serde(serialize_with = "ser_qs")]
        best_point: Vec<Q>,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Feasibility::Infeasible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Feasibility::Feasible { .. } => "feasible",
            Feasibility::Infeasible { .. } => "infeasible",
            Feasibility::Unknown { .. } => "unknown",
        }
    }
}
