//! Near-clique outer factor times a clique-product inner factor, realizing
//! `c = C(r,2) - rx/2 + y` for `y` in a window depending on `x`.

use serde::Serialize;

use crate::abelian::{additive_triples, SymmetricSet};

use super::clique::{binom2, build_clique_product, clique_product_decompose, CliqueProductPlan};
use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem13Params {
    pub r: u64,
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Enforce `x²/8 + 3x ≤ y ≤ x²/4 - 4x^{3/2}`.
    Strict,
    /// Build the case shape for any parameters.
    Diagnostic,
}

/// Parity case: 1 for even `x`, 2 for `2r - x ≡ 3 (mod 4)`, 3 for `2r - x ≡ 1 (mod 4)`.
pub fn case_tag(r: u64, x: u64) -> Result<u8, ConstructionError> {
    if x > r {
        return Err(ConstructionError::Parameters(format!("x = {x} exceeds r = {r}")));
    }
    Ok(if x.is_multiple_of(2) {
        1
    } else if (2 * r - x) % 4 == 3 {
        2
    } else {
        3
    })
}

/// Whether `y` lies in the strict window, in exact integer arithmetic.
pub fn y_in_range(x: u64, y: u64) -> bool {
    let (x, y) = (x as i128, y as i128);
    let lower = 8 * y >= x * x + 24 * x;
    let gap = x * x - 4 * y;
    lower && gap >= 0 && 256 * x * x * x <= gap * gap
}

/// Smallest and largest `y` in the strict window, if any.
pub fn y_range(x: u64) -> Option<(u64, u64)> {
    let lo = (x * x + 24 * x).div_ceil(8);
    let mut hi = (x * x) / 4;
    while hi >= lo && !y_in_range(x, hi) {
        hi -= 1;
    }
    (hi >= lo && y_in_range(x, lo)).then_some((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterFactor {
    pub case: u8,
    pub modulus: u64,
    /// Nonzero residues left out of the generating set.
    pub removed: Vec<u64>,
    pub degree: u64,
    pub inner_degree: u64,
}

impl OuterFactor {
    pub fn new(r: u64, x: u64) -> Result<Self, ConstructionError> {
        let case = case_tag(r, x)?;
        let (modulus, removed) = match case {
            1 => (r - x / 2 + 1, vec![]),
            2 => {
                let m = (2 * r - x + 5) / 2;
                (m, vec![m / 2])
            }
            _ => {
                let m = (2 * r - x + 11) / 2;
                (m, vec![m / 2 - 1, m / 2, m / 2 + 1])
            }
        };
        let degree = modulus - 1 - removed.len() as u64;
        let inner_degree = r
            .checked_sub(degree)
            .ok_or_else(|| ConstructionError::Parameters(format!("outer factor degree {degree} exceeds r = {r}")))?;
        let outer = OuterFactor { case, modulus, removed, degree, inner_degree };
        if outer.case == 3 && !outer.removed_is_sum_free() {
            return Err(ConstructionError::NotSumFree(outer.removed.clone()));
        }
        Ok(outer)
    }

    /// No `a + b = c` inside the removed set, so the removed 3-factor has no triangle.
    pub fn removed_is_sum_free(&self) -> bool {
        let m = self.modulus;
        self.removed
            .iter()
            .all(|&a| self.removed.iter().all(|&b| !self.removed.contains(&((a + b) % m))))
    }

    pub fn set(&self) -> Result<SymmetricSet, ConstructionError> {
        let members: Vec<u32> =
            (1..self.modulus).filter(|v| !self.removed.contains(v)).map(|v| v as u32).collect();
        Ok(SymmetricSet::cyclic(self.modulus as u32, &members)?)
    }

    /// Edges in each open neighborhood of the outer Cayley graph.
    pub fn triangles(&self) -> u64 {
        let d = self.degree;
        match self.case {
            1 => binom2(d),
            2 => binom2(d) - d / 2,
            // the removed factor has 3M/2 edges, 9 of which touch v or its three non-neighbors
            _ => binom2(d) - (3 * self.modulus / 2 - 9),
        }
    }
}

/// Closed-form offset `y - k` of each case, scaled by 8: `(x²+2x)`, `(x²-2x+1)`, `(x²-2x+21)`.
pub fn stated_offset_times8(case: u8, x: u64) -> i128 {
    let x = x as i128;
    match case {
        1 => x * x + 2 * x,
        2 => x * x - 2 * x + 1,
        _ => x * x - 2 * x + 21,
    }
}

/// `8 (c - C(r,2) + rx/2 - k)` for an achieved `c`.
pub fn measured_offset_times8(r: u64, x: u64, c: u64, k: u64) -> i128 {
    let (r, x, c, k) = (r as i128, x as i128, c as i128, k as i128);
    8 * c - 4 * r * (r - 1) + 4 * r * x - 8 * k
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem13Construction {
    pub params: Theorem13Params,
    pub outer: OuterFactor,
    pub inner: Option<CliqueProductPlan>,
    pub k: u64,
    pub target_c: u64,
    pub achieved_c: u64,
    #[serde(skip)]
    pub set: SymmetricSet,
}

fn product_with_inner(outer: &SymmetricSet, inner: Option<&CliqueProductPlan>) -> Result<SymmetricSet, ConstructionError> {
    match inner {
        Some(plan) if !plan.clique_sizes.is_empty() => Ok(outer.product(&build_clique_product(plan)?)),
        _ => Ok(outer.clone()),
    }
}

/// Generating set for `c = C(r,2) - rx/2 + y`, verified by triple counting.
pub fn theorem13_generating_set(p: Theorem13Params, mode: Mode) -> Result<Theorem13Construction, ConstructionError> {
    let Theorem13Params { r, x, y } = p;
    let outer = OuterFactor::new(r, x)?;
    if mode == Mode::Strict && !y_in_range(x, y) {
        return Err(ConstructionError::OutsideYRange { x, y, range: y_range(x) });
    }
    let twice = (r * (r - 1) + 2 * y)
        .checked_sub(r * x)
        .ok_or_else(|| ConstructionError::Parameters("target c is negative".into()))?;
    if twice % 2 == 1 {
        return Err(ConstructionError::NonIntegralTarget { r, x, y });
    }
    let target_c = twice / 2;
    let k = target_c
        .checked_sub(outer.triangles())
        .ok_or(ConstructionError::InnerUnreachable { degree: outer.inner_degree, k: -1 })?;
    let inner = if outer.inner_degree == 0 && k == 0 {
        None
    } else {
        let plan = clique_product_decompose(outer.inner_degree, k)
            .map_err(|_| ConstructionError::InnerUnreachable { degree: outer.inner_degree, k: k as i64 })?
            .ok_or(ConstructionError::InnerUnreachable { degree: outer.inner_degree, k: k as i64 })?;
        Some(plan)
    };
    let set = product_with_inner(&outer.set()?, inner.as_ref())?;
    let count = additive_triples(&set).count;
    let achieved_c = count / 2;
    if count % 2 == 1 || achieved_c != target_c || set.len() as u64 != r {
        return Err(ConstructionError::Unverified(format!(
            "degree {} with c = {achieved_c}, expected degree {r} with c = {target_c}",
            set.len()
        )));
    }
    Ok(Theorem13Construction { params: p, outer, inner, k, target_c, achieved_c, set })
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseShape {
    pub r: u64,
    pub x: u64,
    pub case: u8,
    pub k: u64,
    pub achieved_c: u64,
    pub measured_offset_times8: i128,
    pub stated_offset_times8: i128,
}

impl CaseShape {
    pub fn offset_matches(&self) -> bool {
        self.measured_offset_times8 == self.stated_offset_times8
    }
}

/// Builds the case shape with an explicit inner factor and measures the offset by counting.
pub fn case_shape(r: u64, x: u64, inner: Option<&CliqueProductPlan>) -> Result<CaseShape, ConstructionError> {
    let outer = OuterFactor::new(r, x)?;
    let inner_degree = inner.map_or(0, CliqueProductPlan::degree);
    if inner_degree != outer.inner_degree {
        return Err(ConstructionError::Parameters(format!(
            "inner factor has degree {inner_degree}, case {} needs {}",
            outer.case, outer.inner_degree
        )));
    }
    let k = inner.map_or(0, CliqueProductPlan::triangles);
    let set = product_with_inner(&outer.set()?, inner)?;
    let achieved_c = additive_triples(&set).count / 2;
    Ok(CaseShape {
        r,
        x,
        case: outer.case,
        k,
        achieved_c,
        measured_offset_times8: measured_offset_times8(r, x, achieved_c, k),
        stated_offset_times8: stated_offset_times8(outer.case, x),
    })
}
