//! Flip sequences from products of clique and bipartite factors.

use serde::Serialize;

use crate::graph::families::{complete, complete_bipartite};
use crate::graph::{ColoredGraph, Edge, ProfileTerm};

use super::clique::binom2;
use super::flip_search::find_flip_graph;
use super::ConstructionError;

#[derive(Debug, Clone, Serialize)]
pub struct MaterializedCheck {
    pub factor: String,
    pub vertices: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipConstructionReport {
    pub factors: Vec<ProfileTerm>,
    pub total: ProfileTerm,
    /// `r[i] + c[i]` per color.
    pub closed: Vec<u64>,
    pub flip_valid: bool,
    pub checks: Vec<MaterializedCheck>,
}

impl FlipConstructionReport {
    fn new(t: usize, factors: Vec<ProfileTerm>, checks: Vec<MaterializedCheck>) -> Self {
        let total = ProfileTerm::sum(t, &factors);
        let closed = total.r.iter().zip(&total.c).map(|(a, b)| a + b).collect();
        let flip_valid = total.is_flip();
        FlipConstructionReport { factors, total, closed, flip_valid, checks }
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }
}

fn isqrt_ceil(a: u64) -> u64 {
    let mut q = (a as f64).sqrt() as u64;
    while q * q < a {
        q += 1;
    }
    while q > 0 && (q - 1) * (q - 1) >= a {
        q -= 1;
    }
    q
}

fn check(g: &ColoredGraph, term: &ProfileTerm) -> MaterializedCheck {
    let got = ProfileTerm::of_graph(g, "");
    MaterializedCheck {
        factor: term.description.clone(),
        vertices: g.vertex_count(),
        matches: got.is_some_and(|p| p.r == term.r && p.c == term.c),
    }
}

/// Two color-1 cliques `K_{m+1}` joined completely in color 2.
pub fn twin_cliques(m: usize, t: usize) -> ColoredGraph {
    let n = 2 * (m + 1);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let same = (a <= m) == (b <= m);
            edges.push(Edge::new(a, b, if same { 1 } else { 2 }));
        }
    }
    ColoredGraph::new(t, n, edges).expect("twin cliques are simple")
}

/// Degrees `(a1, a1 + 1, (a1 - 2⌈√a1⌉)²)`.
pub fn flip3_construction(a1: u64) -> Result<FlipConstructionReport, ConstructionError> {
    let q = isqrt_ceil(a1);
    let m = a1
        .checked_sub(2 * q)
        .filter(|&m| m >= 1)
        .ok_or_else(|| ConstructionError::SizeUnderflow(format!("a1 = {a1} leaves no room for the twin cliques")))?;
    let factors = vec![
        ProfileTerm::new(vec![m, m + 1, 0], vec![m * m, m * (m + 1), 0], format!("twin K_{}", m + 1)),
        ProfileTerm::new(vec![2 * q, 0, 0], vec![binom2(2 * q), 0, 0], format!("K_{}", 2 * q + 1)),
        ProfileTerm::new(vec![0, 2 * q, 0], vec![0; 3], format!("K_{{{0},{0}}}", 2 * q)),
        ProfileTerm::new(vec![0, 0, m * m], vec![0; 3], format!("K_{{{0},{0}}}", m * m)),
    ];
    let mut checks = vec![
        check(&twin_cliques(m as usize, 3), &factors[0]),
        check(&complete(2 * q as usize + 1, 1, 3), &factors[1]),
        check(&complete_bipartite(2 * q as usize, 2, 3), &factors[2]),
    ];
    if m * m <= 1024 {
        checks.push(check(&complete_bipartite((m * m) as usize, 3, 3), &factors[3]));
    }
    Ok(FlipConstructionReport::new(3, factors, checks))
}

/// `2s(t-1)` color-1 cliques `K_{8-t}`; the two halves joined completely, the join split evenly among colors `2..t`.
pub fn unbounded_layer(t: usize, s: usize) -> Result<ColoredGraph, ConstructionError> {
    if !(2..=7).contains(&t) || s == 0 {
        return Err(ConstructionError::Parameters(format!("need 2 <= t <= 7 and s >= 1, got t = {t}, s = {s}")));
    }
    let k = 8 - t;
    let half = s * (t - 1) * k;
    let mut edges = Vec::new();
    for q in 0..2 * s * (t - 1) {
        for a in 0..k {
            for b in a + 1..k {
                edges.push(Edge::new(q * k + a, q * k + b, 1));
            }
        }
    }
    // matching j pairs left i with right i + j
    for j in 0..half {
        let color = 2 + j % (t - 1);
        for i in 0..half {
            edges.push(Edge::new(i, half + (i + j) % half, color));
        }
    }
    Ok(ColoredGraph::new(t, 2 * half, edges)?)
}

pub fn unbounded_layer_profile(t: usize, s: u64) -> ProfileTerm {
    let k = (8 - t) as u64;
    let mut r = vec![s * k; t];
    let mut c = vec![s * k * k - s * k; t];
    r[0] = k - 1;
    c[0] = (s * (t as u64 - 1) + 1) * binom2(k) - (k - 1);
    ProfileTerm::new(r, c, format!("layer(t={t}, s={s})"))
}

/// A verified flip profile on `t` colors, with its provenance.
#[derive(Debug, Clone, Serialize)]
pub struct BaseFlip {
    pub profile: ProfileTerm,
    pub source: String,
}

/// Small flip graph from the search when one exists within budget; otherwise the
/// recursive profile construction (twin cliques for 3 colors, layers above).
pub fn base_flip(t: usize, n_max: usize, budget: u64) -> Result<BaseFlip, ConstructionError> {
    if let Some(g) = find_flip_graph(t, n_max, budget) {
        let profile = ProfileTerm::of_graph(&g, format!("searched flip graph on {} vertices", g.vertex_count()))
            .ok_or_else(|| ConstructionError::Unverified("searched flip graph is not uniform".into()))?;
        return Ok(BaseFlip { source: profile.description.clone(), profile });
    }
    let profile = match t {
        1 => ProfileTerm::new(vec![1], vec![0], "K_2"),
        2 => ProfileTerm::new(vec![3, 4], vec![3, 0], "K_4 □ K_{4,4}"),
        3 => flip3_construction(16)?.total,
        4..=6 => {
            let report = unbounded_flip_construction(t, None, n_max, budget)?;
            if !report.flip_valid {
                return Err(ConstructionError::NoFlipGraph { t });
            }
            report.total
        }
        _ => return Err(ConstructionError::NoFlipGraph { t }),
    };
    if !profile.is_flip() {
        return Err(ConstructionError::NoFlipGraph { t });
    }
    Ok(BaseFlip { source: format!("recursive profile {}", profile.description), profile })
}

fn shift_colors(p: &ProfileTerm, t: usize) -> ProfileTerm {
    let mut r = vec![0; t];
    let mut c = vec![0; t];
    r[1..].copy_from_slice(&p.r);
    c[1..].copy_from_slice(&p.c);
    ProfileTerm::new(r, c, p.description.clone())
}

/// Smallest `s` making layer □ base a flip profile, if any `s ≤ limit` works.
pub fn minimal_scale(t: usize, base: &ProfileTerm, limit: u64) -> Option<u64> {
    let shifted = shift_colors(base, t);
    (1..=limit).find(|&s| unbounded_layer_profile(t, s).add(&shifted).is_flip())
}

/// Layer of scale `s` (or the smallest working scale) times a flip graph on colors `2..t`.
pub fn unbounded_flip_construction(
    t: usize,
    scale: Option<u64>,
    n_max: usize,
    budget: u64,
) -> Result<FlipConstructionReport, ConstructionError> {
    if !(4..=6).contains(&t) {
        return Err(ConstructionError::Parameters(format!("t must be 4, 5 or 6, got {t}")));
    }
    let base = base_flip(t - 1, n_max, budget)?;
    let s = match scale {
        Some(s) if s >= 1 => s,
        Some(_) => return Err(ConstructionError::Parameters("scale must be positive".into())),
        None => minimal_scale(t, &base.profile, 1 << 20).ok_or(ConstructionError::NoFlipGraph { t })?,
    };
    let layer = unbounded_layer_profile(t, s);
    let checks = vec![check(&unbounded_layer(t, 1)?, &unbounded_layer_profile(t, 1))];
    let mut shifted = shift_colors(&base.profile, t);
    shifted.description = base.source;
    Ok(FlipConstructionReport::new(t, vec![layer, shifted], checks))
}

/// `(t-1) C(8-t, 2)` against `(8-t)²`.
pub fn dominance_margin(t: usize) -> (u64, u64) {
    let k = (8 - t) as u64;
    ((t as u64 - 1) * binom2(k), k * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip3_examples() {
        let r16 = flip3_construction(16).unwrap();
        assert_eq!(r16.total.r, vec![16, 17, 64]);
        assert_eq!(r16.closed, vec![108, 89, 64]);
        assert!(r16.flip_valid && r16.checks_pass());
        let r25 = flip3_construction(25).unwrap();
        assert_eq!(r25.total.r[2], 225);
        assert!(r25.flip_valid);
        let r9 = flip3_construction(9).unwrap();
        assert_eq!(r9.total.r, vec![9, 10, 9]);
        assert!(!r9.flip_valid);
        assert!(flip3_construction(4).is_err());
    }

    #[test]
    fn margins() {
        assert_eq!(dominance_margin(4), (18, 16));
        assert_eq!(dominance_margin(5), (12, 9));
        assert_eq!(dominance_margin(6), (5, 4));
    }

    #[test]
    fn layer_profile_matches_graph() {
        for t in 4..=6 {
            for s in 1..=2 {
                let g = unbounded_layer(t, s).unwrap();
                let p = ProfileTerm::of_graph(&g, "").unwrap();
                let want = unbounded_layer_profile(t, s as u64);
                assert_eq!((p.r, p.c), (want.r, want.c), "t={t} s={s}");
            }
        }
    }

    #[test]
    fn small_product_is_flip() {
        let base = ProfileTerm::new(vec![1, 2, 3], vec![5, 2, 0], "toy");
        let s = minimal_scale(4, &base, 100).unwrap();
        assert!(unbounded_layer_profile(4, s).add(&shift_colors(&base, 4)).is_flip());
    }
}
