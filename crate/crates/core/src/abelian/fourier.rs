//! Characters `χ_t(x) = exp(2πi Σ t_j x_j / m_j)` and Fourier coefficients of set indicators.

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;

use super::group::{AbelianGroup, GroupElement, SymmetricSet};

/// Exact phase of `χ_t(x)` as a fraction of a full turn, reduced into `[-1/2, 1/2)`.
pub fn phase_turns(g: &AbelianGroup, t: &GroupElement, x: &GroupElement) -> Rational64 {
    let l = g.moduli().iter().fold(1i64, |acc, &m| acc.lcm(&(m as i64)));
    let mut num: i128 = 0;
    for ((&tj, &xj), &m) in t.0.iter().zip(&x.0).zip(g.moduli()) {
        num += (tj as i128 * xj as i128 % m as i128) * (l / m as i64) as i128;
    }
    let mut num = (num % l as i128) as i64;
    if 2 * num >= l {
        num -= l;
    }
    Rational64::new(num, l)
}

fn turns_to_radians(q: Rational64) -> f64 {
    2.0 * PI * (*q.numer() as f64) / (*q.denom() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    pub character: GroupElement,
    pub re: f64,
    pub im: f64,
}

/// `1̂_S(χ_t)` for one character.
pub fn coefficient(s: &SymmetricSet, t: &GroupElement) -> Coefficient {
    let g = s.group();
    let (mut re, mut im) = (0.0, 0.0);
    for x in s.members() {
        let theta = turns_to_radians(phase_turns(g, t, x));
        re += theta.cos();
        im += theta.sin();
    }
    Coefficient { character: t.clone(), re, im }
}

/// Coefficients for every character, in index order of `t`.
pub fn dft_indicator(s: &SymmetricSet) -> Vec<Coefficient> {
    let g = s.group();
    let order = g.order().expect("group order overflows") as usize;
    (0..order).into_par_iter().map(|i| coefficient(s, &g.element_at(i))).collect()
}

/// Largest real coefficient over nontrivial characters; ties go to the smallest index.
pub fn max_nontrivial_coefficient(s: &SymmetricSet) -> Option<Coefficient> {
    dft_indicator(s)
        .into_iter()
        .skip(1)
        .fold(None, |best: Option<Coefficient>, c| match best {
            Some(b) if b.re >= c.re - 1e-12 => Some(b),
            _ => Some(c),
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub max_imaginary: f64,
    /// Mean of `1̂_S(χ)^2` over all characters; equals `|S|` by Plancherel.
    pub plancherel_mean: f64,
}

pub fn spectrum_summary(coeffs: &[Coefficient]) -> SpectrumSummary {
    let max_imaginary = coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    let sum: f64 = coeffs.iter().map(|c| c.re * c.re + c.im * c.im).sum();
    SpectrumSummary { max_imaginary, plancherel_mean: sum / coeffs.len() as f64 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseHistogram {
    /// Exact phases `θ_x / 2π ∈ [-1/2, 1/2)`, one per member, sorted.
    pub turns: Vec<Rational64>,
}

impl PhaseHistogram {
    pub fn radians(&self) -> Vec<f64> {
        self.turns.iter().map(|&q| turns_to_radians(q)).collect()
    }

    /// Fraction of members with `|θ_x| ≤ theta` (radians).
    pub fn fraction_within(&self, theta: f64) -> f64 {
        if self.turns.is_empty() {
            return 0.0;
        }
        let k = self.radians().iter().filter(|a| a.abs() <= theta + 1e-12).count();
        k as f64 / self.turns.len() as f64
    }
}

pub fn character_phase_histogram(s: &SymmetricSet, chi: &GroupElement) -> PhaseHistogram {
    let mut turns: Vec<Rational64> = s.members().iter().map(|x| phase_turns(s.group(), chi, x)).collect();
    turns.sort();
    PhaseHistogram { turns }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(s: &SymmetricSet) -> Vec<f64> {
        dft_indicator(s).iter().map(|c| c.re).collect()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn z4_examples() {
        assert!(close(&res(&SymmetricSet::cyclic(4, &[2]).unwrap()), &[1.0, -1.0, 1.0, -1.0]));
        assert!(close(&res(&SymmetricSet::cyclic(4, &[1, 3]).unwrap()), &[2.0, 0.0, -2.0, 0.0]));
    }

    #[test]
    fn max_coefficients() {
        let s = SymmetricSet::cyclic(8, &[2, 4, 6]).unwrap();
        let m = max_nontrivial_coefficient(&s).unwrap();
        assert_eq!(m.character, GroupElement(vec![4]));
        assert!((m.re - 3.0).abs() < 1e-9);
        let k5 = SymmetricSet::cyclic(5, &[1, 2, 3, 4]).unwrap();
        assert!((max_nontrivial_coefficient(&k5).unwrap().re + 1.0).abs() < 1e-9);
        let c4 = SymmetricSet::cyclic(4, &[1, 3]).unwrap();
        assert!(max_nontrivial_coefficient(&c4).unwrap().re.abs() < 1e-9);
    }

    #[test]
    fn phases() {
        let s = SymmetricSet::cyclic(4, &[1, 3]).unwrap();
        let h = character_phase_histogram(&s, &GroupElement(vec![1]));
        assert_eq!(h.turns, vec![Rational64::new(-1, 4), Rational64::new(1, 4)]);
        let s = SymmetricSet::cyclic(8, &[2, 4, 6]).unwrap();
        let h = character_phase_histogram(&s, &GroupElement(vec![1]));
        assert_eq!(h.turns, vec![Rational64::new(-1, 2), Rational64::new(-1, 4), Rational64::new(1, 4)]);
        assert!((h.fraction_within(PI / 2.0) - 2.0 / 3.0).abs() < 1e-12);
        let ker = character_phase_histogram(&s, &GroupElement(vec![4]));
        assert!(ker.turns.iter().all(|q| *q == Rational64::from_integer(0)));
    }

    #[test]
    fn plancherel_mixed_group() {
        let g = AbelianGroup::new(vec![2, 6]).unwrap();
        let members = [vec![1, 0], vec![0, 1], vec![0, 5], vec![1, 3]].map(|v| g.element(v.to_vec()).unwrap());
        let s = SymmetricSet::new(g, members).unwrap();
        let summary = spectrum_summary(&dft_indicator(&s));
        assert!(summary.max_imaginary < 1e-9);
        assert!((summary.plancherel_mean - 4.0).abs() < 1e-9);
    }
}
