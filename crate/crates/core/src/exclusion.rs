//! Which discriminants can carry a Cremona-type automorphism, and the
//! exhaustion that rules out anti-flips starting from `P³`.
//!
//! The enumeration in [`antiflip_exhaustion`] works in `i128`: every
//! quantity is bounded by the search limits (`d, b < 16`, `r ≤ 233`), far
//! inside its range.

use crate::surface::GDPair;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Curve types `(g, d)` with `d ≤ 11` for which a link from `P³` exists;
/// `true` marks those used to realize automorphisms.
const CURVE_PAIRS: [(i64, i64, bool); 34] = [
    (0, 1, false),
    (0, 2, false),
    (0, 3, false),
    (0, 4, false),
    (0, 5, false),
    (0, 6, false),
    (0, 7, false),
    (1, 3, false),
    (1, 4, false),
    (1, 5, false),
    (1, 6, false),
    (1, 7, false),
    (2, 5, false),
    (2, 6, false),
    (2, 7, false),
    (2, 8, true),
    (3, 6, true),
    (3, 7, false),
    (3, 8, true),
    (4, 6, false),
    (4, 7, false),
    (4, 8, true),
    (5, 7, false),
    (5, 8, true),
    (6, 8, false),
    (6, 9, true),
    (7, 8, false),
    (7, 9, false),
    (8, 9, false),
    (9, 9, false),
    (10, 9, false),
    (10, 10, true),
    (11, 10, true),
    (14, 11, true),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePair {
    pub gd: GDPair,
    pub flagged: bool,
    #[serde(with = "crate::json")]
    pub rprime: BigInt,
}

pub fn curve_pairs() -> Vec<CurvePair> {
    CURVE_PAIRS
        .iter()
        .map(|&(g, d, flagged)| {
            let gd = GDPair::new(g, d);
            let rprime = gd.rprime();
            CurvePair { gd, flagged, rprime }
        })
        .collect()
}

/// Castelnuovo-type bound for curves on a smooth quartic: `8g < d²` or
/// `8(g - 1) = d²`, excluding `(3, 5)`.
pub fn is_realizable_type(g: i64, d: i64) -> bool {
    (8 * g < d * d || 8 * (g - 1) == d * d) && (g, d) != (3, 5)
}

/// `d² - 8(g - 1)` for every pair, in list order.
pub fn rprime_list() -> Vec<BigInt> {
    curve_pairs().into_iter().map(|p| p.rprime).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub bound: i64,
    /// `r ≡ 0, 1, 4 (mod 8)`, `8 < r ≤ bound`, dividing some `r'`.
    pub admissible: Vec<i64>,
    /// Same range and residues, dividing no `r'`.
    pub excluded: Vec<i64>,
}

pub fn exclusion_report(bound: i64) -> ExclusionReport {
    let rps: Vec<i64> = CURVE_PAIRS.iter().map(|&(g, d, _)| d * d - 8 * (g - 1)).collect();
    let (mut admissible, mut excluded) = (Vec::new(), Vec::new());
    for r in 9..=bound {
        if !matches!(r % 8, 0 | 1 | 4) {
            continue;
        }
        if rps.iter().any(|rp| rp % r == 0) {
            admissible.push(r);
        } else {
            excluded.push(r);
        }
    }
    ExclusionReport { bound, admissible, excluded }
}

/// Largest `r' = d² - 8(p_a - 1)` over `0 < d < 16`, `p_a ≥ 0`.
pub const ANTIFLIP_R_BOUND: i64 = 15 * 15 + 8;

/// A solution of the anti-flip system: a class `Γ = αH + βW` of square -2
/// with `H·Γ > 0` and `(4H - C)·Γ = -1`, where `C = δH + γW`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiflipHit {
    pub pa: i64,
    pub d: i64,
    pub b: i64,
    pub c: i64,
    pub gamma: i64,
    pub delta: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl AntiflipHit {
    /// `Γ` in the basis `{H, C}` when `γ | β` and `γ | βδ` hold.
    pub fn in_curve_basis(&self) -> Option<(i64, i64)> {
        let (g, be) = (self.gamma as i128, self.beta as i128);
        let (a, de) = (self.alpha as i128, self.delta as i128);
        if be % g == 0 && (be * de) % g == 0 {
            Some(((a - be * de / g) as i64, (be / g) as i64))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CellOutcome {
    pub configurations: u64,
    /// Configurations with `r ∈ {1, 4, 8}`, which no smooth quartic carries.
    pub forbidden: u64,
    pub hits: Vec<AntiflipHit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiflipReport {
    pub survivors: Vec<GDPair>,
    pub hits: Vec<AntiflipHit>,
    pub cells: u64,
    pub configurations: u64,
    pub forbidden_skipped: u64,
    pub r_bound: i64,
}

/// All `(p_a, d)` with `0 < d < 16`, `0 ≤ 8·p_a ≤ d²`.
pub fn antiflip_cells() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for d in 1..16i64 {
        for pa in 0..=(d * d / 8) {
            out.push((pa, d));
        }
    }
    out
}

fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut s = (n as f64).sqrt() as i128;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Integer roots of `A·β² + B·β + C0 = 0` (not all coefficients zero).
fn integer_roots(a: i128, b: i128, c0: i128) -> Vec<i128> {
    if a == 0 {
        return if b != 0 && c0 % b == 0 { vec![-c0 / b] } else { Vec::new() };
    }
    let disc = b * b - 4 * a * c0;
    let s = isqrt(disc);
    if s < 0 || s * s != disc {
        return Vec::new();
    }
    let mut out: Vec<i128> = [-b - s, -b + s].into_iter().filter(|n| n % (2 * a) == 0).map(|n| n / (2 * a)).collect();
    out.dedup();
    out
}

/// Every configuration `(b, γ, δ)` for one cell, and the solutions found.
///
/// Panics on a cell outside [`antiflip_cells`]: `r` and `γ²` divide into
/// `r'`, and the search is only complete while `r' ≤ ANTIFLIP_R_BOUND`.
pub fn solve_cell(pa: i64, d: i64) -> CellOutcome {
    let mut out = CellOutcome::default();
    let rprime = (d * d - 8 * (pa - 1)) as i128;
    assert!(
        (1..16).contains(&d) && pa >= 0 && (1..=ANTIFLIP_R_BOUND as i128).contains(&rprime),
        "cell (p_a, d) = ({pa}, {d}) has r' = {rprime} outside 1..={ANTIFLIP_R_BOUND}"
    );
    let e = (16 - d) as i128;
    for b in 1..16i128 {
        let mut g = 1i128;
        while g * g <= rprime {
            if rprime % (g * g) == 0 {
                let r = rprime / (g * g);
                if (b * b - r) % 8 == 0 {
                    let forbidden = matches!(r, 1 | 4 | 8);
                    let c = (b * b - r) / 8;
                    for gamma in [g, -g] {
                        if (d as i128 - b * gamma) % 4 != 0 {
                            continue;
                        }
                        let delta = (d as i128 - b * gamma) / 4;
                        if forbidden {
                            out.forbidden += 1;
                            continue;
                        }
                        out.configurations += 1;
                        let num = 4 * gamma * (4 * b - delta * b) + (rprime - gamma * gamma * b * b);
                        if num % (4 * gamma) != 0 {
                            continue;
                        }
                        let k = num / (4 * gamma);
                        // α = (-1 - kβ)/e substituted into 4α² + 2bαβ + 2cβ² = -2.
                        let qa = 4 * k * k - 2 * b * e * k + 2 * c * e * e;
                        let qb = 8 * k - 2 * b * e;
                        let qc = 4 + 2 * e * e;
                        for beta in integer_roots(qa, qb, qc) {
                            if (-1 - k * beta) % e != 0 {
                                continue;
                            }
                            let alpha = (-1 - k * beta) / e;
                            let ok = 4 * alpha + b * beta > 0
                                && 4 * alpha * alpha + 2 * b * alpha * beta + 2 * c * beta * beta == -2
                                && e * alpha + k * beta == -1;
                            if ok {
                                out.hits.push(AntiflipHit {
                                    pa,
                                    d,
                                    b: b as i64,
                                    c: c as i64,
                                    gamma: gamma as i64,
                                    delta: delta as i64,
                                    alpha: alpha as i64,
                                    beta: beta as i64,
                                });
                            }
                        }
                    }
                }
            }
            g += 1;
        }
    }
    out
}

pub fn antiflip_exhaustion() -> AntiflipReport {
    antiflip_exhaustion_over(&antiflip_cells())
}

/// The exhaustion over an explicit list of cells; the result does not depend
/// on their order.
pub fn antiflip_exhaustion_over(cells: &[(i64, i64)]) -> AntiflipReport {
    let mut survivors = BTreeSet::new();
    let mut hits = Vec::new();
    let (mut configurations, mut forbidden_skipped) = (0, 0);
    for &(pa, d) in cells {
        let o = solve_cell(pa, d);
        configurations += o.configurations;
        forbidden_skipped += o.forbidden;
        if !o.hits.is_empty() {
            survivors.insert(GDPair::new(pa, d));
        }
        hits.extend(o.hits);
    }
    hits.sort_by_key(|h| (h.d, h.pa, h.b, h.gamma, h.beta));
    AntiflipReport {
        survivors: survivors.into_iter().collect(),
        hits,
        cells: cells.len() as u64,
        configurations,
        forbidden_skipped,
        r_bound: ANTIFLIP_R_BOUND,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_realizable() {
        for p in curve_pairs() {
            let (g, d) = (i64::try_from(&p.gd.g).unwrap(), i64::try_from(&p.gd.d).unwrap());
            assert!(d <= 11 && is_realizable_type(g, d), "{}", p.gd);
        }
    }

    #[test]
    fn exclusion_of_52() {
        let rep = exclusion_report(57);
        assert_eq!(rep.admissible.len(), 18);
        assert_eq!(rep.excluded, vec![52]);
    }

    #[test]
    fn r_bound_is_attained() {
        let max = antiflip_cells().iter().map(|&(pa, d)| d * d - 8 * (pa - 1)).max().unwrap();
        assert_eq!(max, ANTIFLIP_R_BOUND);
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn cells_beyond_the_bound_are_rejected() {
        solve_cell(0, 16);
    }

    #[test]
    fn quadratic_roots() {
        assert_eq!(integer_roots(1, -3, 2), vec![1, 2]);
        assert_eq!(integer_roots(0, 2, -4), vec![2]);
        assert!(integer_roots(1, 0, 1).is_empty());
    }
}
