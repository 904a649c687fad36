//! Generalized Pell equations `x² - r·y² = n` with `r > 0`.
//!
//! For non-square `r` the solver enumerates one representative per solution
//! class (Lagrange-Matthews-Mollin, driven by the PQa continued fraction
//! expansion of `(P0 + √r)/Q0`) and then walks each class along the
//! fundamental unit. For square `r = t²` the equation factors as
//! `(x - ty)(x + ty) = n` and is settled by divisor enumeration.
//!
//! Every returned solution is re-checked against the equation.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellQuery {
    pub r: BigInt,
    pub n: BigInt,
}

impl PellQuery {
    pub fn new(r: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        PellQuery { r: r.into(), n: n.into() }
    }

    fn check(&self) -> Result<()> {
        if !self.r.is_positive() {
            return Err(Error::NonPositiveDiscriminant(self.r.clone()));
        }
        Ok(())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x - &self.r * y * y
    }

    pub fn satisfied_by(&self, s: &PellSolution) -> bool {
        self.eval(&s.x, &s.y) == self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "crate::json")]
    pub x: BigInt,
    #[serde(with = "crate::json")]
    pub y: BigInt,
}

impl PellSolution {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        PellSolution { x: x.into(), y: y.into() }
    }

    fn abs(&self) -> Self {
        PellSolution { x: self.x.abs(), y: self.y.abs() }
    }

    /// Ordering key: `|y|`, then `y`, then `x`.
    fn key(&self) -> (BigInt, BigInt, BigInt) {
        (self.y.abs(), self.y.clone(), self.x.clone())
    }
}

pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// Whether `x² - r·y² = n` has an integer solution other than `(0, 0)`.
///
/// With the trivial solution excluded, `n = 0` asks for `y ≠ 0`, which
/// happens exactly when `r` is a square.
pub fn has_solution(q: &PellQuery) -> Result<bool> {
    Ok(find_solution(q)?.is_some())
}

/// A witness of minimal `|y|` (then minimal `|x|`), returned with `x, y ≥ 0`.
pub fn find_solution(q: &PellQuery) -> Result<Option<PellSolution>> {
    q.check()?;
    let best = all_class_minima(q)?.into_iter().map(|s| s.abs()).min_by_key(|s| (s.y.clone(), s.x.clone()));
    debug_assert!(best.as_ref().is_none_or(|s| q.satisfied_by(s)));
    Ok(best)
}

/// A solution with `y > 0` minimal and `x ≥ 0`, if one exists.
pub fn minimal_nonzero_y(q: &PellQuery) -> Result<Option<PellSolution>> {
    q.check()?;
    let mut cands: Vec<PellSolution> = Vec::new();
    if is_square(&q.r) {
        cands = square_solutions(q);
    } else if !q.n.is_zero() {
        let unit = Units::of(&q.r).plus;
        for m in class_minima(q) {
            cands.push(mul(&m, &unit, &q.r));
            cands.push(mul(&m, &conj(&unit), &q.r));
            cands.push(m);
        }
    }
    Ok(cands.into_iter().filter(|s| !s.y.is_zero()).map(|s| s.abs()).min_by_key(|s| (s.y.clone(), s.x.clone())))
}

/// For non-square `r` and `n ≠ 0`: the member of least `|y|` in every
/// solution class together with its two unit neighbours, as `x, y ≥ 0`.
/// The two smallest solutions of every class are among these.
pub fn class_minima_and_neighbours(q: &PellQuery) -> Result<Vec<PellSolution>> {
    q.check()?;
    if is_square(&q.r) || q.n.is_zero() {
        return Err(Error::SquareDiscriminant(q.r.clone()));
    }
    let unit = Units::of(&q.r).plus;
    let mut out = Vec::new();
    for m in class_minima(q) {
        out.push(mul(&m, &unit, &q.r).abs());
        out.push(mul(&m, &conj(&unit), &q.r).abs());
        out.push(m.abs());
    }
    out.sort_by_key(PellSolution::key);
    out.dedup();
    Ok(out)
}

/// All solutions with `|y| ≤ bound`, ordered by `|y|`, then `y`, then `x`.
pub fn solutions_up_to(q: &PellQuery, bound: &BigInt) -> Result<Vec<PellSolution>> {
    q.check()?;
    let mut out = Vec::new();
    let mut y = -bound.clone();
    while &y <= bound {
        let v = &q.n + &q.r * &y * &y;
        if is_square(&v) {
            let s = v.sqrt();
            if !s.is_zero() {
                out.push(PellSolution { x: -&s, y: y.clone() });
            }
            out.push(PellSolution { x: s, y: y.clone() });
        }
        y += 1;
    }
    out.sort_by_key(PellSolution::key);
    Ok(out)
}

/// All solutions with `|x| ≤ bound` for `n ≠ 0`, ordered by `|y|`, then
/// `y`, then `x`.
///
/// Along a class orbit `|y|` (and with it `|x|`) grows in both directions
/// from the class minimum, so each walk stops at the first `|x|` past the
/// bound.
pub fn solutions_with_x_up_to(q: &PellQuery, bound: &BigInt) -> Result<Vec<PellSolution>> {
    q.check()?;
    if q.n.is_zero() {
        return Err(Error::SearchExhausted("x² = r·y² has unboundedly many solutions".into()));
    }
    let mut out = Vec::new();
    if is_square(&q.r) {
        out = square_solutions(q).into_iter().filter(|s| s.x.abs() <= *bound).collect();
    } else {
        let unit = Units::of(&q.r).plus;
        for m in class_minima(q) {
            for start in [m.clone(), conj(&m), PellSolution { x: -&m.x, y: m.y.clone() }, PellSolution { x: -&m.x, y: -&m.y }] {
                if start.x.abs() > *bound {
                    continue;
                }
                for step in [&unit, &conj(&unit)] {
                    let mut s = mul(&start, step, &q.r);
                    while s.x.abs() <= *bound {
                        out.push(s.clone());
                        s = mul(&s, step, &q.r);
                    }
                }
                out.push(start);
            }
        }
    }
    out.sort_by_key(PellSolution::key);
    out.dedup();
    Ok(out)
}

/// Fundamental units of `Z[√d]` for non-square `d > 0`: the least solution
/// of `x² - d·y² = 1` with `x, y > 0`, and the least solution of the
/// negative equation when it is solvable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Units {
    pub plus: PellSolution,
    pub minus: Option<PellSolution>,
}

impl Units {
    pub fn of(d: &BigInt) -> Units {
        debug_assert!(d.is_positive() && !is_square(d));
        let mut st = Pqa::new(BigInt::zero(), BigInt::one(), d.clone());
        loop {
            st.step();
            if st.q.is_one() {
                let s = PellSolution { x: st.g1.clone(), y: st.b1.clone() };
                return if st.i % 2 == 1 {
                    let plus = mul(&s, &s, d);
                    Units { plus, minus: Some(s) }
                } else {
                    Units { plus: s, minus: None }
                };
            }
        }
    }
}

fn mul(s: &PellSolution, u: &PellSolution, d: &BigInt) -> PellSolution {
    PellSolution { x: &s.x * &u.x + d * &s.y * &u.y, y: &s.x * &u.y + &s.y * &u.x }
}

fn conj(u: &PellSolution) -> PellSolution {
    PellSolution { x: u.x.clone(), y: -&u.y }
}

/// PQa state at index `i`: `(P_i, Q_i)` and the convergent
/// `(G_{i-1}, B_{i-1})`, with `G_{i-1}² - d·B_{i-1}² = (-1)^i·Q_i·Q_0`.
struct Pqa {
    d: BigInt,
    s: BigInt,
    p: BigInt,
    q: BigInt,
    g1: BigInt,
    g2: BigInt,
    b1: BigInt,
    b2: BigInt,
    i: usize,
}

impl Pqa {
    fn new(p0: BigInt, q0: BigInt, d: BigInt) -> Self {
        debug_assert!((&d - &p0 * &p0).is_multiple_of(&q0));
        let s = d.sqrt();
        Pqa { g1: q0.clone(), g2: -&p0, b1: BigInt::zero(), b2: BigInt::one(), d, s, p: p0, q: q0, i: 0 }
    }

    fn partial_quotient(&self) -> BigInt {
        // √d is irrational, so the floor only depends on ⌊√d⌋.
        if self.q.is_positive() {
            (&self.p + &self.s).div_floor(&self.q)
        } else {
            (&self.p + &self.s + 1u32).div_floor(&self.q)
        }
    }

    fn step(&mut self) {
        let a = self.partial_quotient();
        let g = &a * &self.g1 + &self.g2;
        let b = &a * &self.b1 + &self.b2;
        self.g2 = std::mem::replace(&mut self.g1, g);
        self.b2 = std::mem::replace(&mut self.b1, b);
        let p = &a * &self.q - &self.p;
        let q = (&self.d - &p * &p) / &self.q;
        self.p = p;
        self.q = q;
        self.i += 1;
    }
}

/// One solution per class of `x² - d·y² = n`, `d` non-square, `n ≠ 0`.
fn class_representatives(d: &BigInt, n: &BigInt) -> Vec<PellSolution> {
    let units = Units::of(d);
    let abs_n = n.abs();
    let mut out = Vec::new();
    let mut f = BigInt::one();
    while &f * &f <= abs_n {
        let f2 = &f * &f;
        if abs_n.is_multiple_of(&f2) {
            let m = n / &f2;
            let am = m.abs();
            let mut z: BigInt = -((&am - 1u32) / 2u32);
            let hi = &am / 2;
            while z <= hi {
                if (&z * &z - d).is_multiple_of(&am) {
                    scan_expansion(d, &m, &f, &z, &units, &mut out);
                }
                z += 1;
            }
        }
        f += 1;
    }
    out
}

fn scan_expansion(d: &BigInt, m: &BigInt, f: &BigInt, z: &BigInt, units: &Units, out: &mut Vec<PellSolution>) {
    let mut st = Pqa::new(z.clone(), m.abs(), d.clone());
    let mut seen = HashSet::new();
    loop {
        if st.q.abs().is_one() {
            let s = PellSolution { x: st.g1.clone(), y: st.b1.clone() };
            let v = &s.x * &s.x - d * &s.y * &s.y;
            if v == *m {
                out.push(PellSolution { x: f * &s.x, y: f * &s.y });
            } else if v == -m {
                if let Some(u) = &units.minus {
                    let t = mul(&s, u, d);
                    out.push(PellSolution { x: f * &t.x, y: f * &t.y });
                }
            }
        }
        if !seen.insert((st.p.clone(), st.q.clone())) {
            break;
        }
        st.step();
    }
}

/// Walks a class along the unit to the member of least `|y|`.
/// `|y|` is unimodal along a unit orbit, so a local minimum is global.
fn orbit_minimum(s: &PellSolution, unit: &PellSolution, d: &BigInt) -> PellSolution {
    let inv = conj(unit);
    let mut cur = s.clone();
    loop {
        let up = mul(&cur, unit, d);
        let down = mul(&cur, &inv, d);
        if up.y.abs() < cur.y.abs() {
            cur = up;
        } else if down.y.abs() < cur.y.abs() {
            cur = down;
        } else {
            return cur;
        }
    }
}

fn class_minima(q: &PellQuery) -> Vec<PellSolution> {
    let unit = Units::of(&q.r).plus;
    class_representatives(&q.r, &q.n).iter().map(|s| orbit_minimum(s, &unit, &q.r)).collect()
}

/// Every finite candidate set the witness is chosen from.
fn all_class_minima(q: &PellQuery) -> Result<Vec<PellSolution>> {
    if is_square(&q.r) {
        return Ok(square_solutions(q).into_iter().filter(|s| !(s.x.is_zero() && s.y.is_zero())).collect());
    }
    if q.n.is_zero() {
        return Ok(Vec::new());
    }
    Ok(class_minima(q))
}

/// `r = t²`: all solutions when `n ≠ 0`, and the witness `(t, 1)` when `n = 0`.
fn square_solutions(q: &PellQuery) -> Vec<PellSolution> {
    let t = q.r.sqrt();
    if q.n.is_zero() {
        return vec![PellSolution { x: t, y: BigInt::one() }];
    }
    let abs_n = q.n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::one();
    while &p * &p <= abs_n {
        if abs_n.is_multiple_of(&p) {
            let e = &abs_n / &p;
            for (u, v) in [(p.clone(), e.clone()), (e.clone(), p.clone())] {
                for sign in [1, -1] {
                    // (x - ty, x + ty) = (sign·u, sign·v·n/|n|)
                    let lo: BigInt = &u * sign;
                    let hi: BigInt = &v * sign * q.n.signum();
                    let sum = &lo + &hi;
                    let diff = &hi - &lo;
                    let two_t = &t * 2;
                    if sum.is_even() && diff.is_multiple_of(&two_t) {
                        out.push(PellSolution { x: sum / 2, y: diff / two_t });
                    }
                }
            }
        }
        p += 1;
    }
    out.sort_by_key(PellSolution::key);
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(r: i64, n: i64) -> Option<(i64, i64)> {
        find_solution(&PellQuery::new(r, n))
            .unwrap()
            .map(|s| (s.x.try_into().unwrap(), s.y.try_into().unwrap()))
    }

    #[test]
    fn witnesses() {
        assert_eq!(w(17, 8), Some((5, 1)));
        assert_eq!(w(41, -8), Some((19, 3)));
        assert_eq!(w(20, 8), None);
        assert_eq!(w(25, 0), Some((5, 1)));
        assert_eq!(w(17, 0), None);
        assert_eq!(w(17, 4), Some((2, 0)));
    }

    #[test]
    fn units() {
        let u = Units::of(&BigInt::from(2));
        assert_eq!(u.plus, PellSolution::new(3, 2));
        assert_eq!(u.minus, Some(PellSolution::new(1, 1)));
        let u = Units::of(&BigInt::from(61));
        assert_eq!(u.plus, PellSolution::new(1766319049i64, 226153980i64));
        assert!(Units::of(&BigInt::from(3)).minus.is_none());
    }

    #[test]
    fn bounded_lists() {
        let l = solutions_up_to(&PellQuery::new(17, 8), &BigInt::from(1)).unwrap();
        let want: Vec<_> = [(-5, -1), (5, -1), (-5, 1), (5, 1)].iter().map(|&(x, y)| PellSolution::new(x, y)).collect();
        assert_eq!(l, want);
        assert!(solutions_up_to(&PellQuery::new(48, -8), &BigInt::from(10)).unwrap().is_empty());
        assert_eq!(solutions_up_to(&PellQuery::new(9, -8), &BigInt::from(1)).unwrap().len(), 4);
    }

    #[test]
    fn square_r_factorization() {
        assert_eq!(w(9, -8), Some((1, 1)));
        assert_eq!(w(16, 8), None);
        assert_eq!(w(1, 8), Some((3, 1)));
        assert_eq!(w(4, -12), Some((2, 2)));
    }

    #[test]
    fn minimal_nonzero() {
        let s = minimal_nonzero_y(&PellQuery::new(5, 4)).unwrap().unwrap();
        assert_eq!(s, PellSolution::new(3, 1));
        let s = minimal_nonzero_y(&PellQuery::new(12, 4)).unwrap().unwrap();
        assert_eq!(s, PellSolution::new(4, 1));
        let s = minimal_nonzero_y(&PellQuery::new(40, 4)).unwrap().unwrap();
        assert_eq!(s, PellSolution::new(38, 6));
    }

    #[test]
    fn rejects_nonpositive_r() {
        assert!(has_solution(&PellQuery::new(0, 1)).is_err());
        assert!(has_solution(&PellQuery::new(-5, 1)).is_err());
    }
}
