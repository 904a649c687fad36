//! Picard lattices of smooth quartic surfaces with Picard number two.
//!
//! Every lattice here is written in a basis `{H, W}` with `H` the hyperplane
//! class, so the Gram matrix is `((4, b), (b, 2c))` and the discriminant is
//! `r = b² - 8c`. A class `D = x·H + y·W` has degree `D·H = 4x + b·y` and
//! `4·D² = (D·H)² - r·y²`; this identity turns every question about classes
//! of given square and degree into a Pell equation.

use crate::error::{Error, Result};
use crate::lattice::{DivClass, GramLattice, Mat2};
use crate::pell::{self, PellQuery};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// `{H, W}` lattice with `H² = 4`, `H·W = b`, `W² = 2c`; `r = b² - 8c > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticLattice {
    #[serde(with = "crate::json")]
    pub b: BigInt,
    #[serde(with = "crate::json")]
    pub c: BigInt,
}

/// Genus and degree of a curve class: `g = D²/2 + 1`, `d = D·H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GDPair {
    #[serde(with = "crate::json")]
    pub g: BigInt,
    #[serde(with = "crate::json")]
    pub d: BigInt,
}

impl GDPair {
    pub fn new(g: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        GDPair { g: g.into(), d: d.into() }
    }

    /// Discriminant of `⟨H, C⟩`: `d² - 8(g - 1)`.
    pub fn rprime(&self) -> BigInt {
        &self.d * &self.d - (&self.g - 1) * 8
    }
}

impl fmt::Display for GDPair {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.d)
    }
}

impl QuarticLattice {
    pub fn new(b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let l = QuarticLattice { b: b.into(), c: c.into() };
        if !l.r().is_positive() {
            return Err(Error::NonPositiveDiscriminant(l.r()));
        }
        Ok(l)
    }

    /// The model with the least `b ≥ 0` such that `b² ≡ r (mod 8)`.
    pub fn canonical(r: impl Into<BigInt>) -> Result<Self> {
        let r = r.into();
        check_residue(&r)?;
        let b = (0..4).map(BigInt::from).find(|b| (b * b - &r).is_multiple_of(&BigInt::from(8))).unwrap();
        let c = (&b * &b - &r) / 8;
        QuarticLattice::new(b, c)
    }

    /// The model in the basis `{H, C}` for a curve class of the given type.
    pub fn from_curve(gd: &GDPair) -> Result<Self> {
        QuarticLattice::new(gd.d.clone(), &gd.g - 1)
    }

    /// Same lattice in the basis `{H, W + k·H}`.
    pub fn shifted(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        QuarticLattice { b: &self.b + &k * 4, c: &self.c + &k * &self.b + &k * &k * 2 }
    }

    /// Same lattice in the basis `{H, -W}`.
    pub fn flipped(&self) -> Self {
        QuarticLattice { b: -&self.b, c: self.c.clone() }
    }

    pub fn r(&self) -> BigInt {
        &self.b * &self.b - &self.c * 8
    }

    pub fn gram(&self) -> GramLattice {
        GramLattice::new(4, self.b.clone(), &self.c * 2)
    }

    pub fn h() -> DivClass {
        DivClass::new(1, 0)
    }

    pub fn degree(&self, d: &DivClass) -> BigInt {
        &d.x * 4 + &self.b * &d.y
    }

    pub fn square(&self, d: &DivClass) -> BigInt {
        self.gram().square(d)
    }

    pub fn pairing(&self, u: &DivClass, v: &DivClass) -> BigInt {
        self.gram().pairing(u, v)
    }

    /// `r ∉ {1, 4, 8}`: no forbidden class, so a smooth quartic can carry it.
    pub fn is_admissible(&self) -> bool {
        !matches!(i64::try_from(self.r()), Ok(1 | 4 | 8))
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::ForbiddenDiscriminant(self.r()))
        }
    }

    /// Re-expresses the lattice in the basis `{H, C}`; `C` must complete `H`
    /// to a basis (`C·H = b', C² = 2c'`, `y = ±1`).
    pub fn rebased(&self, c: &DivClass) -> Result<(QuarticLattice, Mat2)> {
        let p = Mat2::from_columns(&QuarticLattice::h(), c);
        let bc = self.gram().change_basis(&p)?;
        if !bc.is_full_rank_sublattice() {
            return Err(Error::NotUnimodular(p.det()));
        }
        let l = QuarticLattice { b: bc.lattice.q12.clone(), c: &bc.lattice.q22 / 2 };
        Ok((l, p))
    }
}

pub fn check_residue(r: &BigInt) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::NonPositiveDiscriminant(r.clone()));
    }
    let m = r.mod_floor(&BigInt::from(8));
    if !(m.is_zero() || m.is_one() || m == BigInt::from(4)) {
        return Err(Error::BadResidue(r.clone()));
    }
    Ok(())
}

/// All classes with `D² = k` and `D·H = t`, ordered `y > 0` first.
///
/// `y` is fixed up to sign by `r·y² = t² - 4k`, so the answer has at most
/// two elements. For `t = 0` each class is returned with `x > 0` (or `y > 0`).
pub fn classes_with(l: &QuarticLattice, k: &BigInt, t: &BigInt) -> Vec<DivClass> {
    let num: BigInt = t * t - k * 4u32;
    let r = l.r();
    let mut out: Vec<DivClass> = Vec::new();
    if num.is_negative() || !num.is_multiple_of(&r) || !pell::is_square(&(&num / &r)) {
        return out;
    }
    let y0 = pell::isqrt(&(&num / &r));
    let ys = if y0.is_zero() { vec![y0] } else { vec![y0.clone(), -y0] };
    for y in ys {
        let n = t - &l.b * &y;
        if n.is_multiple_of(&BigInt::from(4)) {
            let mut d = DivClass { x: n / 4, y };
            if t.is_zero() && (d.x.is_negative() || (d.x.is_zero() && d.y.is_negative())) {
                d = d.neg();
            }
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

/// A forbidden class for `r ∈ {1, 4, 8}`: `E` with `(E², E·H)` one of
/// `(0, 1)`, `(0, 2)`, `(-2, 0)`, tried in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenWitness {
    pub class: DivClass,
    #[serde(with = "crate::json")]
    pub square: BigInt,
    #[serde(with = "crate::json")]
    pub degree: BigInt,
}

pub fn forbidden_small_disc(l: &QuarticLattice) -> Option<ForbiddenWitness> {
    for (k, t) in [(0, 1), (0, 2), (-2, 0)] {
        let (k, t) = (BigInt::from(k), BigInt::from(t));
        if let Some(e) = classes_with(l, &k, &t).into_iter().next() {
            return Some(ForbiddenWitness { class: e, square: k, degree: t });
        }
    }
    None
}

pub fn genus_degree(l: &QuarticLattice, c: &DivClass) -> Result<GDPair> {
    let sq = l.square(c);
    let d = l.degree(c);
    if sq.is_odd() {
        return Err(Error::OddSquare(sq));
    }
    if !d.is_positive() || sq < BigInt::from(-2) {
        return Err(Error::NotACurve(format!("{c}: D.H = {d}, D^2 = {sq}")));
    }
    Ok(GDPair { g: sq / 2 + 1, d })
}

/// A class with `D² = k`, normalized to `D·H ≥ 0`. With `nonzero` the
/// zero class is excluded (only relevant for `k = 0`).
///
/// Solutions of `x² - r·y² = 4k` give classes `((x - b·y)/4, y)` whenever
/// `x ≡ b·y (mod 4)`; since `(x - by)(x + by) ≡ 0 (mod 8)`, one of `±x`
/// always satisfies this, so solvability of the Pell equation decides.
pub fn class_with_square_exists(l: &QuarticLattice, k: &BigInt, nonzero: bool) -> Result<Option<DivClass>> {
    if k.is_odd() {
        return Err(Error::OddTarget(k.clone()));
    }
    if k.is_zero() && !nonzero {
        return Ok(Some(DivClass::new(0, 0)));
    }
    let Some(s) = pell::find_solution(&PellQuery { r: l.r(), n: k * 4 })? else {
        return Ok(None);
    };
    let four = BigInt::from(4);
    for (x, y) in [(s.x.clone(), s.y.clone()), (s.x.clone(), -&s.y), (-&s.x, s.y.clone()), (-&s.x, -&s.y)] {
        let n = &x - &l.b * &y;
        if n.is_multiple_of(&four) {
            let d = DivClass { x: n / 4, y };
            return Ok(Some(if l.degree(&d).is_negative() { d.neg() } else { d }));
        }
    }
    unreachable!("x ≡ ±b·y (mod 4) for every solution")
}

/// A class of the given genus and degree, if one exists.
pub fn find_curve_class(l: &QuarticLattice, target: &GDPair) -> Option<DivClass> {
    if target.g.is_negative() || !target.d.is_positive() {
        return None;
    }
    let k = (&target.g - 1) * 2;
    let mut cs = classes_with(l, &k, &target.d);
    // The `y = -1` class comes first for index-one curves: `((b + d)/4, -1)`.
    cs.reverse();
    cs.into_iter().next()
}

/// Ampleness of a degree-two class `A` (`A² = 2`, `A·H > 0`, `A` nef):
/// the generator `v` of `A⊥` must not be a (-2)-class, and `r` must not be
/// a square (an isotropic class `A + v` would exist otherwise).
pub fn degree_two_class_is_ample(l: &QuarticLattice, a: &DivClass) -> bool {
    let q = l.gram().matrix();
    let w = q.apply(a);
    let v = DivClass { x: w.y.clone(), y: -&w.x }.primitive();
    l.square(&v) != BigInt::from(-2) && !pell::is_square(&l.r())
}

/// Ampleness of an arbitrary class `X` with `H` ample: `X` lies in the
/// positive cone on the side of `H` and pairs positively with every
/// effective (-2)-class.
///
/// A root `δ` with `δ·H = t > 0` and `δ·X ≤ 0` needs
/// `t²·X² ≤ 2(X·H)² - 8X²`, so only finitely many degrees are checked.
pub fn is_ample_class(l: &QuarticLattice, x: &DivClass) -> bool {
    let sq = l.square(x);
    let xh = l.degree(x);
    if !sq.is_positive() || !xh.is_positive() {
        return false;
    }
    let rhs = &xh * &xh * 2 - &sq * 8;
    // Roots of degree t are ((t - b·y)/4, y) with t² - r·y² = -8.
    let t_max = pell::isqrt(&(&rhs / &sq));
    let roots = pell::solutions_with_x_up_to(&PellQuery { r: l.r(), n: BigInt::from(-8) }, &t_max)
        .expect("r > 0 and n ≠ 0");
    roots.iter().filter(|s| s.x.is_positive() && (&s.x - &l.b * &s.y).is_multiple_of(&BigInt::from(4))).all(|s| {
        let delta = DivClass { x: (&s.x - &l.b * &s.y) / 4, y: s.y.clone() };
        l.pairing(&delta, x).is_positive()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutTag {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "Z2")]
    Z2,
    #[serde(rename = "Z2*Z2")]
    Z2StarZ2,
    #[serde(rename = "Z")]
    Z,
}

impl fmt::Display for AutTag {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            AutTag::Trivial => "trivial",
            AutTag::Z2 => "Z2",
            AutTag::Z2StarZ2 => "Z2*Z2",
            AutTag::Z => "Z",
        })
    }
}

/// The two predicates the trichotomy is read from, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPredicates {
    /// A nonzero class with square `-2` or `0`.
    pub small_class: Option<DivClass>,
    /// An ample class with square `2`.
    pub ample_two: Option<DivClass>,
}

impl AutPredicates {
    pub fn tag(&self) -> AutTag {
        match (self.small_class.is_some(), self.ample_two.is_some()) {
            (true, false) => AutTag::Trivial,
            (true, true) => AutTag::Z2,
            (false, true) => AutTag::Z2StarZ2,
            (false, false) => AutTag::Z,
        }
    }
}

pub fn aut_predicates(l: &QuarticLattice) -> Result<AutPredicates> {
    l.require_admissible()?;
    let small_class = match class_with_square_exists(l, &BigInt::from(-2), true)? {
        Some(d) => Some(d),
        None => class_with_square_exists(l, &BigInt::zero(), true)?,
    };
    let ample_two = class_with_square_exists(l, &BigInt::from(2), true)?
        .filter(|a| small_class.is_none() || degree_two_class_is_ample(l, a));
    Ok(AutPredicates { small_class, ample_two })
}

/// Automorphism group type with generators acting on `{H, W}` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutKind {
    pub tag: AutTag,
    pub generators: Vec<Mat2>,
}

pub fn classify_aut(l: &QuarticLattice) -> Result<AutKind> {
    let tag = aut_predicates(l)?.tag();
    let generators = crate::isometry::aut_generators(l)?;
    Ok(AutKind { tag, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ql(b: i64, c: i64) -> QuarticLattice {
        QuarticLattice::new(b, c).unwrap()
    }

    #[test]
    fn canonical_models() {
        assert_eq!(QuarticLattice::canonical(41).unwrap(), ql(1, -5));
        assert_eq!(QuarticLattice::canonical(48).unwrap(), ql(0, -6));
        assert_eq!(QuarticLattice::canonical(28).unwrap(), ql(2, -3));
        assert!(matches!(QuarticLattice::canonical(42), Err(Error::BadResidue(_))));
        assert!(matches!(QuarticLattice::canonical(0), Err(Error::NonPositiveDiscriminant(_))));
    }

    #[test]
    fn shifts_preserve_r() {
        let l = ql(1, -2);
        for k in -3..=3 {
            assert_eq!(l.shifted(k).r(), l.r());
        }
        assert_eq!(l.flipped().r(), l.r());
    }

    #[test]
    fn curve_classes() {
        assert_eq!(find_curve_class(&ql(8, 1), &GDPair::new(2, 8)), Some(DivClass::new(4, -1)));
        assert_eq!(find_curve_class(&ql(4, -4), &GDPair::new(3, 8)), Some(DivClass::new(3, -1)));
        assert_eq!(find_curve_class(&ql(1, -2), &GDPair::new(14, 11)), Some(DivClass::new(3, -1)));
        assert_eq!(find_curve_class(&ql(1, -2), &GDPair::new(3, 8)), None);
    }

    #[test]
    fn genus_degree_rules() {
        let l = ql(8, 1);
        assert_eq!(genus_degree(&l, &DivClass::new(0, 1)).unwrap(), GDPair::new(2, 8));
        assert!(genus_degree(&l, &DivClass::new(-1, 0)).is_err());
    }

    #[test]
    fn forbidden_witnesses() {
        let w = forbidden_small_disc(&ql(3, 1)).unwrap();
        assert_eq!((w.class, w.square, w.degree), (DivClass::new(1, -1), 0.into(), 1.into()));
        let w = forbidden_small_disc(&ql(2, 0)).unwrap();
        assert_eq!((w.class, w.square, w.degree), (DivClass::new(0, 1), 0.into(), 2.into()));
        let w = forbidden_small_disc(&ql(4, 1)).unwrap();
        assert_eq!((w.class, w.square, w.degree), (DivClass::new(1, -1), (-2).into(), 0.into()));
        assert!(forbidden_small_disc(&ql(1, -2)).is_none());
    }

    #[test]
    fn square_classes() {
        let d = class_with_square_exists(&ql(1, -2), &BigInt::from(-2), true).unwrap().unwrap();
        assert_eq!(d, DivClass::new(1, -1));
        assert!(class_with_square_exists(&ql(1, -2), &BigInt::from(3), true).is_err());
        assert_eq!(class_with_square_exists(&ql(1, -2), &BigInt::zero(), true).unwrap(), None);
    }

    #[test]
    fn trichotomy_examples() {
        assert_eq!(aut_predicates(&ql(1, -5)).unwrap().tag(), AutTag::Z2);
        assert_eq!(aut_predicates(&ql(6, 1)).unwrap().tag(), AutTag::Z2StarZ2);
        assert_eq!(aut_predicates(&ql(4, -4)).unwrap().tag(), AutTag::Z);
        assert_eq!(aut_predicates(&ql(1, -1)).unwrap().tag(), AutTag::Trivial);
        assert!(matches!(aut_predicates(&ql(3, 1)), Err(Error::ForbiddenDiscriminant(_))));
    }

    #[test]
    fn ampleness_tests_agree_on_h() {
        let l = ql(1, -2);
        assert!(is_ample_class(&l, &QuarticLattice::h()));
        assert!(!is_ample_class(&l, &QuarticLattice::h().neg()));
    }
}
