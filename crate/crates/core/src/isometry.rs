//! Isometries of quartic Picard lattices and the two conditions under which
//! an isometry comes from an automorphism of the surface: it acts as `±1` on
//! the discriminant group (gluing) and it maps the ample cone to itself
//! (checked on `H`).
//!
//! Involutions are reflections `x ↦ (A·x)·A - x` along classes with `A² = 2`.
//! Infinite-order isometries of determinant one correspond to solutions of
//! `t² - D·u² = 4`, where `(A, B, C)` is the primitive part of `(2, b, c)`
//! and `D = B² - 4AC`; the matrix is `((t - Bu)/2, -Cu; Au, (t + Bu)/2)`.

use crate::error::{Error, Result};
use crate::lattice::{DivClass, Mat2};
use crate::pell::{self, PellQuery, PellSolution};
use crate::surface::{self, AutTag, QuarticLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An isometry of a quartic lattice, acting on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isometry {
    pub lattice: QuarticLattice,
    pub matrix: Mat2,
}

impl Isometry {
    pub fn new(lattice: QuarticLattice, matrix: Mat2) -> Result<Self> {
        if !is_isometry(&lattice, &matrix) {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry { lattice, matrix })
    }
}

pub fn is_isometry(l: &QuarticLattice, m: &Mat2) -> bool {
    l.gram().preserved_by(m)
}

/// `(m - I)·Q⁻¹` or `(m + I)·Q⁻¹` is integral.
pub fn gluing_ok(l: &QuarticLattice, m: &Mat2) -> bool {
    let q = l.gram().matrix();
    let det = q.det();
    let adj = q.adjugate();
    let id = Mat2::identity();
    (&m.sub(&id) * &adj).divisible_by(&det) || (&m.add(&id) * &adj).divisible_by(&det)
}

/// `m·H` is ample.
pub fn torelli_ok(l: &QuarticLattice, m: &Mat2) -> bool {
    surface::is_ample_class(l, &m.apply(&QuarticLattice::h()))
}

pub fn is_automorphism_action(l: &QuarticLattice, m: &Mat2) -> bool {
    is_isometry(l, m) && gluing_ok(l, m) && torelli_ok(l, m)
}

fn check_conic(l: &QuarticLattice, alpha: &BigInt, beta: &BigInt) -> Result<()> {
    if l.c.is_zero() {
        return Err(Error::ZeroC);
    }
    let lhs = &l.c * alpha * alpha - &l.b * alpha * beta + beta * beta * 2;
    if lhs != l.c {
        return Err(Error::NotOnConic(alpha.clone(), beta.clone()));
    }
    Ok(())
}

/// `((α, β), ((2β - bα)/c, -α))`, or `None` when that entry is not integral.
pub fn involution_form(l: &QuarticLattice, alpha: &BigInt, beta: &BigInt) -> Result<Option<Mat2>> {
    check_conic(l, alpha, beta)?;
    let num: BigInt = beta * 2u32 - &l.b * alpha;
    if !num.is_multiple_of(&l.c) {
        return Ok(None);
    }
    Ok(Some(Mat2::new(alpha.clone(), beta.clone(), num / &l.c, -alpha)))
}

/// `((α, β), (-2β/c, α - bβ/c))`, or `None` when not integral.
pub fn infinite_form(l: &QuarticLattice, alpha: &BigInt, beta: &BigInt) -> Result<Option<Mat2>> {
    check_conic(l, alpha, beta)?;
    let two_beta: BigInt = beta * 2u32;
    let b_beta = &l.b * beta;
    if !two_beta.is_multiple_of(&l.c) || !b_beta.is_multiple_of(&l.c) {
        return Ok(None);
    }
    Ok(Some(Mat2::new(alpha.clone(), beta.clone(), -(two_beta / &l.c), alpha - b_beta / &l.c)))
}

/// A point `(α, β)` with `α, β > 0` on `cα² - bαβ + 2β² = c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSolution {
    #[serde(with = "crate::json")]
    pub alpha: BigInt,
    #[serde(with = "crate::json")]
    pub beta: BigInt,
}

/// The solution whose [`infinite_form`] generates the integral
/// determinant-one isometries modulo `±1`: least trace `t > 2`, with the sign
/// of `u` chosen so that `β > 0`.
pub fn minimal_quadeq_solution(l: &QuarticLattice) -> Result<QuadSolution> {
    let r = l.r();
    if pell::is_square(&r) {
        return Err(Error::SquareDiscriminant(r));
    }
    let two = BigInt::from(2);
    let g = two.gcd(&l.b).gcd(&l.c);
    let (fa, fb, fc) = (&two / &g, &l.b / &g, &l.c / &g);
    let d = &r / (&g * &g);
    let PellSolution { x: t, y: u } = pell::minimal_nonzero_y(&PellQuery { r: d, n: BigInt::from(4) })?
        .expect("t² - D·u² = 4 is solvable for non-square D");
    let u = if fc.is_positive() { -u } else { u };
    let alpha = (&t - &fb * &u) / 2;
    let beta = -(&fc * &u);
    debug_assert_eq!(&fa * &u, -(&beta * 2u32) / &l.c);
    Ok(QuadSolution { alpha, beta })
}

/// Direct search over `0 < α ≤ cap` for the same solution: the least `α`
/// with `β > 0`, integral [`infinite_form`], and trace above 2.
pub fn minimal_quadeq_solution_search(l: &QuarticLattice, cap: u64) -> Result<QuadSolution> {
    if l.c.is_zero() {
        return Err(Error::ZeroC);
    }
    let r = l.r();
    for a in 1..=cap {
        let alpha = BigInt::from(a);
        // 2β² - bαβ + c(α² - 1) = 0, discriminant rα² + 8c.
        let disc = &r * &alpha * &alpha + &l.c * 8;
        if !pell::is_square(&disc) {
            continue;
        }
        let s = pell::isqrt(&disc);
        let mut betas: Vec<BigInt> = [&l.b * &alpha - &s, &l.b * &alpha + &s]
            .into_iter()
            .filter(|n: &BigInt| n.is_multiple_of(&BigInt::from(4)))
            .map(|n| n / 4)
            .filter(|beta: &BigInt| beta.is_positive())
            .collect();
        betas.sort();
        for beta in betas {
            if let Some(h) = infinite_form(l, &alpha, &beta)? {
                if h.trace() > BigInt::from(2) {
                    return Ok(QuadSolution { alpha, beta });
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!("no solution with alpha <= {cap}")))
}

/// Reflection along `A`: `x ↦ (A·x)·A - x`.
pub fn reflection(l: &QuarticLattice, a: &DivClass) -> Mat2 {
    let img = |e: DivClass| a.scale(&l.pairing(a, &e)).minus(&e);
    Mat2::from_columns(&img(DivClass::new(1, 0)), &img(DivClass::new(0, 1)))
}

/// Degree-two classes in order of increasing degree; includes the two
/// smallest members of every solution class of `x² - r·y² = 8`.
fn small_degree_two_classes(l: &QuarticLattice) -> Result<Vec<DivClass>> {
    let r = l.r();
    let q = PellQuery { r: r.clone(), n: BigInt::from(8) };
    let mut degrees: Vec<BigInt> = if pell::is_square(&r) {
        pell::find_solution(&q)?.into_iter().map(|s| s.x).collect()
    } else {
        pell::class_minima_and_neighbours(&q)?.into_iter().map(|s| s.x).collect()
    };
    degrees.sort();
    degrees.dedup();
    let two = BigInt::from(2);
    Ok(degrees.iter().flat_map(|t| surface::classes_with(l, &two, t)).collect())
}

/// Generators of the automorphism group, acting on `{H, W}` coordinates.
///
/// The order is deterministic: for two involutions, by degree of the fixed
/// class and then by its `W`-coordinate.
pub fn aut_generators(l: &QuarticLattice) -> Result<Vec<Mat2>> {
    let tag = surface::aut_predicates(l)?.tag();
    let gens = match tag {
        AutTag::Trivial => Vec::new(),
        AutTag::Z2 => {
            let a = small_degree_two_classes(l)?
                .into_iter()
                .find(|a| surface::is_ample_class(l, a))
                .ok_or_else(|| Error::SearchExhausted("no ample degree-two class".into()))?;
            vec![reflection(l, &a)]
        }
        AutTag::Z2StarZ2 => {
            let mut cs = small_degree_two_classes(l)?;
            cs.truncate(2);
            if cs.len() < 2 {
                return Err(Error::SearchExhausted("fewer than two degree-two classes".into()));
            }
            cs.sort_by_key(|a| (l.degree(a), a.y.clone(), a.x.clone()));
            cs.iter().map(|a| reflection(l, a)).collect()
        }
        AutTag::Z => {
            let s = minimal_quadeq_solution(l)?;
            let h = infinite_form(l, &s.alpha, &s.beta)?.expect("minimal solution has integral form");
            vec![h.pow(gluing_exponent(l, &h)?)]
        }
    };
    debug_assert!(gens.iter().all(|g| is_automorphism_action(l, g)));
    Ok(gens)
}

/// The least `k ≥ 1` with `h^k` satisfying gluing and ampleness.
///
/// Gluing depends only on `h^k mod det Q`, so powers are tracked reduced and
/// the exact power is formed only for candidates that glue.
pub fn gluing_exponent(l: &QuarticLattice, h: &Mat2) -> Result<u32> {
    // h^k acts on a discriminant group of order r; its automorphisms have order below r².
    let r = l.r();
    let cap = (&r * &r + 2u32).min(BigInt::from(1u32 << 20));
    let cap = u32::try_from(cap).unwrap();
    let det = l.gram().det();
    let hm = h.reduced(&det);
    let mut p = Mat2::identity();
    for k in 1..=cap {
        p = (&p * &hm).reduced(&det);
        if gluing_ok(l, &p) && torelli_ok(l, &h.pow(k)) {
            return Ok(k);
        }
    }
    Err(Error::SearchExhausted(format!("no power of h up to {cap} passes")))
}

/// `true` when `m` is `±I`.
pub fn is_plus_minus_identity(m: &Mat2) -> bool {
    let id = Mat2::identity();
    *m == id || *m == -&id
}

/// `m` has infinite order (hyperbolic: `|tr m| > 2` with `det m = 1`).
pub fn has_infinite_order(m: &Mat2) -> bool {
    m.det().is_one() && m.trace().abs() > BigInt::from(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ql(b: i64, c: i64) -> QuarticLattice {
        QuarticLattice::new(b, c).unwrap()
    }

    fn m(a: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_i64(a)
    }

    #[test]
    fn isometry_and_gluing_examples() {
        let l = ql(11, 13);
        let g = m([[19, 72], [-5, -19]]);
        assert!(is_isometry(&l, &g));
        assert!(!is_isometry(&l, &m([[1, 1], [0, 1]])));
        let q = l.gram().matrix();
        let map = &g.add(&Mat2::identity()) * &q.adjugate();
        assert!(map.divisible_by(&q.det()));
        assert!(gluing_ok(&l, &g));
        assert!(torelli_ok(&l, &g));
        assert!(!torelli_ok(&l, &-&Mat2::identity()));
    }

    #[test]
    fn involution_form_examples() {
        let l = ql(11, 13);
        let f = involution_form(&l, &19.into(), &72.into()).unwrap();
        assert_eq!(f, Some(m([[19, 72], [-5, -19]])));
        assert_eq!(involution_form(&l, &1.into(), &0.into()).unwrap(), None);
        let f = involution_form(&ql(8, 1), &(-1).into(), &0.into()).unwrap();
        assert_eq!(f, Some(m([[-1, 0], [8, 1]])));
        assert_eq!(involution_form(&ql(4, 0), &1.into(), &0.into()), Err(Error::ZeroC));
        assert!(matches!(involution_form(&l, &2.into(), &0.into()), Err(Error::NotOnConic(..))));
    }

    #[test]
    fn r48_generator_uses_its_own_basis() {
        let l = ql(8, 2);
        let h = m([[4, 1], [-1, 0]]);
        assert!(is_isometry(&l, &h));
        assert!(!is_isometry(&ql(4, -4), &h));
        assert_eq!(gluing_exponent(&l, &h).unwrap(), 4);
    }

    #[test]
    fn minimal_solutions_both_routes() {
        for (b, c, a, be) in [(10, 10, 4, 5), (8, 4, 7, 4), (8, 3, 43, 18), (8, 2, 4, 1), (10, 9, 23, 27), (8, 1, 31, 4)] {
            let l = ql(b, c);
            let want = QuadSolution { alpha: a.into(), beta: be.into() };
            assert_eq!(minimal_quadeq_solution(&l).unwrap(), want);
            assert_eq!(minimal_quadeq_solution_search(&l, 1_000_000).unwrap(), want);
        }
    }

    #[test]
    fn reflection_is_involution() {
        let l = ql(11, 13);
        let r = reflection(&l, &DivClass::new(4, -1));
        assert_eq!(r, m([[19, 72], [-5, -19]]));
        assert_eq!(&r * &r, Mat2::identity());
    }
}
