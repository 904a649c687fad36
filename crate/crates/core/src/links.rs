//! Sarkisov links starting from `P³` by blowing up a curve on the quartic,
//! and their action on the Picard lattice of the surface.
//!
//! A link blowing up a curve of type `(g, d)` with numerical data `(a, b, c)`
//! pulls the basis `{H⁺, C⁺}` of the image surface back to
//! `a·H - b·C` and `((ac - 1)/b)·H - c·C`. Words compose as the product of
//! the conjugated link matrices `B·M·B⁻¹`, where the base change `B` picks the
//! curve for the next link: `B = ((1, λ), (0, -1))` selects `λ·H - C`.

use crate::error::{Error, Result};
use crate::lattice::{DivClass, GramLattice, Mat2};
use crate::surface::{self, GDPair, QuarticLattice};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Targets of the links considered here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fano {
    P3,
    X5,
}

impl Fano {
    /// Self-intersection of the restricted ample generator on an
    /// anticanonical-type K3 section: quartics in `P³`, and `H_Y²·S = 10` on
    /// the quintic del Pezzo threefold.
    pub fn surface_degree(self) -> i64 {
        match self {
            Fano::P3 => 4,
            Fano::X5 => 10,
        }
    }
}

impl fmt::Display for Fano {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Fano::P3 => "P3",
            Fano::X5 => "X5",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkRecord {
    pub gd: GDPair,
    pub source: Fano,
    pub target: Fano,
    pub gd_plus: GDPair,
    #[serde(with = "crate::json")]
    pub a: BigInt,
    #[serde(with = "crate::json")]
    pub b: BigInt,
    #[serde(with = "crate::json")]
    pub c: BigInt,
}

impl LinkRecord {
    #[allow(clippy::too_many_arguments)]
    fn p3(g: i64, d: i64, target: Fano, gp: i64, dp: i64, a: i64, b: i64, c: i64) -> Self {
        LinkRecord {
            gd: GDPair::new(g, d),
            source: Fano::P3,
            target,
            gd_plus: GDPair::new(gp, dp),
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }
}

/// Links from `P³` realizing the automorphisms of the surfaces considered.
pub fn catalog() -> Vec<LinkRecord> {
    use Fano::*;
    vec![
        LinkRecord::p3(14, 11, P3, 14, 11, 19, 5, 19),
        LinkRecord::p3(6, 9, P3, 6, 9, 27, 7, 27),
        LinkRecord::p3(10, 10, P3, 10, 10, 23, 6, 23),
        LinkRecord::p3(2, 8, P3, 2, 8, 31, 8, 31),
        LinkRecord::p3(11, 10, P3, 11, 10, 11, 3, 11),
        LinkRecord::p3(3, 6, P3, 3, 6, 3, 1, 3),
        LinkRecord::p3(5, 8, P3, 5, 8, 7, 2, 7),
        LinkRecord::p3(4, 8, X5, 4, 10, 11, 3, 5),
        LinkRecord::p3(3, 8, P3, 3, 8, 15, 4, 15),
    ]
}

pub fn lookup<'a>(cat: &'a [LinkRecord], gd: &GDPair) -> Result<&'a LinkRecord> {
    cat.iter().find(|r| &r.gd == gd).ok_or_else(|| Error::UnknownLink(gd.g.clone(), gd.d.clone()))
}

/// `((a, (ac - 1)/b), (-b, -c))`; determinant `-1`.
pub fn link_matrix(rec: &LinkRecord) -> Result<Mat2> {
    let num = &rec.a * &rec.c - 1u32;
    if !rec.b.is_positive() || !num.is_multiple_of(&rec.b) {
        return Err(Error::NotACurve(format!("link {}: b = {} does not divide ac - 1 = {num}", rec.gd, rec.b)));
    }
    Ok(Mat2::new(rec.a.clone(), num / &rec.b, -&rec.b, -&rec.c))
}

/// Gram matrix of a surface in the basis `{ample generator, curve}`.
pub fn curve_gram(ambient: Fano, gd: &GDPair) -> GramLattice {
    GramLattice::new(ambient.surface_degree(), gd.d.clone(), (&gd.g - 1) * 2)
}

/// The link matrix carries the target Gram matrix onto the source one.
pub fn link_is_consistent(rec: &LinkRecord) -> Result<bool> {
    let m = link_matrix(rec)?;
    let src = curve_gram(rec.source, &rec.gd).matrix();
    let dst = curve_gram(rec.target, &rec.gd_plus).matrix();
    Ok(&(&m.transpose() * &src) * &m == dst)
}

/// `((1, λ), (0, -1))`, an involution selecting `λ·H - C`.
pub fn base_change(lambda: impl Into<BigInt>) -> Mat2 {
    Mat2::new(1, lambda.into(), 0, -1)
}

pub fn conjugate(m: &Mat2, b: &Mat2) -> Result<Mat2> {
    let inv = b.inverse_unimodular()?;
    Ok(&(b * m) * &inv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkStep {
    pub record: LinkRecord,
    pub base_change: Mat2,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LinkWord {
    pub steps: Vec<LinkStep>,
}

/// `∏ Bᵢ·Mᵢ·Bᵢ⁻¹`, after checking that consecutive links chain.
pub fn compose_word(w: &LinkWord) -> Result<Mat2> {
    let mut acc = Mat2::identity();
    for (i, s) in w.steps.iter().enumerate() {
        if i > 0 {
            let prev = w.steps[i - 1].record.target;
            if prev != s.record.source {
                return Err(Error::ChainMismatch(i, prev.to_string(), s.record.source.to_string()));
            }
        }
        acc = &acc * &conjugate(&link_matrix(&s.record)?, &s.base_change)?;
    }
    Ok(acc)
}

/// A word realizing a given isometry, written in the basis `{H, C}` of the
/// first link's curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    /// Columns: `H` and `C` in the input coordinates.
    pub basis: Mat2,
    pub target: Mat2,
    pub word: LinkWord,
    pub composite: Mat2,
    pub matches_generator: bool,
}

impl Realization {
    /// The composite expressed back in the input coordinates.
    pub fn composite_in_input_basis(&self) -> Result<Mat2> {
        Ok(&(&self.basis * &self.composite) * &self.basis.inverse_unimodular()?)
    }
}

const LAMBDA_MAX: i64 = 8;

fn base_changes() -> impl Iterator<Item = Mat2> {
    std::iter::once(Mat2::identity()).chain((-LAMBDA_MAX..=LAMBDA_MAX).map(base_change))
}

/// Genus and degree of the curve selected by `b` on a surface with Gram `g`.
fn selected_curve(g: &GramLattice, b: &Mat2) -> Option<GDPair> {
    let c = b.column(1);
    let sq = g.square(&c);
    let d = g.pairing(&DivClass::new(1, 0), &c);
    if sq.is_odd() || !d.is_positive() || sq < BigInt::from(-2) {
        return None;
    }
    Some(GDPair { g: sq / 2 + 1, d })
}

fn pulled_back(g: &GramLattice, f: &Mat2) -> GramLattice {
    GramLattice::from_matrix(&(&(&f.transpose() * &g.matrix()) * f)).expect("congruence keeps symmetry")
}

/// Matches `((a, e), (-b, -c))` with `a, b, c > 0` and `b·e = ac - 1`.
fn as_link_shape(m: &Mat2) -> Option<(BigInt, BigInt, BigInt)> {
    let (a, e, b, c) = (m.at(0, 0).clone(), m.at(0, 1), -m.at(1, 0), -m.at(1, 1));
    if a.is_positive() && b.is_positive() && c.is_positive() && &b * e == &a * &c - 1u32 {
        Some((a, b, c))
    } else {
        None
    }
}

/// Searches words of length one, then two, in catalog order, for one whose
/// composite equals `target`. Each link's curve must exist with the
/// catalog's genus and degree on the surface it starts from. A second link
/// out of `X5` is solved for from the target and accepted when it has link
/// shape and blows up a curve of the type the first link produced.
pub fn realize_generator(l: &QuarticLattice, target: &Mat2) -> Result<Realization> {
    realize_generator_with(&catalog(), l, target)
}

pub fn realize_generator_with(cat: &[LinkRecord], l: &QuarticLattice, target: &Mat2) -> Result<Realization> {
    for len in 1..=2 {
        for rec1 in cat.iter().filter(|r| r.source == Fano::P3) {
            for c in curve_candidates(l, &rec1.gd) {
                let Ok((lc, p)) = l.rebased(&c) else { continue };
                let t = &(&p.inverse_unimodular()? * target) * &p;
                if let Some(word) = search_from(cat, &lc.gram(), rec1, &t, len)? {
                    let composite = compose_word(&word)?;
                    let matches_generator = composite == t;
                    return Ok(Realization { basis: p, target: t, word, composite, matches_generator });
                }
            }
        }
    }
    Err(Error::SearchExhausted("no link word of length <= 2 realizes the isometry".into()))
}

/// Classes of the given type, the second basis vector first when it has it.
fn curve_candidates(l: &QuarticLattice, gd: &GDPair) -> Vec<DivClass> {
    let w = DivClass::new(0, 1);
    let mut out = Vec::new();
    if surface::genus_degree(l, &w).ok().as_ref() == Some(gd) {
        out.push(w);
    }
    let mut rest = surface::classes_with(l, &((&gd.g - 1u32) * 2u32), &gd.d);
    rest.reverse();
    for c in rest {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn search_from(cat: &[LinkRecord], g0: &GramLattice, rec1: &LinkRecord, t: &Mat2, len: usize) -> Result<Option<LinkWord>> {
    let m1 = link_matrix(rec1)?;
    for b1 in base_changes() {
        if selected_curve(g0, &b1).as_ref() != Some(&rec1.gd) {
            continue;
        }
        let f1 = conjugate(&m1, &b1)?;
        let step1 = LinkStep { record: rec1.clone(), base_change: b1.clone() };
        if len == 1 {
            if rec1.target == Fano::P3 && &f1 == t {
                return Ok(Some(LinkWord { steps: vec![step1] }));
            }
            continue;
        }
        let g1 = pulled_back(g0, &f1);
        let nexts: Vec<&LinkRecord> = cat.iter().filter(|r| r.source == rec1.target && r.target == Fano::P3).collect();
        for b2 in base_changes() {
            let Some(gd2) = selected_curve(&g1, &b2) else { continue };
            if nexts.is_empty() {
                // The curve created by the first link is undone by its inverse,
                // so a new link must blow up another curve of the same type.
                if b2 == Mat2::identity() || gd2 != rec1.gd_plus {
                    continue;
                }
                let rest = &f1.inverse_unimodular()? * t;
                let b2inv = b2.inverse_unimodular()?;
                let m2 = &(&b2inv * &rest) * &b2;
                let Some((a, b, c)) = as_link_shape(&m2) else { continue };
                let f2 = conjugate(&m2, &b2)?;
                let end = pulled_back(&g1, &f2);
                let gd_plus = GDPair { g: &end.q22 / 2 + BigInt::one(), d: end.q12.clone() };
                let rec2 = LinkRecord { gd: gd2, source: rec1.target, target: Fano::P3, gd_plus, a, b, c };
                return Ok(Some(LinkWord { steps: vec![step1, LinkStep { record: rec2, base_change: b2 }] }));
            }
            for rec2 in nexts.iter().filter(|r| r.gd == gd2) {
                let f2 = conjugate(&link_matrix(rec2)?, &b2)?;
                if &(&f1 * &f2) == t {
                    let steps = vec![step1, LinkStep { record: (*rec2).clone(), base_change: b2 }];
                    return Ok(Some(LinkWord { steps }));
                }
            }
        }
    }
    Ok(None)
}
