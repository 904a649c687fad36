//! Integral binary lattices given by a symmetric Gram matrix.
//!
//! Coordinates are column vectors and matrices act on the left. A base change
//! matrix `B` holds the new basis vectors as its columns, so the new Gram
//! matrix is `Bᵀ Q B` and `[Λ : Λ'] = |det B|`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// A 2x2 integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2(#[serde(with = "crate::json::arr22")] pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2([[a.into(), b.into()], [c.into(), d.into()]])
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Mat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn scalar(k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Mat2::new(k.clone(), 0, 0, k)
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.0[i][j]
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0].clone(), m[1][0].clone(), m[0][1].clone(), m[1][1].clone())
    }

    /// Adjugate: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[1][1].clone(), -&m[0][1], -&m[1][0], m[0][0].clone())
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let det = self.det();
        if det.is_one() {
            Ok(self.adjugate())
        } else if (-&det).is_one() {
            Ok(-&self.adjugate())
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn add(&self, other: &Mat2) -> Self {
        let (a, b) = (&self.0, &other.0);
        Mat2::new(&a[0][0] + &b[0][0], &a[0][1] + &b[0][1], &a[1][0] + &b[1][0], &a[1][1] + &b[1][1])
    }

    pub fn sub(&self, other: &Mat2) -> Self {
        self.add(&-other)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &DivClass) -> DivClass {
        let m = &self.0;
        DivClass {
            x: &m[0][0] * &v.x + &m[0][1] * &v.y,
            y: &m[1][0] * &v.x + &m[1][1] * &v.y,
        }
    }

    /// Column `j` as a class.
    pub fn column(&self, j: usize) -> DivClass {
        DivClass { x: self.0[0][j].clone(), y: self.0[1][j].clone() }
    }

    /// The matrix whose columns are `u` and `v`.
    pub fn from_columns(u: &DivClass, v: &DivClass) -> Self {
        Mat2::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    /// Entries reduced into `[0, |m|)`.
    pub fn reduced(&self, m: &BigInt) -> Self {
        let m = m.abs();
        Mat2(self.0.clone().map(|row| row.map(|e| e.mod_floor(&m))))
    }

    /// True iff every entry is divisible by `d`.
    pub fn divisible_by(&self, d: &BigInt) -> bool {
        self.0.iter().flatten().all(|e| e.is_multiple_of(d))
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        )
    }
}

impl std::ops::Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        let m = &self.0;
        Mat2::new(-&m[0][0], -&m[0][1], -&m[1][0], -&m[1][1])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let m = &self.0;
        write!(f, "(({}, {}), ({}, {}))", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// A class `x·e1 + y·e2` in a rank-2 lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivClass {
    #[serde(with = "crate::json")]
    pub x: BigInt,
    #[serde(with = "crate::json")]
    pub y: BigInt,
}

impl DivClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        DivClass { x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Self {
        DivClass { x: -&self.x, y: -&self.y }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        DivClass { x: &self.x * k, y: &self.y * k }
    }

    pub fn plus(&self, o: &DivClass) -> Self {
        DivClass { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn minus(&self, o: &DivClass) -> Self {
        self.plus(&o.neg())
    }

    /// Divides out the content; the zero class is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.x.gcd(&self.y);
        if g.is_zero() {
            self.clone()
        } else {
            DivClass { x: &self.x / &g, y: &self.y / &g }
        }
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Symmetric integral Gram matrix `((q11, q12), (q12, q22))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramLattice {
    pub q11: BigInt,
    pub q12: BigInt,
    pub q22: BigInt,
}

impl GramLattice {
    pub fn new(q11: impl Into<BigInt>, q12: impl Into<BigInt>, q22: impl Into<BigInt>) -> Self {
        GramLattice { q11: q11.into(), q12: q12.into(), q22: q22.into() }
    }

    /// Builds a lattice from a full matrix, rejecting asymmetric input.
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        if m.at(0, 1) != m.at(1, 0) {
            return Err(Error::NotSymmetric);
        }
        Ok(GramLattice { q11: m.at(0, 0).clone(), q12: m.at(0, 1).clone(), q22: m.at(1, 1).clone() })
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.q11.clone(), self.q12.clone(), self.q12.clone(), self.q22.clone())
    }

    pub fn det(&self) -> BigInt {
        &self.q11 * &self.q22 - &self.q12 * &self.q12
    }

    pub fn is_even(&self) -> bool {
        self.q11.is_even() && self.q22.is_even()
    }

    pub fn pairing(&self, u: &DivClass, v: &DivClass) -> BigInt {
        &self.q11 * &u.x * &v.x + &self.q12 * (&u.x * &v.y + &u.y * &v.x) + &self.q22 * &u.y * &v.y
    }

    pub fn square(&self, u: &DivClass) -> BigInt {
        self.pairing(u, u)
    }

    /// `disc = q12² - q11·q22 = -det`, positive for hyperbolic lattices.
    pub fn disc(&self) -> BigInt {
        -self.det()
    }

    /// `M` is an isometry iff `Mᵀ Q M = Q`.
    pub fn preserved_by(&self, m: &Mat2) -> bool {
        let q = self.matrix();
        &(&m.transpose() * &q) * m == q
    }

    /// Gram matrix of the sublattice spanned by the columns of `b`.
    pub fn change_basis(&self, b: &Mat2) -> Result<BasisChange> {
        let det = b.det();
        if det.is_zero() {
            return Err(Error::SingularBaseChange);
        }
        let q = &(&b.transpose() * &self.matrix()) * b;
        Ok(BasisChange { lattice: GramLattice::from_matrix(&q)?, index: det.abs() })
    }
}

impl Serialize for GramLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Q<'a> {
            q: &'a Mat2,
        }
        Q { q: &self.matrix() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Q {
            q: Mat2,
        }
        let q = Q::deserialize(d)?;
        GramLattice::from_matrix(&q.q).map_err(serde::de::Error::custom)
    }
}

/// Result of a base change: the new Gram matrix and the index of the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub lattice: GramLattice,
    pub index: BigInt,
}

impl BasisChange {
    pub fn is_full_rank_sublattice(&self) -> bool {
        self.index.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_disc() {
        let q = GramLattice::new(4, 11, 26);
        let c = DivClass::new(4, -1);
        assert_eq!(q.pairing(&c, &c), BigInt::from(2));
        assert_eq!(GramLattice::new(4, 8, 2).disc(), BigInt::from(56));
    }

    #[test]
    fn base_change_examples() {
        let q = GramLattice::new(4, 8, 2);
        let b = Mat2::from_i64([[1, 4], [0, -1]]);
        let bc = q.change_basis(&b).unwrap();
        assert_eq!(bc.lattice, q);
        assert!(bc.is_full_rank_sublattice());

        let q20 = GramLattice::new(4, 10, 20);
        let bc = q20.change_basis(&Mat2::from_i64([[1, 0], [0, 2]])).unwrap();
        assert_eq!(bc.lattice.disc(), BigInt::from(80));
        assert_eq!(bc.index, BigInt::from(2));

        let singular = Mat2::from_i64([[1, 2], [2, 4]]);
        assert_eq!(q.change_basis(&singular), Err(Error::SingularBaseChange));
    }

    #[test]
    fn gram_json_shape() {
        let q = GramLattice::new(4, 11, 26);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"q":[[4,11],[11,26]]}"#);
        let back: GramLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<GramLattice>(r#"{"q":[[4,1],[2,3]]}"#).is_err());
    }

    #[test]
    fn big_entries_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = Mat2::new(big.clone(), 1, 0, 1);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        assert_eq!(serde_json::from_str::<Mat2>(&s).unwrap(), m);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let h = Mat2::from_i64([[4, 1], [-1, 0]]);
        let mut acc = Mat2::identity();
        for k in 0..6 {
            assert_eq!(h.pow(k), acc);
            acc = &acc * &h;
        }
    }
}
