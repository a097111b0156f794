//! The ℤ₂-graded data model: parities, half-integer basis indices, labeled
//! basis elements and formal linear combinations over ℚ.

use crate::error::{AlgError, Result};
use crate::rational::{fmt_rat, parse_rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// The ℤ₂ grading label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// 0 for even, 1 for odd.
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The Koszul sign (−1)^{p(x) p(y)}.
    pub fn koszul(self, other: Parity) -> i8 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// An exact element of ½ℤ, stored as twice its value.
///
/// Index arithmetic over ℤ ∪ (ℤ+½) is everywhere exact; no index is ever
/// rounded or truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    /// The value k/2.
    pub fn from_twice(twice: i64) -> HalfInt {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> HalfInt {
        HalfInt(2 * n)
    }

    /// n + ½.
    pub fn int_plus_half(n: i64) -> HalfInt {
        HalfInt(2 * n + 1)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value; panics when called on a proper half-integer.
    pub fn as_int(self) -> i64 {
        assert!(self.is_integer(), "not an integer index");
        self.0 / 2
    }

    pub fn to_rat(self) -> Rat {
        crate::rational::rat(self.0, 2)
    }

    pub fn parse(s: &str) -> Result<HalfInt> {
        let r = parse_rat(s)?;
        HalfInt::try_from_rat(&r).ok_or_else(|| AlgError::BadLabel(s.to_string()))
    }

    /// Accepts rationals with denominator 1 or 2.
    pub fn try_from_rat(r: &Rat) -> Option<HalfInt> {
        let two = crate::rational::int(2);
        let t = r * &two;
        if crate::rational::is_integer(&t) {
            let v: i64 = t.to_integer().try_into().ok()?;
            Some(HalfInt(v))
        } else {
            None
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A named basis element: a family symbol plus an optional exact index.
///
/// Printed as `eps`, `e:3`, `l:1/2`, `xi:-3/2`. Families are free-form
/// strings; catalog algebras use `e`/`l` (conformal antialgebra), `x`/`xi`
/// (conformal superalgebra) and letter names for finite algebras.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub family: String,
    pub index: Option<HalfInt>,
}

impl BasisLabel {
    pub fn plain(family: &str) -> BasisLabel {
        BasisLabel { family: family.to_string(), index: None }
    }

    pub fn indexed(family: &str, index: HalfInt) -> BasisLabel {
        BasisLabel { family: family.to_string(), index: Some(index) }
    }

    pub fn int_indexed(family: &str, n: i64) -> BasisLabel {
        Self::indexed(family, HalfInt::from_int(n))
    }

    pub fn parse(s: &str) -> Result<BasisLabel> {
        let t = s.trim();
        if t.is_empty() {
            return Err(AlgError::BadLabel(s.to_string()));
        }
        match t.split_once(':') {
            None => Ok(BasisLabel::plain(t)),
            Some((fam, idx)) => {
                if fam.is_empty() {
                    return Err(AlgError::BadLabel(s.to_string()));
                }
                Ok(BasisLabel::indexed(fam, HalfInt::parse(idx)?))
            }
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            None => write!(f, "{}", self.family),
            Some(i) => write!(f, "{}:{}", self.family, i),
        }
    }
}

/// A finite formal ℚ-linear combination of basis labels.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector {
    terms: BTreeMap<BasisLabel, Rat>,
}

impl GradedVector {
    pub fn zero() -> GradedVector {
        GradedVector::default()
    }

    pub fn basis(label: BasisLabel) -> GradedVector {
        GradedVector::term(label, crate::rational::one())
    }

    pub fn term(label: BasisLabel, coeff: Rat) -> GradedVector {
        let mut v = GradedVector::zero();
        v.add_term(&label, &coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisLabel, Rat)>>(terms: I) -> GradedVector {
        let mut v = GradedVector::zero();
        for (l, c) in terms {
            v.add_term(&l, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &BasisLabel) -> Rat {
        self.terms.get(label).cloned().unwrap_or_else(crate::rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Rat)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, label: &BasisLabel, coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(label.clone()).or_insert_with(crate::rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(label);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: &Rat) {
        for (l, v) in other.terms() {
            self.add_term(l, &(v * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_scaled(self, c);
        out
    }

    /// Coefficients in a fixed basis order; labels outside `basis` are an error.
    pub fn coordinates(&self, basis: &[BasisLabel]) -> Result<Vec<Rat>> {
        let mut out = vec![crate::rational::zero(); basis.len()];
        for (l, c) in self.terms() {
            match basis.iter().position(|b| b == l) {
                Some(i) => out[i] = c.clone(),
                None => return Err(AlgError::UnknownLabel(l.to_string())),
            }
        }
        Ok(out)
    }

    pub fn from_coordinates(basis: &[BasisLabel], coords: &[Rat]) -> GradedVector {
        assert_eq!(basis.len(), coords.len());
        GradedVector::from_terms(basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Serialization form used in JSON reports: label string → coefficient string.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(l, c)| (l.to_string(), fmt_rat(c))).collect()
    }
}

impl Add for &GradedVector {
    type Output = GradedVector;
    fn add(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &crate::rational::one());
        out
    }
}

impl Sub for &GradedVector {
    type Output = GradedVector;
    fn sub(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-crate::rational::one());
        out
    }
}

impl Neg for &GradedVector {
    type Output = GradedVector;
    fn neg(self) -> GradedVector {
        self.scale(&-crate::rational::one())
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", fmt_rat(c), l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn half_int_arithmetic_and_display() {
        let h = HalfInt::int_plus_half(1); // 3/2
        assert_eq!(h.to_rat(), rat(3, 2));
        assert_eq!(h.to_string(), "3/2");
        assert_eq!((h + h).to_string(), "3");
        assert_eq!(HalfInt::parse("-1/2").unwrap(), HalfInt::from_twice(-1));
        assert_eq!(HalfInt::parse("4").unwrap(), HalfInt::from_int(4));
        assert!(HalfInt::parse("1/3").is_err());
    }

    #[test]
    fn label_round_trip() {
        for s in ["eps", "e:3", "l:1/2", "xi:-3/2"] {
            let l = BasisLabel::parse(s).unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!(BasisLabel::parse("").is_err());
        assert!(BasisLabel::parse(":3").is_err());
    }

    #[test]
    fn vector_normalization() {
        let a = BasisLabel::plain("a");
        let mut v = GradedVector::term(a.clone(), int(2));
        v.add_term(&a, &int(-2));
        assert!(v.is_zero());

        let w = GradedVector::from_terms([
            (BasisLabel::plain("b"), rat(1, 2)),
            (BasisLabel::plain("a"), int(0)),
        ]);
        assert_eq!(w.len(), 1);
        assert_eq!(w.coeff(&BasisLabel::plain("b")), rat(1, 2));
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = vec![BasisLabel::plain("x"), BasisLabel::plain("y")];
        let v = GradedVector::from_terms([(basis[1].clone(), rat(-3, 2))]);
        let c = v.coordinates(&basis).unwrap();
        assert_eq!(c, vec![int(0), rat(-3, 2)]);
        assert_eq!(GradedVector::from_coordinates(&basis, &c), v);
        assert!(v.coordinates(&[basis[0].clone()]).is_err());
    }
}
