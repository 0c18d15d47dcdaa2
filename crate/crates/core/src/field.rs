//! Exact arithmetic in prime fields `F_p` and in the quadratic extensions
//! `F_{p^2} = F_p[i]/(i^2 + 1)` for primes `p = 3 (mod 4)`.
//!
//! Residues are stored in `[0, p)`. Display and serialization use the
//! symmetric range `[-(p-1)/2, (p-1)/2]`, so `2` over `F_3` prints as `-1`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exhaustive enumeration refuses fields larger than this.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("x^2+1 is reducible over F_{0}: degree 2 requires p = 3 (mod 4)")]
    BadResidue(u64),
    #[error("x^2+1 = (x+1)^2 over F_2: degree 2 is not available at p = 2")]
    Degree2WithP2,
    #[error("unsupported degree {0}: only 1 and 2 are available")]
    UnsupportedDegree(u64),
    #[error("characteristic {0} does not fit in 32 bits")]
    CharacteristicTooLarge(u64),
    #[error("field context mismatch: {left} vs {right}")]
    ContextMismatch { left: FieldSpec, right: FieldSpec },
    #[error("zero has no multiplicative inverse")]
    ZeroDivisor,
    #[error("field of order {order} exceeds the enumeration limit {limit}")]
    TooLarge { order: u64, limit: u64 },
}

/// Trial-division primality test, adequate for desk-scale characteristics.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A validated field: prime characteristic `p` and degree 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec", into = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    degree: u8,
}

#[derive(Serialize, Deserialize)]
struct RawFieldSpec {
    p: u64,
    degree: u64,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = FieldError;

    fn try_from(raw: RawFieldSpec) -> Result<Self, Self::Error> {
        FieldSpec::new(raw.p, raw.degree)
    }
}

impl From<FieldSpec> for RawFieldSpec {
    fn from(f: FieldSpec) -> Self {
        RawFieldSpec {
            p: f.p as u64,
            degree: f.degree as u64,
        }
    }
}

impl FieldSpec {
    /// Validates `(p, degree)`.
    pub fn new(p: u64, degree: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        match degree {
            1 => {}
            2 if p == 2 => return Err(FieldError::Degree2WithP2),
            2 if p % 4 != 3 => return Err(FieldError::BadResidue(p)),
            2 => {}
            d => return Err(FieldError::UnsupportedDegree(d)),
        }
        Ok(FieldSpec {
            p: p as u32,
            degree: degree as u8,
        })
    }

    /// `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// `F_{p^2}`.
    pub fn quadratic(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 2)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Number of elements, `p^degree`.
    pub fn order(&self) -> u64 {
        self.p().pow(self.degree as u32)
    }

    /// The prime subfield `F_p`.
    pub fn base(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            degree: 1,
        }
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Maps a residue in `[0, p)` to the symmetric range.
    pub fn symmetric(&self, v: u32) -> i64 {
        if v > self.p / 2 {
            v as i64 - self.p as i64
        } else {
            v as i64
        }
    }

    fn check_enumerable(&self) -> Result<(), FieldError> {
        let order = self.order();
        if order > ENUMERATION_LIMIT {
            return Err(FieldError::TooLarge {
                order,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^2", self.p)
        }
    }
}

/// Serialized form of a single scalar: a bare integer for `F_p`, a
/// `[re, im]` pair for `F_{p^2}`. Both use the symmetric range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementWire {
    Prime(i64),
    Quadratic([i64; 2]),
}

/// Scalars of a finite field carrying their own [`FieldSpec`].
///
/// The `std::ops` implementations panic when the operands come from
/// different fields; use the `checked_*` methods to get a
/// [`FieldError::ContextMismatch`] instead.
pub trait FieldElement:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Degree of the fields this element type lives in.
    const DEGREE: u8;

    fn field(&self) -> FieldSpec;

    /// Embeds an integer. Panics if `field` has the wrong degree.
    fn from_i64(field: FieldSpec, v: i64) -> Self;

    fn is_zero(&self) -> bool;

    /// Frobenius conjugation `a -> a^p`; the identity on `F_p`.
    fn conj(&self) -> Self;

    fn inverse(&self) -> Result<Self, FieldError>;

    /// All elements of `field` in lexicographic order.
    fn enumerate(field: FieldSpec) -> Result<Vec<Self>, FieldError>;

    fn to_wire(&self) -> ElementWire;

    /// Parses a wire value. `None` when the shape does not match the degree.
    fn from_wire(field: FieldSpec, wire: ElementWire) -> Option<Self>;

    fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    fn is_one(&self) -> bool {
        *self == Self::one(self.field())
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.field());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.field(),
                right: other.field(),
            })
        }
    }

    fn checked_add(self, rhs: Self) -> Result<Self, FieldError> {
        self.same_field(&rhs)?;
        Ok(self + rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self, FieldError> {
        self.same_field(&rhs)?;
        Ok(self - rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self, FieldError> {
        self.same_field(&rhs)?;
        Ok(self * rhs)
    }

    fn checked_div(self, rhs: Self) -> Result<Self, FieldError> {
        self.same_field(&rhs)?;
        Ok(self * rhs.inverse()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Context-checked binary arithmetic.
pub fn arith<F: FieldElement>(a: F, b: F, op: ArithOp) -> Result<F, FieldError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

/// An element of `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpElement {
    value: u32,
    field: FieldSpec,
}

impl FpElement {
    pub fn new(field: FieldSpec, v: i64) -> Self {
        Self::from_i64(field, v)
    }

    /// Residue in `[0, p)`.
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn symmetric(&self) -> i64 {
        self.field.symmetric(self.value)
    }

    fn with(&self, value: u64) -> Self {
        FpElement {
            value: (value % self.field.p()) as u32,
            field: self.field,
        }
    }

    fn assert_same(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "field context mismatch");
    }
}

impl FieldElement for FpElement {
    const DEGREE: u8 = 1;

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn from_i64(field: FieldSpec, v: i64) -> Self {
        assert_eq!(field.degree(), 1, "FpElement requires a degree-1 field");
        FpElement {
            value: field.reduce(v),
            field,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn conj(&self) -> Self {
        *self
    }

    fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivisor);
        }
        Ok(self.pow(self.field.p() - 2))
    }

    fn enumerate(field: FieldSpec) -> Result<Vec<Self>, FieldError> {
        assert_eq!(field.degree(), 1, "FpElement requires a degree-1 field");
        field.check_enumerable()?;
        Ok((0..field.p() as i64)
            .map(|v| Self::from_i64(field, v))
            .collect())
    }

    fn to_wire(&self) -> ElementWire {
        ElementWire::Prime(self.symmetric())
    }

    fn from_wire(field: FieldSpec, wire: ElementWire) -> Option<Self> {
        match wire {
            ElementWire::Prime(v) if field.degree() == 1 => Some(Self::from_i64(field, v)),
            _ => None,
        }
    }
}

impl Add for FpElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        self.with(self.value as u64 + rhs.value as u64)
    }
}

impl Sub for FpElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        self.with(self.value as u64 + self.field.p() - rhs.value as u64)
    }
}

impl Mul for FpElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        self.with(self.value as u64 * rhs.value as u64)
    }
}

impl Neg for FpElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.field.p() - self.value as u64)
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Serialize for FpElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.symmetric())
    }
}

/// An element `re + im*i` of `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2Element {
    re: u32,
    im: u32,
    field: FieldSpec,
}

impl Fp2Element {
    pub fn new(field: FieldSpec, re: i64, im: i64) -> Self {
        assert_eq!(field.degree(), 2, "Fp2Element requires a degree-2 field");
        Fp2Element {
            re: field.reduce(re),
            im: field.reduce(im),
            field,
        }
    }

    /// The imaginary unit.
    pub fn i(field: FieldSpec) -> Self {
        Self::new(field, 0, 1)
    }

    pub fn re(&self) -> u32 {
        self.re
    }

    pub fn im(&self) -> u32 {
        self.im
    }

    /// `(re, im)` in the symmetric range.
    pub fn symmetric(&self) -> (i64, i64) {
        (self.field.symmetric(self.re), self.field.symmetric(self.im))
    }

    /// Embeds a base-field element.
    pub fn from_base(field: FieldSpec, a: FpElement) -> Self {
        assert_eq!(field.base(), a.field(), "field context mismatch");
        Self::new(field, a.value() as i64, 0)
    }

    /// `conj(a) * a = re^2 + im^2`, an element of the base field.
    pub fn norm(&self) -> FpElement {
        let p = self.field.p();
        let (re, im) = (self.re as u64, self.im as u64);
        FpElement::from_i64(self.field.base(), ((re * re + im * im) % p) as i64)
    }

    fn from_raw(field: FieldSpec, re: u64, im: u64) -> Self {
        let p = field.p();
        Fp2Element {
            re: (re % p) as u32,
            im: (im % p) as u32,
            field,
        }
    }

    fn assert_same(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "field context mismatch");
    }
}

impl FieldElement for Fp2Element {
    const DEGREE: u8 = 2;

    fn field(&self) -> FieldSpec {
        self.field
    }

    fn from_i64(field: FieldSpec, v: i64) -> Self {
        Self::new(field, v, 0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn conj(&self) -> Self {
        Self::from_raw(self.field, self.re as u64, self.field.p() - self.im as u64)
    }

    fn inverse(&self) -> Result<Self, FieldError> {
        // a^-1 = conj(a) / N(a); N(a) != 0 for a != 0 since x^2+1 is irreducible
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::ZeroDivisor);
        }
        let n_inv = n.inverse()?;
        Ok(self.conj() * Self::from_base(self.field, n_inv))
    }

    fn enumerate(field: FieldSpec) -> Result<Vec<Self>, FieldError> {
        assert_eq!(field.degree(), 2, "Fp2Element requires a degree-2 field");
        field.check_enumerable()?;
        let p = field.p() as i64;
        Ok((0..p)
            .flat_map(|re| (0..p).map(move |im| Self::new(field, re, im)))
            .collect())
    }

    fn to_wire(&self) -> ElementWire {
        let (re, im) = self.symmetric();
        ElementWire::Quadratic([re, im])
    }

    fn from_wire(field: FieldSpec, wire: ElementWire) -> Option<Self> {
        match wire {
            ElementWire::Quadratic([re, im]) if field.degree() == 2 => {
                Some(Self::new(field, re, im))
            }
            _ => None,
        }
    }
}

impl Add for Fp2Element {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        Self::from_raw(
            self.field,
            self.re as u64 + rhs.re as u64,
            self.im as u64 + rhs.im as u64,
        )
    }
}

impl Sub for Fp2Element {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        let p = self.field.p();
        Self::from_raw(
            self.field,
            self.re as u64 + p - rhs.re as u64,
            self.im as u64 + p - rhs.im as u64,
        )
    }
}

impl Mul for Fp2Element {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.assert_same(&rhs);
        let p = self.field.p();
        let (a, b) = (self.re as u64, self.im as u64);
        let (c, d) = (rhs.re as u64, rhs.im as u64);
        // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
        let re = (a * c % p + p - b * d % p) % p;
        let im = (a * d % p + b * c % p) % p;
        Self::from_raw(self.field, re, im)
    }
}

impl Neg for Fp2Element {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.field.p();
        Self::from_raw(self.field, p - self.re as u64, p - self.im as u64)
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.symmetric();
        let imag = match im {
            1 => "i".to_string(),
            -1 => "-i".to_string(),
            v => format!("{v}i"),
        };
        match (re, im) {
            (_, 0) => write!(f, "{re}"),
            (0, _) => write!(f, "{imag}"),
            (_, v) if v < 0 => write!(f, "{re}{imag}"),
            _ => write!(f, "{re}+{imag}"),
        }
    }
}

impl Serialize for Fp2Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (re, im) = self.symmetric();
        [re, im].serialize(s)
    }
}

/// Enumerates the elements of `field`; see [`FieldElement::enumerate`].
pub fn enumerate_elements<F: FieldElement>(field: FieldSpec) -> Result<Vec<F>, FieldError> {
    F::enumerate(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldSpec {
        FieldSpec::quadratic(3).unwrap()
    }

    fn f49() -> FieldSpec {
        FieldSpec::quadratic(7).unwrap()
    }

    #[test]
    fn validate_field_cases() {
        assert!(FieldSpec::new(3, 2).is_ok());
        assert!(FieldSpec::new(2, 1).is_ok());
        assert_eq!(FieldSpec::new(5, 2), Err(FieldError::BadResidue(5)));
        assert_eq!(FieldSpec::new(2, 2), Err(FieldError::Degree2WithP2));
        assert_eq!(FieldSpec::new(9, 1), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldSpec::new(1, 1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldSpec::new(7, 3), Err(FieldError::UnsupportedDegree(3)));
        for p in [3, 7, 11, 19] {
            assert!(FieldSpec::quadratic(p).is_ok());
        }
    }

    #[test]
    fn reducible_at_five() {
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        let f5 = FieldSpec::prime(5).unwrap();
        let x = FpElement::new(f5, 2);
        assert!((x * x + FpElement::one(f5)).is_zero());
    }

    #[test]
    fn arith_examples() {
        let f = f9();
        let one_plus_i = Fp2Element::new(f, 1, 1);
        let one_minus_i = Fp2Element::new(f, 1, -1);
        assert_eq!(
            arith(one_plus_i, one_minus_i, ArithOp::Mul).unwrap(),
            Fp2Element::new(f, -1, 0)
        );
        assert_eq!(one_plus_i * one_minus_i, Fp2Element::new(f, 2, 0));
        assert_eq!(
            arith(one_plus_i, Fp2Element::zero(f), ArithOp::Add).unwrap(),
            one_plus_i
        );
        assert_eq!(one_plus_i * one_plus_i, Fp2Element::new(f, 0, 2));
        assert!(matches!(
            arith(one_plus_i, Fp2Element::one(f49()), ArithOp::Sub),
            Err(FieldError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn conj_examples() {
        let f = f9();
        assert_eq!(Fp2Element::new(f, 1, 1).conj(), Fp2Element::new(f, 1, 2));
        assert_eq!(Fp2Element::new(f, 1, 1).pow(3), Fp2Element::new(f, 1, 2));
        assert!(Fp2Element::zero(f).conj().is_zero());
        let a = Fp2Element::new(f49(), 2, 3);
        assert_eq!(a.conj(), Fp2Element::new(f49(), 2, 4));
        assert_eq!(a.pow(7), a.conj());
    }

    #[test]
    fn inverse_examples() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(FpElement::new(f7, 2).inverse().unwrap(), FpElement::new(f7, 4));
        assert!(FpElement::one(f7).inverse().unwrap().is_one());
        assert_eq!(
            Fp2Element::new(f9(), 1, 1).inverse().unwrap(),
            Fp2Element::new(f9(), 2, 1)
        );
        assert_eq!(FpElement::zero(f7).inverse(), Err(FieldError::ZeroDivisor));
        assert_eq!(Fp2Element::zero(f9()).inverse(), Err(FieldError::ZeroDivisor));
    }

    #[test]
    fn norm_examples() {
        let f = f9();
        let base = f.base();
        assert_eq!(Fp2Element::new(f, 1, 1).norm(), FpElement::new(base, 2));
        assert!(Fp2Element::zero(f).norm().is_zero());
        assert!(Fp2Element::i(f).norm().is_one());
    }

    #[test]
    fn enumerate_examples() {
        let f = f9();
        let elems = enumerate_elements::<Fp2Element>(f).unwrap();
        assert_eq!(elems.len(), 9);
        let listed: Vec<Fp2Element> = [
            (0, 0),
            (1, 0),
            (-1, 0),
            (0, 1),
            (1, 1),
            (-1, 1),
            (0, -1),
            (1, -1),
            (-1, -1),
        ]
        .iter()
        .map(|&(re, im)| Fp2Element::new(f, re, im))
        .collect();
        for e in &listed {
            assert!(elems.contains(e));
        }
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(sorted, elems);

        let f2 = FieldSpec::prime(2).unwrap();
        let bits = enumerate_elements::<FpElement>(f2).unwrap();
        assert_eq!(bits.iter().map(|e| e.value()).collect::<Vec<_>>(), [0, 1]);
        assert_eq!(enumerate_elements::<Fp2Element>(f49()).unwrap().len(), 49);

        let big = FieldSpec::quadratic(1019).unwrap();
        assert!(matches!(
            enumerate_elements::<Fp2Element>(big),
            Err(FieldError::TooLarge { .. })
        ));
    }

    #[test]
    fn symmetric_display() {
        let f = f49();
        assert_eq!(Fp2Element::new(f, 4, 6).symmetric(), (-3, -1));
        assert_eq!(Fp2Element::new(f, 4, 6).to_string(), "-3-i");
        assert_eq!(Fp2Element::new(f, 1, 1).to_string(), "1+i");
        assert_eq!(Fp2Element::new(f, 0, 2).to_string(), "2i");
        assert_eq!(Fp2Element::new(f, 3, 0).to_string(), "3");
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(FpElement::new(f2, 1).symmetric(), 1);
    }

    #[test]
    fn serde_forms() {
        let f = f9();
        let spec: FieldSpec = serde_json::from_str(r#"{"p": 3, "degree": 2}"#).unwrap();
        assert_eq!(spec, f);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p": 5, "degree": 2}"#).is_err());
        assert_eq!(
            serde_json::to_string(&Fp2Element::new(f, 2, 1)).unwrap(),
            "[-1,1]"
        );
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(serde_json::to_string(&FpElement::new(f7, 5)).unwrap(), "-2");
        let w: ElementWire = serde_json::from_str("[1,-1]").unwrap();
        assert_eq!(Fp2Element::from_wire(f, w), Some(Fp2Element::new(f, 1, 2)));
        assert_eq!(FpElement::from_wire(f7, w), None);
    }
}
