//! Exact arithmetic over `Q` and over real quadratic fields `Q(√D)`.
//!
//! [`QuadNum`] keeps `√D` formal even when `D` is a perfect square, so that a
//! single representation serves every discriminant. Numeric values are only
//! produced on request through [`QuadNum::to_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Errors raised by quadratic-field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live in different fields: sqrt({0}) vs sqrt({1})")]
    MismatchedField(u64, u64),
    #[error("{0} is not a discriminant (must be positive and 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("division by zero in Q(sqrt {0})")]
    DivisionByZero(u64),
}

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `p/q` or `-p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Discriminant of a real quadratic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant {
    value: u64,
    is_square: bool,
}

impl Discriminant {
    /// Validate `d > 0` and `d ≡ 0, 1 (mod 4)`.
    pub fn new(d: i64) -> Result<Self, ExactError> {
        if d <= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(ExactError::InvalidDiscriminant(d));
        }
        let value = d as u64;
        Ok(Self {
            value,
            is_square: is_perfect_square(value),
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn is_square(self) -> bool {
        self.is_square
    }

    /// `√D` as a double.
    pub fn sqrt_f64(self) -> f64 {
        (self.value as f64).sqrt()
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Exact integer square test.
pub fn is_perfect_square(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// The element `p + q·√D` of `Q(√D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    pub p: Rational,
    pub q: Rational,
    pub disc: Discriminant,
}

impl QuadNum {
    pub fn new(p: Rational, q: Rational, disc: Discriminant) -> Self {
        Self { p, q, disc }
    }

    pub fn from_rational(p: Rational, disc: Discriminant) -> Self {
        Self {
            p,
            q: Rational::zero(),
            disc,
        }
    }

    pub fn from_int(n: i64, disc: Discriminant) -> Self {
        Self::from_rational(rat(n), disc)
    }

    pub fn zero(disc: Discriminant) -> Self {
        Self::from_int(0, disc)
    }

    pub fn one(disc: Discriminant) -> Self {
        Self::from_int(1, disc)
    }

    /// `√D` itself.
    pub fn sqrt_d(disc: Discriminant) -> Self {
        Self {
            p: Rational::zero(),
            q: Rational::one(),
            disc,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True when the element lies in `Q`, i.e. the `√D` coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn check_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.disc != other.disc {
            return Err(ExactError::MismatchedField(
                self.disc.value,
                other.disc.value,
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        Ok(Self {
            p: &self.p + &other.p,
            q: &self.q + &other.q,
            disc: self.disc,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        Ok(Self {
            p: &self.p - &other.p,
            q: &self.q - &other.q,
            disc: self.disc,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_field(other)?;
        let d = Rational::from_integer(BigInt::from(self.disc.value));
        let p = &self.p * &other.p + &self.q * &other.q * d;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(Self {
            p,
            q,
            disc: self.disc,
        })
    }

    /// `p − q√D`.
    pub fn conjugate(&self) -> Self {
        Self {
            p: self.p.clone(),
            q: -&self.q,
            disc: self.disc,
        }
    }

    /// Field norm `p² − q²D`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.disc.value));
        &self.p * &self.p - &self.q * &self.q * d
    }

    /// Multiplicative inverse `(p − q√D)/(p² − q²D)`.
    ///
    /// Fails when the norm vanishes, which for square `D` can happen on nonzero
    /// formal elements.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero(self.disc.value));
        }
        Ok(Self {
            p: &self.p / &n,
            q: -&self.q / &n,
            disc: self.disc,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inverse()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            p: &self.p * k,
            q: &self.q * k,
            disc: self.disc,
        }
    }

    /// Exact sign of the real number `p + q√D` (positive square root).
    pub fn sign(&self) -> i8 {
        quad_sign(self)
    }

    /// Round-to-nearest evaluation, converting `p`, `q` and `√D` separately.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * self.disc.sqrt_f64()
    }
}

/// Sum in `Q(√D)`; `MismatchedField` if the discriminants differ.
pub fn quad_add(x: &QuadNum, y: &QuadNum) -> Result<QuadNum, ExactError> {
    x.try_add(y)
}

/// Product in `Q(√D)`; `MismatchedField` if the discriminants differ.
pub fn quad_mul(x: &QuadNum, y: &QuadNum) -> Result<QuadNum, ExactError> {
    x.try_mul(y)
}

pub fn quad_neg(x: &QuadNum) -> QuadNum {
    QuadNum {
        p: -&x.p,
        q: -&x.q,
        disc: x.disc,
    }
}

/// `(e + √D)/2`.
pub fn lambda_of(disc: Discriminant, e: i64) -> QuadNum {
    QuadNum {
        p: ratio(e, 2),
        q: ratio(1, 2),
        disc,
    }
}

/// Exact sign of `p + q√D` as `-1`, `0` or `1`.
///
/// When `p` and `q√D` have opposite signs the comparison of `p²` with `q²D`
/// decides which one dominates.
pub fn quad_sign(x: &QuadNum) -> i8 {
    let sp = sign_of(&x.p);
    let sq = sign_of(&x.q);
    if sq == 0 || sp == sq {
        return if sp != 0 { sp } else { sq };
    }
    if sp == 0 {
        return sq;
    }
    let d = Rational::from_integer(BigInt::from(x.disc.value()));
    match (&x.p * &x.p).cmp(&(&x.q * &x.q * d)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

// Operator sugar for callers that already know both operands share a field.
// These panic on a field mismatch; use the `try_*` methods otherwise.

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.try_add(rhs).expect("QuadNum addition across fields")
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.try_sub(rhs)
            .expect("QuadNum subtraction across fields")
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.try_mul(rhs)
            .expect("QuadNum multiplication across fields")
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        quad_neg(self)
    }
}

impl fmt::Display for QuadNum {
    /// `p/q+r/s*sqrtD`, with the joining sign taken from the `√D` coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = format_rational(&self.p);
        if self.q.is_negative() {
            write!(f, "{}-{}*sqrt{}", p, format_rational(&-&self.q), self.disc)
        } else {
            write!(f, "{}+{}*sqrt{}", p, format_rational(&self.q), self.disc)
        }
    }
}

/// The complex number `re + i·im` with both parts in `Q(√D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadComplex {
    pub re: QuadNum,
    pub im: QuadNum,
}

impl QuadComplex {
    pub fn new(re: QuadNum, im: QuadNum) -> Self {
        Self { re, im }
    }

    pub fn real(re: QuadNum) -> Self {
        let im = QuadNum::zero(re.disc);
        Self { re, im }
    }

    pub fn imag(im: QuadNum) -> Self {
        let re = QuadNum::zero(im.disc);
        Self { re, im }
    }

    pub fn zero(disc: Discriminant) -> Self {
        Self::real(QuadNum::zero(disc))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(Self {
            re: self.re.try_add(&o.re)?,
            im: self.im.try_add(&o.im)?,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(Self {
            re: self.re.try_sub(&o.re)?,
            im: self.im.try_sub(&o.im)?,
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, ExactError> {
        let re = self.re.try_mul(&o.re)?.try_sub(&self.im.try_mul(&o.im)?)?;
        let im = self.re.try_mul(&o.im)?.try_add(&self.im.try_mul(&o.re)?)?;
        Ok(Self { re, im })
    }

    /// Multiply both parts by a real field element.
    pub fn try_scale(&self, k: &QuadNum) -> Result<Self, ExactError> {
        Ok(Self {
            re: self.re.try_mul(k)?,
            im: self.im.try_mul(k)?,
        })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = rat(k);
        Self {
            re: self.re.scale(&k),
            im: self.im.scale(&k),
        }
    }
}

impl Add for &QuadComplex {
    type Output = QuadComplex;
    fn add(self, rhs: &QuadComplex) -> QuadComplex {
        self.try_add(rhs)
            .expect("QuadComplex addition across fields")
    }
}

impl Sub for &QuadComplex {
    type Output = QuadComplex;
    fn sub(self, rhs: &QuadComplex) -> QuadComplex {
        self.try_sub(rhs)
            .expect("QuadComplex subtraction across fields")
    }
}

impl Mul for &QuadComplex {
    type Output = QuadComplex;
    fn mul(self, rhs: &QuadComplex) -> QuadComplex {
        self.try_mul(rhs)
            .expect("QuadComplex multiplication across fields")
    }
}

impl fmt::Display for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+i*({})", self.re, self.im)
    }
}
