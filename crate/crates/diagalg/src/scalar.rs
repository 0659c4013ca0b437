//! Scalar domains: exact rationals and arbitrary-precision reals.
//!
//! Every numeric routine in the crate is generic over [`Scalar`], so the same
//! code path runs with zero rounding error ([`Exact`]) or at a chosen binary
//! precision ([`Real`]).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Default working precision of [`Real`] in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

static PRECISION_BITS: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION_BITS);

/// Sets the precision used for newly created [`Real`] values.
pub fn set_precision_bits(bits: u32) {
    PRECISION_BITS.store(bits.max(24), AtomicOrdering::Relaxed);
}

pub fn precision_bits() -> u32 {
    PRECISION_BITS.load(AtomicOrdering::Relaxed)
}

/// Tolerance `2^{-bits/2}` used by the float-mode invariant checks.
pub fn half_precision_tolerance() -> f64 {
    2f64.powi(-(precision_bits() as i32) / 2)
}

/// Field operations shared by the exact and floating scalar domains.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// True when arithmetic is error-free.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Square root. Exact mode succeeds only on squares of rationals.
    fn sqrt(&self) -> Result<Self>;
    /// Rendering used in reports: `p/q` for rationals, a decimal otherwise.
    fn to_report_string(&self) -> String;
    /// Rounds into the floating domain at the current precision.
    fn to_real(&self) -> Real;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, k: i32) -> Self {
        let mut acc = Self::one();
        let base = if k < 0 { self.recip() } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    /// `self += a * b`.
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b;
    }
}

/// Exact rational scalar.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exact(pub Rational);

/// Arbitrary-precision binary floating-point scalar.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Real(pub Float);

impl Real {
    pub fn new(v: f64) -> Self {
        Real(Float::with_val(precision_bits(), v))
    }

    pub fn precision(&self) -> u32 {
        self.0.prec()
    }
}

impl Exact {
    pub fn new(num: i64, den: i64) -> Self {
        Exact(Rational::from((num, den)))
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }
}

macro_rules! binop {
    ($ty:ident, $tr:ident, $f:ident, $tra:ident, $fa:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $f(mut self, rhs: $ty) -> $ty {
                $tra::$fa(&mut self.0, rhs.0);
                self
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $f(mut self, rhs: &'a $ty) -> $ty {
                $tra::$fa(&mut self.0, &rhs.0);
                self
            }
        }
        impl $tra for $ty {
            fn $fa(&mut self, rhs: $ty) {
                $tra::$fa(&mut self.0, rhs.0);
            }
        }
        impl<'a> $tra<&'a $ty> for $ty {
            fn $fa(&mut self, rhs: &'a $ty) {
                $tra::$fa(&mut self.0, &rhs.0);
            }
        }
    };
}

binop!(Exact, Add, add, AddAssign, add_assign);
binop!(Exact, Sub, sub, SubAssign, sub_assign);
binop!(Exact, Mul, mul, MulAssign, mul_assign);
binop!(Exact, Div, div, DivAssign, div_assign);
binop!(Real, Add, add, AddAssign, add_assign);
binop!(Real, Sub, sub, SubAssign, sub_assign);
binop!(Real, Mul, mul, MulAssign, mul_assign);
binop!(Real, Div, div, DivAssign, div_assign);

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact(-self.0)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_report_string())
    }
}

/// Significant decimal digits carried by `bits` binary digits.
pub fn decimal_digits(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact(Rational::new())
    }
    fn one() -> Self {
        Exact(Rational::from(1))
    }
    fn from_i64(v: i64) -> Self {
        Exact(Rational::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        Exact(q.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }
    fn abs(&self) -> Self {
        Exact(self.0.clone().abs())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn sqrt(&self) -> Result<Self> {
        rational_sqrt(&self.0)
            .map(Exact)
            .ok_or_else(|| Error::NotASquare(self.0.to_string()))
    }
    fn to_report_string(&self) -> String {
        self.0.to_string()
    }
    fn to_real(&self) -> Real {
        Real(Float::with_val(precision_bits(), &self.0))
    }
}

impl Scalar for Real {
    const EXACT: bool = false;

    fn zero() -> Self {
        Real(Float::with_val(precision_bits(), 0))
    }
    fn one() -> Self {
        Real(Float::with_val(precision_bits(), 1))
    }
    fn from_i64(v: i64) -> Self {
        Real(Float::with_val(precision_bits(), v))
    }
    fn from_rational(q: &Rational) -> Self {
        Real(Float::with_val(precision_bits(), q))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn abs(&self) -> Self {
        Real(self.0.clone().abs())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn sqrt(&self) -> Result<Self> {
        if self.0.is_sign_negative() && !self.0.is_zero() {
            return Err(Error::NegativeRadicand(self.to_f64()));
        }
        Ok(Real(self.0.clone().sqrt()))
    }
    fn to_report_string(&self) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let digits = decimal_digits(self.0.prec());
        self.0.to_string_radix_round(10, Some(digits), rug::float::Round::Nearest)
    }
    fn to_real(&self) -> Real {
        self.clone()
    }
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn powi(&self, k: i32) -> Self {
        Real(self.0.clone().pow(k))
    }
}

/// Exact square root of a rational, if it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.cmp0() == Ordering::Less {
        return None;
    }
    let num = integer_sqrt(q.numer())?;
    let den = integer_sqrt(q.denom())?;
    Some(Rational::from((num, den)))
}

fn integer_sqrt(n: &Integer) -> Option<Integer> {
    if !n.is_perfect_square() {
        return None;
    }
    Some(n.clone().sqrt())
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"1.5e4"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Ok(q) = Rational::from_str(t) {
        return Ok(q);
    }
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut q = Rational::from(Integer::from_str(&digits).map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = Rational::from(10);
    if shift >= 0 {
        q *= ten.pow(shift as u32);
    } else {
        q /= ten.pow((-shift) as u32);
    }
    if neg {
        q = -q;
    }
    Ok(q)
}

/// The parameter `d` together with `√d`, when the latter is representable.
#[derive(Clone, Debug)]
pub struct DParam<T: Scalar> {
    pub rational: Rational,
    pub d: T,
    root: Option<T>,
}

impl<T: Scalar> DParam<T> {
    pub fn new(d: &Rational) -> Result<Self> {
        if d.cmp0() != Ordering::Greater {
            return Err(Error::Inadmissible(format!("d = {d} must be positive")));
        }
        let value = T::from_rational(d);
        let root = value.sqrt().ok();
        Ok(DParam { rational: d.clone(), d: value, root })
    }

    pub fn from_i64(d: i64) -> Result<Self> {
        Self::new(&Rational::from(d))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&parse_rational(s)?)
    }

    pub fn sqrt_d(&self) -> Result<&T> {
        self.root
            .as_ref()
            .ok_or_else(|| Error::NotASquare(self.rational.to_string()))
    }

    /// `(√d)^k`; odd `k` needs a representable square root.
    pub fn t_pow(&self, k: i32) -> Result<T> {
        if k % 2 == 0 {
            Ok(self.d.powi(k / 2))
        } else {
            Ok(self.sqrt_d()?.powi(k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sqrt_of_square() {
        let q = Exact(Rational::from((9, 4)));
        assert_eq!(q.sqrt().unwrap(), Exact(Rational::from((3, 2))));
        assert!(Exact::from_i64(2).sqrt().is_err());
    }

    #[test]
    fn real_sqrt_two_digits() {
        let r = Real::from_i64(2).sqrt().unwrap();
        let s = r.to_report_string();
        assert!(s.starts_with("1.41421356237309504880168872420969807856967187537694"));
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_rational("10000").unwrap(), Rational::from(10000));
        assert_eq!(parse_rational("1e4").unwrap(), Rational::from(10000));
        assert_eq!(parse_rational("2.5").unwrap(), Rational::from((5, 2)));
        assert_eq!(parse_rational("-3/4").unwrap(), Rational::from((-3, 4)));
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn dparam_half_powers() {
        let p = DParam::<Exact>::from_i64(1_000_000).unwrap();
        assert_eq!(p.t_pow(1).unwrap(), Exact::from_i64(1000));
        assert_eq!(p.t_pow(-2).unwrap(), Exact::new(1, 1_000_000));
        let q = DParam::<Exact>::from_i64(2).unwrap();
        assert!(q.t_pow(1).is_err());
        assert_eq!(q.t_pow(2).unwrap(), Exact::from_i64(2));
    }

    #[test]
    fn powi_negative() {
        let x = Exact::from_i64(3);
        assert_eq!(x.powi(-2), Exact::new(1, 9));
    }
}
