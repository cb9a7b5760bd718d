//! Arbitrary-precision real scalars.
//!
//! Every quantity in this crate is a [`Real`]: an MPFR float pinned to a
//! working precision chosen in *decimal digits*. Operations are correctly
//! rounded at the operand precision (the wider operand wins when they
//! differ), so a computation seeded from one [`Prec`] stays at that
//! precision throughout.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Round;
use rug::ops::CompleteRound;
use rug::Float;
use serde::Serialize;

/// Working precision, fixed in decimal digits.
///
/// The bit count carries a small guard margin over `digits * log2(10)` so
/// that the last requested decimal digit survives rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prec {
    digits: u32,
    bits: u32,
}

impl Prec {
    pub fn decimal(digits: u32) -> Self {
        assert!(digits >= 8, "precision below 8 digits is not supported");
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 12;
        Prec { digits, bits }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Same decimal target with `extra` additional guard digits.
    pub fn with_guard(self, extra: u32) -> Self {
        Prec::decimal(self.digits + extra)
    }

    pub fn zero(self) -> Real {
        Real(Float::new(self.bits))
    }

    pub fn one(self) -> Real {
        Real(Float::with_val(self.bits, 1))
    }

    pub fn from_i64(self, v: i64) -> Real {
        Real(Float::with_val(self.bits, v))
    }

    pub fn from_f64(self, v: f64) -> Real {
        Real(Float::with_val(self.bits, v))
    }

    /// Parse a decimal literal at this precision.
    pub fn parse(self, s: &str) -> Result<Real, rug::float::ParseFloatError> {
        Ok(Real(Float::with_val(self.bits, Float::parse(s)?)))
    }

    /// Exact ratio p/q rounded once at this precision.
    pub fn ratio(self, p: i64, q: i64) -> Real {
        let num = Float::with_val(self.bits, p);
        Real(num / q)
    }

    /// `10^e`, correctly rounded.
    pub fn pow10(self, e: i32) -> Real {
        let ten = Float::with_val(self.bits, 10);
        Real(ten.pow(e))
    }

    pub fn pi(self) -> Real {
        Real(Float::with_val(self.bits, rug::float::Constant::Pi))
    }
}

use rug::ops::Pow;

/// Arbitrary-precision real scalar; the arithmetic substrate for the crate.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    fn out_prec(&self, other: &Real) -> u32 {
        self.0.prec().max(other.0.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn zero_like(&self) -> Real {
        Real(Float::new(self.0.prec()))
    }

    pub fn one_like(&self) -> Real {
        Real(Float::with_val(self.0.prec(), 1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn neg_ref(&self) -> Real {
        Real((-&self.0).complete(self.0.prec()))
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    /// Nonnegative square root; NaN for negative input (caller's bug).
    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn powi(&self, e: i32) -> Real {
        Real(self.0.clone().pow(e))
    }

    /// k-th root, k >= 1 (input must be nonnegative for even k).
    pub fn root(&self, k: u32) -> Real {
        Real(self.0.clone().root(k))
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn min_ref(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_ref(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_sign_negative() {
            -1
        } else {
            1
        }
    }

    pub fn total_cmp(&self, other: &Real) -> Ordering {
        self.partial_cmp(other).expect("NaN in Real comparison")
    }

    /// Round to a different precision (used when crossing guard boundaries).
    pub fn round_to(&self, prec: Prec) -> Real {
        let mut f = self.0.clone();
        f.set_prec_round(prec.bits(), Round::Nearest);
        Real(f)
    }

    /// Canonical scientific decimal form with `digits` significant digits,
    /// e.g. `-1.4011551890920506e0`. Stable across runs.
    pub fn to_decimal(&self, digits: u32) -> String {
        if !self.0.is_finite() {
            return if self.0.is_nan() {
                "nan".to_string()
            } else if self.0.is_sign_negative() {
                "-inf".to_string()
            } else {
                "inf".to_string()
            };
        }
        if self.0.is_zero() {
            return "0".to_string();
        }
        let (sign, mantissa, exp) = self.to_sign_mantissa_exp(digits);
        let mut s = String::new();
        if sign {
            s.push('-');
        }
        s.push(mantissa.as_bytes()[0] as char);
        s.push('.');
        s.push_str(&mantissa[1..]);
        s.push('e');
        s.push_str(&exp.to_string());
        s
    }

    fn to_sign_mantissa_exp(&self, digits: u32) -> (bool, String, i64) {
        let raw = self
            .0
            .to_string_radix_round(10, Some(digits as usize), Round::Nearest);
        let (body, explicit_exp) = match raw.split_once('e') {
            Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap()),
            None => (raw, 0),
        };
        let neg = body.starts_with('-');
        let digits_before_point = match body.find('.') {
            Some(dot) => body[..dot].chars().filter(|c| c.is_ascii_digit()).count() as i64,
            None => body.chars().filter(|c| c.is_ascii_digit()).count() as i64,
        };
        let mut mantissa: String = body.chars().filter(|c| c.is_ascii_digit()).collect();
        // strip leading zeros of sub-unit values like 0.25, adjusting the exponent
        let lead_zeros = mantissa.chars().take_while(|&c| c == '0').count() as i64;
        mantissa = mantissa.trim_start_matches('0').to_string();
        if mantissa.is_empty() {
            mantissa.push('0');
        }
        while (mantissa.len() as u32) < digits {
            mantissa.push('0');
        }
        let sci_exp = explicit_exp + digits_before_point - lead_zeros - 1;
        (neg, mantissa, sci_exp)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.20e}", self.0.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.0.prec() as f64 / std::f64::consts::LOG2_10) as u32;
        write!(f, "{}", self.to_decimal(digits.saturating_sub(3).max(8)))
    }
}

impl Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let digits = (self.0.prec() as f64 / std::f64::consts::LOG2_10) as u32;
        ser.serialize_str(&self.to_decimal(digits.saturating_sub(3).max(8)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real((&self.0 $op &rhs.0).complete(self.out_prec(rhs)))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<i64> for &Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                Real((&self.0 $op rhs).complete(self.0.prec()))
            }
        }
        impl $trait<i64> for Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.neg_ref()
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, rhs: &Real) {
        self.0 *= &rhs.0;
    }
}

impl PartialEq<i64> for Real {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for Real {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correctly_rounded_sqrt2() {
        let p = Prec::decimal(50);
        let two = p.from_i64(2);
        let s = two.sqrt();
        let expected = p
            .parse("1.4142135623730950488016887242096980785696718753769")
            .unwrap();
        assert!((s - expected).abs() < p.pow10(-48));
    }

    #[test]
    fn decimal_formatting_is_canonical() {
        let p = Prec::decimal(30);
        let x = p.parse("-1.401155189092050e0").unwrap();
        let s = x.to_decimal(16);
        assert_eq!(s, "-1.401155189092050e0");
        let y = p.parse("0.25").unwrap();
        assert_eq!(y.to_decimal(3), "2.50e-1");
    }

    #[test]
    fn precision_propagates_through_ops() {
        let p = Prec::decimal(50);
        let a = p.from_f64(1.5);
        let b = p.from_f64(2.5);
        let c = &a * &b + a.clone() - 3i64;
        assert_eq!(c.prec(), p.bits());
        assert_eq!(c.to_f64(), 2.25);
    }

    #[test]
    fn comparison_with_tolerance_is_deterministic() {
        let p = Prec::decimal(50);
        let tol = p.pow10(-48);
        let a = p.one();
        let b = &a + &tol * 2i64;
        assert!(b > a);
    }
}
