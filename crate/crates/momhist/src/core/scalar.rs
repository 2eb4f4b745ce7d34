//! Exact rational scalar.
//!
//! All data values and bin parameters are rationals parsed from decimal text
//! without rounding. Geometry never touches floating point; `f64` appears
//! only in explicitly approximate outputs (skewness, likelihood scores,
//! display decimals).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p / q`; panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Parses a plain decimal numeral: optional sign, digits, optional
    /// fractional part (`-7`, `.37`, `2.0382`). No exponents.
    pub fn parse_decimal(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::ParseRational {
            text: text.to_string(),
        };
        if t.is_empty() {
            return Err(bad());
        }
        let (sign, digits) = match t.as_bytes()[0] {
            b'+' => (1, &t[1..]),
            b'-' => (-1, &t[1..]),
            _ => (1, t),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let mut num: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let mut den = BigInt::one();
        for b in frac_part.bytes() {
            num = num * 10 + (b - b'0');
            den *= 10;
        }
        if sign < 0 {
            num = -num;
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    /// Parses either a decimal numeral or an exact `p/q` ratio.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let bad = || Error::ParseRational {
                text: text.to_string(),
            };
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar(BigRational::new(p, q)))
        } else {
            Self::parse_decimal(t)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Sign as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Canonical exact form: `p/q` in lowest terms, or just `p` for integers.
    pub fn ratio_string(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    /// Informational decimal with up to 12 significant digits, round half up,
    /// trailing zeros trimmed. Plain notation for moderate magnitudes,
    /// scientific otherwise.
    pub fn decimal_string(&self) -> String {
        const SIG: i64 = 12;
        if self.0.is_zero() {
            return "0".to_string();
        }
        let neg = self.0.is_negative();
        let a = self.0.abs();
        let mut e = exponent_floor(&a);
        let (mut digits, carried) = round_to_digits(&a, e, SIG);
        if carried {
            e += 1;
            digits = round_to_digits(&a, e, SIG).0;
        }
        let digits: Vec<u8> = digits.into_bytes();
        let body = if (0..=14).contains(&e) {
            let e = e as usize;
            if e < digits.len() {
                let int_part: String = String::from_utf8_lossy(&digits[..=e]).into_owned();
                let frac_part = trim_zeros(&digits[e + 1..]);
                if frac_part.is_empty() {
                    int_part
                } else {
                    format!("{int_part}.{frac_part}")
                }
            } else {
                let mut int_part = String::from_utf8_lossy(&digits).into_owned();
                int_part.push_str(&"0".repeat(e + 1 - digits.len()));
                int_part
            }
        } else if (-9..0).contains(&e) {
            let zeros = "0".repeat((-e - 1) as usize);
            let frac = trim_zeros(&digits);
            format!("0.{zeros}{frac}")
        } else {
            let head = digits[0] as char;
            let tail = trim_zeros(&digits[1..]);
            if tail.is_empty() {
                format!("{head}e{e}")
            } else {
                format!("{head}.{tail}e{e}")
            }
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Floor of log10 for a positive rational.
fn exponent_floor(a: &BigRational) -> i64 {
    let nd = a.numer().to_string().len() as i64;
    let dd = a.denom().to_string().len() as i64;
    let mut e = nd - dd;
    while a >= &pow10(e + 1) {
        e += 1;
    }
    while a < &pow10(e) {
        e -= 1;
    }
    e
}

fn pow10(e: i64) -> BigRational {
    let base = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// `sig` leading digits of `a` (whose magnitude exponent is `e`), rounded
/// half up. Returns the digit string and whether rounding overflowed into one
/// more digit (caller bumps the exponent and retries).
fn round_to_digits(a: &BigRational, e: i64, sig: i64) -> (String, bool) {
    let scaled = a * pow10(sig - 1 - e);
    let m = (scaled + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    let s = m.to_string();
    if s.len() as i64 > sig {
        (s, true)
    } else {
        (format!("{s:0>width$}", width = sig as usize), false)
    }
}

fn trim_zeros(digits: &[u8]) -> String {
    let end = digits.iter().rposition(|&b| b != b'0').map_or(0, |i| i + 1);
    String::from_utf8_lossy(&digits[..end]).into_owned()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ratio_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ratio_string())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<u32> for Scalar {
    fn from(n: u32) -> Self {
        Scalar::from_int(n as i64)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    #[test]
    fn parses_decimal_without_rounding() {
        let v = Scalar::parse_decimal("2.0382").unwrap();
        assert_eq!(v, Scalar::from_ratio(10191, 5000));
        assert_eq!(Scalar::parse_decimal(".37").unwrap(), Scalar::from_ratio(37, 100));
        assert_eq!(Scalar::parse_decimal("-7").unwrap(), Scalar::from_int(-7));
        assert_eq!(Scalar::parse_decimal("+0.5").unwrap(), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn rejects_junk() {
        for bad in ["", ".", "1.2.3", "1e5", "abc", "--1", "1/0"] {
            assert!(Scalar::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn parses_ratio_form() {
        assert_eq!(s("-4/6"), Scalar::from_ratio(-2, 3));
        assert_eq!(s("10/5"), Scalar::from_int(2));
    }

    #[test]
    fn exact_arithmetic() {
        let third = Scalar::from_ratio(1, 3);
        let sum = &third + &third + &third;
        assert_eq!(sum, Scalar::one());
        assert_eq!(&s("0.1") + &s("0.2"), s("0.3"));
    }

    #[test]
    fn ratio_strings() {
        assert_eq!(s("2.0382").ratio_string(), "10191/5000");
        assert_eq!(s("-7").ratio_string(), "-7");
        assert_eq!(s("0").ratio_string(), "0");
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(s("2.0382").decimal_string(), "2.0382");
        assert_eq!(s("-1/3").decimal_string(), "-0.333333333333");
        assert_eq!(s("8").decimal_string(), "8");
        assert_eq!(s("4/3").decimal_string(), "1.33333333333");
        assert_eq!(s("0").decimal_string(), "0");
        assert_eq!(s("1/1000000000000000").decimal_string(), "1e-15");
        assert_eq!(s("999999999999.5").decimal_string(), "1000000000000");
    }

    #[test]
    fn floor_behaviour() {
        assert_eq!(s("-1/3").floor_int(), BigInt::from(-1));
        assert_eq!(s("7/3").floor_int(), BigInt::from(2));
        assert_eq!(s("2").floor_int(), BigInt::from(2));
    }
}
