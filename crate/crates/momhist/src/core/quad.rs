//! Exact arithmetic over numbers of the form `a + b·√r`.
//!
//! Method-of-moments widths are square roots of rationals, so the solved
//! (t0, h) point lives in a quadratic extension of the rationals. Signs,
//! comparisons against rationals, and therefore bin counts at such points are
//! all decidable exactly — the joint-consistency verdict never hinges on a
//! floating-point rounding.

use std::cmp::Ordering;

use crate::core::scalar::Scalar;

/// `a + b·√r` with a fixed positive radicand `r`.
#[derive(Clone, Debug)]
pub struct Quad {
    a: Scalar,
    b: Scalar,
    r: Scalar,
}

impl Quad {
    /// The pure square root `√r`; requires `r > 0`.
    pub fn sqrt(r: Scalar) -> Quad {
        assert!(r.is_positive(), "radicand must be positive");
        Quad {
            a: Scalar::zero(),
            b: Scalar::one(),
            r,
        }
    }

    /// `a + b·√r`.
    pub fn new(a: Scalar, b: Scalar, r: Scalar) -> Quad {
        assert!(r.is_positive(), "radicand must be positive");
        Quad { a, b, r }
    }

    pub fn radicand(&self) -> &Scalar {
        &self.r
    }

    /// `self + s` for rational `s`.
    pub fn add_scalar(&self, s: &Scalar) -> Quad {
        Quad {
            a: &self.a + s,
            b: self.b.clone(),
            r: self.r.clone(),
        }
    }

    /// `self · s` for rational `s`.
    pub fn scale(&self, s: &Scalar) -> Quad {
        Quad {
            a: &self.a * s,
            b: &self.b * s,
            r: self.r.clone(),
        }
    }

    /// `self + other`; both operands must share the radicand.
    pub fn add(&self, other: &Quad) -> Quad {
        debug_assert_eq!(self.r, other.r, "mixed radicands");
        Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            r: self.r.clone(),
        }
    }

    /// Sign of `a + b·√r`, decided exactly.
    pub fn signum(&self) -> i8 {
        match (self.a.signum(), self.b.signum()) {
            (0, 0) => 0,
            (sa, 0) => sa,
            (0, sb) => sb,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, -1) => {
                // positive iff a² > b²·r
                (&self.a * &self.a - &self.b * &self.b * &self.r).signum()
            }
            (-1, 1) => {
                // positive iff b²·r > a²
                (&self.b * &self.b * &self.r - &self.a * &self.a).signum()
            }
            _ => unreachable!(),
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_scalar(&self, s: &Scalar) -> Ordering {
        let diff = Quad {
            a: &self.a - s,
            b: self.b.clone(),
            r: self.r.clone(),
        };
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.r.to_f64().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn sqrt_two_brackets() {
        let sqrt2 = Quad::sqrt(s("2"));
        assert_eq!(sqrt2.cmp_scalar(&s("1.41421356237")), Ordering::Greater);
        assert_eq!(sqrt2.cmp_scalar(&s("1.41421356238")), Ordering::Less);
    }

    #[test]
    fn exact_equality_cases() {
        // 3 - 2·√(9/4) = 0
        let v = Quad::new(s("3"), s("-2"), s("9/4"));
        assert_eq!(v.signum(), 0);
        // √(4/9) == 2/3
        assert_eq!(Quad::sqrt(s("4/9")).cmp_scalar(&s("2/3")), Ordering::Equal);
    }

    #[test]
    fn mixed_sign_branches() {
        // 2 - √3 > 0, 1 - √3 < 0
        assert_eq!(Quad::new(s("2"), s("-1"), s("3")).signum(), 1);
        assert_eq!(Quad::new(s("1"), s("-1"), s("3")).signum(), -1);
        // -2 + √3 < 0, -1 + √3 > 0
        assert_eq!(Quad::new(s("-2"), s("1"), s("3")).signum(), -1);
        assert_eq!(Quad::new(s("-1"), s("1"), s("3")).signum(), 1);
    }

    #[test]
    fn affine_combination() {
        // (1 + √2)·3 - 3 = 3·√2
        let v = Quad::new(s("1"), s("1"), s("2")).scale(&s("3")).add_scalar(&s("-3"));
        assert_eq!(v.cmp_scalar(&s("4.24264068711")), Ordering::Greater);
        assert_eq!(v.cmp_scalar(&s("4.24264068712")), Ordering::Less);
    }
}
