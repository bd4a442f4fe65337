use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Rational exponent of ε, kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Ratio::new_raw(0, 1));
    pub const ONE: Exponent = Exponent(Ratio::new_raw(1, 1));

    /// Panics if `denominator` is zero.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        Exponent(Ratio::new(numerator, denominator))
    }

    pub fn integer(n: i64) -> Self {
        Exponent(Ratio::from_integer(n))
    }

    pub fn numerator(self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(self) -> bool {
        *self.0.numer() > 0
    }

    pub fn is_negative(self) -> bool {
        *self.0.numer() < 0
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn halve(self) -> Self {
        Exponent(self.0 / 2)
    }
}

impl From<Ratio<i64>> for Exponent {
    fn from(r: Ratio<i64>) -> Self {
        Exponent(r)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::integer(n)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Mul for Exponent {
    type Output = Exponent;
    fn mul(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 * rhs.0)
    }
}

/// Integers render bare, everything else as `(p/q)`, negatives parenthesized.
impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (self.numerator(), self.denominator());
        match (q, p < 0) {
            (1, false) => write!(f, "{p}"),
            (1, true) => write!(f, "({p})"),
            _ => write!(f, "({p}/{q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let e = Exponent::new(4, -6);
        assert_eq!((e.numerator(), e.denominator()), (-2, 3));
        assert_eq!(Exponent::new(3, 3), Exponent::ONE);
    }

    #[test]
    fn order_matches_rationals() {
        assert!(Exponent::new(1, 3) < Exponent::new(1, 2));
        assert!(Exponent::new(-1, 2) < Exponent::ZERO);
        assert!(Exponent::new(7, 2) > Exponent::integer(3));
    }

    #[test]
    fn display() {
        assert_eq!(Exponent::integer(2).to_string(), "2");
        assert_eq!(Exponent::integer(-1).to_string(), "(-1)");
        assert_eq!(Exponent::new(1, 2).to_string(), "(1/2)");
        assert_eq!(Exponent::new(-3, 2).to_string(), "(-3/2)");
    }
}
