//! Exact rational arithmetic for chop widths and fuzz bands.
//!
//! Chop widths can be fractional (the recursive partition chops at width
//! `delta / 88`), so annulus membership tests compare integer distances
//! against rationals. Everything stays exact: comparisons cross-multiply
//! in `i128`.

use core::cmp::Ordering;
use core::fmt;

/// A rational number with positive denominator, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Ratio {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn int(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Ratio::int(0)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn add(&self, other: Ratio) -> Ratio {
        Ratio::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn sub(&self, other: Ratio) -> Ratio {
        Ratio::new(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn mul(&self, other: Ratio) -> Ratio {
        Ratio::new(self.num * other.num, self.den * other.den)
    }

    pub fn mul_int(&self, k: i64) -> Ratio {
        Ratio::new(self.num * k, self.den)
    }

    pub fn div_int(&self, k: i64) -> Ratio {
        Ratio::new(self.num, self.den * k)
    }

    /// Largest integer `f` with `f <= self`.
    pub fn floor(&self) -> i64 {
        let q = self.num / self.den;
        if self.num % self.den < 0 {
            q - 1
        } else {
            q
        }
    }

    /// Compares `self` against the integer `d` (typically a distance).
    pub fn cmp_int(&self, d: i64) -> Ordering {
        (self.num as i128).cmp(&(d as i128 * self.den as i128))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `true` iff `lo <= d` where `lo` is rational and `d` integral.
pub fn le_int(lo: Ratio, d: i64) -> bool {
    lo.cmp_int(d) != Ordering::Greater
}

/// `true` iff `d < hi` (strict) where `hi` is rational and `d` integral.
pub fn int_lt(d: i64, hi: Ratio) -> bool {
    hi.cmp_int(d) == Ordering::Greater
}

/// `true` iff `d <= hi` where `hi` is rational and `d` integral.
pub fn int_le(d: i64, hi: Ratio) -> bool {
    hi.cmp_int(d) != Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_cmp() {
        let a = Ratio::new(2, 4);
        assert_eq!(a, Ratio::new(1, 2));
        let b = Ratio::new(-3, -6);
        assert_eq!(a, b);
        let c = Ratio::new(1, -2);
        assert!(c < a);
        assert_eq!(Ratio::new(7, 3).floor(), 2);
        assert_eq!(Ratio::new(-7, 3).floor(), -3);
        assert_eq!(Ratio::int(6).div_int(3), Ratio::int(2));
    }

    #[test]
    fn int_comparisons() {
        let third = Ratio::new(1, 3);
        assert!(le_int(third, 1));
        assert!(!le_int(third, 0));
        assert!(int_lt(0, third));
        assert!(!int_lt(1, third));
        assert!(int_le(0, third));
    }
}
