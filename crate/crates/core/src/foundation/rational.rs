use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number with an inline fast path for word-sized values.
///
/// Values are kept canonical: whenever numerator and denominator fit in an
/// `i64` the `Small` representation is used, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    pub fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    /// Builds `num/den`; `den` must be nonzero.
    pub fn from_i128_pair(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if b == d {
                return Self::from_i128_pair(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y), Some(z)) = (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                if let Some(s) = x.checked_add(y) {
                    return Self::from_i128_pair(s, z);
                }
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *b == 1 && *d == 1 {
                return Self::from_i128_pair(*a as i128 * *c as i128, 1);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Self::from_i128_pair(a * c, b * d);
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128_pair(*d as i128, *n as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        })
    }

    /// Parses `n` or `n/d` with optional leading sign.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    /// Residue modulo a prime `p`, or `None` when `p` divides the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = self.numer().mod_floor(&pb).to_u64().unwrap_or(0);
        let den = self.denom().mod_floor(&pb).to_u64().unwrap_or(0);
        if den == 0 {
            return None;
        }
        Some(super::scalar::mul_mod(num, super::scalar::inv_mod(den, p), p))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            return (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128));
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes_and_demotes() {
        let big = Rational::from_i64(i64::MAX);
        let sum = big.add(&Rational::one());
        assert!(matches!(sum, Rational::Big(_)));
        let back = sum.sub(&Rational::one());
        assert_eq!(back, Rational::from_i64(i64::MAX));
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn canonical_reduction() {
        assert_eq!(Rational::from_i128_pair(2, -4), Rational::Small(-1, 2));
        assert_eq!(Rational::parse("6/4").unwrap(), Rational::Small(3, 2));
        assert_eq!(Rational::parse(" -3 ").unwrap().to_string(), "-3");
        assert!(Rational::parse("1/0").is_none());
    }

    #[test]
    fn min_value_negation() {
        let m = Rational::from_i64(i64::MIN);
        assert_eq!(m.neg().neg(), m);
        assert!(!m.neg().is_negative());
    }

    #[test]
    fn residues() {
        assert_eq!(Rational::parse("1/2").unwrap().mod_prime(7), Some(4));
        assert_eq!(Rational::parse("-1").unwrap().mod_prime(5), Some(4));
        assert_eq!(Rational::parse("1/3").unwrap().mod_prime(3), None);
    }
}
