use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::FoundationError;

/// Ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    /// The prime field of order `p`; rejects non-primes.
    pub fn prime(p: u64) -> Result<Field, FoundationError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FoundationError::InvalidModulus(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// An exact element of a [`Field`].
///
/// Arithmetic operators panic when the operands live in different fields;
/// callers that cannot rule this out use the `try_*` variants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(Rational::zero()),
            Field::Prime(p) => Scalar::Fp { value: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(Rational::from_i64(n)),
            Field::Prime(p) => Scalar::Fp {
                value: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    /// `(-1)^e`.
    pub fn sign(field: Field, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            Scalar::one(field)
        } else {
            Scalar::from_i64(field, -1)
        }
    }

    /// Maps a rational into `field`; fails when the denominator vanishes mod p.
    pub fn from_rational(field: Field, r: &Rational) -> Result<Scalar, FoundationError> {
        match field {
            Field::Rational => Ok(Scalar::Q(r.clone())),
            Field::Prime(p) => r
                .mod_prime(p)
                .map(|value| Scalar::Fp { value, p })
                .ok_or(FoundationError::DivisionByZero),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), FoundationError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FoundationError::MixedField(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FoundationError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FoundationError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FoundationError> {
        self.try_add(&-other)
    }

    pub fn inv(&self) -> Result<Scalar, FoundationError> {
        if self.is_zero() {
            return Err(FoundationError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(r) => Scalar::Q(r.inv().expect("nonzero")),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FoundationError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { value, p } => write!(f, "{value} (mod {p})"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.neg()),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar operands from different fields")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$try(&rhs).expect("scalar operands from different fields")
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$try(rhs).expect("scalar operands from different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(Rational::from_i128_pair(n as i128, d as i128))
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(91).is_err());
        assert!(Field::prime(1_000_000_007).is_ok());
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            Scalar::zero(Field::Rational).inv(),
            Err(FoundationError::DivisionByZero)
        );
        assert!(Scalar::zero(Field::Prime(5)).inv().is_err());
    }

    #[test]
    fn mixed_fields_error() {
        let a = Scalar::one(Field::Rational);
        let b = Scalar::one(Field::Prime(3));
        assert!(matches!(a.try_add(&b), Err(FoundationError::MixedField(..))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let three = Scalar::from_i64(f, 3);
        assert_eq!(&three * &three.inv().unwrap(), Scalar::one(f));
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 6));
        let half = Scalar::from_rational(f, &Rational::parse("1/2").unwrap()).unwrap();
        assert_eq!(&half + &half, Scalar::one(f));
    }

    fn arb_q() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_f7() -> impl Strategy<Value = Scalar> {
        (0i64..7).prop_map(|n| Scalar::from_i64(Field::Prime(7), n))
    }

    #[allow(clippy::eq_op)]
    fn field_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert!((a - a).is_zero());
        if !a.is_zero() {
            assert!((a * &a.inv().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            field_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in arb_f7(), b in arb_f7(), c in arb_f7()) {
            field_axioms(&a, &b, &c);
        }
    }
}
