//! The base field: arbitrary-precision rationals, plus a small prime field
//! used to cross-check the generic algorithms over a second coefficient
//! domain.
//!
//! `Rat` is always stored in lowest terms with a positive denominator, so
//! structural equality is mathematical equality. The text form is `a/b`,
//! with `/1` omitted.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{ArithError, Field};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Construct `n/d`, normalizing to lowest terms with positive denominator.
    ///
    /// Panics when `d` is zero.
    pub fn new(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(n, d))
    }

    pub fn from_int(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_i64s(n: i64, d: i64) -> Self {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact conversion to `i64` when the value is a small integer.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        self.numer().to_i64()
    }

    /// Parse the decimal-free exact form `a`, `-a`, or `a/b`.
    pub fn parse(text: &str) -> Option<Self> {
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

/// The field of rationals, as a context object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type El = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn neg(&self, a: &Rat) -> Rat {
        -a
    }

    fn inv(&self, a: &Rat) -> Result<Rat, ArithError> {
        a.inv()
    }

    fn from_rat(&self, q: &Rat) -> Rat {
        q.clone()
    }

    fn el_string(&self, a: &Rat) -> String {
        a.to_string()
    }

    fn poly_gcd(&self, f: &Poly<Self>, g: &Poly<Self>) -> Result<Poly<Self>, ArithError> {
        Ok(crate::poly::subresultant_gcd_rational(f, g))
    }
}

/// `Z/p` for an odd prime `p < 2^31`. Elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "modulus out of range");
        debug_assert!(is_prime_u64(p), "modulus must be prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = n.mod_floor(&m);
        r.to_u64().expect("residue fits")
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, self.p);
            }
            b = mulmod(b, b, self.p);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for 64-bit range
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let p = n;
            let mut acc = 1u64;
            let mut b = a % p;
            let mut e = d;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b, p);
                }
                b = mulmod(b, b, p);
                e >>= 1;
            }
            acc
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, ArithError> {
        if *a == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow(*a, self.p - 2))
    }

    /// Reduce a rational mod p. Panics when p divides the denominator; the
    /// prime field is a test/cross-check domain, not a user-facing one.
    fn from_rat(&self, q: &Rat) -> u64 {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        assert!(d != 0, "denominator divisible by modulus");
        mulmod(n, self.pow(d, self.p - 2), self.p)
    }

    fn el_string(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        // (1/2) + (1/3) = 5/6
        assert_eq!(&Rat::from_i64s(1, 2) + &Rat::from_i64s(1, 3), Rat::from_i64s(5, 6));
        // inv(3/7) = 7/3
        assert_eq!(Rat::from_i64s(3, 7).inv().unwrap(), Rat::from_i64s(7, 3));
        // 2/4 normalizes to 1/2
        assert_eq!(Rat::from_i64s(2, 4), Rat::from_i64s(1, 2));
        assert_eq!(Rat::from_i64s(2, 4).to_string(), "1/2");
        // negative denominators normalize away
        assert_eq!(Rat::from_i64s(1, -2), Rat::from_i64s(-1, 2));
        assert!(Rat::from_i64(0).inv().is_err());
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(Rat::from_i64(7).to_string(), "7");
        assert_eq!(Rat::from_i64s(-3, 2).to_string(), "-3/2");
        assert_eq!(Rat::parse("5/6"), Some(Rat::from_i64s(5, 6)));
        assert_eq!(Rat::parse("-4"), Some(Rat::from_i64(-4)));
        assert_eq!(Rat::parse("1/0"), None);
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(101);
        let a = 57u64;
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.from_rat(&Rat::from_i64s(1, 2)), 51); // 2*51 = 102 = 1 mod 101
        assert!(f.inv(&0).is_err());
    }

    #[test]
    fn primality_check() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1_000_001)); // 101 * 9901
    }
}
