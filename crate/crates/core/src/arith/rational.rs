use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Integer power; negative exponents invert. Panics on `0^k` with `k < 0`.
    pub fn pow(&self, k: i64) -> Self {
        Rational(Pow::pow(&self.0, k))
    }

    /// Exponent of `p` in `self`: positive for numerator powers, negative for
    /// denominator powers.
    pub fn ord_p(&self, p: u64) -> Result<i64> {
        if !is_prime(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        if self.is_zero() {
            return Err(Error::UndefinedOrder);
        }
        Ok(ord_p_int(self.numer(), p) as i64 - ord_p_int(self.denom(), p) as i64)
    }

    /// Exact square root when `self` is the square of a rational; the
    /// non-negative root is returned.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().magnitude();
        let d = self.denom().magnitude();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational::new(BigInt::from(rn), BigInt::from(rd)))
        } else {
            None
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

/// Number of times `p` divides `n` (`n` nonzero).
pub fn ord_p_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut m = n.magnitude().clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes dividing `n`, ascending. Trial division; `n` must be nonzero.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !m.is_one() {
        let bp = BigUint::from(p);
        if (&bp * &bp) > m {
            out.push(m.to_u64().expect("cofactor exceeds u64"));
            break;
        }
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out
}

pub fn primes_upto(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&k| is_prime(k)).collect()
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `num` or `num/den`; `den` must be positive and the fraction in
    /// lowest terms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::arg(format!("malformed rational '{s}'"));
        match s.split_once('/') {
            None => Ok(Rational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
            Some((n, d)) => {
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.sign() != Sign::Plus || !n.gcd(&d).is_one() {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $f(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$f(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational(self.0.$f(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $f(self, rhs: &Rational) -> Rational {
                Rational(self.0.$f(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational((&self.0).$f(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn ord_p_examples() {
        assert_eq!(q(6, 1).ord_p(3).unwrap(), 1);
        assert_eq!(q(3, 8).ord_p(2).unwrap(), -3);
        assert_eq!(q(10, 3).ord_p(5).unwrap(), 1);
    }

    #[test]
    fn ord_p_errors() {
        assert!(matches!(
            Rational::zero().ord_p(3),
            Err(Error::UndefinedOrder)
        ));
        assert!(matches!(q(6, 1).ord_p(4), Err(Error::Argument(_))));
    }

    #[test]
    fn lowest_terms_and_display() {
        let r = q(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(q(0, 5).to_string(), "0");
        assert_eq!(*q(0, 5).denom(), BigInt::from(1));
    }

    #[test]
    fn parse_rejects_non_canonical() {
        assert_eq!("-31/3".parse::<Rational>().unwrap(), q(-31, 3));
        assert!("2/4".parse::<Rational>().is_err());
        assert!("1/-3".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(1024, 1).sqrt_exact(), Some(q(32, 1)));
        assert_eq!(q(9, 49).sqrt_exact(), Some(q(3, 7)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_upto(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(prime_divisors(&BigInt::from(-360)), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(
            prime_divisors(&BigInt::from(2 * 1_000_003i64)),
            vec![2, 1_000_003]
        );
    }

    proptest! {
        #[test]
        fn ord_p_is_additive(a in 1i64..5000, b in 1i64..5000, c in 1i64..5000, d in 1i64..5000,
                             p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
            let x = q(a, b);
            let y = q(-c, d);
            prop_assert_eq!((&x * &y).ord_p(p).unwrap(), x.ord_p(p).unwrap() + y.ord_p(p).unwrap());
        }
    }
}
