//! Exact field elements: arbitrary-precision rationals or residues mod p.
//!
//! No floating point anywhere; every arithmetic operation is exact. Elements
//! of different fields never mix -- doing so is a programming error and
//! panics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The exact field computations run over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldSpecRepr {
    Rational,
    Prime { p: u64 },
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(repr: FieldSpecRepr) -> Result<Self, Error> {
        match repr {
            FieldSpecRepr::Rational => Ok(FieldSpec::Rational),
            FieldSpecRepr::Prime { p } => FieldSpec::prime(p),
        }
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> FieldSpecRepr {
        match f {
            FieldSpec::Rational => FieldSpecRepr::Rational,
            FieldSpec::Prime(p) => FieldSpecRepr::Prime { p },
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// The prime field F_p; errors unless `p` is prime.
    pub fn prime(p: u64) -> Result<FieldSpec, Error> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let p = *p;
                let r = (v as i128).rem_euclid(p as i128) as u64;
                Scalar::Prime {
                    value: r,
                    modulus: p,
                }
            }
        }
    }

    /// Number of elements, when finite.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    /// Parses "a" or "a/b" into a field element. Over a prime field the
    /// fraction is resolved by modular division.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let bad = || Error::ParseScalar(s.to_string());
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let num: BigInt = num_s.parse().map_err(|_| bad())?;
        let den: BigInt = match den_s {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let a = reduce_bigint(&num, *p);
                let b = reduce_bigint(&den, *p);
                if b == 0 {
                    return Err(bad());
                }
                let value = mul_mod(a, inv_mod(b, *p), *p);
                Ok(Scalar::Prime { value, modulus: *p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let r = ((v % &p_big) + &p_big) % &p_big;
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by the extended Euclidean algorithm; `a` must be nonzero
/// mod the prime `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// An exact field element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Prime {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Prime {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse; panics on zero (division by zero in any of the
    /// algorithms is a bug, pivots are checked before inverting).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => {
                assert!(!a.is_zero(), "zero has no inverse");
                Scalar::Rational(a.recip())
            }
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }

    /// Total order used only to canonicalize report output.
    pub(crate) fn sort_key(&self) -> (u64, BigRational) {
        match self {
            Scalar::Rational(r) => (0, r.clone()),
            Scalar::Prime { value, .. } => (*value, BigRational::zero()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(2).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let q = FieldSpec::Rational;
        assert_eq!(q.parse("1/2").unwrap().to_string(), "1/2");
        assert_eq!(q.parse("-4/2").unwrap().to_string(), "-2");
        assert_eq!(q.parse("7").unwrap().to_string(), "7");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());

        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse("10").unwrap().to_string(), "3");
        // 1/2 = 4 mod 7
        assert_eq!(f7.parse("1/2").unwrap().to_string(), "4");
        assert!(f7.parse("1/7").is_err());
    }

    #[test]
    fn field_spec_json() {
        assert_eq!(
            serde_json::to_string(&FieldSpec::Rational).unwrap(),
            r#"{"kind":"rational"}"#
        );
        assert_eq!(
            serde_json::to_string(&FieldSpec::Prime(7)).unwrap(),
            r#"{"kind":"prime","p":7}"#
        );
        let f: FieldSpec = serde_json::from_str(r#"{"kind":"prime","p":5}"#).unwrap();
        assert_eq!(f, FieldSpec::Prime(5));
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"prime","p":6}"#).is_err());
    }

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1, "a={a} p={p}");
            }
        }
    }

    proptest! {
        #[test]
        fn prop_field_axioms_mod_p(a in 0u64..13, b in 0u64..13, c in 0u64..13) {
            let f = FieldSpec::Prime(13);
            let (a, b, c) = (f.from_i64(a as i64), f.from_i64(b as i64), f.from_i64(c as i64));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv()), f.one());
            }
        }

        #[test]
        fn prop_rational_arithmetic(an in -20i64..20, ad in 1i64..9, bn in -20i64..20, bd in 1i64..9) {
            let q = FieldSpec::Rational;
            let a = q.parse(&format!("{an}/{ad}")).unwrap();
            let b = q.parse(&format!("{bn}/{bd}")).unwrap();
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).mul(&b), a);
            }
        }
    }
}
