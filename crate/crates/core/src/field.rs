//! Exact scalars over the rationals and over prime fields.
//!
//! Every [`Scalar`] is kept in canonical form: rationals are reduced with a
//! positive denominator, residues live in `[0, p)`. Two scalars are equal
//! exactly when their representations are equal, so derived `Eq`/`Hash` are
//! sound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    /// Checks primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::Field(format!("modulus {p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// The field all entries of a matrix belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(Prime),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldSpec::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => {
                let m = p.get() as i128;
                Scalar::Residue {
                    value: (v as i128).rem_euclid(m) as u64,
                    modulus: p,
                }
            }
        }
    }

    /// Builds `numer / denom`, reducing into the field. Fails when `denom`
    /// is zero in the field.
    pub fn from_ratio(self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        let text = || format!("{numer}/{denom}");
        match self {
            FieldSpec::Rationals => {
                if denom.is_zero() {
                    return Err(Error::Scalar {
                        text: text(),
                        reason: "zero denominator".into(),
                    });
                }
                Ok(Scalar::Rational(BigRational::new(
                    numer.clone(),
                    denom.clone(),
                )))
            }
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let reduce = |v: &BigInt| {
                    let r = ((v % &m) + &m) % &m;
                    r.to_u64().expect("residue fits in u64")
                };
                let n = Scalar::Residue {
                    value: reduce(numer),
                    modulus: p,
                };
                let d = Scalar::Residue {
                    value: reduce(denom),
                    modulus: p,
                };
                match d.inverse() {
                    Some(inv) => Ok(&n * &inv),
                    None => Err(Error::Scalar {
                        text: text(),
                        reason: format!("denominator is not invertible mod {}", p.get()),
                    }),
                }
            }
        }
    }

    /// Parses an integer (`"-3"`) or a fraction (`"-1/2"`) into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::Scalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = parse_int(num).ok_or_else(|| bad("not an integer or fraction"))?;
        let denom: BigInt = parse_int(den).ok_or_else(|| bad("not an integer or fraction"))?;
        self.from_ratio(&numer, &denom)
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.field() == self
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({})", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `"Q"` or `"GF(p)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Field(format!("unknown field tag {s:?}")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Field(format!("bad modulus in {s:?}")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: Prime },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                let p = modulus.get();
                Scalar::Residue {
                    value: pow_mod(*value, p - 2, p),
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inverse().map(|inv| self * &inv)
    }

    /// The residue value, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
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

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let m = p.get();
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % m as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 {
                    0
                } else {
                    modulus.get() - value
                },
                modulus: *modulus,
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: mul_mod(*a, *b, p.get()),
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

/// Integers print bare, other rationals as reduced `a/b`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
    }

    #[test]
    fn field_tags() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap().modulus(), Some(5));
        assert!(matches!("GF(4)".parse::<FieldSpec>(), Err(Error::Field(_))));
        assert!(matches!("R".parse::<FieldSpec>(), Err(Error::Field(_))));
        assert!(matches!("GF(x)".parse::<FieldSpec>(), Err(Error::Field(_))));
        assert_eq!(FieldSpec::prime(7).unwrap().to_string(), "GF(7)");
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6"), q("-1/2"));
        assert_eq!(q("-1/2").to_string(), "-1/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(q("0/5").to_string(), "0");
        assert!(matches!(
            FieldSpec::Rationals.parse_scalar("1/0"),
            Err(Error::Scalar { .. })
        ));
        for bad in ["", "1.5", "a", "1/2/3", "--1", "1/"] {
            assert!(FieldSpec::Rationals.parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn residue_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let three = f.from_i64(3);
        let five = f.from_i64(5);
        assert_eq!((&three + &five).residue(), Some(1));
        assert_eq!((&three - &five).residue(), Some(5));
        assert_eq!((&three * &five).residue(), Some(1));
        assert_eq!(three.inverse().unwrap(), five);
        assert_eq!(f.from_i64(-1).residue(), Some(6));
        assert!(f.zero().inverse().is_none());
        // 1/2 mod 7 = 4
        assert_eq!(f.parse_scalar("1/2").unwrap().residue(), Some(4));
        assert_eq!(f.parse_scalar("-8").unwrap().residue(), Some(6));
        assert!(f.parse_scalar("1/7").is_err());
    }

    #[test]
    fn every_nonzero_residue_has_inverse() {
        let f = FieldSpec::prime(13).unwrap();
        for v in 1..13 {
            let s = f.from_i64(v);
            assert!((&s * &s.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(&q("1/2") * &q("-4"), q("-2"));
        assert_eq!(q("-3/4").inverse().unwrap(), q("-4/3"));
        assert_eq!(q("1").div(&q("4")).unwrap(), q("1/4"));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &q("1") + &FieldSpec::prime(3).unwrap().one();
    }
}
