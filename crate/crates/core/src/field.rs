//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! Every computation in this crate is exact: rationals are arbitrary-precision
//! `BigRational`, prime-field elements are reduced residues. There is no
//! floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The base field: the rationals, or the integers modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// Largest accepted prime modulus; keeps products inside u128.
const MAX_PRIME: u64 = u32::MAX as u64;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Validates a prime-field modulus.
    pub fn prime(p: u64) -> Result<FieldSpec, Error> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Mod { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Mod { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { v: r, p: *p }
            }
        }
    }

    /// Parses `"n"` or `"n/d"`; in a prime field the denominator is inverted.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::InvalidScalar(s.to_string()))?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| Error::InvalidScalar(s.to_string()))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::InvalidScalar(s.to_string()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(n, d))),
            FieldSpec::Prime(p) => {
                let pm = BigInt::from(*p);
                let nm = ((n % &pm) + &pm) % &pm;
                let dm = ((d % &pm) + &pm) % &pm;
                let nv: u64 = nm.try_into().expect("reduced residue fits u64");
                let dv: u64 = dm.try_into().expect("reduced residue fits u64");
                let num = Scalar::Mod { v: nv, p: *p };
                let den = Scalar::Mod { v: dv, p: *p };
                den.inv()
                    .map(|di| num.mul(&di))
                    .ok_or_else(|| Error::InvalidScalar(format!("{s}: denominator is 0 mod {p}")))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldSpec::Rationals, Scalar::Rat(_)) | (FieldSpec::Prime(_), Scalar::Mod { .. })
        ) && match (self, s) {
            (FieldSpec::Prime(p), Scalar::Mod { p: q, .. }) => p == q,
            _ => true,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of the base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by extended Euclid; `None` for 0.
fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                assert_eq!(p, q, "scalars from different fields");
                Scalar::Mod { v: mod_add(*a, *b, *p), p: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                assert_eq!(p, q, "scalars from different fields");
                Scalar::Mod { v: mod_mul(*a, *b, *p), p: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Mod { v, p } => mod_inv(*v, *p).map(|v| Scalar::Mod { v, p: *p }),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    /// Accumulates `self += a * b` without intermediate clones.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Canonical string form used by the JSON schema: `"n"` or `"n/d"`.
pub fn scalar_to_string(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Scalar::Mod { v, .. } => v.to_string(),
    }
}

/// True if the rational scalar is a non-negative integer; used by displays.
pub fn scalar_is_integer(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.denom().is_one() && !r.numer().is_negative(),
        Scalar::Mod { .. } => true,
    }
}
