//! Exact coefficient rings.
//!
//! Every coefficient is stored as a [`BigRational`]; the [`Ring`] context keeps
//! it in canonical form. Over `Z` the denominator is always one, over `Zmod:p`
//! the numerator is the least nonnegative residue, and over `Q` the value is
//! in lowest terms with a positive denominator. Structural equality of
//! canonical coefficients is therefore ring equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// A coefficient ring: `Z`, `Q` or `Z/p` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    kind: RingKind,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub const Z: Ring = Ring {
        kind: RingKind::Integers,
    };
    pub const Q: Ring = Ring {
        kind: RingKind::Rationals,
    };

    pub fn integers() -> Self {
        Self::Z
    }

    pub fn rationals() -> Self {
        Self::Q
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring {
            kind: RingKind::PrimeField(p),
        })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            RingKind::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// `Q` and `Z/p` are fields; only they support [`Ring::inv`].
    pub fn is_field(&self) -> bool {
        !matches!(self.kind, RingKind::Integers)
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    fn reduce(&self, c: Coeff) -> Coeff {
        match self.kind {
            RingKind::PrimeField(p) => {
                let p = BigInt::from(p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                debug_assert!(!den.is_zero(), "denominator divisible by p");
                if den.is_one() {
                    Coeff::from_integer(num)
                } else {
                    let inv = mod_inverse(&den, &p);
                    Coeff::from_integer((num * inv).mod_floor(&p))
                }
            }
            _ => c,
        }
    }

    /// The image of an integer under `Z -> R`.
    pub fn embed(&self, k: impl Into<BigInt>) -> Coeff {
        self.reduce(Coeff::from_integer(k.into()))
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// Fails over `Z` for non-integers and over `Z/p` when the denominator is
    /// divisible by `p`.
    pub fn coerce(&self, c: &Coeff) -> Result<Coeff> {
        match self.kind {
            RingKind::Integers if !c.is_integer() => {
                Err(Error::Parse(format!("{c} is not an integer")))
            }
            RingKind::PrimeField(p) if (c.denom() % BigInt::from(p)).is_zero() => Err(
                Error::Parse(format!("{c} has a denominator divisible by {p}")),
            ),
            _ => Ok(self.reduce(c.clone())),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a - b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce(-a)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce(a * b)
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplicative inverse; `None` over `Z` or for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() || !self.is_field() {
            return None;
        }
        match self.kind {
            RingKind::PrimeField(p) => {
                let p = BigInt::from(p);
                Some(Coeff::from_integer(mod_inverse(a.numer(), &p)))
            }
            _ => Some(a.recip()),
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        a.is_zero()
    }

    pub fn parse_coeff(&self, s: &str) -> Result<Coeff> {
        let s = s.trim();
        let c = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Coeff::new(n, d)
        } else {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
            Coeff::from_integer(n)
        };
        self.coerce(&c)
    }
}

/// Formats a canonical coefficient as `k` or `p/q`.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let g = a.mod_floor(p).extended_gcd(p);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(p)
}

pub(crate) fn is_negative(c: &Coeff) -> bool {
    c.is_negative()
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "Zmod:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Ring::Z),
            "Q" => Ok(Ring::Q),
            other => {
                let p = other
                    .strip_prefix("Zmod:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnknownRing(other.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

/// Fails unless both rings agree.
pub(crate) fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.to_string(), b.to_string()))
    }
}
