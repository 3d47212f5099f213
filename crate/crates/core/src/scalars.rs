//! Exact coefficient arithmetic over the rings the rest of the toolkit is
//! parameterized by: the rationals ℚ, the integers ℤ, and prime fields GF(p).
//!
//! Every operation is exact; no rounding ever occurs. Rationals are kept in
//! lowest terms with positive denominator, prime-field values as canonical
//! residues in `[0, p)`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingDescriptor, RingDescriptor),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("ring {0} has fewer than {1} nonzero elements")]
    RingTooSmall(RingDescriptor, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring spec `{0}` (expected q, z, or gf<p>)")]
    BadRingSpec(String),
    #[error("invalid scalar literal `{0}` for ring {1}")]
    BadLiteral(String, RingDescriptor),
}

/// Which exact coefficient ring a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    Integers,
    PrimeField(u64),
}

fn is_prime(n: u64) -> bool {
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

impl RingDescriptor {
    /// Builds a prime-field descriptor, verifying primality. Moduli are
    /// capped at 2³¹ so residue arithmetic stays within u64/u128.
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p > (1 << 31) {
            return Err(ScalarError::BadRingSpec(format!(
                "gf{p}: modulus above 2^31"
            )));
        }
        if is_prime(p) {
            Ok(RingDescriptor::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// Parses the textual ring syntax: `q`, `z`, or `gf<p>` (e.g. `gf5`).
    pub fn parse(spec: &str) -> Result<Self, ScalarError> {
        let s = spec.trim().to_ascii_lowercase();
        match s.as_str() {
            "q" => Ok(RingDescriptor::Rationals),
            "z" => Ok(RingDescriptor::Integers),
            _ => {
                if let Some(rest) = s.strip_prefix("gf") {
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| ScalarError::BadRingSpec(spec.to_string()))?;
                    RingDescriptor::prime_field(p)
                } else {
                    Err(ScalarError::BadRingSpec(spec.to_string()))
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingDescriptor::Integers)
    }

    /// Characteristic of the ring (0 for ℚ and ℤ).
    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<u64> {
        match self {
            RingDescriptor::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rationals => write!(f, "q"),
            RingDescriptor::Integers => write!(f, "z"),
            RingDescriptor::PrimeField(p) => write!(f, "gf{p}"),
        }
    }
}

/// An exact scalar: an arbitrary-precision integer, a reduced fraction, or a
/// canonical residue mod p. The ring is recoverable from the representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            Scalar::Integer(_) => RingDescriptor::Integers,
            Scalar::Rational(_) => RingDescriptor::Rationals,
            Scalar::Mod { modulus, .. } => RingDescriptor::PrimeField(*modulus),
        }
    }

    pub fn from_i64(ring: RingDescriptor, v: i64) -> Scalar {
        match ring {
            RingDescriptor::Integers => Scalar::Integer(BigInt::from(v)),
            RingDescriptor::Rationals => Scalar::Rational(BigRational::from(BigInt::from(v))),
            RingDescriptor::PrimeField(p) => {
                let r = v.rem_euclid(p as i64);
                Scalar::Mod {
                    value: r as u64,
                    modulus: p,
                }
            }
        }
    }

    pub fn from_bigint(ring: RingDescriptor, v: BigInt) -> Scalar {
        match ring {
            RingDescriptor::Integers => Scalar::Integer(v),
            RingDescriptor::Rationals => Scalar::Rational(BigRational::from(v)),
            RingDescriptor::PrimeField(p) => {
                let m = BigInt::from(p);
                let r = ((v % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Scalar::Mod {
                    value: digits.first().copied().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    /// Builds `n/d` over ℚ, reduced, with positive denominator.
    pub fn rational(n: i64, d: i64) -> Result<Scalar, ScalarError> {
        if d == 0 {
            return Err(ScalarError::NotInvertible("zero denominator".into()));
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(n),
            BigInt::from(d),
        )))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_zero(),
            Scalar::Rational(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(v) => v.is_one(),
            Scalar::Rational(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::RingMismatch(self.ring(), other.ring())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Ok(Scalar::Integer(a + b)),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => Ok(Scalar::Integer(a * b)),
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Integer(a) => Scalar::Integer(-a),
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse. Fields invert every nonzero element; over ℤ
    /// only ±1 are units.
    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotInvertible(format!(
                "zero in {}",
                self.ring()
            )));
        }
        match self {
            Scalar::Integer(a) => {
                if a.is_one() || (-a).is_one() {
                    Ok(self.clone())
                } else {
                    Err(ScalarError::NotInvertible(format!("{a} over z")))
                }
            }
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Mod { value, modulus } => Ok(Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            }),
        }
    }

    /// Embeds a scalar into `target` along the canonical ring map, when one
    /// exists (ℤ → anything; ℚ → GF(p) when the denominator is invertible).
    pub fn embed(&self, target: RingDescriptor) -> Result<Scalar, ScalarError> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Integer(v), _) => Ok(Scalar::from_bigint(target, v.clone())),
            (Scalar::Rational(v), RingDescriptor::PrimeField(_)) => {
                let n = Scalar::from_bigint(target, v.numer().clone());
                let d = Scalar::from_bigint(target, v.denom().clone());
                if d.is_zero() {
                    return Err(ScalarError::NotInvertible(format!(
                        "denominator of {v} vanishes in {target}"
                    )));
                }
                n.mul(&d.invert()?)
            }
            _ => Err(ScalarError::RingMismatch(self.ring(), target)),
        }
    }

    /// Parses the textual scalar syntax for `ring`: integers `-?[0-9]+`,
    /// rationals `a/b` over ℚ, integers reduced mod p over GF(p).
    pub fn parse(text: &str, ring: RingDescriptor) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadLiteral(text.to_string(), ring);
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarError::NotInvertible("zero denominator".into()));
            }
            match ring {
                RingDescriptor::Rationals => Ok(Scalar::Rational(BigRational::new(n, d))),
                RingDescriptor::PrimeField(_) => {
                    let den = Scalar::from_bigint(ring, d);
                    Scalar::from_bigint(ring, n).mul(&den.invert()?)
                }
                RingDescriptor::Integers => Err(bad()),
            }
        } else {
            let v = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(Scalar::from_bigint(ring, v))
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(v) => write!(f, "{v}"),
            Scalar::Rational(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Returns `n` pairwise-distinct nonzero scalars, deterministically
/// (1, 2, 3, … as ring elements). Supplies the distinct evaluation points
/// for the Vandermonde argument.
pub fn distinct_scalars(ring: RingDescriptor, n: usize) -> Result<Vec<Scalar>, ScalarError> {
    if let Some(size) = ring.size() {
        if (size - 1) < n as u64 {
            return Err(ScalarError::RingTooSmall(ring, n));
        }
    }
    Ok((1..=n as i64).map(|v| Scalar::from_i64(ring, v)).collect())
}
