//! Coefficient rings: unbounded integers and prime fields `F_q`.
//!
//! Elements are plain [`BigInt`] values; the [`Ring`] descriptor provides the
//! arithmetic and keeps prime-field values canonical in `[0, q-1]`. All
//! operations are exact — there is no floating point anywhere in the crate.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Descriptor for the two supported coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The ring of integers, unbounded precision.
    Integers,
    /// The prime field `F_q`; the modulus is verified prime at construction.
    PrimeField { modulus: BigInt },
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Integers => write!(f, "zz"),
            Ring::PrimeField { modulus } => write!(f, "fq:{modulus}"),
        }
    }
}

impl Ring {
    pub fn integers() -> Self {
        Ring::Integers
    }

    /// Builds the prime field `F_q`, verifying primality by deterministic
    /// trial division.
    pub fn prime_field(q: impl Into<BigInt>) -> Result<Self> {
        let q = q.into();
        if !is_prime(&q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Ring::PrimeField { modulus: q })
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField { .. })
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField { modulus } => Some(modulus),
        }
    }

    /// The modulus as a machine word, when it fits; enables the u64 fast
    /// paths for prime-field arithmetic.
    pub fn small_modulus(&self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField { modulus } => {
                u64::try_from(modulus).ok().filter(|&q| q < (1 << 62))
            }
        }
    }

    /// Canonical representative: the value itself over the integers, the
    /// residue in `[0, q-1]` over a prime field.
    pub fn normalize(&self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::PrimeField { modulus } => {
                let r = x % modulus;
                if r.is_negative() {
                    r + modulus
                } else {
                    r
                }
            }
        }
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.normalize(-a)
    }

    /// Multiplicative inverse; `None` for zero, and for non-units over the
    /// integers.
    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => {
                if a.is_one() || (-a).is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            Ring::PrimeField { modulus } => {
                let a = self.normalize(a.clone());
                if a.is_zero() {
                    return None;
                }
                // Fermat: a^(q-2) mod q.
                let e = modulus - 2u32;
                Some(a.modpow(&e, modulus))
            }
        }
    }

    /// `a^e` by square-and-multiply; modular exponentiation over `F_q`.
    pub fn pow(&self, a: &BigInt, e: &BigUint) -> BigInt {
        match self {
            Ring::PrimeField { modulus } => {
                let a = self.normalize(a.clone());
                a.modpow(&BigInt::from(e.clone()), modulus)
            }
            Ring::Integers => {
                if e.is_zero() {
                    return BigInt::one();
                }
                if a.is_zero() || a.is_one() {
                    return a.clone();
                }
                let mut result = BigInt::one();
                let mut base = a.clone();
                let mut exp = e.clone();
                while !exp.is_zero() {
                    if exp.bit(0) {
                        result = &result * &base;
                    }
                    exp >>= 1;
                    if !exp.is_zero() {
                        base = &base * &base;
                    }
                }
                result
            }
        }
    }

    pub fn pow_u64(&self, a: &BigInt, e: u64) -> BigInt {
        self.pow(a, &BigUint::from(e))
    }

    /// Exact multiplicative order of `a` in `F_q`, computed from the
    /// factorization of `q - 1` (trial division).
    pub fn multiplicative_order(&self, a: &BigInt) -> Option<BigUint> {
        let modulus = self.modulus()?;
        let a = self.normalize(a.clone());
        if a.is_zero() {
            return None;
        }
        let group = (modulus - 1u32).to_biguint().expect("q >= 2");
        let mut order = group.clone();
        for (prime, mult) in factorize(&group) {
            for _ in 0..mult {
                let candidate = &order / &prime;
                if self.pow(&a, &candidate).is_one() {
                    order = candidate;
                } else {
                    break;
                }
            }
        }
        Some(order)
    }

    /// Finds the smallest element `g >= 2` of `F_q` whose multiplicative order
    /// is at least `bound`. Deterministic; the order is computed exactly.
    pub fn element_of_order_geq(&self, bound: u64) -> Result<BigInt> {
        let modulus = match self {
            Ring::PrimeField { modulus } => modulus,
            Ring::Integers => {
                // The integers have elements of infinite order; 2 works for
                // every bound.
                return Ok(BigInt::from(2));
            }
        };
        let group = modulus - 1;
        if group < BigInt::from(bound) {
            return Err(Error::RingTooSmall {
                needed: BigInt::from(bound),
                order: group,
            });
        }
        if bound <= 1 {
            return Ok(BigInt::from(if *modulus == BigInt::from(2) { 1 } else { 2 }));
        }
        let bound = BigUint::from(bound);
        let mut g = BigInt::from(2);
        while g < *modulus {
            if let Some(order) = self.multiplicative_order(&g) {
                if order >= bound {
                    return Ok(g);
                }
            }
            g += 1;
        }
        // Unreachable for prime q with q-1 >= bound: a primitive root exists.
        Err(Error::RingTooSmall {
            needed: BigInt::from(bound),
            order: modulus - 1,
        })
    }
}

pub(crate) fn mulmod_u64(a: u64, b: u64, q: u64) -> u64 {
    (a as u128 * b as u128 % q as u128) as u64
}

pub(crate) fn powmod_u64(base: u64, mut exp: u64, q: u64) -> u64 {
    let mut base = base % q;
    let mut acc = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, q);
        }
        exp >>= 1;
        if exp > 0 {
            base = mulmod_u64(base, base, q);
        }
    }
    acc
}

/// Deterministic primality by trial division up to the square root.
pub fn is_prime(q: &BigInt) -> bool {
    if *q < BigInt::from(2) {
        return false;
    }
    let q = q.to_biguint().expect("checked nonnegative");
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if q == two || q == three {
        return true;
    }
    if (&q % &two).is_zero() {
        return false;
    }
    let mut d = three;
    while &d * &d <= q {
        if (&q % &d).is_zero() {
            return false;
        }
        d += 2u32;
    }
    true
}

/// Prime factorization by trial division, as `(prime, multiplicity)` pairs in
/// ascending order.
pub(crate) fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut mult = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                mult += 1;
            }
            out.push((d.clone(), mult));
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}
