//! Coefficient fields: the rationals and prime fields with a runtime modulus.
//!
//! Elements do not carry their field. Every arithmetic operation goes through
//! a field value, which is what lets the prime be chosen at run time while the
//! polynomial code stays generic.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::rng::SplitMix64;

/// Upper bound (exclusive) on supported primes.
pub const PRIME_LIMIT: u64 = 1 << 62;

/// A coefficient field together with its element type.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;
    /// A pseudo-random element drawn from `rng`.
    fn sample(&self, rng: &mut SplitMix64) -> Self::Elem;
    /// Integer representative if the element is an integer.
    /// Prime-field elements print as their canonical residue.
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;
    fn display(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Option<Self::Elem> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Runtime description of a field, used in file formats and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }
}

/// The field of rational numbers, elements are reduced big fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn sample(&self, rng: &mut SplitMix64) -> BigRational {
        // small integers keep exact computations over Q cheap
        let v = (rng.next_u64() % 201) as i64 - 100;
        self.from_i64(v)
    }
    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        if a.is_integer() {
            Some(a.to_integer())
        } else {
            None
        }
    }
    fn display(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// The prime field F_p with `2 < p < 2^62`, elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT {
            return Err(Error::InvalidField(format!("{p} is not below 2^62")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u128(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }

    #[inline]
    pub fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128);
        r as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i128) as u64)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn sample(&self, rng: &mut SplitMix64) -> u64 {
        rng.next_u64() % self.p
    }
    fn to_bigint(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
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

/// Convert an exact rational to a prime-field residue, if its denominator is a unit.
pub fn rational_to_fp(f: &PrimeField, q: &BigRational) -> Option<u64> {
    let n = f.from_bigint(q.numer());
    let d = f.from_bigint(q.denom());
    f.div(&n, &d)
}

/// `true` when the rational is an integer (used for integrality assertions).
pub fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}

/// Exact integer value of an integral rational that fits in `i64`.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(10007));
        assert!(is_prime(31991));
        assert!(!is_prime(31993 * 3));
        // 2^61 - 1 is a Mersenne prime
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn prime_field_rejects_bad_moduli() {
        assert!(PrimeField::new(10006).is_err());
        assert!(PrimeField::new((1u64 << 62) + 135).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn fp_inverse_and_signed() {
        let f = PrimeField::new(10007).unwrap();
        for a in [1u64, 2, 3, 5000, 10006] {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.from_i64(-1), 10006);
        assert_eq!(f.signed(10006), -1);
        assert_eq!(f.from_ratio(-1, 2).map(|h| f.mul(&h, &2)), Some(10006));
    }

    #[test]
    fn rational_reduction_into_fp() {
        let f = PrimeField::new(7).unwrap();
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(rational_to_fp(&f, &q), Some(5));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(rational_to_fp(&f, &bad), None);
    }
}
