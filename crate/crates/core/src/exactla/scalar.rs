//! Exact scalar fields.
//!
//! Everything downstream is generic over [`Scalar`]. Two families are provided:
//! prime fields [`Fp`] with the modulus fixed at the type level, and arbitrary
//! precision rationals ([`num_rational::BigRational`]).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Default modulus, a prime just below 2^30. Products of two residues fit in `u64`.
pub const DEFAULT_PRIME: u64 = 1_073_741_789;

/// Identifies the field a value lives in; written into every JSON artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Gf { prime: u64 },
    Rational,
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf { prime } => write!(f, "GF({prime})"),
            FieldSpec::Rational => write!(f, "QQ"),
        }
    }
}

/// An element of an exact field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Uniform sample for finite fields; a wide random integer for the rationals.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn field_spec() -> FieldSpec;

    /// Every element of the field, for small finite fields only.
    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn parse_scalar(text: &str) -> Option<Self>;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integers embed in every field")
    }
}

/// Element of the prime field GF(P), canonical representative in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(P > 1 && P < (1 << 32), "modulus must fit in 32 bits");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in GF(p)")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> FromPrimitive for Fp<P> {
    fn from_i64(n: i64) -> Option<Self> {
        let r = n.rem_euclid(P as i64);
        Some(Fp::new(r as u64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Fp::new(n))
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (P as i64, self.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is not prime");
        Some(Fp::new(t0.rem_euclid(P as i64) as u64))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(0..P))
    }

    fn field_spec() -> FieldSpec {
        FieldSpec::Gf { prime: P }
    }

    fn elements() -> Option<Vec<Self>> {
        (P <= 1 << 16).then(|| (0..P).map(Fp::new).collect())
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('-') {
            rest.parse::<u64>().ok().map(|v| -Fp::new(v % P))
        } else {
            t.parse::<u64>().ok().map(Fp::new)
        }
    }
}

impl Scalar for BigRational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        BigRational::from_integer(BigInt::from(rng.gen_range(-(1i64 << 20)..=(1i64 << 20))))
    }

    fn field_spec() -> FieldSpec {
        FieldSpec::Rational
    }

    fn parse_scalar(text: &str) -> Option<Self> {
        BigRational::from_str(text.trim()).ok()
    }
}

/// Primality by trial division; moduli here are below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    type F = Fp<DEFAULT_PRIME>;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        const { assert!(DEFAULT_PRIME < 1 << 31) };
    }

    #[test]
    fn inverses_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = F::sample(&mut rng);
            if a.is_zero() {
                continue;
            }
            assert_eq!(a * a.inverse().unwrap(), F::one());
        }
        assert!(F::zero().inverse().is_none());
        assert_eq!(Fp::<7>::new(3).inverse(), Some(Fp::new(5)));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(F::from_int(-1).value(), DEFAULT_PRIME - 1);
        assert_eq!((-F::from_int(0)).value(), 0);
        assert_eq!(Fp::<5>::new(12).value(), 2);
        assert_eq!(F::parse_scalar("-2"), Some(F::from_int(-2)));
    }

    #[test]
    fn small_field_enumeration() {
        assert_eq!(Fp::<5>::elements().unwrap().len(), 5);
        assert!(F::elements().is_none());
        assert!(BigRational::elements().is_none());
    }

    #[test]
    fn rational_parse_and_inverse() {
        let q = BigRational::parse_scalar("-3/4").unwrap();
        assert_eq!(q.inverse().unwrap(), BigRational::parse_scalar("-4/3").unwrap());
        assert_eq!(q.to_string(), "-3/4");
    }
}
