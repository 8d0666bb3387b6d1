use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational scalar. Always reduced, with a positive denominator.
pub type Rational = BigRational;

/// Scalar field used by the generic linear algebra.
///
/// Implemented for [`Rational`] (the exact ground field) and for [`Fp`]
/// (a word-size prime field used by the fast fingerprint tables).
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// Image of a rational number, `None` when the denominator vanishes.
    fn from_rational(q: &Rational) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

/// The Mersenne prime 2^61 - 1.
pub const FP_MODULUS: u64 = (1u64 << 61) - 1;

/// Element of the prime field of order [`FP_MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(reduce128(v as u128))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn from_bigint(n: &BigInt) -> Fp {
        let m = BigInt::from(FP_MODULUS);
        let mut r = n % &m;
        if r.is_negative() {
            r += &m;
        }
        let (_, digits) = r.to_u64_digits();
        Fp(digits.first().copied().unwrap_or(0))
    }
}

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & FP_MODULUS;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & FP_MODULUS) + (hi >> 61);
    while s >= FP_MODULUS {
        s -= FP_MODULUS;
    }
    s
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + FP_MODULUS - other.0
        })
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        Fp(reduce128(self.0 as u128 * other.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { FP_MODULUS - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        self.pow(FP_MODULUS - 2)
    }
    fn from_rational(q: &Rational) -> Option<Self> {
        let d = Fp::from_bigint(q.denom());
        if d.is_zero() {
            return None;
        }
        Some(Fp::from_bigint(q.numer()).mul(&d.inv()))
    }
}

/// Build a rational from an integer numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Format as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `p` or `p/q` (optional sign) into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
