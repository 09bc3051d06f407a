use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// Coefficient field of a polynomial ring.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of an exact rational, or `None` when the denominator vanishes.
    fn from_rational(v: &BigRational) -> Option<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// Exact rationals. Small values stay in machine words; overflow promotes to
/// arbitrary precision and results are demoted again when they fit.
#[derive(Clone, PartialEq, Eq)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    fn big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rational::Big(b) => b.clone(),
        }
    }

    fn normalize(b: BigRational) -> Self {
        match (i64::try_from(b.numer()), i64::try_from(b.denom())) {
            (Ok(n), Ok(d)) => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(b),
        }
    }

    pub fn to_big(&self) -> BigRational {
        self.big()
    }

    pub fn from_big(b: BigRational) -> Self {
        Rational::normalize(b)
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_negative(),
            Rational::Big(b) => b.is_negative(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(r) = small(a, b) {
                return Rational::Small(r);
            }
        }
        Rational::normalize(big(&self.big(), &other.big()))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(Ratio::zero())
    }

    fn one() -> Self {
        Rational::Small(Ratio::one())
    }

    fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_zero(),
            Rational::Big(b) => b.is_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_one(),
            Rational::Big(b) => b.is_one(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a.checked_add(b), |a, b| a + b)
    }

    fn sub(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a.checked_sub(b), |a, b| a - b)
    }

    fn mul(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a.checked_mul(b), |a, b| a * b)
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            _ => Rational::normalize(-self.big()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(r.recip()),
            _ => Rational::normalize(self.big().recip()),
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::Small(Ratio::from_integer(v))
    }

    fn from_rational(v: &BigRational) -> Option<Self> {
        Some(Rational::normalize(v.clone()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BigRational::from_str(s.trim()).map(Rational::normalize).map_err(|e| format!("bad rational {s:?}: {e}"))
    }
}

/// Integers modulo the prime 32003.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u32);

impl Fp {
    pub const P: u32 = 32003;

    pub fn value(self) -> u32 {
        self.0
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

    fn is_one(&self) -> bool {
        self.0 == 1
    }

    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % Self::P)
    }

    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + Self::P - other.0) % Self::P)
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(((u64::from(self.0) * u64::from(other.0)) % u64::from(Self::P)) as u32)
    }

    fn neg(&self) -> Self {
        Fp((Self::P - self.0) % Self::P)
    }

    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = u64::from(self.0);
        let mut exp = Self::P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % u64::from(Self::P);
            }
            base = base * base % u64::from(Self::P);
            exp >>= 1;
        }
        Fp(acc as u32)
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(i64::from(Self::P)) as u32)
    }

    fn from_rational(v: &BigRational) -> Option<Self> {
        let p = BigInt::from(Self::P);
        let reduce = |x: &BigInt| -> u32 {
            let r = ((x % &p) + &p) % &p;
            u32::try_from(&r).expect("reduced below p")
        };
        let d = Fp(reduce(v.denom()));
        (!d.is_zero()).then(|| Fp(reduce(v.numer())).div(&d))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
