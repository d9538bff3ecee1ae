//! Exact Gaussian-rational numbers.
//!
//! Every character exponent, Γ_R shift and candidate pole in this crate is a
//! [`GaussianRational`], so the integrality and lattice predicates that the
//! pole calculus depends on are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dsl::{self, ParseError};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Complex number `re + im·i` with rational parts.
///
/// `BigRational` keeps both parts canonical after every operation, so derived
/// equality and hashing agree with equality of complex numbers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den + 0i`. Panics on a zero denominator.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`.
    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational {
            re: Rational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: Rational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True iff the number is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.re.to_integer())
    }

    /// Same Γ_R pole chain: `self - other` is an even rational integer.
    pub fn chain_equiv(&self, other: &Self) -> bool {
        match (self - other).to_integer() {
            Some(d) => d.is_even(),
            None => false,
        }
    }

    /// Canonical key of the progression `self + 2ℤ`: the imaginary part and
    /// the real part reduced into `[0, 2)`.
    pub fn chain_key(&self) -> (Rational, Rational) {
        let two = Rational::from_integer(BigInt::from(2));
        let q = (&self.re / &two).floor();
        (self.im.clone(), &self.re - q * two)
    }

    /// If `other = self - 2k` for some integer `k ≥ 0`, returns `k`.
    pub fn steps_down_to(&self, other: &Self) -> Option<BigInt> {
        let d = (self - other).to_integer()?;
        if d.is_negative() || d.is_odd() {
            return None;
        }
        Some(d / 2)
    }

    pub fn add_integer(&self, n: i64) -> Self {
        GaussianRational {
            re: &self.re + Rational::from_integer(BigInt::from(n)),
            im: self.im.clone(),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Ord for GaussianRational {
    /// Imaginary part first, then real part.
    fn cmp(&self, other: &Self) -> Ordering {
        self.im.cmp(&other.im).then_with(|| self.re.cmp(&other.re))
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Exact sum.
pub fn qc_add(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a + b
}

impl fmt::Display for GaussianRational {
    /// `p/q`, `p/q+r/t*i` or `p/q-r/t*i`; a denominator of 1 is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        dsl::parse_gaussian(s)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianRationalRepr {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GaussianRationalRepr {
            re: self.re.to_string(),
            im: self.im.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = GaussianRationalRepr::deserialize(deserializer)?;
        let parse = |s: &str| {
            s.parse::<Rational>()
                .map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}")))
        };
        Ok(GaussianRational {
            re: parse(&repr.re)?,
            im: parse(&repr.im)?,
        })
    }
}

/// `n` as a rational.
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
