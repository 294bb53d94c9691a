//! Scalar fields the library computes over.
//!
//! Every algorithm in the crate is written against [`Field`]. The exact
//! rationals ([`Rational`]) are the intended instantiation; fixed-width
//! ratios are provided for small inputs where overflow is not a concern.
//!
//! All statements checked by the library are rank statements about
//! matrices with rational entries. Rank does not change under field
//! extension, so results over the rationals hold verbatim over any
//! algebraically closed field of characteristic zero.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

use crate::error::Error;

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// A field of characteristic zero with exact arithmetic.
pub trait Field: Num + Signed + Clone + Debug + Display + Send + Sync {
    fn from_i64(v: i64) -> Self;

    /// Rough storage size, used to prefer small pivots during elimination.
    fn pivot_cost(&self) -> u64;

    fn from_ratio_i64(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Image in `Z/p` for a prime `p < 2^63`; `None` if `p` divides the
    /// denominator.
    fn residue(&self, p: u64) -> Option<u64>;
}

fn residue_of_fraction(num: u64, den: u64, p: u64) -> Option<u64> {
    (den != 0).then(|| crate::exactalg::modp::mul(num, crate::exactalg::modp::inv(den, p), p))
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn pivot_cost(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let m = BigInt::from(p);
        let r = |x: &BigInt| u64::try_from(x.mod_floor(&m)).expect("reduced below p");
        residue_of_fraction(r(self.numer()), r(self.denom()), p)
    }
}

macro_rules! fixed_ratio_field {
    ($int:ty) => {
        impl Field for Ratio<$int> {
            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }

            fn pivot_cost(&self) -> u64 {
                let bits = |x: $int| (<$int>::BITS - x.unsigned_abs().leading_zeros()) as u64;
                bits(*self.numer()) + bits(*self.denom())
            }

            fn residue(&self, p: u64) -> Option<u64> {
                let r = |x: $int| (x as i128).rem_euclid(p as i128) as u64;
                residue_of_fraction(r(*self.numer()), r(*self.denom()), p)
            }
        }
    };
}

fixed_ratio_field!(i64);
fixed_ratio_field!(i128);

/// Parses `"p/q"`, `"p"`, with an optional sign. Rejects a zero denominator.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{text}`: {msg}"),
    };
    if t.is_empty() {
        return Err(bad("empty"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = match den {
        Some(d) => d.trim().parse().map_err(|_| bad("bad denominator"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` when `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serde adapter storing rationals as canonical strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
