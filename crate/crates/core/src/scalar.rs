//! Scalar traits shared by every exact kernel in the crate.
//!
//! Linear algebra is written against [`Field`], Lie and series arithmetic
//! against [`Ring`]. Both are blanket-implemented, so `BigRational`,
//! `Ratio<i64>`, `BigInt` and the machine integers all qualify. There is no
//! floating point implementation on purpose: rank decisions have to be exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring with exact equality.
pub trait Ring:
    Clone + Eq + Ord + Hash + Debug + Display + Num + std::ops::Neg<Output = Self> + Send + Sync
{
}

impl<T> Ring for T where
    T: Clone + Eq + Ord + Hash + Debug + Display + Num + std::ops::Neg<Output = Self> + Send + Sync
{
}

/// An exact field. `Num` already supplies division; implementors promise it
/// is a true inverse for every nonzero divisor.
pub trait Field: Ring {}

impl<T> Field for Ratio<T> where T: Clone + Integer + Signed + Hash + Debug + Display + Send + Sync {}

/// Integer-like rings where exact division and binomial recurrences make sense.
pub trait IntegerRing: Ring + Integer + Signed + From<i64> {}

impl<T> IntegerRing for T where T: Ring + Integer + Signed + From<i64> {}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?),
    };
    Ok(value)
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational<T>(r: &Ratio<T>) -> String
where
    T: Clone + Integer + Display,
{
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
