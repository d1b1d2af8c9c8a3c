//   Copyright 2026 The dca Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! Exact scalars: arbitrary-precision rationals and the extended value
//! `Q ∪ {+∞}` used for function tables.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::DcaError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, DcaError> {
    let bad = || DcaError::Parse(format!("invalid rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `"p/q"` form, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn floor_to_i64(q: &Rational) -> i64 {
    to_i64(&q.floor())
}

pub fn ceil_to_i64(q: &Rational) -> i64 {
    to_i64(&q.ceil())
}

fn to_i64(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    q.to_integer()
        .to_i64()
        .expect("lattice coordinate out of i64 range")
}

/// A value of an extended-real function: a finite rational or `+∞`.
///
/// Ordering places `+∞` above every finite value. Addition is absorbing in
/// `+∞`; there is no `-∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedValue {
    Finite(Rational),
    Infinity,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtendedValue::Finite(rat(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(q) => Some(q),
            ExtendedValue::Infinity => None,
        }
    }

    /// Multiplies by a nonnegative scalar; `0 · ∞` stays `∞` so that the
    /// effective domain is preserved.
    pub fn scale(&self, a: &Rational) -> Self {
        debug_assert!(!a.is_negative());
        match self {
            ExtendedValue::Finite(q) => ExtendedValue::Finite(q * a),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    /// Adds a finite rational (possibly negative).
    pub fn shift(&self, a: &Rational) -> Self {
        match self {
            ExtendedValue::Finite(q) => ExtendedValue::Finite(q + a),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }
}

impl From<Rational> for ExtendedValue {
    fn from(q: Rational) -> Self {
        ExtendedValue::Finite(q)
    }
}

impl Add for &ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, rhs: &ExtendedValue) -> ExtendedValue {
        match (self, rhs) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinity,
        }
    }
}

impl Add for ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, rhs: ExtendedValue) -> ExtendedValue {
        &self + &rhs
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.cmp(b),
            (ExtendedValue::Finite(_), ExtendedValue::Infinity) => Ordering::Less,
            (ExtendedValue::Infinity, ExtendedValue::Finite(_)) => Ordering::Greater,
            (ExtendedValue::Infinity, ExtendedValue::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(q) => f.write_str(&format_rational(q)),
            ExtendedValue::Infinity => f.write_str("+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_addition() {
        let inf = ExtendedValue::Infinity;
        assert_eq!(&inf + &ExtendedValue::int(3), ExtendedValue::Infinity);
        assert_eq!(ExtendedValue::int(2) + ExtendedValue::int(3), ExtendedValue::int(5));
        assert!(ExtendedValue::int(1_000_000) < inf);
        assert_eq!(inf.clone().max(ExtendedValue::int(4)), inf);
    }

    #[test]
    fn zero_times_infinity_keeps_domain() {
        assert_eq!(ExtendedValue::Infinity.scale(&rat(0)), ExtendedValue::Infinity);
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-3/-6").unwrap(), ratio(1, 2));
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(floor_to_i64(&ratio(-1, 2)), -1);
        assert_eq!(ceil_to_i64(&ratio(-1, 2)), 0);
        assert_eq!(ceil_to_i64(&rat(3)), 3);
    }
}
