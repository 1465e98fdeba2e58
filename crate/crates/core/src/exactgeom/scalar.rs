use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// An exact ordered field element.
///
/// Implemented for every `Ratio<I>` over a signed integer type. The library
/// itself runs on `Ratio<BigInt>`; fixed-width ratios are useful in tests but
/// overflow on deep constructions.
pub trait ExactScalar: Clone + Debug + Display + Ord + Hash + Num + Signed + FromStr + Send + Sync + 'static {
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Largest integer not above `self`.
    fn floor_int(&self) -> Self;

    /// `Some(n)` when the value is an integer that fits in an `i64`.
    fn as_i64(&self) -> Option<i64>;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    /// A nearby float, NaN or infinite when the parts do not fit.
    fn approx(&self) -> f64;
}

impl<I> ExactScalar for Ratio<I>
where
    I: Clone + Integer + Signed + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static,
    Ratio<I>: FromStr,
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(
            I::from_i64(numer).expect("numerator fits"),
            I::from_i64(denom).expect("denominator fits"),
        )
    }

    fn floor_int(&self) -> Self {
        self.floor()
    }

    fn as_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn approx(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Format a scalar as `p/q`, dropping `q` when it is 1.
pub fn format_scalar<T: ExactScalar>(value: &T) -> String {
    value.to_string()
}

/// Parse `p/q` or a plain integer. Rejects zero denominators.
pub fn parse_scalar<T: ExactScalar>(text: &str) -> Option<T> {
    if text.is_empty() || text.contains(char::is_whitespace) {
        return None;
    }
    if let Some((_, den)) = text.split_once('/') {
        if den.starts_with(['+', '-']) {
            return None;
        }
    }
    text.parse::<T>().ok()
}
