use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

/// Exact nonnegative count, printed in decimal.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::from(0u32))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u128(&self) -> Option<u128> {
        u128::try_from(&self.0).ok()
    }
}

impl From<u128> for BigCount {
    fn from(v: u128) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(BigCount)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: Self) -> Self {
        BigCount(self.0 + rhs.0)
    }
}

impl Add<&BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> Self {
        BigCount(self.0 + &rhs.0)
    }
}

impl Mul<u64> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: u64) -> Self {
        BigCount(self.0 * rhs)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_the_eighth_dedekind_number() {
        let text = "56130437228687557907788";
        let c: BigCount = text.parse().unwrap();
        assert_eq!(c.to_string(), text);
        assert_eq!(c.to_u128(), Some(56130437228687557907788));
        let doubled = c.clone() + &c;
        assert_eq!(doubled.to_string(), "112260874457375115815576");
        assert_eq!(BigCount::from(7u64) * 3, 21u64);
        let s: BigCount = [1u64, 2, 3].into_iter().map(BigCount::from).sum();
        assert_eq!(s, 6u64);
    }
}
