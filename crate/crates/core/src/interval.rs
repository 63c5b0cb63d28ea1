//! Intervals `[lower, upper]` of antimonotonic functions.

use std::fmt;

use crate::antichain::AntiChain;
use crate::error::Result;
use crate::ground::{GroundSet, SubsetMask};

/// `{κ | lower ≤ κ ≤ upper}`. Stores bounds only.
///
/// An interval with `lower ≰ upper` has no members; all such intervals are
/// normalised to the single representative `[{G}, ∅]` for ground `G`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: AntiChain,
    upper: AntiChain,
}

impl Interval {
    pub fn new(lower: AntiChain, upper: AntiChain) -> Result<Interval> {
        lower.same_ground(&upper)?;
        Ok(Self::new_unchecked(lower, upper))
    }

    pub(crate) fn new_unchecked(lower: AntiChain, upper: AntiChain) -> Interval {
        if lower.leq_unchecked(&upper) {
            Interval { lower, upper }
        } else {
            Self::empty(lower.ground())
        }
    }

    /// The canonical empty interval over `ground`.
    pub fn empty(ground: GroundSet) -> Interval {
        Interval {
            lower: AntiChain::principal(ground, ground.mask()).expect("ground contains itself"),
            upper: AntiChain::empty(ground),
        }
    }

    pub fn singleton(a: AntiChain) -> Interval {
        Interval {
            lower: a.clone(),
            upper: a,
        }
    }

    pub fn lower(&self) -> &AntiChain {
        &self.lower
    }

    pub fn upper(&self) -> &AntiChain {
        &self.upper
    }

    pub fn ground(&self) -> GroundSet {
        self.lower.ground()
    }

    pub fn is_empty(&self) -> bool {
        !self.lower.leq_unchecked(&self.upper)
    }

    pub fn contains(&self, k: &AntiChain) -> Result<bool> {
        Ok(self.lower.leq(k)? && k.leq_unchecked(&self.upper))
    }

    /// `[lower ∨ lower', upper ∧ upper']`.
    pub fn intersect(&self, other: &Interval) -> Result<Interval> {
        Ok(Self::new_unchecked(
            self.lower.join(&other.lower)?,
            self.upper.meet_unchecked(&other.upper),
        ))
    }
}

/// `α_N = {{x} | x ∈ N}`, with `α_∅ = {∅}`.
pub fn alpha(ground: GroundSet, n: SubsetMask) -> Result<AntiChain> {
    AntiChain::singletons(ground, n)
}

/// `ω_N = {N}`.
pub fn omega(ground: GroundSet, n: SubsetMask) -> Result<AntiChain> {
    AntiChain::principal(ground, n)
}

/// `Υ_N = [α_N, ω_N]`: every function whose span is exactly `N`.
///
/// `Υ_∅` is the singleton interval `{{∅}}`.
pub fn upsilon(ground: GroundSet, n: SubsetMask) -> Result<Interval> {
    Interval::new(alpha(ground, n)?, omega(ground, n)?)
}

/// `[a ∨ b, a × b]`.
pub fn product_interval(a: &AntiChain, b: &AntiChain) -> Result<Interval> {
    Ok(Interval::new_unchecked(a.join(b)?, a.product_unchecked(b)))
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} .. {}]", self.lower, self.upper)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> GroundSet {
        GroundSet::prefix(3)
    }

    fn ac(text: &str) -> AntiChain {
        AntiChain::parse(text, g(), true).unwrap()
    }

    fn m(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    #[test]
    fn construction() {
        let a = ac("{{1},{2}}");
        let i = Interval::new(a.clone(), a.clone()).unwrap();
        assert!(!i.is_empty());
        assert!(i.contains(&a).unwrap());
        let e = Interval::new(ac("{{1,2}}"), ac("{{1},{2}}")).unwrap();
        assert!(e.is_empty());
        assert_eq!(e, Interval::empty(g()));
        let a = ac("{{1,3}}");
        let empty = Interval::new(
            a.join(&AntiChain::empty(g())).unwrap(),
            a.external_product(&AntiChain::empty(g())).unwrap(),
        )
        .unwrap();
        assert!(empty.is_empty());
        assert!(Interval::new(a, AntiChain::empty(GroundSet::prefix(2))).is_err());
    }

    #[test]
    fn intersection() {
        let i = Interval::new(ac("{{1}}"), ac("{{1,2}}")).unwrap();
        let j = Interval::new(ac("{{2}}"), ac("{{1,2}}")).unwrap();
        assert_eq!(i.intersect(&i).unwrap(), i);
        assert_eq!(
            i.intersect(&j).unwrap(),
            Interval::new(ac("{{1},{2}}"), ac("{{1,2}}")).unwrap()
        );
    }

    #[test]
    fn upsilon_bounds() {
        let u = upsilon(g(), m(&[1])).unwrap();
        assert_eq!(u.lower(), u.upper());
        let u = upsilon(g(), m(&[1, 2])).unwrap();
        assert_eq!(u.to_string(), "[{{1},{2}} .. {{1,2}}]");
        let u = upsilon(g(), SubsetMask::EMPTY).unwrap();
        assert_eq!(u, Interval::singleton(AntiChain::unit(g())));
    }

    #[test]
    fn product_intervals() {
        let a = ac("{{1},{2}}");
        assert_eq!(
            product_interval(&a, &AntiChain::unit(g())).unwrap(),
            Interval::singleton(a.clone())
        );
        assert_eq!(
            product_interval(&ac("{{1}}"), &ac("{{2}}")).unwrap(),
            upsilon(g(), m(&[1, 2])).unwrap()
        );
        assert_eq!(
            product_interval(&a, &ac("{{3}}")).unwrap().to_string(),
            "[{{1},{2},{3}} .. {{1,3},{2,3}}]"
        );
    }
}
