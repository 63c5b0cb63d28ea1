//! Dedekind numbers `|AMT(n)|` from interval counts.

use rayon::prelude::*;

use crate::antichain::AntiChain;
use crate::count::BigCount;
use crate::enumeration::Engine;
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask, MAX_ELEMENT};
use crate::interval::{alpha, omega};

fn check_n(n: u32) -> Result<()> {
    if n > MAX_ELEMENT {
        return Err(AmfError::SizeBound {
            size: n,
            bound: MAX_ELEMENT,
        });
    }
    Ok(())
}

fn check_split(n: u32, n1: u32) -> Result<()> {
    check_n(n)?;
    if n1 == 0 || n1 >= n {
        return Err(AmfError::Precondition(format!(
            "split point n1 = {n1} must satisfy 1 <= n1 < n = {n}"
        )));
    }
    Ok(())
}

/// Sums `|[a ∨ b, a × b]|` over the given pairs.
fn sum_products(engine: &Engine, pairs: &[(AntiChain, AntiChain)]) -> Result<u128> {
    let term = |(a, b): &(AntiChain, AntiChain)| -> Result<u128> {
        engine.count_u128(&a.join_unchecked(b), &a.product_unchecked(b))
    };
    let add = |x: u128, y: u128| {
        x.checked_add(y)
            .ok_or_else(|| AmfError::Defect("count overflows 128 bits".into()))
    };
    if engine.is_parallel() {
        engine.install(|| pairs.par_iter().map(term).try_reduce(|| 0, add))
    } else {
        pairs.iter().try_fold(0u128, |acc, p| add(acc, term(p)?))
    }
}

fn pairs(left: &[AntiChain], right: &[AntiChain]) -> Vec<(AntiChain, AntiChain)> {
    left.iter()
        .flat_map(|a| right.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

/// Members of `Υ_block` over `ground`.
fn upsilon_members(engine: &Engine, ground: GroundSet, block: SubsetMask) -> Result<Vec<AntiChain>> {
    engine.collect_interval(&alpha(ground, block)?, &omega(ground, block)?)
}

/// Nonempty members of `AMT(block)` over `ground`.
fn nonempty_members(engine: &Engine, ground: GroundSet, block: SubsetMask) -> Result<Vec<AntiChain>> {
    engine.collect_interval(&AntiChain::unit(ground), &omega(ground, block)?)
}

/// `|Υ_{1..n}|` as a sum over `α ∈ Υ_{1..n1}`, `β ∈ Υ_{n1+1..n}` of
/// `|[α ∨ β, α × β]|`.
pub fn upsilon_count(engine: &Engine, n: u32, n1: u32) -> Result<BigCount> {
    check_split(n, n1)?;
    let ground = GroundSet::prefix(n);
    let left = upsilon_members(engine, ground, SubsetMask::range(1, n1))?;
    let right = upsilon_members(engine, ground, SubsetMask::range(n1 + 1, n))?;
    sum_products(engine, &pairs(&left, &right)).map(BigCount::from)
}

/// `|Υ_{1..k}|`, splitting in the middle when `k ≥ 2`.
fn upsilon_size(engine: &Engine, k: u32) -> Result<BigCount> {
    match k {
        0 => Ok(BigCount::from(1u64)),
        1 => {
            let ground = GroundSet::prefix(1);
            let block = SubsetMask::prefix(1);
            engine.count_interval(&alpha(ground, block)?, &omega(ground, block)?)
        }
        _ => upsilon_count(engine, k, k / 2),
    }
}

/// `|AMT(n)| = 1 + Σ_k C(n, k) |Υ_{1..k}|`.
pub fn dedekind_span_expansion(engine: &Engine, n: u32) -> Result<BigCount> {
    check_n(n)?;
    let mut total = BigCount::from(1u64);
    let mut binomial = BigCount::from(1u64);
    for k in 0..=n {
        if k > 0 {
            binomial = BigCount::from(binomial.value() * (n - k + 1) / k);
        }
        let size = upsilon_size(engine, k)?;
        total = total + BigCount::from(binomial.value() * size.value());
    }
    Ok(total)
}

/// `|AMT(n)| = 1 + Σ |[α ∨ β, α × β]|` over nonempty `α ∈ AMT(1..n1)` and
/// nonempty `β ∈ AMT(n1+1..n)`.
pub fn dedekind_interval_recursion(engine: &Engine, n: u32, n1: u32) -> Result<BigCount> {
    check_split(n, n1)?;
    let ground = GroundSet::prefix(n);
    let left = nonempty_members(engine, ground, SubsetMask::range(1, n1))?;
    let right = nonempty_members(engine, ground, SubsetMask::range(n1 + 1, n))?;
    let sum = sum_products(engine, &pairs(&left, &right))?;
    Ok(BigCount::from(sum) + BigCount::from(1u64))
}

/// The terms `(α, |[∅, α]|)` for `α ∈ AMT(1..n−1)`, in canonical order.
pub fn one_element_terms(engine: &Engine, n: u32) -> Result<Vec<(AntiChain, BigCount)>> {
    check_n(n)?;
    if n == 0 {
        return Err(AmfError::Precondition("one-element recursion needs n >= 1".into()));
    }
    let ground = GroundSet::prefix(n - 1);
    let empty = AntiChain::empty(ground);
    let all = engine.collect_interval(&empty, &omega(ground, ground.mask())?)?;
    let count = |a: &AntiChain| engine.count_interval(&empty, a).map(|c| (a.clone(), c));
    if engine.is_parallel() {
        engine.install(|| all.par_iter().map(count).collect())
    } else {
        all.iter().map(count).collect()
    }
}

/// `|AMT(n)| = Σ_{α ∈ AMT(1..n−1)} |[∅, α]|`.
pub fn dedekind_one_element(engine: &Engine, n: u32) -> Result<BigCount> {
    Ok(one_element_terms(engine, n)?.into_iter().map(|(_, c)| c).sum())
}
