//! Recursive interval listing and counting.
//!
//! An interval `[lower, upper]` with nonempty bounds is either a base case
//! (no members; one member; or `upper` has a single member and covers
//! `lower`) or is split along a bipartition `X | Y` of `span(upper)` into the
//! fragments
//!
//! ```text
//! [(κ ∨ λ) ∨ lower, (κ × λ) ∧ upper],  κ ∈ [π_X lower, π_X upper],  λ ∈ [π_Y lower, π_Y upper]
//! ```
//!
//! which are pairwise disjoint and cover the interval. The iterations over
//! `κ` and `λ` are themselves recursive listings over smaller spans. Every
//! nonempty fragment is checked to be strictly closer than its parent.

mod dense;
pub(crate) mod element;
pub mod oracle;
pub(crate) mod split;

use std::cell::Cell;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::antichain::AntiChain;
use crate::count::BigCount;
use crate::error::{AmfError, Result};
use dense::{Compressor, DownSet};
use element::Element;
pub use split::SplitPolicy;
use split::find_split;

/// Recursion levels distributed over the worker pool.
const PARALLEL_DEPTH: u32 = 2;

pub(crate) trait Sink<E> {
    fn emit(&mut self, e: &E);
}

struct Discard;

impl<E> Sink<E> for Discard {
    fn emit(&mut self, _: &E) {}
}

struct Collect<'a, E>(&'a mut Vec<E>);

impl<E: Clone> Sink<E> for Collect<'_, E> {
    fn emit(&mut self, e: &E) {
        self.0.push(e.clone());
    }
}

struct Callback<F>(F);

impl<F: FnMut(&AntiChain)> Sink<AntiChain> for Callback<F> {
    fn emit(&mut self, e: &AntiChain) {
        (self.0)(e)
    }
}

struct Expand<'a, S> {
    compressor: &'a Compressor,
    inner: S,
}

impl<S: Sink<AntiChain>> Sink<DownSet> for Expand<'_, S> {
    fn emit(&mut self, e: &DownSet) {
        let a = self.compressor.to_sparse(e);
        self.inner.emit(&a);
    }
}

/// Emission from several threads at once.
pub(crate) trait SharedSink<E>: Sync {
    fn emit(&self, e: &E);
}

struct SharedDiscard;

impl<E> SharedSink<E> for SharedDiscard {
    fn emit(&self, _: &E) {}
}

struct SharedCallback<F>(F);

impl<F: Fn(&AntiChain) + Sync> SharedSink<AntiChain> for SharedCallback<F> {
    fn emit(&self, e: &AntiChain) {
        (self.0)(e)
    }
}

impl<S: SharedSink<AntiChain>> SharedSink<DownSet> for Expand<'_, S> {
    fn emit(&self, e: &DownSet) {
        self.inner.emit(&self.compressor.to_sparse(e));
    }
}

struct Local<'a, P>(&'a P);

impl<E, P: SharedSink<E>> Sink<E> for Local<'_, P> {
    fn emit(&mut self, e: &E) {
        self.0.emit(e)
    }
}

enum Step<E> {
    Done(u128),
    Split {
        lower: E,
        upper: E,
        kappas: Vec<E>,
        lambdas: Vec<E>,
        parent: u128,
    },
}

/// One thread's share of a recursion; flushes its call count on drop.
struct Walk<'a> {
    policy: SplitPolicy,
    calls: Cell<u64>,
    total: &'a AtomicU64,
}

impl Drop for Walk<'_> {
    fn drop(&mut self) {
        self.total.fetch_add(self.calls.get(), Ordering::Relaxed);
    }
}

fn overflow() -> AmfError {
    AmfError::Defect("interval size overflows 128 bits".into())
}

fn fragment<E: Element>(kappa: &E, lambda: &E, lower: &E, upper: &E) -> (E, E) {
    (
        kappa.join(lambda).join(lower),
        kappa.product(lambda).meet(upper),
    )
}

fn check_descent<E: Element>(lower: &E, upper: &E, parent: u128) -> Result<()> {
    if lower.leq(upper) && upper.rank() - lower.rank() >= parent {
        return Err(AmfError::Defect(format!(
            "fragment at distance {} does not shrink parent distance {parent}",
            upper.rank() - lower.rank()
        )));
    }
    Ok(())
}

impl<'a> Walk<'a> {
    fn new(policy: SplitPolicy, total: &'a AtomicU64) -> Self {
        Walk {
            policy,
            calls: Cell::new(0),
            total,
        }
    }

    fn step<E: Element, S: Sink<E>>(&self, lower: &E, upper: &E, sink: &mut S) -> Result<Step<E>> {
        self.calls.set(self.calls.get() + 1);
        if !lower.leq(upper) {
            return Ok(Step::Done(0));
        }
        if lower == upper {
            sink.emit(lower);
            return Ok(Step::Done(1));
        }
        if upper.is_principal() && upper.covers(lower) {
            sink.emit(lower);
            sink.emit(upper);
            return Ok(Step::Done(2));
        }
        let (x, y) = find_split(self.policy, lower, upper)
            .ok_or_else(|| AmfError::Defect("no descent split for a non-base interval".into()))?;
        let kappas = self.collect(&lower.project(x), &upper.project(x))?;
        let lambdas = self.collect(&lower.project(y), &upper.project(y))?;
        Ok(Step::Split {
            lower: lower.clone(),
            upper: upper.clone(),
            kappas,
            lambdas,
            parent: upper.rank() - lower.rank(),
        })
    }

    fn count<E: Element, S: Sink<E>>(&self, lower: &E, upper: &E, sink: &mut S) -> Result<u128> {
        match self.step(lower, upper, sink)? {
            Step::Done(n) => Ok(n),
            Step::Split {
                lower,
                upper,
                kappas,
                lambdas,
                parent,
            } => {
                let mut total = 0u128;
                for k in &kappas {
                    for l in &lambdas {
                        let (lo, up) = fragment(k, l, &lower, &upper);
                        check_descent(&lo, &up, parent)?;
                        total = total
                            .checked_add(self.count(&lo, &up, sink)?)
                            .ok_or_else(overflow)?;
                    }
                }
                Ok(total)
            }
        }
    }

    fn collect<E: Element>(&self, lower: &E, upper: &E) -> Result<Vec<E>> {
        let mut out = Vec::new();
        self.count(lower, upper, &mut Collect(&mut out))?;
        Ok(out)
    }
}

fn count_shared<E: Element, P: SharedSink<E>>(
    policy: SplitPolicy,
    calls: &AtomicU64,
    lower: &E,
    upper: &E,
    depth: u32,
    sink: &P,
) -> Result<u128> {
    let walk = Walk::new(policy, calls);
    if depth >= PARALLEL_DEPTH {
        return walk.count(lower, upper, &mut Local(sink));
    }
    let (lower, upper, kappas, lambdas, parent) = match walk.step(lower, upper, &mut Local(sink))? {
        Step::Done(n) => return Ok(n),
        Step::Split {
            lower,
            upper,
            kappas,
            lambdas,
            parent,
        } => (lower, upper, kappas, lambdas, parent),
    };
    drop(walk);
    let width = lambdas.len();
    (0..kappas.len() * width)
        .into_par_iter()
        .map(|i| {
            let (lo, up) = fragment(&kappas[i / width], &lambdas[i % width], &lower, &upper);
            check_descent(&lo, &up, parent)?;
            count_shared(policy, calls, &lo, &up, depth + 1, sink)
        })
        .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or_else(overflow))
}

/// Runs the recursive lister with a fixed split policy and worker count, and
/// records how many recursive calls were made.
pub struct Engine {
    policy: SplitPolicy,
    jobs: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
    calls: AtomicU64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            policy: SplitPolicy::default(),
            jobs: 1,
            pool: None,
            calls: AtomicU64::new(0),
        }
    }
}

impl Clone for Engine {
    fn clone(&self) -> Self {
        Engine {
            policy: self.policy,
            jobs: self.jobs,
            pool: self.pool.clone(),
            calls: AtomicU64::new(0),
        }
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("policy", &self.policy)
            .field("jobs", &self.jobs)
            .field("calls", &self.calls())
            .finish()
    }
}

impl Engine {
    /// Sequential engine with the balanced split policy.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_policy(mut self, policy: SplitPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Uses `jobs` worker threads for counting; `1` keeps everything on the
    /// calling thread.
    pub fn with_jobs(mut self, jobs: usize) -> Result<Self> {
        if jobs == 0 {
            return Err(AmfError::Precondition("jobs must be at least 1".into()));
        }
        self.jobs = jobs;
        self.pool = if jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| AmfError::Defect(format!("worker pool: {e}")))?;
            Some(Arc::new(pool))
        } else {
            None
        };
        Ok(self)
    }

    pub fn policy(&self) -> SplitPolicy {
        self.policy
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    /// Recursive calls made so far, including the listings of projected
    /// intervals.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    pub(crate) fn is_parallel(&self) -> bool {
        self.pool.is_some()
    }

    /// `|[lower, upper]|`. Either bound may be `∅`.
    pub fn count_interval(&self, lower: &AntiChain, upper: &AntiChain) -> Result<BigCount> {
        self.count_u128(lower, upper).map(BigCount::from)
    }

    pub(crate) fn count_u128(&self, lower: &AntiChain, upper: &AntiChain) -> Result<u128> {
        if self.is_parallel() {
            self.install(|| self.run_shared(lower, upper, &SharedDiscard))
        } else {
            self.run(lower, upper, Discard)
        }
    }

    /// Emits every member of `[lower, upper]` exactly once, on the calling
    /// thread and in canonical order, and returns how many there were. The
    /// members are held in memory before the first emission; see
    /// [`stream_interval`](Self::stream_interval) for the streaming form.
    pub fn list_interval<F>(&self, lower: &AntiChain, upper: &AntiChain, mut sink: F) -> Result<BigCount>
    where
        F: FnMut(&AntiChain),
    {
        let members = self.collect_interval(lower, upper)?;
        members.iter().for_each(&mut sink);
        Ok(BigCount::from(members.len() as u64))
    }

    /// Emits every member of `[lower, upper]` exactly once as the recursion
    /// reaches it. The order is deterministic but not canonical.
    pub fn stream_interval<F>(&self, lower: &AntiChain, upper: &AntiChain, sink: F) -> Result<BigCount>
    where
        F: FnMut(&AntiChain),
    {
        self.run(lower, upper, Callback(sink)).map(BigCount::from)
    }

    /// Like [`stream_interval`](Self::stream_interval) but fragments near the top
    /// of the recursion are listed concurrently when the engine has more than
    /// one worker; emission order is then unspecified.
    pub fn list_interval_concurrent<F>(&self, lower: &AntiChain, upper: &AntiChain, sink: F) -> Result<BigCount>
    where
        F: Fn(&AntiChain) + Sync,
    {
        let sink = SharedCallback(sink);
        self.install(|| self.run_shared(lower, upper, &sink))
            .map(BigCount::from)
    }

    /// Members of `[lower, upper]` in canonical order.
    pub fn collect_interval(&self, lower: &AntiChain, upper: &AntiChain) -> Result<Vec<AntiChain>> {
        let mut out = Vec::new();
        self.run(lower, upper, Collect(&mut out))?;
        out.sort();
        Ok(out)
    }

    /// Peels `∅` off the bounds. Returns the remaining nonempty pair, if any,
    /// and how many members were already accounted for.
    fn peel(lower: &AntiChain, upper: &AntiChain, emit: &mut dyn FnMut(&AntiChain)) -> Result<(Option<(AntiChain, AntiChain)>, u128)> {
        lower.same_ground(upper)?;
        if upper.is_empty() {
            if lower.is_empty() {
                emit(lower);
                return Ok((None, 1));
            }
            return Ok((None, 0));
        }
        if lower.is_empty() {
            // ∅ is the global minimum and {∅} the least nonempty function.
            emit(lower);
            return Ok((Some((AntiChain::unit(lower.ground()), upper.clone())), 1));
        }
        Ok((Some((lower.clone(), upper.clone())), 0))
    }

    fn run<S: Sink<AntiChain>>(&self, lower: &AntiChain, upper: &AntiChain, mut sink: S) -> Result<u128> {
        let (rest, base) = Self::peel(lower, upper, &mut |a| sink.emit(a))?;
        let Some((lower, upper)) = rest else {
            return Ok(base);
        };
        let walk = Walk::new(self.policy, &self.calls);
        let n = if !lower.leq_unchecked(&upper) {
            walk.count(&lower, &upper, &mut sink)?
        } else if let Some(c) = Compressor::new(upper.ground(), upper.span()) {
            let (lo, up) = (c.to_dense(&lower), c.to_dense(&upper));
            walk.count(&lo, &up, &mut Expand { compressor: &c, inner: sink })?
        } else {
            walk.count(&lower, &upper, &mut sink)?
        };
        base.checked_add(n).ok_or_else(overflow)
    }

    fn run_shared<P: SharedSink<AntiChain>>(&self, lower: &AntiChain, upper: &AntiChain, sink: &P) -> Result<u128> {
        let (rest, base) = Self::peel(lower, upper, &mut |a| sink.emit(a))?;
        let Some((lower, upper)) = rest else {
            return Ok(base);
        };
        let n = if !lower.leq_unchecked(&upper) {
            count_shared(self.policy, &self.calls, &lower, &upper, 0, sink)?
        } else if let Some(c) = Compressor::new(upper.ground(), upper.span()) {
            let (lo, up) = (c.to_dense(&lower), c.to_dense(&upper));
            let expand = Expand { compressor: &c, inner: SharedRef(sink) };
            count_shared(self.policy, &self.calls, &lo, &up, 0, &expand)?
        } else {
            count_shared(self.policy, &self.calls, &lower, &upper, 0, sink)?
        };
        base.checked_add(n).ok_or_else(overflow)
    }

    /// Runs the sparse representation regardless of span; used to
    /// cross-check the dense path.
    #[doc(hidden)]
    pub fn count_interval_sparse(&self, lower: &AntiChain, upper: &AntiChain) -> Result<BigCount> {
        let (rest, base) = Self::peel(lower, upper, &mut |_| {})?;
        let Some((lower, upper)) = rest else {
            return Ok(BigCount::from(base));
        };
        let walk = Walk::new(self.policy, &self.calls);
        let n = walk.count(&lower, &upper, &mut Discard)?;
        Ok(BigCount::from(base + n))
    }
}

struct SharedRef<'a, P>(&'a P);

impl<E, P: SharedSink<E>> SharedSink<E> for SharedRef<'_, P> {
    fn emit(&self, e: &E) {
        self.0.emit(e)
    }
}

/// `|[lower, upper]|` with a default sequential [`Engine`].
pub fn count_interval(lower: &AntiChain, upper: &AntiChain) -> Result<BigCount> {
    Engine::new().count_interval(lower, upper)
}

/// Lists `[lower, upper]` with a default sequential [`Engine`].
pub fn list_interval<F: FnMut(&AntiChain)>(lower: &AntiChain, upper: &AntiChain, sink: F) -> Result<BigCount> {
    Engine::new().list_interval(lower, upper, sink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::GroundSet;
    use std::collections::HashSet;
    use std::sync::Mutex;

    fn p(n: u32) -> GroundSet {
        GroundSet::prefix(n)
    }

    fn ac(text: &str, n: u32) -> AntiChain {
        AntiChain::parse(text, p(n), true).unwrap()
    }

    fn between(all: &[AntiChain], lower: &AntiChain, upper: &AntiChain) -> Vec<AntiChain> {
        let mut v: Vec<_> = all
            .iter()
            .filter(|k| lower.leq_unchecked(k) && k.leq_unchecked(upper))
            .cloned()
            .collect();
        v.sort();
        v
    }

    #[test]
    fn small_examples() {
        let e = Engine::new();
        let a = ac("{{1},{2}}", 2);
        assert_eq!(e.count_interval(&a, &a).unwrap(), 1);
        assert_eq!(e.count_interval(&a, &ac("{{1,2}}", 2)).unwrap(), 2);
        assert_eq!(e.count_interval(&ac("{}", 2), &ac("{{1,2}}", 2)).unwrap(), 6);
        assert_eq!(e.count_interval(&ac("{}", 2), &ac("{{1},{2}}", 2)).unwrap(), 5);
        assert_eq!(e.count_interval(&ac("{{1,2}}", 2), &ac("{{1},{2}}", 2)).unwrap(), 0);
        assert_eq!(e.count_interval(&ac("{{}}", 3), &ac("{{1,2,3}}", 3)).unwrap(), 19);
        assert_eq!(e.count_interval(&ac("{{1},{2},{3}}", 3), &ac("{{1,2,3}}", 3)).unwrap(), 9);
        assert_eq!(e.count_interval(&ac("{}", 3), &ac("{}", 3)).unwrap(), 1);
        assert_eq!(e.count_interval(&ac("{{}}", 3), &ac("{}", 3)).unwrap(), 0);
    }

    #[test]
    fn every_pair_over_amt3_matches_oracle() {
        let all = oracle::oracle_enumerate(p(3)).unwrap();
        let e = Engine::new();
        for lower in &all {
            for upper in &all {
                let mut seen = Vec::new();
                let n = e.stream_interval(lower, upper, |k| seen.push(k.clone())).unwrap();
                let distinct: HashSet<_> = seen.iter().cloned().collect();
                assert_eq!(distinct.len(), seen.len(), "duplicate in [{lower} .. {upper}]");
                seen.sort();
                assert_eq!(seen, between(&all, lower, upper), "[{lower} .. {upper}]");
                assert_eq!(n, seen.len() as u64);
                assert_eq!(e.count_interval_sparse(lower, upper).unwrap(), n);
            }
        }
    }

    #[test]
    fn listing_is_canonical() {
        let mut seen = Vec::new();
        Engine::new()
            .list_interval(&ac("{{}}", 2), &ac("{{1,2}}", 2), |k| seen.push(k.to_string()))
            .unwrap();
        assert_eq!(seen, ["{{}}", "{{1}}", "{{1},{2}}", "{{2}}", "{{1,2}}"]);
    }

    #[test]
    fn descent_policy_agrees() {
        let all = oracle::oracle_enumerate(p(3)).unwrap();
        let e = Engine::new().with_policy(SplitPolicy::Descent);
        for lower in &all {
            for upper in &all {
                let got = e.collect_interval(lower, upper).unwrap();
                assert_eq!(got, between(&all, lower, upper));
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = p(5);
        let n = crate::ground::SubsetMask::prefix(5);
        let (lo, up) = (crate::interval::alpha(g, n).unwrap(), crate::interval::omega(g, n).unwrap());
        let seq = Engine::new().count_interval(&lo, &up).unwrap();
        let par = Engine::new().with_jobs(4).unwrap();
        assert_eq!(par.count_interval(&lo, &up).unwrap(), seq);
        let seen = Mutex::new(Vec::new());
        let n = par
            .list_interval_concurrent(&lo, &up, |k| seen.lock().unwrap().push(k.clone()))
            .unwrap();
        let mut seen = seen.into_inner().unwrap();
        seen.sort();
        seen.dedup();
        assert_eq!(n, seen.len() as u64);
        assert_eq!(seq, 6894);
    }

    #[test]
    fn sparse_path_beyond_dense_width() {
        // Nine elements leave the dense backend; blocks are independent.
        let g = p(9);
        let lower = AntiChain::parse("{{1},{2},{3},{4},{5},{6},{7},{8},{9}}", g, true).unwrap();
        let upper = AntiChain::parse("{{1,2},{3,4},{5,6},{7,8,9}}", g, true).unwrap();
        let e = Engine::new();
        assert_eq!(e.count_interval(&lower, &upper).unwrap(), 2 * 2 * 2 * 9);
        assert!(e.calls() > 0);
    }

    #[test]
    fn rejects_ground_mismatch() {
        assert!(Engine::new().count_interval(&ac("{{1}}", 2), &ac("{{1}}", 3)).is_err());
        assert!(Engine::new().with_jobs(0).is_err());
    }
}
