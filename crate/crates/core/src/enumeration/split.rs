//! Choosing the bipartition `X | Y` of `span(upper)` a fragment is split along.

use crate::enumeration::element::{projected_distance, Element};

/// How [`find_split`] picks `X | Y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SplitPolicy {
    /// Bipartition whose two projected distances are as large and as equal
    /// as possible; falls back to [`SplitPolicy::Descent`].
    #[default]
    Balanced,
    /// `X` is a smallest member of `upper` missing from `lower`, or, when
    /// `upper` has a single member `W`, some `W ∖ {a}` not dominated by `lower`.
    Descent,
}

/// Spans up to this size are searched exhaustively by the balanced policy.
const EXHAUSTIVE_SPAN: u32 = 10;

/// Returns `(X, Y)` with `X ∪ Y = span(upper)`, both nonempty and disjoint,
/// and the projected distance on `X` at least one.
///
/// Caller guarantees `∅ < lower < upper` and that the pair is not a base case
/// (`upper` principal and covering `lower`). `None` means no split exists,
/// which for such a pair is a defect.
pub(crate) fn find_split<E: Element>(policy: SplitPolicy, lower: &E, upper: &E) -> Option<(u64, u64)> {
    let split = match policy {
        SplitPolicy::Balanced => balanced(lower, upper).or_else(|| descent(lower, upper)),
        SplitPolicy::Descent => descent(lower, upper),
    }?;
    debug_assert!(projected_distance(lower, upper, split.0) >= 1);
    Some(split)
}

fn descent<E: Element>(lower: &E, upper: &E) -> Option<(u64, u64)> {
    let span = upper.span();
    let x = if upper.is_principal() {
        let mut elems = span;
        let mut found = None;
        while elems != 0 {
            let bit = elems & elems.wrapping_neg();
            elems &= elems - 1;
            if !lower.dominates(span & !bit) {
                found = Some(span & !bit);
                break;
            }
        }
        found?
    } else {
        upper.min_fresh_member(lower)?
    };
    let y = span & !x;
    (x != 0 && y != 0).then_some((x, y))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Score {
    min: u128,
    sum: u128,
}

fn score<E: Element>(lower: &E, upper: &E, x: u64, y: u64) -> (Score, u128, u128) {
    let dx = projected_distance(lower, upper, x);
    let dy = projected_distance(lower, upper, y);
    (
        Score {
            min: dx.min(dy),
            sum: dx + dy,
        },
        dx,
        dy,
    )
}

/// Orient so the first side has positive distance.
fn orient(x: u64, y: u64, dx: u128, dy: u128) -> Option<(u64, u64)> {
    if dx >= 1 {
        Some((x, y))
    } else if dy >= 1 {
        Some((y, x))
    } else {
        None
    }
}

fn balanced<E: Element>(lower: &E, upper: &E) -> Option<(u64, u64)> {
    let span = upper.span();
    if span.count_ones() < 2 {
        return None;
    }
    if span.count_ones() <= EXHAUSTIVE_SPAN {
        exhaustive(lower, upper, span)
    } else {
        local_search(lower, upper, span)
    }
}

fn exhaustive<E: Element>(lower: &E, upper: &E, span: u64) -> Option<(u64, u64)> {
    let anchor = span & span.wrapping_neg();
    let rest = span & !anchor;
    let mut best: Option<(Score, u64, u64, u128, u128)> = None;
    // Every bipartition once: X always holds the smallest element.
    let mut sub = rest;
    loop {
        let x = anchor | sub;
        let y = span & !x;
        if y != 0 {
            let (s, dx, dy) = score(lower, upper, x, y);
            if s.sum > 0 && best.is_none_or(|b| s > b.0) {
                best = Some((s, x, y, dx, dy));
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    best.and_then(|(_, x, y, dx, dy)| orient(x, y, dx, dy))
}

fn local_search<E: Element>(lower: &E, upper: &E, span: u64) -> Option<(u64, u64)> {
    // Start from the lower half of the elements and move single elements
    // across while the score improves.
    let mut x = 0u64;
    let mut elems = span;
    for _ in 0..span.count_ones() / 2 {
        let bit = elems & elems.wrapping_neg();
        x |= bit;
        elems &= elems - 1;
    }
    let (mut cur, mut dx, mut dy) = score(lower, upper, x, span & !x);
    loop {
        let mut improved = false;
        let mut bits = span;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let cand = x ^ bit;
            if cand == 0 || cand == span {
                continue;
            }
            let (s, cx, cy) = score(lower, upper, cand, span & !cand);
            if s > cur {
                (x, cur, dx, dy) = (cand, s, cx, cy);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    orient(x, span & !x, dx, dy)
}
