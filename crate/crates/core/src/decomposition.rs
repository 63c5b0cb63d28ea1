//! Partitions of `Υ_N`, of `AMT(N)` and of general intervals into intervals
//! `[∨κ_S, ×κ_S]` indexed by families `{κ_S | S ∈ σ}`.

use itertools::Itertools;

use crate::antichain::AntiChain;
use crate::enumeration::element::projected_distance;
use crate::enumeration::split::find_split;
use crate::enumeration::{Engine, SplitPolicy};
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interval::{alpha, omega, Interval};

/// A family `{κ_S | S ∈ σ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellFamily {
    sigma: AntiChain,
    assignment: Vec<(SubsetMask, AntiChain)>,
}

impl CellFamily {
    pub fn sigma(&self) -> &AntiChain {
        &self.sigma
    }

    /// `(S, κ_S)` pairs in the canonical order of `σ`.
    pub fn assignment(&self) -> &[(SubsetMask, AntiChain)] {
        &self.assignment
    }

    pub fn get(&self, block: SubsetMask) -> Option<&AntiChain> {
        self.assignment.iter().find(|(s, _)| *s == block).map(|(_, k)| k)
    }
}

/// One cell of a decomposition. The raw bounds are kept even when the cell is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    family: CellFamily,
    lower: AntiChain,
    upper: AntiChain,
}

impl Cell {
    pub fn family(&self) -> &CellFamily {
        &self.family
    }

    pub fn lower(&self) -> &AntiChain {
        &self.lower
    }

    pub fn upper(&self) -> &AntiChain {
        &self.upper
    }

    pub fn is_empty(&self) -> bool {
        !self.lower.leq_unchecked(&self.upper)
    }

    pub fn interval(&self) -> Interval {
        Interval::new_unchecked(self.lower.clone(), self.upper.clone())
    }
}

/// Lazily walks every choice of one member per block.
fn families(
    sigma: AntiChain,
    blocks: Vec<SubsetMask>,
    choices: Vec<Vec<AntiChain>>,
) -> impl Iterator<Item = CellFamily> {
    choices
        .into_iter()
        .map(Vec::into_iter)
        .multi_cartesian_product()
        .map(move |choice| CellFamily {
            sigma: sigma.clone(),
            assignment: blocks.iter().copied().zip(choice).collect(),
        })
}

fn family_bounds(ground: GroundSet, family: &CellFamily) -> (AntiChain, AntiChain) {
    let members = family.assignment.iter().map(|(_, k)| k);
    let lower = members.clone().fold(AntiChain::empty(ground), |acc, k| acc.join_unchecked(k));
    let upper = members.fold(AntiChain::unit(ground), |acc, k| acc.product_unchecked(k));
    (lower, upper)
}

fn check_sigma(n: SubsetMask, sigma: &AntiChain) -> Result<()> {
    sigma.ground().check(n)?;
    if sigma.is_empty() {
        return Err(AmfError::Precondition("σ must be nonempty".into()));
    }
    if sigma.span() != n {
        return Err(AmfError::Precondition(format!(
            "span of σ = {sigma} is {}, expected {n}",
            sigma.span()
        )));
    }
    Ok(())
}

/// Cells `[∨κ_S, ×κ_S]` over all families with `κ_S ∈ Υ_S`, for an
/// antichain `σ` spanning `N`. Nonempty cells partition `Υ_N`; empty cells
/// are yielded too and report [`Cell::is_empty`].
pub fn coordinate_cells(n: SubsetMask, sigma: &AntiChain) -> Result<impl Iterator<Item = Cell>> {
    check_sigma(n, sigma)?;
    cells_over(sigma.clone(), sigma.sets().to_vec())
}

/// [`coordinate_cells`] for any family of sets covering `N`, nested members
/// allowed. The family's maximal sets are reported as [`CellFamily::sigma`].
pub fn coordinate_cells_for_sets(
    ground: GroundSet,
    n: SubsetMask,
    sets: &[SubsetMask],
) -> Result<impl Iterator<Item = Cell>> {
    let sigma = crate::antichain::canonical_sup(ground, sets.iter().copied())?;
    check_sigma(n, &sigma)?;
    let mut blocks = sets.to_vec();
    blocks.sort();
    blocks.dedup();
    cells_over(sigma, blocks)
}

fn cells_over(sigma: AntiChain, blocks: Vec<SubsetMask>) -> Result<impl Iterator<Item = Cell>> {
    let ground = sigma.ground();
    let engine = Engine::new();
    let choices = blocks
        .iter()
        .map(|&s| engine.collect_interval(&alpha(ground, s)?, &omega(ground, s)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(families(sigma, blocks, choices).map(move |family| {
        let (lower, upper) = family_bounds(ground, &family);
        Cell { family, lower, upper }
    }))
}

/// All set partitions of `n`, blocks in canonical order.
pub fn set_partitions(n: SubsetMask) -> Vec<Vec<SubsetMask>> {
    fn go(rest: SubsetMask, acc: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        let Some(first) = rest.min_element() else {
            let mut p = acc.clone();
            p.sort();
            out.push(p);
            return;
        };
        let others = rest.without(first);
        for extra in others.subsets() {
            let block = extra.with(first);
            acc.push(block);
            go(rest - block, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Checks that `blocks` is a set partition of `n` and returns it as an
/// antichain.
pub fn partition_sigma(ground: GroundSet, n: SubsetMask, blocks: &[SubsetMask]) -> Result<AntiChain> {
    ground.check(n)?;
    let mut seen = SubsetMask::EMPTY;
    for &b in blocks {
        if b.is_empty() {
            return Err(AmfError::InvalidPartition("empty block".into()));
        }
        if !b.is_disjoint(seen) {
            return Err(AmfError::InvalidPartition(format!("block {b} overlaps an earlier block")));
        }
        seen = seen | b;
    }
    if seen != n {
        return Err(AmfError::InvalidPartition(format!("blocks cover {seen}, expected {n}")));
    }
    crate::antichain::canonical_sup(ground, blocks.iter().copied())
}

/// [`coordinate_cells`] for a set partition; every cell is nonempty.
pub fn orthogonal_cells(
    ground: GroundSet,
    n: SubsetMask,
    blocks: &[SubsetMask],
) -> Result<impl Iterator<Item = Cell>> {
    let sigma = partition_sigma(ground, n, blocks)?;
    coordinate_cells(n, &sigma)
}

/// `{∅}` followed by `[∨κ_S, ×κ_S]` over families with
/// `κ_S ∈ AMT(S) ∖ {∅}`; together they partition `AMT(N)`.
pub fn full_space_cells(
    ground: GroundSet,
    n: SubsetMask,
    blocks: &[SubsetMask],
) -> Result<impl Iterator<Item = Interval>> {
    let sigma = partition_sigma(ground, n, blocks)?;
    let engine = Engine::new();
    let unit = AntiChain::unit(ground);
    let choices = sigma
        .sets()
        .iter()
        .map(|&s| engine.collect_interval(&unit, &omega(ground, s)?))
        .collect::<Result<Vec<_>>>()?;
    let bottom = Interval::singleton(AntiChain::empty(ground));
    let blocks = sigma.sets().to_vec();
    Ok(std::iter::once(bottom).chain(families(sigma, blocks, choices).map(move |family| {
        let (lower, upper) = family_bounds(ground, &family);
        Interval::new_unchecked(lower, upper)
    })))
}

fn decomposition_cells(
    lower: &AntiChain,
    upper: &AntiChain,
    sigma: &AntiChain,
) -> Result<impl Iterator<Item = Cell>> {
    lower.same_ground(upper)?;
    lower.same_ground(sigma)?;
    if lower.is_empty() {
        return Err(AmfError::Precondition("lower bound must not be ∅".into()));
    }
    if !lower.leq_unchecked(upper) {
        return Err(AmfError::Precondition(format!("{lower} is not below {upper}")));
    }
    if !sigma.leq_unchecked(upper) {
        return Err(AmfError::Precondition(format!("σ = {sigma} is not below {upper}")));
    }
    if sigma.span() != upper.span() {
        return Err(AmfError::Precondition(format!(
            "span of σ = {sigma} differs from span of {upper}"
        )));
    }
    let ground = lower.ground();
    let engine = Engine::new();
    let choices = sigma
        .sets()
        .iter()
        .map(|&s| engine.collect_interval(&lower.project(s), &upper.project(s)))
        .collect::<Result<Vec<_>>>()?;
    let (lower, upper) = (lower.clone(), upper.clone());
    Ok(families(sigma.clone(), sigma.sets().to_vec(), choices).map(move |family| {
        let (lo, up) = family_bounds(ground, &family);
        Cell {
            family,
            lower: lo.join_unchecked(&lower),
            upper: up.meet_unchecked(&upper),
        }
    }))
}

/// Cells `[∨κ_S ∨ lower, ×κ_S ∧ upper]` over families with
/// `κ_S ∈ [π_S lower, π_S upper]`. The nonempty cells partition
/// `[lower, upper]`.
///
/// Requires `lower ≠ ∅`, `lower ≤ upper`, `σ ≤ upper`,
/// `span(σ) = span(upper)` and the members of `σ` pairwise disjoint. Without
/// the last condition the cells can overlap; see
/// [`decompose_interval_overlapping`].
pub fn decompose_interval(
    lower: &AntiChain,
    upper: &AntiChain,
    sigma: &AntiChain,
) -> Result<impl Iterator<Item = Cell>> {
    let sets = sigma.sets();
    for (i, a) in sets.iter().enumerate() {
        if let Some(b) = sets[i + 1..].iter().find(|b| !a.is_disjoint(**b)) {
            return Err(AmfError::Precondition(format!(
                "members {a} and {b} of σ intersect"
            )));
        }
    }
    decomposition_cells(lower, upper, sigma)
}

/// The construction of [`decompose_interval`] for any `σ ≤ upper` with the
/// right span, including `σ` with intersecting members. Such cells may
/// overlap; this exists to measure that.
pub fn decompose_interval_overlapping(
    lower: &AntiChain,
    upper: &AntiChain,
    sigma: &AntiChain,
) -> Result<impl Iterator<Item = Cell>> {
    decomposition_cells(lower, upper, sigma)
}

/// [`find_descent_split_with`] under the balanced policy.
pub fn find_descent_split(lower: &AntiChain, upper: &AntiChain) -> Result<Option<(SubsetMask, SubsetMask)>> {
    find_descent_split_with(SplitPolicy::Balanced, lower, upper)
}

/// A bipartition `X | Y` of `span(upper)` for splitting `[lower, upper]`,
/// with `distance(π_X lower, π_X upper) ≥ 1`. `None` for the base case
/// where `upper` has one member and covers `lower`.
pub fn find_descent_split_with(
    policy: SplitPolicy,
    lower: &AntiChain,
    upper: &AntiChain,
) -> Result<Option<(SubsetMask, SubsetMask)>> {
    lower.same_ground(upper)?;
    if lower.is_empty() || !lower.leq_unchecked(upper) || lower == upper {
        return Err(AmfError::Precondition(format!(
            "need ∅ < lower < upper, got [{lower} .. {upper}]"
        )));
    }
    if upper.len() == 1 && upper.covers_unchecked(lower) {
        return Ok(None);
    }
    let (x, y) = find_split(policy, lower, upper).ok_or_else(|| {
        AmfError::Defect(format!("no descent split for [{lower} .. {upper}]"))
    })?;
    debug_assert!(projected_distance(lower, upper, x) >= 1);
    Ok(Some((SubsetMask::from_bits(x), SubsetMask::from_bits(y))))
}

/// Parses `"1,2|3,4"` into blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<SubsetMask>> {
    let mut offset = 0;
    let mut blocks = Vec::new();
    for part in text.split('|') {
        let mut elements = Vec::new();
        for item in part.split(',') {
            let trimmed = item.trim();
            let value = trimmed
                .parse::<u32>()
                .map_err(|_| AmfError::parse(offset, format!("expected an element, found {trimmed:?}")))?;
            elements.push(value);
            offset += item.len() + 1;
        }
        blocks.push(SubsetMask::from_elements(elements)?);
    }
    Ok(blocks)
}
