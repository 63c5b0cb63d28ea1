//! Exhaustive verification suites. Each returns a [`Verdict`] whose
//! counterexample, if any, is printed in the canonical text grammar.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::antichain::AntiChain;
use crate::dedekind::{dedekind_interval_recursion, dedekind_one_element, dedekind_span_expansion};
use crate::decomposition::{
    coordinate_cells, decompose_interval, Cell, decompose_interval_overlapping, orthogonal_cells,
    set_partitions,
};
use crate::enumeration::oracle::oracle_enumerate;
use crate::enumeration::Engine;
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::lattice::young::{strip_product_divergence, young_partition, young_stability, YoungBox};
use crate::lattice::{conformance, FiniteDistributiveLattice, Generic};
use crate::operators::rank_inclusion_exclusion;

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    PartitionGeneral,
    PartitionOrthogonal,
    IntervalDecomposition,
    Rank,
    Distance,
    Recursions,
    Young,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::PartitionGeneral,
        Check::PartitionOrthogonal,
        Check::IntervalDecomposition,
        Check::Rank,
        Check::Distance,
        Check::Recursions,
        Check::Young,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PartitionGeneral => "partition-general",
            Check::PartitionOrthogonal => "partition-orthogonal",
            Check::IntervalDecomposition => "interval-decomposition",
            Check::Rank => "rank",
            Check::Distance => "distance",
            Check::Recursions => "recursions",
            Check::Young => "young",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = AmfError;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| AmfError::Precondition(format!("unknown check {s:?}")))
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub details: Map<String, Value>,
    pub counterexample: Option<String>,
}

impl Verdict {
    fn new(check: Check) -> Self {
        Verdict {
            check: check.name().to_string(),
            passed: true,
            details: Map::new(),
            counterexample: None,
        }
    }

    fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    /// Records a failure; only the first counterexample is kept.
    fn fail(&mut self, counterexample: impl FnOnce() -> String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(counterexample());
        }
    }

    /// `PASS name` or `FAIL name`, then indented details.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", if self.passed { "PASS" } else { "FAIL" }, self.check);
        for (k, v) in &self.details {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {v}\n"));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("  counterexample: {c}\n"));
        }
        out
    }
}

/// Inputs for [`run`]; which fields matter depends on the check.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<u32>,
    pub sigma: Option<String>,
    pub blocks: Option<Vec<SubsetMask>>,
    pub rows: Option<u32>,
    pub cols: Option<u32>,
}

fn need_n(p: &Params) -> Result<u32> {
    p.n.ok_or_else(|| AmfError::Precondition("this check needs --n".into()))
}

fn parse_sigma(p: &Params, ground: GroundSet) -> Result<Option<AntiChain>> {
    p.sigma
        .as_deref()
        .map(|s| AntiChain::parse(s, ground, true))
        .transpose()
}

pub fn run(engine: &Engine, check: Check, p: &Params) -> Result<Verdict> {
    match check {
        Check::PartitionGeneral => {
            let n = need_n(p)?;
            let sigma = parse_sigma(p, GroundSet::prefix(n))?;
            partition_general(engine, n, sigma.as_ref())
        }
        Check::PartitionOrthogonal => partition_orthogonal(engine, need_n(p)?, p.blocks.as_deref()),
        Check::IntervalDecomposition => {
            let n = need_n(p)?;
            let sigma = parse_sigma(p, GroundSet::prefix(n))?;
            interval_decomposition(engine, n, sigma.as_ref())
        }
        Check::Rank => rank(need_n(p)?),
        Check::Distance => distance(need_n(p)?),
        Check::Recursions => recursions(engine, need_n(p)?),
        Check::Young => {
            let rows = p.rows.or(p.n).unwrap_or(4);
            let cols = p.cols.or(p.n).unwrap_or(4);
            young(rows, cols)
        }
    }
}

fn ground_and_all(n: u32) -> Result<(GroundSet, SubsetMask, Vec<AntiChain>)> {
    let ground = GroundSet::prefix(n);
    let all = oracle_enumerate(ground)?;
    Ok((ground, ground.mask(), all))
}

/// Every nonempty cell of the general coordinate system is disjoint from the
/// others and together they give `Υ_N`; cells whose family has
/// `π_{S∩T} κ_S ≠ π_{S∩T} κ_T` for some `S, T ∈ σ` are empty.
pub fn partition_general(engine: &Engine, n: u32, sigma: Option<&AntiChain>) -> Result<Verdict> {
    let (_, full, all) = ground_and_all(n)?;
    if n == 0 {
        return Err(AmfError::Precondition("partition checks need n >= 1".into()));
    }
    let target: HashSet<&AntiChain> = all.iter().filter(|k| k.span() == full).collect();
    let sigmas: Vec<AntiChain> = match sigma {
        Some(s) => vec![s.clone()],
        None => all.iter().filter(|s| !s.is_empty() && s.span() == full).cloned().collect(),
    };
    let mut v = Verdict::new(Check::PartitionGeneral);
    let (mut cells, mut empty, mut predicted) = (0u64, 0u64, 0u64);
    for s in &sigmas {
        let mut seen: HashSet<AntiChain> = HashSet::new();
        for cell in coordinate_cells(full, s)? {
            cells += 1;
            let members = engine.collect_interval(cell.lower(), cell.upper())?;
            if cell.is_empty() {
                empty += 1;
            }
            if cell.is_empty() != members.is_empty() {
                v.fail(|| format!("σ = {s}: emptiness flag wrong for [{} .. {}]", cell.lower(), cell.upper()));
            }
            let assignment = cell.family().assignment();
            let interacts = assignment.iter().enumerate().any(|(i, (a, ka))| {
                assignment[i + 1..].iter().any(|(b, kb)| {
                    let common = *a & *b;
                    ka.project(common) != kb.project(common)
                })
            });
            if interacts {
                predicted += 1;
                if !cell.is_empty() {
                    v.fail(|| format!("σ = {s}: interacting family gives nonempty [{} .. {}]", cell.lower(), cell.upper()));
                }
            }
            for k in members {
                if !target.contains(&k) {
                    v.fail(|| format!("σ = {s}: {k} has the wrong span"));
                }
                if !seen.insert(k.clone()) {
                    v.fail(|| format!("σ = {s}: {k} lies in more than one cell"));
                }
            }
        }
        if let Some(k) = target.iter().find(|k| !seen.contains(**k)) {
            v.fail(|| format!("σ = {s}: {k} lies in no cell"));
        }
    }
    v.detail("n", n);
    v.detail("sigmas", sigmas.len());
    v.detail("cells", cells);
    v.detail("empty_cells", empty);
    v.detail("interacting_cells", predicted);
    v.detail("upsilon_size", target.len());
    Ok(v)
}

/// Set partitions give nonempty, disjoint cells covering `Υ_N`.
pub fn partition_orthogonal(engine: &Engine, n: u32, blocks: Option<&[SubsetMask]>) -> Result<Verdict> {
    let (ground, full, all) = ground_and_all(n)?;
    if n == 0 {
        return Err(AmfError::Precondition("partition checks need n >= 1".into()));
    }
    let target: HashSet<&AntiChain> = all.iter().filter(|k| k.span() == full).collect();
    let partitions = match blocks {
        Some(b) => vec![b.to_vec()],
        None => set_partitions(full),
    };
    let mut v = Verdict::new(Check::PartitionOrthogonal);
    let (mut cells, mut sizes) = (0u64, 0u64);
    for blocks in &partitions {
        let label = blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("|");
        let mut seen: HashSet<AntiChain> = HashSet::new();
        for cell in orthogonal_cells(ground, full, blocks)? {
            cells += 1;
            let members = engine.collect_interval(cell.lower(), cell.upper())?;
            if members.is_empty() {
                v.fail(|| format!("blocks {label}: empty cell [{} .. {}]", cell.lower(), cell.upper()));
            }
            sizes += members.len() as u64;
            for k in members {
                if !target.contains(&k) {
                    v.fail(|| format!("blocks {label}: {k} has the wrong span"));
                }
                if !seen.insert(k.clone()) {
                    v.fail(|| format!("blocks {label}: {k} lies in more than one cell"));
                }
            }
        }
        if let Some(k) = target.iter().find(|k| !seen.contains(**k)) {
            v.fail(|| format!("blocks {label}: {k} lies in no cell"));
        }
    }
    v.detail("n", n);
    v.detail("partitions", partitions.len());
    v.detail("cells", cells);
    v.detail("size_sum", sizes);
    v.detail("upsilon_size", target.len());
    Ok(v)
}

/// Admissible `σ` for `upper`: set partitions of `span(upper)` below `upper`.
/// For `upper = {∅}` that is `σ = {∅}`.
pub fn admissible_sigmas(upper: &AntiChain) -> Vec<AntiChain> {
    if upper.span().is_empty() {
        return vec![AntiChain::unit(upper.ground())];
    }
    set_partitions(upper.span())
        .into_iter()
        .filter(|blocks| !blocks.is_empty() && blocks.iter().all(|b| upper.dominates(*b)))
        .map(|blocks| {
            crate::antichain::canonical_sup(upper.ground(), blocks).expect("blocks lie in the ground")
        })
        .collect()
}

/// Cells of [`decompose_interval`] partition `[lower, upper]` for every
/// nonempty `lower ≤ upper` and admissible `σ`.
pub fn interval_decomposition(engine: &Engine, n: u32, sigma: Option<&AntiChain>) -> Result<Verdict> {
    let (_, _, all) = ground_and_all(n)?;
    let mut v = Verdict::new(Check::IntervalDecomposition);
    let (mut pairs, mut triples, mut cells) = (0u64, 0u64, 0u64);
    for lower in all.iter().filter(|a| !a.is_empty()) {
        for upper in all.iter().filter(|b| lower.leq_unchecked(b)) {
            pairs += 1;
            let target: HashSet<&AntiChain> = all
                .iter()
                .filter(|k| lower.leq_unchecked(k) && k.leq_unchecked(upper))
                .collect();
            // A supplied σ is taken as given, overlapping members included.
            let sigmas = match sigma {
                Some(s) if s.span() == upper.span() && s.leq_unchecked(upper) => vec![s.clone()],
                Some(_) => Vec::new(),
                None => admissible_sigmas(upper),
            };
            for s in &sigmas {
                triples += 1;
                let mut seen: HashSet<AntiChain> = HashSet::new();
                let cells_of: Vec<Cell> = if sigma.is_some() {
                    decompose_interval_overlapping(lower, upper, s)?.collect()
                } else {
                    decompose_interval(lower, upper, s)?.collect()
                };
                for cell in cells_of {
                    cells += 1;
                    for k in engine.collect_interval(cell.lower(), cell.upper())? {
                        if !target.contains(&k) {
                            v.fail(|| format!("[{lower} .. {upper}], σ = {s}: {k} outside the interval"));
                        }
                        if !seen.insert(k.clone()) {
                            v.fail(|| format!("[{lower} .. {upper}], σ = {s}: {k} lies in more than one cell"));
                        }
                    }
                }
                if let Some(k) = target.iter().find(|k| !seen.contains(**k)) {
                    v.fail(|| format!("[{lower} .. {upper}], σ = {s}: {k} lies in no cell"));
                }
            }
        }
    }
    v.detail("n", n);
    v.detail("pairs", pairs);
    v.detail("sigma_choices", triples);
    v.detail("cells", cells);
    if sigma.is_none() && n <= 3 {
        let o = overlapping_sigma(engine, n)?;
        v.detail("overlapping_sigma_choices", o.choices);
        v.detail("overlapping_sigma_failures", o.failures);
        if let Some(w) = o.witness {
            v.detail("overlapping_sigma_witness", w);
        }
    }
    Ok(v)
}

/// How the decomposition construction fares when members of `σ` intersect.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverlapReport {
    pub choices: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

/// Runs the decomposition construction for every nonempty `lower ≤ upper`
/// and every `σ ≤ upper` with `span(σ) = span(upper)` whose members
/// intersect, and counts the choices that fail to partition the interval.
pub fn overlapping_sigma(engine: &Engine, n: u32) -> Result<OverlapReport> {
    let (_, _, all) = ground_and_all(n)?;
    let mut r = OverlapReport::default();
    for lower in all.iter().filter(|a| !a.is_empty()) {
        for upper in all.iter().filter(|b| lower.leq_unchecked(b)) {
            let target: HashSet<&AntiChain> = all
                .iter()
                .filter(|k| lower.leq_unchecked(k) && k.leq_unchecked(upper))
                .collect();
            for s in all.iter().filter(|s| {
                s.span() == upper.span()
                    && s.leq_unchecked(upper)
                    && s.sets().iter().enumerate().any(|(i, a)| s.sets()[i + 1..].iter().any(|b| !a.is_disjoint(*b)))
            }) {
                r.choices += 1;
                let mut seen: HashSet<AntiChain> = HashSet::new();
                let mut ok = true;
                for cell in decompose_interval_overlapping(lower, upper, s)? {
                    for k in engine.collect_interval(cell.lower(), cell.upper())? {
                        if !seen.insert(k.clone()) {
                            if ok && r.witness.is_none() {
                                r.witness = Some(format!("[{lower} .. {upper}], σ = {s}: {k} lies in more than one cell"));
                            }
                            ok = false;
                        }
                    }
                }
                if seen.len() != target.len() {
                    ok = false;
                }
                r.failures += u64::from(!ok);
            }
        }
    }
    Ok(r)
}

/// Inclusion–exclusion rank, the visited-set rank and the down-set size
/// agree on every element.
pub fn rank(n: u32) -> Result<Verdict> {
    let (_, _, all) = ground_and_all(n)?;
    let mut v = Verdict::new(Check::Rank);
    for a in &all {
        let down = a.to_monotone().len() as u128;
        let walk = a.rank();
        let ie = rank_inclusion_exclusion(a)?;
        if ie != down as i128 || walk != down {
            v.fail(|| format!("{a}: inclusion-exclusion {ie}, walk {walk}, down-set {down}"));
        }
    }
    v.detail("n", n);
    v.detail("elements", all.len());
    Ok(v)
}

/// `distance(a, b)` equals the size of the symmetric difference of the
/// down-sets, for every pair.
pub fn distance(n: u32) -> Result<Verdict> {
    let (_, _, all) = ground_and_all(n)?;
    let downs: Vec<HashSet<SubsetMask>> = all
        .iter()
        .map(|a| a.to_monotone().sets().iter().copied().collect())
        .collect();
    let mut v = Verdict::new(Check::Distance);
    for (a, da) in all.iter().zip(&downs) {
        for (b, db) in all.iter().zip(&downs) {
            let want = da.symmetric_difference(db).count() as u128;
            let got = a.distance(b)?;
            if got != want {
                v.fail(|| format!("distance({a}, {b}) = {got}, symmetric difference {want}"));
            }
        }
    }
    v.detail("n", n);
    v.detail("pairs", all.len() * all.len());
    Ok(v)
}

/// `|[α ∨ {{n}}, α × {{n}}]| = |[{∅}, α]|` for nonempty `α ∈ AMT(1..n−1)`.
/// Returns the number of `α` checked and the first failure.
pub fn one_element_identity(engine: &Engine, n: u32) -> Result<(usize, Option<String>)> {
    if n == 0 {
        return Err(AmfError::Precondition("identity needs n >= 1".into()));
    }
    let ground = GroundSet::prefix(n);
    let last = AntiChain::singletons(ground, SubsetMask::range(n, n))?;
    let unit = AntiChain::unit(ground);
    let rest = AntiChain::principal(ground, SubsetMask::prefix(n - 1))?;
    let alphas = engine.collect_interval(&unit, &rest)?;
    for a in &alphas {
        let left = engine.count_interval(&a.join_unchecked(&last), &a.product_unchecked(&last))?;
        let right = engine.count_interval(&unit, a)?;
        if left != right {
            return Ok((alphas.len(), Some(format!("α = {a}: {left} vs {right}"))));
        }
    }
    Ok((alphas.len(), None))
}

/// The three recursions agree with each other for every split point, with
/// the oracle when `n ≤ 5`, and the one-element identity holds.
pub fn recursions(engine: &Engine, n: u32) -> Result<Verdict> {
    let mut v = Verdict::new(Check::Recursions);
    let span = dedekind_span_expansion(engine, n)?;
    v.detail("n", n);
    v.detail("value", span.to_string());
    let disagree = |v: &mut Verdict, method: String, value: String| {
        if value != span.to_string() {
            v.fail(|| format!("{method} gives {value}, span expansion gives {span}"));
        }
    };
    if n >= 1 {
        let one = dedekind_one_element(engine, n)?.to_string();
        v.detail("one_element", one.clone());
        disagree(&mut v, "one-element".into(), one);
    }
    let mut splits = Vec::new();
    for n1 in 1..n {
        let s = dedekind_interval_recursion(engine, n, n1)?.to_string();
        splits.push(json!({"n1": n1, "value": s}));
        disagree(&mut v, format!("split n1 = {n1}"), s);
    }
    v.detail("splits", splits);
    if n <= crate::enumeration::oracle::ORACLE_MAX_ELEMENTS {
        let oracle = oracle_enumerate(GroundSet::prefix(n))?.len().to_string();
        v.detail("oracle", oracle.clone());
        disagree(&mut v, "oracle".into(), oracle);
        if n >= 1 {
            let (count, failure) = one_element_identity(engine, n)?;
            v.detail("identity_terms", count);
            if let Some(f) = failure {
                v.fail(|| format!("one-element identity: {f}"));
            }
        }
    }
    Ok(v)
}

/// Hook/rectangle partition and its stability, lattice conformance, and the
/// generic partition theorem for every pair of `base` classes in the box. The
/// strip product divergence is reported but does not fail the check.
pub fn young(rows: u32, cols: u32) -> Result<Verdict> {
    let bx = YoungBox::new(rows, cols)?;
    let mut v = Verdict::new(Check::Young);
    let report = young_partition(rows, cols)?;
    if let Some(w) = report.violations.first() {
        v.fail(|| w.clone());
    }
    if let Some(w) = young_stability(rows, cols)?.first() {
        v.fail(|| format!("stability: {w}"));
    }
    if let Some(w) = conformance(&bx).first() {
        v.fail(|| format!("conformance: {w}"));
    }
    let g = Generic::new(&bx);
    let classes = g.base_classes();
    let mut pairs = 0;
    for a in &classes {
        for b in &classes {
            pairs += 1;
            let r = g.partition_check(a, b);
            if let Some(w) = r.first_violation() {
                v.fail(|| format!("generic partition for ({a}) and ({b}): {w}"));
            }
        }
    }
    let divergence: Vec<String> = strip_product_divergence(&g)?
        .into_iter()
        .map(|(i, j, p, r)| format!("vs_{i} × hs_{j} = {p}, rectangle {r}"))
        .collect();
    v.detail("rows", rows);
    v.detail("cols", cols);
    v.detail("diagrams", report.diagrams);
    v.detail("cells", report.cells);
    v.detail("generic_class_pairs", pairs);
    v.detail("elements", bx.elements().len());
    v.detail("strip_product_divergence", divergence);
    Ok(v)
}
