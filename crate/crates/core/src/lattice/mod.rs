//! Next, base, top and the product over a finite distributive lattice,
//! evaluated literally by scanning every element.

mod amf;
pub mod young;

use std::collections::{HashMap, HashSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use amf::{compare_products, AmfLattice, ProductComparison};

/// A finite distributive lattice that can list its elements.
pub trait FiniteDistributiveLattice {
    type Elem: Clone + Eq + Hash + Debug + Display;

    /// Every element, each exactly once.
    fn elements(&self) -> Vec<Self::Elem>;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    /// The least element strictly above the bottom.
    fn unit(&self) -> Self::Elem;
}

/// A lattice together with its element list and cached `base` values.
pub struct Generic<'a, L: FiniteDistributiveLattice> {
    lattice: &'a L,
    elements: Vec<L::Elem>,
    bases: HashMap<L::Elem, L::Elem>,
    tops: HashMap<L::Elem, L::Elem>,
}

impl<'a, L: FiniteDistributiveLattice> Generic<'a, L> {
    pub fn new(lattice: &'a L) -> Self {
        let elements = lattice.elements();
        let mut g = Generic {
            lattice,
            elements,
            bases: HashMap::new(),
            tops: HashMap::new(),
        };
        let unit = g.lattice.unit();
        let signature = g.join_all(g.next_up(&unit).iter());
        g.bases = g
            .elements
            .iter()
            .map(|e| (e.clone(), g.lattice.meet(e, &signature)))
            .collect();
        for e in &g.elements {
            let b = &g.bases[e];
            let top = g.tops.get(b).cloned().unwrap_or_else(|| g.lattice.bottom());
            g.tops.insert(b.clone(), g.lattice.join(&top, e));
        }
        g
    }

    pub fn lattice(&self) -> &L {
        self.lattice
    }

    pub fn elements(&self) -> &[L::Elem] {
        &self.elements
    }

    pub fn join_all<'e>(&self, items: impl Iterator<Item = &'e L::Elem>) -> L::Elem
    where
        L::Elem: 'e,
    {
        items.fold(self.lattice.bottom(), |acc, x| self.lattice.join(&acc, x))
    }

    fn lt(&self, a: &L::Elem, b: &L::Elem) -> bool {
        a != b && self.lattice.leq(a, b)
    }

    /// The distinct values of `base`, one per class. The partition theorem for
    /// `(a, b)` depends on `a` and `b` only through their classes.
    pub fn base_classes(&self) -> Vec<L::Elem> {
        let mut seen = HashSet::new();
        self.elements
            .iter()
            .map(|e| self.bases[e].clone())
            .filter(|b| seen.insert(b.clone()))
            .collect()
    }

    /// Immediate successors: the minimal elements strictly above `x`.
    pub fn next_up(&self, x: &L::Elem) -> Vec<L::Elem> {
        let above: Vec<&L::Elem> = self.elements.iter().filter(|y| self.lt(x, y)).collect();
        above
            .iter()
            .filter(|y| !above.iter().any(|z| self.lt(z, y)))
            .map(|y| (*y).clone())
            .collect()
    }

    /// `x ∧ ∨Next(1)`.
    pub fn base(&self, x: &L::Elem) -> L::Elem {
        self.bases[x].clone()
    }

    /// `∨{κ | base(κ) = base(x)}`.
    pub fn top_of(&self, x: &L::Elem) -> L::Elem {
        self.tops[&self.bases[x]].clone()
    }

    /// `∨{κ | top(a) ∧ κ ≤ a and top(b) ∧ κ ≤ b}`.
    pub fn product(&self, a: &L::Elem, b: &L::Elem) -> L::Elem {
        let (ta, tb) = (self.top_of(a), self.top_of(b));
        let l = self.lattice;
        self.join_all(
            self.elements
                .iter()
                .filter(|k| l.leq(&l.meet(&ta, k), a) && l.leq(&l.meet(&tb, k), b)),
        )
    }

    /// Members of `[lower, upper]`.
    pub fn interval(&self, lower: &L::Elem, upper: &L::Elem) -> Vec<L::Elem> {
        self.elements
            .iter()
            .filter(|k| self.lattice.leq(lower, k) && self.lattice.leq(k, upper))
            .cloned()
            .collect()
    }

    /// Checks that the intervals `[κ_a ∨ κ_b, κ_a × κ_b]` over
    /// `κ_a ∈ [base(a), top(a)]`, `κ_b ∈ [base(b), top(b)]` are disjoint and
    /// cover `[base(a) ∨ base(b), top(a) × top(b)]`.
    pub fn partition_check(&self, a: &L::Elem, b: &L::Elem) -> PartitionReport {
        let l = self.lattice;
        let (ba, bb) = (self.base(a), self.base(b));
        let (ta, tb) = (self.top_of(a), self.top_of(b));
        let target: HashSet<L::Elem> = self
            .interval(&l.join(&ba, &bb), &self.product(&ta, &tb))
            .into_iter()
            .collect();
        let mut report = PartitionReport {
            target_size: target.len(),
            ..PartitionReport::default()
        };
        let mut owner: HashMap<L::Elem, String> = HashMap::new();
        for ka in self.interval(&ba, &ta) {
            for kb in self.interval(&bb, &tb) {
                let cell = format!("[{} .. {}]", l.join(&ka, &kb), self.product(&ka, &kb));
                let members = self.interval(&l.join(&ka, &kb), &self.product(&ka, &kb));
                report.cells += 1;
                report.nonempty_cells += usize::from(!members.is_empty());
                for k in members {
                    if !target.contains(&k) && report.stray.is_none() {
                        report.stray = Some(format!("{k} in {cell} lies outside the target"));
                    }
                    if let Some(previous) = owner.get(&k) {
                        if report.overlap.is_none() {
                            report.overlap = Some(format!("{k} in both {previous} and {cell}"));
                        }
                    } else {
                        owner.insert(k, cell.clone());
                    }
                }
            }
        }
        report.covered = owner.keys().filter(|k| target.contains(k)).count();
        report.missing = target
            .iter()
            .find(|k| !owner.contains_key(*k))
            .map(|k| format!("{k} is in no cell"));
        report
    }

    /// Triples `(γ, a, b)` with `γ ≤ a × b` but `γ ∧ top(a) ≰ a`.
    pub fn lemma_violation(&self, gamma: &L::Elem, a: &L::Elem, b: &L::Elem) -> bool {
        let l = self.lattice;
        l.leq(gamma, &self.product(a, b)) && !l.leq(&l.meet(gamma, &self.top_of(a)), a)
    }
}

/// Outcome of [`Generic::partition_check`]; witnesses are display strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionReport {
    pub cells: usize,
    pub nonempty_cells: usize,
    pub target_size: usize,
    pub covered: usize,
    pub overlap: Option<String>,
    pub missing: Option<String>,
    pub stray: Option<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.overlap.is_none() && self.missing.is_none() && self.stray.is_none()
    }

    pub fn first_violation(&self) -> Option<&str> {
        self.overlap
            .as_deref()
            .or(self.missing.as_deref())
            .or(self.stray.as_deref())
    }
}

/// Lattice axioms checked over every pair, and distributivity over every
/// triple. Returns the first few violations.
pub fn conformance<L: FiniteDistributiveLattice>(lattice: &L) -> Vec<String> {
    const LIMIT: usize = 10;
    let l = lattice;
    let all = l.elements();
    let mut out = Vec::new();
    let mut fail = |msg: String| {
        if out.len() < LIMIT {
            out.push(msg)
        }
    };
    let distinct: HashSet<_> = all.iter().collect();
    if distinct.len() != all.len() {
        fail("element list has duplicates".into());
    }
    let (bottom, top, unit) = (l.bottom(), l.top(), l.unit());
    if unit == bottom || !l.leq(&bottom, &unit) {
        fail(format!("unit {unit} is not strictly above bottom {bottom}"));
    }
    for x in &all {
        if !l.leq(&bottom, x) || !l.leq(x, &top) {
            fail(format!("{x} is not between bottom and top"));
        }
        if *x != bottom && !l.leq(&unit, x) {
            fail(format!("unit {unit} is not below {x}"));
        }
    }
    for a in &all {
        for b in &all {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            if !(l.leq(&m, a) && l.leq(&m, b) && l.leq(a, &j) && l.leq(b, &j)) {
                fail(format!("meet/join of {a} and {b} are not bounds"));
            }
            if l.leq(a, b) && l.leq(b, a) && a != b {
                fail(format!("{a} and {b} are distinct but mutually below"));
            }
            if l.join(a, &m) != *a || l.meet(a, &j) != *a {
                fail(format!("absorption fails for {a} and {b}"));
            }
            for c in &all {
                if l.leq(c, a) && l.leq(c, b) && !l.leq(c, &m) {
                    fail(format!("meet of {a} and {b} is not greatest below {c}"));
                }
                if l.leq(a, c) && l.leq(b, c) && !l.leq(&j, c) {
                    fail(format!("join of {a} and {b} is not least below {c}"));
                }
                if l.meet(a, &l.join(b, c)) != l.join(&m, &l.meet(a, c)) {
                    fail(format!("distributivity fails for {a}, {b}, {c}"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::young::*;
    use super::*;
    use crate::antichain::AntiChain;
    use crate::ground::GroundSet;

    fn ac(text: &str, n: u32) -> AntiChain {
        AntiChain::parse(text, GroundSet::prefix(n), true).unwrap()
    }

    fn yd(text: &str) -> YoungDiagram {
        text.parse().unwrap()
    }

    #[test]
    fn next_up_examples() {
        let bx = YoungBox::new(3, 3).unwrap();
        let g = Generic::new(&bx);
        let mut next = g.next_up(&bx.unit());
        next.sort();
        assert_eq!(next, vec![yd("1,1"), yd("2")]);
        assert!(g.next_up(&bx.top()).is_empty());

        let amf = AmfLattice::new(2).unwrap();
        let g = Generic::new(&amf);
        let mut next = g.next_up(&ac("{{}}", 2));
        next.sort();
        assert_eq!(next, vec![ac("{{1}}", 2), ac("{{2}}", 2)]);
        assert!(g.next_up(&amf.top()).is_empty());
    }

    #[test]
    fn base_and_top_on_antichains() {
        let amf = AmfLattice::new(3).unwrap();
        let g = Generic::new(&amf);
        for a in g.elements().iter().filter(|a| !a.is_empty()) {
            let span = a.span();
            assert_eq!(g.base(a), AntiChain::singletons(amf.ground(), span).unwrap(), "{a}");
            assert_eq!(g.top_of(a), AntiChain::principal(amf.ground(), span).unwrap(), "{a}");
        }
    }

    #[test]
    fn base_and_top_on_diagrams() {
        let bx = YoungBox::new(3, 3).unwrap();
        let g = Generic::new(&bx);
        assert_eq!(g.base(&yd("3")), yd("2"));
        assert_eq!(g.top_of(&yd("3")), yd("3"));
        assert_eq!(g.base(&bx.unit()), bx.unit());
    }

    #[test]
    fn products() {
        let bx = YoungBox::new(4, 4).unwrap();
        let g = Generic::new(&bx);
        assert_eq!(g.product(&bx.vs(2).unwrap(), &bx.hs(3).unwrap()), yd("3,3"));
        assert_eq!(g.product(&bx.unit(), &bx.unit()), bx.top());

        let amf = AmfLattice::new(2).unwrap();
        let g = Generic::new(&amf);
        assert_eq!(g.product(&ac("{{1}}", 2), &ac("{{2}}", 2)), ac("{{1,2}}", 2));
    }

    #[test]
    fn partition_checks() {
        let amf = AmfLattice::new(3).unwrap();
        let g = Generic::new(&amf);
        let r = g.partition_check(&ac("{{1,2}}", 3), &ac("{{3}}", 3));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.covered, r.target_size);

        let bx = YoungBox::new(3, 3).unwrap();
        let g = Generic::new(&bx);
        let r = g.partition_check(&bx.vs(2).unwrap(), &bx.hs(2).unwrap());
        assert!(r.passed(), "{r:?}");
        let x = yd("2,1");
        assert!(g.partition_check(&x, &x).passed());
    }

    #[test]
    fn conformance_of_both_instances() {
        for n in 0..=3 {
            assert!(conformance(&AmfLattice::new(n).unwrap()).is_empty(), "n = {n}");
        }
        for r in 1..=4 {
            for c in 1..=4 {
                let bx = YoungBox::new(r, c).unwrap();
                assert!(conformance(&bx).is_empty(), "{r}×{c}");
            }
        }
    }

    #[test]
    fn young_shapes() {
        let bx = YoungBox::new(4, 4).unwrap();
        assert_eq!(bx.hook(3, 2).unwrap(), yd("2,1,1"));
        assert_eq!(bx.rectangle(3, 2).unwrap(), yd("2,2,2"));
        assert_eq!(bx.hook(1, 1).unwrap(), bx.unit());
        assert_eq!(bx.rectangle(1, 1).unwrap(), bx.unit());
        assert!(bx.vs(5).is_err());
        assert!(bx.hs(0).is_err());
        assert_eq!(bx.elements().len(), 70);
    }

    #[test]
    fn young_partition_of_four_by_four() {
        let r = young_partition(4, 4).unwrap();
        assert_eq!(r.diagrams, 69);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(young_stability(4, 4).unwrap().is_empty());
    }

    #[test]
    fn diagram_text() {
        assert_eq!(yd("3,1,1").to_string(), "3,1,1");
        assert_eq!(yd("0").to_string(), "0");
        assert_eq!(yd("2,0").to_string(), "2");
        assert!("1,2".parse::<YoungDiagram>().is_err());
        assert!("a".parse::<YoungDiagram>().is_err());
    }

    #[test]
    fn documented_divergences_are_visible() {
        let bx = YoungBox::new(3, 3).unwrap();
        let g = Generic::new(&bx);
        let d = strip_product_divergence(&g).unwrap();
        assert!(d.iter().any(|(i, j, _, _)| (*i, *j) == (1, 1)));

        let amf = AmfLattice::new(3).unwrap();
        let g = Generic::new(&amf);
        let c = compare_products(&g);
        assert_eq!(c.covering_mismatches, 0, "{:?}", c.covering_witness);
        assert!(c.other_mismatches > 0);
        assert!(c.empty_operand_mismatches > 0);
    }
}
