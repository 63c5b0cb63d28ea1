use std::collections::HashSet;

use amf_core::decomposition::{decompose_interval, find_descent_split_with, orthogonal_cells};
use amf_core::operators::rank_inclusion_exclusion;
use amf_core::verify::admissible_sigmas;
use amf_core::{canonical_sup, product_interval, AntiChain, Engine, GroundSet, Interval, SplitPolicy, SubsetMask};
use proptest::prelude::*;

const N: u32 = 5;

fn ground() -> GroundSet {
    GroundSet::prefix(N)
}

fn antichain_in(n: u32) -> impl Strategy<Value = AntiChain> {
    let full = (1u64 << n) - 1;
    prop::collection::vec(0..=full, 0..6).prop_map(move |masks| {
        canonical_sup(GroundSet::prefix(N), masks.into_iter().map(SubsetMask::from_bits)).unwrap()
    })
}

fn antichain() -> impl Strategy<Value = AntiChain> {
    antichain_in(N)
}

fn subset() -> impl Strategy<Value = SubsetMask> {
    (0u64..(1 << N)).prop_map(SubsetMask::from_bits)
}

fn down_set(a: &AntiChain) -> HashSet<SubsetMask> {
    a.to_monotone().sets().iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn meet_and_join_are_lattice_operations(a in antichain(), b in antichain(), c in antichain()) {
        let (m, j) = (a.meet(&b).unwrap(), a.join(&b).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(a.meet(&m).unwrap(), m.clone());
        prop_assert_eq!(a.join(&m).unwrap(), a.clone());
        prop_assert_eq!(a.meet(&j).unwrap(), a.clone());
        prop_assert_eq!(c.join(&m).unwrap(),
                        c.join(&a).unwrap().meet(&c.join(&b).unwrap()).unwrap());
        prop_assert_eq!(a.meet(&b.join(&c).unwrap()).unwrap(),
                        m.join(&a.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(a.meet(&b.meet(&c).unwrap()).unwrap(), m.meet(&c).unwrap());
        prop_assert_eq!(a.join(&b.join(&c).unwrap()).unwrap(), j.join(&c).unwrap());
    }

    #[test]
    fn order_agrees_with_down_sets(a in antichain(), b in antichain()) {
        let (da, db) = (down_set(&a), down_set(&b));
        prop_assert_eq!(a.leq(&b).unwrap(), da.is_subset(&db));
        prop_assert_eq!(a.leq(&b).unwrap(), a.meet(&b).unwrap() == a);
        prop_assert_eq!(a.leq(&b).unwrap(), a.join(&b).unwrap() == b);
        let dm = down_set(&a.meet(&b).unwrap());
        prop_assert_eq!(dm, da.intersection(&db).copied().collect::<HashSet<_>>());
        let dj = down_set(&a.join(&b).unwrap());
        prop_assert_eq!(dj, da.union(&db).copied().collect::<HashSet<_>>());
    }

    #[test]
    fn monotone_bijection_round_trips(a in antichain()) {
        let f = a.to_monotone();
        prop_assert_eq!(f.to_antichain(), a.clone());
        prop_assert_eq!(f.len() as u128, a.rank());
    }

    #[test]
    fn projection_is_monotone_and_idempotent(a in antichain(), b in antichain(), s in subset(), t in subset()) {
        let p = a.project(s);
        prop_assert_eq!(p.project(s), p.clone());
        prop_assert!(p.leq(&a).unwrap());
        prop_assert!(p.span().is_subset(s));
        prop_assert_eq!(p.project(t), a.project(s & t));
        if a.leq(&b).unwrap() {
            prop_assert!(p.leq(&b.project(s)).unwrap());
        }
    }

    #[test]
    fn product_algebra(a in antichain(), b in antichain(), c in antichain()) {
        let ab = a.external_product(&b).unwrap();
        prop_assert_eq!(&ab, &b.external_product(&a).unwrap());
        prop_assert_eq!(ab.external_product(&c).unwrap(), a.external_product(&b.external_product(&c).unwrap()).unwrap());
        prop_assert_eq!(a.external_product(&AntiChain::unit(ground())).unwrap(), a.clone());
        prop_assert!(a.external_product(&AntiChain::empty(ground())).unwrap().is_empty());
        prop_assert_eq!(a.external_product(&a).unwrap(), a.clone());
    }

    #[test]
    fn product_separates_disjoint_spans(a in antichain_in(2), b in antichain_in(3)) {
        // Move b onto {3,4,5} so the spans are disjoint.
        let shifted = canonical_sup(ground(), b.sets().iter().map(|s| SubsetMask::from_bits(s.bits() << 2))).unwrap();
        prop_assume!(!a.is_empty() && !shifted.is_empty());
        let i = product_interval(&a, &shifted).unwrap();
        prop_assert!(!i.is_empty());
        prop_assert_eq!(i.upper().project(a.span()), a.clone());
        prop_assert_eq!(i.upper().project(shifted.span()), shifted.clone());
        prop_assert_eq!(i.lower().span(), i.upper().span());
    }

    #[test]
    fn rank_agrees_with_inclusion_exclusion(a in antichain()) {
        prop_assert_eq!(rank_inclusion_exclusion(&a).unwrap(), a.rank() as i128);
    }

    #[test]
    fn distance_is_a_metric(a in antichain(), b in antichain(), c in antichain()) {
        let d = |x: &AntiChain, y: &AntiChain| x.distance(y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        let (da, db) = (down_set(&a), down_set(&b));
        prop_assert_eq!(d(&a, &b), da.symmetric_difference(&db).count() as u128);
    }

    #[test]
    fn immediate_successors_are_covers(a in antichain()) {
        for s in a.immediate_successors() {
            prop_assert!(a.lt(&s).unwrap());
            prop_assert_eq!(s.rank(), a.rank() + 1);
            prop_assert!(s.is_immediate_successor_of(&a).unwrap());
        }
    }

    #[test]
    fn text_round_trips(a in antichain()) {
        let text = a.to_string();
        prop_assert_eq!(AntiChain::parse(&text, ground(), false).unwrap(), a.clone());
        let json = a.to_json();
        prop_assert_eq!(AntiChain::from_json(&json, ground(), false).unwrap(), a.clone());
    }

    #[test]
    fn intersection_is_conjunction(a in antichain(), b in antichain(), c in antichain(), d in antichain(), k in antichain()) {
        let i = Interval::new(a, b).unwrap();
        let j = Interval::new(c, d).unwrap();
        let both = i.intersect(&j).unwrap();
        prop_assert_eq!(both.contains(&k).unwrap(), i.contains(&k).unwrap() && j.contains(&k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn listing_is_exact_and_duplicate_free(a in antichain(), b in antichain()) {
        let lower = a.meet(&b).unwrap();
        let upper = b;
        let mut seen = Vec::new();
        let n = Engine::new().list_interval(&lower, &upper, |k| seen.push(k.clone())).unwrap();
        let distinct: HashSet<_> = seen.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), seen.len());
        prop_assert_eq!(n.clone(), seen.len() as u64);
        for k in &seen {
            prop_assert!(lower.leq(k).unwrap() && k.leq(&upper).unwrap());
        }
        let descent = Engine::new().with_policy(SplitPolicy::Descent).count_interval(&lower, &upper).unwrap();
        prop_assert_eq!(descent, n.clone());
        prop_assert_eq!(Engine::new().count_interval_sparse(&lower, &upper).unwrap(), n);
    }

    #[test]
    fn descent_split_covers_the_span(a in antichain(), b in antichain()) {
        let lower = a.meet(&b).unwrap();
        let upper = b;
        prop_assume!(!lower.is_empty() && lower != upper);
        for policy in [SplitPolicy::Balanced, SplitPolicy::Descent] {
            if let Some((x, y)) = find_descent_split_with(policy, &lower, &upper).unwrap() {
                prop_assert!(x.is_disjoint(y) && !x.is_empty() && !y.is_empty());
                prop_assert_eq!(x | y, upper.span());
                prop_assert!(lower.project(x).distance(&upper.project(x)).unwrap() >= 1);
            } else {
                prop_assert_eq!(upper.len(), 1);
                prop_assert!(upper.is_immediate_successor_of(&lower).unwrap());
            }
        }
    }

    #[test]
    fn decomposition_cells_partition(a in antichain_in(4), b in antichain_in(4), pick in any::<prop::sample::Index>()) {
        let lower = a.meet(&b).unwrap();
        let upper = b;
        prop_assume!(!lower.is_empty());
        let sigmas = admissible_sigmas(&upper);
        let sigma = &sigmas[pick.index(sigmas.len())];
        let engine = Engine::new();
        let mut total = 0u64;
        let mut seen = HashSet::new();
        for cell in decompose_interval(&lower, &upper, sigma).unwrap() {
            for k in engine.collect_interval(cell.lower(), cell.upper()).unwrap() {
                prop_assert!(seen.insert(k));
                total += 1;
            }
        }
        prop_assert_eq!(engine.count_interval(&lower, &upper).unwrap(), total);
    }

    #[test]
    fn orthogonal_cells_project_back(split in 1u32..4) {
        let g = GroundSet::prefix(4);
        let blocks = [SubsetMask::range(1, split), SubsetMask::range(split + 1, 4)];
        let engine = Engine::new();
        for cell in orthogonal_cells(g, g.mask(), &blocks).unwrap() {
            prop_assert!(!cell.is_empty());
            for k in engine.collect_interval(cell.lower(), cell.upper()).unwrap() {
                prop_assert_eq!(k.span(), g.mask());
                for (s, ks) in cell.family().assignment() {
                    prop_assert_eq!(&k.project(*s), ks);
                }
            }
        }
    }
}
