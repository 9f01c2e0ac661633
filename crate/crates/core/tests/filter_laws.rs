use fixedbitset::FixedBitSet;
use liftlab::filter_calculus::{Filter, FiniteTopSpace};
use proptest::prelude::*;

fn bits(ground: usize, mask: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(ground);
    for p in 0..ground {
        if mask >> p & 1 == 1 {
            s.insert(p);
        }
    }
    s
}

/// Every topology on `0..n`, by brute force over families of subsets.
fn all_topologies(n: usize) -> Vec<FiniteTopSpace> {
    let subsets = 1u64 << n;
    (0u64..1 << subsets)
        .filter_map(|family| {
            let opens: Vec<u64> = (0..subsets).filter(|s| family >> s & 1 == 1).collect();
            FiniteTopSpace::new(n, &opens).ok()
        })
        .collect()
}

/// The Alexandrov topology of a preorder: its opens are the up-sets.
fn preorder_topology(n: usize, below: &[Vec<bool>]) -> FiniteTopSpace {
    let mut le = below.to_vec();
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let opens: Vec<u64> = (0u64..1 << n)
        .filter(|&s| {
            (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !le[i][j] || s >> j & 1 == 1))
        })
        .collect();
    FiniteTopSpace::new(n, &opens).unwrap()
}

fn preorder_space(max: usize) -> impl Strategy<Value = FiniteTopSpace> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.25), n), n)
            .prop_map(move |rel| preorder_topology(n, &rel))
    })
}

#[test]
fn kernel_membership_matches_upward_closure() {
    for ground in 1..=3usize {
        let subsets = 1u64 << ground;
        for family in 1u64..1 << subsets {
            let base: Vec<u64> = (0..subsets).filter(|s| family >> s & 1 == 1).collect();
            // literal closure: finite intersections, then all supersets
            let mut closed = base.clone();
            loop {
                let mut grown = closed.clone();
                for &a in &closed {
                    for &b in &closed {
                        if !grown.contains(&(a & b)) {
                            grown.push(a & b);
                        }
                    }
                }
                if grown.len() == closed.len() {
                    break;
                }
                closed = grown;
            }
            let member = |s: u64| closed.iter().any(|&c| c & !s == 0);
            let sets: Vec<FixedBitSet> = base.iter().map(|&b| bits(ground, b)).collect();
            match Filter::from_base(ground, &sets) {
                Ok(filter) => {
                    for s in 0..subsets {
                        assert_eq!(filter.contains(&bits(ground, s)), member(s));
                    }
                }
                Err(_) => assert!(member(0), "only bases reaching ∅ are improper"),
            }
        }
    }
}

#[test]
fn hausdorff_topologies_are_discrete() {
    for n in 1..=3 {
        for space in all_topologies(n) {
            assert_eq!(space.is_hausdorff(), space.is_discrete());
        }
    }
}

#[test]
fn topology_counts_on_three_points() {
    // 1, 4 and 29 topologies on 1, 2 and 3 labelled points
    let counts: Vec<usize> = (1..=3).map(|n| all_topologies(n).len()).collect();
    assert_eq!(counts, vec![1, 4, 29]);
}

#[test]
fn continuity_is_preservation_of_limits() {
    for n in 1..=3usize {
        let spaces = all_topologies(n);
        let maps: Vec<Vec<usize>> = (0..n.pow(n as u32))
            .map(|mut c| {
                (0..n)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect()
            })
            .collect();
        for source in &spaces {
            for target in &spaces {
                for f in &maps {
                    // f preserves limits of the identity net along every
                    // neighbourhood filter
                    let preserves = (0..n).all(|y| {
                        let nbhd = source.neighbourhood_filter(y);
                        nbhd.limits_in(f, target).contains(&f[y])
                    });
                    assert_eq!(preserves, source.is_continuous(f, target));
                }
            }
        }
    }
}

#[test]
fn finer_filters_have_more_limits() {
    for n in 1..=3usize {
        for space in all_topologies(n) {
            let identity: Vec<usize> = (0..n).collect();
            let filters: Vec<Filter> = (1u64..1 << n)
                .map(|k| Filter::with_kernel(n, bits(n, k)).unwrap())
                .collect();
            for coarse in &filters {
                for fine in &filters {
                    if coarse.is_coarser_than(fine) {
                        let lc = coarse.limits_in(&identity, &space);
                        let lf = fine.limits_in(&identity, &space);
                        assert!(lc.iter().all(|y| lf.contains(y)));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn continuous_maps_carry_limits(
        source in preorder_space(6),
        target in preorder_space(6),
        seed in any::<u64>(),
        kernel in 1u64..64,
    ) {
        let n = source.points();
        let m = target.points();
        let g: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i)) as usize) % n).collect();
        let f: Vec<usize> = (0..n).map(|i| ((seed >> (4 * i + 24)) as usize) % m).collect();
        prop_assume!(source.is_continuous(&f, &target));
        let mask = kernel & ((1 << n) - 1);
        prop_assume!(mask != 0);
        let filter = Filter::with_kernel(n, bits(n, mask)).unwrap();
        let fg: Vec<usize> = g.iter().map(|&p| f[p]).collect();
        for y in filter.limits_in(&g, &source) {
            prop_assert!(filter.limits_in(&fg, &target).contains(&f[y]));
        }
    }

    #[test]
    fn direct_image_is_functorial(
        ground in 1usize..=6,
        mid in 1usize..=6,
        top in 1usize..=6,
        kernel in 1u64..64,
        seed in any::<u64>(),
    ) {
        let mask = kernel & ((1 << ground) - 1);
        prop_assume!(mask != 0);
        let f: Vec<usize> = (0..ground).map(|i| ((seed >> (4 * i)) as usize) % mid).collect();
        let g: Vec<usize> = (0..mid).map(|i| ((seed >> (4 * i + 32)) as usize) % top).collect();
        let gf: Vec<usize> = f.iter().map(|&p| g[p]).collect();
        let filter = Filter::with_kernel(ground, bits(ground, mask)).unwrap();
        let stepwise = filter.direct_image(&f, mid).unwrap().direct_image(&g, top).unwrap();
        prop_assert_eq!(stepwise, filter.direct_image(&gf, top).unwrap());
    }

    #[test]
    fn refinement_is_an_ultrafilter_above(ground in 1usize..=8, kernel in 1u64..256) {
        let mask = kernel & ((1 << ground) - 1);
        prop_assume!(mask != 0);
        let filter = Filter::with_kernel(ground, bits(ground, mask)).unwrap();
        let ultra = filter.ultrafilter_refine();
        prop_assert!(ultra.is_ultrafilter());
        prop_assert!(filter.is_coarser_than(&ultra));
    }
}
