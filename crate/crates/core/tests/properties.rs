mod common;

use std::collections::BTreeSet;

use common::{oracle_compress, oracle_fibers, rational_affine_dim};
use diffsets::bounds::{evaluate_bound, BoundKind, Rational};
use diffsets::compression::{
    compress, compress_seq, down_sets, is_compressed, sections, CompressionDirection,
};
use diffsets::constructions::{random_subset, simplex_line, simplex_lines};
use diffsets::error::Error;
use diffsets::pointset::{
    affine_dim, difference_set, fiber_count, fiber_partition, parse_json, parse_text,
    restricted_difference, sumset, to_json, to_text, Direction, Point, PointSet,
};
use diffsets::search::{canonical_form, evaluate_objective, Objective};
use proptest::prelude::*;

fn arb_set(d: usize, lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(lo..=hi, d), 1..=max_len).prop_map(move |rows| {
        PointSet::from_points_dedup(d, rows.into_iter().map(Point::from).collect()).unwrap()
    })
}

fn arb_dim_set(lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = PointSet> {
    (1usize..=3).prop_flat_map(move |d| arb_set(d, lo, hi, max_len))
}

fn arb_direction(d: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec(-2i64..=2, d)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| Direction::new(&c).unwrap())
}

fn arb_w(d: usize) -> impl Strategy<Value = CompressionDirection> {
    (0..d, prop::collection::vec(0i64..=2, d)).prop_map(|(axis, mut c)| {
        c[axis] = -1;
        CompressionDirection::new(&c).unwrap()
    })
}

fn pair_with_w() -> impl Strategy<Value = (PointSet, PointSet, CompressionDirection)> {
    (2usize..=3).prop_flat_map(|d| (arb_set(d, 0, 3, 9), arb_set(d, 0, 3, 9), arb_w(d)))
}

fn zero() -> Rational {
    Rational::from_integer(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sumset_is_commutative_and_covers_translates(a in arb_set(2, -4, 4, 8), b in arb_set(2, -4, 4, 8)) {
        let s = sumset(&a, &b).unwrap();
        prop_assert_eq!(&s, &sumset(&b, &a).unwrap());
        prop_assert!(s.len() >= a.len() + b.len() - 1);
        prop_assert!(s.len() <= a.len() * b.len());
        for q in &b {
            prop_assert!(a.translate(q).unwrap().is_subset(&s));
        }
    }

    #[test]
    fn difference_set_is_symmetric(a in arb_dim_set(-4, 4, 9)) {
        let dset = difference_set(&a, &a).unwrap();
        prop_assert!(dset.contains(&Point::zero(a.dim())));
        for p in &dset {
            prop_assert!(dset.contains(&p.checked_neg().unwrap()));
        }
        prop_assert_eq!(dset.len() % 2, 1);
    }

    #[test]
    fn restricted_difference_drops_exactly_the_line(a in arb_set(3, -3, 3, 9), v in arb_direction(3)) {
        let full = difference_set(&a, &a).unwrap();
        let r = restricted_difference(&a, &a, &v).unwrap();
        let on_line = full.iter().filter(|w| common::parallel_pair(w, &Point::zero(3), &v)).count();
        prop_assert_eq!(r.len() + on_line, full.len());
        prop_assert!(r.is_subset(&full));
    }

    #[test]
    fn fibers_match_pairwise_oracle(a in arb_set(3, -3, 3, 12), v in arb_direction(3)) {
        let part = fiber_partition(&a, &v).unwrap();
        let groups: BTreeSet<Vec<Point>> = part.fibers.iter().map(|f| f.members.points().to_vec()).collect();
        prop_assert_eq!(&groups, &oracle_fibers(&a, &v));
        prop_assert_eq!(part.sizes().iter().sum::<usize>(), a.len());
        prop_assert_eq!(fiber_count(&a, &v).unwrap(), groups.len());
    }

    #[test]
    fn affine_dim_matches_rational_elimination(a in arb_dim_set(-5, 5, 6)) {
        prop_assert_eq!(affine_dim(&a).unwrap(), rational_affine_dim(&a));
    }

    #[test]
    fn difference_size_is_translation_invariant(a in arb_set(2, -3, 3, 8), t in prop::collection::vec(-9i64..=9, 2)) {
        let moved = a.translate(&Point::from(t)).unwrap();
        prop_assert_eq!(difference_set(&a, &a).unwrap().len(), difference_set(&moved, &moved).unwrap().len());
        prop_assert_eq!(affine_dim(&a).unwrap(), affine_dim(&moved).unwrap());
    }

    #[test]
    fn text_and_json_round_trip(a in arb_dim_set(-50, 50, 10)) {
        prop_assert_eq!(parse_text(&to_text(&a)).unwrap(), a.clone());
        prop_assert_eq!(parse_json(&to_json(&a)).unwrap(), a);
    }

    #[test]
    fn compression_never_grows_sumsets((a, b, v) in pair_with_w()) {
        let (ca, cb) = (compress(&a, &v).unwrap(), compress(&b, &v).unwrap());
        prop_assert!(sumset(&ca, &cb).unwrap().len() <= sumset(&a, &b).unwrap().len());
        prop_assert_eq!(ca.len(), a.len());
        prop_assert!(is_compressed(&ca, &v).unwrap());
        prop_assert_eq!(compress(&ca, &v).unwrap(), ca.clone());
        prop_assert_eq!(ca, oracle_compress(&a, &v));
    }

    #[test]
    fn sections_account_for_every_point((a, _b, v) in pair_with_w()) {
        let table = sections(&a, &v).unwrap();
        let total: usize = table.entries.iter().map(|e| e.steps.len()).sum();
        prop_assert_eq!(total, a.len());
        for e in &table.entries {
            prop_assert_eq!(e.base[v.axis()], 0);
        }
    }

    #[test]
    fn sequences_preserve_cardinality((a, _b, v) in pair_with_w(), w in 0usize..3) {
        let d = a.dim();
        let seq = vec![v.clone(), CompressionDirection::minus_unit(d, w % d), v];
        prop_assert_eq!(compress_seq(&a, &seq).unwrap().len(), a.len());
    }

    #[test]
    fn proven_single_set_bounds_hold(a in arb_set(3, 0, 3, 9), v in arb_direction(3)) {
        for kind in [BoundKind::FreimanSumset, BoundKind::FhuDifference, BoundKind::Stanchescu3d, BoundKind::Diffln, BoundKind::LinesOut5] {
            match evaluate_bound(kind, &a, None, Some(&v)) {
                Ok(r) => prop_assert!(r.slack >= zero(), "{} on {:?}", r, a),
                Err(Error::Hypothesis { .. }) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn proven_pair_bounds_hold(a in arb_set(2, 0, 3, 10), b in arb_set(2, 0, 3, 7), v in arb_direction(2)) {
        for kind in [
            BoundKind::RuzsaAsymmetric, BoundKind::Mn2, BoundKind::Rszgn, BoundKind::Rszgn2,
            BoundKind::GsPlanar, BoundKind::D12, BoundKind::RuzsaTriangle, BoundKind::TrivialSum,
        ] {
            match evaluate_bound(kind, &a, Some(&b), Some(&v)) {
                Ok(r) => prop_assert!(r.slack >= zero(), "{} on {:?} {:?}", r, a, b),
                Err(Error::Hypothesis { .. }) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn slack_sign_matches_holds(a in arb_set(2, 0, 3, 8), b in arb_set(2, 0, 3, 8)) {
        for kind in [BoundKind::Conjecture, BoundKind::RuzsaTriangle, BoundKind::TrivialSum] {
            if let Ok(r) = evaluate_bound(kind, &a, Some(&b), None) {
                prop_assert_eq!(r.holds, r.slack >= zero());
                let diff = Rational::from_integer(r.lhs as i128) - r.rhs;
                prop_assert_eq!(r.slack, if kind.is_upper_bound() { -diff } else { diff });
            }
        }
    }

    #[test]
    fn canonical_form_is_a_class_invariant(a in arb_set(3, 0, 3, 7), perm in Just([0usize, 1, 2]).prop_shuffle(), flips in prop::collection::vec(any::<bool>(), 3)) {
        let c = canonical_form(&a).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        let moved = PointSet::new(3, a.iter().map(|p| {
            let q: Vec<i64> = (0..3).map(|j| if flips[j] { 7 - p[perm[j]] } else { p[perm[j]] }).collect();
            Point::from(q)
        }).collect()).unwrap();
        prop_assert_eq!(canonical_form(&moved).unwrap(), c.clone());
        let dz = |s: &PointSet| evaluate_objective(Objective::DifferenceSize, s, false, None).unwrap().unwrap().value;
        prop_assert_eq!(dz(&c), dz(&a));
    }

    #[test]
    fn random_subsets_are_seeded(d in 1usize..=3, m in 0i64..=3, seed in any::<u64>(), n in 0usize..=8) {
        let size = ((m + 1) as usize).pow(d as u32);
        match random_subset(d, n, m, seed) {
            Ok(a) => {
                prop_assert!(n <= size);
                prop_assert_eq!(a.len(), n);
                prop_assert!(a.iter().all(|p| p.coords().iter().all(|&c| (0..=m).contains(&c))));
                prop_assert_eq!(random_subset(d, n, m, seed).unwrap(), a);
            }
            Err(_) => prop_assert!(n > size),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn down_sets_are_compression_fixed_points(d in 1usize..=3, n in 1usize..=6) {
        for a in down_sets(d, n).unwrap() {
            for i in 0..d {
                prop_assert_eq!(compress(&a, &CompressionDirection::minus_unit(d, i)).unwrap(), a.clone());
            }
            // Box property: the whole box below each point is present.
            for p in &a {
                let below = (0..d).fold(vec![vec![]], |acc: Vec<Vec<i64>>, i| {
                    acc.into_iter().flat_map(|c| (0..=p[i]).map(move |x| { let mut c = c.clone(); c.push(x); c })).collect()
                });
                for c in below {
                    prop_assert!(a.contains(&Point::from(c)));
                }
            }
        }
    }

    #[test]
    fn simplex_line_closed_forms(d in 1usize..=5, n in 1usize..=8) {
        let a = simplex_line(d, n).unwrap();
        let odd = 2 * n - 1;
        prop_assert_eq!(a.len(), d * n);
        prop_assert_eq!(sumset(&a, &a).unwrap().len(), d * (d + 1) / 2 * odd);
        prop_assert_eq!(difference_set(&a, &a).unwrap().len(), (d * d - d + 1) * odd);
        let ed = Direction::unit(d, d - 1);
        prop_assert_eq!(restricted_difference(&a, &a, &ed).unwrap().len(), d * (d - 1) * odd);
    }

    #[test]
    fn simplex_lines_fiber_sizes(sizes in prop::collection::vec(1usize..=5, 1..=4)) {
        let d = sizes.len();
        let a = simplex_lines(d, &sizes).unwrap();
        let mut got = fiber_partition(&a, &Direction::unit(d, d - 1)).unwrap().sizes();
        let mut want = sizes.clone();
        got.sort();
        want.sort();
        if d > 1 {
            prop_assert_eq!(got, want);
        } else {
            prop_assert_eq!(got, vec![sizes[0]]);
        }
    }
}
