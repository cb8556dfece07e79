//! Oracles and instance generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use diffsets::compression::CompressionDirection;
use diffsets::pointset::{affine_dim, fiber_count, sumset, Direction, Point, PointSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn set(rows: &[&[i64]]) -> PointSet {
    PointSet::from_rows(rows).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Point {
    Point::from((0..d).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

/// A random non-empty subset of `[lo, hi]^d` with at most `max_len` points.
pub fn random_set(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, max_len: usize) -> PointSet {
    let n = rng.gen_range(1..=max_len);
    let pts = (0..n).map(|_| random_point(rng, d, lo, hi)).collect();
    PointSet::from_points_dedup(d, pts).unwrap()
}

/// A random element of `W` with nonnegative entries at most `max`.
pub fn random_w(rng: &mut ChaCha8Rng, d: usize, max: i64) -> CompressionDirection {
    let axis = rng.gen_range(0..d);
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=max)).collect();
    c[axis] = -1;
    CompressionDirection::new(&c).unwrap()
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Affine dimension by Gaussian elimination over `Q`, written independently
/// of the library's fraction-free routine.
pub fn rational_affine_dim(a: &PointSet) -> usize {
    let base = &a.points()[0];
    let mut rows: Vec<Vec<BigRational>> = a.points()[1..]
        .iter()
        .map(|p| (0..a.dim()).map(|i| q(p[i] - base[i])).collect())
        .collect();
    let mut rank = 0;
    for col in 0..a.dim() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `x` and `y` differ by a real multiple of `v`: every 2x2 minor of the
/// matrix with rows `x - y` and `v` vanishes.
pub fn parallel_pair(x: &Point, y: &Point, v: &Direction) -> bool {
    let d = x.dim();
    let w: Vec<i128> = (0..d).map(|i| (x[i] - y[i]) as i128).collect();
    let v: Vec<i128> = v.coords().iter().map(|&c| c as i128).collect();
    (0..d).all(|i| (0..d).all(|j| w[i] * v[j] == w[j] * v[i]))
}

/// Fibers by merging points pairwise along `v`, as sorted groups.
pub fn oracle_fibers(a: &PointSet, v: &Direction) -> BTreeSet<Vec<Point>> {
    let mut groups: Vec<Vec<Point>> = Vec::new();
    for p in a {
        match groups.iter_mut().find(|g| parallel_pair(&g[0], p, v)) {
            Some(g) => g.push(p.clone()),
            None => groups.push(vec![p.clone()]),
        }
    }
    groups.into_iter().collect()
}

/// Compression by walking each point to its base and refilling sections,
/// straight from the definition.
pub fn oracle_compress(a: &PointSet, v: &CompressionDirection) -> PointSet {
    let d = a.dim();
    let vp = v.as_point();
    let in_orthant = |p: &Point| p.coords().iter().all(|&c| c >= 0);
    let mut sections: std::collections::BTreeMap<Point, usize> = Default::default();
    for p in a {
        let mut x = p.clone();
        loop {
            let next = x.checked_add(vp).unwrap();
            if !in_orthant(&next) {
                break;
            }
            x = next;
        }
        *sections.entry(x).or_default() += 1;
    }
    let mut out = Vec::new();
    for (base, n) in sections {
        for m in 0..n as i64 {
            out.push(base.checked_sub(&vp.checked_scale(m).unwrap()).unwrap());
        }
    }
    PointSet::from_points_dedup(d, out).unwrap()
}

/// `(A, B, m)` meeting the hypotheses of the `e_d`-projection reduction:
/// `m {0, e_1, .., e_{d-k}} ⊆ A`, `m {0, e_{d-k+1}, .., e_d} ⊆ B`, `dim B = k`.
pub fn cmp1_instance(rng: &mut ChaCha8Rng, d: usize, max_len: usize) -> (PointSet, PointSet, i64) {
    loop {
        let k = rng.gen_range(1..=d);
        let m = rng.gen_range(1..=2);
        let scaled = |i: usize| Point::unit(d, i).checked_scale(m).unwrap();
        let mut a = vec![Point::zero(d)];
        a.extend((0..d - k).map(scaled));
        let mut b = vec![Point::zero(d)];
        b.extend((d - k..d).map(scaled));
        if a.len() > max_len || b.len() > max_len {
            continue;
        }
        let na = rng.gen_range(a.len()..=max_len);
        while a.len() < na {
            a.push(random_point(rng, d, -1, 3));
        }
        let nb = rng.gen_range(b.len()..=max_len);
        while b.len() < nb {
            let mut c = random_point(rng, d, -1, 3).coords().to_vec();
            c[..d - k].fill(0);
            b.push(Point::from(c));
        }
        let a = PointSet::from_points_dedup(d, a).unwrap();
        let b = PointSet::from_points_dedup(d, b).unwrap();
        if affine_dim(&b).unwrap() == k {
            return (a, b, m);
        }
    }
}

/// `(A, B, v)` meeting the hypotheses of the `e_1`-line reduction:
/// `r_1 >= d > r_2 >= k = dim B`, `|A| >= |B| >= 2`, `dim(A+B) = d`, two
/// points of `B` on one line along `v`. Built in normal position and then
/// moved by a random integral linear map and translations.
pub fn tmb_instance(
    rng: &mut ChaCha8Rng,
    d: usize,
    max_len: usize,
) -> (PointSet, PointSet, Direction) {
    loop {
        let k = rng.gen_range(1..d);
        let mut b = vec![Point::zero(d), Point::unit(d, 0)];
        let nb = rng.gen_range(2..=max_len);
        while b.len() < nb {
            let mut c = vec![0; d];
            for x in c.iter_mut().take(k) {
                *x = rng.gen_range(0..=2);
            }
            b.push(Point::from(c));
        }
        let b = PointSet::from_points_dedup(d, b).unwrap();
        let na = rng.gen_range(b.len().max(d)..=max_len.max(d));
        let mut a = Vec::new();
        while a.len() < na {
            a.push(random_point(rng, d, 0, 2));
        }
        let a = PointSet::from_points_dedup(d, a).unwrap();
        let e1 = Direction::unit(d, 0);
        let (r1, r2) = (fiber_count(&a, &e1).unwrap(), fiber_count(&b, &e1).unwrap());
        let kb = affine_dim(&b).unwrap();
        let ok = a.len() >= b.len()
            && r1 >= d
            && r2 < d
            && kb >= 1
            && r2 >= kb
            && !(kb == 1 && r1 > d)
            && affine_dim(&sumset(&a, &b).unwrap()).unwrap() == d;
        if !ok {
            continue;
        }
        let map = random_unimodular(rng, d);
        let apply = |s: &PointSet, t: &Point| -> PointSet {
            let pts = s
                .iter()
                .map(|p| {
                    let img: Vec<i64> = (0..d)
                        .map(|i| (0..d).map(|j| map[i][j] * p[j]).sum::<i64>() + t[i])
                        .collect();
                    Point::from(img)
                })
                .collect();
            PointSet::new(d, pts).unwrap()
        };
        let ta = random_point(rng, d, -2, 2);
        let tb = random_point(rng, d, -2, 2);
        let v: Vec<i64> = (0..d).map(|i| map[i][0]).collect();
        return (apply(&a, &ta), apply(&b, &tb), Direction::new(&v).unwrap());
    }
}

/// Product of a few random elementary shears and a coordinate permutation.
pub fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..d {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        if i == j {
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for row in m.iter_mut() {
            row[j] += c * row[i];
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    perm.into_iter().map(|i| m[i].clone()).collect()
}
