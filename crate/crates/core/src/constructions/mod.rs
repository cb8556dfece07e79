//! Named configurations and seeded random subsets of boxes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pointset::{Point, PointSet};

/// A construction request, as taken by the `construct` subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    SimplexLine {
        d: usize,
        n: usize,
    },
    SimplexLines {
        d: usize,
        sizes: Vec<usize>,
    },
    Box {
        d: usize,
        m: i64,
    },
    RandomSubset {
        d: usize,
        n: usize,
        m: i64,
        seed: u64,
    },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<PointSet> {
        match self {
            ConstructionSpec::SimplexLine { d, n } => simplex_line(*d, *n),
            ConstructionSpec::SimplexLines { d, sizes } => simplex_lines(*d, sizes),
            ConstructionSpec::Box { d, m } => box_set(*d, *m),
            ConstructionSpec::RandomSubset { d, n, m, seed } => random_subset(*d, *n, *m, *seed),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// `A_N = {0, e_1, .., e_{d-1}} + {n e_d : 1 <= n <= N}`.
pub fn simplex_line(d: usize, n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(invalid("N must be at least 1"));
    }
    simplex_lines(d, &vec![n; d.max(1)])
}

/// Fiber `i` sits over `0` (for `i = 0`) or `e_i`, and holds `sizes[i]`
/// consecutive points along `e_d` starting at height 1.
pub fn simplex_lines(d: usize, sizes: &[usize]) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if sizes.len() != d {
        return Err(invalid(format!(
            "expected {d} fiber sizes, got {}",
            sizes.len()
        )));
    }
    if sizes.contains(&0) {
        return Err(invalid("fiber sizes must be at least 1"));
    }
    let mut pts = Vec::with_capacity(sizes.iter().sum());
    for (i, &len) in sizes.iter().enumerate() {
        for h in 1..=len as i64 {
            let mut c = vec![0; d];
            if i > 0 {
                c[i - 1] = 1;
            }
            c[d - 1] = h;
            pts.push(Point::from(c));
        }
    }
    PointSet::new(d, pts)
}

/// `{0, .., m}^d`, in ascending order.
pub fn box_set(d: usize, m: i64) -> Result<PointSet> {
    Ok(PointSet::from_sorted_unchecked(d, box_points(d, m)?))
}

fn box_points(d: usize, m: i64) -> Result<Vec<Point>> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if m < 0 {
        return Err(invalid("box extent must be nonnegative"));
    }
    let side = (m + 1) as u128;
    let total = side
        .checked_pow(d as u32)
        .filter(|&t| t <= 1 << 32)
        .ok_or_else(|| invalid("box has too many points"))?;
    let mut pts = Vec::with_capacity(total as usize);
    let mut cur = vec![0i64; d];
    loop {
        pts.push(Point::new(&cur));
        // Odometer increment, last coordinate fastest, so output is sorted.
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(pts);
            }
            i -= 1;
            if cur[i] < m {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A uniform `n`-subset of `{0, .., m}^d`.
///
/// The generator is ChaCha8 seeded by `seed_from_u64(seed)`. The box points
/// are listed in ascending order and the first `n` steps of a Fisher-Yates
/// shuffle pick the subset, drawing each index as a `u64` so the output is
/// the same on every platform.
pub fn random_subset(d: usize, n: usize, m: i64, seed: u64) -> Result<PointSet> {
    let mut pts = box_points(d, m)?;
    if n > pts.len() {
        return Err(invalid(format!(
            "cannot pick {n} points from a box of {}",
            pts.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = pts.len() as u64;
    for i in 0..n {
        let j = rng.gen_range(i as u64..len) as usize;
        pts.swap(i, j);
    }
    pts.truncate(n);
    Ok(PointSet::from_unsorted(d, pts))
}
