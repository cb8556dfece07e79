use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pointset::{Point, PointSet};

/// Every down set in `E^dim` with exactly `size` points, in ascending order.
///
/// Grown one corner at a time from `{0}`; a point may be added once all its
/// immediate predecessors are present.
pub fn down_sets(dim: usize, size: usize) -> Result<Vec<PointSet>> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if size == 0 {
        return Ok(vec![PointSet::empty(dim)?]);
    }
    let mut level: BTreeSet<Vec<Point>> = BTreeSet::new();
    level.insert(vec![Point::zero(dim)]);
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for pts in &level {
            for corner in addable(dim, pts) {
                let mut grown = pts.clone();
                let at = grown.binary_search(&corner).unwrap_err();
                grown.insert(at, corner);
                next.insert(grown);
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|pts| PointSet::from_sorted_unchecked(dim, pts))
        .collect())
}

fn addable(dim: usize, pts: &[Point]) -> Vec<Point> {
    let mut out = BTreeSet::new();
    for p in pts {
        for i in 0..dim {
            let mut q = p.clone();
            q.coords_mut()[i] += 1;
            if pts.binary_search(&q).is_ok() {
                continue;
            }
            let supported = (0..dim).all(|j| {
                if q[j] == 0 {
                    return true;
                }
                let mut r = q.clone();
                r.coords_mut()[j] -= 1;
                pts.binary_search(&r).is_ok()
            });
            if supported {
                out.insert(q);
            }
        }
    }
    out.into_iter().collect()
}
