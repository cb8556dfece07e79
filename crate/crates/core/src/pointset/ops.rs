use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_direction, integer_rank, same_dim, Direction, Point, PointSet};
use crate::error::{Error, Result};

fn require_nonempty(a: &PointSet, what: &'static str) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet(what));
    }
    Ok(())
}

fn pairwise(
    a: &PointSet,
    b: &PointSet,
    op: impl Fn(&Point, &Point) -> Result<Point>,
) -> Result<PointSet> {
    same_dim(a, b)?;
    require_nonempty(a, "left operand")?;
    require_nonempty(b, "right operand")?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(op(p, q)?);
        }
    }
    Ok(PointSet::from_unsorted(a.dim(), out))
}

/// `A + B = {a + b}`.
pub fn sumset(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    pairwise(a, b, Point::checked_add)
}

/// `A - B = {a - b}`.
pub fn difference_set(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    pairwise(a, b, Point::checked_sub)
}

/// `(A - B) \ L_v`, where `L_v` is the line through the origin spanned by `v`.
pub fn restricted_difference(a: &PointSet, b: &PointSet, v: &Direction) -> Result<PointSet> {
    check_direction(a, v)?;
    let diff = difference_set(a, b)?;
    let mut kept = Vec::with_capacity(diff.len());
    for p in diff.into_points() {
        if !fiber_key(&p, v)?.is_zero() {
            kept.push(p);
        }
    }
    Ok(PointSet::from_sorted_unchecked(a.dim(), kept))
}

/// `key(a) = a (v.v) - (a.v) v`.
///
/// This is `(v.v)` times the orthogonal projection of `a` onto `H_v`, so it is
/// an integer vector with `key(a) = key(b)` exactly when `a - b` is parallel to
/// `v`, and `key(x) = 0` exactly when `x` lies on `L_v`.
pub fn fiber_key(a: &Point, v: &Direction) -> Result<Point> {
    let v = v.as_point();
    let vv = v.checked_dot(v)?;
    let av = a.checked_dot(v)?;
    a.checked_scale(vv)?.checked_sub(&v.checked_scale(av)?)
}

/// True iff `x` is a real multiple of `v` (including `x = 0`).
pub fn is_parallel(x: &Point, v: &Direction) -> Result<bool> {
    Ok(fiber_key(x, v)?.is_zero())
}

/// The partition of a set into its intersections with translates of `L_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberPartition {
    pub direction: Vec<i64>,
    pub fibers: Vec<Fiber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub key: Vec<i64>,
    pub members: PointSet,
}

impl FiberPartition {
    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    /// Fiber sizes, in fiber-key order.
    pub fn sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.members.len()).collect()
    }
}

pub fn fiber_partition(a: &PointSet, v: &Direction) -> Result<FiberPartition> {
    check_direction(a, v)?;
    require_nonempty(a, "fiber_partition input")?;
    let mut groups: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for p in a {
        groups.entry(fiber_key(p, v)?).or_default().push(p.clone());
    }
    let fibers = groups
        .into_iter()
        .map(|(key, members)| Fiber {
            key: key.coords().to_vec(),
            // Members arrive in sorted order because `a` is sorted.
            members: PointSet::from_sorted_unchecked(a.dim(), members),
        })
        .collect();
    Ok(FiberPartition {
        direction: v.coords().to_vec(),
        fibers,
    })
}

/// `|pi_v(A)|`: the number of translates of `L_v` meeting `A`.
pub fn fiber_count(a: &PointSet, v: &Direction) -> Result<usize> {
    check_direction(a, v)?;
    let mut keys = a
        .iter()
        .map(|p| fiber_key(p, v))
        .collect::<Result<Vec<_>>>()?;
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.len())
}

/// Dimension of the affine span of a non-empty set.
pub fn affine_dim(a: &PointSet) -> Result<usize> {
    require_nonempty(a, "affine_dim input")?;
    let base = &a.points()[0];
    let rows = a.points()[1..]
        .iter()
        .map(|p| p.checked_sub(base).map(|d| d.coords().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    integer_rank(&rows)
}

/// Heuristic cover of `A` by parallel lines: among the primitive directions of
/// pairwise differences, the one with the fewest fibers (lexicographically
/// least on ties).
pub fn min_line_cover(a: &PointSet) -> Result<(Direction, usize)> {
    if a.len() < 2 {
        return Err(Error::hypothesis("min_line_cover", "|A| >= 2"));
    }
    let mut best: Option<(usize, Direction)> = None;
    for v in difference_directions(a)? {
        let r = fiber_count(a, &v)?;
        // Directions arrive sorted, so strict improvement keeps the least one.
        if best.as_ref().is_none_or(|(br, _)| r < *br) {
            best = Some((r, v));
        }
    }
    let (r, v) = best.expect("two distinct points give a direction");
    Ok((v, r))
}

/// All primitive directions `a - b` for distinct `a, b` in `A`, sorted.
pub(crate) fn difference_directions(a: &PointSet) -> Result<Vec<Direction>> {
    let mut dirs = Vec::new();
    let pts = a.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            dirs.push(Direction::from_point(&q.checked_sub(p)?)?);
        }
    }
    dirs.sort_unstable();
    dirs.dedup();
    Ok(dirs)
}

/// True iff `A` is a down set: closed under decrementing any positive coordinate.
pub fn is_down_set(a: &PointSet) -> Result<bool> {
    if let Some(p) = a.iter().find(|p| !p.is_nonnegative()) {
        return Err(Error::NegativeCoordinate(p.to_string()));
    }
    for p in a {
        for i in 0..a.dim() {
            if p[i] > 0 {
                let mut q = p.clone();
                q.coords_mut()[i] -= 1;
                if !a.contains(&q) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
