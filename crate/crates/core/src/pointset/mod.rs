//! Finite point sets in `Z^d` and the exact operations on them.
//!
//! Every set-valued result is sorted lexicographically and duplicate-free, so
//! two equal sets always have identical representations. All coordinate
//! arithmetic is checked; overflow surfaces as [`Error::Overflow`].

mod format;
mod linalg;
mod ops;
mod rational;

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use format::{parse_auto, parse_json, parse_text, to_csv, to_json, to_text, PointSetJson};
pub use linalg::integer_rank;
pub(crate) use ops::difference_directions;
pub use ops::{
    affine_dim, difference_set, fiber_count, fiber_key, fiber_partition, is_down_set, is_parallel,
    min_line_cover, restricted_difference, sumset, Fiber, FiberPartition,
};
pub(crate) use rational::rational_rank;
pub use rational::{parse_rational_text, RationalPointSet};

type Coords = SmallVec<[i64; 4]>;

/// A point of `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Coords);

impl Point {
    pub fn new(coords: &[i64]) -> Self {
        Point(Coords::from_slice(coords))
    }

    pub fn zero(dim: usize) -> Self {
        Point(smallvec::smallvec![0; dim])
    }

    /// The standard basis vector `e_{axis+1}` (axes are 0-based).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Self::zero(dim);
        p.0[axis] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Coords>>()
            .map(Point)
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Coords>>()
            .map(Point)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Point> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Coords>>()
            .map(Point)
    }

    pub fn checked_neg(&self) -> Result<Point> {
        self.checked_scale(-1)
    }

    pub fn checked_dot(&self, other: &Point) -> Result<i64> {
        self.0.iter().zip(&other.0).try_fold(0i64, |acc, (a, b)| {
            a.checked_mul(*b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)
        })
    }

    /// Squared Euclidean norm, widened so it cannot overflow for `i64` input.
    pub fn norm_sq(&self) -> i128 {
        self.0.iter().map(|&c| (c as i128) * (c as i128)).sum()
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl std::ops::Index<usize> for Point {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(Coords::from_vec(v))
    }
}

/// A finite, duplicate-free, lexicographically sorted subset of `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointSetJson", into = "PointSetJson")]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set from points that must be pairwise distinct.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        check_dims(dim, &points)?;
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        Ok(PointSet { dim, points })
    }

    /// Builds a set, silently merging repeated points.
    pub fn from_points_dedup(dim: usize, points: Vec<Point>) -> Result<Self> {
        check_dims(dim, &points)?;
        Ok(Self::from_unsorted(dim, points))
    }

    /// Convenience constructor from coordinate rows; the dimension is taken
    /// from the first row.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or(Error::EmptySet("from_rows needs a row"))?;
        let dim = first.as_ref().len();
        Self::new(dim, rows.iter().map(|r| Point::new(r.as_ref())).collect())
    }

    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(PointSet {
            dim,
            points: Vec::new(),
        })
    }

    pub(crate) fn from_unsorted(dim: usize, mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet { dim, points }
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.points.iter().all(|p| other.contains(p))
    }

    pub fn translate(&self, t: &Point) -> Result<PointSet> {
        if t.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.dim(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| p.checked_add(t))
            .collect::<Result<Vec<_>>>()?;
        // Translation preserves lexicographic order.
        Ok(PointSet::from_sorted_unchecked(self.dim, points))
    }

    /// Coordinatewise minimum over the set.
    pub fn min_corner(&self) -> Option<Point> {
        let first = self.points.first()?;
        let mut lo = first.clone();
        for p in &self.points[1..] {
            for (l, &c) in lo.coords_mut().iter_mut().zip(p.coords()) {
                *l = (*l).min(c);
            }
        }
        Some(lo)
    }

    /// Coordinatewise maximum over the set.
    pub fn max_corner(&self) -> Option<Point> {
        let first = self.points.first()?;
        let mut hi = first.clone();
        for p in &self.points[1..] {
            for (h, &c) in hi.coords_mut().iter_mut().zip(p.coords()) {
                *h = (*h).max(c);
            }
        }
        Some(hi)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        same_dim(self, other)?;
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Ok(PointSet::from_unsorted(self.dim, pts))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(d={}) ", self.dim)?;
        f.debug_set().entries(self.points.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A nonzero integer vector in primitive form: the gcd of its entries is 1
/// and its first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Direction(Point);

impl Direction {
    pub fn new(coords: &[i64]) -> Result<Self> {
        Self::from_point(&Point::new(coords))
    }

    pub fn from_point(p: &Point) -> Result<Self> {
        if p.dim() == 0 {
            return Err(Error::ZeroDimension);
        }
        let g = p
            .coords()
            .iter()
            .fold(0u64, |g, &c| num_integer::gcd(g, c.unsigned_abs()));
        if g == 0 {
            return Err(Error::ZeroDirection);
        }
        let lead = p.coords().iter().find(|&&c| c != 0).copied().unwrap_or(0);
        let sign: i128 = if lead < 0 { -1 } else { 1 };
        let coords = p
            .coords()
            .iter()
            .map(|&c| {
                let v = sign * (c as i128) / (g as i128);
                i64::try_from(v).map_err(|_| Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Direction(Point::from(coords)))
    }

    /// `e_{axis+1}`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        Direction(Point::unit(dim, axis))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn as_point(&self) -> &Point {
        &self.0
    }

    pub fn coords(&self) -> &[i64] {
        self.0.coords()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn check_dims(dim: usize, points: &[Point]) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    match points.iter().find(|p| p.dim() != dim) {
        Some(p) => Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn same_dim(a: &PointSet, b: &PointSet) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

pub(crate) fn check_direction(a: &PointSet, v: &Direction) -> Result<()> {
    if v.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}
