//! Compressions of finite subsets of the nonnegative orthant `E^d`.
//!
//! For a compression direction `v` (one entry equal to `-1`, the rest
//! nonnegative), every point `a` of `A` lies on exactly one line
//! `{x - m v : m >= 0}` whose base `x` satisfies `x + v` outside `E^d`. The
//! `v`-section of `A` at `x` lists the steps `m` present in `A`; the
//! `v`-compression replaces each section by `{0, 1, ..., len - 1}`.

mod downsets;
mod lattice;
mod pipeline;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::{Point, PointSet};

pub use downsets::down_sets;
pub use lattice::{rationalize_to_lattice, LatticeFallback, LatticeImage, LatticeReduction};
pub use pipeline::{
    normalize_pair_cmp1, normalize_pair_tmb, Cmp1Params, Cmp1Shape, PairReduction, ReductionRoute,
};

/// An element of `W`: exactly one coordinate is `-1`, all others are `>= 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompressionDirection {
    v: Point,
    axis: usize,
}

impl CompressionDirection {
    pub fn new(coords: &[i64]) -> Result<Self> {
        Self::from_point(Point::new(coords))
    }

    pub fn from_point(v: Point) -> Result<Self> {
        let negatives: Vec<usize> = (0..v.dim()).filter(|&i| v[i] < 0).collect();
        match negatives.as_slice() {
            [axis] if v[*axis] == -1 => Ok(CompressionDirection { axis: *axis, v }),
            _ => Err(Error::NotCompressionDirection(v.to_string())),
        }
    }

    /// `-e_{axis+1}`.
    pub fn minus_unit(dim: usize, axis: usize) -> Self {
        let mut v = Point::zero(dim);
        v.coords_mut()[axis] = -1;
        CompressionDirection { v, axis }
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    /// Index of the `-1` entry.
    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn as_point(&self) -> &Point {
        &self.v
    }

    pub fn coords(&self) -> &[i64] {
        self.v.coords()
    }
}

impl fmt::Display for CompressionDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.v, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionEntry {
    pub base: Vec<i64>,
    /// Ascending steps `m >= 0` with `base - m v` in the set.
    pub steps: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionTable {
    pub direction: Vec<i64>,
    pub entries: Vec<SectionEntry>,
}

fn check_operands(a: &PointSet, v: &CompressionDirection) -> Result<()> {
    if a.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    if let Some(p) = a.iter().find(|p| !p.is_nonnegative()) {
        return Err(Error::NegativeCoordinate(p.to_string()));
    }
    Ok(())
}

/// Base point and step of `a`. Walking `x <- x + v` lowers coordinate
/// `axis` by one per step and leaves `E^d` exactly when it would go negative,
/// so the walk from `a` takes `a[axis]` steps.
fn base_and_step(a: &Point, v: &CompressionDirection) -> Result<(Point, u64)> {
    let m = a[v.axis()];
    let base = a.checked_add(&v.as_point().checked_scale(m)?)?;
    Ok((base, m as u64))
}

fn grouped(a: &PointSet, v: &CompressionDirection) -> Result<BTreeMap<Point, Vec<u64>>> {
    check_operands(a, v)?;
    let mut groups: BTreeMap<Point, Vec<u64>> = BTreeMap::new();
    for p in a {
        let (base, m) = base_and_step(p, v)?;
        groups.entry(base).or_default().push(m);
    }
    for steps in groups.values_mut() {
        steps.sort_unstable();
    }
    Ok(groups)
}

/// The `v`-sections of `A`, one entry per base with a nonempty section.
pub fn sections(a: &PointSet, v: &CompressionDirection) -> Result<SectionTable> {
    let entries = grouped(a, v)?
        .into_iter()
        .map(|(base, steps)| SectionEntry {
            base: base.coords().to_vec(),
            steps,
        })
        .collect();
    Ok(SectionTable {
        direction: v.coords().to_vec(),
        entries,
    })
}

/// `C_v(A)`.
pub fn compress(a: &PointSet, v: &CompressionDirection) -> Result<PointSet> {
    let groups = grouped(a, v)?;
    let mut out = Vec::with_capacity(a.len());
    for (base, steps) in groups {
        for m in 0..steps.len() as i64 {
            out.push(base.checked_sub(&v.as_point().checked_scale(m)?)?);
        }
    }
    Ok(PointSet::from_unsorted(a.dim(), out))
}

pub fn is_compressed(a: &PointSet, v: &CompressionDirection) -> Result<bool> {
    Ok(compress(a, v)? == *a)
}

/// Applies the directions left to right.
pub fn compress_seq(a: &PointSet, vs: &[CompressionDirection]) -> Result<PointSet> {
    let mut cur = a.clone();
    for v in vs {
        cur = compress(&cur, v)?;
    }
    Ok(cur)
}

/// One step of a compression trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub direction: Vec<i64>,
    pub before_size: usize,
    pub after_set: Vec<Vec<i64>>,
}

/// Like [`compress_seq`], recording every intermediate set.
pub fn compress_trace(a: &PointSet, vs: &[CompressionDirection]) -> Result<Vec<TraceStep>> {
    let mut cur = a.clone();
    let mut steps = Vec::with_capacity(vs.len());
    for v in vs {
        let before_size = cur.len();
        cur = compress(&cur, v)?;
        steps.push(TraceStep {
            direction: v.coords().to_vec(),
            before_size,
            after_set: cur.iter().map(|p| p.coords().to_vec()).collect(),
        });
    }
    Ok(steps)
}

/// `[-e_1, ..., -e_d]`.
pub fn coordinate_directions(dim: usize) -> Vec<CompressionDirection> {
    (0..dim)
        .map(|i| CompressionDirection::minus_unit(dim, i))
        .collect()
}

/// Compresses along every `-e_i` until nothing moves; the result is a down set.
pub fn down_close(a: &PointSet) -> Result<PointSet> {
    let dirs = coordinate_directions(a.dim());
    let mut cur = a.clone();
    loop {
        let next = compress_seq(&cur, &dirs)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Translates a non-empty set so each coordinate's minimum is 0.
pub fn shift_to_orthant(a: &PointSet) -> Result<PointSet> {
    let lo = a
        .min_corner()
        .ok_or(Error::EmptySet("shift_to_orthant input"))?;
    a.translate(&lo.checked_neg()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointset::is_down_set;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    fn dir(c: &[i64]) -> CompressionDirection {
        CompressionDirection::new(c).unwrap()
    }

    #[test]
    fn membership_of_w() {
        assert!(CompressionDirection::new(&[-1, 0]).is_ok());
        assert!(CompressionDirection::new(&[-1, 2, 0]).is_ok());
        assert!(CompressionDirection::new(&[-2, 1]).is_err());
        assert!(CompressionDirection::new(&[-1, -1]).is_err());
        assert!(CompressionDirection::new(&[0, 1]).is_err());
    }

    #[test]
    fn sections_examples() {
        let t = sections(&set(&[&[0, 0]]), &dir(&[-1, 0])).unwrap();
        assert_eq!(
            t.entries,
            vec![SectionEntry {
                base: vec![0, 0],
                steps: vec![0]
            }]
        );

        let t = sections(&set(&[&[0, 1], &[1, 0], &[1, 1]]), &dir(&[-1, 0])).unwrap();
        assert_eq!(
            t.entries,
            vec![
                SectionEntry {
                    base: vec![0, 0],
                    steps: vec![1]
                },
                SectionEntry {
                    base: vec![0, 1],
                    steps: vec![0, 1]
                },
            ]
        );

        // (2,0) walks (1,1) -> (0,2) before leaving E^2.
        let t = sections(&set(&[&[2, 0]]), &dir(&[-1, 1])).unwrap();
        assert_eq!(
            t.entries,
            vec![SectionEntry {
                base: vec![0, 2],
                steps: vec![2]
            }]
        );
    }

    #[test]
    fn compress_examples() {
        let tri = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(compress(&tri, &dir(&[-1, 0])).unwrap(), tri);
        assert_eq!(
            compress(&set(&[&[0, 1], &[1, 0], &[1, 1]]), &dir(&[-1, 0])).unwrap(),
            set(&[&[0, 0], &[0, 1], &[1, 1]])
        );
        assert_eq!(
            compress(&set(&[&[0, 2]]), &dir(&[0, -1])).unwrap(),
            set(&[&[0, 0]])
        );
    }

    #[test]
    fn is_compressed_examples() {
        let origin = set(&[&[0, 0]]);
        for v in [dir(&[-1, 0]), dir(&[0, -1]), dir(&[-1, 3]), dir(&[2, -1])] {
            assert!(is_compressed(&origin, &v).unwrap());
        }
        assert!(!is_compressed(&set(&[&[0, 0], &[1, 1]]), &dir(&[-1, 0])).unwrap());
    }

    #[test]
    fn compress_seq_examples() {
        let a = set(&[&[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(compress_seq(&a, &[]).unwrap(), a);
        assert_eq!(
            compress_seq(&a, &[dir(&[-1, 0]), dir(&[0, -1])]).unwrap(),
            set(&[&[0, 0], &[1, 0], &[0, 1]])
        );
        let v = dir(&[-1, 1]);
        assert_eq!(
            compress_seq(&a, &[v.clone(), v.clone()]).unwrap(),
            compress(&a, &v).unwrap()
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            compress(&set(&[&[-1, 0]]), &dir(&[-1, 0])),
            Err(Error::NegativeCoordinate(_))
        ));
        assert!(matches!(
            compress(&set(&[&[0, 0, 0]]), &dir(&[-1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn down_close_gives_down_set() {
        let a = set(&[&[3, 1], &[0, 4], &[2, 2], &[5, 0]]);
        let c = down_close(&a).unwrap();
        assert_eq!(c.len(), a.len());
        assert!(is_down_set(&c).unwrap());
    }

    #[test]
    fn trace_records_each_step() {
        let a = set(&[&[0, 1], &[1, 0], &[1, 1]]);
        let steps = compress_trace(&a, &[dir(&[-1, 0]), dir(&[0, -1])]).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1].after_set, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(steps.iter().all(|s| s.before_size == 3));
    }
}
