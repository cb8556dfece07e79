use crate::error::{Error, Result};
use crate::pointset::{Point, PointSet};

/// Least image of `a`, after translating its minimum corner to the origin,
/// under the symmetries of its bounding box: coordinate permutations and
/// per-axis reflections.
pub fn canonical_form(a: &PointSet) -> Result<PointSet> {
    let lo = a
        .min_corner()
        .ok_or(Error::EmptySet("canonical_form operand"))?;
    let hi = a
        .max_corner()
        .ok_or(Error::EmptySet("canonical_form operand"))?;
    let d = a.dim();
    let base: Vec<Vec<i64>> = a
        .iter()
        .map(|p| (0..d).map(|i| p[i] - lo[i]).collect())
        .collect();
    let width: Vec<i64> = (0..d).map(|i| hi[i] - lo[i]).collect();
    let mut best: Option<Vec<Vec<i64>>> = None;
    let mut image = base.clone();
    for perm in permutations(d) {
        for mask in 0u32..(1 << d) {
            for (q, p) in image.iter_mut().zip(&base) {
                for (j, &src) in perm.iter().enumerate() {
                    q[j] = if mask >> j & 1 == 1 {
                        width[src] - p[src]
                    } else {
                        p[src]
                    };
                }
            }
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image.clone());
            }
        }
    }
    let pts = best.unwrap().iter().map(|c| Point::new(c)).collect();
    Ok(PointSet::from_sorted_unchecked(d, pts))
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    heap(d, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, cur, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        if i + 1 < k {
            cur.swap(j, k - 1);
        }
    }
}
