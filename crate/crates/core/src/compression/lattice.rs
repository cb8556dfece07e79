use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pointset::{
    fiber_count, rational_rank, sumset, Direction, Point, PointSet, RationalPointSet,
};

type Q = BigRational;

const CONTEXT: &str = "rationalize_to_lattice";

/// Outcome of moving a rational pair onto the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeReduction {
    /// Every fiber of `B` is a single point, so the weaker bound
    /// `|A| + (d+1)|B| - (d-1)(r_1 + r_2)` is the conclusion instead.
    Fallback(LatticeFallback),
    Image(LatticeImage),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFallback {
    pub sumset_size: usize,
    pub bound: i128,
    pub holds: bool,
    pub r_1: usize,
    pub r_2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeImage {
    pub a: PointSet,
    pub b: PointSet,
    /// The `m` of the containments `m {0, e_1, .., e_{d-k}} ⊆ A_1` and
    /// `m {0, e_{d-k+1}, .., e_d} ⊆ B_1`.
    pub scale: i64,
    pub k: usize,
    pub r_1: usize,
    pub r_2: usize,
    /// Rows of the linear map; `A_1 = transform (A - shift_a)`, likewise for `B`.
    pub transform: Vec<Vec<Q>>,
    pub shift_a: Vec<Q>,
    pub shift_b: Vec<Q>,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn rational_key(x: &[Q], v: &[Q]) -> Vec<Q> {
    let vv: Q = v.iter().map(|c| c * c).sum();
    let xv: Q = x.iter().zip(v).map(|(a, b)| a * b).sum();
    x.iter().zip(v).map(|(a, b)| a * &vv - &xv * b).collect()
}

/// Fibers along `v`, each as ascending indices into `pts`.
fn rational_fibers(pts: &[Vec<Q>], v: &[Q]) -> BTreeMap<Vec<Q>, Vec<usize>> {
    let mut out: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for (i, p) in pts.iter().enumerate() {
        out.entry(rational_key(p, v)).or_default().push(i);
    }
    out
}

/// Positive multiples of unit vectors first (by axis, then length), then
/// everything else in the given order.
fn preferred_order(pts: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut keyed: Vec<(usize, usize, Q, usize)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let nonzero: Vec<usize> = (0..p.len()).filter(|&j| !p[j].is_zero()).collect();
            match nonzero.as_slice() {
                [axis] if p[*axis].is_positive() => (0, *axis, p[*axis].clone(), i),
                _ => (1, 0, Q::zero(), i),
            }
        })
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(.., i)| pts[i].clone()).collect()
}

/// Greedily appends candidates that raise the rank until `target` is reached.
pub(super) fn extend_basis(basis: &mut Vec<Vec<Q>>, candidates: &[Vec<Q>], target: usize) {
    for c in candidates {
        if basis.len() >= target {
            break;
        }
        basis.push(c.clone());
        if rational_rank(basis.clone()) < basis.len() {
            basis.pop();
        }
    }
}

/// Inverse of the square matrix whose columns are `cols`, by Gauss-Jordan.
fn inverse_of_columns(cols: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = cols.len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r].clone()).collect();
            row.extend((0..n).map(|j| if j == r { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// An integral linear map sending `cols[i]` to `m e_i`, with `m` the least
/// positive integer making every image of `pts` integral.
pub(super) struct IntegralMap {
    pub scale: i64,
    pub transform: Vec<Vec<Q>>,
    pub images: Vec<Point>,
}

pub(super) fn integral_map(cols: &[Vec<Q>], pts: &[Vec<Q>]) -> Result<IntegralMap> {
    let inv = inverse_of_columns(cols).ok_or_else(|| Error::Postcondition {
        pipeline: "lattice map",
        postcondition: "chosen basis is invertible".into(),
    })?;
    let apply = |x: &[Q]| -> Vec<Q> {
        inv.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };
    let coords: Vec<Vec<Q>> = pts.iter().map(|p| apply(p)).collect();
    let mut m = BigInt::one();
    for c in coords.iter().flatten() {
        m = m.lcm(c.denom());
    }
    let mq = Q::from_integer(m.clone());
    let images = coords
        .iter()
        .map(|c| {
            c.iter()
                .map(|x| (x * &mq).to_integer().to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<i64>>>()
                .map(Point::from)
        })
        .collect::<Result<Vec<_>>>()?;
    let transform = inv
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * &mq).collect())
        .collect();
    Ok(IntegralMap {
        scale: m.to_i64().ok_or(Error::Overflow)?,
        transform,
        images,
    })
}

/// Moves a rational pair onto `Z^d` by an injective linear map that keeps
/// cardinalities, the sumset size and the fiber counts (now along `e_d`).
pub fn rationalize_to_lattice(
    a: &RationalPointSet,
    b: &RationalPointSet,
    v: &Direction,
) -> Result<LatticeReduction> {
    let d = a.dim();
    for found in [b.dim(), v.dim()] {
        if found != d {
            return Err(Error::DimensionMismatch { expected: d, found });
        }
    }
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    if d < 2 {
        return Err(Error::hypothesis(CONTEXT, "d >= 2"));
    }
    let vq: Vec<Q> = v.coords().iter().map(|&c| q(c)).collect();
    let fibers_a = rational_fibers(a.points(), &vq);
    let fibers_b = rational_fibers(b.points(), &vq);
    let (r_1, r_2) = (fibers_a.len(), fibers_b.len());
    if r_1 < d {
        return Err(Error::hypothesis(CONTEXT, "r_1 >= d"));
    }
    if a.len() < b.len() {
        return Err(Error::hypothesis(CONTEXT, "|A| >= |B|"));
    }
    let a0 = &a.points()[0];
    let ta: Vec<Vec<Q>> = a.points().iter().map(|p| sub(p, a0)).collect();
    let mut span = ta.clone();
    span.extend(b.points().iter().map(|p| sub(p, &b.points()[0])));
    if rational_rank(span) < d {
        return Err(Error::hypothesis(CONTEXT, "dim(A + B) = d"));
    }
    if b.len() == 1 {
        return Err(Error::hypothesis(CONTEXT, "|B| >= 2"));
    }
    if r_2 == b.len() {
        let sumset_size = a.sumset_len(b);
        let bound = a.len() as i128 + (d as i128 + 1) * b.len() as i128
            - (d as i128 - 1) * (r_1 + r_2) as i128;
        return Ok(LatticeReduction::Fallback(LatticeFallback {
            sumset_size,
            bound,
            holds: sumset_size as i128 >= bound,
            r_1,
            r_2,
        }));
    }

    let (i0, i1) = fibers_b
        .values()
        .filter(|f| f.len() >= 2)
        .map(|f| (f[0], f[1]))
        .min()
        .expect("r_2 < |B| forces a fiber with two points");
    let b0 = &b.points()[i0];
    let u = sub(&b.points()[i1], b0);
    let tb: Vec<Vec<Q>> = b.points().iter().map(|p| sub(p, b0)).collect();
    let k = rational_rank(tb.clone());

    let mut basis = vec![u.clone()];
    extend_basis(&mut basis, &preferred_order(&tb), k);
    let from_b = basis.len();
    extend_basis(&mut basis, &preferred_order(&ta), d);
    let mut cols: Vec<Vec<Q>> = basis[from_b..].to_vec();
    cols.extend(basis[1..from_b].iter().cloned());
    cols.push(u);

    let mut pts = ta;
    pts.extend(tb);
    let map = integral_map(&cols, &pts)?;
    let (ia, ib) = map.images.split_at(a.len());
    let a1 = PointSet::new(d, ia.to_vec())?;
    let b1 = PointSet::new(d, ib.to_vec())?;
    let out = LatticeImage {
        a: a1,
        b: b1,
        scale: map.scale,
        k,
        r_1,
        r_2,
        transform: map.transform,
        shift_a: a0.clone(),
        shift_b: b0.clone(),
    };
    check_image(a, b, &out)?;
    Ok(LatticeReduction::Image(out))
}

fn check_image(a: &RationalPointSet, b: &RationalPointSet, img: &LatticeImage) -> Result<()> {
    let fail = |what: &str| Error::Postcondition {
        pipeline: CONTEXT,
        postcondition: what.into(),
    };
    let d = a.dim();
    if img.a.len() != a.len() || img.b.len() != b.len() {
        return Err(fail("|A_1| = |A| and |B_1| = |B|"));
    }
    if sumset(&img.a, &img.b)?.len() != a.sumset_len(b) {
        return Err(fail("|A_1 + B_1| = |A + B|"));
    }
    let ed = Direction::unit(d, d - 1);
    if fiber_count(&img.a, &ed)? != img.r_1 || fiber_count(&img.b, &ed)? != img.r_2 {
        return Err(fail("fiber counts along e_d are r_1 and r_2"));
    }
    let m = img.scale;
    let scaled = |axis: usize| Point::unit(d, axis).checked_scale(m);
    let origin = Point::zero(d);
    let in_a = (0..d - img.k).map(scaled).collect::<Result<Vec<_>>>()?;
    let in_b = (d - img.k..d).map(scaled).collect::<Result<Vec<_>>>()?;
    if !img.a.contains(&origin) || in_a.iter().any(|p| !img.a.contains(p)) {
        return Err(fail("m {0, e_1, .., e_(d-k)} ⊆ A_1"));
    }
    if !img.b.contains(&origin) || in_b.iter().any(|p| !img.b.contains(p)) {
        return Err(fail("m {0, e_(d-k+1), .., e_d} ⊆ B_1"));
    }
    Ok(())
}
