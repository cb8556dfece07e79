//! Reductions of a pair `(A, B)` to down sets of a prescribed shape.
//!
//! Both pipelines first try the compression route. If that route stops making
//! progress before the target shape is reached, they search the down sets of
//! the right sizes directly for a pair meeting the same contract. Either way
//! the result is checked against the full contract before it is returned.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::lattice::{extend_basis, integral_map};
use super::{compress, down_sets, shift_to_orthant, CompressionDirection};
use crate::error::{Error, Result};
use crate::pointset::{
    affine_dim, fiber_count, fiber_partition, is_down_set, same_dim, sumset, Direction, Point,
    PointSet,
};

/// Rounds of the compression route before giving up on it.
const MAX_ROUNDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionRoute {
    Compression,
    Fallback,
}

/// Which alternative the `e_d`-projections `U'`, `V'` of the output satisfy.
/// `H` is the hyperplane `x_{d-1} = 0` inside `Z^{d-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cmp1Shape {
    /// `U' ⊆ H` and `V' \ H = {e_{d-1}}`.
    UFlat,
    /// `V' ⊆ H` and `U' \ H = {e_{d-1}}`.
    VFlat,
    /// `U' \ H = {e_{d-1}}` and `U' = V'`.
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cmp1Params {
    /// `m` in `m {0, e_1, .., e_{d-k}} ⊆ A` and `m {0, e_{d-k+1}, .., e_d} ⊆ B`.
    pub scale: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReduction {
    pub a: PointSet,
    pub b: PointSet,
    pub route: ReductionRoute,
    /// Compressions that moved at least one point, in order of application.
    pub directions: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<Cmp1Shape>,
}

struct Pair {
    a: PointSet,
    b: PointSet,
    log: Vec<Vec<i64>>,
}

impl Pair {
    fn apply(&mut self, v: &CompressionDirection) -> Result<()> {
        let a = compress(&self.a, v)?;
        let b = compress(&self.b, v)?;
        if a != self.a || b != self.b {
            self.log.push(v.coords().to_vec());
            self.a = a;
            self.b = b;
        }
        Ok(())
    }

    /// Compresses along `-e_first`, then the other `-e_i` in index order,
    /// until both sets are down sets. Starting every pass with `-e_first`
    /// keeps the fiber counts along `e_first`.
    fn close(&mut self, first: usize) -> Result<()> {
        let d = self.a.dim();
        let mut order = vec![first];
        order.extend((0..d).filter(|&i| i != first));
        loop {
            let before = self.log.len();
            for &i in &order {
                self.apply(&CompressionDirection::minus_unit(d, i))?;
            }
            if self.log.len() == before {
                return Ok(());
            }
        }
    }

    fn state(&self) -> (PointSet, PointSet) {
        (self.a.clone(), self.b.clone())
    }
}

fn fail(pipeline: &'static str, what: impl Into<String>) -> Error {
    Error::Postcondition {
        pipeline,
        postcondition: what.into(),
    }
}

/// Lexicographically least point of maximal squared norm.
fn argmax_norm<'a>(pts: impl Iterator<Item = &'a Point>) -> Option<&'a Point> {
    pts.fold(None, |best: Option<&Point>, p| match best {
        Some(q) if q.norm_sq() >= p.norm_sq() => Some(q),
        _ => Some(p),
    })
}

/// `π_d` of a set, as points of `Z^{d-1}`.
fn drop_last(a: &PointSet) -> BTreeSet<Point> {
    let d = a.dim();
    a.iter().map(|p| Point::new(&p.coords()[..d - 1])).collect()
}

fn unit(dim: usize, axis: usize) -> Point {
    Point::unit(dim, axis)
}

// ---------------------------------------------------------------------------
// Pairs of down sets with a prescribed e_d-projection shape.

struct Cmp1Target {
    d: usize,
    size_a: usize,
    size_b: usize,
    r_1: usize,
    r_2: usize,
    sumset: usize,
}

fn cmp1_shape(u: &BTreeSet<Point>, v: &BTreeSet<Point>) -> Option<Cmp1Shape> {
    let h = u.iter().next()?.dim() - 1;
    let e = unit(h + 1, h);
    let outside =
        |s: &BTreeSet<Point>| -> Vec<Point> { s.iter().filter(|p| p[h] != 0).cloned().collect() };
    let (ou, ov) = (outside(u), outside(v));
    let just_e = |o: &[Point]| o.len() == 1 && o[0] == e;
    if ou.is_empty() && just_e(&ov) {
        Some(Cmp1Shape::UFlat)
    } else if ov.is_empty() && just_e(&ou) {
        Some(Cmp1Shape::VFlat)
    } else if just_e(&ou) && u == v {
        Some(Cmp1Shape::Equal)
    } else {
        None
    }
}

fn check_cmp1(t: &Cmp1Target, a: &PointSet, b: &PointSet) -> Result<Cmp1Shape> {
    const P: &str = "normalize_pair_cmp1";
    if !is_down_set(a)? || !is_down_set(b)? {
        return Err(fail(P, "A' and B' are down sets"));
    }
    if a.len() != t.size_a || b.len() != t.size_b {
        return Err(fail(P, "|A'| = |A| and |B'| = |B|"));
    }
    let s = sumset(a, b)?;
    if s.len() > t.sumset {
        return Err(fail(P, "|A' + B'| <= |A + B|"));
    }
    if affine_dim(&s)? != t.d {
        return Err(fail(P, "dim(A' + B') = d"));
    }
    let ed = Direction::unit(t.d, t.d - 1);
    if fiber_count(a, &ed)? != t.r_1 || fiber_count(b, &ed)? != t.r_2 {
        return Err(fail(P, "|U'| = r_1 and |V'| = r_2"));
    }
    cmp1_shape(&drop_last(a), &drop_last(b)).ok_or_else(|| fail(P, "one of the three shapes"))
}

/// Next compression direction of the route, in the first `d - 1` coordinates.
fn cmp1_direction(u: &BTreeSet<Point>, v: &BTreeSet<Point>) -> Option<Point> {
    let h = u.iter().next()?.dim() - 1;
    let e = unit(h + 1, h);
    let union: BTreeSet<&Point> = u.iter().chain(v).collect();
    let outside: Vec<&&Point> = union.iter().filter(|p| p[h] != 0).collect();
    if outside.len() == 1 && **outside[0] == e {
        // Only e_{d-1} leaves H: pull the far end of the symmetric difference.
        let x = argmax_norm(u.symmetric_difference(v))?;
        if x[h] != 0 {
            return None;
        }
        return x.checked_sub(&e).ok();
    }
    let flat = |s: &BTreeSet<Point>| -> Vec<Point> {
        if s.contains(&e) {
            s.iter().filter(|p| p[h] == 0).cloned().collect()
        } else {
            Vec::new()
        }
    };
    let mut xy = flat(u);
    xy.extend(flat(v));
    // ‖y - e‖² = ‖y‖² + 1 on H, so maximizing ‖y‖ is the same.
    let y = argmax_norm(xy.iter())?;
    y.checked_sub(&e).ok()
}

fn lift(w: &Point) -> Result<CompressionDirection> {
    let mut c = w.coords().to_vec();
    c.push(0);
    CompressionDirection::new(&c)
}

/// Reduces `(A, B)` to down sets whose `e_d`-projections have one of the
/// three shapes of [`Cmp1Shape`], keeping cardinalities and projection counts
/// and not increasing `|A + B|`.
pub fn normalize_pair_cmp1(
    a: &PointSet,
    b: &PointSet,
    params: Cmp1Params,
) -> Result<PairReduction> {
    const P: &str = "normalize_pair_cmp1";
    same_dim(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("normalize_pair_cmp1 operand"));
    }
    let d = a.dim();
    if d < 2 {
        return Err(Error::hypothesis(P, "d >= 2"));
    }
    let m = params.scale;
    if m < 1 {
        return Err(Error::hypothesis(P, "m >= 1"));
    }
    let k = affine_dim(b)?;
    if k == 0 {
        return Err(Error::hypothesis(P, "dim(B) >= 1"));
    }
    let origin = Point::zero(d);
    let holds = |s: &PointSet, axes: std::ops::Range<usize>| -> Result<bool> {
        if !s.contains(&origin) {
            return Ok(false);
        }
        for i in axes {
            if !s.contains(&unit(d, i).checked_scale(m)?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if !holds(a, 0..d - k)? {
        return Err(Error::hypothesis(P, "m {0, e_1, .., e_(d-k)} ⊆ A"));
    }
    if !holds(b, d - k..d)? {
        return Err(Error::hypothesis(P, "m {0, e_(d-k+1), .., e_d} ⊆ B"));
    }
    let ed = Direction::unit(d, d - 1);
    let target = Cmp1Target {
        d,
        size_a: a.len(),
        size_b: b.len(),
        r_1: fiber_count(a, &ed)?,
        r_2: fiber_count(b, &ed)?,
        sumset: sumset(a, b)?.len(),
    };

    let mut pair = Pair {
        a: shift_to_orthant(a)?,
        b: shift_to_orthant(b)?,
        log: Vec::new(),
    };
    pair.close(d - 1)?;
    let mut seen = BTreeSet::new();
    for _ in 0..MAX_ROUNDS {
        let (u, v) = (drop_last(&pair.a), drop_last(&pair.b));
        if cmp1_shape(&u, &v).is_some() || !seen.insert(pair.state()) {
            break;
        }
        let Some(w) = cmp1_direction(&u, &v) else {
            break;
        };
        pair.apply(&lift(&w)?)?;
        for i in 0..d - 2 {
            pair.apply(&CompressionDirection::minus_unit(d, i))?;
        }
        pair.apply(&CompressionDirection::minus_unit(d, d - 1))?;
        pair.close(d - 1)?;
    }
    if let Ok(shape) = check_cmp1(&target, &pair.a, &pair.b) {
        return Ok(PairReduction {
            a: pair.a,
            b: pair.b,
            route: ReductionRoute::Compression,
            directions: pair.log,
            shape: Some(shape),
        });
    }
    cmp1_fallback(&target)
}

fn cmp1_fallback(t: &Cmp1Target) -> Result<PairReduction> {
    let ed = Direction::unit(t.d, t.d - 1);
    let with_count = |size: usize, r: usize| -> Result<Vec<(PointSet, BTreeSet<Point>)>> {
        let mut out = Vec::new();
        for s in down_sets(t.d, size)? {
            if fiber_count(&s, &ed)? == r {
                let u = drop_last(&s);
                out.push((s, u));
            }
        }
        Ok(out)
    };
    let cands_a = with_count(t.size_a, t.r_1)?;
    let cands_b = with_count(t.size_b, t.r_2)?;
    for (a, u) in &cands_a {
        for (b, v) in &cands_b {
            if cmp1_shape(u, v).is_none() {
                continue;
            }
            let s = sumset(a, b)?;
            if s.len() <= t.sumset && affine_dim(&s)? == t.d {
                let shape = check_cmp1(t, a, b)?;
                return Ok(PairReduction {
                    a: a.clone(),
                    b: b.clone(),
                    route: ReductionRoute::Fallback,
                    directions: Vec::new(),
                    shape: Some(shape),
                });
            }
        }
    }
    Err(fail(
        "normalize_pair_cmp1",
        "a pair of down sets meeting the contract exists",
    ))
}

// ---------------------------------------------------------------------------
// B inside Z^k x {0}, A leaving it only at e_{k+1}, .., e_d.

struct TmbTarget {
    d: usize,
    k: usize,
    size_a: usize,
    size_b: usize,
    r_1: usize,
    r_2: usize,
    sumset: usize,
}

fn in_first(p: &Point, k: usize) -> bool {
    p.coords()[k..].iter().all(|&c| c == 0)
}

fn check_tmb(t: &TmbTarget, a: &PointSet, b: &PointSet) -> Result<()> {
    const P: &str = "normalize_pair_tmb";
    let (d, k) = (t.d, t.k);
    if !is_down_set(a)? || !is_down_set(b)? {
        return Err(fail(P, "A' and B' are down sets"));
    }
    if a.len() != t.size_a || b.len() != t.size_b {
        return Err(fail(P, "|A'| = |A| and |B'| = |B|"));
    }
    if affine_dim(b)? != k {
        return Err(fail(P, "dim(B') = k"));
    }
    if sumset(a, b)?.len() > t.sumset {
        return Err(fail(P, "|A' + B'| <= |A + B|"));
    }
    if (0..k).any(|i| !b.contains(&unit(d, i))) || !b.iter().all(|p| in_first(p, k)) {
        return Err(fail(P, "{e_1, .., e_k} ⊆ B' ⊆ Z^k x {0}"));
    }
    let outside: Vec<Point> = a.iter().filter(|p| !in_first(p, k)).cloned().collect();
    let mut expected: Vec<Point> = (k..d).map(|i| unit(d, i)).collect();
    expected.sort();
    if outside != expected {
        return Err(fail(P, "A' \\ (Z^k x {0}) = {e_(k+1), .., e_d}"));
    }
    let e1 = Direction::unit(d, 0);
    if fiber_count(a, &e1)? != t.r_1 || fiber_count(b, &e1)? != t.r_2 {
        return Err(fail(P, "fiber counts along e_1 are r_1 and r_2"));
    }
    Ok(())
}

/// Points of `A` inside `Z^{j+1} x {0}` with `x_{j+1} > 0`, other than
/// `e_{j+1}` (0-based `j`).
fn stray(a: &PointSet, j: usize) -> bool {
    let e = unit(a.dim(), j);
    a.iter().any(|p| p[j] > 0 && in_first(p, j + 1) && *p != e)
}

/// Maps `(A, B)` by an injective integral linear map so that `v` goes to a
/// multiple of `e_1`, `B` spans the first `k` axes and `A` the rest.
fn tmb_embed(a: &PointSet, b: &PointSet, v: &Direction, k: usize) -> Result<(PointSet, PointSet)> {
    let d = a.dim();
    let part = fiber_partition(b, v)?;
    let fiber = part
        .fibers
        .iter()
        .find(|f| f.members.len() >= 2)
        .expect("checked by caller");
    let b0 = fiber.members.points()[0].clone();
    let u1 = fiber.members.points()[1].checked_sub(&b0)?;
    let a0 = a.points()[0].clone();
    let to_q = |p: &Point| -> Vec<BigRational> {
        p.coords()
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect()
    };
    let ta = a
        .iter()
        .map(|p| p.checked_sub(&a0).map(|x| to_q(&x)))
        .collect::<Result<Vec<_>>>()?;
    let tb = b
        .iter()
        .map(|p| p.checked_sub(&b0).map(|x| to_q(&x)))
        .collect::<Result<Vec<_>>>()?;
    let mut basis = vec![to_q(&u1)];
    extend_basis(&mut basis, &tb, k);
    extend_basis(&mut basis, &ta, d);
    let mut pts = ta;
    pts.extend(tb);
    let map = integral_map(&basis, &pts)?;
    let (ia, ib) = map.images.split_at(a.len());
    Ok((
        PointSet::new(d, ia.to_vec())?,
        PointSet::new(d, ib.to_vec())?,
    ))
}

/// Reduces `(A, B)` to down sets with `{e_1, .., e_k} ⊆ B' ⊆ Z^k x {0}` and
/// `A' \ (Z^k x {0}) = {e_{k+1}, .., e_d}`, keeping cardinalities, `dim(B)`
/// and the fiber counts (now along `e_1`), and not increasing `|A + B|`.
pub fn normalize_pair_tmb(a: &PointSet, b: &PointSet, v: &Direction) -> Result<PairReduction> {
    const P: &str = "normalize_pair_tmb";
    same_dim(a, b)?;
    if v.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    let d = a.dim();
    if d < 2 {
        return Err(Error::hypothesis(P, "d >= 2"));
    }
    if b.len() < 2 {
        return Err(Error::hypothesis(P, "|B| >= 2"));
    }
    if a.len() < b.len() {
        return Err(Error::hypothesis(P, "|A| >= |B|"));
    }
    let r_1 = fiber_count(a, v)?;
    let r_2 = fiber_count(b, v)?;
    let k = affine_dim(b)?;
    if r_1 < d {
        return Err(Error::hypothesis(P, "r_1 >= d"));
    }
    if r_2 >= d {
        return Err(Error::hypothesis(P, "d > r_2"));
    }
    if r_2 < k {
        return Err(Error::hypothesis(P, "r_2 >= k"));
    }
    let s = sumset(a, b)?;
    if affine_dim(&s)? != d {
        return Err(Error::hypothesis(P, "dim(A + B) = d"));
    }
    if fiber_partition(b, v)?.sizes().iter().all(|&n| n < 2) {
        return Err(Error::hypothesis(P, "v is a difference of two points of B"));
    }
    if k == 1 && r_1 > d {
        // B lies on one line along v, and A' is then supported on exactly d
        // lines along e_1.
        return Err(Error::hypothesis(P, "r_1 = d when dim(B) = 1"));
    }
    let target = TmbTarget {
        d,
        k,
        size_a: a.len(),
        size_b: b.len(),
        r_1,
        r_2,
        sumset: s.len(),
    };

    let (ea, eb) = tmb_embed(a, b, v, k)?;
    let mut pair = Pair {
        a: shift_to_orthant(&ea)?,
        b: shift_to_orthant(&eb)?,
        log: Vec::new(),
    };
    pair.close(0)?;
    tmb_route(&mut pair, k)?;
    if check_tmb(&target, &pair.a, &pair.b).is_ok() {
        return Ok(PairReduction {
            a: pair.a,
            b: pair.b,
            route: ReductionRoute::Compression,
            directions: pair.log,
            shape: None,
        });
    }
    tmb_fallback(&target)
}

fn tmb_route(pair: &mut Pair, k: usize) -> Result<()> {
    let d = pair.a.dim();
    for j in (k..d).rev() {
        let e = unit(d, j);
        let mut seen = BTreeSet::new();
        for _ in 0..MAX_ROUNDS {
            if !stray(&pair.a, j) || !seen.insert(pair.state()) {
                break;
            }
            let off_axis = pair
                .a
                .iter()
                .any(|p| p[0] == 0 && p[j] > 0 && in_first(p, j + 1) && *p != e);
            let (w, rest): (Option<&Point>, Vec<usize>) = if off_axis {
                let w = argmax_norm(pair.a.iter().filter(|p| p[0] == 0 && in_first(p, j)));
                (w, (1..=j).collect())
            } else {
                (
                    argmax_norm(pair.a.iter().filter(|p| in_first(p, 1))),
                    vec![0],
                )
            };
            let Some(w) = w else { break };
            let dir = CompressionDirection::from_point(w.checked_sub(&e)?)?;
            pair.apply(&dir)?;
            for i in rest {
                pair.apply(&CompressionDirection::minus_unit(d, i))?;
            }
            pair.close(0)?;
        }
        if stray(&pair.a, j) {
            return Ok(());
        }
    }
    Ok(())
}

fn tmb_fallback(t: &TmbTarget) -> Result<PairReduction> {
    let (d, k) = (t.d, t.k);
    let extra = d - k;
    let e1 = Direction::unit(k, 0);
    let embed = |s: &PointSet| -> Result<PointSet> {
        let pts = s
            .iter()
            .map(|p| {
                let mut c = p.coords().to_vec();
                c.resize(d, 0);
                Point::from(c)
            })
            .collect();
        PointSet::new(d, pts)
    };
    let count_ok = |s: &PointSet, r: usize| -> Result<bool> {
        Ok(if k == 1 {
            r == 1
        } else {
            fiber_count(s, &e1)? == r
        })
    };
    if t.size_a < extra + 1 || t.r_1 < extra + 1 {
        return Err(fail("normalize_pair_tmb", "|A| and r_1 exceed d - k"));
    }
    let mut xs = Vec::new();
    for x in down_sets(k, t.size_a - extra)? {
        if count_ok(&x, t.r_1 - extra)? {
            let mut a = embed(&x)?.into_points();
            a.extend((k..d).map(|i| unit(d, i)));
            xs.push(PointSet::new(d, a)?);
        }
    }
    let mut bs = Vec::new();
    for y in down_sets(k, t.size_b)? {
        let spans = (0..k).all(|i| y.contains(&unit(k, i)));
        if spans && count_ok(&y, t.r_2)? {
            bs.push(embed(&y)?);
        }
    }
    for a in &xs {
        for b in &bs {
            if sumset(a, b)?.len() <= t.sumset {
                check_tmb(t, a, b)?;
                return Ok(PairReduction {
                    a: a.clone(),
                    b: b.clone(),
                    route: ReductionRoute::Fallback,
                    directions: Vec::new(),
                    shape: None,
                });
            }
        }
    }
    Err(fail(
        "normalize_pair_tmb",
        "a pair of down sets meeting the contract exists",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn cmp1_fixed_point_in_final_form() {
        // U' = V' = {0, e_1} in Z^1: the third shape.
        let a = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let r = normalize_pair_cmp1(&a, &a, Cmp1Params { scale: 1 }).unwrap();
        assert_eq!(r.a, a);
        assert_eq!(r.b, a);
        assert_eq!(r.shape, Some(Cmp1Shape::Equal));
        assert!(r.directions.is_empty());
    }

    #[test]
    fn cmp1_simplex_pair() {
        let a = set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = normalize_pair_cmp1(&a, &a, Cmp1Params { scale: 1 }).unwrap();
        assert_eq!((r.a.len(), r.b.len()), (4, 4));
        assert!(sumset(&r.a, &r.b).unwrap().len() <= 10);
        let e3 = Direction::unit(3, 2);
        assert_eq!(fiber_count(&r.a, &e3).unwrap(), 3);
        assert_eq!(fiber_count(&r.b, &e3).unwrap(), 3);
    }

    #[test]
    fn cmp1_stalled_route_uses_fallback() {
        let a = set(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[3, 0, 0]]);
        let b = set(&[&[0, 0, 0], &[0, 1, 0], &[0, 2, 0], &[0, 0, 1]]);
        let r = normalize_pair_cmp1(&a, &b, Cmp1Params { scale: 1 }).unwrap();
        assert_eq!(r.route, ReductionRoute::Fallback);
        assert!(r.shape.is_some());
    }

    #[test]
    fn cmp1_rejects_missing_simplex() {
        let a = set(&[&[0, 0], &[2, 0]]);
        let b = set(&[&[0, 0], &[0, 1]]);
        assert!(matches!(
            normalize_pair_cmp1(&a, &b, Cmp1Params { scale: 1 }),
            Err(Error::Hypothesis { .. })
        ));
        assert!(normalize_pair_cmp1(&a, &b, Cmp1Params { scale: 2 }).is_err());
    }

    #[test]
    fn tmb_square_base() {
        // d = 3, k = 2, B the unit square, A reaching up the third axis.
        let b = set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let a = set(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 2],
            &[2, 0, 0],
            &[0, 2, 0],
        ]);
        let v = Direction::unit(3, 0);
        let r = normalize_pair_tmb(&a, &b, &v).unwrap();
        assert!(r.b.contains(&Point::new(&[1, 0, 0])));
        let off: Vec<&Point> = r.a.iter().filter(|p| p[2] != 0).collect();
        assert_eq!(off, vec![&Point::new(&[0, 0, 1])]);
        assert!(sumset(&r.a, &r.b).unwrap().len() <= sumset(&a, &b).unwrap().len());
    }

    #[test]
    fn tmb_hypotheses() {
        // d = 2 forces r_2 >= d once B has two lines.
        let a = set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let b = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(
            normalize_pair_tmb(&a, &b, &Direction::unit(2, 0)),
            Err(Error::Hypothesis { .. })
        ));
        // Collinear B with r_1 > d.
        let a = set(&[&[0, 0, 0], &[0, 1, 0], &[0, 2, 0], &[0, 0, 1], &[0, 3, 0]]);
        let b = set(&[&[0, 0, 0], &[1, 0, 0]]);
        assert!(normalize_pair_tmb(&a, &b, &Direction::unit(3, 0)).is_err());
    }
}
