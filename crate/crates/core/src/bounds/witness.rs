use serde::Serialize;

use super::Rational;
use crate::error::{Error, Result};
use crate::pointset::{
    affine_dim, difference_directions, fiber_count, integer_rank, same_dim, sumset, Direction,
    PointSet,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessParams {
    /// Subtracted from `|A| + (d + 1/7)|B|` to form the small-sumset threshold.
    pub threshold: Rational,
    /// If set, `|B| <= C_d (|pi_v(A)| + |pi_v(B)|)` also counts as a witness.
    pub c_d: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessClass {
    /// `|pi_v(A)| = d` and `|pi_v(B)|` is `d` or `dim B`.
    FewLines,
    /// `|B| <= C_d (|pi_v(A)| + |pi_v(B)|)`.
    SmallB,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessOutcome {
    /// `|A + B|` is above the threshold; nothing is claimed.
    NotApplicable {
        sumset_size: usize,
    },
    Witness {
        direction: Vec<i64>,
        r_1: usize,
        r_2: usize,
        class: WitnessClass,
    },
    NoWitness,
}

/// Looks for a line direction explaining a small `|A + B|`. Candidate
/// directions are the primitive differences within `A ∪ B`, in ascending
/// order; the first one meeting either conclusion is returned.
pub fn structure_witness(
    a: &PointSet,
    b: &PointSet,
    params: &WitnessParams,
) -> Result<WitnessOutcome> {
    const C: &str = "structure_witness";
    same_dim(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("structure_witness operand"));
    }
    let d = a.dim();
    if affine_dim(a)? != d {
        return Err(Error::hypothesis(C, "dim(A) = d"));
    }
    if a.len() < b.len() {
        return Err(Error::hypothesis(C, "|A| >= |B|"));
    }
    let sumset_size = sumset(a, b)?.len();
    let (na, nb, dz) = (a.len() as i128, b.len() as i128, d as i128);
    let limit = Rational::from_integer(na)
        + (Rational::from_integer(dz) + Rational::new(1, 7)) * Rational::from_integer(nb)
        - params.threshold;
    if Rational::from_integer(sumset_size as i128) > limit {
        return Ok(WitnessOutcome::NotApplicable { sumset_size });
    }
    let dim_b = affine_dim(b)?;
    for v in difference_directions(&a.union(b)?)? {
        let (r_1, r_2) = (fiber_count(a, &v)?, fiber_count(b, &v)?);
        let class = if r_1 == d && (r_2 == d || r_2 == dim_b) {
            WitnessClass::FewLines
        } else if params.c_d.is_some_and(|c| {
            Rational::from_integer(nb) <= c * Rational::from_integer((r_1 + r_2) as i128)
        }) {
            WitnessClass::SmallB
        } else {
            continue;
        };
        return Ok(WitnessOutcome::Witness {
            direction: v.coords().to_vec(),
            r_1,
            r_2,
            class,
        });
    }
    Ok(WitnessOutcome::NoWitness)
}

/// Checks the two-hyperplane shape: `A = A_1 ∪ A_2 ∪ E` with `A_1`, `A_2` in
/// translates of one hyperplane, each `(d-1)`-dimensional and on `d - 1`
/// lines along `v`, and `|E| <= epsilon_bound`.
pub fn dbdg_witness_check(
    a: &PointSet,
    a1: &PointSet,
    a2: &PointSet,
    e: &PointSet,
    v: &Direction,
    epsilon_bound: usize,
) -> Result<bool> {
    for part in [a1, a2, e] {
        same_dim(a, part)?;
    }
    if v.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    let total = a1.len() + a2.len() + e.len();
    let union = a1.union(a2)?.union(e)?;
    if total != union.len() {
        return Err(Error::NotPartition("parts overlap".into()));
    }
    if union != *a {
        return Err(Error::NotPartition("union of parts differs from A".into()));
    }
    let d = a.dim();
    if d < 2 || a1.is_empty() || a2.is_empty() {
        return Ok(false);
    }
    let flat = affine_dim(a1)? == d - 1 && affine_dim(a2)? == d - 1;
    if !flat {
        return Ok(false);
    }
    // Same hyperplane direction: the two difference spaces together still
    // have rank d - 1.
    let mut rows = Vec::new();
    for part in [a1, a2] {
        let base = &part.points()[0];
        for p in part {
            rows.push(p.checked_sub(base)?.coords().to_vec());
        }
    }
    if integer_rank(&rows)? != d - 1 {
        return Ok(false);
    }
    Ok(fiber_count(a1, v)? == d - 1 && fiber_count(a2, v)? == d - 1 && e.len() <= epsilon_bound)
}
