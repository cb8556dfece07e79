//! Named sumset and difference-set inequalities, evaluated exactly.
//!
//! Every check returns the cardinality on one side and an exact rational on
//! the other. A kind whose hypotheses fail on the given input is an error,
//! never a `holds = false` verdict.

mod witness;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pointset::{
    affine_dim, difference_set, fiber_count, restricted_difference, same_dim, sumset, Direction,
    PointSet,
};

pub use witness::{
    dbdg_witness_check, structure_witness, WitnessClass, WitnessOutcome, WitnessParams,
};

/// Exact rational. Set sizes are bounded by memory, so the largest
/// intermediate (a cube of a sumset size) stays far inside `i128`.
pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    FreimanSumset,
    FhuDifference,
    RuzsaAsymmetric,
    #[serde(rename = "stanchescu_3d")]
    Stanchescu3d,
    Diffln,
    LinesOut5,
    LinesOut4,
    Mn2,
    Conjecture,
    GsPlanar,
    RuzsaTriangle,
    D12,
    Rszgn,
    Rszgn2,
    TrivialSum,
}

impl BoundKind {
    pub const ALL: [BoundKind; 15] = [
        BoundKind::FreimanSumset,
        BoundKind::FhuDifference,
        BoundKind::RuzsaAsymmetric,
        BoundKind::Stanchescu3d,
        BoundKind::Diffln,
        BoundKind::LinesOut5,
        BoundKind::LinesOut4,
        BoundKind::Mn2,
        BoundKind::Conjecture,
        BoundKind::GsPlanar,
        BoundKind::RuzsaTriangle,
        BoundKind::D12,
        BoundKind::Rszgn,
        BoundKind::Rszgn2,
        BoundKind::TrivialSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::FreimanSumset => "freiman_sumset",
            BoundKind::FhuDifference => "fhu_difference",
            BoundKind::RuzsaAsymmetric => "ruzsa_asymmetric",
            BoundKind::Stanchescu3d => "stanchescu_3d",
            BoundKind::Diffln => "diffln",
            BoundKind::LinesOut5 => "lines_out5",
            BoundKind::LinesOut4 => "lines_out4",
            BoundKind::Mn2 => "mn2",
            BoundKind::Conjecture => "conjecture",
            BoundKind::GsPlanar => "gs_planar",
            BoundKind::RuzsaTriangle => "ruzsa_triangle",
            BoundKind::D12 => "d12",
            BoundKind::Rszgn => "rszgn",
            BoundKind::Rszgn2 => "rszgn2",
            BoundKind::TrivialSum => "trivial_sum",
        }
    }

    /// Everything except the conjectured difference-set bound is a theorem.
    pub fn is_proven(self) -> bool {
        self != BoundKind::Conjecture
    }

    /// The one kind bounding a cardinality from above.
    pub fn is_upper_bound(self) -> bool {
        self == BoundKind::RuzsaTriangle
    }

    pub fn needs_b(self) -> bool {
        matches!(
            self,
            BoundKind::RuzsaAsymmetric
                | BoundKind::Mn2
                | BoundKind::GsPlanar
                | BoundKind::RuzsaTriangle
                | BoundKind::D12
                | BoundKind::Rszgn
                | BoundKind::Rszgn2
                | BoundKind::TrivialSum
        )
    }

    pub fn needs_direction(self) -> bool {
        matches!(
            self,
            BoundKind::Diffln
                | BoundKind::LinesOut5
                | BoundKind::LinesOut4
                | BoundKind::Mn2
                | BoundKind::GsPlanar
                | BoundKind::D12
                | BoundKind::Rszgn
                | BoundKind::Rszgn2
        )
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown bound kind `{s}`")))
    }
}

/// Symbols of the evaluated formula. Absent ones do not occur in it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundParams {
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_d: Option<i128>,
    pub size_a: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_b: Option<usize>,
    /// `|A - B|`, for the triangle inequality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_diff: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub lhs: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: Rational,
    /// `lhs - rhs` for lower bounds, `rhs - lhs` for the upper bound, so that
    /// a nonnegative slack always means the inequality holds.
    #[serde(serialize_with = "ser_ratio")]
    pub slack: Rational,
    pub holds: bool,
    pub params: BoundParams,
}

#[derive(Serialize)]
struct RatioJson {
    num: i128,
    den: i128,
}

pub(crate) fn ser_ratio<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    RatioJson {
        num: *q.numer(),
        den: *q.denom(),
    }
    .serialize(s)
}

pub(crate) fn ser_opt_ratio<S: Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_ratio(q, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ratio_text(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "kind,lhs,rhs,slack,holds,d,r,r_1,r_2,c,k,k_d,size_a,size_b,size_diff";

    pub fn csv_row(&self) -> String {
        let p = &self.params;
        [
            self.kind.name().to_string(),
            self.lhs.to_string(),
            ratio_text(&self.rhs),
            ratio_text(&self.slack),
            self.holds.to_string(),
            p.d.to_string(),
            opt(p.r),
            opt(p.r_1),
            opt(p.r_2),
            opt(p.c),
            opt(p.k),
            opt(p.k_d),
            p.size_a.to_string(),
            opt(p.size_b),
            opt(p.size_diff),
        ]
        .join(",")
    }

    /// A proven inequality failed.
    pub fn is_violation(&self) -> bool {
        !self.holds && self.kind.is_proven()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.kind.is_upper_bound() {
            "<="
        } else {
            ">="
        };
        write!(
            f,
            "{}: {} {} {} (slack {}) {}",
            self.kind,
            self.lhs,
            rel,
            ratio_text(&self.rhs),
            ratio_text(&self.slack),
            if self.holds { "holds" } else { "FAILS" }
        )
    }
}

fn int(n: impl Into<i128>) -> Rational {
    Rational::from_integer(n.into())
}

fn z(n: usize) -> i128 {
    n as i128
}

struct Ctx<'a> {
    kind: BoundKind,
    a: &'a PointSet,
    b: Option<&'a PointSet>,
    v: Option<&'a Direction>,
}

impl<'a> Ctx<'a> {
    fn require(&self, ok: bool, hypothesis: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::hypothesis(self.kind.name(), hypothesis))
        }
    }

    fn b(&self) -> Result<&'a PointSet> {
        let b = self.b.ok_or_else(|| Error::MissingOperand {
            context: self.kind.name().into(),
            operand: "B",
        })?;
        same_dim(self.a, b)?;
        if b.is_empty() {
            return Err(Error::EmptySet("B"));
        }
        Ok(b)
    }

    fn v(&self) -> Result<&'a Direction> {
        let v = self.v.ok_or_else(|| Error::MissingOperand {
            context: self.kind.name().into(),
            operand: "direction",
        })?;
        if v.dim() != self.a.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.a.dim(),
                found: v.dim(),
            });
        }
        Ok(v)
    }

    fn full_dim(&self) -> Result<()> {
        self.require(affine_dim(self.a)? == self.a.dim(), "dim(A) = d")
    }

    /// `dim(A + B) = d` and `|A| >= |B|`, shared by the asymmetric kinds.
    fn pair_hypotheses(&self, b: &PointSet) -> Result<usize> {
        let s = sumset(self.a, b)?;
        self.require(affine_dim(&s)? == self.a.dim(), "dim(A + B) = d")?;
        self.require(self.a.len() >= b.len(), "|A| >= |B|")?;
        Ok(s.len())
    }
}

/// Evaluates one inequality on `A` (and `B`, `v` where the kind uses them).
pub fn evaluate_bound(
    kind: BoundKind,
    a: &PointSet,
    b: Option<&PointSet>,
    v: Option<&Direction>,
) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    let cx = Ctx { kind, a, b, v };
    let d = a.dim();
    let n = a.len();
    let (dz, nz) = (z(d), z(n));
    let mut params = BoundParams {
        d,
        size_a: n,
        ..BoundParams::default()
    };
    let (lhs, rhs): (usize, Rational) = match kind {
        BoundKind::FreimanSumset => {
            cx.full_dim()?;
            let lhs = sumset(a, a)?.len();
            (lhs, int((dz + 1) * nz - dz * (dz + 1) / 2))
        }
        BoundKind::FhuDifference => {
            cx.full_dim()?;
            let lhs = difference_set(a, a)?.len();
            (lhs, int((dz + 1) * nz - dz * (dz + 1) / 2))
        }
        BoundKind::Stanchescu3d => {
            cx.require(d == 3, "d = 3")?;
            cx.full_dim()?;
            let lhs = difference_set(a, a)?.len();
            (lhs, Rational::new(9 * nz, 2) - int(9))
        }
        BoundKind::Conjecture => {
            cx.require(d >= 2, "d >= 2")?;
            cx.full_dim()?;
            let lhs = difference_set(a, a)?.len();
            (lhs, doubling(dz) * int(nz) - int(2 * dz * dz - 4 * dz + 3))
        }
        BoundKind::Diffln | BoundKind::LinesOut5 => {
            let v = cx.v()?;
            cx.full_dim()?;
            let r = fiber_count(a, v)?;
            params.r = Some(r);
            let lhs = restricted_difference(a, a, v)?.len();
            (lhs, int((2 * dz - 2) * nz - 2 * dz * dz * z(r)))
        }
        BoundKind::LinesOut4 => {
            let v = cx.v()?;
            cx.require(d >= 4, "d >= 4")?;
            cx.full_dim()?;
            let part = crate::pointset::fiber_partition(a, v)?;
            cx.require(
                part.sizes().iter().all(|&s| s >= 2 * d * d),
                "every line meets A in at least 2d^2 points",
            )?;
            let r = part.len();
            let k_d = 1000 * dz * dz * dz;
            params.r = Some(r);
            params.k_d = Some(k_d);
            let lhs = difference_set(a, a)?.len();
            (lhs, doubling(dz) * int(nz) - int(k_d * z(r)))
        }
        BoundKind::RuzsaAsymmetric => {
            let b = cx.b()?;
            params.size_b = Some(b.len());
            let lhs = cx.pair_hypotheses(b)?;
            (lhs, int(nz + dz * z(b.len()) - dz * (dz + 1) / 2))
        }
        BoundKind::Mn2 | BoundKind::Rszgn | BoundKind::Rszgn2 => {
            let b = cx.b()?;
            let v = cx.v()?;
            let (r_1, r_2) = (fiber_count(a, v)?, fiber_count(b, v)?);
            let k = affine_dim(b)?;
            params.size_b = Some(b.len());
            params.r_1 = Some(r_1);
            params.r_2 = Some(r_2);
            cx.require(d >= 2, "d >= 2")?;
            cx.require(r_1 >= d, "r_1 >= d")?;
            let lhs = cx.pair_hypotheses(b)?;
            let c = match kind {
                BoundKind::Rszgn => {
                    cx.require(r_2 >= d, "r_2 >= d")?;
                    d
                }
                BoundKind::Rszgn2 => {
                    cx.require(r_2 < d, "d > r_2")?;
                    cx.require(k >= 1, "dim(B) >= 1")?;
                    cx.require(b.len() >= 2, "|B| >= 2")?;
                    k
                }
                _ if r_2 >= d => d,
                _ => k,
            };
            params.c = Some(c);
            if c == k && r_2 < d {
                params.k = Some(k);
            }
            (lhs, mn2_rhs(n, b.len(), d, r_1, r_2, c))
        }
        BoundKind::GsPlanar => {
            let b = cx.b()?;
            let v = cx.v()?;
            cx.require(d == 2, "d = 2")?;
            let (r_1, r_2) = (fiber_count(a, v)?, fiber_count(b, v)?);
            params.size_b = Some(b.len());
            params.r_1 = Some(r_1);
            params.r_2 = Some(r_2);
            let lhs = sumset(a, b)?.len();
            let factor = Rational::new(nz, z(r_1)) + Rational::new(z(b.len()), z(r_2)) - int(1);
            (lhs, factor * int(z(r_1 + r_2) - 1))
        }
        BoundKind::RuzsaTriangle => {
            let b = cx.b()?;
            params.size_b = Some(b.len());
            let diff = difference_set(a, b)?.len();
            params.size_diff = Some(diff);
            let lhs = sumset(a, b)?.len();
            let dd = z(diff);
            (lhs, Rational::new(dd * dd * dd, nz * z(b.len())))
        }
        BoundKind::D12 => {
            let b = cx.b()?;
            let v = cx.v()?;
            cx.require(fiber_count(b, v)? == 1, "|pi_v(B)| = 1")?;
            let r = fiber_count(a, v)?;
            params.r = Some(r);
            params.size_b = Some(b.len());
            let lhs = sumset(a, b)?.len();
            (lhs, int(nz + z(r) * z(b.len()) - z(r)))
        }
        BoundKind::TrivialSum => {
            let b = cx.b()?;
            params.size_b = Some(b.len());
            let lhs = sumset(a, b)?.len();
            (lhs, int(nz + z(b.len()) - 1))
        }
    };
    let slack = if kind.is_upper_bound() {
        rhs - int(z(lhs))
    } else {
        int(z(lhs)) - rhs
    };
    Ok(BoundReport {
        kind,
        lhs,
        rhs,
        holds: slack >= int(0),
        slack,
        params,
    })
}

/// `2d - 2 + 1/(d - 1)`.
fn doubling(d: i128) -> Rational {
    int(2 * d - 2) + Rational::new(1, d - 1)
}

/// `|A| + (d + 1 - 1/(r_1 - d + 2) - 1/(r_2 - c + 2)) |B| - (d - 1)(r_1 + r_2)`.
pub fn mn2_rhs(
    size_a: usize,
    size_b: usize,
    d: usize,
    r_1: usize,
    r_2: usize,
    c: usize,
) -> Rational {
    let (d, r_1, r_2, c) = (z(d), z(r_1), z(r_2), z(c));
    let factor = int(d + 1) - Rational::new(1, r_1 - d + 2) - Rational::new(1, r_2 - c + 2);
    int(z(size_a)) + factor * int(z(size_b)) - int((d - 1) * (r_1 + r_2))
}
