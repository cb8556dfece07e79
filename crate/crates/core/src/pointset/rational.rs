use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::PointSet;
use crate::error::{Error, Result};

/// A finite set of points with rational coordinates, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPointSet {
    dim: usize,
    points: Vec<Vec<BigRational>>,
}

impl RationalPointSet {
    pub fn new(dim: usize, mut points: Vec<Vec<BigRational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(format!("{:?}", points[0])));
        }
        Ok(RationalPointSet { dim, points })
    }

    pub fn from_integer(a: &PointSet) -> Self {
        RationalPointSet {
            dim: a.dim(),
            points: a
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|&c| BigRational::from_integer(BigInt::from(c)))
                        .collect()
                })
                .collect(),
        }
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

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    /// `|A + B|` computed exactly.
    pub fn sumset_len(&self, other: &RationalPointSet) -> usize {
        let mut sums: Vec<Vec<BigRational>> = Vec::with_capacity(self.len() * other.len());
        for p in &self.points {
            for q in &other.points {
                sums.push(p.iter().zip(q).map(|(x, y)| x + y).collect());
            }
        }
        sums.sort();
        sums.dedup();
        sums.len()
    }

    /// Rank over `Q` of the differences from the first point.
    pub fn affine_dim(&self) -> usize {
        let Some(base) = self.points.first() else {
            return 0;
        };
        let rows: Vec<Vec<BigRational>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect();
        rational_rank(rows)
    }
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub(crate) fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..cols {
                let delta = &f * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Parses one rational token: `7`, `-3/4`, or a finite decimal such as `1.25`.
pub(crate) fn parse_rational(tok: &str) -> std::result::Result<BigRational, String> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator in `{tok}`"))?;
        let d: BigInt = d
            .parse()
            .map_err(|_| format!("bad denominator in `{tok}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{tok}`"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = tok.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal `{tok}`"));
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            s => s.parse().map_err(|_| format!("bad decimal `{tok}`"))?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| format!("bad decimal `{tok}`"))?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    tok.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| format!("bad rational `{tok}`"))
}

/// Text form with rational tokens; otherwise identical to the integer text form.
pub fn parse_rational_text(input: &str) -> Result<RationalPointSet> {
    let mut dim = None;
    let mut points = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|message| Error::Parse {
                line: idx + 1,
                message,
            })?;
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {d} coordinates, found {}", coords.len()),
            });
        }
        points.push(coords);
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "no data lines".into(),
    })?;
    RationalPointSet::new(dim, points).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}
