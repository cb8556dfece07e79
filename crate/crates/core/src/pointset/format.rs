//! Point-set text, JSON and CSV forms.
//!
//! Text: one point per line as whitespace-separated decimal integers; blank
//! lines and lines starting with `#` are ignored; the dimension comes from the
//! first data line; repeated points are rejected.
//!
//! JSON: `{"dim": d, "points": [[..], ..]}`.

use serde::{Deserialize, Serialize};

use super::{Point, PointSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSetJson {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

impl From<PointSet> for PointSetJson {
    fn from(a: PointSet) -> Self {
        PointSetJson {
            dim: a.dim(),
            points: a.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = Error;

    fn try_from(j: PointSetJson) -> Result<Self> {
        PointSet::new(j.dim, j.points.into_iter().map(Point::from).collect())
    }
}

pub fn parse_text(input: &str) -> Result<PointSet> {
    let mut dim = None;
    let mut points: Vec<(usize, Point)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad integer `{tok}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = *dim.get_or_insert(coords.len());
        if coords.len() != d {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {d} coordinates, found {}", coords.len()),
            });
        }
        points.push((line_no, Point::from(coords)));
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        message: "no data lines".into(),
    })?;
    let mut sorted: Vec<&(usize, Point)> = points.iter().collect();
    sorted.sort_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)));
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(Error::Parse {
            line: w[1].0,
            message: format!("duplicate point {} (first seen on line {})", w[1].1, w[0].0),
        });
    }
    PointSet::new(dim, points.into_iter().map(|(_, p)| p).collect())
}

pub fn parse_json(input: &str) -> Result<PointSet> {
    let j: PointSetJson = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    PointSet::try_from(j).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_auto(input: &str) -> Result<PointSet> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn to_text(a: &PointSet) -> String {
    join_lines(a, " ")
}

pub fn to_csv(a: &PointSet) -> String {
    join_lines(a, ",")
}

fn join_lines(a: &PointSet, sep: &str) -> String {
    let mut out = String::new();
    for p in a {
        let line: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(sep));
        out.push('\n');
    }
    out
}

pub fn to_json(a: &PointSet) -> String {
    serde_json::to_string(a).expect("point sets always serialize")
}
