//! Exhaustive and hill-descent search over subsets of a box, for sets with
//! small difference sets or small slack against a bound.

mod canonical;

use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::Rng;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::bounds::{evaluate_bound, ser_opt_ratio, BoundKind, Rational};
use crate::constructions::{box_set, random_subset};
use crate::error::{Error, Result};
use crate::pointset::{affine_dim, difference_set, min_line_cover, Direction, Point, PointSet};

pub use canonical::canonical_form;

/// Scans visiting more candidate sets than this are refused unless the
/// budget is raised.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Candidates per chunk. Chunk boundaries do not depend on the worker count.
const CHUNK: u128 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Minimize the slack of this bound.
    Bound(BoundKind),
    /// Minimize `|A - A|`.
    DifferenceSize,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Bound(k) => k.name(),
            Objective::DifferenceSize => "difference_size",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "difference_size" {
            Ok(Objective::DifferenceSize)
        } else {
            s.parse().map(Objective::Bound)
        }
    }
}

impl Serialize for Objective {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Subsets of `{0, .., m}^d` with between `n_lo` and `n_hi` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub d: usize,
    pub m: i64,
    pub n_lo: usize,
    pub n_hi: usize,
    /// Keep only sets with `dim(A) = d`.
    pub require_full_dim: bool,
    pub objective: Objective,
    /// Visit one set per class under the box symmetries.
    pub symmetry: bool,
    /// Direction handed to kinds that take one. When absent, each set uses
    /// the direction covering it with the fewest lines.
    #[serde(serialize_with = "ser_opt_direction")]
    pub direction: Option<Direction>,
}

fn ser_opt_direction<S: Serializer>(
    v: &Option<Direction>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.coords()),
        None => s.serialize_none(),
    }
}

impl SearchSpace {
    /// All `n`-subsets of `{0, .., m}^d` of full dimension, no symmetry reduction.
    pub fn new(d: usize, m: i64, n: usize, objective: Objective) -> Self {
        SearchSpace {
            d,
            m,
            n_lo: n,
            n_hi: n,
            require_full_dim: true,
            objective,
            symmetry: false,
            direction: None,
        }
    }

    /// Checks the parameters and returns the sorted universe.
    fn universe(&self) -> Result<Vec<Point>> {
        if self.n_lo == 0 || self.n_lo > self.n_hi {
            return Err(Error::InvalidParameter(format!(
                "empty cardinality range [{}, {}]",
                self.n_lo, self.n_hi
            )));
        }
        if self.require_full_dim && self.n_lo < self.d + 1 {
            return Err(Error::InvalidParameter(format!(
                "a {}-dimensional set needs at least {} points",
                self.d,
                self.d + 1
            )));
        }
        if let Some(v) = &self.direction {
            if v.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found: v.dim(),
                });
            }
        }
        let universe = box_set(self.d, self.m)?.into_points();
        if self.n_hi > universe.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot pick {} points from a box of {}",
                self.n_hi,
                universe.len()
            )));
        }
        Ok(universe)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub workers: usize,
    pub budget: u128,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Objective value of one set: `|A - A|`, or the bound's counted side and slack.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Score {
    pub value: usize,
    pub slack: Option<Rational>,
}

impl Score {
    fn key(&self) -> Rational {
        self.slack
            .unwrap_or_else(|| Rational::from_integer(self.value as i128))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Ok,
    /// Negative slack against a proven bound: an implementation bug or a discovery.
    Violation,
    /// Negative slack against the conjectured bound.
    ConjectureFails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    /// Canonical form of the extremal set.
    pub set: PointSet,
    pub size: usize,
    pub value: usize,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub slack: Option<Rational>,
    /// Sets of this size visited.
    pub enumerated: u64,
    /// Sets of this size that passed the filters and were scored.
    pub evaluated: u64,
    /// Scored sets with negative slack.
    pub negative: u64,
    pub severity: Severity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub space: SearchSpace,
    pub enumerated: u64,
    pub evaluated: u64,
    pub negative: u64,
    /// One record per cardinality with at least one scored set.
    pub records: Vec<ExtremalRecord>,
}

impl ScanReport {
    /// Least-slack (or least-value) record over all sizes, smallest size on ties.
    pub fn best(&self) -> Option<&ExtremalRecord> {
        self.records.iter().min_by_key(|r| {
            (
                Score {
                    value: r.value,
                    slack: r.slack,
                }
                .key(),
                r.size,
            )
        })
    }
}

/// Scores `a`, or returns `None` if it fails the dimension filter or the
/// bound's hypotheses. Kinds taking a second set get `B = A`.
pub fn evaluate_objective(
    objective: Objective,
    a: &PointSet,
    require_full_dim: bool,
    direction: Option<&Direction>,
) -> Result<Option<Score>> {
    if require_full_dim && affine_dim(a)? != a.dim() {
        return Ok(None);
    }
    let kind = match objective {
        Objective::DifferenceSize => {
            let value = difference_set(a, a)?.len();
            return Ok(Some(Score { value, slack: None }));
        }
        Objective::Bound(kind) => kind,
    };
    let cover;
    let v = match direction {
        Some(v) => Some(v),
        None if kind.needs_direction() => match min_line_cover(a) {
            Ok((v, _)) => {
                cover = v;
                Some(&cover)
            }
            Err(Error::Hypothesis { .. }) => return Ok(None),
            Err(e) => return Err(e),
        },
        None => None,
    };
    match evaluate_bound(kind, a, Some(a), v) {
        Ok(r) => Ok(Some(Score {
            value: r.lhs,
            slack: Some(r.slack),
        })),
        Err(Error::Hypothesis { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn severity(objective: Objective, slack: Option<Rational>) -> Severity {
    match (objective, slack) {
        (Objective::Bound(k), Some(s)) if s < Rational::from_integer(0) => {
            if k.is_proven() {
                Severity::Violation
            } else {
                Severity::ConjectureFails
            }
        }
        _ => Severity::Ok,
    }
}

/// `C(n, k)`, saturating.
fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 after the multiplication.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank(mut rank: u128, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for i in 0..k {
        loop {
            let count = binom(n - x - 1, k - i - 1);
            if rank < count {
                out.push(x);
                x += 1;
                break;
            }
            rank -= count;
            x += 1;
        }
    }
    out
}

/// Advances to the next `k`-subset of `0..n`; false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[derive(Default)]
struct Acc {
    best: Option<(Rational, PointSet, Score)>,
    enumerated: u64,
    evaluated: u64,
    negative: u64,
}

impl Acc {
    fn offer(&mut self, a: PointSet, score: Score, canonical: bool) -> Result<()> {
        let key = score.key();
        let better = match &self.best {
            None => true,
            Some((k, _, _)) => key <= *k,
        };
        if !better {
            return Ok(());
        }
        let set = if canonical { a } else { canonical_form(&a)? };
        let replace = match &self.best {
            None => true,
            Some((k, s, _)) => (key, &set) < (*k, s),
        };
        if replace {
            self.best = Some((key, set, score));
        }
        Ok(())
    }

    fn merge(&mut self, other: Acc) -> Result<()> {
        self.enumerated += other.enumerated;
        self.evaluated += other.evaluated;
        self.negative += other.negative;
        if let Some((_, set, score)) = other.best {
            self.offer(set, score, true)?;
        }
        Ok(())
    }
}

fn scan_chunks(
    space: &SearchSpace,
    universe: &[Point],
    n: usize,
    worker: usize,
    workers: usize,
) -> Result<Acc> {
    let u = universe.len();
    let total = binom(u, n);
    let chunks = total.div_ceil(CHUNK);
    let mut acc = Acc::default();
    let mut chunk = worker as u128;
    while chunk < chunks {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut idx = unrank(start, u, n);
        for _ in start..end {
            acc.enumerated += 1;
            let pts = idx.iter().map(|&i| universe[i].clone()).collect();
            let a = PointSet::from_sorted_unchecked(space.d, pts);
            let keep = !space.symmetry || canonical_form(&a)? == a;
            if keep {
                if let Some(score) = evaluate_objective(
                    space.objective,
                    &a,
                    space.require_full_dim,
                    space.direction.as_ref(),
                )? {
                    acc.evaluated += 1;
                    if score.slack.is_some_and(|s| s < Rational::from_integer(0)) {
                        acc.negative += 1;
                    }
                    acc.offer(a, score, space.symmetry)?;
                }
            }
            next_combination(&mut idx, u);
        }
        chunk += workers as u128;
    }
    Ok(acc)
}

/// Visits every set in the space and keeps, for each size, the least slack
/// (or least `|A - A|`), breaking ties by the least canonical form. The
/// result does not depend on the worker count.
pub fn exhaustive_scan(space: &SearchSpace, opts: &ScanOptions) -> Result<ScanReport> {
    let universe = space.universe()?;
    if opts.workers == 0 {
        return Err(Error::InvalidParameter(
            "at least one worker is needed".into(),
        ));
    }
    let candidates = (space.n_lo..=space.n_hi)
        .map(|n| binom(universe.len(), n))
        .fold(0u128, u128::saturating_add);
    if candidates > opts.budget {
        return Err(Error::BudgetExceeded {
            candidates,
            budget: opts.budget,
        });
    }
    let mut report = ScanReport {
        space: space.clone(),
        enumerated: 0,
        evaluated: 0,
        negative: 0,
        records: Vec::new(),
    };
    for n in space.n_lo..=space.n_hi {
        let parts: Vec<Result<Acc>> = thread::scope(|s| {
            let handles: Vec<_> = (0..opts.workers)
                .map(|w| {
                    let universe = &universe;
                    s.spawn(move || scan_chunks(space, universe, n, w, opts.workers))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        let mut acc = Acc::default();
        for part in parts {
            acc.merge(part?)?;
        }
        report.enumerated += acc.enumerated;
        report.evaluated += acc.evaluated;
        report.negative += acc.negative;
        if let Some((_, set, score)) = acc.best {
            report.records.push(ExtremalRecord {
                set,
                size: n,
                value: score.value,
                slack: score.slack,
                enumerated: acc.enumerated,
                evaluated: acc.evaluated,
                negative: acc.negative,
                severity: severity(space.objective, score.slack),
            });
        }
    }
    Ok(report)
}

/// Attempts at a starting set before giving up on the filters.
const START_ATTEMPTS: usize = 1000;

/// Consecutive rejected proposals after which the descent restarts.
const STALL: u32 = 500;

/// Hill descent over `n`-subsets (`space.n_lo == space.n_hi`) by swapping
/// one point of `A` for one box point outside it, accepting strict
/// improvements only. The start is `random_subset(d, n, m, seed)`, redrawn
/// from the same seed's stream while it fails the filters. After `STALL`
/// rejections in a row the descent restarts from a fresh draw; each restart
/// uses one iteration. The best set visited is returned.
pub fn local_search(space: &SearchSpace, seed: u64, iterations: u64) -> Result<ExtremalRecord> {
    let universe = space.universe()?;
    if space.n_lo != space.n_hi {
        return Err(Error::InvalidParameter(
            "local search needs a single cardinality".into(),
        ));
    }
    let (d, n) = (space.d, space.n_lo);
    let score = |a: &PointSet| {
        evaluate_objective(
            space.objective,
            a,
            space.require_full_dim,
            space.direction.as_ref(),
        )
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start_seed = seed;
    let fresh_start = |rng: &mut ChaCha8Rng, start_seed: &mut u64| -> Result<(PointSet, Score)> {
        for _ in 0..START_ATTEMPTS {
            let a = random_subset(d, n, space.m, *start_seed)?;
            *start_seed = rng.next_u64();
            if let Some(s) = score(&a)? {
                return Ok((a, s));
            }
        }
        Err(Error::InvalidParameter(
            "no random start satisfies the filters".into(),
        ))
    };
    let (mut cur, mut cur_score) = fresh_start(&mut rng, &mut start_seed)?;
    let (mut best, mut best_score) = (cur.clone(), cur_score);
    let (mut enumerated, mut evaluated) = (1u64, 1u64);
    let mut stalled = 0;
    if n < universe.len() {
        for _ in 0..iterations {
            if stalled == STALL {
                (cur, cur_score) = fresh_start(&mut rng, &mut start_seed)?;
                enumerated += 1;
                evaluated += 1;
                stalled = 0;
            } else {
                let out = rng.gen_range(0..n as u64) as usize;
                let incoming = loop {
                    let j = rng.gen_range(0..universe.len() as u64) as usize;
                    if !cur.contains(&universe[j]) {
                        break universe[j].clone();
                    }
                };
                let mut pts = cur.points().to_vec();
                pts[out] = incoming;
                let cand = PointSet::from_unsorted(d, pts);
                enumerated += 1;
                stalled += 1;
                if let Some(s) = score(&cand)? {
                    evaluated += 1;
                    if s.key() < cur_score.key() {
                        cur = cand;
                        cur_score = s;
                        stalled = 0;
                    }
                }
            }
            if cur_score.key() < best_score.key() {
                best = cur.clone();
                best_score = cur_score;
            }
        }
    }
    let (cur, cur_score) = (best, best_score);
    let negative = u64::from(
        cur_score
            .slack
            .is_some_and(|s| s < Rational::from_integer(0)),
    );
    Ok(ExtremalRecord {
        set: canonical_form(&cur)?,
        size: n,
        value: cur_score.value,
        slack: cur_score.slack,
        enumerated,
        evaluated,
        negative,
        severity: severity(space.objective, cur_score.slack),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::box_set;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn binomials_and_ranks() {
        assert_eq!(binom(27, 7), 888_030);
        assert_eq!(binom(4, 5), 0);
        assert_eq!(binom(1000, 500), u128::MAX);
        let mut idx = unrank(0, 6, 3);
        let mut rank = 0;
        loop {
            assert_eq!(unrank(rank, 6, 3), idx);
            rank += 1;
            if !next_combination(&mut idx, 6) {
                break;
            }
        }
        assert_eq!(rank, binom(6, 3));
    }

    #[test]
    fn triangle_in_square() {
        let space = SearchSpace::new(2, 1, 3, Objective::Bound(BoundKind::FhuDifference));
        let r = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        assert_eq!(r.enumerated, 4);
        let best = r.best().unwrap();
        assert_eq!(best.slack, Some(q(1, 1)));
        assert_eq!(best.set, set(&[&[0, 0], &[0, 1], &[1, 0]]));
        assert_eq!(best.severity, Severity::Ok);
    }

    #[test]
    fn unit_cube_single_candidate() {
        let space = SearchSpace::new(3, 1, 8, Objective::Bound(BoundKind::Stanchescu3d));
        let r = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        assert_eq!(r.enumerated, 1);
        let best = r.best().unwrap();
        assert_eq!(best.slack, Some(q(0, 1)));
        assert_eq!(best.set, box_set(3, 1).unwrap());
    }

    #[test]
    fn four_cube_conjecture() {
        let space = SearchSpace::new(4, 1, 16, Objective::Bound(BoundKind::Conjecture));
        let best = exhaustive_scan(&space, &ScanOptions::default())
            .unwrap()
            .records
            .remove(0);
        assert_eq!(best.slack, Some(q(-4, 3)));
        assert_eq!(best.severity, Severity::ConjectureFails);
    }

    #[test]
    fn workers_and_symmetry_agree() {
        let mut space = SearchSpace::new(2, 2, 4, Objective::Bound(BoundKind::FhuDifference));
        space.n_hi = 6;
        let one = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        for workers in [2, 3, 8] {
            let many = exhaustive_scan(
                &space,
                &ScanOptions {
                    workers,
                    ..Default::default()
                },
            );
            assert_eq!(many.unwrap(), one);
        }
        space.symmetry = true;
        let reduced = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        assert!(reduced.evaluated < one.evaluated);
        for (x, y) in reduced.records.iter().zip(&one.records) {
            assert_eq!((x.slack, &x.set), (y.slack, &y.set));
        }
    }

    #[test]
    fn records_reevaluate() {
        let mut space = SearchSpace::new(3, 1, 4, Objective::Bound(BoundKind::Diffln));
        space.n_hi = 6;
        let r = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        for rec in &r.records {
            assert_eq!(canonical_form(&rec.set).unwrap(), rec.set);
            let s = evaluate_objective(space.objective, &rec.set, true, None)
                .unwrap()
                .unwrap();
            assert_eq!((s.value, s.slack), (rec.value, rec.slack));
        }
    }

    #[test]
    fn budget_and_parameters() {
        let space = SearchSpace::new(3, 2, 7, Objective::DifferenceSize);
        let opts = ScanOptions {
            workers: 1,
            budget: 1000,
        };
        assert!(matches!(
            exhaustive_scan(&space, &opts),
            Err(Error::BudgetExceeded {
                candidates: 888_030,
                budget: 1000
            })
        ));
        assert!(
            exhaustive_scan(&SearchSpace::new(3, 2, 3, Objective::DifferenceSize), &opts).is_err()
        );
        let mut empty = SearchSpace::new(2, 1, 3, Objective::DifferenceSize);
        empty.n_lo = 4;
        assert!(exhaustive_scan(&empty, &opts).is_err());
    }

    #[test]
    fn objective_names() {
        assert_eq!(
            "difference_size".parse::<Objective>().unwrap(),
            Objective::DifferenceSize
        );
        assert_eq!(
            "conjecture".parse::<Objective>().unwrap(),
            Objective::Bound(BoundKind::Conjecture)
        );
        assert!("nope".parse::<Objective>().is_err());
    }

    #[test]
    fn local_search_examples() {
        let space = SearchSpace::new(2, 4, 6, Objective::DifferenceSize);
        let start = local_search(&space, 3, 0).unwrap();
        assert_eq!(start.enumerated, 1);
        let a = random_subset(2, 6, 4, 3).unwrap();
        if affine_dim(&a).unwrap() == 2 {
            assert_eq!(start.value, difference_set(&a, &a).unwrap().len());
        }
        let exact = exhaustive_scan(&space, &ScanOptions::default()).unwrap();
        assert_eq!(exact.records[0].value, 15);
        for seed in 0..10 {
            let first = local_search(&space, seed, 0).unwrap();
            let run = local_search(&space, seed, 3000).unwrap();
            assert!(run.value <= first.value);
            assert!(run.value <= 17, "{run:?}");
            assert_eq!(local_search(&space, seed, 3000).unwrap(), run);
        }
    }
}
