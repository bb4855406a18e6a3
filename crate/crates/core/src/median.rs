//! Support medians and related median constructions.
//!
//! A fuzzy number `A` is a support median of `𝒳` when `s_A(u, α)` is a
//! univariate median of `s_𝒳(u, α)` for every `(u, α)`. The set of all such
//! numbers is described by a [`MedianBand`]: one median interval per
//! direction and level. For a sample backend the band endpoints are piecewise
//! linear with kinks where two items cross, so the band grid contains every
//! item crossing in addition to the sample knots. Between band knots both
//! endpoints are linear, which makes membership checks exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::depth::{expected_distance, knot_values, push_crossing, sorted_unique};
use crate::distribution::{Backend, FuzzySample, LawView, MedianInterval};
use crate::error::{Error, Result};
use crate::fuzzy::{envelope_with_constant, lerp, AlphaGrid, Direction, FuzzyNumber, Location};
use crate::metrics::MetricOrder;

/// Per-level median intervals of `s_𝒳(+1, α)` and `s_𝒳(-1, α)`.
#[derive(Debug, Clone)]
pub struct MedianBand {
    grid: AlphaGrid,
    plus: Vec<MedianInterval>,
    minus: Vec<MedianInterval>,
}

impl MedianBand {
    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    /// Intervals for `u = +1` at each band knot.
    pub fn plus(&self) -> &[MedianInterval] {
        &self.plus
    }

    /// Intervals for `u = -1` at each band knot.
    pub fn minus(&self) -> &[MedianInterval] {
        &self.minus
    }

    fn side(&self, u: Direction) -> &[MedianInterval] {
        match u {
            Direction::Pos => &self.plus,
            Direction::Neg => &self.minus,
        }
    }

    /// Median interval at any level, interpolating between band knots.
    pub fn interval_at(&self, u: Direction, alpha: f64) -> MedianInterval {
        let side = self.side(u);
        match self.grid.locate(alpha) {
            Location::Knot(i) => side[i],
            Location::Cell(i, t) => MedianInterval {
                lo: lerp(side[i].lo, side[i + 1].lo, t),
                hi: lerp(side[i].hi, side[i + 1].hi, t),
            },
        }
    }

    /// True when every median is unique (within `tol`).
    pub fn is_pointwise_unique(&self, tol: f64) -> bool {
        self.plus
            .iter()
            .chain(&self.minus)
            .all(|m| m.width() <= tol)
    }

    fn build(grid: AlphaGrid, law_at: impl Fn(Direction, f64) -> MedianInterval + Sync) -> Self {
        let levels = grid.levels();
        let plus = levels
            .par_iter()
            .map(|&a| law_at(Direction::Pos, a))
            .collect();
        let minus = levels
            .par_iter()
            .map(|&a| law_at(Direction::Neg, a))
            .collect();
        Self { grid, plus, minus }
    }

    /// Number built from the band: `upper` interpolates the `+1` interval at
    /// fraction `t`, `lower` interpolates `[-hi₋, -lo₋]` at fraction `s`.
    fn member(&self, s: f64, t: f64) -> Result<FuzzyNumber> {
        let lower = self.minus.iter().map(|m| lerp(-m.hi, -m.lo, s)).collect();
        let upper = self.plus.iter().map(|m| lerp(m.lo, m.hi, t)).collect();
        FuzzyNumber::new(self.grid.clone(), lower, upper)
    }
}

/// Sample knots refined with every crossing between two items, in either
/// direction.
fn crossing_grid(sample: &FuzzySample) -> AlphaGrid {
    let grid = sample.grid();
    let levels = grid.levels();
    let mut extra = Vec::new();
    for u in Direction::BOTH {
        let vals: Vec<Vec<f64>> = sample
            .items()
            .iter()
            .map(|it| knot_values(it, grid, u))
            .collect();
        for i in 0..levels.len() - 1 {
            for (p, x) in vals.iter().enumerate() {
                for y in &vals[p + 1..] {
                    push_crossing(
                        &mut extra,
                        levels[i],
                        levels[i + 1],
                        x[i] - y[i],
                        x[i + 1] - y[i + 1],
                    );
                }
            }
        }
    }
    grid.with_points(sorted_unique(extra))
}

/// The band of support medians.
///
/// For a sample, the band lives on the sample grid refined with `levels` and
/// all item crossings. For a crisp analytic backend the band does not depend
/// on `α` and lives on `levels`.
pub fn support_median_band(backend: &Backend, levels: &AlphaGrid) -> MedianBand {
    match backend {
        Backend::Sample(s) => {
            let grid = crossing_grid(s).union(levels);
            MedianBand::build(grid, |u, a| {
                s.law_of(u, a).expect("alpha in range").median_interval()
            })
        }
        Backend::Crisp(_) => MedianBand::build(levels.clone(), |u, a| {
            backend.law(u, a).expect("alpha in range").median_interval()
        }),
    }
}

/// A level where a fuzzy number leaves the band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandViolation {
    pub u: i32,
    pub alpha: f64,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Outcome of [`band_contains`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BandCheck {
    pub violations: Vec<BandViolation>,
}

impl BandCheck {
    pub fn contains(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest distance to the band over all violations.
    pub fn worst(&self) -> f64 {
        self.violations
            .iter()
            .map(|v| (v.lo - v.value).max(v.value - v.hi))
            .fold(0.0, f64::max)
    }
}

/// Checks `s_A(u, α) ∈ [lo_u(α) - tol, hi_u(α) + tol]` on the union of the
/// band knots and the knots of `a`; both sides are linear in between, so
/// this decides membership for every `α ∈ [0, 1]`.
pub fn band_contains(band: &MedianBand, a: &FuzzyNumber, tol: f64) -> BandCheck {
    let grid = band.grid.union(a.grid());
    let mut violations = Vec::new();
    for u in Direction::BOTH {
        for &al in grid.levels() {
            let m = band.interval_at(u, al);
            let s = a.support_unchecked(u, al);
            if !m.contains(s, tol) {
                violations.push(BandViolation {
                    u: u.as_i32(),
                    alpha: al,
                    value: s,
                    lo: m.lo,
                    hi: m.hi,
                });
            }
        }
    }
    BandCheck { violations }
}

/// Sinova median: support function equal to the midpoint median everywhere.
pub fn median_si(backend: &Backend, levels: &AlphaGrid) -> FuzzyNumber {
    median_si_from_band(&support_median_band(backend, levels))
}

pub fn median_si_from_band(band: &MedianBand) -> FuzzyNumber {
    band.member(0.5, 0.5)
        .expect("midpoint medians of a one-dimensional variable form a fuzzy number")
}

/// Grzegorzewski median: `[m̲(inf 𝒳_α), m̄(sup 𝒳_α)]` at every level.
pub fn median_gr(backend: &Backend, levels: &AlphaGrid) -> FuzzyNumber {
    median_gr_from_band(&support_median_band(backend, levels))
}

pub fn median_gr_from_band(band: &MedianBand) -> FuzzyNumber {
    band.member(0.0, 1.0)
        .expect("extreme medians of cut endpoints form a fuzzy number")
}

/// Where a pool candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    MedianSi,
    MedianGr,
    BandCorner,
    InBand,
    OutOfBand,
    RandomEnvelope,
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub number: FuzzyNumber,
    pub kind: CandidateKind,
}

/// Seeded generator of candidate fuzzy numbers around a median band.
///
/// The pool always contains the Sinova and Grzegorzewski medians and the
/// valid band corners, followed by `in_band` random band members,
/// `out_of_band` numbers that leave the band by at least `1e-3` of the data
/// range on a set of positive measure, and `random` monotone envelopes drawn
/// inside the data range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateGenerator {
    pub seed: u64,
    pub in_band: usize,
    pub out_of_band: usize,
    pub random: usize,
}

impl CandidateGenerator {
    /// Splits `budget` random candidates 40/30/30 between in-band,
    /// out-of-band and random envelopes.
    pub fn with_budget(budget: usize, seed: u64) -> Self {
        let in_band = budget * 2 / 5;
        let out_of_band = budget * 3 / 10;
        Self {
            seed,
            in_band,
            out_of_band,
            random: budget - in_band - out_of_band,
        }
    }

    pub fn generate(&self, band: &MedianBand, range: (f64, f64)) -> Vec<Candidate> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let width = (range.1 - range.0).abs().max(1.0);
        let mut pool = vec![
            Candidate {
                number: median_si_from_band(band),
                kind: CandidateKind::MedianSi,
            },
            Candidate {
                number: median_gr_from_band(band),
                kind: CandidateKind::MedianGr,
            },
        ];
        for (s, t) in [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 0.5), (0.5, 1.0)] {
            if let Ok(number) = band.member(s, t) {
                pool.push(Candidate {
                    number,
                    kind: CandidateKind::BandCorner,
                });
            }
        }

        let mut members = Vec::with_capacity(self.in_band);
        for _ in 0..self.in_band {
            let number = random_member(band, &mut rng);
            members.push(number.clone());
            pool.push(Candidate {
                number,
                kind: CandidateKind::InBand,
            });
        }
        for k in 0..self.out_of_band {
            let base = if members.is_empty() {
                median_gr_from_band(band)
            } else {
                members[k % members.len()].clone()
            };
            let delta = width * rng.gen_range(1e-3..0.1);
            let number = leave_band(band, &base, delta, &mut rng);
            pool.push(Candidate {
                number,
                kind: CandidateKind::OutOfBand,
            });
        }
        let levels = band.grid.len().clamp(2, 51);
        let grid = AlphaGrid::uniform(levels).expect("at least two levels");
        for _ in 0..self.random {
            let number = random_envelope(&grid, range, &mut rng);
            pool.push(Candidate {
                number,
                kind: CandidateKind::RandomEnvelope,
            });
        }
        pool
    }
}

fn random_member(band: &MedianBand, rng: &mut ChaCha8Rng) -> FuzzyNumber {
    for _ in 0..32 {
        let (s, t) = (rng.gen::<f64>(), rng.gen::<f64>());
        if let Ok(a) = band.member(s, t) {
            return a;
        }
    }
    median_gr_from_band(band)
}

/// A number that violates the band by at least `delta` on a set of levels of
/// length at least 0.1.
fn leave_band(
    band: &MedianBand,
    base: &FuzzyNumber,
    delta: f64,
    rng: &mut ChaCha8Rng,
) -> FuzzyNumber {
    let levels = band.grid.levels();
    let (lower, upper) = (base.lower().to_vec(), base.upper().to_vec());
    let tail_start = levels.partition_point(|&a| a <= 0.9).max(1);
    let pivot = rng.gen_range(0..tail_start);
    let attempt = |mode: u32| -> Option<FuzzyNumber> {
        match mode {
            0 => {
                let up = band.plus.iter().map(|m| m.hi + delta).collect();
                FuzzyNumber::new(band.grid.clone(), lower.clone(), up).ok()
            }
            1 => {
                let lo = band.minus.iter().map(|m| -m.hi - delta).collect();
                FuzzyNumber::new(band.grid.clone(), lo, upper.clone()).ok()
            }
            2 => {
                let up = band.plus.iter().map(|m| m.lo - delta).collect();
                FuzzyNumber::new(band.grid.clone(), lower.clone(), up).ok()
            }
            3 => {
                let lo = band.minus.iter().map(|m| -m.lo + delta).collect();
                FuzzyNumber::new(band.grid.clone(), lo, upper.clone()).ok()
            }
            4 => {
                let c = band.plus[pivot].hi + delta;
                let (knots, up) = envelope_with_constant(levels, &upper, c, true);
                let grid = AlphaGrid::from_levels(knots).ok()?;
                let lo = base.resample(&grid).lower().to_vec();
                FuzzyNumber::new(grid, lo, up).ok()
            }
            _ => {
                let c = -band.minus[pivot].hi - delta;
                let (knots, lo) = envelope_with_constant(levels, &lower, c, false);
                let grid = AlphaGrid::from_levels(knots).ok()?;
                let up = base.resample(&grid).upper().to_vec();
                FuzzyNumber::new(grid, lo, up).ok()
            }
        }
    };
    let first = rng.gen_range(0..6);
    (0..6)
        .map(|k| (first + k) % 6)
        .find_map(attempt)
        .or_else(|| attempt(0))
        .expect("raising the upper endpoint always yields a fuzzy number")
}

fn random_envelope(grid: &AlphaGrid, range: (f64, f64), rng: &mut ChaCha8Rng) -> FuzzyNumber {
    let n = grid.len();
    let (mut lo, mut hi) = range;
    if hi <= lo {
        hi = lo + 1.0;
    }
    if rng.gen_bool(0.5) {
        let c = rng.gen_range(lo..=hi);
        let w = rng.gen_range(0.0..=0.5) * (hi - lo);
        lo = c - w;
        hi = c + w;
    }
    let mut draws: Vec<f64> = (0..2 * n)
        .map(|_| lo + (hi - lo) * rng.gen::<f64>())
        .collect();
    draws.sort_by(f64::total_cmp);
    let lower = draws[..n].to_vec();
    let mut upper = draws[n..].to_vec();
    upper.reverse();
    FuzzyNumber::new(grid.clone(), lower, upper).expect("sorted draws are nested")
}

/// Result of the brute-force 1-median search.
#[derive(Debug, Clone)]
pub struct OneMedianSearch {
    pub pool: Vec<Candidate>,
    /// `E[ρ₁(U, 𝒳)]` for every pool member.
    pub objectives: Vec<f64>,
    pub minimum: f64,
    /// Indices of candidates within the slack of the minimum.
    pub best: Vec<usize>,
}

/// Objective slack for membership in the minimizer set.
pub const ONE_MEDIAN_SLACK: f64 = 1e-9;

/// Minimizes `E[ρ₁(U, 𝒳)]` over a pool of `budget` generated candidates
/// (plus the deterministic band-derived ones).
pub fn brute_force_one_median(
    sample: &FuzzySample,
    generator: &CandidateGenerator,
    budget: usize,
) -> Result<OneMedianSearch> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be at least 1".into()));
    }
    let band = support_median_band(&Backend::Sample(sample.clone()), sample.grid());
    let gen = CandidateGenerator::with_budget(budget, generator.seed);
    let pool = gen.generate(&band, sample.data_range());
    Ok(one_median_over(sample, pool))
}

/// Minimizes `E[ρ₁(U, 𝒳)]` over the given pool.
pub fn one_median_over(sample: &FuzzySample, pool: Vec<Candidate>) -> OneMedianSearch {
    let objectives: Vec<f64> = pool
        .par_iter()
        .map(|c| expected_distance(&c.number, sample, MetricOrder::ONE))
        .collect();
    let minimum = objectives.iter().copied().fold(f64::INFINITY, f64::min);
    let best = objectives
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= minimum + ONE_MEDIAN_SLACK)
        .map(|(i, _)| i)
        .collect();
    OneMedianSearch {
        pool,
        objectives,
        minimum,
        best,
    }
}
