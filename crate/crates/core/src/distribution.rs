//! Univariate laws of the support process `s_𝒳(u, α)`.
//!
//! Two backends describe a fuzzy random variable: a weighted finite sample of
//! fuzzy numbers ([`FuzzySample`]) and a crisp random variable given by an
//! analytic piecewise-linear CDF with point masses ([`ScalarCdf`]). Both
//! expose, for every `(u, α)`, a univariate law through [`LawView`].

use crate::error::{Error, Result};
use crate::fuzzy::{check_alpha, lerp, AlphaGrid, Direction, FuzzyNumber, Location, EQ_TOL};

/// Slack when comparing a cumulative mass with one half.
pub(crate) const HALF_TOL: f64 = 1e-12;

/// Atoms closer than this are merged.
pub(crate) const TIE_TOL: f64 = 1e-12;

/// Tolerance on the total mass of a weight vector.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[inline]
fn tie_tol(t: f64) -> f64 {
    TIE_TOL * t.abs().max(1.0)
}

/// Closed interval `[lo, hi]` of univariate medians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianInterval {
    pub lo: f64,
    pub hi: f64,
}

impl MedianInterval {
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    /// Interval of `-X` given the interval of `X`.
    pub fn reflected(&self) -> MedianInterval {
        MedianInterval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

/// Read access to a univariate law.
pub trait LawView {
    /// `P(X ≤ t)`.
    fn cdf(&self, t: f64) -> f64;

    /// `P(X < t)`.
    fn left_limit(&self, t: f64) -> f64;

    fn point_mass(&self, t: f64) -> f64 {
        (self.cdf(t) - self.left_limit(t)).max(0.0)
    }

    /// `[inf{t : F(t) ≥ ½}, sup{t : P(X ≥ t) ≥ ½}]`.
    fn median_interval(&self) -> MedianInterval;

    fn median_mid(&self) -> f64 {
        self.median_interval().mid()
    }

    /// Midpoint median of `|X - median_mid|`.
    fn mad(&self) -> f64;
}

fn check_weights(values: &[f64], weights: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Domain("empty input".into()));
    }
    if values.len() != weights.len() {
        return Err(Error::InvalidParameter(format!(
            "{} values but {} weights",
            values.len(),
            weights.len()
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite value {v}")));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "weights must be positive, got {w}"
        )));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL * weights.len().max(1) as f64 {
        return Err(Error::InvalidParameter(format!(
            "weights must sum to 1, got {total}"
        )));
    }
    Ok(())
}

/// Finite law: sorted distinct atoms with positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw {
    atoms: Vec<f64>,
    masses: Vec<f64>,
}

impl DiscreteLaw {
    /// Builds the law from raw values and weights, merging near-ties.
    pub fn new(values: &[f64], weights: &[f64]) -> Result<Self> {
        check_weights(values, weights)?;
        Ok(Self::from_unchecked(values, weights))
    }

    pub(crate) fn from_unchecked(values: &[f64], weights: &[f64]) -> Self {
        let mut pairs: Vec<(f64, f64)> = values
            .iter()
            .copied()
            .zip(weights.iter().copied())
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut masses: Vec<f64> = Vec::with_capacity(pairs.len());
        for (x, w) in pairs {
            match atoms.last() {
                Some(&last) if x - last <= tie_tol(x) => *masses.last_mut().unwrap() += w,
                _ => {
                    atoms.push(x);
                    masses.push(w);
                }
            }
        }
        Self { atoms, masses }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    fn total(&self) -> f64 {
        self.masses.iter().sum()
    }
}

impl LawView for DiscreteLaw {
    fn cdf(&self, t: f64) -> f64 {
        let end = self.atoms.partition_point(|&x| x <= t + tie_tol(t));
        self.masses[..end].iter().sum()
    }

    fn left_limit(&self, t: f64) -> f64 {
        let end = self.atoms.partition_point(|&x| x < t - tie_tol(t));
        self.masses[..end].iter().sum()
    }

    fn median_interval(&self) -> MedianInterval {
        let total = self.total();
        let half = 0.5 * total - HALF_TOL;
        let mut cum = 0.0;
        let mut lo = *self.atoms.last().unwrap();
        for (x, m) in self.atoms.iter().zip(&self.masses) {
            cum += m;
            if cum >= half {
                lo = *x;
                break;
            }
        }
        let mut tail = 0.0;
        let mut hi = self.atoms[0];
        for (x, m) in self.atoms.iter().zip(&self.masses).rev() {
            tail += m;
            if tail >= half {
                hi = *x;
                break;
            }
        }
        MedianInterval { lo, hi }
    }

    fn mad(&self) -> f64 {
        let med = self.median_mid();
        let deviations: Vec<f64> = self.atoms.iter().map(|x| (x - med).abs()).collect();
        DiscreteLaw::from_unchecked(&deviations, &self.masses).median_mid()
    }
}

/// Interval of weighted medians of a finite law.
pub fn weighted_median_interval(values: &[f64], weights: &[f64]) -> Result<MedianInterval> {
    Ok(DiscreteLaw::new(values, weights)?.median_interval())
}

/// Midpoint of the weighted median interval.
pub fn median_mid(values: &[f64], weights: &[f64]) -> Result<f64> {
    Ok(weighted_median_interval(values, weights)?.mid())
}

/// Weighted median absolute deviation about the midpoint median.
pub fn weighted_mad(values: &[f64], weights: &[f64]) -> Result<f64> {
    Ok(DiscreteLaw::new(values, weights)?.mad())
}

/// One knot of a piecewise-linear CDF: left limit and value at `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub x: f64,
    pub f_left: f64,
    pub f_right: f64,
}

/// Piecewise-linear distribution function with point masses at knots.
///
/// Between consecutive knots `F` interpolates linearly from `f_right` of the
/// left knot to `f_left` of the right knot. `F = 0` before the first knot and
/// `F = 1` from the last knot on.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarCdf {
    points: Vec<Breakpoint>,
}

const CDF_TOL: f64 = 1e-12;

impl ScalarCdf {
    pub fn new(points: Vec<Breakpoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "cdf needs at least one breakpoint".into(),
            ));
        }
        for (k, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.f_left.is_finite() && p.f_right.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite breakpoint {k}"
                )));
            }
            if p.f_left < -CDF_TOL || p.f_right > 1.0 + CDF_TOL || p.f_left > p.f_right + CDF_TOL {
                return Err(Error::InvalidParameter(format!(
                    "breakpoint {k}: need 0 <= F_left <= F_right <= 1"
                )));
            }
        }
        for (k, w) in points.windows(2).enumerate() {
            if w[0].x.partial_cmp(&w[1].x) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidParameter(format!(
                    "breakpoint {}: x must be strictly increasing",
                    k + 1
                )));
            }
            if w[0].f_right > w[1].f_left + CDF_TOL {
                return Err(Error::InvalidParameter(format!(
                    "breakpoint {}: F decreases",
                    k + 1
                )));
            }
        }
        if points[0].f_left.abs() > CDF_TOL {
            return Err(Error::InvalidParameter(
                "F must vanish below the first breakpoint".into(),
            ));
        }
        if (points.last().unwrap().f_right - 1.0).abs() > CDF_TOL {
            return Err(Error::InvalidParameter(
                "F must reach 1 at the last breakpoint".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    /// True if some breakpoint carries positive mass.
    pub fn has_jumps(&self) -> bool {
        self.points.iter().any(|p| p.f_right - p.f_left > CDF_TOL)
    }

    /// True if the whole mass sits on one point.
    pub fn is_degenerate(&self) -> bool {
        self.points
            .iter()
            .any(|p| p.f_right - p.f_left >= 1.0 - CDF_TOL)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.points[0].x, self.points.last().unwrap().x)
    }

    pub fn cdf(&self, t: f64) -> f64 {
        let pts = &self.points;
        let k = pts.partition_point(|p| p.x <= t);
        if k == 0 {
            return 0.0;
        }
        let left = &pts[k - 1];
        if left.x == t || k == pts.len() {
            return left.f_right;
        }
        let right = &pts[k];
        lerp(
            left.f_right,
            right.f_left,
            (t - left.x) / (right.x - left.x),
        )
    }

    pub fn left_limit(&self, t: f64) -> f64 {
        let pts = &self.points;
        let j = pts.partition_point(|p| p.x < t);
        if j < pts.len() && pts[j].x == t {
            return pts[j].f_left;
        }
        if j == 0 {
            return 0.0;
        }
        if j == pts.len() {
            return pts[j - 1].f_right;
        }
        let (left, right) = (&pts[j - 1], &pts[j]);
        lerp(
            left.f_right,
            right.f_left,
            (t - left.x) / (right.x - left.x),
        )
    }

    pub fn median_interval(&self) -> MedianInterval {
        let pts = &self.points;
        let target = 0.5;
        let lo = 'lo: {
            for k in 0..pts.len() {
                if k > 0 && pts[k].f_left >= target - HALF_TOL {
                    let (a, b) = (&pts[k - 1], &pts[k]);
                    let t = (target - a.f_right) / (b.f_left - a.f_right);
                    break 'lo lerp(a.x, b.x, t.clamp(0.0, 1.0));
                }
                if pts[k].f_right >= target - HALF_TOL {
                    break 'lo pts[k].x;
                }
            }
            pts.last().unwrap().x
        };
        let hi = 'hi: {
            for j in (0..pts.len()).rev() {
                if pts[j].f_left <= target + HALF_TOL {
                    if j + 1 == pts.len() || pts[j].f_right > target + HALF_TOL {
                        break 'hi pts[j].x;
                    }
                    let (a, b) = (&pts[j], &pts[j + 1]);
                    let t = (target - a.f_right) / (b.f_left - a.f_right);
                    break 'hi lerp(a.x, b.x, t.clamp(0.0, 1.0));
                }
            }
            pts[0].x
        };
        MedianInterval { lo, hi: hi.max(lo) }
    }

    /// Median absolute deviation about the midpoint median.
    pub fn mad(&self) -> f64 {
        let m = self.median_interval().mid();
        let (x0, x1) = self.range();
        let span = (x1 - m).abs().max((m - x0).abs()) + 1.0;
        // P(|X - m| ≤ d) and P(|X - m| < d).
        let closed = |d: f64| self.cdf(m + d) - self.left_limit(m - d);
        let open = |d: f64| (self.left_limit(m + d) - self.cdf(m - d)).max(0.0);

        let lo = if closed(0.0) >= 0.5 - HALF_TOL {
            0.0
        } else {
            bisect(0.0, span, |d| closed(d) >= 0.5 - HALF_TOL)
        };
        // Largest d with P(|X - m| ≥ d) ≥ ½.
        let hi = bisect(0.0, span, |d| open(d) > 0.5 + HALF_TOL);
        0.5 * (lo + hi.max(lo))
    }
}

/// Smallest point of `[lo, hi]` where a monotone predicate switches to true.
fn bisect(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Law of `u·X` for a crisp random variable `X` with analytic CDF.
#[derive(Debug, Clone, Copy)]
pub struct CrispLaw<'a> {
    cdf: &'a ScalarCdf,
    u: Direction,
}

impl<'a> CrispLaw<'a> {
    pub fn direction(&self) -> Direction {
        self.u
    }

    /// Breakpoints of the law of `u·X`, increasing.
    pub fn knots(&self) -> Vec<f64> {
        let xs = self.cdf.breakpoints().iter().map(|p| p.x);
        match self.u {
            Direction::Pos => xs.collect(),
            Direction::Neg => {
                let mut v: Vec<f64> = xs.map(|x| -x).collect();
                v.reverse();
                v
            }
        }
    }
}

impl LawView for CrispLaw<'_> {
    fn cdf(&self, t: f64) -> f64 {
        match self.u {
            Direction::Pos => self.cdf.cdf(t),
            Direction::Neg => 1.0 - self.cdf.left_limit(-t),
        }
    }

    fn left_limit(&self, t: f64) -> f64 {
        match self.u {
            Direction::Pos => self.cdf.left_limit(t),
            Direction::Neg => 1.0 - self.cdf.cdf(-t),
        }
    }

    fn median_interval(&self) -> MedianInterval {
        let m = self.cdf.median_interval();
        match self.u {
            Direction::Pos => m,
            Direction::Neg => m.reflected(),
        }
    }

    fn mad(&self) -> f64 {
        self.cdf.mad()
    }
}

/// Law of `u·X` where `𝒳 = I_{X}` is crisp; independent of `α`.
pub fn law_of_crisp(cdf: &ScalarCdf, u: Direction, alpha: f64) -> Result<CrispLaw<'_>> {
    check_alpha(alpha)?;
    Ok(CrispLaw { cdf, u })
}

/// Weighted finite sample of fuzzy numbers on a common grid.
#[derive(Debug, Clone)]
pub struct FuzzySample {
    grid: AlphaGrid,
    items: Vec<FuzzyNumber>,
    weights: Vec<f64>,
}

impl FuzzySample {
    /// Items are re-expressed on the union of their grids.
    pub fn new(items: Vec<FuzzyNumber>, weights: Vec<f64>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Domain("sample has no items".into()));
        }
        let placeholder = vec![0.0; items.len()];
        check_weights(&placeholder, &weights)?;
        let grid = items
            .iter()
            .skip(1)
            .fold(items[0].grid().clone(), |g, it| g.union(it.grid()));
        let items = items.into_iter().map(|it| it.resample(&grid)).collect();
        Ok(Self {
            grid,
            items,
            weights,
        })
    }

    /// Equal weights.
    pub fn uniform(items: Vec<FuzzyNumber>) -> Result<Self> {
        let n = items.len().max(1);
        Self::new(items, vec![1.0 / n as f64; n])
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    pub fn items(&self) -> &[FuzzyNumber] {
        &self.items
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// All items coincide: the sample is a point mass.
    pub fn is_degenerate(&self) -> bool {
        self.items[1..]
            .iter()
            .all(|it| it.approx_eq(&self.items[0], EQ_TOL))
    }

    /// Support values of every item at `(u, α)`, in item order.
    pub fn support_values(&self, u: Direction, alpha: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.items.len());
        self.support_values_into(u, alpha, &mut out);
        out
    }

    pub(crate) fn support_values_into(&self, u: Direction, alpha: f64, out: &mut Vec<f64>) {
        out.clear();
        let loc = self.grid.locate(alpha);
        out.extend(self.items.iter().map(|it| match loc {
            Location::Knot(i) => it.support_at_knot(u, i),
            Location::Cell(i, t) => lerp(it.support_at_knot(u, i), it.support_at_knot(u, i + 1), t),
        }));
    }

    /// Smallest 0-cut lower endpoint and largest 0-cut upper endpoint.
    pub fn data_range(&self) -> (f64, f64) {
        self.items
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), it| {
                let (a, b) = it.support_range();
                (lo.min(a), hi.max(b))
            })
    }

    /// Discrete law of `s_𝒳(u, α)` (ties merged).
    pub fn law_of(&self, u: Direction, alpha: f64) -> Result<DiscreteLaw> {
        check_alpha(alpha)?;
        Ok(DiscreteLaw::from_unchecked(
            &self.support_values(u, alpha),
            &self.weights,
        ))
    }
}

/// Law of `s_𝒳(u, α)` from either backend.
#[derive(Debug, Clone)]
pub enum Law<'a> {
    Discrete(DiscreteLaw),
    Crisp(CrispLaw<'a>),
}

impl LawView for Law<'_> {
    fn cdf(&self, t: f64) -> f64 {
        match self {
            Law::Discrete(l) => l.cdf(t),
            Law::Crisp(l) => l.cdf(t),
        }
    }

    fn left_limit(&self, t: f64) -> f64 {
        match self {
            Law::Discrete(l) => l.left_limit(t),
            Law::Crisp(l) => l.left_limit(t),
        }
    }

    fn median_interval(&self) -> MedianInterval {
        match self {
            Law::Discrete(l) => l.median_interval(),
            Law::Crisp(l) => l.median_interval(),
        }
    }

    fn mad(&self) -> f64 {
        match self {
            Law::Discrete(l) => l.mad(),
            Law::Crisp(l) => l.mad(),
        }
    }
}

/// A fuzzy random variable, described by the laws of its support process.
#[derive(Debug, Clone)]
pub enum Backend {
    Sample(FuzzySample),
    /// `𝒳 = I_{X}` for a crisp `X` with the given CDF.
    Crisp(ScalarCdf),
}

impl Backend {
    pub fn law(&self, u: Direction, alpha: f64) -> Result<Law<'_>> {
        match self {
            Backend::Sample(s) => s.law_of(u, alpha).map(Law::Discrete),
            Backend::Crisp(c) => law_of_crisp(c, u, alpha).map(Law::Crisp),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        match self {
            Backend::Sample(s) => s.is_degenerate(),
            Backend::Crisp(c) => c.is_degenerate(),
        }
    }

    pub fn as_sample(&self) -> Option<&FuzzySample> {
        match self {
            Backend::Sample(s) => Some(s),
            Backend::Crisp(_) => None,
        }
    }
}

impl From<FuzzySample> for Backend {
    fn from(s: FuzzySample) -> Self {
        Backend::Sample(s)
    }
}

impl From<ScalarCdf> for Backend {
    fn from(c: ScalarCdf) -> Self {
        Backend::Crisp(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq4() -> Vec<f64> {
        vec![0.25; 4]
    }

    pub(crate) fn example_cdf() -> ScalarCdf {
        ScalarCdf::new(vec![
            Breakpoint {
                x: 0.0,
                f_left: 0.0,
                f_right: 0.0,
            },
            Breakpoint {
                x: 2.0,
                f_left: 0.29,
                f_right: 0.49,
            },
            Breakpoint {
                x: 53.0,
                f_left: 1.0,
                f_right: 1.0,
            },
        ])
        .unwrap()
    }

    #[test]
    fn median_interval_examples() {
        for al in [0.0, 0.3, 1.0] {
            let m = weighted_median_interval(&[3.0 - al, 4.0, 5.0, 7.0 - al], &eq4()).unwrap();
            assert_eq!(m, MedianInterval { lo: 4.0, hi: 5.0 });
            let m = weighted_median_interval(&[-1.0 - al, -4.0, -6.0 - al, -9.0], &eq4()).unwrap();
            assert_eq!(
                m,
                MedianInterval {
                    lo: -6.0 - al,
                    hi: -4.0
                }
            );
        }
        let m = weighted_median_interval(&[7.0], &[1.0]).unwrap();
        assert_eq!(m, MedianInterval { lo: 7.0, hi: 7.0 });
    }

    #[test]
    fn median_interval_rejects_empty_and_bad_weights() {
        assert!(matches!(
            weighted_median_interval(&[], &[]),
            Err(Error::Domain(_))
        ));
        assert!(weighted_median_interval(&[1.0, 2.0], &[0.5, 0.6]).is_err());
        assert!(weighted_median_interval(&[1.0, 2.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn median_mid_examples() {
        assert_eq!(median_mid(&[1.0, 3.0], &[0.5, 0.5]).unwrap(), 2.0);
        assert_eq!(median_mid(&[0.0, 2.0], &[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(median_mid(&[5.0], &[1.0]).unwrap(), 5.0);
    }

    #[test]
    fn mad_examples() {
        assert_eq!(weighted_mad(&[1.0, 3.0], &[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(weighted_mad(&[4.2], &[1.0]).unwrap(), 0.0);
        let third = 1.0 / 3.0;
        assert_eq!(
            weighted_mad(&[0.0, 0.0, 10.0], &[third, third, third]).unwrap(),
            0.0
        );
        assert!(matches!(weighted_mad(&[], &[]), Err(Error::Domain(_))));
    }

    #[test]
    fn weighted_median_uses_mass_not_count() {
        // F(1) = .2, F(2) = .5, F(3) = 1.
        let m = weighted_median_interval(&[1.0, 2.0, 3.0], &[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(m, MedianInterval { lo: 2.0, hi: 3.0 });
        let m = weighted_median_interval(&[1.0, 2.0, 3.0], &[0.6, 0.2, 0.2]).unwrap();
        assert_eq!(m, MedianInterval { lo: 1.0, hi: 1.0 });
    }

    #[test]
    fn ties_are_merged() {
        let law = DiscreteLaw::new(&[1.0, 1.0 + 1e-14, 2.0], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(law.atoms().len(), 2);
        assert_eq!(law.point_mass(1.0), 0.5);
    }

    #[test]
    fn example_cdf_values() {
        let c = example_cdf();
        assert!((c.left_limit(2.0) - 0.29).abs() < 1e-15);
        assert!((c.cdf(2.0) - 0.49).abs() < 1e-15);
        let law = law_of_crisp(&c, Direction::Pos, 0.0).unwrap();
        assert!((law.point_mass(2.0) - 0.2).abs() < 1e-15);
        assert!((c.cdf(3.0) - 0.5).abs() < 1e-15);
        assert!((c.cdf(1.0) - 0.145).abs() < 1e-15);
        assert!((c.cdf(20.0) - 0.67).abs() < 1e-15);
        assert_eq!(c.cdf(-1.0), 0.0);
        assert_eq!(c.cdf(60.0), 1.0);
        let m = c.median_interval();
        assert!((m.lo - 3.0).abs() < 1e-12 && (m.hi - 3.0).abs() < 1e-12);
    }

    #[test]
    fn reflected_law_keeps_atoms() {
        let c = example_cdf();
        let neg = law_of_crisp(&c, Direction::Neg, 0.4).unwrap();
        assert!((neg.point_mass(-2.0) - 0.2).abs() < 1e-15);
        // P(-X ≤ -2) = P(X ≥ 2) = 1 - .29.
        assert!((neg.cdf(-2.0) - 0.71).abs() < 1e-15);
        let m = neg.median_interval();
        assert!((m.lo + 3.0).abs() < 1e-12 && (m.hi + 3.0).abs() < 1e-12);
    }

    #[test]
    fn crisp_mad_matches_brute_force() {
        // Uniform on [0, 4]: median 2, MAD 1.
        let c = ScalarCdf::new(vec![
            Breakpoint {
                x: 0.0,
                f_left: 0.0,
                f_right: 0.0,
            },
            Breakpoint {
                x: 4.0,
                f_left: 1.0,
                f_right: 1.0,
            },
        ])
        .unwrap();
        assert!((c.mad() - 1.0).abs() < 1e-12);
        // Two atoms at 1 and 3: median interval [1, 3], mid 2, |X - 2| = 1.
        let c = ScalarCdf::new(vec![
            Breakpoint {
                x: 1.0,
                f_left: 0.0,
                f_right: 0.5,
            },
            Breakpoint {
                x: 3.0,
                f_left: 0.5,
                f_right: 1.0,
            },
        ])
        .unwrap();
        let m = c.median_interval();
        assert_eq!((m.lo, m.hi), (1.0, 3.0));
        assert!((c.mad() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_validation() {
        let bad = ScalarCdf::new(vec![
            Breakpoint {
                x: 0.0,
                f_left: 0.0,
                f_right: 0.6,
            },
            Breakpoint {
                x: 1.0,
                f_left: 0.5,
                f_right: 1.0,
            },
        ]);
        assert!(bad.is_err());
        let bad = ScalarCdf::new(vec![Breakpoint {
            x: 0.0,
            f_left: 0.0,
            f_right: 0.9,
        }]);
        assert!(bad.is_err());
        let point = ScalarCdf::new(vec![Breakpoint {
            x: 0.0,
            f_left: 0.0,
            f_right: 1.0,
        }])
        .unwrap();
        assert!(point.is_degenerate());
        assert!(!example_cdf().is_degenerate());
        assert!(example_cdf().has_jumps());
    }

    #[test]
    fn law_of_sample() {
        let grid = AlphaGrid::default();
        let items = vec![
            FuzzyNumber::triangular(1.0, 2.0, 3.0, &grid).unwrap(),
            FuzzyNumber::crisp_point(4.0, &grid).unwrap(),
            FuzzyNumber::crisp_point(5.0, &grid).unwrap(),
            FuzzyNumber::triangular(6.0, 6.0, 7.0, &grid).unwrap(),
        ];
        let s = FuzzySample::uniform(items).unwrap();
        let law = s.law_of(Direction::Pos, 0.0).unwrap();
        assert_eq!(law.atoms(), &[3.0, 4.0, 5.0, 7.0]);
        assert_eq!(law.masses(), &[0.25; 4]);

        let a = FuzzyNumber::triangular(0.0, 1.0, 2.0, &grid).unwrap();
        let delta = FuzzySample::uniform(vec![a.clone()]).unwrap();
        let law = delta.law_of(Direction::Neg, 0.5).unwrap();
        assert_eq!(law.atoms(), &[-0.5]);
        assert_eq!(law.masses(), &[1.0]);

        let pair = FuzzySample::uniform(vec![
            FuzzyNumber::crisp_point(1.0, &grid).unwrap(),
            FuzzyNumber::crisp_point(3.0, &grid).unwrap(),
        ])
        .unwrap();
        for u in Direction::BOTH {
            let law = pair.law_of(u, 0.7).unwrap();
            let mut expect = [u.sign(), 3.0 * u.sign()];
            expect.sort_by(f64::total_cmp);
            assert_eq!(law.atoms(), &expect[..]);
        }
        assert!(s.law_of(Direction::Pos, 2.0).is_err());
    }
}
