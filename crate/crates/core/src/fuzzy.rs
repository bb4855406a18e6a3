//! Fuzzy numbers represented by their alpha-level endpoints.
//!
//! A [`FuzzyNumber`] stores `inf A_α` and `sup A_α` at the knots of an
//! [`AlphaGrid`] and is piecewise linear in α between knots. The support
//! function is `s_A(+1, α) = sup A_α` and `s_A(-1, α) = -inf A_α`.
//!
//! Numbers built on different grids can be combined freely: binary
//! operations re-express both operands on the union of their knots, which is
//! exact for piecewise-linear endpoints.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default number of grid cells (`M`); the default grid has `M + 1` levels.
pub const DEFAULT_CELLS: usize = 100;

/// Tolerance used for componentwise equality of grid arrays.
pub const EQ_TOL: f64 = 1e-12;

/// Knots closer than this are treated as the same alpha level.
pub(crate) const KNOT_TOL: f64 = 1e-14;

fn scaled_tol(x: f64, y: f64) -> f64 {
    EQ_TOL * x.abs().max(y.abs()).max(1.0)
}

/// Sorted alpha levels, starting at 0 and ending at 1.
#[derive(Clone)]
pub struct AlphaGrid {
    levels: Arc<[f64]>,
}

/// Position of an alpha value relative to the grid knots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Location {
    Knot(usize),
    /// Strictly inside cell `[levels[i], levels[i + 1]]` at fraction `t`.
    Cell(usize, f64),
}

impl AlphaGrid {
    /// Uniform grid `α_i = i / M` with `level_count = M + 1` levels.
    pub fn uniform(level_count: usize) -> Result<Self> {
        if level_count < 2 {
            return Err(Error::InvalidParameter(format!(
                "alpha grid needs at least 2 levels, got {level_count}"
            )));
        }
        let m = (level_count - 1) as f64;
        let levels: Vec<f64> = (0..level_count).map(|i| i as f64 / m).collect();
        Ok(Self {
            levels: levels.into(),
        })
    }

    /// Arbitrary knots; must be strictly increasing from 0 to 1.
    pub fn from_levels(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "alpha grid needs at least 2 levels, got {}",
                levels.len()
            )));
        }
        if levels[0] != 0.0 || *levels.last().unwrap() != 1.0 {
            return Err(Error::InvalidParameter(
                "alpha grid must start at 0 and end at 1".into(),
            ));
        }
        if levels
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidParameter(
                "alpha levels must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            levels: levels.into(),
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of cells between consecutive levels.
    pub fn cells(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn same_as(&self, other: &AlphaGrid) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || self.levels[..] == other.levels[..]
    }

    /// Union of the knots of both grids.
    pub fn union(&self, other: &AlphaGrid) -> AlphaGrid {
        if self.same_as(other) {
            return self.clone();
        }
        self.with_points(other.levels.iter().copied())
    }

    /// This grid refined with additional interior points.
    pub fn with_points(&self, extra: impl IntoIterator<Item = f64>) -> AlphaGrid {
        let mut extra: Vec<f64> = extra
            .into_iter()
            .filter(|a| *a > 0.0 && *a < 1.0 && a.is_finite())
            .collect();
        if extra.is_empty() {
            return self.clone();
        }
        extra.sort_by(f64::total_cmp);
        let mut merged = Vec::with_capacity(self.levels.len() + extra.len());
        let (mut i, mut j) = (0, 0);
        while i < self.levels.len() || j < extra.len() {
            let next = if j >= extra.len() || (i < self.levels.len() && self.levels[i] <= extra[j])
            {
                i += 1;
                self.levels[i - 1]
            } else {
                j += 1;
                extra[j - 1]
            };
            match merged.last() {
                Some(&last) if next - last <= KNOT_TOL => {
                    // Keep exact 1.0 as the final knot.
                    if next == 1.0 {
                        *merged.last_mut().unwrap() = 1.0;
                    }
                }
                _ => merged.push(next),
            }
        }
        if merged.len() == self.levels.len() {
            return self.clone();
        }
        AlphaGrid {
            levels: merged.into(),
        }
    }

    pub(crate) fn locate(&self, alpha: f64) -> Location {
        let levels = &self.levels;
        let idx = levels.partition_point(|&l| l < alpha);
        if idx < levels.len() && levels[idx] == alpha {
            return Location::Knot(idx);
        }
        if idx == 0 {
            return Location::Knot(0);
        }
        if idx >= levels.len() {
            return Location::Knot(levels.len() - 1);
        }
        let (a0, a1) = (levels[idx - 1], levels[idx]);
        Location::Cell(idx - 1, (alpha - a0) / (a1 - a0))
    }
}

impl Default for AlphaGrid {
    fn default() -> Self {
        Self::uniform(DEFAULT_CELLS + 1).expect("default grid is valid")
    }
}

impl PartialEq for AlphaGrid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for AlphaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaGrid")
            .field("level_count", &self.levels.len())
            .finish()
    }
}

/// Element of the unit sphere of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Neg,
    Pos,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Pos, Direction::Neg];

    pub fn sign(self) -> f64 {
        match self {
            Direction::Pos => 1.0,
            Direction::Neg => -1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Direction::Pos),
            -1 => Ok(Direction::Neg),
            other => Err(Error::InvalidParameter(format!(
                "direction must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Direction::Pos => 1,
            Direction::Neg => -1,
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha {alpha} outside [0, 1]")))
    }
}

#[inline]
pub(crate) fn lerp(a: f64, b: f64, t: f64) -> f64 {
    if a == b {
        a
    } else {
        a + (b - a) * t
    }
}

/// A fuzzy number with compact, nested alpha-cuts.
#[derive(Debug, Clone)]
pub struct FuzzyNumber {
    grid: AlphaGrid,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl FuzzyNumber {
    /// Validates raw endpoint arrays against the grid.
    pub fn new(grid: AlphaGrid, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        for arr in [&lower, &upper] {
            if arr.len() != grid.len() {
                return Err(Error::GridMismatch {
                    expected: grid.len(),
                    found: arr.len(),
                });
            }
        }
        for i in 0..grid.len() {
            if !lower[i].is_finite() || !upper[i].is_finite() {
                return Err(Error::NotCompact { level: i });
            }
        }
        for i in 0..grid.len() {
            if lower[i] > upper[i] + scaled_tol(lower[i], upper[i]) {
                return Err(Error::EmptyCut { level: i });
            }
        }
        for i in 1..grid.len() {
            if lower[i] < lower[i - 1] - scaled_tol(lower[i], lower[i - 1])
                || upper[i] > upper[i - 1] + scaled_tol(upper[i], upper[i - 1])
            {
                return Err(Error::NotNested { level: i });
            }
        }
        Ok(Self { grid, lower, upper })
    }

    /// Triangular number `T(a, b, c)`.
    pub fn triangular(a: f64, b: f64, c: f64, grid: &AlphaGrid) -> Result<Self> {
        if !(a <= b && b <= c) {
            return Err(Error::InvalidParameter(format!(
                "triangular parameters must satisfy a <= b <= c, got ({a}, {b}, {c})"
            )));
        }
        Self::trapezoidal(a, b, b, c, grid)
    }

    /// Trapezoidal number with support `[a, d]` and core `[b, c]`.
    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64, grid: &AlphaGrid) -> Result<Self> {
        if !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidParameter(format!(
                "trapezoidal parameters must satisfy a <= b <= c <= d, got ({a}, {b}, {c}, {d})"
            )));
        }
        let lower = grid.levels().iter().map(|&al| lerp(a, b, al)).collect();
        let upper = grid.levels().iter().map(|&al| lerp(d, c, al)).collect();
        Self::new(grid.clone(), lower, upper)
    }

    /// Indicator of the crisp point `{x}`.
    pub fn crisp_point(x: f64, grid: &AlphaGrid) -> Result<Self> {
        Self::trapezoidal(x, x, x, x, grid)
    }

    /// Indicator of the crisp interval `[a, b]`.
    pub fn crisp_interval(a: f64, b: f64, grid: &AlphaGrid) -> Result<Self> {
        Self::trapezoidal(a, a, b, b, grid)
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    /// `inf A_α` at each grid level.
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// `sup A_α` at each grid level.
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower_at(&self, alpha: f64) -> f64 {
        self.interp(&self.lower, alpha)
    }

    pub fn upper_at(&self, alpha: f64) -> f64 {
        self.interp(&self.upper, alpha)
    }

    fn interp(&self, values: &[f64], alpha: f64) -> f64 {
        match self.grid.locate(alpha) {
            Location::Knot(i) => values[i],
            Location::Cell(i, t) => lerp(values[i], values[i + 1], t),
        }
    }

    /// Support function `s_A(u, α)`.
    pub fn support(&self, u: Direction, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        Ok(self.support_unchecked(u, alpha))
    }

    pub(crate) fn support_unchecked(&self, u: Direction, alpha: f64) -> f64 {
        match u {
            Direction::Pos => self.upper_at(alpha),
            Direction::Neg => -self.lower_at(alpha),
        }
    }

    /// Support values at every grid level for direction `u`.
    pub fn support_on_grid(&self, u: Direction) -> Vec<f64> {
        match u {
            Direction::Pos => self.upper.clone(),
            Direction::Neg => self.lower.iter().map(|x| -x).collect(),
        }
    }

    pub(crate) fn support_at_knot(&self, u: Direction, i: usize) -> f64 {
        match u {
            Direction::Pos => self.upper[i],
            Direction::Neg => -self.lower[i],
        }
    }

    /// The same number expressed on `grid`. Exact when `grid` contains every
    /// knot of the current grid.
    pub fn resample(&self, grid: &AlphaGrid) -> FuzzyNumber {
        if self.grid.same_as(grid) {
            return self.clone();
        }
        let lower = grid.levels().iter().map(|&a| self.lower_at(a)).collect();
        let upper = grid.levels().iter().map(|&a| self.upper_at(a)).collect();
        FuzzyNumber {
            grid: grid.clone(),
            lower,
            upper,
        }
    }

    /// Translation by a crisp constant.
    pub fn shifted(&self, by: f64) -> FuzzyNumber {
        FuzzyNumber {
            grid: self.grid.clone(),
            lower: self.lower.iter().map(|x| x + by).collect(),
            upper: self.upper.iter().map(|x| x + by).collect(),
        }
    }

    /// Componentwise equality within `tol`, compared on the union of both grids.
    pub fn approx_eq(&self, other: &FuzzyNumber, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Largest endpoint difference over the union of both grids.
    pub fn max_abs_diff(&self, other: &FuzzyNumber) -> f64 {
        let grid = self.grid.union(&other.grid);
        grid.levels()
            .iter()
            .map(|&a| {
                (self.lower_at(a) - other.lower_at(a))
                    .abs()
                    .max((self.upper_at(a) - other.upper_at(a)).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Levelwise convex combination: `s_C = λ s_A + (1 - λ) s_B`.
    pub fn blend(a: &FuzzyNumber, b: &FuzzyNumber, lambda: f64) -> Result<FuzzyNumber> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "blend weight {lambda} outside [0, 1]"
            )));
        }
        let grid = a.grid.union(&b.grid);
        let (a, b) = (a.resample(&grid), b.resample(&grid));
        let mix = |x: f64, y: f64| lambda * x + (1.0 - lambda) * y;
        let lower = a
            .lower
            .iter()
            .zip(&b.lower)
            .map(|(&x, &y)| mix(x, y))
            .collect();
        let upper = a
            .upper
            .iter()
            .zip(&b.upper)
            .map(|(&x, &y)| mix(x, y))
            .collect();
        FuzzyNumber::new(grid, lower, upper)
    }

    /// Smallest and largest value of the 0-cut.
    pub fn support_range(&self) -> (f64, f64) {
        (self.lower[0], self.upper[0])
    }
}

/// Checks raw arrays for membership in the class of fuzzy numbers.
pub fn validate(lower: Vec<f64>, upper: Vec<f64>, grid: &AlphaGrid) -> Result<FuzzyNumber> {
    FuzzyNumber::new(grid.clone(), lower, upper)
}

/// Pointwise max (`take_max`) or min of a piecewise-linear function with a
/// constant, inserting the crossing knots so the result stays exact.
pub(crate) fn envelope_with_constant(
    levels: &[f64],
    values: &[f64],
    c: f64,
    take_max: bool,
) -> (Vec<f64>, Vec<f64>) {
    let pick = |v: f64| if take_max { v.max(c) } else { v.min(c) };
    let mut out_levels = vec![levels[0]];
    let mut out_values = vec![pick(values[0])];
    for i in 0..levels.len() - 1 {
        let (d0, d1) = (values[i] - c, values[i + 1] - c);
        if d0 * d1 < 0.0 {
            let t = d0 / (d0 - d1);
            let a = lerp(levels[i], levels[i + 1], t);
            if a - out_levels.last().unwrap() > KNOT_TOL && levels[i + 1] - a > KNOT_TOL {
                out_levels.push(a);
                out_values.push(c);
            }
        }
        out_levels.push(levels[i + 1]);
        out_values.push(pick(values[i + 1]));
    }
    (out_levels, out_values)
}
