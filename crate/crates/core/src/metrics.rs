//! L^r-type distances between support functions.
//!
//! `ρ_r(A, B) = ( ½ ∫₀¹ |Δ₊(α)|^r dα + ½ ∫₀¹ |Δ₋(α)|^r dα )^{1/r}` where
//! `Δ_u = s_A(u, ·) - s_B(u, ·)`. The two directions of the real line carry
//! weight one half each, so crisp points are at distance `|x - y|`.
//!
//! On every grid cell `Δ_u` is linear. Cells are split at the sign change and
//! each piece is integrated in closed form, so the result is exact up to
//! rounding for every order `r`.

use crate::error::{Error, Result};
use crate::fuzzy::{Direction, FuzzyNumber};

/// Order `r ≥ 1` of the distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricOrder(f64);

impl MetricOrder {
    pub const ONE: MetricOrder = MetricOrder(1.0);
    pub const TWO: MetricOrder = MetricOrder(2.0);

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r >= 1.0 {
            Ok(Self(r))
        } else {
            Err(Error::InvalidParameter(format!(
                "metric order must be a finite real >= 1, got {r}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for MetricOrder {
    fn default() -> Self {
        Self::ONE
    }
}

/// `∫₀¹ |a + (b - a) t|^r dt` for `a`, `b` of the same sign (or zero).
fn same_sign_power_integral(a: f64, b: f64, r: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    if r == 1.0 {
        return 0.5 * (a + b);
    }
    if r == 2.0 {
        return (a * a + a * b + b * b) / 3.0;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    if hi - lo > 1e-6 * hi {
        (hi.powf(r + 1.0) - lo.powf(r + 1.0)) / ((r + 1.0) * (hi - lo))
    } else {
        // Nearly constant integrand: 3-point Gauss-Legendre.
        const NODES: [f64; 3] = [0.112_701_665_379_258_3, 0.5, 0.887_298_334_620_741_7];
        const WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
        NODES
            .iter()
            .zip(WEIGHTS)
            .map(|(&t, w)| w * (lo + (hi - lo) * t).powf(r))
            .sum()
    }
}

/// `∫₀¹ |d0 + (d1 - d0) t|^r dt`, splitting at the sign change.
pub(crate) fn linear_abs_power_integral(d0: f64, d1: f64, r: f64) -> f64 {
    if d0 * d1 >= 0.0 {
        return same_sign_power_integral(d0, d1, r);
    }
    let t = d0 / (d0 - d1);
    t * same_sign_power_integral(d0, 0.0, r) + (1.0 - t) * same_sign_power_integral(0.0, d1, r)
}

/// `∫₀¹ |s_A(u, α) - s_B(u, α)|^r dα` for both directions; returns the
/// half-weighted sum (before taking the r-th root).
fn mean_power_gap(a: &FuzzyNumber, b: &FuzzyNumber, r: f64) -> f64 {
    let grid = a.grid().union(b.grid());
    let (a, b) = (a.resample(&grid), b.resample(&grid));
    let levels = grid.levels();
    let mut total = 0.0;
    for u in Direction::BOTH {
        let mut acc = 0.0;
        for i in 0..levels.len() - 1 {
            let d0 = a.support_at_knot(u, i) - b.support_at_knot(u, i);
            let d1 = a.support_at_knot(u, i + 1) - b.support_at_knot(u, i + 1);
            acc += (levels[i + 1] - levels[i]) * linear_abs_power_integral(d0, d1, r);
        }
        total += 0.5 * acc;
    }
    total
}

/// The `ρ_r` distance.
pub fn rho(a: &FuzzyNumber, b: &FuzzyNumber, r: MetricOrder) -> f64 {
    let r = r.get();
    let m = mean_power_gap(a, b, r);
    if r == 1.0 {
        m
    } else if r == 2.0 {
        m.sqrt()
    } else {
        m.powf(1.0 / r)
    }
}

/// `ρ₁`.
pub fn rho1(a: &FuzzyNumber, b: &FuzzyNumber) -> f64 {
    rho(a, b, MetricOrder::ONE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::AlphaGrid;

    /// Midpoint Riemann sum of the defining integral.
    fn riemann(a: &FuzzyNumber, b: &FuzzyNumber, r: f64, n: usize) -> f64 {
        let mut total = 0.0;
        for u in Direction::BOTH {
            let mut acc = 0.0;
            for k in 0..n {
                let al = (k as f64 + 0.5) / n as f64;
                let d = a.support(u, al).unwrap() - b.support(u, al).unwrap();
                acc += d.abs().powf(r);
            }
            total += 0.5 * acc / n as f64;
        }
        total.powf(1.0 / r)
    }

    #[test]
    fn rejects_order_below_one() {
        assert!(MetricOrder::new(0.5).is_err());
        assert!(MetricOrder::new(f64::INFINITY).is_err());
        assert!(MetricOrder::new(3.5).is_ok());
    }

    #[test]
    fn identity_and_crisp_points() {
        let grid = AlphaGrid::default();
        let a = FuzzyNumber::triangular(1.0, 2.0, 3.0, &grid).unwrap();
        assert_eq!(rho1(&a, &a), 0.0);
        let zero = FuzzyNumber::crisp_point(0.0, &grid).unwrap();
        let two = FuzzyNumber::crisp_point(2.0, &grid).unwrap();
        assert!((rho1(&zero, &two) - 2.0).abs() < 1e-15);
        assert!((rho(&zero, &two, MetricOrder::TWO) - 2.0).abs() < 1e-15);
        let r = MetricOrder::new(3.7).unwrap();
        assert!((rho(&zero, &two, r) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn triangle_versus_its_peak() {
        let grid = AlphaGrid::default();
        let a = FuzzyNumber::triangular(1.0, 2.0, 3.0, &grid).unwrap();
        let two = FuzzyNumber::crisp_point(2.0, &grid).unwrap();
        let oracle = riemann(&a, &two, 1.0, 100_000);
        assert!((oracle - 0.5).abs() < 1e-9);
        assert!((rho1(&a, &two) - 0.5).abs() < 1e-15);
        // |1 - α|² integrates to 1/3.
        assert!((rho(&a, &two, MetricOrder::TWO) - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn crossing_inside_a_cell() {
        let grid = AlphaGrid::uniform(2).unwrap();
        // Δ₊ goes from +1 to -1 over the single cell.
        let a = FuzzyNumber::new(grid.clone(), vec![0.0, 0.0], vec![3.0, 1.0]).unwrap();
        let b = FuzzyNumber::new(grid.clone(), vec![0.0, 0.0], vec![2.0, 2.0]).unwrap();
        // ½ · ∫|1 - 2α| = ½ · ½.
        assert!((rho1(&a, &b) - 0.25).abs() < 1e-15);
        for r in [1.0, 2.0, 2.5] {
            let exact = rho(&a, &b, MetricOrder::new(r).unwrap());
            let oracle = riemann(&a, &b, r, 100_000);
            assert!(
                (exact - oracle).abs() < 1e-8,
                "r = {r}: {exact} vs {oracle}"
            );
        }
    }

    #[test]
    fn different_grids_agree_with_common_grid() {
        let coarse = AlphaGrid::uniform(3).unwrap();
        let fine = AlphaGrid::uniform(8).unwrap();
        let a = FuzzyNumber::triangular(0.0, 1.0, 5.0, &coarse).unwrap();
        let b = FuzzyNumber::trapezoidal(0.5, 2.0, 2.5, 3.0, &fine).unwrap();
        let common = coarse.union(&fine);
        let direct = rho1(&a, &b);
        let via_common = rho1(&a.resample(&common), &b.resample(&common));
        assert!((direct - via_common).abs() < 1e-15);
    }
}
