//! Depth functions for fuzzy numbers with respect to a fuzzy random variable.
//!
//! Five depths are provided: the r-natural depth `D_r`, Tukey depth `D_FT`,
//! projection depth `D_FP`, modified simplicial depth `D_mS` and fuzzy
//! simplicial depth `D_FS`. All except `D_r` only need the univariate laws of
//! `s_𝒳(u, α)`, so they accept either backend.
//!
//! The infima and suprema over `α ∈ [0, 1]` are evaluated exactly. For a
//! sample backend every support function is linear between knots, so the
//! relative order of the query and the items only changes at finitely many
//! crossing levels. The depths are piecewise constant (Tukey, simplicial) or
//! piecewise linear-fractional (projection) between those levels, and are
//! evaluated on the knots, the crossings and the midpoints in between.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{Backend, CrispLaw, FuzzySample, LawView, ScalarCdf};
use crate::error::{Error, Result};
use crate::fuzzy::{lerp, AlphaGrid, Direction, FuzzyNumber, KNOT_TOL};
use crate::metrics::{rho, MetricOrder};

/// Which depth function produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthMethod {
    /// r-natural depth `(1 + E[ρ_r(A, 𝒳)])⁻¹`.
    L1,
    Tukey,
    Projection,
    ModifiedSimplicial,
    FuzzySimplicial,
}

impl DepthMethod {
    pub const ALL: [DepthMethod; 5] = [
        DepthMethod::L1,
        DepthMethod::Tukey,
        DepthMethod::Projection,
        DepthMethod::ModifiedSimplicial,
        DepthMethod::FuzzySimplicial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DepthMethod::L1 => "l1",
            DepthMethod::Tukey => "tukey",
            DepthMethod::Projection => "projection",
            DepthMethod::ModifiedSimplicial => "msimplicial",
            DepthMethod::FuzzySimplicial => "fsimplicial",
        }
    }
}

/// Simplicial depth flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplicialVariant {
    /// Average over both directions.
    Modified,
    /// Infimum over directions.
    Fuzzy,
}

/// The `(u, α)` attaining an infimum or supremum. `alpha` is absent when
/// only the direction is selected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub u: Direction,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthReport {
    pub value: f64,
    pub witness: Option<Witness>,
    pub method: DepthMethod,
}

/// Levels where the ordering between `s_A(u, ·)` and the sample's support
/// functions can change: every knot plus every crossing inside a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalAlphaSet {
    alphas: Vec<f64>,
}

impl CriticalAlphaSet {
    pub fn new(a: &FuzzyNumber, sample: &FuzzySample, u: Direction) -> Self {
        let grid = a.grid().union(sample.grid());
        let levels = grid.levels();
        let items: Vec<Vec<f64>> = sample
            .items()
            .iter()
            .map(|it| knot_values(it, &grid, u))
            .collect();
        let query = knot_values(a, &grid, u);
        let mut alphas = levels.to_vec();
        for i in 0..levels.len() - 1 {
            for it in &items {
                push_crossing(
                    &mut alphas,
                    levels[i],
                    levels[i + 1],
                    query[i] - it[i],
                    query[i + 1] - it[i + 1],
                );
            }
        }
        Self {
            alphas: sorted_unique(alphas),
        }
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Critical levels and the midpoints between them, in increasing order.
    fn with_midpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.alphas.len());
        for w in self.alphas.windows(2) {
            out.push(w[0]);
            out.push(0.5 * (w[0] + w[1]));
        }
        out.push(*self.alphas.last().unwrap());
        out
    }
}

pub(crate) fn knot_values(x: &FuzzyNumber, grid: &AlphaGrid, u: Direction) -> Vec<f64> {
    if x.grid().same_as(grid) {
        x.support_on_grid(u)
    } else {
        grid.levels()
            .iter()
            .map(|&a| x.support_unchecked(u, a))
            .collect()
    }
}

pub(crate) fn push_crossing(out: &mut Vec<f64>, a0: f64, a1: f64, d0: f64, d1: f64) {
    if d0 * d1 < 0.0 {
        out.push(lerp(a0, a1, d0 / (d0 - d1)));
    }
}

pub(crate) fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|b, a| *b - *a <= KNOT_TOL);
    v
}

#[inline]
fn tie(t: f64) -> f64 {
    1e-12 * t.abs().max(1.0)
}

fn check_unit(value: f64) -> f64 {
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&value), "depth {value}");
    value.clamp(0.0, 1.0)
}

/// r-natural depth. Needs full fuzzy realizations, hence a sample.
pub fn depth_l1(a: &FuzzyNumber, sample: &FuzzySample, r: MetricOrder) -> DepthReport {
    DepthReport {
        value: check_unit(1.0 / (1.0 + expected_distance(a, sample, r))),
        witness: None,
        method: DepthMethod::L1,
    }
}

/// `E[ρ_r(A, 𝒳)]` for a sample.
pub fn expected_distance(a: &FuzzyNumber, sample: &FuzzySample, r: MetricOrder) -> f64 {
    sample
        .items()
        .iter()
        .zip(sample.weights())
        .map(|(it, w)| w * rho(a, it, r))
        .sum()
}

/// `min(P(X ≤ t), P(X ≥ t))`.
fn halfspace<L: LawView>(law: &L, t: f64) -> f64 {
    law.cdf(t).min(1.0 - law.left_limit(t))
}

/// Tukey depth: infimum over `(u, α)` of the smaller closed halfspace mass.
pub fn depth_tukey(a: &FuzzyNumber, backend: &Backend) -> DepthReport {
    let (value, witness) = match backend {
        Backend::Sample(s) => tukey_sample(a, s),
        Backend::Crisp(c) => tukey_crisp(a, c),
    };
    DepthReport {
        value: check_unit(value),
        witness: Some(witness),
        method: DepthMethod::Tukey,
    }
}

fn tukey_sample(a: &FuzzyNumber, sample: &FuzzySample) -> (f64, Witness) {
    let mut best = (
        f64::INFINITY,
        Witness {
            u: Direction::Pos,
            alpha: Some(0.0),
        },
    );
    let mut vals = Vec::with_capacity(sample.len());
    for u in Direction::BOTH {
        for al in CriticalAlphaSet::new(a, sample, u).with_midpoints() {
            sample.support_values_into(u, al, &mut vals);
            let s = a.support_unchecked(u, al);
            let eps = tie(s);
            let (mut le, mut ge) = (0.0, 0.0);
            for (x, w) in vals.iter().zip(sample.weights()) {
                if *x <= s + eps {
                    le += w;
                }
                if *x >= s - eps {
                    ge += w;
                }
            }
            let d = le.min(ge);
            if d < best.0 {
                best = (d, Witness { u, alpha: Some(al) });
            }
        }
    }
    best
}

fn tukey_crisp(a: &FuzzyNumber, cdf: &ScalarCdf) -> (f64, Witness) {
    let levels = a.grid().levels();
    let mut best = (
        f64::INFINITY,
        Witness {
            u: Direction::Pos,
            alpha: Some(0.0),
        },
    );
    let mut consider = |d: f64, u: Direction, al: f64| {
        if d < best.0 {
            best = (d, Witness { u, alpha: Some(al) });
        }
    };
    for u in Direction::BOTH {
        let law = crisp_law(cdf, u);
        let s = a.support_on_grid(u);
        for i in 0..levels.len() {
            consider(halfspace(&law, s[i]), u, levels[i]);
        }
        // Inside a cell the halfspace mass is quasi-concave in s, so the
        // infimum over the open cell is a one-sided limit at an endpoint.
        let from_above = |t: f64| law.cdf(t).min(1.0 - law.cdf(t));
        let from_below = |t: f64| law.left_limit(t).min(1.0 - law.left_limit(t));
        for i in 0..levels.len() - 1 {
            let (s0, s1) = (s[i], s[i + 1]);
            if s0 == s1 {
                continue;
            }
            let (d0, d1) = if s1 > s0 {
                (from_above(s0), from_below(s1))
            } else {
                (from_below(s0), from_above(s1))
            };
            consider(d0, u, levels[i]);
            consider(d1, u, levels[i + 1]);
        }
    }
    best
}

fn crisp_law(cdf: &ScalarCdf, u: Direction) -> CrispLaw<'_> {
    crate::distribution::law_of_crisp(cdf, u, 0.0).expect("alpha 0 is in range")
}

/// Outlyingness ratio with `0/0 = 0` and `x/0 = ∞`.
fn outlyingness_ratio(s: f64, med: f64, mad: f64) -> f64 {
    let num = (s - med).abs();
    let scale = s.abs().max(med.abs()).max(1.0);
    if num <= 1e-12 * scale {
        0.0
    } else if mad <= 1e-12 * scale {
        f64::INFINITY
    } else {
        num / mad
    }
}

/// Projection depth `(1 + O(A; 𝒳))⁻¹` with median/MAD standardization.
pub fn depth_projection(a: &FuzzyNumber, backend: &Backend) -> Result<DepthReport> {
    if backend.is_degenerate() {
        return Err(Error::Degenerate(
            "projection depth needs a non-degenerate distribution".into(),
        ));
    }
    let (sup, witness) = match backend {
        Backend::Sample(s) => outlyingness_sample(a, s),
        Backend::Crisp(c) => outlyingness_crisp(a, c),
    };
    Ok(DepthReport {
        value: check_unit(if sup.is_infinite() {
            0.0
        } else {
            1.0 / (1.0 + sup)
        }),
        witness: Some(witness),
        method: DepthMethod::Projection,
    })
}

/// Levels where median, MAD and `|s_A - med|` may change their linear form.
fn projection_levels(a: &FuzzyNumber, sample: &FuzzySample, u: Direction) -> Vec<f64> {
    let grid = a.grid().union(sample.grid());
    let levels = grid.levels();
    let items: Vec<Vec<f64>> = sample
        .items()
        .iter()
        .map(|it| knot_values(it, &grid, u))
        .collect();
    let query = knot_values(a, &grid, u);

    let mut refined = levels.to_vec();
    for i in 0..levels.len() - 1 {
        for (p, x) in items.iter().enumerate() {
            push_crossing(
                &mut refined,
                levels[i],
                levels[i + 1],
                query[i] - x[i],
                query[i + 1] - x[i + 1],
            );
            for y in &items[p + 1..] {
                push_crossing(
                    &mut refined,
                    levels[i],
                    levels[i + 1],
                    x[i] - y[i],
                    x[i + 1] - y[i + 1],
                );
            }
        }
    }
    let refined = sorted_unique(refined);

    // Between refined levels the item order is fixed, so the median is
    // linear; split further where deviations from it reorder or vanish.
    let mut out = refined.clone();
    let at = |al: f64| {
        let vals = sample.support_values(u, al);
        let med =
            crate::distribution::DiscreteLaw::from_unchecked(&vals, sample.weights()).median_mid();
        (vals, med, a.support_unchecked(u, al))
    };
    let mut prev = at(refined[0]);
    for w in refined.windows(2) {
        let next = at(w[1]);
        let (x0, m0, q0) = (&prev.0, prev.1, prev.2);
        let (x1, m1, q1) = (&next.0, next.1, next.2);
        push_crossing(&mut out, w[0], w[1], q0 - m0, q1 - m1);
        for p in 0..x0.len() {
            push_crossing(&mut out, w[0], w[1], x0[p] - m0, x1[p] - m1);
            for q in p + 1..x0.len() {
                push_crossing(
                    &mut out,
                    w[0],
                    w[1],
                    x0[p] + x0[q] - 2.0 * m0,
                    x1[p] + x1[q] - 2.0 * m1,
                );
            }
        }
        prev = next;
    }
    sorted_unique(out)
}

fn outlyingness_sample(a: &FuzzyNumber, sample: &FuzzySample) -> (f64, Witness) {
    let mut best = (
        -1.0,
        Witness {
            u: Direction::Pos,
            alpha: Some(0.0),
        },
    );
    for u in Direction::BOTH {
        let crit = CriticalAlphaSet {
            alphas: projection_levels(a, sample, u),
        };
        for al in crit.with_midpoints() {
            let law = sample.law_of(u, al).expect("alpha in range");
            let o = outlyingness_ratio(a.support_unchecked(u, al), law.median_mid(), law.mad());
            if o > best.0 {
                best = (o, Witness { u, alpha: Some(al) });
            }
        }
    }
    best
}

fn outlyingness_crisp(a: &FuzzyNumber, cdf: &ScalarCdf) -> (f64, Witness) {
    let mut best = (
        -1.0,
        Witness {
            u: Direction::Pos,
            alpha: Some(0.0),
        },
    );
    let mad = cdf.mad();
    for u in Direction::BOTH {
        let med = crisp_law(cdf, u).median_mid();
        for (al, s) in a.grid().levels().iter().zip(a.support_on_grid(u)) {
            let o = outlyingness_ratio(s, med, mad);
            if o > best.0 {
                best = (
                    o,
                    Witness {
                        u,
                        alpha: Some(*al),
                    },
                );
            }
        }
    }
    best
}

/// Probability that `t` lies between the min and max of two independent
/// copies: `1 - (1 - F)² - (F - P(X = t))²`.
fn simplicial_integrand<L: LawView>(law: &L, t: f64) -> f64 {
    let f = law.cdf(t);
    let pm = law.point_mass(t);
    1.0 - (1.0 - f).powi(2) - (f - pm).powi(2)
}

/// Modified (`D_mS`) or fuzzy (`D_FS`) simplicial depth.
pub fn depth_simplicial(
    a: &FuzzyNumber,
    backend: &Backend,
    variant: SimplicialVariant,
) -> DepthReport {
    let per_direction: Vec<(Direction, f64)> = Direction::BOTH
        .iter()
        .map(|&u| {
            let integral = match backend {
                Backend::Sample(s) => simplicial_integral_sample(a, s, u),
                Backend::Crisp(c) => simplicial_integral_crisp(a, c, u),
            };
            (u, integral)
        })
        .collect();
    match variant {
        SimplicialVariant::Modified => DepthReport {
            value: check_unit(0.5 * (per_direction[0].1 + per_direction[1].1)),
            witness: None,
            method: DepthMethod::ModifiedSimplicial,
        },
        SimplicialVariant::Fuzzy => {
            let (u, v) =
                per_direction
                    .into_iter()
                    .fold((Direction::Pos, f64::INFINITY), |acc, (u, v)| {
                        if v < acc.1 {
                            (u, v)
                        } else {
                            acc
                        }
                    });
            DepthReport {
                value: check_unit(v),
                witness: Some(Witness { u, alpha: None }),
                method: DepthMethod::FuzzySimplicial,
            }
        }
    }
}

fn simplicial_integral_sample(a: &FuzzyNumber, sample: &FuzzySample, u: Direction) -> f64 {
    let crit = CriticalAlphaSet::new(a, sample, u);
    crit.alphas
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let law = sample.law_of(u, mid).expect("alpha in range");
            (w[1] - w[0]) * simplicial_integrand(&law, a.support_unchecked(u, mid))
        })
        .sum()
}

fn simplicial_integral_crisp(a: &FuzzyNumber, cdf: &ScalarCdf, u: Direction) -> f64 {
    const NODES: [f64; 3] = [0.112_701_665_379_258_3, 0.5, 0.887_298_334_620_741_7];
    const WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
    let law = crisp_law(cdf, u);
    let knots = law.knots();
    let levels = a.grid().levels();
    let s = a.support_on_grid(u);
    let mut total = 0.0;
    for i in 0..levels.len() - 1 {
        let (a0, a1, s0, s1) = (levels[i], levels[i + 1], s[i], s[i + 1]);
        if s0 == s1 {
            total += (a1 - a0) * simplicial_integrand(&law, s0);
            continue;
        }
        // Between law knots F is linear in s and s is linear in α, so the
        // integrand is quadratic and 3-point Gauss-Legendre is exact.
        let (lo, hi) = (s0.min(s1), s0.max(s1));
        let mut cuts = vec![a0, a1];
        cuts.extend(
            knots
                .iter()
                .filter(|&&k| k > lo && k < hi)
                .map(|&k| lerp(a0, a1, (k - s0) / (s1 - s0))),
        );
        let cuts = sorted_unique(cuts);
        for w in cuts.windows(2) {
            let len = w[1] - w[0];
            total += len
                * NODES
                    .iter()
                    .zip(WEIGHTS)
                    .map(|(&t, wt)| {
                        let al = w[0] + len * t;
                        let sv = lerp(s0, s1, (al - a0) / (a1 - a0));
                        wt * simplicial_integrand(&law, sv)
                    })
                    .sum::<f64>();
        }
    }
    total
}

/// Dispatches to the requested depth. `r` is only used by [`DepthMethod::L1`].
pub fn depth(
    a: &FuzzyNumber,
    backend: &Backend,
    method: DepthMethod,
    r: MetricOrder,
) -> Result<DepthReport> {
    match method {
        DepthMethod::L1 => match backend {
            Backend::Sample(s) => Ok(depth_l1(a, s, r)),
            Backend::Crisp(_) => Err(Error::Unsupported(
                "the r-natural depth needs fuzzy realizations; use a sample".into(),
            )),
        },
        DepthMethod::Tukey => Ok(depth_tukey(a, backend)),
        DepthMethod::Projection => depth_projection(a, backend),
        DepthMethod::ModifiedSimplicial => {
            Ok(depth_simplicial(a, backend, SimplicialVariant::Modified))
        }
        DepthMethod::FuzzySimplicial => Ok(depth_simplicial(a, backend, SimplicialVariant::Fuzzy)),
    }
}

/// Evaluates many queries in parallel; output order matches `queries`.
pub fn depth_batch(
    queries: &[FuzzyNumber],
    backend: &Backend,
    method: DepthMethod,
    r: MetricOrder,
) -> Vec<Result<DepthReport>> {
    queries
        .par_iter()
        .map(|q| depth(q, backend, method, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::Breakpoint;

    fn grid() -> AlphaGrid {
        AlphaGrid::default()
    }

    fn crisp(x: f64) -> FuzzyNumber {
        FuzzyNumber::crisp_point(x, &grid()).unwrap()
    }

    fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
        FuzzyNumber::triangular(a, b, c, &grid()).unwrap()
    }

    fn flat_band_sample() -> Backend {
        FuzzySample::uniform(vec![
            tri(1.0, 2.0, 3.0),
            crisp(4.0),
            crisp(5.0),
            tri(6.0, 6.0, 7.0),
        ])
        .unwrap()
        .into()
    }

    fn example_cdf() -> Backend {
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
        .into()
    }

    /// Brute-force Tukey oracle on a fine α scan.
    fn tukey_scan(a: &FuzzyNumber, s: &FuzzySample, n: usize) -> f64 {
        let mut best = f64::INFINITY;
        for u in Direction::BOTH {
            for k in 0..=n {
                let al = k as f64 / n as f64;
                let t = a.support(u, al).unwrap();
                let vals = s.support_values(u, al);
                let le: f64 = vals
                    .iter()
                    .zip(s.weights())
                    .filter(|(x, _)| **x <= t + 1e-12)
                    .map(|(_, w)| w)
                    .sum();
                let ge: f64 = vals
                    .iter()
                    .zip(s.weights())
                    .filter(|(x, _)| **x >= t - 1e-12)
                    .map(|(_, w)| w)
                    .sum();
                best = best.min(le.min(ge));
            }
        }
        best
    }

    #[test]
    fn l1_examples() {
        let a = tri(1.0, 2.0, 3.0);
        let delta = FuzzySample::uniform(vec![a.clone()]).unwrap();
        assert_eq!(depth_l1(&a, &delta, MetricOrder::ONE).value, 1.0);
        let pair = FuzzySample::uniform(vec![crisp(0.0), crisp(2.0)]).unwrap();
        assert!((depth_l1(&crisp(1.0), &pair, MetricOrder::ONE).value - 0.5).abs() < 1e-15);
        assert!((depth_l1(&crisp(0.0), &pair, MetricOrder::ONE).value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn l1_rejects_crisp_backend() {
        let err = depth(
            &crisp(1.0),
            &example_cdf(),
            DepthMethod::L1,
            MetricOrder::ONE,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn tukey_examples() {
        let a = tri(1.0, 2.0, 3.0);
        let delta: Backend = FuzzySample::uniform(vec![a.clone()]).unwrap().into();
        assert_eq!(depth_tukey(&a, &delta).value, 1.0);
        let backend = flat_band_sample();
        assert_eq!(depth_tukey(&crisp(4.5), &backend).value, 0.5);
        let r = depth_tukey(&a, &backend);
        assert_eq!(r.value, 0.25);
        assert!(r.witness.is_some());
    }

    #[test]
    fn tukey_catches_crossing_between_knots() {
        let g = AlphaGrid::uniform(2).unwrap();
        let q = FuzzyNumber::new(g.clone(), vec![0.0, 0.0], vec![3.0, 1.0]).unwrap();
        let items = vec![
            FuzzyNumber::new(g.clone(), vec![0.0, 0.0], vec![2.0, 2.0]).unwrap(),
            FuzzyNumber::new(g.clone(), vec![0.0, 0.0], vec![2.5, 2.5]).unwrap(),
            FuzzyNumber::new(g.clone(), vec![-1.0, -1.0], vec![10.0, 10.0]).unwrap(),
        ];
        let s = FuzzySample::uniform(items).unwrap();
        let exact = depth_tukey(&q, &Backend::Sample(s.clone())).value;
        let scan = tukey_scan(&q, &s, 10_000);
        assert!((exact - scan).abs() < 1e-12, "{exact} vs {scan}");
    }

    #[test]
    fn projection_examples() {
        let pair: Backend = FuzzySample::uniform(vec![crisp(1.0), crisp(3.0)])
            .unwrap()
            .into();
        assert_eq!(depth_projection(&crisp(2.0), &pair).unwrap().value, 1.0);
        let b = depth_projection(&tri(1.0, 2.0, 3.0), &pair).unwrap();
        assert!((b.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn projection_rejects_degenerate() {
        let delta: Backend = FuzzySample::uniform(vec![crisp(1.0), crisp(1.0)])
            .unwrap()
            .into();
        assert!(matches!(
            depth_projection(&crisp(1.0), &delta),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn projection_zero_mad_conventions() {
        // Two of three atoms at 0: median 0, MAD 0.
        let s: Backend = FuzzySample::uniform(vec![crisp(0.0), crisp(0.0), crisp(10.0)])
            .unwrap()
            .into();
        assert_eq!(depth_projection(&crisp(0.0), &s).unwrap().value, 1.0);
        assert_eq!(depth_projection(&crisp(0.5), &s).unwrap().value, 0.0);
    }

    #[test]
    fn simplicial_example_values() {
        let x = example_cdf();
        let three = depth_simplicial(&crisp(3.0), &x, SimplicialVariant::Fuzzy).value;
        let two = depth_simplicial(&crisp(2.0), &x, SimplicialVariant::Fuzzy).value;
        assert!((three - 0.5).abs() < 1e-9, "{three}");
        assert!((two - 0.6558).abs() < 1e-9, "{two}");
        let a = tri(0.0, 1.0, 2.0);
        let delta: Backend = FuzzySample::uniform(vec![a.clone()]).unwrap().into();
        assert_eq!(
            depth_simplicial(&a, &delta, SimplicialVariant::Modified).value,
            1.0
        );
    }

    #[test]
    fn simplicial_crisp_matches_fine_quadrature() {
        let x = example_cdf();
        let Backend::Crisp(cdf) = &x else {
            unreachable!()
        };
        let a =
            FuzzyNumber::trapezoidal(0.5, 2.0, 2.0, 30.0, &AlphaGrid::uniform(5).unwrap()).unwrap();
        for u in Direction::BOTH {
            let law = crisp_law(cdf, u);
            let n = 200_000;
            let oracle: f64 = (0..n)
                .map(|k| {
                    let al = (k as f64 + 0.5) / n as f64;
                    simplicial_integrand(&law, a.support(u, al).unwrap())
                })
                .sum::<f64>()
                / n as f64;
            let exact = simplicial_integral_crisp(&a, cdf, u);
            assert!((exact - oracle).abs() < 1e-8, "{u:?}: {exact} vs {oracle}");
        }
    }

    #[test]
    fn batch_preserves_order() {
        let backend = flat_band_sample();
        let qs = vec![crisp(4.5), tri(1.0, 2.0, 3.0), crisp(4.5)];
        let out = depth_batch(&qs, &backend, DepthMethod::Tukey, MetricOrder::ONE);
        let vals: Vec<f64> = out.into_iter().map(|r| r.unwrap().value).collect();
        assert_eq!(vals, vec![0.5, 0.25, 0.5]);
    }

    #[test]
    fn critical_set_contains_endpoints_and_crossing() {
        let g = AlphaGrid::uniform(2).unwrap();
        let q = FuzzyNumber::new(g.clone(), vec![0.0, 0.0], vec![3.0, 1.0]).unwrap();
        let s = FuzzySample::uniform(vec![
            FuzzyNumber::new(g, vec![0.0, 0.0], vec![2.0, 2.0]).unwrap()
        ])
        .unwrap();
        let c = CriticalAlphaSet::new(&q, &s, Direction::Pos);
        assert_eq!(c.alphas(), &[0.0, 0.5, 1.0]);
    }
}
