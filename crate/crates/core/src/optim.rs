// Copyright 2026 Qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Derivative-free minimization used by the correlation measures and the
//! singlet-fraction search: a coarse deterministic grid over the angle
//! box followed by Nelder-Mead refinement from the best grid points.
//!
//! The objectives are smooth but non-convex in a handful of angles, so a
//! multistart grid is what keeps the refinement out of local minima at
//! desk scale. Everything here is deterministic: fixed evaluation order,
//! strict comparisons (earliest point wins ties).

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{QcorrError, Result};
use crate::tol;

/// Knobs for the grid + simplex pipeline.
#[derive(Debug, Clone)]
pub struct OptimizationSettings {
    /// Grid resolution per angle for the coarse scan.
    pub grid_points_per_angle: usize,
    /// Nelder-Mead iteration cap per restart.
    pub refine_iterations: usize,
    /// Nelder-Mead spread tolerance.
    pub refine_tolerance: f64,
    /// How many of the best grid points get refined.
    pub restarts: usize,
}

impl Default for OptimizationSettings {
    fn default() -> Self {
        Self {
            grid_points_per_angle: 24,
            refine_iterations: 200,
            refine_tolerance: 1e-10,
            restarts: 8,
        }
    }
}

impl OptimizationSettings {
    /// Grid resolution used in dimension `d_b`: the default 24 points per
    /// angle for qubits, 8 for qutrits (6 angles), 4 above that.
    pub fn grid_for_dim(&self, d_b: usize) -> usize {
        match d_b {
            0..=2 => self.grid_points_per_angle,
            3 => self.grid_points_per_angle.clamp(2, 8),
            _ => self.grid_points_per_angle.clamp(2, 4),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_angle < 2
            || self.refine_iterations == 0
            || self.refine_tolerance <= 0.0
            || self.restarts == 0
        {
            return Err(QcorrError::InvalidParameter(
                "optimization settings must all be positive (grid ≥ 2)".into(),
            ));
        }
        Ok(())
    }
}

/// A located minimum.
#[derive(Debug, Clone)]
pub struct Optimum {
    pub params: Vec<f64>,
    pub value: f64,
    /// True when the two best refined restarts agree within
    /// `tol::RESTART_AGREEMENT`.
    pub converged: bool,
}

/// Nelder-Mead simplex descent (reflection 1, expansion 2, contraction
/// 1/2, shrink 1/2). Returns the best vertex found.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    steps: &[f64],
    max_iterations: usize,
    tolerance: f64,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = f(x0);
    simplex.push((x0.to_vec(), fx0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += steps[i];
        let fx = f(&x);
        simplex.push((x, fx));
    }

    for _ in 0..max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread.abs() < tolerance {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|(x, _)| x[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> = (0..n)
            .map(|d| centroid[d] + (centroid[d] - worst.0[d]))
            .collect();
        let f_reflect = f(&reflect);

        if f_reflect < simplex[0].1 {
            let expand: Vec<f64> = (0..n)
                .map(|d| centroid[d] + 2.0 * (centroid[d] - worst.0[d]))
                .collect();
            let f_expand = f(&expand);
            simplex[n] = if f_expand < f_reflect {
                (expand, f_expand)
            } else {
                (reflect, f_reflect)
            };
        } else if f_reflect < simplex[n - 1].1 {
            simplex[n] = (reflect, f_reflect);
        } else {
            let contract: Vec<f64> = if f_reflect < worst.1 {
                (0..n).map(|d| centroid[d] + 0.5 * (reflect[d] - centroid[d])).collect()
            } else {
                (0..n).map(|d| centroid[d] + 0.5 * (worst.0[d] - centroid[d])).collect()
            };
            let f_contract = f(&contract);
            if f_contract < worst.1.min(f_reflect) {
                simplex[n] = (contract, f_contract);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    for (x, b) in v.0.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

/// Exhaustive evaluation over the full grid; returns every point with
/// its value. Intended for low-dimensional scans that feed reports.
pub fn scan_grid<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    ranges: &[(f64, f64)],
    points: usize,
) -> Vec<(Vec<f64>, f64)> {
    let n = ranges.len();
    let total = points.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut x = vec![0.0; n];
    for flat in 0..total {
        let mut rest = flat;
        for d in (0..n).rev() {
            let j = rest % points;
            rest /= points;
            let (lo, hi) = ranges[d];
            x[d] = lo + (hi - lo) * j as f64 / points as f64;
        }
        let v = f(&x);
        out.push((x.clone(), v));
    }
    out
}

/// Keep the `k` lowest-valued starting points while streaming the grid.
struct TopK {
    k: usize,
    entries: Vec<(Vec<f64>, f64)>,
}

impl TopK {
    fn new(k: usize) -> Self {
        Self {
            k,
            entries: Vec::with_capacity(k + 1),
        }
    }

    fn offer(&mut self, x: &[f64], v: f64) {
        if self.entries.len() == self.k && v >= self.entries[self.k - 1].1 {
            return;
        }
        let pos = self
            .entries
            .iter()
            .position(|(_, ev)| v < *ev)
            .unwrap_or(self.entries.len());
        self.entries.insert(pos, (x.to_vec(), v));
        self.entries.truncate(self.k);
    }
}

/// Minimize over an angle box: stream the grid, refine the best
/// `settings.restarts` points with Nelder-Mead, report the minimum.
pub fn minimize_grid_refine<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    ranges: &[(f64, f64)],
    points: usize,
    settings: &OptimizationSettings,
) -> Optimum {
    let n = ranges.len();
    let total = points.pow(n as u32);
    let mut top = TopK::new(settings.restarts);
    let mut x = vec![0.0; n];
    for flat in 0..total {
        let mut rest = flat;
        for d in (0..n).rev() {
            let j = rest % points;
            rest /= points;
            let (lo, hi) = ranges[d];
            x[d] = lo + (hi - lo) * j as f64 / points as f64;
        }
        let v = f(&x);
        top.offer(&x, v);
    }
    let steps: Vec<f64> = ranges
        .iter()
        .map(|(lo, hi)| 0.5 * (hi - lo) / points as f64)
        .collect();
    refine_starts(f, top.entries, &steps, settings)
}

/// Minimize from deterministic pseudo-random starting points; used when
/// the parameter count makes a full grid unreasonable.
pub fn minimize_sampled<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    ranges: &[(f64, f64)],
    samples: usize,
    seed: u64,
    settings: &OptimizationSettings,
) -> Optimum {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = ranges.len();
    let mut top = TopK::new(settings.restarts);
    // The origin is always among the candidates.
    let origin = vec![0.0; n];
    let v0 = f(&origin);
    top.offer(&origin, v0);
    for _ in 0..samples {
        let x: Vec<f64> = ranges
            .iter()
            .map(|(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
            .collect();
        let v = f(&x);
        top.offer(&x, v);
    }
    let steps: Vec<f64> = ranges.iter().map(|(lo, hi)| 0.05 * (hi - lo)).collect();
    refine_starts(f, top.entries, &steps, settings)
}

fn refine_starts<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    starts: Vec<(Vec<f64>, f64)>,
    steps: &[f64],
    settings: &OptimizationSettings,
) -> Optimum {
    let mut refined: Vec<(Vec<f64>, f64)> = starts
        .into_iter()
        .map(|(x0, _)| {
            nelder_mead(
                &mut f,
                &x0,
                steps,
                settings.refine_iterations,
                settings.refine_tolerance,
            )
        })
        .collect();
    refined.sort_by(|a, b| a.1.total_cmp(&b.1));
    let converged =
        refined.len() < 2 || (refined[1].1 - refined[0].1).abs() <= tol::RESTART_AGREEMENT;
    let (params, value) = refined.swap_remove(0);
    Optimum {
        params,
        value,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2);
        let (x, v) = nelder_mead(f, &[0.0, 0.0], &[0.5, 0.5], 300, 1e-14);
        assert_abs_diff_eq!(x[0], 1.5, epsilon = 1e-5);
        assert_abs_diff_eq!(x[1], -0.5, epsilon = 1e-5);
        assert!(v < 1e-10);
    }

    #[test]
    fn grid_refine_escapes_local_minimum() {
        // Two wells; the global one is narrow and off to the side.
        let f = |x: &[f64]| {
            let a = (x[0] - 2.6).powi(2) - 1.0;
            let b = 4.0 * (x[0] + 1.0).powi(2) - 1.4;
            a.min(b)
        };
        let opt = minimize_grid_refine(f, &[(-4.0, 4.0)], 24, &OptimizationSettings::default());
        assert_abs_diff_eq!(opt.params[0], -1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(opt.value, -1.4, epsilon = 1e-8);
        assert!(opt.converged);
    }

    #[test]
    fn scan_grid_covers_the_box_in_fixed_order() {
        let pts = scan_grid(|x| x[0] + 10.0 * x[1], &[(0.0, 1.0), (0.0, 1.0)], 2);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0].0, vec![0.0, 0.0]);
        assert_eq!(pts[1].0, vec![0.0, 0.5]);
        assert_eq!(pts[2].0, vec![0.5, 0.0]);
        assert_eq!(pts[3].0, vec![0.5, 0.5]);
    }

    #[test]
    fn sampled_minimization_is_deterministic() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 0.3).powi(2)).sum::<f64>();
        let a = minimize_sampled(f, &[(-1.0, 1.0); 5], 200, 7, &OptimizationSettings::default());
        let b = minimize_sampled(f, &[(-1.0, 1.0); 5], 200, 7, &OptimizationSettings::default());
        assert_eq!(a.params, b.params);
        assert!(a.value < 1e-8);
    }

    #[test]
    fn settings_validation_rejects_zeroes() {
        let s = OptimizationSettings {
            restarts: 0,
            ..OptimizationSettings::default()
        };
        assert!(s.validate().is_err());
    }
}
