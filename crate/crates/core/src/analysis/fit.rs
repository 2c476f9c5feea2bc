// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `f(x) = a e^{b x} + c` with its RMS residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual: f64,
}

impl ExpFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.a * (self.b * x).exp() + self.c
    }
}

/// Linear least squares for `(a, c)` at fixed rate `k` on the scaled axis
/// `u`, returning `(a, c, sse)`.
fn linear_part(u: &[f64], y: &[f64], k: f64) -> (f64, f64, f64) {
    let n = u.len() as f64;
    let (mut se, mut see, mut sy, mut sey) = (0.0, 0.0, 0.0, 0.0);
    for (&ui, &yi) in u.iter().zip(y) {
        let e = (k * ui).exp();
        se += e;
        see += e * e;
        sy += yi;
        sey += e * yi;
    }
    let det = n * see - se * se;
    let (a, c) = if det.abs() <= 1e-14 * n * see {
        (0.0, sy / n)
    } else {
        ((n * sey - se * sy) / det, (see * sy - se * sey) / det)
    };
    let sse = u
        .iter()
        .zip(y)
        .map(|(&ui, &yi)| {
            let r = a * (k * ui).exp() + c - yi;
            r * r
        })
        .sum();
    (a, c, sse)
}

/// Least-squares fit of `a e^{b x} + c`.
///
/// The rate is searched on a grid over `b * (x_max - x_min)` in `[-40, 40]`,
/// refined by golden-section search and polished with damped Gauss-Newton
/// steps on all three parameters. Constant data yields `a = b = 0`.
pub fn fit_exponential(points: &[(f64, f64)]) -> Result<ExpFit> {
    if points.len() < 4 {
        return Err(Error::FitDegenerate(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::FitDegenerate("non-finite data".into()));
    }
    let x_min = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let x_max = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let range = x_max - x_min;
    if range <= 0.0 {
        return Err(Error::FitDegenerate("x values span a zero range".into()));
    }
    let y: Vec<f64> = points.iter().map(|p| p.1).collect();
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let spread = y.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    if spread <= 1e-14 * mean.abs().max(1.0) {
        return Ok(ExpFit {
            a: 0.0,
            b: 0.0,
            c: mean,
            residual: 0.0,
        });
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.len() < 3 {
        return Err(Error::FitDegenerate(
            "need at least 3 distinct x values".into(),
        ));
    }
    let u: Vec<f64> = points.iter().map(|p| (p.0 - x_min) / range).collect();

    const GRID: usize = 800;
    let step = 80.0 / GRID as f64;
    let ks: Vec<f64> = (0..=GRID)
        .map(|i| -40.0 + step * (i as f64 + 0.5))
        .collect();
    let sse = |k: f64| linear_part(&u, &y, k).2;
    let best = ks
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| sse(a.1).total_cmp(&sse(b.1)))
        .map(|(i, _)| i)
        .expect("grid is nonempty");
    let (mut lo, mut hi) = (ks[best] - step, ks[best] + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut p, mut q) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut fp, mut fq) = (sse(p), sse(q));
    for _ in 0..200 {
        if hi - lo < 1e-13 * (1.0 + hi.abs()) {
            break;
        }
        if fp < fq {
            hi = q;
            q = p;
            fq = fp;
            p = hi - g * (hi - lo);
            fp = sse(p);
        } else {
            lo = p;
            p = q;
            fp = fq;
            q = lo + g * (hi - lo);
            fq = sse(q);
        }
    }
    let k0 = 0.5 * (lo + hi);
    let (a0, c0, mut best_sse) = linear_part(&u, &y, k0);
    let mut theta = Vector3::new(a0, k0, c0);

    // Gauss-Newton on (a, k, c) with Levenberg damping.
    let mut lambda = 1e-6;
    for _ in 0..100 {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for (&ui, &yi) in u.iter().zip(&y) {
            let e = (theta[1] * ui).exp();
            let r = theta[0] * e + theta[2] - yi;
            let j = Vector3::new(e, theta[0] * ui * e, 1.0);
            jtj += j * j.transpose();
            jtr += j * r;
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut damped = jtj;
            for d in 0..3 {
                damped[(d, d)] *= 1.0 + lambda;
            }
            let Some(delta) = damped.lu().solve(&jtr) else {
                lambda *= 10.0;
                continue;
            };
            let cand = theta - delta;
            let s: f64 = u
                .iter()
                .zip(&y)
                .map(|(&ui, &yi)| {
                    let r = cand[0] * (cand[1] * ui).exp() + cand[2] - yi;
                    r * r
                })
                .sum();
            if s.is_finite() && s <= best_sse {
                let done = best_sse - s <= 1e-30 + 1e-15 * best_sse;
                theta = cand;
                best_sse = s;
                lambda = (lambda / 10.0).max(1e-12);
                improved = !done;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let b = theta[1] / range;
    Ok(ExpFit {
        a: theta[0] * (-b * x_min).exp(),
        b,
        c: theta[2],
        residual: (best_sse / y.len() as f64).sqrt(),
    })
}
