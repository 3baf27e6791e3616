use super::QuadConfig;
use crate::error::{Error, Result};
use crate::series::{Approx, Route};
use std::f64::consts::FRAC_PI_2;

const X_MAX: f64 = 4.5;
const MIN_LEVEL: u32 = 3;

/// Integrates `f(x, x - a, b - x)` over `(a, b)`; the distances to the endpoints are computed
/// without cancellation, so integrands may use them to resolve endpoint singularities.
pub fn tanh_sinh_complement<F>(f: F, a: f64, b: f64, cfg: &super::QuadConfig) -> Result<Approx>
where
    F: Fn(f64, f64, f64) -> f64,
{
    cfg.validate()?;
    if !(a < b) {
        return Err(Error::Domain(format!("tanh-sinh needs a < b, got ({a}, {b})")));
    }
    let half = 0.5 * (b - a);
    let node = |x: f64| -> f64 {
        let v = FRAC_PI_2 * x.sinh();
        let e = (-2.0 * v.abs()).exp();
        let near = 2.0 * half * e / (1.0 + e);
        let far = 2.0 * half / (1.0 + e);
        let (da, db) = if v >= 0.0 { (far, near) } else { (near, far) };
        if da <= 0.0 || db <= 0.0 {
            return 0.0;
        }
        let w = half * FRAC_PI_2 * x.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 {
            return 0.0;
        }
        let val = f(a + da, da, db);
        if val == 0.0 {
            0.0
        } else {
            w * val
        }
    };
    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while (k as f64) * h <= X_MAX {
        let x = k as f64 * h;
        sum += node(x) + node(-x);
        k += 1;
    }
    let mut prev = sum * h;
    let mut evals = 2 * k as u64;
    for level in 1..=cfg.max_level {
        h *= 0.5;
        let mut k = 1u64;
        while (k as f64) * h <= X_MAX {
            let x = k as f64 * h;
            sum += node(x) + node(-x);
            k += 2;
        }
        evals += k;
        let est = sum * h;
        if !est.is_finite() {
            return Err(Error::NonConvergence {
                what: "tanh-sinh produced a non-finite value".into(),
                estimate: est,
                error: f64::INFINITY,
            });
        }
        let diff = (est - prev).abs();
        if level >= MIN_LEVEL && diff < cfg.abs_tol {
            return Ok(Approx {
                value: est,
                err_bound: diff,
                route: Route::Quadrature,
                terms_used: evals,
            });
        }
        prev = est;
    }
    Err(Error::NonConvergence {
        what: format!("tanh-sinh did not reach {:e} by level {}", cfg.abs_tol, cfg.max_level),
        estimate: prev,
        error: f64::NAN,
    })
}

/// Integrates `f` over `(a, b)`, skipping abscissae within `singularity_shave * (b - a)` of an endpoint.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Approx>
where
    F: Fn(f64) -> f64,
{
    let shave = cfg.singularity_shave * (b - a);
    tanh_sinh_complement(
        |x, da, db| {
            if da < shave || db < shave {
                0.0
            } else {
                f(x)
            }
        },
        a,
        b,
        cfg,
    )
}
