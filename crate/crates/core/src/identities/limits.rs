//! Limits at `x -> 1` of functions that are only available strictly below 1.

use crate::error::{Error, Result};
use crate::series::{Approx, Route};
use nalgebra::{DMatrix, DVector};

/// Exponents `e` of the sample points `x = 1 - 2^{-e}`.
pub const DEFAULT_LEVELS: std::ops::RangeInclusive<i32> = 6..=12;

fn fit(hs: &[f64], ys: &[f64], basis: &[Box<dyn Fn(f64) -> f64>]) -> Option<f64> {
    let n = hs.len();
    let cols = basis.len() + 1;
    if n < cols {
        return None;
    }
    let mut a = DMatrix::<f64>::zeros(n, cols);
    for (i, &h) in hs.iter().enumerate() {
        a[(i, 0)] = 1.0;
        for (j, f) in basis.iter().enumerate() {
            a[(i, j + 1)] = f(h);
        }
    }
    // column scaling keeps the least-squares problem well conditioned
    let mut scale = vec![1.0; cols];
    for j in 0..cols {
        let norm = a.column(j).norm();
        if norm > 0.0 {
            scale[j] = norm;
            a.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    let b = DVector::from_row_slice(ys);
    let sol = a.svd(true, true).solve(&b, 1e-14).ok()?;
    Some(sol[0] / scale[0])
}

/// `h log^j h` for `j = 0..=degree`, followed by `h^2 log^j h` for `j = 0..extra`.
fn basis(degree: u32, extra: u32) -> Vec<Box<dyn Fn(f64) -> f64>> {
    let mut out: Vec<Box<dyn Fn(f64) -> f64>> = Vec::new();
    for j in 0..=degree {
        out.push(Box::new(move |h: f64| h * h.ln().powi(j as i32)));
    }
    for j in 0..extra {
        out.push(Box::new(move |h: f64| h * h * h.ln().powi(j as i32)));
    }
    out
}

/// Richardson-type extrapolation of `f(h)` to `h = 0` from samples at `h = 2^{-e}`.
///
/// The model is `L + h P(log h) + h^2 Q(log h)` with `deg P = log_degree`; `Q` takes as many
/// coefficients as the samples leave room for. The error estimate is the largest change of the
/// limit under a smaller model or under dropping the coarsest sample.
pub fn limit_at_one<F>(f: F, levels: std::ops::RangeInclusive<i32>, log_degree: u32) -> Result<Approx>
where
    F: Fn(f64) -> Result<f64>,
{
    let hs: Vec<f64> = levels.map(|e| 2f64.powi(-e)).collect();
    let ys = hs.iter().map(|&h| f(h)).collect::<Result<Vec<f64>>>()?;
    let n = hs.len() as u32;
    let degree = log_degree.min(n.saturating_sub(3));
    let extra = (n - 2 - degree).min(degree + 1);
    let best = fit(&hs, &ys, &basis(degree, extra));
    let fewer = fit(&hs, &ys, &basis(degree, extra.saturating_sub(1)));
    let coarse = fit(&hs[1..], &ys[1..], &basis(degree, extra.saturating_sub(1)));
    match (best, fewer, coarse) {
        (Some(v), Some(a), Some(b)) => Ok(Approx {
            value: v,
            err_bound: (v - a).abs().max((v - b).abs()),
            route: Route::Quadrature,
            terms_used: hs.len() as u64,
        }),
        _ => Err(Error::NonConvergence {
            what: "limit extrapolation".into(),
            estimate: *ys.last().unwrap_or(&f64::NAN),
            error: f64::NAN,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_log_corrected_limit() {
        let f = |h: f64| Ok(0.75 + h * (2.0 - h.ln() + 0.3 * h.ln().powi(2)) + 5.0 * h * h);
        let v = limit_at_one(f, DEFAULT_LEVELS, 2).unwrap();
        assert!((v.value - 0.75).abs() < 1e-10, "{v:?}");
    }
}
