//! Iterated integrals `int_0^z w_1 ... w_K` evaluated on a shared double-exponential lattice.
//!
//! The map `t = z (1 + tanh(pi/2 sinh x)) / 2` sends a uniform grid in `x` to `(0, z)` with
//! doubly exponential clustering at both ends. Every level of the iterated integral is a
//! cumulative integral over the same grid, so inner functions are never re-evaluated.
//! The cumulative rule integrates a 10-point Lagrange interpolant on each cell, with the
//! stencil shifted inwards near the ends of the grid. The step is halved until two successive
//! grids agree to the requested tolerance.

use super::QuadConfig;
use crate::error::{Error, Result};
use crate::index::Index;
use crate::series::{Approx, Route};
use crate::words::{word_from_index, Letter};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

const X_MAX: f64 = 4.6;
const STENCIL: usize = 10;
const FIRST_LEVEL: u32 = 4;

/// Differential form attached to one letter of an iterated integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Kernel {
    /// `dt / t`
    Zero,
    /// `m dt / (1 - t^m)`
    Level(u32),
    /// `-dt / (1 - t)`
    LandenY,
    /// `dt / t + dt / (1 - t)`
    LandenX,
}

impl Kernel {
    fn eval(self, t: f64, omt: f64) -> f64 {
        match self {
            Kernel::Zero => 1.0 / t,
            Kernel::Level(m) => {
                let mut geo = 0.0;
                let mut p = 1.0;
                for _ in 0..m {
                    geo += p;
                    p *= t;
                }
                m as f64 / (omt * geo)
            }
            Kernel::LandenY => -1.0 / omt,
            Kernel::LandenX => 1.0 / t + 1.0 / omt,
        }
    }
}

pub(crate) fn level_kernels(m: u32, k: &Index) -> Vec<Kernel> {
    word_from_index(k)
        .letters()
        .iter()
        .map(|l| match l {
            Letter::X => Kernel::Zero,
            Letter::Y => Kernel::Level(m),
        })
        .collect()
}

/// Kernels of `x -> Li_k(x / (x - 1))` as an iterated integral in `x`.
pub(crate) fn landen_kernels(k: &Index) -> Vec<Kernel> {
    word_from_index(k)
        .letters()
        .iter()
        .map(|l| match l {
            Letter::X => Kernel::LandenX,
            Letter::Y => Kernel::LandenY,
        })
        .collect()
}

/// Cell weights: `WEIGHTS[q][j] = int_q^{q+1} L_j(u) du` for the Lagrange basis on nodes `0..STENCIL`.
fn cell_weights() -> &'static [[f64; STENCIL]; STENCIL] {
    static W: OnceLock<[[f64; STENCIL]; STENCIL]> = OnceLock::new();
    W.get_or_init(|| {
        let mut out = [[0.0; STENCIL]; STENCIL];
        for j in 0..STENCIL {
            // coefficients of prod_{i != j} (u - i) / (j - i), lowest degree first
            let mut poly = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for i in 0..STENCIL {
                if i == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * BigRational::from_integer(BigInt::from(i));
                }
                poly = next;
                denom *= BigRational::from_integer(BigInt::from(j as i64 - i as i64));
            }
            for q in 0..STENCIL {
                let mut acc = BigRational::zero();
                for (d, c) in poly.iter().enumerate() {
                    let e = d as u32 + 1;
                    let hi = BigInt::from(q + 1).pow(e);
                    let lo = BigInt::from(q).pow(e);
                    acc += c * BigRational::new(hi - lo, BigInt::from(e));
                }
                out[q][j] = (acc / &denom).to_f64().unwrap();
            }
        }
        out
    })
}

/// Abscissae of one lattice: points `t`, complements `1 - t` and Jacobians `dt/dx`.
pub(crate) struct Grid {
    pub t: Vec<f64>,
    pub omt: Vec<f64>,
    pub dt: Vec<f64>,
    pub h: f64,
}

impl Grid {
    pub fn new(z: f64, one_minus_z: f64, level: u32) -> Grid {
        let h = 2f64.powi(-(level as i32));
        let n = (2.0 * X_MAX / h).round() as usize;
        let mut t = Vec::with_capacity(n + 1);
        let mut omt = Vec::with_capacity(n + 1);
        let mut dt = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = -X_MAX + i as f64 * h;
            let v = 0.5 * PI * x.sinh();
            let a = (-2.0 * v.abs()).exp();
            let (ti, gap) = if v >= 0.0 {
                (z / (1.0 + a), z * a / (1.0 + a))
            } else {
                (z * a / (1.0 + a), z / (1.0 + a))
            };
            t.push(ti);
            omt.push(one_minus_z + gap);
            dt.push(z * PI * x.cosh() * a / ((1.0 + a) * (1.0 + a)));
        }
        Grid { t, omt, dt, h }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    /// Cumulative integral of the samples `g` (in the lattice variable), starting at 0.
    fn cumulative(&self, g: &[f64]) -> Vec<f64> {
        let w = cell_weights();
        let n = g.len();
        let mut out = vec![0.0; n];
        let mut acc = 0.0;
        let mut comp = 0.0;
        for i in 0..n - 1 {
            let start = i.saturating_sub(STENCIL / 2 - 1).min(n - STENCIL);
            let q = i - start;
            let mut cell = 0.0;
            for j in 0..STENCIL {
                cell += w[q][j] * g[start + j];
            }
            let y = cell * self.h - comp;
            let s = acc + y;
            comp = (s - acc) - y;
            acc = s;
            out[i + 1] = acc;
        }
        out
    }

    /// Values of the iterated integral of `kernels` (innermost first) at every node.
    pub fn iterate(&self, kernels: &[Kernel]) -> Vec<f64> {
        let mut f = vec![1.0; self.len()];
        for &k in kernels {
            let g: Vec<f64> = (0..self.len())
                .map(|i| {
                    if f[i] == 0.0 || self.dt[i] == 0.0 {
                        0.0
                    } else {
                        k.eval(self.t[i], self.omt[i]) * f[i] * self.dt[i]
                    }
                })
                .collect();
            f = self.cumulative(&g);
        }
        f
    }

    /// Trapezoidal sum of `weight(t, 1 - t) * values / t` over the whole lattice.
    pub fn integrate_against<W: Fn(f64, f64) -> f64>(&self, values: &[f64], weight: W) -> f64 {
        let mut s = 0.0;
        for i in 0..self.len() {
            if values[i] == 0.0 || self.dt[i] == 0.0 {
                continue;
            }
            s += weight(self.t[i], self.omt[i]) * values[i] / self.t[i] * self.dt[i];
        }
        s * self.h
    }
}

/// Runs `eval(level)` on successively finer lattices until two levels agree to `abs_tol`,
/// taken relative to the value once it exceeds 1 in magnitude.
pub(crate) fn refine<F>(what: &str, cfg: &QuadConfig, eval: F) -> Result<Approx>
where
    F: Fn(u32) -> f64,
{
    cfg.validate()?;
    let mut prev = eval(FIRST_LEVEL);
    let mut nodes = 0u64;
    for level in FIRST_LEVEL + 1..=cfg.max_level.max(FIRST_LEVEL + 1) {
        let cur = eval(level);
        nodes += (2.0 * X_MAX * 2f64.powi(level as i32)) as u64;
        let diff = (cur - prev).abs();
        if !cur.is_finite() {
            break;
        }
        if diff < cfg.abs_tol * cur.abs().max(1.0) {
            return Ok(Approx {
                value: cur,
                err_bound: diff,
                route: Route::Quadrature,
                terms_used: nodes,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        what: format!("{what}: lattice did not converge by level {}", cfg.max_level),
        estimate: prev,
        error: f64::NAN,
    })
}

fn iterated_at(kernels: &[Kernel], z: f64, omz: f64, level: u32) -> f64 {
    let grid = Grid::new(z, omz, level);
    *grid.iterate(kernels).last().unwrap()
}

/// `A^(m)(k; z)` by integrating the differential relations from 0.
pub fn a_m_quad(m: u32, k: &Index, z: f64, cfg: &QuadConfig) -> Result<Approx> {
    if m == 0 {
        return Err(Error::ParamOutOfRange("level m must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("quadrature route needs z in [0, 1], got {z}")));
    }
    if k.is_empty() {
        return Ok(Approx::exact(1.0, Route::Quadrature));
    }
    if z == 0.0 {
        return Ok(Approx::exact(0.0, Route::Quadrature));
    }
    if z == 1.0 && !k.is_admissible() {
        return Err(Error::Divergent("index not admissible at z=1".into()));
    }
    let kernels = level_kernels(m, k);
    refine("a_m_quad", cfg, |level| iterated_at(&kernels, z, 1.0 - z, level))
}

/// `Li_k(x / (x - 1))` for `x` in `[0, 1)`, as an iterated integral in `x`.
pub fn landen_li_quad(k: &Index, x: f64, cfg: &QuadConfig) -> Result<Approx> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, 1), got {x}")));
    }
    if k.is_empty() {
        return Ok(Approx::exact(1.0, Route::Quadrature));
    }
    if x == 0.0 {
        return Ok(Approx::exact(0.0, Route::Quadrature));
    }
    let kernels = landen_kernels(k);
    refine("landen_li_quad", cfg, |level| iterated_at(&kernels, x, 1.0 - x, level))
}

/// Pointwise `A^(m)(k; z)` for `0 <= z < 1` given an accurate `1 - z`: the series near 0 and
/// the lattice otherwise.
pub(crate) fn a_point(m: u32, k: &Index, z: f64, one_minus_z: f64, cfg: &QuadConfig) -> Result<f64> {
    if k.is_empty() {
        return Ok(1.0);
    }
    if z <= 0.0 {
        return Ok(0.0);
    }
    if z <= 0.75 {
        let scfg = crate::series::EvalConfig::default();
        return Ok(crate::series::a_m_series(m, k, z, &scfg)?.value);
    }
    let kernels = level_kernels(m, k);
    let tight = QuadConfig {
        abs_tol: cfg.abs_tol * 1e-2,
        ..*cfg
    };
    Ok(refine("a_point", &tight, |level| iterated_at(&kernels, z, one_minus_z, level))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn cell_weights_integrate_polynomials() {
        let w = cell_weights();
        for q in 0..STENCIL {
            let s: f64 = w[q].iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
            let lin: f64 = w[q].iter().enumerate().map(|(j, c)| c * j as f64).sum();
            assert!((lin - (q as f64 + 0.5)).abs() < 1e-11);
        }
    }

    #[test]
    fn spec_examples() {
        let cfg = QuadConfig::default();
        for z in [0.3f64, 0.6] {
            let v = a_m_quad(2, &idx("1"), z, &cfg).unwrap();
            assert!((v.value - 2.0 * z.atanh()).abs() < 1e-10, "{v:?}");
        }
        let v = a_m_quad(2, &idx("2"), 1.0, &cfg).unwrap();
        assert!((v.value - PI * PI / 4.0).abs() < 1e-10, "{v:?}");
        let v = a_m_quad(1, &idx("1,2"), 1.0, &cfg).unwrap();
        assert!((v.value - 1.202_056_903_159_594_3).abs() < 1e-10, "{v:?}");
        assert!(matches!(a_m_quad(2, &idx("2,1"), 1.0, &cfg), Err(Error::Divergent(_))));
    }

    #[test]
    fn landen_weight_one() {
        // Li_1(x/(x-1)) = log(1 - x)
        let v = landen_li_quad(&idx("1"), 0.7, &QuadConfig::default()).unwrap();
        assert!((v.value - 0.3f64.ln()).abs() < 1e-10);
    }
}
