//! Truncated series with tail compensation for level-m polylogarithms, multiple T-functions
//! and convoluted T-values.

pub mod convoluted;
pub mod harmonic;
pub mod nested;

use crate::error::{Error, Result};
use crate::index::Index;
use nested::{sum_at_one, sum_geometric, Chain, TailMode};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use convoluted::{convoluted_t, convoluted_t_reduced};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Truncation point of the explicit sum at `z = 1`.
    pub trunc_n: u64,
    /// 0: raw truncation, 1: tail of the outermost variable only, 2: full nested tail.
    pub tail_order: u8,
    pub target_abs_tol: f64,
    pub max_terms: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            trunc_n: 1_000_000,
            tail_order: 2,
            target_abs_tol: 1e-9,
            max_terms: 100_000_000,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trunc_n < 10 {
            return Err(Error::ParamOutOfRange("truncation N must be at least 10".into()));
        }
        if self.tail_order > 2 {
            return Err(Error::ParamOutOfRange("tail order must be 0, 1 or 2".into()));
        }
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::ParamOutOfRange("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn tail_mode(&self) -> TailMode {
        match self.tail_order {
            0 => TailMode::None,
            1 => TailMode::Outer,
            _ => TailMode::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Series,
    Quadrature,
    Expansion,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Series => "series",
            Route::Quadrature => "quadrature",
            Route::Expansion => "expansion",
        };
        write!(f, "{s}")
    }
}

/// A numerical value with an error estimate and the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub value: f64,
    pub err_bound: f64,
    pub route: Route,
    pub terms_used: u64,
}

impl Approx {
    pub fn exact(value: f64, route: Route) -> Self {
        Approx {
            value,
            err_bound: 0.0,
            route,
            terms_used: 0,
        }
    }

    pub fn scaled(self, c: f64) -> Self {
        Approx {
            value: self.value * c,
            err_bound: self.err_bound * c.abs(),
            ..self
        }
    }
}

/// Largest `z < 1` accepted by [`a_m_series`].
pub const SERIES_Z_LIMIT: f64 = 0.999;

/// `A^(m)(k; z) = m^r sum_{n_1<...<n_r, n_i = i mod m} z^{n_r} / prod n_i^{k_i}`.
pub fn a_m_series(m: u32, k: &Index, z: f64, cfg: &EvalConfig) -> Result<Approx> {
    if z > SERIES_Z_LIMIT && z < 1.0 {
        return Err(Error::Domain(format!(
            "series route refuses z = {z} in ({SERIES_Z_LIMIT}, 1); use the quadrature route"
        )));
    }
    a_m_series_any(m, k, z, cfg)
}

/// Like [`a_m_series`] but without the refusal window just below `z = 1`.
pub(crate) fn a_m_series_any(m: u32, k: &Index, z: f64, cfg: &EvalConfig) -> Result<Approx> {
    cfg.validate()?;
    if m == 0 {
        return Err(Error::ParamOutOfRange("level m must be at least 1".into()));
    }
    if k.is_empty() {
        return Ok(Approx::exact(1.0, Route::Series));
    }
    if !z.is_finite() || z.abs() > 1.0 || z == -1.0 {
        return Err(Error::Domain(format!("series needs -1 < z <= 1, got {z}")));
    }
    let exps: Vec<f64> = k.parts().iter().map(|&p| p as f64).collect();
    let chain = Chain::level(m, &exps);
    let norm = (m as f64).powi(k.depth() as i32);
    let v = if z == 1.0 {
        if !k.is_admissible() {
            return Err(Error::Divergent("index not admissible at z=1".into()));
        }
        sum_at_one(&chain, cfg.trunc_n, cfg.tail_mode())?
    } else {
        sum_geometric(&chain, z, cfg.max_terms)?
    };
    Ok(Approx {
        value: v.value * norm,
        err_bound: v.err * norm,
        route: Route::Series,
        terms_used: v.terms,
    })
}

/// `T^(m)(prefix, s) = m^r sum n_1^{-k_1} ... n_{r-1}^{-k_{r-1}} n_r^{-s}` over `n_i = i mod m`.
pub fn t_m_function(m: u32, prefix: &Index, s: f64, cfg: &EvalConfig) -> Result<Approx> {
    cfg.validate()?;
    if m == 0 {
        return Err(Error::ParamOutOfRange("level m must be at least 1".into()));
    }
    if !(s > 1.0) {
        return Err(Error::Divergent(format!("s must exceed 1, got {s}")));
    }
    let mut exps: Vec<f64> = prefix.parts().iter().map(|&p| p as f64).collect();
    exps.push(s);
    let chain = Chain::level(m, &exps);
    let norm = (m as f64).powi(exps.len() as i32);
    let v = sum_at_one(&chain, cfg.trunc_n, cfg.tail_mode())?;
    Ok(Approx {
        value: v.value * norm,
        err_bound: v.err * norm,
        route: Route::Series,
        terms_used: v.terms,
    })
}

/// Multiple T-value `T(k)` for admissible `k`.
pub fn mtv(k: &Index, cfg: &EvalConfig) -> Result<Approx> {
    level_value(2, k, cfg)
}

/// Multiple zeta value `zeta(k)` for admissible `k`.
pub fn mzv(k: &Index, cfg: &EvalConfig) -> Result<Approx> {
    level_value(1, k, cfg)
}

/// `T^(m)(k)` for admissible `k`.
pub fn level_value(m: u32, k: &Index, cfg: &EvalConfig) -> Result<Approx> {
    if !k.is_admissible() {
        return Err(Error::Divergent("index not admissible at z=1".into()));
    }
    let parts = k.parts();
    let prefix = Index::new(parts[..parts.len() - 1].to_vec())?;
    t_m_function(m, &prefix, *parts.last().unwrap() as f64, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig {
            trunc_n: 2000,
            ..Default::default()
        }
    }

    #[test]
    fn spec_examples() {
        let c = cfg();
        assert!((a_m_series(2, &idx("1"), 0.5, &c).unwrap().value - 3f64.ln()).abs() < 1e-14);
        assert!((a_m_series(1, &idx("1"), 0.5, &c).unwrap().value - 2f64.ln()).abs() < 1e-14);
        assert!((a_m_series(2, &idx("2"), 1.0, &c).unwrap().value - PI * PI / 4.0).abs() < 1e-13);
        assert!((t_m_function(1, &Index::empty(), 2.0, &c).unwrap().value - PI * PI / 6.0).abs() < 1e-13);
        assert!(matches!(a_m_series(2, &idx("2,1"), 1.0, &c), Err(Error::Divergent(_))));
        assert!(matches!(a_m_series(2, &idx("2"), 0.9995, &c), Err(Error::Domain(_))));
        assert!(matches!(t_m_function(2, &idx("1"), 1.0, &c), Err(Error::Divergent(_))));
    }

    #[test]
    fn tail_orders_improve_accuracy() {
        let exact = 1.202_056_903_159_594_3;
        let mut c = EvalConfig { trunc_n: 1000, ..Default::default() };
        let errs: Vec<f64> = (0..=2)
            .map(|o| {
                c.tail_order = o;
                (mzv(&idx("1,2"), &c).unwrap().value - exact).abs()
            })
            .collect();
        assert!(errs[0] > 1e-4);
        assert!(errs[1] < errs[0] && errs[1] > 1e-10, "{errs:?}");
        assert!(errs[2] < 1e-13, "{errs:?}");
    }
}
