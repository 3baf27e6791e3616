//! Integral-route evaluation: tanh-sinh quadrature, double-exponential lattices for iterated
//! integrals, the integral transforms and the level-m auxiliary functions.

mod fm;
mod lattice;
mod tanh_sinh;
mod transforms;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub use fm::{fm_eval, ode_residual};
pub use lattice::{a_m_quad, landen_li_quad};
pub use tanh_sinh::{tanh_sinh, tanh_sinh_complement};
pub use transforms::{
    lemma27_lhs, psi_m, transform, transform_direct, transform_prop25, TransformKind,
};

pub(crate) use lattice::a_point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub max_level: u32,
    pub singularity_shave: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            max_level: 12,
            singularity_shave: 1e-15,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.singularity_shave > 0.0) {
            return Err(Error::ParamOutOfRange("quadrature tolerances must be positive".into()));
        }
        if self.max_level > 15 {
            return Err(Error::ParamOutOfRange("max_level must be at most 15".into()));
        }
        Ok(())
    }
}

/// Gamma function for `s > 0`.
pub fn gamma_fn(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("gamma needs s > 0, got {s}")));
    }
    if s.fract() == 0.0 && s <= 171.0 {
        return Ok(statrs::function::factorial::factorial(s as u64 - 1));
    }
    Ok(statrs::function::gamma::gamma(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 1e-12 * 24.0);
        assert!((gamma_fn(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!(gamma_fn(0.0).is_err());
        for i in 3..=50 {
            let s = i as f64 / 10.0;
            let lhs = gamma_fn(s + 1.0).unwrap();
            let rhs = s * gamma_fn(s).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "s={s}");
        }
    }
}
