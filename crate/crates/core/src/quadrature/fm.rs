use crate::error::{Error, Result};

fn check_level(m: u32) -> Result<()> {
    if m == 1 || m == 2 {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange(format!(
            "closed-form f_m is known only for m = 1, 2 (got {m})"
        )))
    }
}

/// `f_1(z) = 1 - e^{-z}` and `f_2(z) = tanh z`.
pub fn fm_eval(m: u32, z: f64) -> Result<f64> {
    check_level(m)?;
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("f_m needs z >= 0, got {z}")));
    }
    Ok(if m == 1 { -(-z).exp_m1() } else { z.tanh() })
}

/// Residuals `|y' + y^m - 1|` and `|(log y)' - m^2 e^{-mz} / (1 - e^{-m^2 z})|` with
/// central differences of step `1e-6 max(1, z)`.
pub fn ode_residual(m: u32, z: f64) -> Result<(f64, f64)> {
    check_level(m)?;
    if !(z > 0.0) {
        return Err(Error::Domain(format!("ODE residual needs z > 0, got {z}")));
    }
    let h = 1e-6 * z.max(1.0);
    let y = |x: f64| fm_eval(m, x.max(0.0));
    let dy = (y(z + h)? - y(z - h)?) / (2.0 * h);
    let dlog = (y(z + h)?.ln() - y(z - h)?.ln()) / (2.0 * h);
    let yz = y(z)?;
    let mf = m as f64;
    let r1 = (dy + yz.powi(m as i32) - 1.0).abs();
    let rhs = mf * mf * (-mf * z).exp() / -(-mf * mf * z).exp_m1();
    let r2 = (dlog - rhs).abs();
    Ok((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values() {
        assert_eq!(fm_eval(1, 0.0).unwrap(), 0.0);
        assert!(1.0 - fm_eval(2, 20.0).unwrap() < 1e-16);
        assert!(fm_eval(3, 1.0).is_err());
    }

    #[test]
    fn residuals_small() {
        for m in [1, 2] {
            for z in [0.5, 1.0, 2.0, 5.0] {
                let (a, b) = ode_residual(m, z).unwrap();
                assert!(a < 1e-8 && b < 1e-8, "m={m} z={z}: {a} {b}");
            }
        }
    }
}
