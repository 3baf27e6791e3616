use super::lattice::{landen_kernels, level_kernels, refine, Grid};
use super::{a_point, gamma_fn, tanh_sinh_complement, QuadConfig};
use crate::error::{Error, Result};
use crate::index::Index;
use crate::series::{Approx, Route};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which Mellin-type transform to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    /// Arakawa–Kaneko `xi(k; s)`: kernel `Li_k(1 - e^{-t}) / (e^t - 1)`.
    Xi,
    /// Kaneko–Tsumura `eta(k; s)`: kernel `Li_k(1 - e^t) / (1 - e^t)`.
    Eta,
    /// Kaneko–Tsumura `psi(k; s)`: kernel `A(k; tanh(t/2)) / sinh t`.
    Psi,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Xi => "xi",
            TransformKind::Eta => "eta",
            TransformKind::Psi => "psi",
        })
    }
}

impl FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "xi" => Ok(TransformKind::Xi),
            "eta" => Ok(TransformKind::Eta),
            "psi" => Ok(TransformKind::Psi),
            other => Err(Error::ParamOutOfRange(format!("unknown transform '{other}'"))),
        }
    }
}

fn check_args(k: &Index, s: f64) -> Result<()> {
    if k.is_empty() {
        return Err(Error::InvalidIndex("transform needs a nonempty index".into()));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("transform needs s > 0, got {s}")));
    }
    Ok(())
}

fn is_positive_integer(s: f64) -> bool {
    s >= 1.0 && s.fract() == 0.0 && s < 64.0
}

/// `xi`, `eta` or `psi` at real `s > 0`. Integer `s` is evaluated on the substituted
/// `int_0^1 ... du` forms with a single lattice; other `s` go through [`transform_direct`].
pub fn transform(kind: TransformKind, k: &Index, s: f64, cfg: &QuadConfig) -> Result<Approx> {
    check_args(k, s)?;
    if !is_positive_integer(s) {
        return match kind {
            TransformKind::Eta => Err(Error::Domain(
                "eta is only available at positive integer s".into(),
            )),
            _ => transform_direct(kind, k, s, cfg),
        };
    }
    let norm = 1.0 / gamma_fn(s)?;
    let p = s - 1.0;
    let (kernels, weight): (_, Box<dyn Fn(f64, f64) -> f64>) = match kind {
        // u = 1 - e^{-t}
        TransformKind::Xi => (
            level_kernels(1, k),
            Box::new(move |_u, omu: f64| (-omu.ln()).powf(p)),
        ),
        // u = tanh(t/2)
        TransformKind::Psi => (
            level_kernels(2, k),
            Box::new(move |u: f64, omu: f64| ((1.0 + u) / omu).ln().powf(p)),
        ),
        // x = 1 - e^{-t}, so that 1 - e^t = x / (x - 1)
        TransformKind::Eta => (
            landen_kernels(k),
            Box::new(move |_x, omx: f64| -(-omx.ln()).powf(p)),
        ),
    };
    let what = format!("{kind} transform");
    let approx = refine(&what, cfg, |level| {
        let grid = Grid::new(1.0, 0.0, level);
        let f = grid.iterate(&kernels);
        grid.integrate_against(&f, &weight)
    })?;
    Ok(approx.scaled(norm))
}

/// `xi` or `psi` from the defining integral over `t in (0, inf)`, mapped to `(0, 1)` by
/// `t = -log u`, with pointwise evaluation of the inner function.
pub fn transform_direct(kind: TransformKind, k: &Index, s: f64, cfg: &QuadConfig) -> Result<Approx> {
    check_args(k, s)?;
    let norm = 1.0 / gamma_fn(s)?;
    let p = s - 1.0;
    let inner = |m: u32, z: f64, omz: f64| -> f64 {
        a_point(m, k, z, omz, cfg).unwrap_or(f64::NAN)
    };
    let approx = match kind {
        TransformKind::Xi => tanh_sinh_complement(
            |u, _du, omu| (-u.ln()).powf(p) * inner(1, omu, u) / omu,
            0.0,
            1.0,
            cfg,
        )?,
        TransformKind::Psi => tanh_sinh_complement(
            |u, _du, omu| {
                let z = omu / (1.0 + u);
                let omz = 2.0 * u / (1.0 + u);
                (-u.ln()).powf(p) * 2.0 * inner(2, z, omz) / (omu * (1.0 + u))
            },
            0.0,
            1.0,
            cfg,
        )?,
        TransformKind::Eta => {
            return Err(Error::Domain(
                "eta has no direct real-line evaluation: its inner argument leaves [-1, 1)".into(),
            ))
        }
    };
    if !approx.value.is_finite() {
        return Err(Error::NonConvergence {
            what: format!("{kind} transform (direct)"),
            estimate: approx.value,
            error: approx.err_bound,
        });
    }
    Ok(approx.scaled(norm))
}

/// `(1/Gamma(s)) int_0^inf t^{s-1} A(k; e^{-t}) / sinh t dt`, which equals `T(k, s)`.
pub fn transform_prop25(k: &Index, s: f64, cfg: &QuadConfig) -> Result<Approx> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    let norm = 1.0 / gamma_fn(s)?;
    let p = s - 1.0;
    let approx = tanh_sinh_complement(
        |u, _du, omu| {
            let a = a_point(2, k, u, omu, cfg).unwrap_or(f64::NAN);
            (-u.ln()).powf(p) * 2.0 * a / (omu * (1.0 + u))
        },
        0.0,
        1.0,
        cfg,
    )?;
    Ok(approx.scaled(norm))
}

/// Level-m transform at integer `p`: `int_0^1 A^(m)({1}_{p-1}; u) A^(m)(k; u) du / u`.
pub fn psi_m(m: u32, k: &Index, p: u32, cfg: &QuadConfig) -> Result<Approx> {
    if !(m == 1 || m == 2) {
        return Err(Error::ParamOutOfRange(format!("psi_m needs m in {{1, 2}}, got {m}")));
    }
    if p == 0 {
        return Err(Error::ParamOutOfRange("psi_m needs p >= 1".into()));
    }
    if k.is_empty() {
        return Err(Error::InvalidIndex("psi_m needs a nonempty index".into()));
    }
    let ones = Index::ones(p as usize - 1);
    tanh_sinh_complement(
        |u, _du, omu| {
            let a = a_point(m, k, u, omu, cfg).unwrap_or(f64::NAN);
            let b = a_point(m, &ones, u, omu, cfg).unwrap_or(f64::NAN);
            a * b / u
        },
        0.0,
        1.0,
        cfg,
    )
    .map(|r| Approx {
        route: Route::Quadrature,
        ..r
    })
}

/// `int_0^z log^mm(t) log^n((1 - t)/(1 + t)) dt / t`.
pub fn lemma27_lhs(mm: u32, n: u32, z: f64, cfg: &QuadConfig) -> Result<Approx> {
    if n == 0 {
        return Err(Error::ParamOutOfRange("n must be at least 1".into()));
    }
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain(format!("z must lie in (0, 1], got {z}")));
    }
    let omz = 1.0 - z;
    tanh_sinh_complement(
        |t, _dt, dz| {
            let omt = omz + dz;
            let l = (omt / (1.0 + t)).ln();
            t.ln().powi(mm as i32) * l.powi(n as i32) / t
        },
        0.0,
        z,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{a_m_series, level_value, EvalConfig};
    use std::f64::consts::PI;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    const ZETA3: f64 = 1.202_056_903_159_594_3;

    #[test]
    fn transform_examples() {
        let cfg = QuadConfig::default();
        let xi = transform(TransformKind::Xi, &idx("1"), 2.0, &cfg).unwrap();
        assert!((xi.value - 2.0 * ZETA3).abs() < 1e-9, "{xi:?}");
        let psi = transform(TransformKind::Psi, &idx("1"), 1.0, &cfg).unwrap();
        assert!((psi.value - PI * PI / 4.0).abs() < 1e-9, "{psi:?}");
        let eta = transform(TransformKind::Eta, &idx("1"), 1.0, &cfg).unwrap();
        assert!((eta.value - PI * PI / 6.0).abs() < 1e-9, "{eta:?}");
        assert!(transform(TransformKind::Eta, &idx("1"), 1.5, &cfg).is_err());
        assert!(transform(TransformKind::Xi, &idx("1"), 0.0, &cfg).is_err());
    }

    #[test]
    fn direct_matches_lattice() {
        let cfg = QuadConfig::default();
        for kind in [TransformKind::Xi, TransformKind::Psi] {
            for k in ["2", "1,2"] {
                let a = transform(kind, &idx(k), 2.0, &cfg).unwrap().value;
                let b = transform_direct(kind, &idx(k), 2.0, &cfg).unwrap().value;
                assert!((a - b).abs() < 1e-8, "{kind} {k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn psi_at_one_is_shifted_t_value() {
        let cfg = QuadConfig::default();
        let ecfg = EvalConfig::default();
        for k in ["2", "1,1", "2,1"] {
            let lhs = transform(TransformKind::Psi, &idx(k), 1.0, &cfg).unwrap().value;
            let rhs = level_value(2, &idx(k).plus().unwrap(), &ecfg).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-8, "{k}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn psi_m_examples() {
        let cfg = QuadConfig::default();
        let t3 = level_value(2, &idx("3"), &EvalConfig::default()).unwrap().value;
        let v = psi_m(2, &idx("2"), 1, &cfg).unwrap().value;
        assert!((v - t3).abs() < 1e-8);
        let v = psi_m(1, &idx("1"), 2, &cfg).unwrap().value;
        assert!((v - 2.0 * ZETA3).abs() < 1e-8);
    }

    #[test]
    fn prop25_gives_t_value() {
        let cfg = QuadConfig::default();
        let ecfg = EvalConfig::default();
        let lhs = transform_prop25(&idx("1"), 2.0, &cfg).unwrap().value;
        let rhs = level_value(2, &idx("1,2"), &ecfg).unwrap().value;
        assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn lemma27_basic() {
        let cfg = QuadConfig::default();
        let v = lemma27_lhs(0, 1, 1.0, &cfg).unwrap();
        assert!((v.value + PI * PI / 4.0).abs() < 1e-9);
    }

    #[test]
    fn quad_matches_series() {
        let cfg = QuadConfig::default();
        let ecfg = EvalConfig::default();
        for m in [1, 2] {
            for k in ["1", "2", "1,2", "3,1,1", "2,1,2"] {
                for z in [0.25, 0.5, 0.75] {
                    let a = super::super::a_m_quad(m, &idx(k), z, &cfg).unwrap().value;
                    let b = a_m_series(m, &idx(k), z, &ecfg).unwrap().value;
                    assert!((a - b).abs() < 1e-9, "m={m} k={k} z={z}: {a} vs {b}");
                }
            }
        }
    }
}
