use mtvlab_core::quadrature::{a_m_quad, psi_m, transform, QuadConfig, TransformKind};
use mtvlab_core::series::{a_m_series, mtv, mzv, t_m_function};
use mtvlab_core::{EvalConfig, Error, Index};
use std::f64::consts::PI;

const ZETA3: f64 = 1.202_056_903_159_594_2;

fn idx(s: &str) -> Index {
    s.parse().unwrap()
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (diff {:e})", (a - b).abs());
}

#[test]
fn depth_one_constants() {
    let cfg = EvalConfig::default();
    close(mtv(&idx("2"), &cfg).unwrap().value, PI * PI / 4.0, 1e-12);
    close(mzv(&idx("2"), &cfg).unwrap().value, PI * PI / 6.0, 1e-12);
    close(mtv(&idx("3"), &cfg).unwrap().value, 7.0 * ZETA3 / 4.0, 1e-12);
    close(mzv(&idx("4"), &cfg).unwrap().value, PI.powi(4) / 90.0, 1e-12);
}

#[test]
fn euler_relation_in_depth_two() {
    let cfg = EvalConfig::default();
    close(mzv(&idx("1,2"), &cfg).unwrap().value, ZETA3, 1e-10);
}

#[test]
fn elementary_functions_at_depth_one() {
    let cfg = EvalConfig::default();
    let q = QuadConfig::default();
    for z in [0.1f64, 0.5, 0.9] {
        let artanh2 = ((1.0 + z) / (1.0 - z)).ln();
        close(a_m_series(2, &idx("1"), z, &cfg).unwrap().value, artanh2, 1e-12);
        close(a_m_quad(2, &idx("1"), z, &q).unwrap().value, artanh2, 1e-9);
        close(a_m_series(1, &idx("1"), z, &cfg).unwrap().value, -(1.0 - z).ln(), 1e-12);
    }
}

#[test]
fn transforms_of_the_index_one() {
    // xi(1; s) = eta(1; s) = s zeta(s + 1)
    let q = QuadConfig::default();
    let cfg = EvalConfig::default();
    for s in [2.0, 3.0] {
        let target = s * t_m_function(1, &Index::empty(), s + 1.0, &cfg).unwrap().value;
        close(transform(TransformKind::Xi, &idx("1"), s, &q).unwrap().value, target, 1e-9);
        close(transform(TransformKind::Eta, &idx("1"), s, &q).unwrap().value, target, 1e-9);
    }
    close(transform(TransformKind::Xi, &idx("1"), 2.5, &q).unwrap().value,
        2.5 * t_m_function(1, &Index::empty(), 3.5, &cfg).unwrap().value, 1e-9);
}

#[test]
fn level_transform_reduces_to_psi_at_level_two() {
    let q = QuadConfig::default();
    let a = psi_m(2, &idx("2"), 2, &q).unwrap().value;
    let b = transform(TransformKind::Psi, &idx("2"), 2.0, &q).unwrap().value;
    close(a, b, 1e-9);
}

#[test]
fn divergence_is_reported() {
    let cfg = EvalConfig::default();
    assert!(matches!(mtv(&idx("1"), &cfg), Err(Error::Divergent(_))));
    assert!(a_m_series(2, &idx("2"), 1.5, &cfg).is_err());
}
