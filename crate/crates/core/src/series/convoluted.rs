//! Convoluted T-values `T(k ⊛ l)`.

use super::harmonic::{evaluate, reduce, Bounded};
use super::nested::Letter;
use super::{Approx, EvalConfig, Route};
use crate::error::{Error, Result};
use crate::finite_sums::{cached_sequence, FiniteSumKind};
use crate::index::Index;
use nalgebra::{DMatrix, DVector};

fn check(k: &Index, l: &Index) -> Result<()> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::InvalidIndex("convoluted T-values need nonempty indices".into()));
    }
    if k.last().unwrap() + l.last().unwrap() < 2 {
        return Err(Error::Divergent("outer exponent sum below 2".into()));
    }
    Ok(())
}

fn split(k: &Index) -> (Index, u32) {
    let p = k.parts();
    (Index::from(&p[..p.len() - 1]), p[p.len() - 1])
}

/// Direct evaluation of the defining series from finite-sum prefix sequences, with the tail
/// obtained by least-squares extrapolation over a ladder of partial sums.
pub fn convoluted_t(k: &Index, l: &Index, cfg: &EvalConfig) -> Result<Approx> {
    cfg.validate()?;
    check(k, l)?;
    let (kp, kr) = split(k);
    let (lp, ls) = split(l);
    let r = k.depth();
    let s = l.depth();
    let odd_base = r % 2 == 1;
    let l_kind = if r % 2 == s % 2 {
        FiniteSumKind::T
    } else {
        FiniteSumKind::S
    };
    let n_max = cfg.trunc_n as usize;
    let tk = cached_sequence(FiniteSumKind::T, &kp, n_max);
    let tl = cached_sequence(l_kind, &lp, n_max);
    let e = (kr + ls) as i32;

    let levels = 14usize;
    let ladder: Vec<usize> = (0..levels).rev().map(|j| n_max >> j).filter(|&n| n >= 16).collect();
    let mut partial = Vec::with_capacity(ladder.len());
    let mut acc = crate::finite_sums::Neumaier::default();
    let mut next = 0;
    for n in 1..=n_max {
        let base = if odd_base { 2.0 * n as f64 - 1.0 } else { 2.0 * n as f64 };
        acc.add(2.0 * tk[n] * tl[n] * base.powi(-e));
        while next < ladder.len() && ladder[next] == n {
            partial.push(acc.value());
            next += 1;
        }
    }
    let logs = (r - 1) + (s - 1);
    let fit = |orders: usize| -> Option<f64> {
        extrapolate(&ladder, &partial, (e - 1) as f64, orders, logs)
    };
    let hi = fit(3);
    let lo = fit(2);
    match (hi, lo) {
        (Some(a), Some(b)) => Ok(Approx {
            value: a,
            err_bound: (a - b).abs() + 1e-15 * a.abs(),
            route: Route::Series,
            terms_used: n_max as u64,
        }),
        _ => Err(Error::NonConvergence {
            what: "convoluted T-value extrapolation".into(),
            estimate: acc.value(),
            error: f64::NAN,
        }),
    }
}

/// Fits `S(N) = S + sum_{q<orders} sum_{i<=logs} c log^i N / N^{lead+q}` by least squares.
fn extrapolate(ns: &[usize], sums: &[f64], lead: f64, orders: usize, logs: usize) -> Option<f64> {
    let cols = 1 + orders * (logs + 1);
    if ns.len() < cols + 1 {
        return None;
    }
    let rows = ns.len();
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    for (i, &n) in ns.iter().enumerate() {
        let x = n as f64;
        let lg = x.ln();
        a[(i, 0)] = 1.0;
        let mut c = 1;
        for q in 0..orders {
            let base = x.powf(-(lead + q as f64));
            for p in 0..=logs {
                a[(i, c)] = base * lg.powi(p as i32);
                c += 1;
            }
        }
    }
    let mut scales = vec![1.0; cols];
    for j in 0..cols {
        let m = (0..rows).map(|i| a[(i, j)].abs()).fold(0.0, f64::max);
        if m > 0.0 {
            scales[j] = m;
            for i in 0..rows {
                a[(i, j)] /= m;
            }
        }
    }
    let b = DVector::from_column_slice(sums);
    let svd = a.svd(true, true);
    let sol = svd.solve(&b, 1e-14).ok()?;
    Some(sol[0] / scales[0])
}

/// Evaluation through the quasi-shuffle reduction to nested sums with residue classes mod 2.
pub fn convoluted_t_reduced(k: &Index, l: &Index, cfg: &EvalConfig) -> Result<Approx> {
    cfg.validate()?;
    check(k, l)?;
    let (kp, kr) = split(k);
    let (lp, ls) = split(l);
    let r = k.depth();
    let s = l.depth();
    let k_letters: Vec<Letter> = kp
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &e)| Letter {
            exponent: e as f64,
            residue: ((i + 1) % 2) as u32,
        })
        .collect();
    let l_letters: Vec<Letter> = lp
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &e)| Letter {
            exponent: e as f64,
            residue: ((i + 1 + r + s) % 2) as u32,
        })
        .collect();
    let outer = Letter {
        exponent: (kr + ls) as f64,
        residue: (r % 2) as u32,
    };
    let comb = reduce(
        &[Bounded::strict(k_letters), Bounded::strict(l_letters)],
        outer,
        2,
    );
    let n = cfg.trunc_n.min(20_000);
    let v = evaluate(&comb, 2, n)?;
    let norm = 2f64.powi((r + s - 1) as i32);
    Ok(Approx {
        value: v.value * norm,
        err_bound: v.err * norm,
        route: Route::Series,
        terms_used: v.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::super::mtv;
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn special_cases_reduce_to_mtvs() {
        let cfg = EvalConfig { trunc_n: 200_000, ..Default::default() };
        let t3 = mtv(&idx("3"), &cfg).unwrap().value;
        let t113 = mtv(&idx("1,1,3"), &cfg).unwrap().value;
        for f in [convoluted_t, convoluted_t_reduced] {
            let v = f(&idx("2"), &idx("1"), &cfg).unwrap();
            assert!((v.value - t3).abs() < 1e-9, "{v:?} {t3}");
            let v = f(&idx("1"), &idx("1,1,2"), &cfg).unwrap();
            assert!((v.value - t113).abs() < 1e-9, "{v:?} {t113}");
        }
    }

    #[test]
    fn routes_agree_on_one_one() {
        let cfg = EvalConfig { trunc_n: 400_000, ..Default::default() };
        let a = convoluted_t(&idx("1,1"), &idx("1,1"), &cfg).unwrap();
        let b = convoluted_t_reduced(&idx("1,1"), &idx("1,1"), &cfg).unwrap();
        assert!((a.value - b.value).abs() < 1e-8, "{a:?} {b:?}");
        // an even-depth right factor gives an S-sum prefix, not T(1,3)
        let c = convoluted_t_reduced(&idx("1"), &idx("1,2"), &cfg).unwrap();
        let d = convoluted_t(&idx("1"), &idx("1,2"), &cfg).unwrap();
        assert!((c.value - d.value).abs() < 1e-8, "{c:?} {d:?}");
    }
}
