use super::limits::{limit_at_one, DEFAULT_LEVELS};
use super::{Outcome, Params, SuiteConfig};
use crate::error::{Error, Result};
use crate::expansion::{atom_value, expand_a, expansion_eval_at, psi_expansion, real_binom};
use crate::finite_sums::{prefix_sequence, FiniteSumKind};
use crate::index::{compositions, weak_compositions, Index};
use crate::quadrature::{
    a_point, gamma_fn, landen_li_quad, lemma27_lhs, ode_residual, psi_m, tanh_sinh_complement,
    transform, transform_prop25, TransformKind,
};
use crate::series::harmonic::{self, Bounded};
use crate::series::nested::Letter;
use crate::series::{a_m_series, convoluted_t, level_value, t_m_function, Approx, EvalConfig, Route};
use crate::words::prop212_check;
use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::sync::OnceLock;

pub(crate) struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
}

impl Ctx<'_> {
    fn ev(&self) -> &EvalConfig {
        &self.cfg.eval
    }

    /// `T(k)`, with `T(empty) = 1`.
    fn t(&self, k: &Index) -> Result<Approx> {
        atom_value(k, self.ev())
    }

    /// `T^(m)(k)`, with the empty index giving 1.
    fn tm(&self, m: u32, k: &Index) -> Result<Approx> {
        if k.is_empty() {
            return Ok(Approx::exact(1.0, Route::Series));
        }
        level_value(m, k, self.ev())
    }

    /// `T^(m)(prefix, s)` at real `s`.
    fn tf(&self, m: u32, prefix: &Index, s: f64) -> Result<Approx> {
        t_m_function(m, prefix, s, self.ev())
    }

    fn a(&self, m: u32, k: &Index, z: f64) -> Result<Approx> {
        if k.is_empty() {
            return Ok(Approx::exact(1.0, Route::Series));
        }
        a_m_series(m, k, z, self.ev())
    }

    fn tr(&self, kind: TransformKind, k: &Index, s: f64) -> Result<Approx> {
        transform(kind, k, s, &self.cfg.quad)
    }
}

/// Running linear combination of approximations with propagated error bounds.
#[derive(Default)]
struct Lin {
    value: f64,
    err: f64,
    terms: u64,
}

impl Lin {
    fn add(&mut self, c: f64, a: Approx) {
        self.value += c * a.value;
        self.err += c.abs() * a.err_bound;
        self.terms += a.terms_used;
    }

    fn add_prod(&mut self, c: f64, a: Approx, b: Approx) {
        self.value += c * a.value * b.value;
        self.err += c.abs() * (a.value.abs() * b.err_bound + b.value.abs() * a.err_bound);
        self.terms += a.terms_used + b.terms_used;
    }


    fn done(self, route: Route) -> Approx {
        Approx {
            value: self.value,
            err_bound: self.err,
            route,
            terms_used: self.terms,
        }
    }
}

fn sign(e: i64) -> f64 {
    if e.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn binom(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).expect("positive parts")
}

/// `({1}_n, rest)`.
fn ones_then(n: u32, rest: &[u32]) -> Index {
    idx(rest).with_ones_prefix(n as usize)
}

/// `(-log z)^n / n!`, the value of `A({1}_n; (1-z)/(1+z))` and of `Li_{{1}_n}(1-z)`.
fn log_power(z: f64, n: u32) -> f64 {
    (-z.ln()).powi(n as i32) / factorial(n)
}

fn exact(v: f64) -> Approx {
    Approx::exact(v, Route::Series)
}

fn out_of_range(msg: impl Into<String>) -> Error {
    Error::ParamOutOfRange(msg.into())
}

pub(crate) struct Entry {
    pub id: &'static str,
    pub anchor: &'static str,
    pub description: &'static str,
    pub params: &'static [(&'static str, &'static str)],
    pub base_tol: f64,
    pub grid: fn() -> Vec<Params>,
    pub weight: fn(&Params) -> u32,
    pub run: fn(&Params, &Ctx) -> Result<Outcome>,
}

impl Entry {
    pub fn spec(&self) -> super::CheckSpec {
        super::CheckSpec {
            id: self.id,
            params: self.params.iter().copied().collect::<BTreeMap<_, _>>(),
            description: self.description,
            paper_anchor: self.anchor,
            base_tol: self.base_tol,
        }
    }
}

pub(crate) fn find(id: &str) -> Result<&'static Entry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

fn int_or(p: &Params, name: &str) -> u32 {
    p.get_int(name).map(|v| v.max(0) as u32).unwrap_or(0)
}

fn index_weight(p: &Params, name: &str) -> u32 {
    p.get_index(name).map(|k| k.weight()).unwrap_or(0)
}

// ---------------------------------------------------------------------------------------------
// closed forms at (1 - z)/(1 + z) and 1 - z

fn shifted_two(j: u32, r: u32) -> Result<Index> {
    if j < 1 || j > r {
        return Err(out_of_range(format!("need 1 <= j <= r, got j={j}, r={r}")));
    }
    let mut parts = vec![1; (j - 1) as usize];
    parts.push(2);
    parts.extend(std::iter::repeat_n(1, (r - j) as usize));
    Ok(idx(&parts))
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z must lie in (0, 1), got {z}")));
    }
    Ok(())
}

/// Shared body of the `{1}_{j-1}, 2, {1}_{r-j}` closed forms: level 2 at `(1-z)/(1+z)` or
/// level 1 at `1 - z`.
fn run_two_in_ones(p: &Params, c: &Ctx, m: u32) -> Result<Outcome> {
    let j = p.get_pos("j")?;
    let r = p.get_pos("r")?;
    let z = p.get_real("z")?;
    check_z(z)?;
    let k = shifted_two(j, r)?;
    let arg = if m == 2 { (1.0 - z) / (1.0 + z) } else { 1.0 - z };
    let lhs = c.a(m, &k, arg)?;
    let mut rhs = Lin::default();
    for i in 0..=(r - j) {
        let t = c.tm(m, &idx(&[i + j + 1]))?;
        rhs.add(sign(i as i64) * binom(i + j, i) * log_power(z, r - j - i), t);
    }
    let s = sign((r - j) as i64 - 1);
    for l in (r - j)..=r {
        let a = c.a(m, &idx(&[l + 1]), z)?;
        rhs.add(s * binom(l, r - j) * log_power(z, r - l), a);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

fn run_two_ones_corollary(p: &Params, c: &Ctx, m: u32) -> Result<Outcome> {
    let r = p.get_pos("r")?;
    let z = p.get_real("z")?;
    check_z(z)?;
    let arg = if m == 2 { (1.0 - z) / (1.0 + z) } else { 1.0 - z };
    let lhs = c.a(m, &ones_then(0, &[2]).concat(&Index::ones(r as usize - 1)), arg)?;
    let s = sign(r as i64);
    let lz = z.ln();
    let mut rhs = Lin::default();
    rhs.add(s * r as f64, c.a(m, &idx(&[r + 1]), z)?);
    rhs.add(-s * lz, c.a(m, &idx(&[r]), z)?);
    for i in 0..r {
        let coeff = (i + 1) as f64 / factorial(r - 1 - i) * lz.powi((r - 1 - i) as i32);
        rhs.add(-s * coeff, c.tm(m, &idx(&[i + 2]))?);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

fn run_thm211(p: &Params, c: &Ctx) -> Result<Outcome> {
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let z = p.get_real("z")?;
    check_z(z)?;
    if k < 2 {
        return Err(out_of_range("k must be at least 2"));
    }
    let w = (1.0 - z) / (1.0 + z);
    let lhs = c.a(2, &ones_then(r - 1, &[k]), w)?;
    // A({1}_n; z) = (-log((1 - z)/(1 + z)))^n / n!
    let ones_at_z = |n: u32| (-((1.0 - z) / (1.0 + z)).ln()).powi(n as i32) / factorial(n);
    let mut rhs = Lin::default();
    for j in 0..=(k - 2) {
        let t = c.tm(2, &ones_then(j, &[r + 1]))?;
        rhs.add(sign((k - j) as i64) * ones_at_z(k - 2 - j), t);
    }
    let s = sign(k as i64 - 1);
    for a in weak_compositions(r, k as usize) {
        let inner: Vec<u32> = a[..a.len() - 1].iter().map(|x| x + 1).collect();
        let v = c.a(2, &idx(&inner), z)?;
        rhs.add(s * log_power(z, a[a.len() - 1]), v);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

// ---------------------------------------------------------------------------------------------
// transforms against multiple T- and zeta-values

fn run_eq17(p: &Params, c: &Ctx) -> Result<Outcome> {
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let s = p.get_real("s")?;
    let lhs = c.tr(TransformKind::Xi, &ones_then(r - 1, &[k]), s)?;
    let rhs = ones_k_closed_form(c, 1, r, k, s)?;
    Ok(Outcome::new(lhs, rhs))
}

/// `(-1)^{k-1} sum binom(s+a_k-1, a_k) T^(m)(a_1+1, ..., a_{k-1}+1, s+a_k)
///  + sum_j (-1)^j T^(m)({1}_{r-1}, k-j) T^(m)({1}_j, s)`.
fn ones_k_closed_form(c: &Ctx, m: u32, r: u32, k: u32, s: f64) -> Result<Approx> {
    let mut rhs = Lin::default();
    let sg = sign(k as i64 - 1);
    for a in weak_compositions(r, k as usize) {
        let last = a[a.len() - 1];
        let prefix: Vec<u32> = a[..a.len() - 1].iter().map(|x| x + 1).collect();
        let v = c.tf(m, &idx(&prefix), s + last as f64)?;
        rhs.add(sg * real_binom(s, last), v);
    }
    if k >= 2 {
        for j in 0..=(k - 2) {
            let a = c.tm(m, &ones_then(r - 1, &[k - j]))?;
            let b = c.tf(m, &Index::ones(j as usize), s)?;
            rhs.add_prod(sign(j as i64), a, b);
        }
    }
    Ok(rhs.done(Route::Series))
}

fn run_thm213(p: &Params, c: &Ctx) -> Result<Outcome> {
    let j = p.get_pos("j")?;
    let r = p.get_pos("r")?;
    let s = p.get_real("s")?;
    let lhs = c.tr(TransformKind::Psi, &shifted_two(j, r)?, s)?;
    let mut rhs = Lin::default();
    for i in 0..=(r - j) {
        let a = c.tm(2, &idx(&[i + j + 1]))?;
        let b = c.tf(2, &Index::empty(), s + (r - i - j) as f64)?;
        rhs.add_prod(sign(i as i64) * binom(i + j, i) * real_binom(s, r - i - j), a, b);
    }
    let sg = sign((r - j) as i64 - 1);
    for l in (r - j)..=r {
        let v = c.tf(2, &idx(&[l + 1]), s + (r - l) as f64)?;
        rhs.add(sg * binom(l, r - j) * real_binom(s, r - l), v);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

fn run_thm214(p: &Params, c: &Ctx) -> Result<Outcome> {
    let j = p.get_pos("j")?;
    let r = p.get_pos("r")?;
    let s = p.get_real("s")?;
    let lhs = c.tr(TransformKind::Xi, &shifted_two(j, r)?, s)?;
    let mut head = Lin::default();
    for i in 0..=(r - j) {
        let a = c.tm(1, &idx(&[i + j + 1]))?;
        let b = c.tf(1, &Index::empty(), s + (r - i - j) as f64)?;
        head.add_prod(sign(i as i64) * binom(i + j, i) * real_binom(s, r - i - j), a, b);
    }
    let sg = sign((r - j) as i64 - 1);
    let mut corrected = Lin {
        value: head.value,
        err: head.err,
        terms: head.terms,
    };
    let mut printed = head;
    for l in (r - j)..=r {
        let v = c.tf(1, &idx(&[l + 1]), s + (r - l) as f64)?;
        corrected.add(sg * binom(l, r - j) * real_binom(s, r - l), v);
        if l < r {
            // binom(s + r - l - 2, r - l - 1) zeta(l + 2, s + r - l - 1)
            let w = c.tf(1, &idx(&[l + 2]), s + (r - l) as f64 - 1.0)?;
            printed.add(sg * binom(l, r - j) * real_binom(s - 1.0, r - l - 1), w);
        }
    }
    Ok(Outcome::new(lhs, corrected.done(Route::Series)).alternative(
        "second sum with binom(s+r-l-2, r-l-1) zeta(l+2, s+r-l-1)",
        Ok(printed.done(Route::Series)),
    ))
}

fn form_kind(form: &str) -> Result<(TransformKind, bool)> {
    match form {
        "xi-ones" => Ok((TransformKind::Xi, true)),
        "xi-sum" => Ok((TransformKind::Xi, false)),
        "psi-ones" => Ok((TransformKind::Psi, true)),
        "psi-sum" => Ok((TransformKind::Psi, false)),
        "eta-ones" => Ok((TransformKind::Eta, true)),
        "eta-sum" => Ok((TransformKind::Eta, false)),
        other => Err(out_of_range(format!("unknown form '{other}'"))),
    }
}

fn sum_over_depth(c: &Ctx, kind: TransformKind, weight: u32, depth: u32, s: f64) -> Result<Approx> {
    let mut acc = Lin::default();
    for kp in compositions(weight, depth as usize) {
        acc.add(1.0, c.tr(kind, &kp, s)?);
    }
    Ok(acc.done(Route::Quadrature))
}

/// Sum formulas relating `X({1}_{r-1}, k; p)` to sums of `X(k'; .)` over fixed weight and depth.
fn run_sum_formula(p: &Params, c: &Ctx, eta: bool) -> Result<Outcome> {
    let (kind, ones_form) = form_kind(p.get_text("form")?)?;
    if (kind == TransformKind::Eta) != eta {
        return Err(out_of_range("form does not belong to this check"));
    }
    let k = p.get_pos("k")?;
    let pp = p.get_pos("p")?;
    let r = p.get_pos("r")?;
    let pf = pp as f64;
    // eta carries an overall (-1)^{r-1}; the others alternate in j
    let coeff = |j: u32| {
        let b = binom(pp + r - j - 1, pp - 1);
        if eta {
            sign(r as i64 - 1) * b
        } else {
            sign(j as i64 - 1) * b
        }
    };
    if ones_form {
        let lhs = c.tr(kind, &ones_then(r - 1, &[k]), pf)?;
        let mut rhs = Lin::default();
        let mut printed = Lin::default();
        let mut printed_ok = true;
        for j in 1..=r {
            rhs.add(coeff(j), sum_over_depth(c, kind, k + j - 1, j, pf + (r - j) as f64)?);
            let arg = pf + (r - j) as f64 - 1.0;
            if arg >= 1.0 {
                printed.add(coeff(j), sum_over_depth(c, kind, k + j - 1, j, arg)?);
            } else {
                printed_ok = false;
            }
        }
        let printed = if printed_ok {
            Ok(printed.done(Route::Quadrature))
        } else {
            Err(Error::Domain("argument p+r-j-1 reaches 0".into()))
        };
        Ok(Outcome::new(lhs, rhs.done(Route::Quadrature))
            .alternative("inner argument p+r-j-1", printed))
    } else {
        let lhs = sum_over_depth(c, kind, k + r - 1, r, pf)?;
        let mut rhs = Lin::default();
        for j in 1..=r {
            let v = c.tr(kind, &ones_then(j - 1, &[k]), pf + (r - j) as f64)?;
            rhs.add(coeff(j), v);
        }
        Ok(Outcome::new(lhs, rhs.done(Route::Quadrature)))
    }
}

/// `Li_k(x/(x-1))`, by series when the argument is small and by quadrature otherwise.
fn landen_li(c: &Ctx, k: &Index, x: f64) -> Result<Approx> {
    if k.is_empty() {
        return Ok(exact(1.0));
    }
    let y = x / (x - 1.0);
    if y.abs() <= 0.5 {
        c.a(1, k, y)
    } else {
        landen_li_quad(k, x, &c.cfg.quad)
    }
}

fn run_lem216(p: &Params, c: &Ctx) -> Result<Outcome> {
    let form = p.get_text("form")?;
    let k = p.get_pos("k")?;
    let r = p.get_pos("r")?;
    let x = p.get_real("x")?;
    check_z(x)?;
    let l1 = (1.0 - x).ln();
    let weight_of = |j: u32| sign(j as i64 - 1) * l1.powi((r - j) as i32) / factorial(r - j);
    let sum_li = |w: u32, d: u32| -> Result<Approx> {
        let mut acc = Lin::default();
        for kp in compositions(w, d as usize) {
            acc.add(1.0, landen_li(c, &kp, x)?);
        }
        Ok(acc.done(Route::Quadrature))
    };
    match form {
        "ones" => {
            let lhs = landen_li(c, &ones_then(r - 1, &[k]), x)?;
            let mut rhs = Lin::default();
            for j in 1..=r {
                rhs.add(weight_of(j), sum_li(k + j - 1, j)?);
            }
            Ok(Outcome::new(lhs, rhs.done(Route::Quadrature)))
        }
        "sum" => {
            let lhs = sum_li(k + r - 1, r)?;
            let mut rhs = Lin::default();
            for j in 1..=r {
                rhs.add(weight_of(j), landen_li(c, &ones_then(j - 1, &[k]), x)?);
            }
            Ok(Outcome::new(lhs, rhs.done(Route::Quadrature)))
        }
        other => Err(out_of_range(format!("unknown form '{other}'"))),
    }
}

fn run_ccd1(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_pos("k")?;
    let pp = p.get_pos("p")?;
    let r = p.get_pos("r")?;
    let lhs = sum_over_depth(c, TransformKind::Eta, k + r - 1, r, pp as f64)?;
    let one = Letter {
        exponent: 1.0,
        residue: 0,
    };
    let chain = |n: u32| vec![one; n as usize];
    let starred = |n: u32| Bounded {
        letters: chain(n),
        star: true,
        inclusive: true,
    };
    let factors = [starred(k - 1), starred(pp - 1), Bounded::strict(chain(r - 1))];
    let comb = harmonic::reduce(
        &factors,
        Letter {
            exponent: 2.0,
            residue: 0,
        },
        1,
    );
    let n_max = c.ev().trunc_n.min(20_000);
    let v = harmonic::evaluate(&comb, 1, n_max)?;
    let s = sign(r as i64 - 1);
    let rhs = Approx {
        value: s * v.value,
        err_bound: v.err,
        route: Route::Series,
        terms_used: v.terms,
    };
    Ok(Outcome::new(lhs, rhs))
}

fn run_thm218(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_pos("k")?;
    let pp = p.get_pos("p")?;
    let r = p.get_pos("r")?;
    let side = |a: u32, b: u32| -> Result<Approx> {
        let mut acc = Lin::default();
        for j in 1..=r {
            let v = c.tr(TransformKind::Eta, &ones_then(j - 1, &[a]), (b + r - j) as f64)?;
            acc.add(binom(b + r - j - 1, b - 1), v);
        }
        Ok(acc.done(Route::Quadrature))
    };
    Ok(Outcome::new(side(k, pp)?, side(pp, k)?))
}

fn run_etadual(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_pos("k")?;
    let pp = p.get_pos("p")?;
    let lhs = c.tr(TransformKind::Eta, &idx(&[k]), pp as f64)?;
    let rhs = c.tr(TransformKind::Eta, &idx(&[pp]), k as f64)?;
    Ok(Outcome::new(lhs, rhs))
}

// ---------------------------------------------------------------------------------------------
// level-two duality

fn run_c1(p: &Params, c: &Ctx) -> Result<Outcome> {
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let m = p.get_pos("m")?;
    if k < 2 {
        return Err(out_of_range("k must be at least 2"));
    }
    let mut lhs = Lin::default();
    lhs.add(1.0, c.tr(TransformKind::Psi, &ones_then(r - 1, &[k]), (m + 1) as f64)?);
    lhs.add(sign(k as i64), c.tr(TransformKind::Psi, &ones_then(m - 1, &[k]), (r + 1) as f64)?);
    let mut rhs = Lin::default();
    for j in 0..=(k - 2) {
        let a = c.tm(2, &ones_then(r - 1, &[k - j]))?;
        let b = c.tm(2, &ones_then(j, &[m + 1]))?;
        rhs.add_prod(sign(j as i64), a, b);
    }
    Ok(Outcome::new(lhs.done(Route::Quadrature), rhs.done(Route::Series)))
}

/// `delta(a, b)`: 0 when the parities agree, -1 for (even, odd), +1 for (odd, even).
fn parity_delta(a: u32, b: u32) -> f64 {
    match (a % 2, b % 2) {
        (0, 1) => -1.0,
        (1, 0) => 1.0,
        _ => 0.0,
    }
}

fn check_duality_index(k: &Index) -> Result<()> {
    if k.parts().iter().any(|&x| x < 2) {
        return Err(out_of_range(format!("every part of k must be at least 2, got ({k})")));
    }
    Ok(())
}

/// Left side of the level-m duality: `psi^(m)` of the truncated index and of its reversal.
fn duality_lhs(c: &Ctx, m: u32, k: &Index, pp: u32, q: u32) -> Result<Approx> {
    let forward = k.decrement_last()?.with_ones_prefix(q as usize - 1);
    let backward = k.reversed().decrement_last()?.with_ones_prefix(pp as usize - 1);
    let mut lhs = Lin::default();
    lhs.add(1.0, psi_m(m, &forward, pp + 1, &c.cfg.quad)?);
    lhs.add(-sign(k.weight() as i64), psi_m(m, &backward, q + 1, &c.cfg.quad)?);
    Ok(lhs.done(Route::Quadrature))
}

/// The double sum of products of level-m values appearing in the duality.
fn duality_products(c: &Ctx, m: u32, k: &Index, pp: u32, q: u32, acc: &mut Lin) -> Result<()> {
    let r = k.depth();
    for j in 0..r {
        let left_tail = k.reversed_tail(j);
        let kj = k.parts()[r - j - 1];
        let sg = sign(left_tail.weight() as i64);
        for i in 1..=kj.saturating_sub(2) {
            let a = c.tm(m, &left_tail.push(i + 1).with_ones_prefix(pp as usize - 1))?;
            let b = c.tm(m, &k.head(r - j - 1).push(kj - i).with_ones_prefix(q as usize - 1))?;
            acc.add_prod(sg * sign(i as i64 - 1), a, b);
        }
    }
    Ok(())
}

/// The pair `(K, L)` of the j-th limit term.
fn limit_pair(k: &Index, pp: u32, q: u32, j: usize) -> (Index, Index) {
    let r = k.depth();
    let big_k = k.reversed_tail(j + 1).with_ones_prefix(pp as usize - 1);
    let big_l = k.head(r - j - 1).with_ones_prefix(q as usize - 1);
    (big_k, big_l)
}

/// `T(L) T(K^- ⊛ (1,1)) - T(K) T(L^- ⊛ (1,1)) + 2 delta log 2 T(K) T(L)`.
fn limit_closed_form(c: &Ctx, big_k: &Index, big_l: &Index) -> Result<Approx> {
    let ones = idx(&[1, 1]);
    let tk = c.t(big_k)?;
    let tl = c.t(big_l)?;
    let ck = convoluted_t(&big_k.decrement_last()?, &ones, c.ev())?;
    let cl = convoluted_t(&big_l.decrement_last()?, &ones, c.ev())?;
    let mut acc = Lin::default();
    acc.add_prod(1.0, tl, ck);
    acc.add_prod(-1.0, tk, cl);
    acc.add_prod(
        2.0 * parity_delta(big_k.depth() as u32, big_l.depth() as u32) * LN_2,
        tk,
        tl,
    );
    Ok(acc.done(Route::Series))
}

/// `lim_{x -> 1} A^(m)(K;x) A^(m)(L,1;x) - A^(m)(K,1;x) A^(m)(L;x)` by extrapolation.
fn limit_numeric(c: &Ctx, m: u32, big_k: &Index, big_l: &Index) -> Result<Approx> {
    let k1 = big_k.push(1);
    let l1 = big_l.push(1);
    let q = &c.cfg.quad;
    limit_at_one(
        |h| {
            let x = 1.0 - h;
            let a = |k: &Index| -> Result<f64> {
                if k.is_empty() {
                    Ok(1.0)
                } else {
                    a_point(m, k, x, h, q)
                }
            };
            Ok(a(big_k)? * a(&l1)? - a(&k1)? * a(big_l)?)
        },
        DEFAULT_LEVELS,
        (big_k.depth() + big_l.depth() + 1) as u32,
    )
}

fn run_thm31(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let pp = p.get_pos("p")?;
    let q = p.get_pos("q")?;
    check_duality_index(&k)?;
    let lhs = duality_lhs(c, 2, &k, pp, q)?;
    let mut rhs = Lin::default();
    duality_products(c, 2, &k, pp, q, &mut rhs)?;
    let r = k.depth();
    for j in 0..r.saturating_sub(1) {
        let (big_k, big_l) = limit_pair(&k, pp, q, j);
        let sg = sign(k.reversed_tail(j + 1).weight() as i64);
        rhs.add(sg, limit_closed_form(c, &big_k, &big_l)?);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

fn run_lmd19(p: &Params, c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let k = p.get_index("k")?;
    let pp = p.get_pos("p")?;
    let q = p.get_pos("q")?;
    check_duality_index(&k)?;
    let lhs = duality_lhs(c, m, &k, pp, q)?;
    let mut rhs = Lin::default();
    duality_products(c, m, &k, pp, q, &mut rhs)?;
    let r = k.depth();
    for j in 0..r.saturating_sub(1) {
        let (big_k, big_l) = limit_pair(&k, pp, q, j);
        let sg = sign(k.reversed_tail(j + 1).weight() as i64);
        rhs.add(sg, limit_numeric(c, m, &big_k, &big_l)?);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Quadrature)))
}

fn run_thm33(p: &Params, c: &Ctx) -> Result<Outcome> {
    let big_k = p.get_index("K")?;
    let big_l = p.get_index("L")?;
    if !big_k.is_admissible() || !big_l.is_admissible() {
        return Err(out_of_range("K and L must be admissible"));
    }
    let lhs = limit_numeric(c, 2, &big_k, &big_l)?;
    let rhs = limit_closed_form(c, &big_k, &big_l)?;
    Ok(Outcome::new(lhs, rhs))
}

fn run_ser_bc(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let x = p.get_real("x")?;
    check_z(x)?;
    let lhs = c.a(2, &k, x)?;
    let r = k.depth();
    let last = k.parts()[r - 1] as i32;
    let odd = r % 2 == 1;
    // x^N below 1e-18 bounds the tail
    let n_max = ((-18.0 * std::f64::consts::LN_10) / x.ln() / 2.0).ceil() as usize + 2;
    let seq = prefix_sequence(FiniteSumKind::T, &k.head(r - 1), n_max);
    let mut acc = 0.0;
    for n in 1..=n_max {
        let big_n = if odd { 2 * n - 1 } else { 2 * n } as f64;
        acc += seq[n] * x.powf(big_n) / big_n.powi(last);
    }
    Ok(Outcome::new(lhs, exact(2.0 * acc)))
}

// ---------------------------------------------------------------------------------------------
// level m

fn run_lmd10(p: &Params, c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let s = p.get_pos("s")?;
    let lhs = psi_m(m, &ones_then(r - 1, &[k]), s, &c.cfg.quad)?;
    let rhs = ones_k_closed_form(c, m, r, k, s as f64)?;
    Ok(Outcome::new(lhs, rhs))
}

fn run_lmd14(p: &Params, c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let pp = p.get_int("p")?;
    if pp < 0 {
        return Err(out_of_range("p must be non-negative"));
    }
    let pp = pp as u32;
    let lhs = psi_m(m, &ones_then(r - 1, &[k]), pp + 1, &c.cfg.quad)?;
    let mut rhs = Lin::default();
    for a in weak_compositions(pp, k as usize) {
        let last = a[a.len() - 1];
        let mut parts: Vec<u32> = a[..a.len() - 1].iter().map(|x| x + 1).collect();
        parts.push(last + r + 1);
        rhs.add(binom(last + r, r), c.tm(m, &idx(&parts))?);
    }
    Ok(Outcome::new(lhs, rhs.done(Route::Series)))
}

fn run_lmd15(p: &Params, c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let r = p.get_pos("r")?;
    let k = p.get_pos("k")?;
    let lhs = c.tm(m, &ones_then(r - 1, &[k + 1]))?;
    let rhs = c.tm(m, &ones_then(k - 1, &[r + 1]))?;
    Ok(Outcome::new(lhs, rhs))
}

// ---------------------------------------------------------------------------------------------
// remaining checks

fn run_prop25(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let s = p.get_real("s")?;
    match p.get_text("form")? {
        "sinh" => {
            let lhs = transform_prop25(&k, s, &c.cfg.quad)?;
            let rhs = c.tf(2, &k, s)?;
            Ok(Outcome::new(lhs, rhs))
        }
        "mellin" => {
            let q = &c.cfg.quad;
            let lhs = tanh_sinh_complement(
                |u, _du, omu| {
                    let a = a_point(2, &k, u, omu, q).unwrap_or(f64::NAN);
                    (-u.ln()).powf(s - 1.0) * a / u
                },
                0.0,
                1.0,
                q,
            )?;
            let r = k.depth();
            let shifted = c.tf(2, &k.head(r - 1), s + k.parts()[r - 1] as f64)?;
            Ok(Outcome::new(lhs, shifted.scaled(gamma_fn(s)?)))
        }
        other => Err(out_of_range(format!("unknown form '{other}'"))),
    }
}

fn run_lem27(p: &Params, c: &Ctx) -> Result<Outcome> {
    let mm = int_or(p, "mm");
    let n = p.get_pos("n")?;
    let z = p.get_real("z")?;
    let lhs = lemma27_lhs(mm, n, z, &c.cfg.quad)?;
    let lz = z.ln();
    let mut rhs = Lin::default();
    for l in 0..=mm {
        let coeff = factorial(l) * binom(mm, l) * sign(l as i64) * lz.powi((mm - l) as i32);
        let k = ones_then(n - 1, &[l + 2]);
        let a = if z == 1.0 { c.tm(2, &k)? } else { c.a(2, &k, z)? };
        rhs.add(coeff, a);
    }
    let scale = sign(n as i64) * factorial(n);
    let rhs = rhs.done(Route::Series).scaled(scale);
    Ok(Outcome::new(lhs, rhs))
}

fn run_prop212(p: &Params, _c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")? as usize;
    let n = p.get_pos("n")?;
    let poly = prop212_check(m, n)?;
    let mass: f64 = poly
        .terms()
        .map(|(_, q)| crate::finite_sums::to_f64(q).abs())
        .sum();
    Ok(Outcome::new(exact(mass), exact(0.0)))
}

fn run_ode(p: &Params, _c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let z = p.get_real("z")?;
    let which = p.get_pos("eq")?;
    let (r1, r2) = ode_residual(m, z)?;
    let r = match which {
        1 => r1,
        2 => r2,
        _ => return Err(out_of_range("eq must be 1 or 2")),
    };
    Ok(Outcome::new(exact(r.abs()), exact(0.0)))
}

fn run_psim(p: &Params, c: &Ctx) -> Result<Outcome> {
    let m = p.get_pos("m")?;
    let k = p.get_index("k")?;
    let pp = p.get_pos("p")?;
    let kind = match m {
        1 => TransformKind::Xi,
        2 => TransformKind::Psi,
        _ => return Err(out_of_range("m must be 1 or 2")),
    };
    let lhs = psi_m(m, &k, pp, &c.cfg.quad)?;
    let rhs = c.tr(kind, &k, pp as f64)?;
    Ok(Outcome::new(lhs, rhs))
}

fn run_psi_one(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let lhs = c.tr(TransformKind::Psi, &k, 1.0)?;
    let rhs = c.t(&k.plus()?)?;
    Ok(Outcome::new(lhs, rhs))
}

fn run_thm22(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let z = p.get_real("z")?;
    check_z(z)?;
    let lhs = expansion_eval_at(&expand_a(&k), z, c.ev())?;
    let rhs = c.a(2, &k, (1.0 - z) / (1.0 + z))?;
    Ok(Outcome::new(lhs, rhs))
}

fn run_thm26(p: &Params, c: &Ctx) -> Result<Outcome> {
    let k = p.get_index("k")?;
    let s = p.get_real("s")?;
    let lhs = psi_expansion(&k, s, c.ev())?;
    let rhs = c.tr(TransformKind::Psi, &k, s)?;
    Ok(Outcome::new(lhs, rhs))
}

// ---------------------------------------------------------------------------------------------
// grids

fn grid_j_r(max_r: u32, key: &str, values: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for j in 1..=r {
            for &v in values {
                out.push(Params::new().int("j", j as i64).int("r", r as i64).real(key, v));
            }
        }
    }
    out
}

fn grid_r_z(max_r: u32) -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for z in [0.2, 0.5, 0.8] {
            out.push(Params::new().int("r", r as i64).real("z", z));
        }
    }
    out
}

fn grid_thm211() -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for k in 2..=4 {
            for z in [0.2, 0.5, 0.8] {
                out.push(Params::new().int("r", r).int("k", k).real("z", z));
            }
        }
    }
    out
}

fn grid_eq17() -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for k in 2..=3 {
            for s in [2.0, 2.5, 3.0] {
                out.push(Params::new().int("r", r).int("k", k).real("s", s));
            }
        }
    }
    out
}

fn grid_forms(forms: &[&str], ps: &[i64]) -> Vec<Params> {
    let mut out = Vec::new();
    for form in forms {
        for k in 1..=3 {
            for &p in ps {
                for r in 1..=3 {
                    out.push(Params::new().text("form", form).int("k", k).int("p", p).int("r", r));
                }
            }
        }
    }
    out
}

fn grid_thm215() -> Vec<Params> {
    grid_forms(&["xi-ones", "xi-sum", "psi-ones", "psi-sum"], &[1, 2, 3])
}

fn grid_thm217() -> Vec<Params> {
    grid_forms(&["eta-ones", "eta-sum"], &[1, 2, 3])
}

fn grid_lem216() -> Vec<Params> {
    let mut out = Vec::new();
    for form in ["ones", "sum"] {
        for k in 1..=3 {
            for r in 1..=3 {
                for x in [0.2, 0.5, 0.8] {
                    out.push(Params::new().text("form", form).int("k", k).int("r", r).real("x", x));
                }
            }
        }
    }
    out
}

fn grid_k_p_r() -> Vec<Params> {
    let mut out = Vec::new();
    for k in 1..=3 {
        for p in 1..=3 {
            for r in 1..=3 {
                out.push(Params::new().int("k", k).int("p", p).int("r", r));
            }
        }
    }
    out
}

fn grid_etadual() -> Vec<Params> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for p in 1..=4 {
            out.push(Params::new().int("k", k).int("p", p));
        }
    }
    out
}

fn grid_c1() -> Vec<Params> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for k in 2..=4 {
            for m in 1..=3 {
                out.push(Params::new().int("r", r).int("k", k).int("m", m));
            }
        }
    }
    out
}

const DUALITY_INDICES: &[&[u32]] = &[&[2], &[3], &[4], &[2, 2], &[3, 2], &[2, 3], &[2, 2, 2]];

fn grid_thm31() -> Vec<Params> {
    let mut out = Vec::new();
    for k in DUALITY_INDICES {
        for p in 1..=2 {
            for q in 1..=2 {
                out.push(Params::new().index("k", k).int("p", p).int("q", q));
            }
        }
    }
    out
}

fn grid_lmd19() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for k in &DUALITY_INDICES[..6] {
            for p in 1..=2 {
                for q in 1..=2 {
                    out.push(Params::new().int("m", m).index("k", k).int("p", p).int("q", q));
                }
            }
        }
    }
    out
}

fn grid_thm33() -> Vec<Params> {
    let pool: &[&[u32]] = &[&[2], &[3], &[1, 2], &[2, 2], &[1, 1, 2], &[2, 3]];
    let mut out = Vec::new();
    for a in pool {
        for b in pool {
            out.push(Params::new().index("K", a).index("L", b));
        }
    }
    out
}

fn grid_ser_bc() -> Vec<Params> {
    let pool: &[&[u32]] = &[&[2], &[3], &[1, 2], &[2, 2], &[1, 1, 2], &[2, 1]];
    let mut out = Vec::new();
    for k in pool {
        for x in [0.3, 0.7, 0.9] {
            out.push(Params::new().index("k", k).real("x", x));
        }
    }
    out
}

fn grid_lmd10() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for r in 1..=3 {
            for k in 2..=3 {
                for s in 2..=3 {
                    out.push(Params::new().int("m", m).int("r", r).int("k", k).int("s", s));
                }
            }
        }
    }
    out
}

fn grid_lmd14() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for r in 1..=3 {
            for k in 2..=3 {
                for p in 0..=3 {
                    out.push(Params::new().int("m", m).int("r", r).int("k", k).int("p", p));
                }
            }
        }
    }
    out
}

fn grid_lmd15() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=3 {
        for r in 1..=3 {
            for k in 1..=3 {
                out.push(Params::new().int("m", m).int("r", r).int("k", k));
            }
        }
    }
    out
}

fn grid_prop25() -> Vec<Params> {
    let mut out = Vec::new();
    for k in [&[2u32][..], &[1, 2], &[3], &[2, 1]] {
        for s in [2.0, 2.5, 3.0] {
            out.push(Params::new().text("form", "sinh").index("k", k).real("s", s));
        }
    }
    for k in [&[1u32][..], &[2], &[1, 1], &[1, 2]] {
        for s in [1.5, 2.0, 3.0] {
            out.push(Params::new().text("form", "mellin").index("k", k).real("s", s));
        }
    }
    out
}

fn grid_lem27() -> Vec<Params> {
    let mut out = Vec::new();
    for mm in 0..=2 {
        for n in 1..=3 {
            for z in [0.5, 1.0] {
                out.push(Params::new().int("mm", mm).int("n", n).real("z", z));
            }
        }
    }
    out
}

fn grid_prop212() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            out.push(Params::new().int("m", m).int("n", n));
        }
    }
    out
}

fn grid_ode() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for z in [0.1, 0.5, 1.0, 2.0] {
            for eq in 1..=2 {
                out.push(Params::new().int("m", m).real("z", z).int("eq", eq));
            }
        }
    }
    out
}

fn grid_psim() -> Vec<Params> {
    let mut out = Vec::new();
    for m in 1..=2 {
        for k in [&[2u32][..], &[3], &[1, 2], &[2, 1]] {
            for p in 1..=3 {
                out.push(Params::new().int("m", m).index("k", k).int("p", p));
            }
        }
    }
    out
}

fn grid_psi_one() -> Vec<Params> {
    [&[1u32][..], &[2], &[3], &[1, 2], &[2, 1], &[1, 1], &[1, 1, 2]]
        .iter()
        .map(|k| Params::new().index("k", k))
        .collect()
}

fn grid_thm22() -> Vec<Params> {
    let mut out = Vec::new();
    for k in [&[2u32][..], &[3], &[1, 2], &[2, 1], &[1, 1], &[2, 2], &[1, 1, 2]] {
        for z in [0.2, 0.5, 0.8] {
            out.push(Params::new().index("k", k).real("z", z));
        }
    }
    out
}

fn grid_thm26() -> Vec<Params> {
    let mut out = Vec::new();
    for k in [&[2u32][..], &[3], &[1, 2], &[2, 1]] {
        for s in [2.0, 2.5, 3.0] {
            out.push(Params::new().index("k", k).real("s", s));
        }
    }
    out
}

// ---------------------------------------------------------------------------------------------
// weights used by the max-weight filter

fn w_r1(p: &Params) -> u32 {
    int_or(p, "r") + 1
}

fn w_rk(p: &Params) -> u32 {
    int_or(p, "r") + int_or(p, "k").max(1) - 1
}

fn w_krp(p: &Params) -> u32 {
    int_or(p, "k") + int_or(p, "r") + int_or(p, "p") - 1
}

fn w_kp(p: &Params) -> u32 {
    int_or(p, "k") + int_or(p, "p")
}

fn w_index(p: &Params) -> u32 {
    index_weight(p, "k")
}

fn w_index_p_q(p: &Params) -> u32 {
    index_weight(p, "k") + int_or(p, "p") + int_or(p, "q")
}

fn w_pair(p: &Params) -> u32 {
    index_weight(p, "K") + index_weight(p, "L")
}

fn w_lmd14(p: &Params) -> u32 {
    int_or(p, "r") + int_or(p, "k") + int_or(p, "p")
}

fn w_c1(p: &Params) -> u32 {
    int_or(p, "r") + int_or(p, "k") + int_or(p, "m")
}

fn w_lem27(p: &Params) -> u32 {
    int_or(p, "mm") + int_or(p, "n") + 1
}

fn w_prop212(p: &Params) -> u32 {
    int_or(p, "m") + int_or(p, "n")
}

fn w_zero(_: &Params) -> u32 {
    0
}

pub(crate) fn registry() -> &'static [Entry] {
    static REGISTRY: OnceLock<Vec<Entry>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

fn build_registry() -> Vec<Entry> {
    vec![
        Entry {
            id: "PROP25",
            anchor: "Proposition 2.5",
            description: "Mellin transforms of A(k; e^{-t}): (1/Gamma(s)) int t^{s-1} A(k;e^{-t})/sinh t dt = T(k, s) (form=sinh) and int t^{s-1} A(k;e^{-t}) dt = Gamma(s) T(k_1..k_{n-1}, k_n + s) (form=mellin)",
            params: &[("form", "sinh | mellin"), ("k", "index"), ("s", "real > 1")],
            base_tol: 1e-6,
            grid: grid_prop25,
            weight: w_index,
            run: run_prop25,
        },
        Entry {
            id: "PROP212",
            anchor: "Proposition 2.12",
            description: "Exact word identity for y^m shuffled against x^n: the residual polynomial vanishes",
            params: &[("m", "1..=6"), ("n", "1..=6")],
            base_tol: 0.0,
            grid: grid_prop212,
            weight: w_prop212,
            run: run_prop212,
        },
        Entry {
            id: "LEM27",
            anchor: "Lemma 2.7",
            description: "int_0^z log^mm t log^n((1-t)/(1+t)) dt/t = (-1)^n n! sum_l l! binom(mm,l) (-1)^l log^{mm-l} z A({1}_{n-1}, l+2; z)",
            params: &[("mm", "0..=3"), ("n", "1..=3"), ("z", "(0, 1]")],
            base_tol: 1e-6,
            grid: grid_lem27,
            weight: w_lem27,
            run: run_lem27,
        },
        Entry {
            id: "THM28",
            anchor: "Theorem 2.8",
            description: "A({1}_{j-1},2,{1}_{r-j}; (1-z)/(1+z)) in terms of T(i+j+1), A(l+1; z) and powers of log z",
            params: &[("j", "1..=r"), ("r", "1..=5"), ("z", "(0, 1)")],
            base_tol: 1e-7,
            grid: || grid_j_r(4, "z", &[0.2, 0.5, 0.8]),
            weight: w_r1,
            run: |p, c| run_two_in_ones(p, c, 2),
        },
        Entry {
            id: "THM29",
            anchor: "Theorem 2.9",
            description: "Li_{{1}_{j-1},2,{1}_{r-j}}(1-z) in terms of zeta(i+j+1), Li_{l+1}(z) and powers of log z",
            params: &[("j", "1..=r"), ("r", "1..=5"), ("z", "(0, 1)")],
            base_tol: 1e-7,
            grid: || grid_j_r(4, "z", &[0.2, 0.5, 0.8]),
            weight: w_r1,
            run: |p, c| run_two_in_ones(p, c, 1),
        },
        Entry {
            id: "COR210",
            anchor: "Corollary 2.10",
            description: "A(2,{1}_{r-1}; (1-z)/(1+z)) in terms of A(r+1; z), A(r; z) log z and T(i+2)",
            params: &[("r", "1..=5"), ("z", "(0, 1)")],
            base_tol: 1e-7,
            grid: || grid_r_z(4),
            weight: w_r1,
            run: |p, c| run_two_ones_corollary(p, c, 2),
        },
        Entry {
            id: "COR211",
            anchor: "Corollary 2.11",
            description: "Li_{2,{1}_{r-1}}(1-z) in terms of Li_{r+1}(z), Li_r(z) log z and zeta(i+2)",
            params: &[("r", "1..=5"), ("z", "(0, 1)")],
            base_tol: 1e-7,
            grid: || grid_r_z(4),
            weight: w_r1,
            run: |p, c| run_two_ones_corollary(p, c, 1),
        },
        Entry {
            id: "THM211",
            anchor: "Theorem 2.11",
            description: "A({1}_{r-1},k; (1-z)/(1+z)) in terms of T({1}_j, r+1), A({1}_n; z) and A(a_1+1..a_{k-1}+1; z)",
            params: &[("r", "1..=4"), ("k", "2..=4"), ("z", "(0, 1)")],
            base_tol: 1e-7,
            grid: grid_thm211,
            weight: w_rk,
            run: run_thm211,
        },
        Entry {
            id: "EQ17",
            anchor: "Equation (1.7)",
            description: "xi({1}_{r-1},k; s) = (-1)^{k-1} sum binom(s+a_k-1,a_k) zeta(a_1+1..a_{k-1}+1, a_k+s) + sum_j (-1)^j zeta({1}_{r-1},k-j) zeta({1}_j, s)",
            params: &[("r", "1..=3"), ("k", "2..=3"), ("s", "real > 1")],
            base_tol: 1e-6,
            grid: grid_eq17,
            weight: w_rk,
            run: run_eq17,
        },
        Entry {
            id: "THM213",
            anchor: "Theorem 2.13",
            description: "psi({1}_{j-1},2,{1}_{r-j}; s) in terms of T(i+j+1) T(s+r-i-j) and T(l+1, s+r-l)",
            params: &[("j", "1..=r"), ("r", "1..=4"), ("s", "real > 1")],
            base_tol: 1e-6,
            grid: || grid_j_r(3, "s", &[2.0, 2.5, 3.0]),
            weight: w_r1,
            run: run_thm213,
        },
        Entry {
            id: "THM214",
            anchor: "Theorem 2.14",
            description: "xi({1}_{j-1},2,{1}_{r-j}; s) in terms of zeta(i+j+1) zeta(s+r-i-j) and zeta(l+1, s+r-l)",
            params: &[("j", "1..=r"), ("r", "1..=4"), ("s", "real > 1")],
            base_tol: 1e-6,
            grid: || grid_j_r(3, "s", &[2.0, 2.5, 3.0]),
            weight: w_r1,
            run: run_thm214,
        },
        Entry {
            id: "THM215",
            anchor: "Theorem 2.15",
            description: "Sum formulas: xi or psi of ({1}_{r-1},k) against sums over indices of fixed weight and depth, and conversely",
            params: &[
                ("form", "xi-ones | xi-sum | psi-ones | psi-sum"),
                ("k", "1..=3"),
                ("p", "1..=3"),
                ("r", "1..=3"),
            ],
            base_tol: 1e-6,
            grid: grid_thm215,
            weight: w_krp,
            run: |p, c| run_sum_formula(p, c, false),
        },
        Entry {
            id: "LEM216",
            anchor: "Lemma 2.16",
            description: "Li_{{1}_{r-1},k}(x/(x-1)) against sums of Li_{k'}(x/(x-1)) over fixed weight and depth weighted by log^{r-j}(1-x)/(r-j)!, and conversely",
            params: &[("form", "ones | sum"), ("k", "1..=3"), ("r", "1..=3"), ("x", "(0, 1)")],
            base_tol: 1e-6,
            grid: grid_lem216,
            weight: w_rk,
            run: run_lem216,
        },
        Entry {
            id: "THM217",
            anchor: "Theorem 2.17",
            description: "Sum formulas for eta: eta({1}_{r-1},k; p) against sums of eta(k'; p+r-j) over fixed weight and depth, and conversely",
            params: &[("form", "eta-ones | eta-sum"), ("k", "1..=3"), ("p", "1..=3"), ("r", "1..=3")],
            base_tol: 1e-6,
            grid: grid_thm217,
            weight: w_krp,
            run: |p, c| run_sum_formula(p, c, true),
        },
        Entry {
            id: "CCD1",
            anchor: "Corollary (eta sum formula)",
            description: "sum over weight k+r-1, depth r of eta(k'; p) = (-1)^{r-1} sum_n zeta*_n({1}_{k-1}) zeta*_n({1}_{p-1}) zeta_{n-1}({1}_{r-1}) / n^2",
            params: &[("k", "1..=3"), ("p", "1..=3"), ("r", "1..=3")],
            base_tol: 1e-6,
            grid: grid_k_p_r,
            weight: w_krp,
            run: run_ccd1,
        },
        Entry {
            id: "THM218",
            anchor: "Theorem 2.18",
            description: "sum_j binom(p+r-j-1,p-1) eta({1}_{j-1},k; p+r-j) is symmetric in k and p",
            params: &[("k", "1..=3"), ("p", "1..=3"), ("r", "1..=3")],
            base_tol: 1e-6,
            grid: grid_k_p_r,
            weight: w_krp,
            run: run_thm218,
        },
        Entry {
            id: "ETADUAL",
            anchor: "Duality of eta",
            description: "eta(k; p) = eta(p; k)",
            params: &[("k", "1..=4"), ("p", "1..=4")],
            base_tol: 1e-7,
            grid: grid_etadual,
            weight: w_kp,
            run: run_etadual,
        },
        Entry {
            id: "C1",
            anchor: "Kaneko-Tsumura relation (C1)",
            description: "psi({1}_{r-1},k; m+1) + (-1)^k psi({1}_{m-1},k; r+1) = sum_j (-1)^j T({1}_{r-1},k-j) T({1}_j, m+1)",
            params: &[("r", "1..=3"), ("k", "2..=4"), ("m", "1..=3")],
            base_tol: 1e-6,
            grid: grid_c1,
            weight: w_c1,
            run: run_c1,
        },
        Entry {
            id: "THM31",
            anchor: "Theorem 3.1",
            description: "psi({1}_{q-1},k^-; p+1) - (-1)^|k| psi({1}_{p-1},rev(k)^-; q+1) against products of T-values, convoluted T-values and log 2",
            params: &[("k", "index with parts >= 2"), ("p", "1..=2"), ("q", "1..=2")],
            base_tol: 1e-5,
            grid: grid_thm31,
            weight: w_index_p_q,
            run: run_thm31,
        },
        Entry {
            id: "THM33",
            anchor: "Theorem 3.3",
            description: "lim_{x->1} A(K;x)A(L,1;x) - A(K,1;x)A(L;x) = T(L)T(K^- * (1,1)) - T(K)T(L^- * (1,1)) + 2 delta log 2 T(K)T(L)",
            params: &[("K", "admissible index"), ("L", "admissible index")],
            base_tol: 1e-4,
            grid: grid_thm33,
            weight: w_pair,
            run: run_thm33,
        },
        Entry {
            id: "SER-BC",
            anchor: "Series for A(k; x)",
            description: "A(k; x) = 2 sum_n T_n(k_1..k_{r-1}) x^N / N^{k_r}, N = 2n-1 (r odd) or 2n (r even)",
            params: &[("k", "index"), ("x", "(0, 1)")],
            base_tol: 1e-9,
            grid: grid_ser_bc,
            weight: w_index,
            run: run_ser_bc,
        },
        Entry {
            id: "LM-D10",
            anchor: "Level-m formula (d10)",
            description: "psi^(m)({1}_{r-1},k; s) = (-1)^{k-1} sum binom(s+a_k-1,a_k) T^(m)(a_1+1..a_{k-1}+1, s+a_k) + sum_j (-1)^j T^(m)({1}_{r-1},k-j) T^(m)({1}_j, s)",
            params: &[("m", "1..=2"), ("r", "1..=3"), ("k", "2..=3"), ("s", "2..=3")],
            base_tol: 1e-6,
            grid: grid_lmd10,
            weight: w_rk,
            run: run_lmd10,
        },
        Entry {
            id: "LM-D14",
            anchor: "Level-m formula (d14)",
            description: "psi^(m)({1}_{r-1},k; p+1) = sum_{a_1+..+a_k=p} binom(a_k+r, r) T^(m)(a_1+1..a_{k-1}+1, a_k+r+1)",
            params: &[("m", "1..=2"), ("r", "1..=3"), ("k", "2..=3"), ("p", "0..=3")],
            base_tol: 1e-6,
            grid: grid_lmd14,
            weight: w_lmd14,
            run: run_lmd14,
        },
        Entry {
            id: "LM-D15",
            anchor: "Level-m duality (d15)",
            description: "T^(m)({1}_{r-1}, k+1) = T^(m)({1}_{k-1}, r+1)",
            params: &[("m", "1..=3"), ("r", "1..=3"), ("k", "1..=3")],
            base_tol: 1e-7,
            grid: grid_lmd15,
            weight: w_rk,
            run: run_lmd15,
        },
        Entry {
            id: "LM-D19",
            anchor: "Level-m duality (d19)",
            description: "Level-m form of the psi duality with the boundary terms obtained as numerical limits at x = 1",
            params: &[("m", "1..=2"), ("k", "index with parts >= 2"), ("p", "1..=2"), ("q", "1..=2")],
            base_tol: 1e-5,
            grid: grid_lmd19,
            weight: w_index_p_q,
            run: run_lmd19,
        },
        Entry {
            id: "ODE",
            anchor: "Differential equations for f_m",
            description: "f_1 = 1 - e^{-z} and f_2 = tanh z satisfy their first-order equations: residual eq=1 or eq=2",
            params: &[("m", "1..=2"), ("z", "real"), ("eq", "1..=2")],
            base_tol: 1e-7,
            grid: grid_ode,
            weight: w_zero,
            run: run_ode,
        },
        Entry {
            id: "PSIM",
            anchor: "Level-m transform at m = 1, 2",
            description: "psi^(1)(k; p) = xi(k; p) and psi^(2)(k; p) = psi(k; p)",
            params: &[("m", "1..=2"), ("k", "index"), ("p", "1..=3")],
            base_tol: 1e-7,
            grid: grid_psim,
            weight: w_index,
            run: run_psim,
        },
        Entry {
            id: "PSI-ONE",
            anchor: "Special value psi(k; 1)",
            description: "psi(k; 1) = T(k_1..k_{r-1}, k_r + 1)",
            params: &[("k", "index")],
            base_tol: 1e-7,
            grid: grid_psi_one,
            weight: w_index,
            run: run_psi_one,
        },
        Entry {
            id: "THM22",
            anchor: "Theorem 2.2",
            description: "Symbolic expansion of A(k; (1-z)/(1+z)) evaluated numerically against the series",
            params: &[("k", "index"), ("z", "(0, 1)")],
            base_tol: 1e-9,
            grid: grid_thm22,
            weight: w_index,
            run: run_thm22,
        },
        Entry {
            id: "THM26",
            anchor: "Theorem 2.6",
            description: "psi(k; s) from the expansion coefficients against quadrature",
            params: &[("k", "index"), ("s", "real > 1")],
            base_tol: 1e-7,
            grid: grid_thm26,
            weight: w_index,
            run: run_thm26,
        },
    ]
}
