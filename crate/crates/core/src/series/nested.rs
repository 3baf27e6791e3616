//! Nested sums `sum_{n_1 < ... < n_r, n_i = c_i mod m} z^{n_r} prod n_i^{-e_i}` with a
//! depth-layered streaming recurrence and an asymptotic tail for `z = 1`.

use crate::error::{Error, Result};
use crate::finite_sums::Neumaier;

/// One summation variable: its exponent and its residue class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Letter {
    pub exponent: f64,
    pub residue: u32,
}

/// A strictly increasing chain of summation variables over a common modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub modulus: u32,
    pub letters: Vec<Letter>,
}

impl Chain {
    /// Chain with the residue pattern `n_i = i mod m` used by the level-m functions.
    pub fn level(m: u32, exponents: &[f64]) -> Chain {
        Chain {
            modulus: m,
            letters: exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| Letter {
                    exponent: e,
                    residue: ((i + 1) as u32) % m,
                })
                .collect(),
        }
    }

    fn weight_fn(&self) -> impl Fn(usize, u64) -> f64 + '_ {
        move |j: usize, n: u64| {
            let e = self.letters[j].exponent;
            let x = n as f64;
            if e.fract() == 0.0 && e.abs() < 64.0 {
                x.powi(-(e as i32))
            } else {
                x.powf(-e)
            }
        }
    }

    fn matches(&self, j: usize, n: u64) -> bool {
        n % self.modulus as u64 == self.letters[j].residue as u64 % self.modulus as u64
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NestedValue {
    pub value: f64,
    pub err: f64,
    pub terms: u64,
}

/// Sum for `|z| < 1`, stopped when the remaining terms are bounded below machine precision.
pub fn sum_geometric(chain: &Chain, z: f64, max_terms: u64) -> Result<NestedValue> {
    let r = chain.depth();
    if r == 0 {
        return Ok(NestedValue { value: 1.0, err: 0.0, terms: 0 });
    }
    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!("geometric summation needs |z| < 1, got {z}")));
    }
    let w = chain.weight_fn();
    let mut layers = vec![Neumaier::default(); r];
    let mut total = Neumaier::default();
    let mut zpow = 1.0;
    let az = z.abs();
    let mut n: u64 = 0;
    loop {
        n += 1;
        zpow *= z;
        for j in (0..r).rev() {
            if chain.matches(j, n) {
                let prev = if j == 0 { 1.0 } else { layers[j - 1].value() };
                if prev != 0.0 {
                    let inc = w(j, n) * prev;
                    layers[j].add(inc);
                    if j == r - 1 {
                        total.add(inc * zpow);
                    }
                }
            }
        }
        if n >= r as u64 * chain.modulus as u64 + 2 {
            let inner = if r == 1 { 1.0 } else { layers[r - 2].value() };
            let weight_now = w(r - 1, n).max(0.0);
            let bound = inner * weight_now * zpow.abs() * az / (1.0 - az);
            let scale = total.value().abs().max(f64::MIN_POSITIVE);
            if bound < 1e-17 * scale || bound < 1e-300 {
                return Ok(NestedValue {
                    value: total.value(),
                    err: bound + 1e-16 * scale,
                    terms: n,
                });
            }
        }
        if n >= max_terms {
            let inner = if r == 1 { 1.0 } else { layers[r - 2].value() };
            let bound = inner * w(r - 1, n) * zpow.abs() / (1.0 - az);
            return Err(Error::NonConvergence {
                what: "geometric series exceeded max_terms".into(),
                estimate: total.value(),
                error: bound,
            });
        }
    }
}

/// Partial layers after summing every variable up to `n_max` at `z = 1`.
/// Entry `j` is the sum over chains made of the first `j` letters; entry 0 is 1.
pub fn partial_layers(chain: &Chain, n_max: u64) -> Vec<f64> {
    let r = chain.depth();
    let w = chain.weight_fn();
    let mut layers = vec![Neumaier::default(); r];
    for n in 1..=n_max {
        for j in (0..r).rev() {
            if chain.matches(j, n) {
                let prev = if j == 0 { 1.0 } else { layers[j - 1].value() };
                if prev != 0.0 {
                    layers[j].add(w(j, n) * prev);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(r + 1);
    out.push(1.0);
    out.extend(layers.iter().map(|l| l.value()));
    out
}

const BERNOULLI_2J: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `sum_l c_l a^{-(beta + l)}`, an asymptotic expansion in `1/a`.
#[derive(Debug, Clone)]
pub(crate) struct Expansion {
    beta: f64,
    coeffs: Vec<f64>,
}

impl Expansion {
    fn unit(len: usize) -> Self {
        let mut coeffs = vec![0.0; len];
        coeffs[0] = 1.0;
        Expansion { beta: 0.0, coeffs }
    }

    /// Value at `a` using the first `terms` coefficients.
    fn eval(&self, a: f64, terms: usize) -> f64 {
        let inv = 1.0 / a;
        let mut p = a.powf(-self.beta);
        let mut s = 0.0;
        for c in self.coeffs.iter().take(terms) {
            s += c * p;
            p *= inv;
        }
        s
    }

    /// Expansion of `a -> sum_{t >= 0} (a + d + t m)^{-e} F(a + d + t m)` where `F` is `self`.
    fn step(&self, e: f64, d: f64, m: f64) -> Expansion {
        let len = self.coeffs.len();
        let beta_new = self.beta + e - 1.0;
        let mut out = vec![0.0; len];
        for (l, &g) in self.coeffs.iter().enumerate() {
            if g == 0.0 {
                continue;
            }
            let gamma = e + self.beta + l as f64;
            // Hurwitz asymptotic pieces: (power p of x = (a+d)/m, coefficient).
            let mut pieces: Vec<(f64, f64)> = vec![(gamma - 1.0, 1.0 / (gamma - 1.0)), (gamma, 0.5)];
            let mut poch = gamma;
            let mut fact = 2.0;
            for (j, b) in BERNOULLI_2J.iter().enumerate() {
                let jj = (j + 1) as f64;
                let p = gamma + 2.0 * jj - 1.0;
                let offset = l as f64 + (p - (gamma - 1.0));
                if offset as usize >= len {
                    break;
                }
                pieces.push((p, b / fact * poch));
                poch *= (gamma + 2.0 * jj - 1.0) * (gamma + 2.0 * jj);
                fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
            }
            for (p, c) in pieces {
                let base = l + (p - (gamma - 1.0)).round() as usize;
                if base >= len {
                    continue;
                }
                let pref = g * c * m.powf(p - gamma);
                // (a+d)^{-p} = sum_q (-1)^q (p)_q / q! d^q a^{-p-q}
                let mut bq = 1.0;
                for q in 0..len - base {
                    out[base + q] += pref * bq;
                    bq *= -(p + q as f64) / (q as f64 + 1.0) * d;
                }
            }
        }
        Expansion {
            beta: beta_new,
            coeffs: out,
        }
    }
}

fn offset(from_residue: u64, to_residue: u32, m: u32) -> f64 {
    let m = m as u64;
    let to = to_residue as u64 % m;
    (((to + 2 * m - from_residue % m - 1) % m) + 1) as f64
}

/// Tail expansions: entry `j` describes all variables `j..r` lying above a bound `a`
/// whose residue is that of letter `j - 1`.
fn inner_expansions(chain: &Chain, len: usize) -> Vec<Expansion> {
    let r = chain.depth();
    let m = chain.modulus;
    let mut out = vec![Expansion::unit(len); r + 1];
    for i in (1..r).rev() {
        let d = offset(chain.letters[i - 1].residue as u64, chain.letters[i].residue, m);
        out[i] = out[i + 1].step(chain.letters[i].exponent, d, m as f64);
    }
    out
}

/// How the part of the sum beyond the truncation point is handled at `z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    None,
    Outer,
    Full,
}

const TAIL_TERMS: usize = 14;

/// Sum at `z = 1` truncated at `n_max` with the chosen tail treatment.
pub fn sum_at_one(chain: &Chain, n_max: u64, mode: TailMode) -> Result<NestedValue> {
    let r = chain.depth();
    if r == 0 {
        return Ok(NestedValue { value: 1.0, err: 0.0, terms: 0 });
    }
    let last = chain.letters[r - 1].exponent;
    if !(last > 1.0) {
        return Err(Error::Divergent(format!(
            "outer exponent {last} must exceed 1"
        )));
    }
    let layers = partial_layers(chain, n_max);
    let m = chain.modulus;
    let a = n_max as f64;
    let head = layers[r];
    let tail_with = |terms: usize, outer_only: bool| -> f64 {
        let inner = inner_expansions(chain, TAIL_TERMS);
        let mut acc = Neumaier::default();
        let first = if outer_only { r - 1 } else { 0 };
        for j in first..r {
            let d = offset(n_max, chain.letters[j].residue, m);
            let e = inner[j + 1].step(chain.letters[j].exponent, d, m as f64);
            acc.add(layers[j] * e.eval(a, terms));
        }
        acc.value()
    };
    let scale = head.abs().max(f64::MIN_POSITIVE);
    let floor = 1e-15 * scale * (1.0 + r as f64);
    let (value, err) = match mode {
        TailMode::None => {
            let lead = tail_with(1, true);
            (head, lead.abs())
        }
        TailMode::Outer => {
            let t = tail_with(TAIL_TERMS, true);
            let full = tail_with(TAIL_TERMS, false);
            (head + t, (full - t).abs() + floor)
        }
        TailMode::Full => {
            let t = tail_with(TAIL_TERMS, false);
            let t_lower = tail_with(TAIL_TERMS - 4, false);
            (head + t, (t - t_lower).abs() + floor)
        }
    };
    Ok(NestedValue {
        value,
        err,
        terms: n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_with_full_tail_from_small_truncation() {
        let c = Chain::level(1, &[2.0]);
        let v = sum_at_one(&c, 50, TailMode::Full).unwrap();
        assert!((v.value - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_one_two_equals_zeta_three() {
        let c = Chain::level(1, &[1.0, 2.0]);
        let v = sum_at_one(&c, 200, TailMode::Full).unwrap();
        assert!((v.value - 1.202_056_903_159_594_3).abs() < 1e-13, "{}", v.value);
    }

    #[test]
    fn odd_residues() {
        // 2 sum_{n odd} n^-2 = pi^2/4
        let c = Chain::level(2, &[2.0]);
        let v = sum_at_one(&c, 101, TailMode::Full).unwrap();
        assert!((2.0 * v.value - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-14);
        let v = sum_at_one(&c, 100, TailMode::Full).unwrap();
        assert!((2.0 * v.value - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn geometric_log() {
        let c = Chain::level(1, &[1.0]);
        let v = sum_geometric(&c, 0.5, 1_000_000).unwrap();
        assert!((v.value - 2f64.ln()).abs() < 1e-15);
        let v = sum_geometric(&c, -0.5, 1_000_000).unwrap();
        assert!((v.value + 1.5f64.ln()).abs() < 1e-15);
    }
}
