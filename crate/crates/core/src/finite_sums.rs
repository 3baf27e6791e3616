//! Finite multiple harmonic sums: `zeta_n`, `zeta*_n`, the T-harmonic sums `T_n` and the
//! S-harmonic sums `S_n`, plus shifted harmonic numbers and the digamma function.

use crate::error::{Error, Result};
use crate::index::Index;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteSumKind {
    Zeta,
    ZetaStar,
    T,
    S,
}

impl fmt::Display for FiniteSumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiniteSumKind::Zeta => "zeta",
            FiniteSumKind::ZetaStar => "zeta_star",
            FiniteSumKind::T => "T",
            FiniteSumKind::S => "S",
        };
        write!(f, "{s}")
    }
}

impl FromStr for FiniteSumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta" => Ok(FiniteSumKind::Zeta),
            "zeta_star" | "zeta-star" | "zetastar" => Ok(FiniteSumKind::ZetaStar),
            "T" | "t" => Ok(FiniteSumKind::T),
            "S" | "s" => Ok(FiniteSumKind::S),
            _ => Err(Error::Domain(format!("unknown finite-sum kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Lt,
    Le,
}

#[derive(Clone, Copy)]
enum Base {
    /// `v`
    Plain,
    /// `2v - 1`
    Odd,
    /// `2v`
    Even,
}

impl Base {
    fn apply(self, v: u64) -> u64 {
        match self {
            Base::Plain => v,
            Base::Odd => 2 * v - 1,
            Base::Even => 2 * v,
        }
    }
}

/// Summation domain of one family: the base of each variable and the relation linking
/// `n_i` to `n_{i+1}` (with `n_{r+1}` the upper bound `n`).
struct Layout {
    bases: Vec<Base>,
    rels: Vec<Rel>,
    scale_pow2: usize,
}

fn layout(kind: FiniteSumKind, depth: usize) -> Layout {
    let (bases, rels, scale_pow2) = match kind {
        FiniteSumKind::Zeta => {
            let mut rels = vec![Rel::Lt; depth];
            if let Some(last) = rels.last_mut() {
                *last = Rel::Le;
            }
            (vec![Base::Plain; depth], rels, 0)
        }
        FiniteSumKind::ZetaStar => (vec![Base::Plain; depth], vec![Rel::Le; depth], 0),
        FiniteSumKind::T => (
            (1..=depth)
                .map(|i| if i % 2 == 1 { Base::Odd } else { Base::Even })
                .collect(),
            (1..=depth)
                .map(|i| if i % 2 == 1 { Rel::Le } else { Rel::Lt })
                .collect(),
            depth,
        ),
        FiniteSumKind::S => (
            (1..=depth)
                .map(|i| if i % 2 == 1 { Base::Even } else { Base::Odd })
                .collect(),
            (1..=depth)
                .map(|i| if i % 2 == 1 { Rel::Lt } else { Rel::Le })
                .collect(),
            depth,
        ),
    };
    Layout {
        bases,
        rels,
        scale_pow2,
    }
}

fn recip_pow(base: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(base).pow(k))
}

/// Innermost-out layers: entry `v` of the result sums the summand over all admissible
/// `(n_1, ..., n_r)` with `n_r = v`.
fn outer_layer(lay: &Layout, parts: &[u32], n: usize) -> Vec<BigRational> {
    let mut layer: Vec<BigRational> = (0..=n)
        .map(|v| {
            if v == 0 {
                BigRational::zero()
            } else {
                recip_pow(lay.bases[0].apply(v as u64), parts[0])
            }
        })
        .collect();
    for i in 1..parts.len() {
        let mut next = vec![BigRational::zero(); n + 1];
        let mut acc = BigRational::zero();
        for v in 1..=n {
            if lay.rels[i - 1] == Rel::Le {
                acc += &layer[v];
            }
            if !acc.is_zero() {
                next[v] = &acc * recip_pow(lay.bases[i].apply(v as u64), parts[i]);
            }
            if lay.rels[i - 1] == Rel::Lt {
                acc += &layer[v];
            }
        }
        layer = next;
    }
    layer
}

/// Exact value of the finite sum, accumulated from the innermost variable outwards.
pub fn finite_sum(kind: FiniteSumKind, k: &Index, n: u64) -> BigRational {
    finite_sum_sequence(kind, k, n).pop().expect("sequence has n + 1 entries")
}

/// Exact values of the finite sum for every bound `0..=n_max`, from a single pass.
pub fn finite_sum_sequence(kind: FiniteSumKind, k: &Index, n_max: u64) -> Vec<BigRational> {
    let parts = k.parts();
    let n = n_max as usize;
    if parts.is_empty() {
        return vec![BigRational::one(); n + 1];
    }
    let lay = layout(kind, parts.len());
    let layer = outer_layer(&lay, parts, n);
    let scale = BigRational::from_integer(BigInt::one() << lay.scale_pow2);
    let inclusive = lay.rels[parts.len() - 1] == Rel::Le;
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigRational::zero();
    for bound in 0..=n {
        if inclusive {
            acc += &layer[bound];
            out.push(&acc * &scale);
        } else {
            out.push(&acc * &scale);
            acc += &layer[bound];
        }
    }
    out
}

/// Exact value of the finite sum, accumulated from the outermost variable inwards.
pub fn finite_sum_outer_first(kind: FiniteSumKind, k: &Index, n: u64) -> BigRational {
    let parts = k.parts();
    if parts.is_empty() {
        return BigRational::one();
    }
    let r = parts.len();
    let lay = layout(kind, r);
    let n = n as usize;
    // layer[v] = sum over (n_i..n_r) with n_i = v of the partial summand.
    let upper = match lay.rels[r - 1] {
        Rel::Le => n,
        Rel::Lt => n.saturating_sub(1),
    };
    let mut layer: Vec<BigRational> = (0..=n)
        .map(|v| {
            if v == 0 || v > upper {
                BigRational::zero()
            } else {
                recip_pow(lay.bases[r - 1].apply(v as u64), parts[r - 1])
            }
        })
        .collect();
    for i in (0..r - 1).rev() {
        let mut next = vec![BigRational::zero(); n + 1];
        let mut acc = BigRational::zero();
        for v in (1..=n).rev() {
            if lay.rels[i] == Rel::Le {
                acc += &layer[v];
            }
            if !acc.is_zero() {
                next[v] = &acc * recip_pow(lay.bases[i].apply(v as u64), parts[i]);
            }
            if lay.rels[i] == Rel::Lt {
                acc += &layer[v];
            }
        }
        layer = next;
    }
    let total: BigRational = layer.iter().sum();
    total * BigRational::from_integer(BigInt::one() << lay.scale_pow2)
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Compensated running sum.
#[derive(Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Floating values of the sum for every upper bound `0..=n_max`, in `O(depth * n_max)` time.
pub fn prefix_sequence(kind: FiniteSumKind, k: &Index, n_max: usize) -> Vec<f64> {
    let parts = k.parts();
    if parts.is_empty() {
        return vec![1.0; n_max + 1];
    }
    let r = parts.len();
    let lay = layout(kind, r);
    let term = |i: usize, v: usize| (lay.bases[i].apply(v as u64) as f64).powi(-(parts[i] as i32));
    let mut layer: Vec<f64> = (0..=n_max)
        .map(|v| if v == 0 { 0.0 } else { term(0, v) })
        .collect();
    for i in 1..r {
        let mut acc = Neumaier::default();
        let rel = lay.rels[i - 1];
        for v in 0..=n_max {
            let here = layer[v];
            if rel == Rel::Le {
                acc.add(here);
            }
            layer[v] = if v == 0 { 0.0 } else { acc.value() * term(i, v) };
            if rel == Rel::Lt {
                acc.add(here);
            }
        }
    }
    let scale = (2.0f64).powi(lay.scale_pow2 as i32);
    let mut out = vec![0.0; n_max + 1];
    let mut acc = Neumaier::default();
    let strict = lay.rels[r - 1] == Rel::Lt;
    for v in 0..=n_max {
        if strict {
            out[v] = acc.value() * scale;
            acc.add(layer[v]);
        } else {
            acc.add(layer[v]);
            out[v] = acc.value() * scale;
        }
    }
    out
}

/// Default upper bound above which [`finite_sum_f64`] switches from exact to float evaluation.
pub const DEFAULT_FLOAT_THRESHOLD: u64 = 1000;

type SeqKey = (FiniteSumKind, Index);

fn cache() -> &'static RwLock<HashMap<SeqKey, Arc<Vec<f64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<SeqKey, Arc<Vec<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared memoized prefix sequence with at least `n_max + 1` entries.
pub fn cached_sequence(kind: FiniteSumKind, k: &Index, n_max: usize) -> Arc<Vec<f64>> {
    let key = (kind, k.clone());
    if let Some(seq) = cache().read().unwrap().get(&key) {
        if seq.len() > n_max {
            return Arc::clone(seq);
        }
    }
    let mut guard = cache().write().unwrap();
    if let Some(seq) = guard.get(&key) {
        if seq.len() > n_max {
            return Arc::clone(seq);
        }
    }
    let seq = Arc::new(prefix_sequence(kind, k, n_max));
    guard.insert(key, Arc::clone(&seq));
    seq
}

/// Float value: exact rational arithmetic up to `threshold`, memoized float sequences beyond.
pub fn finite_sum_f64(kind: FiniteSumKind, k: &Index, n: u64, threshold: u64) -> f64 {
    if n <= threshold {
        to_f64(&finite_sum(kind, k, n))
    } else {
        cached_sequence(kind, k, n as usize)[n as usize]
    }
}

/// `H_n(alpha) = sum_{k=1}^n 1/(k + alpha)`.
pub fn h_alpha(n: u64, alpha: &BigRational) -> Result<BigRational> {
    if alpha.is_integer() && alpha < &BigRational::zero() {
        return Err(Error::Domain(format!("alpha must not be a negative integer, got {alpha}")));
    }
    let mut s = BigRational::zero();
    for k in 1..=n {
        s += (BigRational::from_integer(BigInt::from(k)) + alpha).recip();
    }
    Ok(s)
}

/// Digamma function for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma needs x > 0, got {x}")));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 12.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    // Bernoulli-number coefficients B_{2k}/(2k).
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
        -3617.0 / 8160.0,
    ];
    let inv2 = 1.0 / (y * y);
    let mut p = inv2;
    let mut series = 0.0;
    for c in C {
        series += c * p;
        p *= inv2;
    }
    Ok(shift + y.ln() - 0.5 / y - series)
}
