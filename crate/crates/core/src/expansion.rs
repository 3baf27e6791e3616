//! Exact expansion of `A(k; (1 - z)/(1 + z))` in the basis `A({1}_j; (1 - z)/(1 + z)) A(k'; z)`,
//! with coefficients that are rational combinations of multiple T-values.

use crate::error::Result;
use crate::index::Index;
use crate::series::{a_m_series, level_value, t_m_function, Approx, EvalConfig, Route};
use crate::words::{index_from_word, word_from_index, y_power_decompose};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

/// Rational combination of multiple T-value atoms; the empty index stands for the constant 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolicCoeff {
    terms: BTreeMap<Index, BigRational>,
}

impl SymbolicCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::atom(Index::empty(), c)
    }

    pub fn atom(k: Index, c: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_atom(k, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_atom(&mut self, k: Index, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymbolicCoeff, c: &BigRational) {
        for (k, v) in &other.terms {
            self.add_atom(k.clone(), v * c);
        }
    }

    /// Weights of the atoms present, for the homogeneity check.
    pub fn weights(&self) -> Vec<u32> {
        self.terms.keys().map(Index::weight).collect()
    }

    /// Numerical value with every atom replaced by its series value.
    pub fn evaluate(&self, cfg: &EvalConfig) -> Result<Approx> {
        let mut value = 0.0;
        let mut err = 0.0;
        for (k, c) in &self.terms {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let a = atom_value(k, cfg)?;
            value += cf * a.value;
            err += cf.abs() * a.err_bound;
        }
        Ok(Approx {
            value,
            err_bound: err,
            route: Route::Expansion,
            terms_used: self.terms.len() as u64,
        })
    }
}

impl fmt::Display for SymbolicCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if k.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "T({k})")?;
            } else {
                write!(f, "{mag}*T({k})")?;
            }
        }
        Ok(())
    }
}

/// One term `coeff * A({1}_j; (1-z)/(1+z)) * A(k'; z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub kprime: Index,
    pub j: u32,
    pub coeff: SymbolicCoeff,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    terms: BTreeMap<(Index, u32), SymbolicCoeff>,
}

impl Expansion {
    fn add(&mut self, kprime: Index, j: u32, coeff: &SymbolicCoeff, c: &BigRational) {
        let slot = self.terms.entry((kprime, j)).or_default();
        slot.add_scaled(coeff, c);
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> Vec<ExpansionTerm> {
        self.terms
            .iter()
            .map(|((kp, j), c)| ExpansionTerm {
                kprime: kp.clone(),
                j: *j,
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, kprime: &Index, j: u32) -> Option<&SymbolicCoeff> {
        self.terms.get(&(kprime.clone(), j))
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((kp, j), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "[{c}] * A({{1}}_{j}; w) * A({kp}; z)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
struct TermView {
    kprime: String,
    j: u32,
    coeff: BTreeMap<String, String>,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let view: Vec<TermView> = self
            .terms
            .iter()
            .map(|((kp, j), c)| TermView {
                kprime: kp.to_string(),
                j: *j,
                coeff: c.terms().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            })
            .collect();
        view.serialize(s)
    }
}

#[cfg(test)]
fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binom(n: u32, k: u32) -> BigRational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

fn memo() -> &'static Mutex<HashMap<Index, Arc<Expansion>>> {
    static M: OnceLock<Mutex<HashMap<Index, Arc<Expansion>>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Expansion of `A(k; (1 - z)/(1 + z))`.
pub fn expand_a(k: &Index) -> Arc<Expansion> {
    if let Some(e) = memo().lock().unwrap().get(k) {
        return e.clone();
    }
    let e = Arc::new(compute(k));
    memo().lock().unwrap().insert(k.clone(), e.clone());
    e
}

fn compute(k: &Index) -> Expansion {
    let mut out = Expansion::default();
    let one = BigRational::one();
    if k.is_empty() {
        out.add(Index::empty(), 0, &SymbolicCoeff::constant(one.clone()), &one);
        return out;
    }
    if k.is_admissible() {
        // d/dz A(k; w) = -2/(1 - z^2) A(k_-; w), integrated term by term; the z -> 0 limit
        // fixes the constant at T(k).
        let lower = expand_a(&k.decrement_last().expect("nonempty index"));
        let minus_one = -one.clone();
        for ((l, j), c) in &lower.terms {
            for i in 0..=*j {
                out.add(l.push(i + 1), j - i, c, &minus_one);
            }
        }
        out.add(Index::empty(), 0, &SymbolicCoeff::atom(k.clone(), one.clone()), &one);
        return out;
    }
    // A(k) = sum_i A({1}_i) A(p_i) with every p_i admissible, then
    // A({1}_i) A({1}_j) = binom(i + j, i) A({1}_{i+j}).
    let parts = y_power_decompose(&word_from_index(k)).expect("index words lie in H1");
    for (i, poly) in parts {
        let i = i as u32;
        for (w, cw) in poly.terms() {
            let p = index_from_word(w).expect("decomposition stays in H1");
            let sub = expand_a(&p);
            for ((kp, j), c) in &sub.terms {
                out.add(kp.clone(), i + j, c, &(cw * binom(i + j, i)));
            }
        }
    }
    out
}

/// Atom values keyed by index, truncation point and tail order.
type AtomTable = RwLock<HashMap<(Index, u64, u8), Approx>>;

fn atom_table() -> &'static AtomTable {
    static T: OnceLock<AtomTable> = OnceLock::new();
    T.get_or_init(Default::default)
}

/// Series value of the atom `T(k)` (1 for the empty index), cached per configuration.
pub fn atom_value(k: &Index, cfg: &EvalConfig) -> Result<Approx> {
    if k.is_empty() {
        return Ok(Approx::exact(1.0, Route::Series));
    }
    let key = (k.clone(), cfg.trunc_n, cfg.tail_order);
    if let Some(v) = atom_table().read().unwrap().get(&key) {
        return Ok(*v);
    }
    let v = level_value(2, k, cfg)?;
    atom_table().write().unwrap().insert(key, v);
    Ok(v)
}

/// Both sides' shared basis evaluated at `z`: returns the expansion's value, which should equal
/// `A(k; (1 - z)/(1 + z))`.
pub fn expansion_eval_at(e: &Expansion, z: f64, cfg: &EvalConfig) -> Result<Approx> {
    if !(z > 0.0 && z < 1.0) {
        return Err(crate::Error::Domain(format!("z must lie in (0, 1), got {z}")));
    }
    let log = -z.ln();
    let mut value = 0.0;
    let mut err = 0.0;
    for ((kp, j), c) in &e.terms {
        let coeff = c.evaluate(cfg)?;
        let mut ones = 1.0;
        for i in 1..=*j {
            ones *= log / i as f64;
        }
        let a = a_m_series(2, kp, z, cfg)?;
        let basis = ones * a.value;
        value += coeff.value * basis;
        err += coeff.err_bound * basis.abs() + coeff.value.abs() * ones * a.err_bound;
    }
    Ok(Approx {
        value,
        err_bound: err,
        route: Route::Expansion,
        terms_used: e.len() as u64,
    })
}

/// `binom(s + j - 1, j)` at real `s` as a running product.
pub fn real_binom(s: f64, j: u32) -> f64 {
    (1..=j).fold(1.0, |acc, i| acc * (s + i as f64 - 1.0) / i as f64)
}

/// `psi(k; s) = sum C_k(k'; j) binom(s + j - 1, j) T(k'; s + j)` for `s > 1`.
pub fn psi_expansion(k: &Index, s: f64, cfg: &EvalConfig) -> Result<Approx> {
    if !(s > 1.0) {
        return Err(crate::Error::Domain(format!("psi expansion needs s > 1, got {s}")));
    }
    let e = expand_a(k);
    let mut value = 0.0;
    let mut err = 0.0;
    for ((kp, j), c) in &e.terms {
        let coeff = c.evaluate(cfg)?;
        let b = real_binom(s, *j);
        let t = t_m_function(2, kp, s + *j as f64, cfg)?;
        value += coeff.value * b * t.value;
        err += b * (coeff.err_bound * t.value.abs() + coeff.value.abs() * t.err_bound);
    }
    Ok(Approx {
        value,
        err_bound: err,
        route: Route::Expansion,
        terms_used: e.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn base_cases() {
        let e = expand_a(&idx("1"));
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&Index::empty(), 1), Some(&SymbolicCoeff::constant(rat(1))));

        let e = expand_a(&idx("2"));
        assert_eq!(e.len(), 3);
        assert_eq!(e.coeff(&Index::empty(), 0), Some(&SymbolicCoeff::atom(idx("2"), rat(1))));
        assert_eq!(e.coeff(&idx("1"), 1), Some(&SymbolicCoeff::constant(rat(-1))));
        assert_eq!(e.coeff(&idx("2"), 0), Some(&SymbolicCoeff::constant(rat(-1))));

        let e = expand_a(&idx("1,1"));
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&Index::empty(), 2), Some(&SymbolicCoeff::constant(rat(1))));
    }

    #[test]
    fn weight_homogeneity_and_constant_term() {
        for w in 1..=5 {
            for d in 1..=w {
                for k in crate::index::compositions(w, d as usize) {
                    let e = expand_a(&k);
                    for t in e.terms() {
                        assert!(t.kprime.weight() + t.j <= w);
                        let expect = w - t.kprime.weight() - t.j;
                        assert!(t.coeff.weights().iter().all(|&x| x == expect), "{k}");
                    }
                    if k.is_admissible() {
                        let c = e.coeff(&Index::empty(), 0).unwrap();
                        assert_eq!(c, &SymbolicCoeff::atom(k.clone(), rat(1)));
                    }
                }
            }
        }
    }

    #[test]
    fn numeric_agreement() {
        let cfg = EvalConfig::default();
        for w in 1..=4 {
            for d in 1..=w {
                for k in crate::index::compositions(w, d as usize) {
                    for z in [0.2, 0.5, 0.8] {
                        let lhs = expansion_eval_at(&expand_a(&k), z, &cfg).unwrap().value;
                        let rhs = a_m_series(2, &k, (1.0 - z) / (1.0 + z), &cfg).unwrap().value;
                        assert!((lhs - rhs).abs() < 1e-9, "{k} z={z}: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_expansion_examples() {
        let cfg = EvalConfig::default();
        let t = |s: &str| level_value(2, &idx(s), &cfg).unwrap().value;
        let v = psi_expansion(&idx("2"), 2.0, &cfg).unwrap().value;
        assert!((v - (t("2") * t("2") - 2.0 * t("1,3") - t("2,2"))).abs() < 1e-12);
        let v = psi_expansion(&idx("1"), 2.0, &cfg).unwrap().value;
        assert!((v - 2.0 * t("3")).abs() < 1e-12);
        let v = psi_expansion(&idx("1,1"), 3.0, &cfg).unwrap().value;
        assert!((v - 6.0 * t("5")).abs() < 1e-12);
    }

    #[test]
    fn psi_expansion_matches_quadrature() {
        use crate::quadrature::{transform, QuadConfig, TransformKind};
        let cfg = EvalConfig::default();
        let qcfg = QuadConfig::default();
        for k in ["2", "1,2", "2,1", "3,1", "1,1,2"] {
            for s in [2.0, 2.5, 3.0] {
                let a = psi_expansion(&idx(k), s, &cfg).unwrap().value;
                let b = transform(TransformKind::Psi, &idx(k), s, &qcfg).unwrap().value;
                assert!((a - b).abs() < 1e-8, "{k} s={s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn real_binomial() {
        assert_eq!(real_binom(3.0, 2), 6.0);
        assert!((real_binom(2.5, 2) - 2.5 * 3.5 / 2.0).abs() < 1e-15);
        assert_eq!(binom(5, 2), rat(10));
    }
}
