//! Products of harmonic-type chains sharing an outer summation variable, reduced by the
//! quasi-shuffle (stuffle) product to linear combinations of single nested sums.

use super::nested::{sum_at_one, Chain, Letter, NestedValue, TailMode};
use crate::error::Result;

/// A chain of variables all lying below the outer variable `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounded {
    pub letters: Vec<Letter>,
    /// Consecutive variables may coincide (`<=` instead of `<`).
    pub star: bool,
    /// The last variable may equal `n`.
    pub inclusive: bool,
}

impl Bounded {
    pub fn strict(letters: Vec<Letter>) -> Self {
        Bounded {
            letters,
            star: false,
            inclusive: false,
        }
    }
}

/// A linear combination of strict chains ending with the outer variable.
pub type Combination = Vec<(f64, Vec<Letter>)>;

fn merge(a: Letter, b: Letter) -> Letter {
    Letter {
        exponent: a.exponent + b.exponent,
        residue: a.residue,
    }
}

/// Quasi-shuffle of two strict chains: coinciding variables are merged when their
/// residues agree.
pub fn stuffle(a: &[Letter], b: &[Letter], modulus: u32) -> Vec<Vec<Letter>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let (x, a0) = (a[a.len() - 1], &a[..a.len() - 1]);
    let (y, b0) = (b[b.len() - 1], &b[..b.len() - 1]);
    let mut out = Vec::new();
    for mut w in stuffle(a0, b, modulus) {
        w.push(x);
        out.push(w);
    }
    for mut w in stuffle(a, b0, modulus) {
        w.push(y);
        out.push(w);
    }
    if x.residue % modulus == y.residue % modulus {
        for mut w in stuffle(a0, b0, modulus) {
            w.push(merge(x, y));
            out.push(w);
        }
    }
    out
}

/// Non-star chains whose sum equals the star chain (merging runs of coinciding variables).
fn expand_star(letters: &[Letter], modulus: u32) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = Vec::new();
    if letters.is_empty() {
        return vec![Vec::new()];
    }
    let r = letters.len();
    for mask in 0u32..(1 << (r - 1)) {
        let mut chain = vec![letters[0]];
        let mut ok = true;
        for i in 1..r {
            if mask & (1 << (i - 1)) != 0 {
                let last = chain.last_mut().unwrap();
                if last.residue % modulus != letters[i].residue % modulus {
                    ok = false;
                    break;
                }
                *last = merge(*last, letters[i]);
            } else {
                chain.push(letters[i]);
            }
        }
        if ok {
            out.push(chain);
        }
    }
    out
}

/// Reduces `sum_n n^{-e} prod_f chain_f(n)` to strict chains ending in the outer letter.
pub fn reduce(factors: &[Bounded], outer: Letter, modulus: u32) -> Combination {
    // Each partial state: accumulated strict chain product and the current outer letter.
    let mut states: Vec<(f64, Vec<Letter>, Letter)> = vec![(1.0, Vec::new(), outer)];
    for f in factors {
        let variants = if f.star {
            expand_star(&f.letters, modulus)
        } else {
            vec![f.letters.clone()]
        };
        let mut next = Vec::new();
        for (coef, acc, out_letter) in &states {
            for v in &variants {
                let mut options: Vec<(Vec<Letter>, Letter)> = vec![(v.clone(), *out_letter)];
                if f.inclusive && !v.is_empty() {
                    let last = v[v.len() - 1];
                    if last.residue % modulus == out_letter.residue % modulus {
                        options.push((v[..v.len() - 1].to_vec(), merge(*out_letter, last)));
                    }
                }
                for (strict, o) in options {
                    for w in stuffle(acc, &strict, modulus) {
                        next.push((*coef, w, o));
                    }
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .map(|(c, mut w, o)| {
            w.push(o);
            (c, w)
        })
        .collect()
}

/// Numerical value of a combination at `z = 1`.
pub fn evaluate(comb: &Combination, modulus: u32, n_max: u64) -> Result<NestedValue> {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut terms = 0;
    for (c, letters) in comb {
        let chain = Chain {
            modulus,
            letters: letters.clone(),
        };
        let v = sum_at_one(&chain, n_max, TailMode::Full)?;
        value += c * v.value;
        err += c.abs() * v.err;
        terms += v.terms;
    }
    Ok(NestedValue { value, err, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(e: f64) -> Letter {
        Letter {
            exponent: e,
            residue: 0,
        }
    }

    #[test]
    fn stuffle_counts() {
        // zeta(2) zeta(3) = zeta(2,3) + zeta(3,2) + zeta(5) at chain level
        let s = stuffle(&[l(2.0)], &[l(3.0)], 1);
        assert_eq!(s.len(), 3);
        // different residues cannot coincide
        let odd = Letter { exponent: 1.0, residue: 1 };
        assert_eq!(stuffle(&[l(1.0)], &[odd], 2).len(), 2);
    }

    #[test]
    fn star_sum_reduction_matches_direct() {
        // sum_n zeta*_n(1,1) / n^3 computed directly vs reduced.
        let factors = [Bounded {
            letters: vec![l(1.0), l(1.0)],
            star: true,
            inclusive: true,
        }];
        let comb = reduce(&factors, l(3.0), 1);
        let reduced = evaluate(&comb, 1, 500).unwrap().value;
        let n_max = 400_000usize;
        let mut h1 = 0.0;
        let mut star = 0.0;
        let mut direct = 0.0;
        for n in 1..=n_max {
            let x = n as f64;
            h1 += 1.0 / x;
            star += h1 / x;
            direct += star / (x * x * x);
        }
        assert!((reduced - direct).abs() < 1e-9, "{reduced} vs {direct}");
    }
}
