//! The word ring over the letters `x` and `y` with exact rational coefficients.

use crate::error::{Error, Result};
use crate::index::{compositions, Index};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

/// A monomial over `{x, y}`. Ordered by length, then lexicographically with `x < y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn y_power(n: usize) -> Self {
        Word(vec![Letter::Y; n])
    }

    pub fn in_h1(&self) -> bool {
        self.0.first().is_none_or(|&l| l == Letter::Y)
    }

    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.0[0] == Letter::Y && *self.0.last().unwrap() == Letter::X)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn trailing_y(&self) -> usize {
        self.0.iter().rev().take_while(|&&l| l == Letter::Y).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::X { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// `z_{k1} ... z_{kr}` with `z_k = y x^{k-1}`.
pub fn word_from_index(k: &Index) -> Word {
    let mut v = Vec::with_capacity(k.weight() as usize);
    for &p in k.parts() {
        v.push(Letter::Y);
        v.extend(std::iter::repeat_n(Letter::X, p as usize - 1));
    }
    Word(v)
}

pub fn index_from_word(w: &Word) -> Result<Index> {
    if !w.in_h1() {
        return Err(Error::NotInH1(w.to_string()));
    }
    let mut parts: Vec<u32> = Vec::new();
    for l in &w.0 {
        match l {
            Letter::Y => parts.push(1),
            Letter::X => *parts.last_mut().unwrap() += 1,
        }
    }
    Index::new(parts)
}

/// A finite rational linear combination of words, with zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl WordPoly {
    pub fn zero() -> Self {
        WordPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty())
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, BigRational::one())
    }

    pub fn term(w: Word, c: BigRational) -> Self {
        let mut p = WordPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_assign_scaled(&mut self, other: &WordPoly, c: &BigRational) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> WordPoly {
        let mut out = WordPoly::zero();
        out.add_assign_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-BigRational::one());
        out
    }

    pub fn add(&self, other: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &BigRational::one());
        out
    }

    /// Sum of the absolute values of integer coefficients; the number of monomials
    /// with multiplicity when every coefficient is a non-negative integer.
    pub fn total_multiplicity(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})·{w}")?;
            }
        }
        Ok(())
    }
}

/// Shuffle of two words with multiplicities, by dynamic programming over suffix pairs.
fn shuffle_words(u: &Word, v: &Word) -> HashMap<Word, u64> {
    let (a, b) = (u.letters(), v.letters());
    let (n, m) = (a.len(), b.len());
    // table[i][j] holds the shuffle of a[i..] and b[j..] as suffix words.
    let mut table: Vec<Vec<HashMap<Vec<Letter>, u64>>> = vec![vec![HashMap::new(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let mut cell: HashMap<Vec<Letter>, u64> = HashMap::new();
            if i == n {
                cell.insert(b[j..].to_vec(), 1);
            } else if j == m {
                cell.insert(a[i..].to_vec(), 1);
            } else {
                for (src, letter) in [(&table[i + 1][j], a[i]), (&table[i][j + 1], b[j])] {
                    for (w, c) in src {
                        let mut nw = Vec::with_capacity(w.len() + 1);
                        nw.push(letter);
                        nw.extend_from_slice(w);
                        *cell.entry(nw).or_insert(0) += c;
                    }
                }
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
        .into_iter()
        .map(|(w, c)| (Word(w), c))
        .collect()
}

/// Bilinear shuffle product.
pub fn shuffle(u: &WordPoly, v: &WordPoly) -> WordPoly {
    let mut out = WordPoly::zero();
    for (wu, cu) in &u.terms {
        for (wv, cv) in &v.terms {
            let c = cu * cv;
            for (w, mult) in shuffle_words(wu, wv) {
                out.add_term(w, &c * BigRational::from_integer(BigInt::from(mult)));
            }
        }
    }
    out
}

pub fn shuffle_monomials(u: &Word, v: &Word) -> WordPoly {
    shuffle(&WordPoly::monomial(u.clone()), &WordPoly::monomial(v.clone()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Writes `w` in H1 as `sum_i (1/i!) (y^{sh i} sh p_i)` with every word of every `p_i` admissible
/// (in H0). Entries with a zero polynomial are omitted; the result is sorted by `i`.
pub fn y_power_decompose(w: &Word) -> Result<Vec<(usize, WordPoly)>> {
    if !w.in_h1() {
        return Err(Error::NotInH1(w.to_string()));
    }
    // Work with the form sum_i y^i sh p_i, since (1/i!) y^{sh i} = y^i.
    let mut parts: BTreeMap<usize, WordPoly> = BTreeMap::new();
    decompose_into(w, &BigRational::one(), &mut parts);
    Ok(parts.into_iter().filter(|(_, p)| !p.is_zero()).collect())
}

fn decompose_into(w: &Word, c: &BigRational, out: &mut BTreeMap<usize, WordPoly>) {
    let n = w.trailing_y();
    if n == 0 {
        out.entry(0).or_default().add_term(w.clone(), c.clone());
        return;
    }
    let u = Word(w.0[..w.len() - n].to_vec());
    if u.is_empty() {
        out.entry(n).or_default().add_term(Word::empty(), c.clone());
        return;
    }
    // (u y^{n-1}) sh y = n * u y^n + sum over insertions of y strictly inside u.
    let nr = BigRational::from_integer(BigInt::from(n));
    let shorter = Word(w.0[..w.len() - 1].to_vec());
    let mut sub: BTreeMap<usize, WordPoly> = BTreeMap::new();
    decompose_into(&shorter, &BigRational::one(), &mut sub);
    for (i, p) in sub {
        let factor = c * BigRational::from_integer(BigInt::from(i + 1)) / &nr;
        out.entry(i + 1).or_default().add_assign_scaled(&p, &factor);
    }
    let tail = Word(w.0[u.len()..w.len() - 1].to_vec());
    for pos in 0..u.len() {
        let mut v = u.0[..pos].to_vec();
        v.push(Letter::Y);
        v.extend_from_slice(&u.0[pos..]);
        let inserted = Word(v).concat(&tail);
        decompose_into(&inserted, &(-c / &nr), out);
    }
}

/// Rebuilds `sum_i (1/i!) y^{sh i} sh p_i`.
pub fn y_power_reconstruct(parts: &[(usize, WordPoly)]) -> WordPoly {
    let mut out = WordPoly::zero();
    for (i, p) in parts {
        let mut yi = WordPoly::one();
        for _ in 0..*i {
            yi = shuffle(&yi, &WordPoly::monomial(Word::y_power(1)));
        }
        let inv = BigRational::new(BigInt::one(), factorial(*i));
        out.add_assign_scaled(&shuffle(&yi, p), &inv);
    }
    out
}

/// The signed shuffle sum that must vanish identically for all `m, n >= 1`:
/// `sum_{j=1}^m (-1)^j word({1}_{m-j}) sh word({1}_{j-1}, n+1) + sum_{|k|=m+n, dep k=m} word(k)`.
pub fn prop212_check(m: usize, n: u32) -> Result<WordPoly> {
    if m == 0 || n == 0 {
        return Err(Error::ParamOutOfRange("m and n must be at least 1".into()));
    }
    let mut out = WordPoly::zero();
    for j in 1..=m {
        let left = word_from_index(&Index::ones(m - j));
        let right = word_from_index(&Index::ones(j - 1).push(n + 1));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.add_assign_scaled(
            &shuffle_monomials(&left, &right),
            &BigRational::from_integer(BigInt::from(sign)),
        );
    }
    for k in compositions(m as u32 + n, m) {
        out.add_term(word_from_index(&k), BigRational::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn index_word_roundtrip() {
        let k: Index = "1,2".parse().unwrap();
        assert_eq!(word_from_index(&k), w("yyx"));
        assert_eq!(index_from_word(&w("yxx")).unwrap().parts(), &[3]);
        assert!(matches!(index_from_word(&w("xy")), Err(Error::NotInH1(_))));
        assert_eq!(word_from_index(&Index::empty()), Word::empty());
    }

    #[test]
    fn small_shuffles() {
        let p = shuffle_monomials(&w("x"), &w("y"));
        assert_eq!(p.coeff(&w("xy")), r(1));
        assert_eq!(p.coeff(&w("yx")), r(1));
        assert_eq!(shuffle_monomials(&w("y"), &w("y")), WordPoly::term(w("yy"), r(2)));
        let q = shuffle_monomials(&w("y"), &w("yx"));
        assert_eq!(q.coeff(&w("yyx")), r(2));
        assert_eq!(q.coeff(&w("yxy")), r(1));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut words = [w("yx"), w("x"), w("yyx"), w("xy")];
        words.sort();
        let s: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["x", "xy", "yx", "yyx"]);
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(y_power_decompose(&w("yx")).unwrap(), vec![(0, WordPoly::monomial(w("yx")))]);
        assert_eq!(y_power_decompose(&w("y")).unwrap(), vec![(1, WordPoly::one())]);
        let d = y_power_decompose(&w("yxy")).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (0, WordPoly::term(w("yyx"), r(-2))));
        assert_eq!(d[1], (1, WordPoly::monomial(w("yx"))));
        assert_eq!(y_power_reconstruct(&d), WordPoly::monomial(w("yxy")));
        assert!(y_power_decompose(&w("xy")).is_err());
    }

    #[test]
    fn prop212_small_cases_vanish() {
        for (m, n) in [(1, 1), (2, 1), (3, 2)] {
            assert!(prop212_check(m, n).unwrap().is_zero(), "m={m} n={n}");
        }
    }
}
