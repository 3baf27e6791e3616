//! Indices (compositions of positive integers) and their elementary operations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A finite sequence of positive integers `(k1, ..., kr)`.
///
/// The empty index is written `-` in text form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(format!(
                "parts must be positive: {parts:?}"
            )));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `{1}_n` followed by nothing.
    pub fn ones(n: usize) -> Self {
        Index(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Non-empty with last part at least 2.
    pub fn is_admissible(&self) -> bool {
        matches!(self.last(), Some(k) if k >= 2)
    }

    /// Last part decreased by one (dropped when it becomes zero).
    pub fn minus(&self) -> Result<Index> {
        let mut v = self.0.clone();
        match v.last_mut() {
            None => Err(Error::InvalidIndex("minus of empty index".into())),
            Some(k) if *k == 1 => {
                v.pop();
                Ok(Index(v))
            }
            Some(k) => {
                *k -= 1;
                Ok(Index(v))
            }
        }
    }

    /// Last part increased by one.
    pub fn plus(&self) -> Result<Index> {
        let mut v = self.0.clone();
        match v.last_mut() {
            None => Err(Error::InvalidIndex("plus of empty index".into())),
            Some(k) => {
                *k += 1;
                Ok(Index(v))
            }
        }
    }

    /// Last part decreased by one, keeping the slot. Requires the last part to be at least 2.
    pub fn decrement_last(&self) -> Result<Index> {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(k) if *k >= 2 => {
                *k -= 1;
                Ok(Index(v))
            }
            _ => Err(Error::InvalidIndex(format!(
                "cannot decrement last part of {self}"
            ))),
        }
    }

    pub fn reversed(&self) -> Index {
        let mut v = self.0.clone();
        v.reverse();
        Index(v)
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    pub fn push(&self, k: u32) -> Index {
        let mut v = self.0.clone();
        v.push(k);
        Index(v)
    }

    /// `{1}_n` prefixed to this index.
    pub fn with_ones_prefix(&self, n: usize) -> Index {
        Index::ones(n).concat(self)
    }

    /// First `j` parts.
    pub fn head(&self, j: usize) -> Index {
        Index(self.0[..j].to_vec())
    }

    /// `(k_r, k_{r-1}, ..., k_{r-j+1})`: the last `j` parts in reverse order.
    pub fn reversed_tail(&self, j: usize) -> Index {
        Index(self.0.iter().rev().take(j).copied().collect())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "-" {
            return Ok(Index::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidIndex(format!("cannot parse `{s}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Index::new(parts)
    }
}

impl From<&[u32]> for Index {
    fn from(parts: &[u32]) -> Self {
        Index::new(parts.to_vec()).expect("index parts must be positive")
    }
}

/// All compositions of `weight` into exactly `depth` positive parts, in lexicographic order.
pub fn compositions(weight: u32, depth: usize) -> Vec<Index> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(depth);
    fn rec(rem: u32, depth: usize, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
        if depth == 0 {
            if rem == 0 {
                out.push(Index(cur.clone()));
            }
            return;
        }
        if rem < depth as u32 {
            return;
        }
        for k in 1..=rem - (depth as u32 - 1) {
            cur.push(k);
            rec(rem - k, depth - 1, cur, out);
            cur.pop();
        }
    }
    if depth == 0 {
        if weight == 0 {
            out.push(Index::empty());
        }
        return out;
    }
    rec(weight, depth, &mut cur, &mut out);
    out
}

/// Non-negative integer vectors of length `len` summing to `total`, in lexicographic order.
pub fn weak_compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(rem: u32, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=rem {
            cur.push(a);
            rec(rem - a, len - 1, cur, out);
            cur.pop();
        }
    }
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, len, &mut cur, &mut out);
    out
}

/// Admissible indices with weight in `2..=max_weight`, ordered by weight then lexicographically.
pub fn admissible_indices(max_weight: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for w in 2..=max_weight {
        let mut layer: Vec<Index> = (1..w as usize)
            .flat_map(|d| compositions(w, d))
            .filter(|k| k.is_admissible())
            .collect();
        layer.sort();
        out.extend(layer);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let k: Index = "(1,2,3)".parse().unwrap();
        assert_eq!(k.parts(), &[1, 2, 3]);
        assert_eq!(k.to_string(), "1,2,3");
        assert_eq!("-".parse::<Index>().unwrap(), Index::empty());
        assert!("1,0".parse::<Index>().is_err());
        assert!("a".parse::<Index>().is_err());
    }

    #[test]
    fn plus_minus() {
        let k: Index = "2,1".parse().unwrap();
        assert_eq!(k.minus().unwrap().to_string(), "2");
        assert_eq!(k.plus().unwrap().to_string(), "2,2");
        assert!(Index::empty().minus().is_err());
        assert!(!k.is_admissible());
        assert!(k.plus().unwrap().is_admissible());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(6, 3).len(), 10);
        assert_eq!(weak_compositions(3, 3).len(), 10);
        let names: Vec<String> = admissible_indices(4).iter().map(|k| k.to_string()).collect();
        assert_eq!(names, ["2", "1,2", "3", "1,1,2", "1,3", "2,2", "4"]);
    }

    #[test]
    fn reversed_tail_takes_from_the_end() {
        let k: Index = "2,3,4".parse().unwrap();
        assert_eq!(k.reversed_tail(2).parts(), &[4, 3]);
        assert_eq!(k.reversed_tail(0), Index::empty());
    }
}
