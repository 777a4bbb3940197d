//! Words in the generators of a one-vertex presentation.
//!
//! A letter is a non-zero `i32`: `k + 1` stands for generator `k`, `-(k + 1)`
//! for its inverse.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: usize, forward: bool) -> Self {
        let l = k as i32 + 1;
        Word(vec![if forward { l } else { -l }])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// Appends `other` with free cancellation at the seam.
    pub fn push_word(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push_letter(l);
        }
    }

    pub fn push_inverse(&mut self, other: &Word) {
        for &l in other.0.iter().rev() {
            self.push_letter(-l);
        }
    }

    pub fn push_letter(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.push_word(other);
        w
    }

    /// Removes every adjacent `x x^-1` pair.
    pub fn free_reduce(&mut self) {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.0 = out;
    }

    /// Free reduction followed by cancellation of inverse letters at the two
    /// ends (reduction up to conjugacy).
    pub fn cyclic_reduce(&mut self) {
        self.free_reduce();
        let v = &self.0;
        let mut lo = 0;
        let mut hi = v.len();
        while hi - lo >= 2 && v[lo] == -v[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        self.0 = v[lo..hi].to_vec();
    }

    /// Signed exponent sum of every generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generators];
        for &l in &self.0 {
            let k = l.unsigned_abs() as usize - 1;
            sums[k] += l.signum() as i64;
        }
        sums
    }

    pub fn rotated(&self, start: usize) -> Word {
        let n = self.0.len();
        Word((0..n).map(|i| self.0[(start + i) % n]).collect())
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let k = l.unsigned_abs() - 1;
            if l > 0 {
                write!(f, "g{k}")?;
            } else {
                write!(f, "g{k}^-1")?;
            }
        }
        Ok(())
    }
}

/// Dehn's algorithm for a single relator whose pieces all have length one.
///
/// Every cyclic rotation of the relator and of its inverse is indexed by its
/// first two letters; the index is injective exactly when no two-letter
/// subword occurs twice in the symmetrised relator set.
#[derive(Clone, Debug)]
pub struct DehnReducer {
    relator_len: usize,
    table: HashMap<(i32, i32), Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("relator has a piece of length >= 2 starting with letters {0}, {1}")]
pub struct LongPiece(pub i32, pub i32);

impl DehnReducer {
    pub fn new(relator: &Word) -> Result<Self, LongPiece> {
        let n = relator.len();
        let mut table = HashMap::new();
        for base in [relator.clone(), relator.inverse()] {
            for i in 0..n {
                let r = base.rotated(i).0;
                let key = (r[0], r[1]);
                if let Some(prev) = table.insert(key, r.clone()) {
                    if prev != r {
                        return Err(LongPiece(key.0, key.1));
                    }
                }
            }
        }
        Ok(DehnReducer {
            relator_len: n,
            table,
        })
    }

    pub fn relator_len(&self) -> usize {
        self.relator_len
    }

    /// Longest match of a relator rotation at `start` of the cyclic or linear
    /// word, if it covers more than half of the relator.
    fn match_at(&self, w: &[i32], start: usize, cyclic: bool) -> Option<(usize, &Vec<i32>)> {
        let len = w.len();
        let at = |j: usize| -> Option<i32> {
            let p = start + j;
            if p < len {
                Some(w[p])
            } else if cyclic && j < len {
                Some(w[p % len])
            } else {
                None
            }
        };
        let (a, b) = (at(0)?, at(1)?);
        let r = self.table.get(&(a, b))?;
        let mut k = 2;
        while k < r.len() && at(k) == Some(r[k]) {
            k += 1;
        }
        if 2 * k > self.relator_len {
            Some((k, r))
        } else {
            None
        }
    }

    /// Shortens a word without changing the group element: repeatedly
    /// replaces more than half of a relator by the inverse of the rest.
    pub fn reduce(&self, word: &mut Word) {
        word.free_reduce();
        'outer: loop {
            for i in 0..word.len() {
                if let Some((k, r)) = self.match_at(&word.0, i, false) {
                    let replacement: Vec<i32> = r[k..].iter().rev().map(|&l| -l).collect();
                    let mut next = word.0[..i].to_vec();
                    next.extend(replacement);
                    next.extend_from_slice(&word.0[i + k..]);
                    word.0 = next;
                    word.free_reduce();
                    continue 'outer;
                }
            }
            break;
        }
    }

    /// Decides whether the word is trivial. Returns the final cyclically
    /// Dehn-reduced word (empty iff trivial).
    pub fn reduce_cyclic(&self, word: &Word) -> Word {
        let mut w = word.clone();
        'outer: loop {
            w.cyclic_reduce();
            for i in 0..w.len() {
                if let Some((k, r)) = self.match_at(&w.0, i, true) {
                    let replacement: Vec<i32> = r[k..].iter().rev().map(|&l| -l).collect();
                    let rot = w.rotated(i);
                    let mut next = replacement;
                    next.extend_from_slice(&rot.0[k..]);
                    w = Word(next);
                    continue 'outer;
                }
            }
            return w;
        }
    }
}
