//! Weyl group elements, reduced words, Bruhat order and parabolic structure.
//!
//! An element is stored as its integer action matrix on simple-root
//! coordinates: column `j` holds the coordinates of `w(α_j)`. Two elements
//! are equal iff their matrices are equal, so the matrix is the canonical
//! form and words are derived data.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{GkmError, Result};
use crate::root_system::{RootSystem, RootVector};

/// Default cap on enumerated group orders (`|W(F4)|`).
pub const DEFAULT_GROUP_CAP: u64 = 1152;

/// Default length bound for exhaustive reduced-word enumeration.
pub const DEFAULT_WORD_BOUND: usize = 12;

/// A word in the simple reflections, 1-based generator labels.
///
/// Serialized as comma-separated labels (`1,2,1`); the empty word is `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GkmError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Word::identity());
        }
        s.split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<usize>() {
                    Ok(i) if i > 0 => Ok(i),
                    _ => Err(GkmError::Parse(format!("bad generator `{t}` in word `{s}`"))),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Set of simple-reflection labels generating a parabolic subgroup `W_P`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset(BTreeSet<usize>);

impl ParabolicSubset {
    pub fn new(rs: &RootSystem, generators: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = generators.into_iter().collect();
        for &i in &set {
            rs.check_generator(i)?;
        }
        Ok(ParabolicSubset(set))
    }

    pub fn empty() -> Self {
        ParabolicSubset(BTreeSet::new())
    }

    pub fn full(rs: &RootSystem) -> Self {
        ParabolicSubset((1..=rs.rank()).collect())
    }

    /// Every subset of the generators, ordered by size then lexicographically.
    pub fn all(rs: &RootSystem) -> Vec<ParabolicSubset> {
        let n = rs.rank();
        let mut out: Vec<ParabolicSubset> = (0u64..(1 << n))
            .map(|mask| ParabolicSubset((0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()))
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Parse the comma-separated form; the empty string is `P = B`.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let gens = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| GkmError::Parse(format!("bad generator `{}` in parabolic `{s}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rs, gens)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self, rs: &RootSystem) -> bool {
        self.0.len() == rs.rank()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Weyl group element in canonical (matrix) form, with cached length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    mat: Vec<i32>,
    length: usize,
}

impl WeylElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Coefficient of `α_row` in `w(α_col)`, 0-based.
    pub fn entry(&self, row: usize, col: usize) -> i32 {
        self.mat[row * self.rank + col]
    }

    pub fn matrix(&self) -> &[i32] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `w(v)` for a root-lattice vector.
    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = self.rank;
        RootVector(
            (0..n)
                .map(|r| (0..n).map(|c| self.mat[r * n + c] * v.0[c]).sum())
                .collect(),
        )
    }

    /// `w(α_i)` for a 0-based simple root index.
    pub fn image_of_simple(&self, i: usize) -> RootVector {
        RootVector((0..self.rank).map(|r| self.mat[r * self.rank + i]).collect())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len={}, {:?})", self.length, self.mat)
    }
}

impl RootSystem {
    fn element(&self, mat: Vec<i32>) -> WeylElement {
        let n = self.rank();
        let length = self
            .positive_roots()
            .iter()
            .filter(|beta| {
                // the image of a root is a root: the sign of its first nonzero
                // coordinate decides
                (0..n)
                    .map(|r| (0..n).map(|c| mat[r * n + c] * beta.0[c]).sum::<i32>())
                    .find(|&x| x != 0)
                    .is_some_and(|x| x < 0)
            })
            .count();
        WeylElement { rank: n, mat, length }
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElement {
            rank: n,
            mat,
            length: 0,
        }
    }

    /// `s_i` for 1-based `i`.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_generator(i)?;
        Ok(self.left_mul_simple(i - 1, &self.identity()))
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.check_generator(i)?;
        }
        let mut w = self.identity();
        for &i in word.iter().rev() {
            w = self.left_mul_simple(i - 1, &w);
        }
        Ok(w)
    }

    /// `s_i · w`, 0-based `i`.
    pub(crate) fn left_mul_simple(&self, i: usize, w: &WeylElement) -> WeylElement {
        let n = self.rank();
        let a = &self.cartan()[i];
        let mut mat = w.mat.clone();
        for c in 0..n {
            let pairing: i32 = (0..n).map(|k| a[k] * w.mat[k * n + c]).sum();
            mat[i * n + c] -= pairing;
        }
        self.element(mat)
    }

    /// `w · s_i`, 0-based `i`.
    pub(crate) fn right_mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let n = self.rank();
        let a = &self.cartan()[i];
        let mut mat = w.mat.clone();
        for c in 0..n {
            if a[c] != 0 {
                for r in 0..n {
                    mat[r * n + c] -= a[c] * w.mat[r * n + i];
                }
            }
        }
        self.element(mat)
    }

    pub fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut mat = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let x = a.mat[r * n + k];
                if x != 0 {
                    for c in 0..n {
                        mat[r * n + c] += x * b.mat[k * n + c];
                    }
                }
            }
        }
        self.element(mat)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let word = self.canonical_reduced_word(w);
        let mut out = self.identity();
        for &i in word.letters() {
            out = self.left_mul_simple(i - 1, &out);
        }
        out
    }

    /// Is `s_i` a left descent of `w`, i.e. `ℓ(s_i w) < ℓ(w)`? 0-based `i`.
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        self.left_mul_simple(i, w).length < w.length
    }

    /// Is `s_i` a right descent of `w`, i.e. `w(α_i)` negative? 0-based `i`.
    pub fn is_right_descent(&self, w: &WeylElement, i: usize) -> bool {
        w.image_of_simple(i).is_negative()
    }

    /// Reduced word built by repeatedly emitting the smallest left descent.
    pub fn canonical_reduced_word(&self, w: &WeylElement) -> Word {
        let mut word = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while cur.length > 0 {
            let (i, next) = (0..self.rank())
                .find_map(|i| {
                    let next = self.left_mul_simple(i, &cur);
                    (next.length < cur.length).then_some((i, next))
                })
                .expect("nonidentity element has a left descent");
            word.push(i + 1);
            cur = next;
        }
        Word(word)
    }

    /// Every reduced word of `w`; refuses elements longer than `bound`.
    pub fn all_reduced_words(&self, w: &WeylElement, bound: usize) -> Result<BTreeSet<Word>> {
        if w.length > bound {
            return Err(GkmError::CapExceeded {
                what: "element length",
                size: w.length as u64,
                cap: bound as u64,
            });
        }
        let mut memo: HashMap<WeylElement, BTreeSet<Word>> = HashMap::new();
        Ok(self.reduced_words_rec(w, &mut memo))
    }

    fn reduced_words_rec(&self, w: &WeylElement, memo: &mut HashMap<WeylElement, BTreeSet<Word>>) -> BTreeSet<Word> {
        if let Some(hit) = memo.get(w) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        if w.length == 0 {
            out.insert(Word::identity());
        } else {
            for i in 0..self.rank() {
                let next = self.left_mul_simple(i, w);
                if next.length < w.length {
                    for tail in self.reduced_words_rec(&next, memo) {
                        let mut word = Vec::with_capacity(w.length);
                        word.push(i + 1);
                        word.extend(tail.0);
                        out.insert(Word(word));
                    }
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Bruhat order by a greedy scan of the canonical reduced word of `u`.
    ///
    /// Scanning `u = s_{b_1} ⋯ s_{b_k}` from the left, each letter that is a
    /// left descent of the remaining `v` is stripped from `v`; `v ≤ u` iff
    /// nothing remains.
    pub fn bruhat_leq(&self, v: &WeylElement, u: &WeylElement) -> bool {
        if v.length > u.length {
            return false;
        }
        let mut cur = v.clone();
        for &b in self.canonical_reduced_word(u).letters() {
            if cur.length == 0 {
                break;
            }
            let next = self.left_mul_simple(b - 1, &cur);
            if next.length < cur.length {
                cur = next;
            }
        }
        cur.length == 0
    }

    /// Sort key `(length, canonical reduced word)`.
    pub fn canonical_cmp(&self, a: &WeylElement, b: &WeylElement) -> Ordering {
        a.length
            .cmp(&b.length)
            .then_with(|| self.canonical_reduced_word(a).cmp(&self.canonical_reduced_word(b)))
    }

    pub fn canonical_sort(&self, elements: &mut [WeylElement]) {
        let mut keyed: Vec<(usize, Word, WeylElement)> = elements
            .iter()
            .map(|w| (w.length, self.canonical_reduced_word(w), w.clone()))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        for (slot, (_, _, w)) in elements.iter_mut().zip(keyed) {
            *slot = w;
        }
    }

    /// Breadth-first closure of the identity under `gens` (0-based).
    fn closure(&self, gens: &[usize], cap: u64, what: &'static str) -> Result<Vec<WeylElement>> {
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            if seen.contains_key(&w) {
                continue;
            }
            if order.len() as u64 >= cap {
                return Err(GkmError::CapExceeded {
                    what,
                    size: order.len() as u64 + 1,
                    cap,
                });
            }
            for &i in gens {
                let next = self.right_mul_simple(&w, i);
                if !seen.contains_key(&next) {
                    queue.push_back(next);
                }
            }
            seen.insert(w.clone(), ());
            order.push(w);
        }
        self.canonical_sort(&mut order);
        Ok(order)
    }

    /// All elements of `W` in canonical order.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<WeylElement>> {
        if self.weyl_order() > cap {
            return Err(GkmError::CapExceeded {
                what: "Weyl group order",
                size: self.weyl_order(),
                cap,
            });
        }
        let gens: Vec<usize> = (0..self.rank()).collect();
        self.closure(&gens, cap, "Weyl group order")
    }

    /// `W_P` in canonical order.
    pub fn parabolic_subgroup(&self, p: &ParabolicSubset, cap: u64) -> Result<Vec<WeylElement>> {
        let gens: Vec<usize> = p.generators().map(|i| i - 1).collect();
        self.closure(&gens, cap, "parabolic subgroup order")
    }

    /// Does `w` send every `α_i`, `i ∈ P`, to a positive root?
    pub fn is_minimal_coset_rep(&self, w: &WeylElement, p: &ParabolicSubset) -> bool {
        p.generators().all(|i| !self.is_right_descent(w, i - 1))
    }

    /// `W^P` in canonical order, grown from `e` by left multiplication.
    pub fn minimal_coset_reps(&self, p: &ParabolicSubset, cap: u64) -> Result<Vec<WeylElement>> {
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            if seen.contains_key(&w) {
                continue;
            }
            if out.len() as u64 >= cap {
                return Err(GkmError::CapExceeded {
                    what: "coset representative count",
                    size: out.len() as u64 + 1,
                    cap,
                });
            }
            for i in 0..self.rank() {
                let next = self.left_mul_simple(i, &w);
                if next.length > w.length && self.is_minimal_coset_rep(&next, p) {
                    queue.push_back(next);
                }
            }
            seen.insert(w.clone(), ());
            out.push(w);
        }
        self.canonical_sort(&mut out);
        Ok(out)
    }

    /// Unique `w = v·u` with `v ∈ W^P`, `u ∈ W_P` and lengths adding.
    pub fn parabolic_decompose(&self, w: &WeylElement, p: &ParabolicSubset) -> (WeylElement, WeylElement) {
        let mut v = w.clone();
        let mut u = self.identity();
        'strip: loop {
            for i in p.generators() {
                if self.is_right_descent(&v, i - 1) {
                    v = self.right_mul_simple(&v, i - 1);
                    u = self.left_mul_simple(i - 1, &u);
                    continue 'strip;
                }
            }
            break;
        }
        (v, u)
    }

    /// All `u` such that some reduced word of `w` ends in a reduced word of `u`.
    pub fn suffixes(&self, w: &WeylElement) -> Vec<WeylElement> {
        self.weak_interval(w, true)
    }

    /// All `x` such that some reduced word of `w` starts with a reduced word of `x`.
    pub fn prefixes(&self, w: &WeylElement) -> Vec<WeylElement> {
        self.weak_interval(w, false)
    }

    fn weak_interval(&self, w: &WeylElement, strip_left: bool) -> Vec<WeylElement> {
        let mut seen: HashMap<WeylElement, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            if seen.contains_key(&x) {
                continue;
            }
            for i in 0..self.rank() {
                let next = if strip_left {
                    self.left_mul_simple(i, &x)
                } else {
                    self.right_mul_simple(&x, i)
                };
                if next.length < x.length && !seen.contains_key(&next) {
                    queue.push_back(next);
                }
            }
            seen.insert(x.clone(), ());
            out.push(x);
        }
        self.canonical_sort(&mut out);
        out
    }

    pub fn word_string(&self, w: &WeylElement) -> String {
        self.canonical_reduced_word(w).to_string()
    }

    pub fn parse_element(&self, s: &str) -> Result<WeylElement> {
        let word: Word = s.parse()?;
        self.from_word(word.letters())
    }
}

/// An enumerated Weyl group with elements indexed in canonical order.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    words: Vec<Word>,
    index: HashMap<WeylElement, usize>,
    right_gen: Vec<Vec<usize>>,
    left_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem, cap: u64) -> Result<WeylGroup> {
        let elements = rs.enumerate(cap)?;
        let words: Vec<Word> = elements.iter().map(|w| rs.canonical_reduced_word(w)).collect();
        let index: HashMap<WeylElement, usize> = elements.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let n = rs.rank();
        let right_gen = elements
            .iter()
            .map(|w| (0..n).map(|i| index[&rs.right_mul_simple(w, i)]).collect())
            .collect();
        let left_gen = elements
            .iter()
            .map(|w| (0..n).map(|i| index[&rs.left_mul_simple(i, w)]).collect())
            .collect();
        let inverse = words
            .iter()
            .map(|word| index[&rs.from_word(word.reversed().letters()).expect("valid word")])
            .collect();
        Ok(WeylGroup {
            rs,
            elements,
            words,
            index,
            right_gen,
            left_gen,
            inverse,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn word(&self, k: usize) -> &Word {
        &self.words[k]
    }

    pub fn length(&self, k: usize) -> usize {
        self.elements[k].length
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let w = self.rs.from_word(word)?;
        Ok(self.index[&w])
    }

    pub fn parse_index(&self, s: &str) -> Result<usize> {
        let word: Word = s.parse()?;
        self.index_of_word(word.letters())
    }

    /// `k · s_i`, 0-based `i`.
    pub fn right_mul_gen(&self, k: usize, i: usize) -> usize {
        self.right_gen[k][i]
    }

    /// `s_i · k`, 0-based `i`.
    pub fn left_mul_gen(&self, i: usize, k: usize) -> usize {
        self.left_gen[k][i]
    }

    pub fn inverse(&self, k: usize) -> usize {
        self.inverse[k]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b]
            .letters()
            .iter()
            .fold(a, |acc, &i| self.right_gen[acc][i - 1])
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_right_descent(&self, k: usize, i: usize) -> bool {
        self.length(self.right_gen[k][i]) < self.length(k)
    }

    pub fn bruhat_leq(&self, v: usize, u: usize) -> bool {
        if self.length(v) > self.length(u) {
            return false;
        }
        let mut cur = v;
        for &b in self.words[u].letters() {
            if self.length(cur) == 0 {
                break;
            }
            let next = self.left_gen[cur][b - 1];
            if self.length(next) < self.length(cur) {
                cur = next;
            }
        }
        cur == 0
    }

    pub fn parabolic_subgroup(&self, p: &ParabolicSubset) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.words[k].letters().iter().all(|&i| p.contains(i)))
            .collect()
    }

    pub fn minimal_coset_reps(&self, p: &ParabolicSubset) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| p.generators().all(|i| !self.is_right_descent(k, i - 1)))
            .collect()
    }

    pub fn parabolic_decompose(&self, k: usize, p: &ParabolicSubset) -> (usize, usize) {
        let mut v = k;
        let mut u = 0;
        'strip: loop {
            for i in p.generators() {
                if self.is_right_descent(v, i - 1) {
                    v = self.right_gen[v][i - 1];
                    u = self.left_gen[u][i - 1];
                    continue 'strip;
                }
            }
            break;
        }
        (v, u)
    }

    /// Suffixes of `k` as sorted indices.
    pub fn suffixes(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .rs
            .suffixes(&self.elements[k])
            .iter()
            .map(|w| self.index[w])
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::parse("A2").unwrap()
    }

    fn el(rs: &RootSystem, w: &[usize]) -> WeylElement {
        rs.from_word(w).unwrap()
    }

    #[test]
    fn from_word_relations() {
        let rs = a2();
        assert_eq!(el(&rs, &[1, 2, 1]), el(&rs, &[2, 1, 2]));
        assert_eq!(el(&rs, &[]), rs.identity());
        assert_eq!(el(&rs, &[1, 1]), rs.identity());
        assert!(rs.from_word(&[3]).is_err());
    }

    #[test]
    fn lengths() {
        let rs = a2();
        assert_eq!(rs.identity().length(), 0);
        assert_eq!(el(&rs, &[1, 2, 1]).length(), 3);
        assert_eq!(el(&rs, &[2, 1]).length(), 2);
        assert_eq!(el(&rs, &[1, 2, 1, 2]).length(), 2);
    }

    #[test]
    fn canonical_words() {
        let rs = a2();
        assert_eq!(rs.canonical_reduced_word(&rs.identity()), Word::identity());
        assert_eq!(rs.canonical_reduced_word(&el(&rs, &[2, 1])), Word(vec![2, 1]));
        assert_eq!(rs.canonical_reduced_word(&el(&rs, &[2, 1, 2])), Word(vec![1, 2, 1]));
    }

    #[test]
    fn reduced_word_sets() {
        let rs = a2();
        let w0 = rs.all_reduced_words(&el(&rs, &[1, 2, 1]), 10).unwrap();
        assert_eq!(w0, BTreeSet::from([Word(vec![1, 2, 1]), Word(vec![2, 1, 2])]));
        let w = rs.all_reduced_words(&el(&rs, &[1, 2]), 10).unwrap();
        assert_eq!(w, BTreeSet::from([Word(vec![1, 2])]));
        let e = rs.all_reduced_words(&rs.identity(), 10).unwrap();
        assert_eq!(e, BTreeSet::from([Word::identity()]));
        assert!(rs.all_reduced_words(&el(&rs, &[1, 2, 1]), 2).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let rs = a2();
        let e = rs.identity();
        let s1 = el(&rs, &[1]);
        let s2 = el(&rs, &[2]);
        let w0 = el(&rs, &[1, 2, 1]);
        assert!(rs.bruhat_leq(&e, &w0));
        assert!(!rs.bruhat_leq(&s2, &s1));
        assert!(rs.bruhat_leq(&s2, &w0));
        assert!(!rs.bruhat_leq(&el(&rs, &[1, 2]), &el(&rs, &[2, 1])));
    }

    #[test]
    fn enumeration_and_order() {
        let rs = a2();
        let all = rs.enumerate(DEFAULT_GROUP_CAP).unwrap();
        let words: Vec<String> = all.iter().map(|w| rs.word_string(w)).collect();
        assert_eq!(words, ["e", "1", "2", "1,2", "2,1", "1,2,1"]);
        assert_eq!(RootSystem::parse("A1").unwrap().enumerate(10).unwrap().len(), 2);
        assert_eq!(RootSystem::parse("B2").unwrap().enumerate(10).unwrap().len(), 8);
        let e6 = RootSystem::parse("E6").unwrap();
        assert!(matches!(
            e6.enumerate(DEFAULT_GROUP_CAP),
            Err(GkmError::CapExceeded { .. })
        ));
    }

    #[test]
    fn parabolic_examples() {
        let rs = a2();
        let p2 = ParabolicSubset::new(&rs, [2]).unwrap();
        let reps: Vec<String> = rs
            .minimal_coset_reps(&p2, 100)
            .unwrap()
            .iter()
            .map(|w| rs.word_string(w))
            .collect();
        assert_eq!(reps, ["e", "1", "2,1"]);
        let full = ParabolicSubset::full(&rs);
        assert_eq!(rs.minimal_coset_reps(&full, 100).unwrap(), vec![rs.identity()]);
        assert_eq!(rs.minimal_coset_reps(&ParabolicSubset::empty(), 100).unwrap().len(), 6);
        let wp: Vec<String> = rs
            .parabolic_subgroup(&p2, 100)
            .unwrap()
            .iter()
            .map(|w| rs.word_string(w))
            .collect();
        assert_eq!(wp, ["e", "2"]);
        assert_eq!(rs.parabolic_subgroup(&ParabolicSubset::empty(), 100).unwrap().len(), 1);
        let a3 = RootSystem::parse("A3").unwrap();
        let p13 = ParabolicSubset::new(&a3, [1, 3]).unwrap();
        assert_eq!(a3.parabolic_subgroup(&p13, 100).unwrap().len(), 4);
    }

    #[test]
    fn decompose_examples() {
        let rs = a2();
        let p2 = ParabolicSubset::new(&rs, [2]).unwrap();
        let (v, u) = rs.parabolic_decompose(&el(&rs, &[1, 2, 1]), &p2);
        assert_eq!((v, u), (el(&rs, &[2, 1]), el(&rs, &[2])));
        let (v, u) = rs.parabolic_decompose(&el(&rs, &[1, 2]), &p2);
        assert_eq!((v, u), (el(&rs, &[1]), el(&rs, &[2])));
        let (v, u) = rs.parabolic_decompose(&el(&rs, &[2]), &p2);
        assert_eq!((v, u), (rs.identity(), el(&rs, &[2])));
    }

    #[test]
    fn suffix_examples() {
        let rs = a2();
        let words =
            |w: &[usize]| -> Vec<String> { rs.suffixes(&el(&rs, w)).iter().map(|x| rs.word_string(x)).collect() };
        assert_eq!(words(&[2, 1]), ["e", "1", "2,1"]);
        assert_eq!(words(&[]), ["e"]);
        assert_eq!(words(&[1, 2, 1]), ["e", "1", "2", "1,2", "2,1", "1,2,1"]);
    }

    #[test]
    fn word_and_parabolic_formats() {
        assert_eq!("1,2,1".parse::<Word>().unwrap(), Word(vec![1, 2, 1]));
        assert_eq!("e".parse::<Word>().unwrap(), Word::identity());
        assert_eq!(Word::identity().to_string(), "e");
        assert!("1,x".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
        let rs = RootSystem::parse("A3").unwrap();
        let p = ParabolicSubset::parse(&rs, "1,3").unwrap();
        assert_eq!(p.to_string(), "1,3");
        assert!(ParabolicSubset::parse(&rs, "").unwrap().is_empty());
        assert!(ParabolicSubset::parse(&rs, "4").is_err());
        assert_eq!(ParabolicSubset::all(&rs).len(), 8);
    }

    #[test]
    fn group_tables_agree_with_matrices() {
        let rs = RootSystem::parse("B2").unwrap();
        let g = WeylGroup::new(rs.clone(), 100).unwrap();
        for a in 0..g.len() {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
            for b in 0..g.len() {
                let m = rs.mul(g.element(a), g.element(b));
                assert_eq!(g.index_of(&m), Some(g.mul(a, b)));
                assert_eq!(g.bruhat_leq(a, b), rs.bruhat_leq(g.element(a), g.element(b)));
            }
        }
    }
}
