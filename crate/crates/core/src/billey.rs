//! Localizations `σ_v(u)` of Schubert classes by Billey's formula.
//!
//! Fix a reduced word `u = s_{b_1} ⋯ s_{b_L}` and put
//! `r(i, u) = s_{b_1} ⋯ s_{b_{i-1}}(α_{b_i})`. Then `σ_v(u)` is the sum, over
//! position sets `j_1 < ⋯ < j_k` (`k = ℓ(v)`) whose letters multiply to `v`,
//! of `r(j_1, u) ⋯ r(j_k, u)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::error::{GkmError, Result};
use crate::polyring::RootPolynomial;
use crate::root_system::{RootSystem, RootVector};
use crate::weyl::{WeylElement, WeylGroup, Word};

/// Longest `u` accepted by the brute-force oracle.
pub const BRUTE_FORCE_MAX_LENGTH: usize = 10;

/// A reduced word for `u` with its r-values.
#[derive(Debug, Clone)]
pub struct BilleyContext {
    word: Word,
    roots: Vec<RootVector>,
    r_values: Vec<RootPolynomial>,
}

impl BilleyContext {
    /// Context on the canonical reduced word of `u`.
    pub fn new(rs: &RootSystem, u: &WeylElement) -> BilleyContext {
        Self::from_reduced_word(rs, rs.canonical_reduced_word(u)).expect("canonical words are reduced")
    }

    /// Context on an arbitrary reduced word; non-reduced words are rejected.
    pub fn with_word(rs: &RootSystem, word: &[usize]) -> Result<BilleyContext> {
        let w = rs.from_word(word)?;
        if w.length() != word.len() {
            return Err(GkmError::Spec(format!("word {} is not reduced", Word::from(word))));
        }
        Self::from_reduced_word(rs, Word::from(word))
    }

    fn from_reduced_word(rs: &RootSystem, word: Word) -> Result<BilleyContext> {
        let mut roots = Vec::with_capacity(word.len());
        for i in 0..word.len() {
            let letters = word.letters();
            let alpha = rs.simple_root(letters[i])?;
            roots.push(rs.act(&letters[..i], &alpha)?);
        }
        let r_values = roots.iter().map(RootPolynomial::from_root).collect();
        Ok(BilleyContext { word, roots, r_values })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn r_values(&self) -> &[RootPolynomial] {
        &self.r_values
    }

    /// `r(i, u)` as a root vector, 1-based `i`.
    pub fn root(&self, i: usize) -> Result<&RootVector> {
        if i == 0 || i > self.roots.len() {
            return Err(GkmError::IndexOutOfRange {
                index: i,
                rank: self.roots.len(),
            });
        }
        Ok(&self.roots[i - 1])
    }

    /// `r(i, u)` as a linear polynomial, 1-based `i`.
    pub fn root_r(&self, i: usize) -> Result<&RootPolynomial> {
        self.root(i)?;
        Ok(&self.r_values[i - 1])
    }
}

/// `σ_v(u)` by dynamic programming over the letters of `u`.
///
/// The state is the partial product `x` of the letters chosen so far; only
/// length-increasing steps into prefixes of `v` survive, so the state space
/// is the set of prefixes of `v`.
pub fn billey_restrict(rs: &RootSystem, v: &WeylElement, u: &WeylElement) -> Result<RootPolynomial> {
    if v.rank() != rs.rank() || u.rank() != rs.rank() {
        return Err(GkmError::RankMismatch {
            expected: rs.rank(),
            found: if v.rank() != rs.rank() { v.rank() } else { u.rank() },
        });
    }
    let ctx = BilleyContext::new(rs, u);
    Ok(billey_with_context(rs, &ctx, v))
}

/// `σ_v(u)` evaluated on the reduced word held by `ctx`.
pub fn billey_with_context(rs: &RootSystem, ctx: &BilleyContext, v: &WeylElement) -> RootPolynomial {
    let n = rs.rank();
    let target = v.length();
    let word = ctx.word.letters();
    if target > word.len() {
        return RootPolynomial::zero(n);
    }
    let prefixes = rs.prefixes(v);
    let slot: HashMap<&WeylElement, usize> = prefixes.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let step: Vec<Vec<Option<usize>>> = prefixes
        .iter()
        .map(|x| {
            (0..n)
                .map(|i| {
                    let y = rs.right_mul_simple(x, i);
                    if y.length() == x.length() + 1 {
                        slot.get(&y).copied()
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let mut vals: Vec<Option<RootPolynomial>> = vec![None; prefixes.len()];
    vals[slot[&rs.identity()]] = Some(RootPolynomial::one(n));
    for (pos, &b) in word.iter().enumerate() {
        let remaining = word.len() - pos;
        let mut next = vals.clone();
        for (k, val) in vals.iter().enumerate() {
            let Some(val) = val else { continue };
            if target - prefixes[k].length() > remaining {
                continue;
            }
            if let Some(y) = step[k][b - 1] {
                let add = val * &ctx.r_values[pos];
                next[y] = Some(match next[y].take() {
                    Some(acc) => &acc + &add,
                    None => add,
                });
            }
        }
        vals = next;
    }
    vals[slot[v]].take().unwrap_or_else(|| RootPolynomial::zero(n))
}

/// Naive evaluation over every position subset; a test oracle only.
pub fn billey_restrict_bruteforce(rs: &RootSystem, v: &WeylElement, u: &WeylElement) -> Result<RootPolynomial> {
    if u.length() > BRUTE_FORCE_MAX_LENGTH {
        return Err(GkmError::CapExceeded {
            what: "brute-force word length",
            size: u.length() as u64,
            cap: BRUTE_FORCE_MAX_LENGTH as u64,
        });
    }
    let word = rs.canonical_reduced_word(u);
    bruteforce_on_word(rs, v, word.letters())
}

/// Naive evaluation on a caller-supplied reduced word of `u`.
pub fn bruteforce_on_word(rs: &RootSystem, v: &WeylElement, word: &[usize]) -> Result<RootPolynomial> {
    let n = rs.rank();
    let len = word.len();
    if len > BRUTE_FORCE_MAX_LENGTH {
        return Err(GkmError::CapExceeded {
            what: "brute-force word length",
            size: len as u64,
            cap: BRUTE_FORCE_MAX_LENGTH as u64,
        });
    }
    let r: Vec<RootPolynomial> = (0..len)
        .map(|i| {
            let alpha = rs.simple_root(word[i])?;
            Ok(RootPolynomial::from_root(&rs.act(&word[..i], &alpha)?))
        })
        .collect::<Result<_>>()?;
    let k = v.length();
    let mut acc = RootPolynomial::zero(n);
    for mask in 0u32..(1 << len) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let positions: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
        let letters: Vec<usize> = positions.iter().map(|&i| word[i]).collect();
        if rs.from_word(&letters)? != *v {
            continue;
        }
        let term = positions.iter().fold(RootPolynomial::one(n), |t, &i| &t * &r[i]);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Brute-force row: every `σ_v(u)` on a reduced word of `u`, by walking all
/// position subsets once and keeping those that spell a reduced word.
pub fn bruteforce_row(rs: &RootSystem, word: &[usize]) -> Result<HashMap<WeylElement, RootPolynomial>> {
    let n = rs.rank();
    let len = word.len();
    if len > BRUTE_FORCE_MAX_LENGTH {
        return Err(GkmError::CapExceeded {
            what: "brute-force word length",
            size: len as u64,
            cap: BRUTE_FORCE_MAX_LENGTH as u64,
        });
    }
    let r: Vec<RootPolynomial> = (0..len)
        .map(|i| {
            Ok(RootPolynomial::from_root(
                &rs.act(&word[..i], &rs.simple_root(word[i])?)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut out: HashMap<WeylElement, RootPolynomial> = HashMap::new();
    for mask in 0u32..(1 << len) {
        let positions: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
        let letters: Vec<usize> = positions.iter().map(|&i| word[i]).collect();
        let x = rs.from_word(&letters)?;
        if x.length() != positions.len() {
            continue;
        }
        let term = positions.iter().fold(RootPolynomial::one(n), |t, &i| &t * &r[i]);
        let slot = out.entry(x).or_insert_with(|| RootPolynomial::zero(n));
        *slot = &*slot + &term;
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// `σ_w(w)`: the product of every r-value of `w`.
pub fn schubert_point(rs: &RootSystem, w: &WeylElement) -> RootPolynomial {
    let ctx = BilleyContext::new(rs, w);
    ctx.r_values
        .iter()
        .fold(RootPolynomial::one(rs.rank()), |acc, r| &acc * r)
}

/// Every nonzero `σ_v(u)` for a fixed `u`, keyed by `v`.
///
/// One pass over the letters of `u` carrying all partial products at once.
pub fn billey_row(rs: &RootSystem, u: &WeylElement) -> Vec<(WeylElement, RootPolynomial)> {
    billey_row_with_context(rs, &BilleyContext::new(rs, u))
}

/// [`billey_row`] on the reduced word held by `ctx`.
pub fn billey_row_with_context(rs: &RootSystem, ctx: &BilleyContext) -> Vec<(WeylElement, RootPolynomial)> {
    let n = rs.rank();
    let mut vals: HashMap<WeylElement, RootPolynomial> = HashMap::from([(rs.identity(), RootPolynomial::one(n))]);
    for (pos, &b) in ctx.word.letters().iter().enumerate() {
        let mut next = vals.clone();
        for (x, val) in &vals {
            let y = rs.right_mul_simple(x, b - 1);
            if y.length() == x.length() + 1 {
                let add = val * &ctx.r_values[pos];
                let slot = next.entry(y).or_insert_with(|| RootPolynomial::zero(n));
                *slot = &*slot + &add;
            }
        }
        vals = next;
    }
    let mut out: Vec<(WeylElement, RootPolynomial)> = vals.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    out.sort_by(|a, b| rs.canonical_cmp(&a.0, &b.0));
    out
}

/// One row of localizations keyed by the canonical word of `v`.
pub type BilleyRow = BTreeMap<Word, RootPolynomial>;

/// Persistence hook for Billey rows, keyed by (root system spec, word of `u`).
pub trait RowStore: Send + Sync {
    fn load(&self, rs: &RootSystem, u: &Word) -> Option<BilleyRow>;
    fn store(&self, rs: &RootSystem, u: &Word, row: &BilleyRow);
}

/// Memo of Billey rows keyed by (root system spec, `u`), optionally backed by
/// a [`RowStore`]. Concurrent inserts of the same row are idempotent.
#[derive(Default)]
pub struct BilleyCache {
    rows: RwLock<HashMap<(String, Word), Arc<BilleyRow>>>,
    store: Option<Box<dyn RowStore>>,
}

impl BilleyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_store(store: Box<dyn RowStore>) -> Self {
        BilleyCache {
            rows: RwLock::default(),
            store: Some(store),
        }
    }

    pub fn row(&self, rs: &RootSystem, u: &WeylElement) -> Arc<BilleyRow> {
        let uw = rs.canonical_reduced_word(u);
        let key = (rs.spec().to_string(), uw.clone());
        if let Some(hit) = self.rows.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let row = self.store.as_ref().and_then(|s| s.load(rs, &uw)).unwrap_or_else(|| {
            let row: BilleyRow = billey_row(rs, u)
                .into_iter()
                .map(|(v, p)| (rs.canonical_reduced_word(&v), p))
                .collect();
            if let Some(s) = &self.store {
                s.store(rs, &uw, &row);
            }
            row
        });
        let row = Arc::new(row);
        self.rows.write().expect("cache lock").entry(key).or_insert(row).clone()
    }

    /// Memoized `σ_v(u)`.
    pub fn get(&self, rs: &RootSystem, v: &WeylElement, u: &WeylElement) -> RootPolynomial {
        self.row(rs, u)
            .get(&rs.canonical_reduced_word(v))
            .cloned()
            .unwrap_or_else(|| RootPolynomial::zero(rs.rank()))
    }

    pub fn len(&self) -> usize {
        self.rows.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dense table of `σ_v(u)` over an enumerated group, indexed `[u][v]`.
#[derive(Debug, Clone)]
pub struct BilleyTable {
    values: Vec<Vec<RootPolynomial>>,
}

impl BilleyTable {
    pub fn build(group: &WeylGroup, cache: Option<&BilleyCache>) -> BilleyTable {
        let rs = group.root_system();
        let n = rs.rank();
        let values = (0..group.len())
            .into_par_iter()
            .map(|u| {
                let mut row = vec![RootPolynomial::zero(n); group.len()];
                match cache {
                    Some(c) => {
                        for (word, p) in c.row(rs, group.element(u)).iter() {
                            let v = group.index_of_word(word.letters()).expect("word in group");
                            row[v] = p.clone();
                        }
                    }
                    None => {
                        for (v, p) in billey_row(rs, group.element(u)) {
                            row[group.index_of(&v).expect("element in group")] = p;
                        }
                    }
                }
                row
            })
            .collect();
        BilleyTable { values }
    }

    /// `σ_v(u)` by group indices.
    pub fn get(&self, v: usize, u: usize) -> &RootPolynomial {
        &self.values[u][v]
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        RootSystem::parse("A2").unwrap()
    }

    fn poly(s: &str) -> RootPolynomial {
        RootPolynomial::parse(2, s).unwrap()
    }

    #[test]
    fn r_values_of_longest_a2() {
        let rs = a2();
        let ctx = BilleyContext::with_word(&rs, &[1, 2, 1]).unwrap();
        assert_eq!(ctx.root_r(1).unwrap(), &poly("a1"));
        assert_eq!(ctx.root_r(2).unwrap(), &poly("a1 + a2"));
        assert_eq!(ctx.root_r(3).unwrap(), &poly("a2"));
        assert!(ctx.root_r(4).is_err());
        assert!(ctx.root_r(0).is_err());
        assert!(BilleyContext::with_word(&rs, &[1, 1]).is_err());
    }

    #[test]
    fn billey_examples() {
        let rs = a2();
        let e = |w: &[usize]| rs.from_word(w).unwrap();
        assert_eq!(billey_restrict(&rs, &e(&[1]), &e(&[1, 2, 1])).unwrap(), poly("a1 + a2"));
        for u in rs.enumerate(10).unwrap() {
            assert!(billey_restrict(&rs, &rs.identity(), &u).unwrap().is_one());
        }
        assert_eq!(
            billey_restrict(&rs, &e(&[2, 1]), &e(&[2, 1])).unwrap(),
            poly("a1*a2 + a2^2")
        );
        assert!(billey_restrict(&rs, &e(&[2]), &e(&[1])).unwrap().is_zero());
    }

    #[test]
    fn bruteforce_examples() {
        let rs = a2();
        let all = rs.enumerate(10).unwrap();
        for u in &all {
            for v in &all {
                assert_eq!(
                    billey_restrict(&rs, v, u).unwrap(),
                    billey_restrict_bruteforce(&rs, v, u).unwrap()
                );
            }
        }
        let w0 = rs.from_word(&[1, 2, 1]).unwrap();
        assert!(billey_restrict_bruteforce(&rs, &rs.identity(), &w0).unwrap().is_one());
        assert!(billey_restrict_bruteforce(&rs, &w0, &rs.from_word(&[1]).unwrap())
            .unwrap()
            .is_zero());
        let e8 = RootSystem::parse("E8").unwrap();
        let long = e8.from_word(&[1, 2, 3, 4, 5, 6, 7, 8, 1, 3, 4]).unwrap();
        assert!(billey_restrict_bruteforce(&e8, &e8.identity(), &long).is_err());
    }

    #[test]
    fn schubert_points() {
        let rs = a2();
        assert_eq!(
            schubert_point(&rs, &rs.from_word(&[1, 2, 1]).unwrap()),
            poly("a1^2*a2 + a1*a2^2")
        );
        assert!(schubert_point(&rs, &rs.identity()).is_one());
        assert_eq!(
            schubert_point(&rs, &rs.from_word(&[2, 1]).unwrap()),
            poly("a1*a2 + a2^2")
        );
    }

    #[test]
    fn row_matches_pointwise() {
        let rs = RootSystem::parse("B2").unwrap();
        let all = rs.enumerate(10).unwrap();
        for u in &all {
            let row: HashMap<WeylElement, RootPolynomial> = billey_row(&rs, u).into_iter().collect();
            for v in &all {
                let expect = billey_restrict(&rs, v, u).unwrap();
                assert_eq!(row.get(v).cloned().unwrap_or_else(|| RootPolynomial::zero(2)), expect);
            }
        }
    }

    #[test]
    fn cache_memoizes() {
        let rs = a2();
        let cache = BilleyCache::new();
        let w0 = rs.from_word(&[1, 2, 1]).unwrap();
        let s1 = rs.from_word(&[1]).unwrap();
        assert_eq!(cache.get(&rs, &s1, &w0), poly("a1 + a2"));
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.get(&rs, &rs.identity(), &w0), RootPolynomial::one(2));
        assert_eq!(cache.len(), 1);
    }
}
