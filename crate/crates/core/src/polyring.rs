//! Exact polynomials in the simple roots `α_1..α_n` over ℚ.
//!
//! Monomials are ordered graded-lexicographically with `α_1 > α_2 > ⋯`; that
//! order drives printing, division and the canonical string form
//! (`a1^2*a2 + 2*a1*a2^2 - 1/2*a2`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkmError, Result};
use crate::root_system::RootVector;
use crate::weyl::WeylElement;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Monomial {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `α_1..α_n` with rational coefficients. No zero coefficient
/// is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RootPolynomial {
    pub fn zero(nvars: usize) -> Self {
        RootPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `α_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), BigRational::one());
        p
    }

    /// Linear form `Σ c_i α_i` of a root-lattice vector.
    pub fn from_root(v: &RootVector) -> Self {
        let n = v.0.len();
        let mut p = Self::zero(n);
        for (i, &c) in v.0.iter().enumerate() {
            if c != 0 {
                p.terms
                    .insert(Monomial::var(n, i), BigRational::from_integer(BigInt::from(c)));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial in graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` if nonzero and every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Coefficient of the zero exponent vector: reduction modulo `⟨α_1..α_n⟩`.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Every coefficient is a nonnegative integer.
    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(GkmError::RankMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(self * other)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        RootPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitute `α_i ↦ w(α_i)`; an algebra automorphism of the ring.
    pub fn weyl_act(&self, w: &WeylElement) -> Result<Self> {
        if w.rank() != self.nvars {
            return Err(GkmError::RankMismatch {
                expected: self.nvars,
                found: w.rank(),
            });
        }
        if w.is_identity() || self.is_constant() {
            return Ok(self.clone());
        }
        let n = self.nvars;
        let images: Vec<RootPolynomial> = (0..n).map(|i| Self::from_root(&w.image_of_simple(i))).collect();
        let mut powers: Vec<Vec<RootPolynomial>> = images.iter().map(|l| vec![Self::one(n), l.clone()]).collect();
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `r` with `divisor · r = self`, by leading-term reduction in graded-lex
    /// order. A nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_arity(divisor)?;
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| GkmError::Inexact("division by zero".into()))?;
        if divisor.terms.len() == 1 {
            // monomial divisor
            let mut out = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                let q = m
                    .div(lm)
                    .ok_or_else(|| GkmError::Inexact(format!("({self}) / ({divisor})")))?;
                out.terms.insert(q, c / lc);
            }
            return Ok(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m
                .div(lm)
                .ok_or_else(|| GkmError::Inexact(format!("({self}) / ({divisor})")))?;
            let qc = c / lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Evaluate at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &RootPolynomial {
    type Output = RootPolynomial;

    fn add(self, rhs: &RootPolynomial) -> RootPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RootPolynomial {
    type Output = RootPolynomial;

    fn sub(self, rhs: &RootPolynomial) -> RootPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &RootPolynomial {
    type Output = RootPolynomial;

    fn neg(self) -> RootPolynomial {
        RootPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &RootPolynomial {
    type Output = RootPolynomial;

    fn mul(self, rhs: &RootPolynomial) -> RootPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = RootPolynomial::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl serde::Serialize for RootPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for RootPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = format_monomial(m);
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&a))?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{}", format_rational(&a), mono)?,
            }
        }
        Ok(())
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("a{}", i + 1)),
            _ => parts.push(format!("a{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

impl RootPolynomial {
    /// Parse the canonical string form (whitespace-insensitive, any term
    /// order, repeated monomials are combined).
    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        let mut parser = PolyParser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nvars,
            src: s,
        };
        parser.expr()
    }
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    src: &'a str,
}

impl PolyParser<'_> {
    fn err(&self, what: &str) -> GkmError {
        GkmError::Parse(format!("{what} at offset {} in polynomial `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RootPolynomial> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut out = RootPolynomial::zero(self.nvars);
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let (m, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one(self.nvars);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut q = BigRational::from_integer(num);
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some('a') => {
                    self.pos += 1;
                    let idx = self
                        .integer()?
                        .to_usize()
                        .filter(|&i| i >= 1 && i <= self.nvars)
                        .ok_or_else(|| self.err("variable index out of range"))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        e = self.integer()?.to_u32().ok_or_else(|| self.err("bad exponent"))?;
                    }
                    mono.0[idx - 1] += e;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer"))
    }
}

/// `±∏ β^{m_β}` over positive roots `β`, kept factored.
///
/// Products of many Schubert points have degree in the hundreds; comparing
/// them as root multisets avoids expanding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootProduct {
    nvars: usize,
    negative: bool,
    factors: BTreeMap<RootVector, u32>,
}

impl RootProduct {
    pub fn one(nvars: usize) -> Self {
        RootProduct {
            nvars,
            negative: false,
            factors: BTreeMap::new(),
        }
    }

    /// Negative roots are stored as their negatives with a sign flip.
    pub fn from_roots<'a>(nvars: usize, roots: impl IntoIterator<Item = &'a RootVector>) -> Self {
        let mut out = Self::one(nvars);
        for r in roots {
            out.push(r, 1);
        }
        out
    }

    fn push(&mut self, r: &RootVector, k: u32) {
        debug_assert!(r.is_positive() || r.is_negative(), "zero vector is not a root");
        let key = if r.is_negative() {
            self.negative ^= k % 2 == 1;
            r.neg()
        } else {
            r.clone()
        };
        *self.factors.entry(key).or_insert(0) += k;
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn factors(&self) -> impl Iterator<Item = (&RootVector, u32)> {
        self.factors.iter().map(|(r, &k)| (r, k))
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.negative ^= other.negative;
        for (r, &k) in &other.factors {
            *out.factors.entry(r.clone()).or_insert(0) += k;
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        RootProduct {
            nvars: self.nvars,
            negative: self.negative && k % 2 == 1,
            factors: self.factors.iter().map(|(r, &m)| (r.clone(), m * k)).collect(),
        }
    }

    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let mut out = Self::one(self.nvars);
        out.negative = self.negative;
        for (r, &k) in &self.factors {
            out.push(&w.apply(r), k);
        }
        out
    }

    pub fn expand(&self) -> RootPolynomial {
        let mut out = RootPolynomial::one(self.nvars);
        for (r, &k) in &self.factors {
            out = &out * &RootPolynomial::from_root(r).pow(k);
        }
        if self.negative {
            -&out
        } else {
            out
        }
    }
}

impl fmt::Display for RootProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        // simple roots first, then by height
        let mut factors: Vec<_> = self.factors.iter().collect();
        factors.sort_by_key(|(r, _)| (r.height(), std::cmp::Reverse(r.coords().to_vec())));
        for (k, (r, &m)) in factors.into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            let p = RootPolynomial::from_root(r);
            if p.num_terms() == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "({p})")?;
            }
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for RootProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<RootPolynomial>,
}

/// Largest dimension handled by [`PolyMatrix::det`] by default.
pub const DEFAULT_DET_CAP: usize = 24;

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![RootPolynomial::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, RootPolynomial::one(nvars));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> RootPolynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let p = f(r, c);
                assert_eq!(p.nvars, nvars, "entry arity");
                entries.push(p);
            }
        }
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &RootPolynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: RootPolynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[RootPolynomial] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&RootPolynomial) -> RootPolynomial) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.nvars, |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(GkmError::Spec(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.nvars, |r, c| {
            let mut acc = RootPolynomial::zero(self.nvars);
            for k in 0..self.cols {
                let (a, b) = (self.get(r, k), other.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    fn check_square(&self, cap: usize) -> Result<()> {
        if self.rows != self.cols {
            return Err(GkmError::Spec(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows > cap {
            return Err(GkmError::CapExceeded {
                what: "determinant dimension",
                size: self.rows as u64,
                cap: cap as u64,
            });
        }
        Ok(())
    }

    /// Exact determinant.
    ///
    /// The zero pattern is first split into irreducible diagonal blocks
    /// (maximum transversal plus strongly connected components); each block
    /// is then expanded by cofactors below dimension 5 and by fraction-free
    /// elimination otherwise.
    pub fn det(&self, cap: usize) -> Result<RootPolynomial> {
        self.check_square(cap)?;
        let n = self.rows;
        if n == 0 {
            return Ok(RootPolynomial::one(self.nvars));
        }
        let nonzero: Vec<Vec<usize>> = (0..n)
            .map(|r| (0..n).filter(|&c| !self.get(r, c).is_zero()).collect())
            .collect();
        let Some(matching) = perfect_matching(&nonzero, n) else {
            return Ok(RootPolynomial::zero(self.nvars));
        };
        let mut det = RootPolynomial::one(self.nvars);
        if permutation_is_odd(&matching) {
            det = -&det;
        }
        // edge r -> r' when row r meets the column matched to r'
        let mut col_owner = vec![0; n];
        for (r, &c) in matching.iter().enumerate() {
            col_owner[c] = r;
        }
        let adj: Vec<Vec<usize>> = nonzero
            .iter()
            .map(|cols| cols.iter().map(|&c| col_owner[c]).collect())
            .collect();
        for block in strongly_connected_components(&adj) {
            let cols: Vec<usize> = block.iter().map(|&r| matching[r]).collect();
            let sub = self.submatrix(&block, &cols);
            let d = if sub.rows < 5 {
                sub.det_cofactor_unchecked()
            } else {
                sub.det_bareiss_unchecked()
            };
            if d.is_zero() {
                return Ok(d);
            }
            det = &det * &d;
        }
        Ok(det)
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det_bareiss(&self, cap: usize) -> Result<RootPolynomial> {
        self.check_square(cap)?;
        Ok(self.det_bareiss_unchecked())
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det_cofactor(&self, cap: usize) -> Result<RootPolynomial> {
        self.check_square(cap)?;
        Ok(self.det_cofactor_unchecked())
    }

    fn det_bareiss_unchecked(&self) -> RootPolynomial {
        let n = self.rows;
        let nv = self.nvars;
        if n == 0 {
            return RootPolynomial::one(nv);
        }
        let mut m: Vec<Vec<RootPolynomial>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = RootPolynomial::one(nv);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return RootPolynomial::zero(nv),
                }
            }
            let pivot = m[k][k].clone();
            for i in k + 1..n {
                let lead = m[i][k].clone();
                for j in k + 1..n {
                    let mut num = &pivot * &m[i][j];
                    if !lead.is_zero() && !m[k][j].is_zero() {
                        num = &num - &(&lead * &m[k][j]);
                    }
                    m[i][j] = num.exact_div(&prev).expect("Bareiss quotients are exact");
                }
                m[i][k] = RootPolynomial::zero(nv);
            }
            prev = pivot;
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    fn det_cofactor_unchecked(&self) -> RootPolynomial {
        let idx: Vec<usize> = (0..self.cols).collect();
        self.cofactor_rec(0, &idx)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> RootPolynomial {
        if cols.is_empty() {
            return RootPolynomial::one(self.nvars);
        }
        let mut acc = RootPolynomial::zero(self.nvars);
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.cofactor_rec(row + 1, &rest);
            if minor.is_zero() {
                continue;
            }
            let t = a * &minor;
            acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
}

/// Row-to-column perfect matching on the nonzero pattern, if one exists.
fn perfect_matching(adj: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    fn augment(r: usize, adj: &[Vec<usize>], seen: &mut [bool], col_match: &mut [Option<usize>]) -> bool {
        for &c in &adj[r] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if col_match[c].is_none_or(|r2| augment(r2, adj, seen, col_match)) {
                col_match[c] = Some(r);
                return true;
            }
        }
        false
    }
    let mut col_match: Vec<Option<usize>> = vec![None; n];
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, adj, &mut seen, &mut col_match) {
            return None;
        }
    }
    let mut row_match = vec![0; n];
    for (c, r) in col_match.iter().enumerate() {
        row_match[r.expect("perfect")] = c;
    }
    Some(row_match)
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Tarjan's algorithm; components come out in reverse topological order.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for k in 0..s.adj[v].len() {
            let w = s.adj[v][k];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            while let Some(w) = s.stack.pop() {
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RootPolynomial {
        RootPolynomial::parse(2, s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("a1 + a2") * &p("a2"), p("a1*a2 + a2^2"));
        assert_eq!(&p("a1 + a2") + &RootPolynomial::zero(2), p("a1 + a2"));
        let s = &p("a1 + a2");
        assert_eq!(&(&p("a2") * s) * s, &p("a2") * &s.pow(2));
        assert_eq!((&(&p("a2") * s) * s).to_string(), "a1^2*a2 + 2*a1*a2^2 + a2^3");
        assert!(p("a1").try_add(&RootPolynomial::var(3, 0)).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(RootPolynomial::zero(2).to_string(), "0");
        assert_eq!(RootPolynomial::one(2).to_string(), "1");
        assert_eq!(
            p("-1/2*a2 + 2*a1*a2^2 + a1^2*a2").to_string(),
            "a1^2*a2 + 2*a1*a2^2 - 1/2*a2"
        );
        assert_eq!(p("-a1").to_string(), "-a1");
        assert_eq!(p("3 - a2 - a1").to_string(), "-a1 - a2 + 3");
    }

    #[test]
    fn parse_errors() {
        assert!(RootPolynomial::parse(2, "a3").is_err());
        assert!(RootPolynomial::parse(2, "").is_err());
        assert!(RootPolynomial::parse(2, "a1 a2").is_err());
        assert!(RootPolynomial::parse(2, "1/0").is_err());
        assert!(RootPolynomial::parse(2, "a1 +").is_err());
    }

    #[test]
    fn exact_division() {
        let num = &p("a2") * &p("a1 + a2").pow(2);
        assert_eq!(num.exact_div(&p("a1 + a2")).unwrap(), &p("a2") * &p("a1 + a2"));
        assert_eq!(num.exact_div(&RootPolynomial::one(2)).unwrap(), num);
        assert!(matches!(
            p("a1*a2 + a2^2").exact_div(&p("a1")),
            Err(GkmError::Inexact(_))
        ));
        assert!(p("a1").exact_div(&RootPolynomial::zero(2)).is_err());
        assert_eq!(p("2*a1").exact_div(&p("4")).unwrap(), p("1/2*a1"));
    }

    #[test]
    fn constant_terms() {
        assert_eq!(p("3 + a1").constant_term(), BigRational::from_integer(3.into()));
        assert!(p("a2*a1 + a2^2").constant_term().is_zero());
        assert!(RootPolynomial::zero(2).constant_term().is_zero());
    }

    #[test]
    fn small_determinants() {
        assert!(PolyMatrix::identity(3, 2).det(24).unwrap().is_one());
        let mut m = PolyMatrix::zeros(2, 2, 2);
        m.set(0, 0, p("a1"));
        m.set(1, 1, p("a2"));
        assert_eq!(m.det(24).unwrap(), p("a1*a2"));
        assert_eq!(m.det_bareiss(24).unwrap(), p("a1*a2"));
        let mut sing = PolyMatrix::zeros(2, 2, 2);
        sing.set(0, 0, p("a1"));
        sing.set(0, 1, p("a1"));
        sing.set(1, 0, p("a2"));
        sing.set(1, 1, p("a2"));
        assert!(sing.det(24).unwrap().is_zero());
        assert!(sing.det_bareiss(24).unwrap().is_zero());
        assert!(PolyMatrix::zeros(2, 3, 2).det(24).is_err());
        assert!(matches!(
            PolyMatrix::identity(30, 2).det(24),
            Err(GkmError::CapExceeded { .. })
        ));
    }

    #[test]
    fn permuted_matrix_sign() {
        // anti-diagonal 3x3: det = -a1*a2*(a1+a2)
        let mut m = PolyMatrix::zeros(3, 3, 2);
        m.set(0, 2, p("a1"));
        m.set(1, 1, p("a2"));
        m.set(2, 0, p("a1 + a2"));
        let expect = -&p("a1^2*a2 + a1*a2^2");
        assert_eq!(m.det(24).unwrap(), expect);
        assert_eq!(m.det_cofactor(24).unwrap(), expect);
        assert_eq!(m.det_bareiss(24).unwrap(), expect);
    }
}
