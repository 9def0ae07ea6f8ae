//! Crystallographic root systems in simple-root coordinates.
//!
//! Simple roots are numbered following Bourbaki. The Cartan matrix is stored
//! with the convention `s_i(α_j) = α_j - a_ij α_i`, i.e.
//! `a_ij = 2(α_i, α_j) / (α_i, α_i)`. Product systems use global 1-based
//! generator indices, concatenated across factors in spec order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{GkmError, Result};

/// Family letter of an irreducible crystallographic root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn admits(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// One irreducible factor `(family, rank)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl Factor {
    pub fn new(family: Family, rank: usize) -> Result<Factor> {
        if !family.admits(rank) {
            return Err(GkmError::Spec(format!(
                "{}{} is not an admissible root system",
                family.letter(),
                rank
            )));
        }
        Ok(Factor { family, rank })
    }

    /// Order of the Weyl group of this factor.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Symmetric Gram matrix of the simple roots, scaled to integers.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let bond = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, b: i64| {
            g[i][j] = b;
            g[j][i] = b;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    bond(&mut g, i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    g[i][i] = 4;
                    bond(&mut g, i, i + 1, -2);
                }
                g[n - 1][n - 1] = 2;
            }
            Family::C => {
                for i in 0..n - 1 {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    bond(&mut g, i, i + 1, -1);
                }
                g[n - 1][n - 1] = 4;
                bond(&mut g, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    bond(&mut g, i, i + 1, -1);
                }
                bond(&mut g, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                bond(&mut g, 0, 2, -1);
                bond(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    bond(&mut g, i, i + 1, -1);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                bond(&mut g, 0, 1, -2);
                bond(&mut g, 1, 2, -2);
                bond(&mut g, 2, 3, -1);
            }
            Family::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                bond(&mut g, 0, 1, -3);
            }
        }
        g
    }

    fn cartan(&self) -> Vec<Vec<i32>> {
        let g = self.gram();
        let n = self.rank;
        (0..n)
            .map(|i| (0..n).map(|j| (2 * g[i][j] / g[i][i]) as i32).collect())
            .collect()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Root-system specification, e.g. `A3`, `B2`, `A2xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemSpec {
    factors: Vec<Factor>,
}

impl RootSystemSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(GkmError::Spec("empty root system spec".into()));
        }
        Ok(RootSystemSpec { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    /// 0-based generator ranges of each factor.
    pub fn factor_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|f| {
                let r = start..start + f.rank;
                start += f.rank;
                r
            })
            .collect()
    }

    pub fn weyl_order(&self) -> u64 {
        self.factors.iter().map(Factor::weyl_order).product()
    }
}

impl FromStr for RootSystemSpec {
    type Err = GkmError;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(GkmError::Spec("empty root system spec".into()));
        }
        let mut factors = Vec::new();
        for token in s.split(['x', 'X']) {
            let mut chars = token.chars();
            let letter = chars
                .next()
                .ok_or_else(|| GkmError::Spec(format!("empty factor in `{s}`")))?;
            let family = Family::from_letter(letter)
                .ok_or_else(|| GkmError::Spec(format!("unknown family `{letter}` in `{s}`")))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(GkmError::Spec(format!("bad rank `{digits}` in factor `{token}`")));
            }
            let rank: usize = digits
                .parse()
                .map_err(|_| GkmError::Spec(format!("bad rank `{digits}` in factor `{token}`")))?;
            factors.push(Factor::new(family, rank)?);
        }
        RootSystemSpec::new(factors)
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// A vector in the root lattice, written in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i32>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> RootVector {
        let mut c = vec![0; rank];
        c[i] = 1;
        RootVector(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c != 0)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Cartan data, positive roots and the simple-reflection action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    spec: RootSystemSpec,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<RootVector>,
    weyl_order: u64,
}

impl RootSystem {
    pub fn build(spec: &RootSystemSpec) -> RootSystem {
        let n = spec.rank();
        let mut cartan = vec![vec![0i32; n]; n];
        for (factor, range) in spec.factors().iter().zip(spec.factor_ranges()) {
            let block = factor.cartan();
            for (a, i) in range.clone().enumerate() {
                for (b, j) in range.clone().enumerate() {
                    cartan[i][j] = block[a][b];
                }
            }
        }
        let mut rs = RootSystem {
            spec: spec.clone(),
            cartan,
            positive_roots: Vec::new(),
            weyl_order: spec.weyl_order(),
        };
        rs.positive_roots = rs.close_positive_roots();
        rs
    }

    pub fn parse(spec: &str) -> Result<RootSystem> {
        Ok(RootSystem::build(&spec.parse()?))
    }

    fn close_positive_roots(&self) -> Vec<RootVector> {
        let n = self.rank();
        let mut seen: BTreeSet<RootVector> = BTreeSet::new();
        let mut queue: VecDeque<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
        while let Some(beta) = queue.pop_front() {
            if !seen.insert(beta.clone()) {
                continue;
            }
            for i in 0..n {
                let image = self.reflect0(i, &beta);
                if image.is_positive() && !seen.contains(&image) {
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        roots
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Result<RootVector> {
        self.check_generator(i)?;
        Ok(RootVector::simple(self.rank(), i - 1))
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub(crate) fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(GkmError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// `s_i` with a 0-based index; no range check.
    pub(crate) fn reflect0(&self, i: usize, v: &RootVector) -> RootVector {
        let pairing: i32 = self.cartan[i].iter().zip(&v.0).map(|(a, c)| a * c).sum();
        let mut out = v.0.clone();
        out[i] -= pairing;
        RootVector(out)
    }

    /// Simple reflection `s_i` (1-based `i`) applied to `v`.
    pub fn simple_reflect(&self, i: usize, v: &RootVector) -> Result<RootVector> {
        self.check_generator(i)?;
        self.check_vector(v)?;
        Ok(self.reflect0(i - 1, v))
    }

    /// `act([b_1..b_k], v) = s_{b_1}(s_{b_2}(... s_{b_k}(v)))`.
    pub fn act(&self, word: &[usize], v: &RootVector) -> Result<RootVector> {
        for &i in word {
            self.check_generator(i)?;
        }
        self.check_vector(v)?;
        Ok(word.iter().rev().fold(v.clone(), |acc, &i| self.reflect0(i - 1, &acc)))
    }

    fn check_vector(&self, v: &RootVector) -> Result<()> {
        if v.0.len() != self.rank() {
            return Err(GkmError::RankMismatch {
                expected: self.rank(),
                found: v.0.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(c: &[i32]) -> RootVector {
        RootVector(c.to_vec())
    }

    #[test]
    fn a2_positive_roots() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.rank(), 2);
        let mut got = rs.positive_roots().to_vec();
        got.sort();
        assert_eq!(got, vec![rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]);
    }

    #[test]
    fn a1_and_product() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.positive_roots(), &[rv(&[1])]);
        let p = RootSystem::parse("A2xA1").unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.positive_roots().len(), 4);
        assert_eq!(p.cartan()[0][2], 0);
        assert_eq!(p.cartan()[2][1], 0);
        assert_eq!(p.cartan()[2][2], 2);
    }

    #[test]
    fn positive_root_counts() {
        for (s, count) in [
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(RootSystem::parse(s).unwrap().positive_roots().len(), count, "{s}");
        }
    }

    #[test]
    fn g2_highest_root() {
        let rs = RootSystem::parse("G2").unwrap();
        assert!(rs.positive_roots().contains(&rv(&[3, 2])));
    }

    #[test]
    fn simple_reflection_examples() {
        let rs = RootSystem::parse("A2").unwrap();
        let a1 = rs.simple_root(1).unwrap();
        let a2 = rs.simple_root(2).unwrap();
        assert_eq!(rs.simple_reflect(1, &a1).unwrap(), rv(&[-1, 0]));
        assert_eq!(rs.simple_reflect(2, &a1).unwrap(), rv(&[1, 1]));
        assert_eq!(rs.act(&[1, 2], &a1).unwrap(), a2);
        assert_eq!(rs.act(&[2, 1], &a2).unwrap(), a1);
        assert_eq!(rs.act(&[], &a1).unwrap(), a1);
    }

    #[test]
    fn cartan_invariants() {
        for s in ["A4", "B3", "C4", "D5", "E6", "F4", "G2", "B2xG2"] {
            let rs = RootSystem::parse(s).unwrap();
            let c = rs.cartan();
            for i in 0..rs.rank() {
                assert_eq!(c[i][i], 2);
                for j in 0..rs.rank() {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!("B1".parse::<RootSystemSpec>(), Err(GkmError::Spec(_))));
        assert!(matches!("E5".parse::<RootSystemSpec>(), Err(GkmError::Spec(_))));
        assert!(matches!("H3".parse::<RootSystemSpec>(), Err(GkmError::Spec(_))));
        assert!("A2x".parse::<RootSystemSpec>().is_err());
        assert!("A 2".parse::<RootSystemSpec>().is_err());
        assert!("".parse::<RootSystemSpec>().is_err());
        let rs = RootSystem::parse("A2").unwrap();
        let a1 = rs.simple_root(1).unwrap();
        assert!(matches!(
            rs.simple_reflect(3, &a1),
            Err(GkmError::IndexOutOfRange { index: 3, rank: 2 })
        ));
        assert!(rs.simple_reflect(0, &a1).is_err());
    }

    #[test]
    fn spec_round_trip_is_case_insensitive() {
        let s: RootSystemSpec = "a2xb2".parse().unwrap();
        assert_eq!(s.to_string(), "A2xB2");
        assert_eq!(s.weyl_order(), 48);
    }
}
