//! Equivariant classes as localization tables over torus fixed points.
//!
//! A class on `G/B`, `G/P` or `P/B` is the tuple of its restrictions to the
//! fixed points `W`, `W^P` or `W_P`. Ring operations act pointwise and
//! Schubert classes are filled in by Billey's formula, which is the same on
//! all three spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::billey::{BilleyCache, BilleyTable};
use crate::error::{GkmError, Result};
use crate::polyring::RootPolynomial;
use crate::root_system::RootSystem;
use crate::weyl::{ParabolicSubset, WeylElement, WeylGroup, DEFAULT_GROUP_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    GB,
    GP,
    PB,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Flavor> {
        match s.to_ascii_uppercase().as_str() {
            "GB" => Ok(Flavor::GB),
            "GP" => Ok(Flavor::GP),
            "PB" => Ok(Flavor::PB),
            _ => Err(GkmError::Parse(format!("unknown flavor `{s}` (expected GB, GP or PB)"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::GB => "GB",
            Flavor::GP => "GP",
            Flavor::PB => "PB",
        })
    }
}

/// `G/B`, `G/P` or `P/B` at the level of fixed points.
///
/// `points` holds group indices in canonical order. On `G/B` the parabolic
/// subset is kept only as a label.
#[derive(Debug, Clone)]
pub struct Space {
    flavor: Flavor,
    parabolic: ParabolicSubset,
    points: Arc<[usize]>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor && self.parabolic == other.parabolic && self.points == other.points
    }
}

impl Eq for Space {}

impl Space {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Position of a group index among the fixed points.
    pub fn position(&self, k: usize) -> Option<usize> {
        self.points.binary_search(&k).ok()
    }
}

/// A localized class: one polynomial per fixed point of its space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantClass {
    space: Space,
    values: Vec<RootPolynomial>,
}

impl EquivariantClass {
    pub fn new(space: Space, values: Vec<RootPolynomial>) -> Result<Self> {
        if values.len() != space.points.len() {
            return Err(GkmError::SpaceMismatch(format!(
                "{} values for {} fixed points",
                values.len(),
                space.points.len()
            )));
        }
        Ok(EquivariantClass { space, values })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[RootPolynomial] {
        &self.values
    }

    /// Localization at the group element with index `k`.
    pub fn at(&self, k: usize) -> Option<&RootPolynomial> {
        self.space.position(k).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RootPolynomial)> {
        self.space.points.iter().copied().zip(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RootPolynomial::is_zero)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(GkmError::SpaceMismatch(format!(
                "{} (P = {{{}}}) vs {} (P = {{{}}})",
                self.space.flavor, self.space.parabolic, other.space.flavor, other.space.parabolic
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&RootPolynomial, &RootPolynomial) -> RootPolynomial) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(EquivariantClass {
            space: self.space.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product: the ring structure in the localization picture.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Multiply by a scalar polynomial `f`.
    pub fn scale(&self, f: &RootPolynomial) -> Self {
        EquivariantClass {
            space: self.space.clone(),
            values: self.values.iter().map(|v| f * v).collect(),
        }
    }
}

/// Coefficients `c_w` of a class written as `Σ c_w σ_w`; zero terms omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertExpansion {
    space: Space,
    coeffs: BTreeMap<usize, RootPolynomial>,
}

impl SchubertExpansion {
    pub fn new(space: Space, coeffs: BTreeMap<usize, RootPolynomial>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SchubertExpansion { space, coeffs }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, RootPolynomial> {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&RootPolynomial> {
        self.coeffs.get(&k)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// An enumerated Weyl group together with its table of localizations.
///
/// Every class-level operation goes through this context.
#[derive(Debug, Clone)]
pub struct Gkm {
    group: Arc<WeylGroup>,
    table: Arc<BilleyTable>,
}

impl Gkm {
    pub fn new(rs: RootSystem) -> Result<Gkm> {
        Self::with_options(rs, DEFAULT_GROUP_CAP, None)
    }

    pub fn parse(spec: &str) -> Result<Gkm> {
        Self::new(RootSystem::parse(spec)?)
    }

    pub fn with_options(rs: RootSystem, cap: u64, cache: Option<&BilleyCache>) -> Result<Gkm> {
        let group = WeylGroup::new(rs, cap)?;
        let table = BilleyTable::build(&group, cache);
        Ok(Gkm {
            group: Arc::new(group),
            table: Arc::new(table),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn nvars(&self) -> usize {
        self.root_system().rank()
    }

    /// `σ_v(u)` by group indices.
    pub fn sigma(&self, v: usize, u: usize) -> &RootPolynomial {
        self.table.get(v, u)
    }

    /// `σ_w(w)`.
    pub fn schubert_point(&self, w: usize) -> &RootPolynomial {
        self.table.get(w, w)
    }

    pub fn index(&self, w: &WeylElement) -> Result<usize> {
        self.group.index_of(w).ok_or_else(|| GkmError::RankMismatch {
            expected: self.nvars(),
            found: w.rank(),
        })
    }

    pub fn word(&self, k: usize) -> String {
        self.group.word(k).to_string()
    }

    pub fn parse_element(&self, s: &str) -> Result<usize> {
        self.group.parse_index(s)
    }

    pub fn space(&self, flavor: Flavor, parabolic: &ParabolicSubset) -> Space {
        let (parabolic, points): (ParabolicSubset, Vec<usize>) = match flavor {
            Flavor::GB => (ParabolicSubset::empty(), (0..self.group.len()).collect()),
            Flavor::GP => (parabolic.clone(), self.group.minimal_coset_reps(parabolic)),
            Flavor::PB => (parabolic.clone(), self.group.parabolic_subgroup(parabolic)),
        };
        Space {
            flavor,
            parabolic,
            points: points.into(),
        }
    }

    pub fn gb(&self) -> Space {
        self.space(Flavor::GB, &ParabolicSubset::empty())
    }

    pub fn constant(&self, space: &Space, c: RootPolynomial) -> EquivariantClass {
        EquivariantClass {
            space: space.clone(),
            values: vec![c; space.points.len()],
        }
    }

    pub fn zero(&self, space: &Space) -> EquivariantClass {
        self.constant(space, RootPolynomial::zero(self.nvars()))
    }

    /// `σ_w` on `space`; `w` must index a fixed point of the space.
    pub fn schubert_class(&self, space: &Space, w: usize) -> Result<EquivariantClass> {
        if space.position(w).is_none() {
            return Err(GkmError::NotInIndexSet(format!(
                "{} in {} (P = {{{}}})",
                self.word(w),
                space.flavor,
                space.parabolic
            )));
        }
        Ok(EquivariantClass {
            space: space.clone(),
            values: space.points.iter().map(|&u| self.sigma(w, u).clone()).collect(),
        })
    }

    pub fn schubert_class_of(&self, space: &Space, w: &WeylElement) -> Result<EquivariantClass> {
        self.schubert_class(space, self.index(w)?)
    }

    /// Triangular solve over the fixed points in canonical order:
    /// `c_u = (p(u) - Σ_{v<u} c_v σ_v(u)) / σ_u(u)`, every division exact.
    pub fn expand_in_schubert(&self, p: &EquivariantClass) -> Result<SchubertExpansion> {
        let space = &p.space;
        let mut coeffs: Vec<(usize, RootPolynomial)> = Vec::new();
        for (&u, value) in space.points.iter().zip(&p.values) {
            let mut rest = value.clone();
            for (v, c) in &coeffs {
                let s = self.sigma(*v, u);
                if !s.is_zero() {
                    rest = &rest - &(c * s);
                }
            }
            if rest.is_zero() {
                continue;
            }
            let c = rest
                .exact_div(self.schubert_point(u))
                .map_err(|_| GkmError::NotInSpan(format!("inexact coefficient at fixed point {}", self.word(u))))?;
            coeffs.push((u, c));
        }
        Ok(SchubertExpansion::new(space.clone(), coeffs.into_iter().collect()))
    }

    /// `Σ c_w σ_w` as a localization table.
    pub fn reassemble(&self, exp: &SchubertExpansion) -> EquivariantClass {
        let space = &exp.space;
        let values = space
            .points
            .iter()
            .map(|&u| {
                exp.coeffs
                    .iter()
                    .fold(RootPolynomial::zero(self.nvars()), |acc, (&w, c)| {
                        let s = self.sigma(w, u);
                        if s.is_zero() {
                            acc
                        } else {
                            &acc + &(c * s)
                        }
                    })
            })
            .collect();
        EquivariantClass {
            space: space.clone(),
            values,
        }
    }

    /// Push a `G/P` or `P/B` class into `G/B` by sending each `σ_w` to the
    /// Schubert class of `G/B` with the same index.
    pub fn include_class(&self, cls: &EquivariantClass) -> Result<EquivariantClass> {
        if cls.space.flavor == Flavor::GB {
            return Ok(cls.clone());
        }
        let exp = self.expand_in_schubert(cls)?;
        Ok(self.reassemble(&SchubertExpansion::new(self.gb(), exp.coeffs)))
    }

    /// Constant terms of the coefficients: the image in ordinary cohomology.
    pub fn project_ordinary(&self, exp: &SchubertExpansion) -> BTreeMap<usize, BigRational> {
        exp.coeffs
            .iter()
            .map(|(&w, c)| (w, c.constant_term()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// `word: coefficient` lines in canonical element order.
    pub fn format_expansion(&self, exp: &SchubertExpansion) -> Vec<String> {
        exp.coeffs
            .iter()
            .map(|(&w, c)| format!("{}: {}", self.word(w), c))
            .collect()
    }
}
