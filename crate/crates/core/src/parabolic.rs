//! Parabolic bases `B_P = {σ_v σ_w : v ∈ W^P, w ∈ W_P}` of `H_T^*(G/B)`.
//!
//! Covers the localization matrix `A` and its block factorization, the
//! determinant certificate, change of basis into `B_P`, and the comparison of
//! bases for different parabolics.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::billey::BilleyContext;
use crate::cohomology::{EquivariantClass, Flavor, Gkm, SchubertExpansion};
use crate::error::{GkmError, Result};
use crate::polyring::{PolyMatrix, RootPolynomial, RootProduct};
use crate::root_system::RootVector;
use crate::weyl::ParabolicSubset;

/// The family `σ_v σ_w` ordered by `v` then `w`, both canonically.
#[derive(Debug, Clone)]
pub struct ParabolicBasis {
    parabolic: ParabolicSubset,
    reps: Vec<usize>,
    subgroup: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    classes: Vec<EquivariantClass>,
}

impl ParabolicBasis {
    pub fn new(gkm: &Gkm, p: &ParabolicSubset) -> ParabolicBasis {
        let group = gkm.group();
        let reps = group.minimal_coset_reps(p);
        let subgroup = group.parabolic_subgroup(p);
        let gb = gkm.gb();
        let schubert = |k: usize| gkm.schubert_class(&gb, k).expect("GB contains every element");
        let tables: BTreeMap<usize, EquivariantClass> =
            reps.iter().chain(&subgroup).map(|&k| (k, schubert(k))).collect();
        let pairs: Vec<(usize, usize)> = reps
            .iter()
            .flat_map(|&v| subgroup.iter().map(move |&w| (v, w)))
            .collect();
        let classes = pairs
            .iter()
            .map(|(v, w)| tables[v].mul(&tables[w]).expect("same space"))
            .collect();
        ParabolicBasis {
            parabolic: p.clone(),
            reps,
            subgroup,
            pairs,
            classes,
        }
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.parabolic
    }

    /// `W^P` in canonical order.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// `W_P` in canonical order.
    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn classes(&self) -> &[EquivariantClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, v: usize, w: usize) -> Option<usize> {
        let i = self.reps.binary_search(&v).ok()?;
        let j = self.subgroup.binary_search(&w).ok()?;
        Some(i * self.subgroup.len() + j)
    }

    pub fn class(&self, v: usize, w: usize) -> Option<&EquivariantClass> {
        self.position(v, w).map(|k| &self.classes[k])
    }
}

/// `A = (σ_v(v′w′) σ_w(v′w′))` with rows `(v, w)` and columns `(v′, w′)`.
pub fn matrix_a(gkm: &Gkm, basis: &ParabolicBasis) -> PolyMatrix {
    let group = gkm.group();
    let points: Vec<usize> = basis.pairs.iter().map(|&(v, w)| group.mul(v, w)).collect();
    let n = basis.len();
    PolyMatrix::from_fn(n, n, gkm.nvars(), |r, c| {
        basis.classes[r].at(points[c]).expect("GB class").clone()
    })
}

fn check_rep(gkm: &Gkm, p: &ParabolicSubset, v: usize) -> Result<()> {
    if gkm.group().minimal_coset_reps(p).binary_search(&v).is_err() {
        return Err(GkmError::NotInIndexSet(format!(
            "{} is not in W^P for P = {{{p}}}",
            gkm.word(v)
        )));
    }
    Ok(())
}

/// `M_{wu} = σ_{wu⁻¹}(v)` when `u` is a suffix of `w`, else 0; rows and
/// columns run over `W_P`.
pub fn matrix_m(gkm: &Gkm, p: &ParabolicSubset, v: usize) -> Result<PolyMatrix> {
    check_rep(gkm, p, v)?;
    let group = gkm.group();
    let sub = group.parabolic_subgroup(p);
    let n = sub.len();
    Ok(PolyMatrix::from_fn(n, n, gkm.nvars(), |r, c| {
        let (w, u) = (sub[r], sub[c]);
        let x = group.mul(w, group.inverse(u));
        if group.length(x) + group.length(u) == group.length(w) {
            gkm.sigma(x, v).clone()
        } else {
            RootPolynomial::zero(gkm.nvars())
        }
    }))
}

/// `N_{u,w′} = σ_u(w′)` over `W_P`.
pub fn matrix_n(gkm: &Gkm, p: &ParabolicSubset) -> PolyMatrix {
    let sub = gkm.group().parabolic_subgroup(p);
    let n = sub.len();
    PolyMatrix::from_fn(n, n, gkm.nvars(), |r, c| gkm.sigma(sub[r], sub[c]).clone())
}

/// `N` with `v` applied to every entry.
pub fn matrix_vn(gkm: &Gkm, p: &ParabolicSubset, v: usize) -> Result<PolyMatrix> {
    check_rep(gkm, p, v)?;
    let w = gkm.group().element(v);
    Ok(matrix_n(gkm, p).map(|e| e.weyl_act(w).expect("same rank")))
}

/// `(σ_w(vw′))` over `w, w′ ∈ W_P`.
pub fn matrix_restricted(gkm: &Gkm, p: &ParabolicSubset, v: usize) -> PolyMatrix {
    let group = gkm.group();
    let sub = group.parabolic_subgroup(p);
    let n = sub.len();
    PolyMatrix::from_fn(n, n, gkm.nvars(), |r, c| {
        gkm.sigma(sub[r], group.mul(v, sub[c])).clone()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockStatus {
    #[serde(rename = "zero-block")]
    ZeroBlock,
    #[serde(rename = "diagonal")]
    Diagonal,
    #[serde(rename = "upper")]
    Upper,
}

/// Status of the `(v, v′)` block of `A`, `v` at or before `v′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub v: String,
    pub v_prime: String,
    pub status: BlockStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub ok: bool,
    pub blocks: Vec<BlockEntry>,
    pub lower_zero_blocks: usize,
    pub witness: Option<String>,
}

/// Checks `σ_v(v′w′) = σ_v(v′)` and that block `(v, v′)` vanishes unless
/// `v ≤ v′`.
pub fn verify_block_structure(gkm: &Gkm, basis: &ParabolicBasis) -> BlockReport {
    let group = gkm.group();
    let a = matrix_a(gkm, basis);
    let m = basis.subgroup.len();
    let mut witness = None;
    let mut blocks = Vec::new();
    let mut lower_zero_blocks = 0;
    'outer: for (bi, &v) in basis.reps.iter().enumerate() {
        for (bj, &vp) in basis.reps.iter().enumerate() {
            for &wp in &basis.subgroup {
                if gkm.sigma(v, group.mul(vp, wp)) != gkm.sigma(v, vp) {
                    witness = Some(format!(
                        "sigma_{}({}) != sigma_{}({})",
                        gkm.word(v),
                        gkm.word(group.mul(vp, wp)),
                        gkm.word(v),
                        gkm.word(vp)
                    ));
                    break 'outer;
                }
            }
            let zero = (0..m).all(|r| (0..m).all(|c| a.get(bi * m + r, bj * m + c).is_zero()));
            if !group.bruhat_leq(v, vp) && !zero {
                witness = Some(format!(
                    "block ({}, {}) is nonzero but v is not below v'",
                    gkm.word(v),
                    gkm.word(vp)
                ));
                break 'outer;
            }
            if bi > bj {
                lower_zero_blocks += 1;
                continue;
            }
            let status = if bi == bj {
                BlockStatus::Diagonal
            } else if zero {
                BlockStatus::ZeroBlock
            } else {
                BlockStatus::Upper
            };
            blocks.push(BlockEntry {
                v: gkm.word(v),
                v_prime: gkm.word(vp),
                status,
            });
        }
    }
    BlockReport {
        ok: witness.is_none(),
        blocks,
        lower_zero_blocks,
        witness,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub ok: bool,
    pub witness: Option<String>,
}

/// For every `v ∈ W^P`: `(σ_w(vw′)) = M·vN` entrywise, and the `(v, v)` block
/// of `A` equals `σ_v(v)` times that matrix.
pub fn verify_diagonal_factorization(gkm: &Gkm, basis: &ParabolicBasis) -> FactorizationReport {
    let a = matrix_a(gkm, basis);
    let p = &basis.parabolic;
    let m = basis.subgroup.len();
    for (bi, &v) in basis.reps.iter().enumerate() {
        let s = matrix_restricted(gkm, p, v);
        let mvn = matrix_m(gkm, p, v)
            .and_then(|mm| mm.mul(&matrix_vn(gkm, p, v)?))
            .expect("v is a coset representative");
        let scale = gkm.schubert_point(v);
        for r in 0..m {
            for c in 0..m {
                let (w, wp) = (basis.subgroup[r], basis.subgroup[c]);
                let at = || format!("v = {}, w = {}, w' = {}", gkm.word(v), gkm.word(w), gkm.word(wp));
                if s.get(r, c) != mvn.get(r, c) {
                    return FactorizationReport {
                        ok: false,
                        witness: Some(format!("M*vN mismatch at {}", at())),
                    };
                }
                if a.get(bi * m + r, bi * m + c) != &(scale * s.get(r, c)) {
                    return FactorizationReport {
                        ok: false,
                        witness: Some(format!("diagonal block of A mismatch at {}", at())),
                    };
                }
            }
        }
    }
    FactorizationReport {
        ok: true,
        witness: None,
    }
}

/// `σ_u(u)` as the product of the roots `r(i, u)` along the canonical word.
pub fn schubert_point_factors(gkm: &Gkm, u: usize) -> RootProduct {
    let rs = gkm.root_system();
    let ctx = BilleyContext::new(rs, gkm.group().element(u));
    let roots: Vec<RootVector> = (1..=ctx.word().len())
        .map(|i| ctx.root(i).expect("in range").clone())
        .collect();
    RootProduct::from_roots(gkm.nvars(), &roots)
}

/// `∏_{v∈W^P} [σ_v(v)^{|W_P|} · ∏_{w∈W_P} v(σ_w(w))]`.
pub fn det_closed_form(gkm: &Gkm, p: &ParabolicSubset) -> RootProduct {
    let group = gkm.group();
    let sub = group.parabolic_subgroup(p);
    let inner = sub.iter().fold(RootProduct::one(gkm.nvars()), |acc, &w| {
        acc.mul(&schubert_point_factors(gkm, w))
    });
    group
        .minimal_coset_reps(p)
        .iter()
        .fold(RootProduct::one(gkm.nvars()), |acc, &v| {
            acc.mul(&schubert_point_factors(gkm, v).pow(sub.len() as u32))
                .mul(&inner.weyl_act(group.element(v)))
        })
}

/// `∏_{u∈W} σ_u(u)`.
pub fn schubert_point_product(gkm: &Gkm) -> RootProduct {
    (0..gkm.group().len()).fold(RootProduct::one(gkm.nvars()), |acc, u| {
        acc.mul(&schubert_point_factors(gkm, u))
    })
}

/// `σ_{vw}(vw) = σ_v(v)·v(σ_w(w))` for every pair, and each factored point
/// agrees with its Billey value.
fn check_point_identities(gkm: &Gkm, basis: &ParabolicBasis) -> Option<String> {
    let group = gkm.group();
    for u in 0..group.len() {
        if &schubert_point_factors(gkm, u).expand() != gkm.schubert_point(u) {
            return Some(format!("sigma_{0}({0}) is not the product of its roots", gkm.word(u)));
        }
    }
    for &(v, w) in &basis.pairs {
        let twisted = gkm.schubert_point(w).weyl_act(group.element(v)).expect("same rank");
        if gkm.schubert_point(group.mul(v, w)) != &(gkm.schubert_point(v) * &twisted) {
            return Some(format!(
                "sigma_vw(vw) != sigma_v(v) v(sigma_w(w)) at v = {}, w = {}",
                gkm.word(v),
                gkm.word(w)
            ));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetMethod {
    Direct,
    ClosedForm,
}

/// Witness that `B_P` is a basis.
///
/// `closed_form` and `schubert_product` are printed factored; the expanded
/// closed form is kept only next to a direct determinant.
#[derive(Debug, Clone, Serialize)]
pub struct BasisCertificate {
    pub root_system: String,
    pub parabolic: Vec<usize>,
    #[serde(rename = "det_A")]
    pub det_a: Option<RootPolynomial>,
    pub closed_form: RootProduct,
    pub closed_form_expanded: Option<RootPolynomial>,
    pub schubert_product: RootProduct,
    pub det_method: DetMethod,
    pub blocks: Vec<BlockEntry>,
    pub lower_zero_blocks: usize,
    pub factorization_ok: bool,
    pub status: &'static str,
    pub witness: Option<String>,
}

impl BasisCertificate {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Block structure, `M·vN` factorization and the determinant identities.
/// The direct determinant is taken only when `|W| ≤ det_cap`.
pub fn certify_basis(gkm: &Gkm, basis: &ParabolicBasis, det_cap: usize) -> BasisCertificate {
    let blocks = verify_block_structure(gkm, basis);
    let fact = verify_diagonal_factorization(gkm, basis);
    let closed_form = det_closed_form(gkm, &basis.parabolic);
    let schubert_product = schubert_point_product(gkm);
    let (det_a, closed_form_expanded, det_method) = if basis.len() <= det_cap {
        let d = matrix_a(gkm, basis).det(det_cap).expect("within cap");
        (Some(d), Some(closed_form.expand()), DetMethod::Direct)
    } else {
        (None, None, DetMethod::ClosedForm)
    };
    let mut witness = blocks
        .witness
        .clone()
        .or_else(|| fact.witness.clone())
        .or_else(|| check_point_identities(gkm, basis));
    if witness.is_none() {
        if closed_form != schubert_product {
            witness = Some(format!(
                "closed form {closed_form} != product of sigma_u(u) {schubert_product}"
            ));
        } else if let (Some(d), Some(c)) = (&det_a, &closed_form_expanded) {
            if d.is_zero() || d != c {
                witness = Some(format!("det A = {d} != closed form {closed_form}"));
            }
        }
    }
    BasisCertificate {
        root_system: gkm.root_system().spec().to_string(),
        parabolic: basis.parabolic.to_vec(),
        det_a,
        closed_form,
        closed_form_expanded,
        schubert_product,
        det_method,
        blocks: blocks.blocks,
        lower_zero_blocks: blocks.lower_zero_blocks,
        factorization_ok: fact.ok,
        status: if witness.is_none() { "ok" } else { "fail" },
        witness,
    }
}

/// Coefficients `d_{v,w}` of a class in `B_P`, in basis order; zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicExpansion {
    pub coeffs: Vec<((usize, usize), RootPolynomial)>,
}

struct DegreeBlock {
    /// basis positions of degree `D`
    members: Vec<usize>,
    /// group elements of length `D`
    points: Vec<usize>,
    /// inverse of the constant matrix `C_D[x][member]`
    inverse: Vec<Vec<BigRational>>,
}

/// Change of basis from Schubert classes into `B_P`.
///
/// Each `σ_vσ_w` expands as a constant combination of Schubert classes of
/// length `ℓ(vw)` plus terms of lower length with positive-degree
/// coefficients, so the system is solved one degree at a time from the top.
pub struct ParabolicExpander<'a> {
    gkm: &'a Gkm,
    basis: &'a ParabolicBasis,
    columns: Vec<SchubertExpansion>,
    degrees: Vec<DegreeBlock>,
}

impl<'a> ParabolicExpander<'a> {
    pub fn new(gkm: &'a Gkm, basis: &'a ParabolicBasis) -> Result<Self> {
        let group = gkm.group();
        let columns = basis
            .classes
            .iter()
            .map(|c| gkm.expand_in_schubert(c))
            .collect::<Result<Vec<_>>>()?;
        let top = (0..group.len()).map(|k| group.length(k)).max().unwrap_or(0);
        let mut degrees = Vec::with_capacity(top + 1);
        for d in 0..=top {
            let members: Vec<usize> = (0..basis.len())
                .filter(|&k| {
                    let (v, w) = basis.pairs[k];
                    group.length(v) + group.length(w) == d
                })
                .collect();
            let points: Vec<usize> = (0..group.len()).filter(|&k| group.length(k) == d).collect();
            if members.len() != points.len() {
                return Err(GkmError::Certification(format!(
                    "degree {d}: {} basis classes but {} Schubert classes",
                    members.len(),
                    points.len()
                )));
            }
            let mut c = vec![vec![BigRational::zero(); members.len()]; points.len()];
            for (j, &k) in members.iter().enumerate() {
                for (i, &x) in points.iter().enumerate() {
                    if let Some(coef) = columns[k].coeff(x) {
                        if !coef.is_constant() {
                            return Err(GkmError::Certification(format!(
                                "coefficient of sigma_{} in a degree-{d} product is not constant",
                                gkm.word(x)
                            )));
                        }
                        c[i][j] = coef.constant_term();
                    }
                }
            }
            let inverse =
                invert(c).ok_or_else(|| GkmError::Certification(format!("degree {d} constant block is singular")))?;
            degrees.push(DegreeBlock {
                members,
                points,
                inverse,
            });
        }
        Ok(ParabolicExpander {
            gkm,
            basis,
            columns,
            degrees,
        })
    }

    pub fn basis(&self) -> &ParabolicBasis {
        self.basis
    }

    /// Schubert expansion of each basis class, in basis order.
    pub fn columns(&self) -> &[SchubertExpansion] {
        &self.columns
    }

    /// Constant block `C_D` is invertible over ℚ for every degree; its
    /// entries are ordinary structure constants.
    pub fn ordinary_blocks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.degrees.iter().map(|d| (d.members.len(), d.points.len()))
    }

    pub fn expand(&self, p: &EquivariantClass) -> Result<ParabolicExpansion> {
        if p.space().flavor() != Flavor::GB {
            return Err(GkmError::SpaceMismatch(
                "parabolic expansion needs a class on GB".into(),
            ));
        }
        let n = self.gkm.nvars();
        let exp = self.gkm.expand_in_schubert(p)?;
        let mut residual: BTreeMap<usize, RootPolynomial> = exp.coeffs().clone();
        let mut coeffs = BTreeMap::new();
        for block in self.degrees.iter().rev() {
            let rhs: Vec<RootPolynomial> = block
                .points
                .iter()
                .map(|x| residual.get(x).cloned().unwrap_or_else(|| RootPolynomial::zero(n)))
                .collect();
            for (j, &k) in block.members.iter().enumerate() {
                let d = block.inverse[j]
                    .iter()
                    .zip(&rhs)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(RootPolynomial::zero(n), |acc, (c, r)| &acc + &r.scalar_mul(c));
                if d.is_zero() {
                    continue;
                }
                for (&x, c) in self.columns[k].coeffs() {
                    let entry = residual.entry(x).or_insert_with(|| RootPolynomial::zero(n));
                    *entry = &*entry - &(&d * c);
                }
                coeffs.insert(k, d);
            }
        }
        if let Some((&x, _)) = residual.iter().find(|(_, r)| !r.is_zero()) {
            return Err(GkmError::NotInSpan(format!(
                "residual at sigma_{} after parabolic solve",
                self.gkm.word(x)
            )));
        }
        Ok(ParabolicExpansion {
            coeffs: coeffs.into_iter().map(|(k, d)| (self.basis.pairs[k], d)).collect(),
        })
    }

    /// `Σ d_{v,w} σ_vσ_w` as a table on GB.
    pub fn reassemble(&self, exp: &ParabolicExpansion) -> EquivariantClass {
        let gb = self.gkm.gb();
        exp.coeffs.iter().fold(self.gkm.zero(&gb), |acc, ((v, w), d)| {
            let k = self.basis.position(*v, *w).expect("pair from this basis");
            acc.add(&self.basis.classes[k].scale(d)).expect("same space")
        })
    }
}

/// Gauss-Jordan inverse over ℚ; `None` when singular.
fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let scale = m[col][col].recip();
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = &*x * &scale;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let (a, b) = (&m[col][c] * &f, &inv[col][c] * &f);
                m[r][c] -= a;
                inv[r][c] -= b;
            }
        }
    }
    Some(inv)
}

#[derive(Debug, Clone, Serialize)]
pub struct SingleSchubertReport {
    pub parabolic: Vec<usize>,
    pub applicable: usize,
    pub counterexamples: Vec<String>,
}

/// Whenever `σ_vσ_w` is a single Schubert class `σ_u`, checks `u = vw`.
pub fn single_schubert_check(gkm: &Gkm, expander: &ParabolicExpander<'_>) -> SingleSchubertReport {
    let group = gkm.group();
    let basis = expander.basis;
    let mut applicable = 0;
    let mut counterexamples = Vec::new();
    for (&(v, w), col) in basis.pairs.iter().zip(&expander.columns) {
        if col.len() != 1 {
            continue;
        }
        let (&u, c) = col.coeffs().iter().next().expect("one term");
        if !c.is_one() {
            continue;
        }
        applicable += 1;
        if u != group.mul(v, w) {
            counterexamples.push(format!(
                "sigma_{} * sigma_{} = sigma_{}",
                gkm.word(v),
                gkm.word(w),
                gkm.word(u)
            ));
        }
    }
    SingleSchubertReport {
        parabolic: basis.parabolic.to_vec(),
        applicable,
        counterexamples,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    Equivariant,
    Ordinary,
}

/// Canonical string for every basis class, mapped to its first `(v, w)`.
///
/// Equivariant keys are localization tables; ordinary keys are the constant
/// terms of the Schubert expansion.
pub fn fingerprint(
    gkm: &Gkm,
    basis: &ParabolicBasis,
    columns: &[SchubertExpansion],
    mode: CompareMode,
) -> BTreeMap<String, (usize, usize)> {
    let mut out = BTreeMap::new();
    for (k, &pair) in basis.pairs.iter().enumerate() {
        let key = match mode {
            CompareMode::Equivariant => basis.classes[k]
                .values()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            CompareMode::Ordinary => gkm
                .project_ordinary(&columns[k])
                .iter()
                .map(|(w, c)| format!("{}: {}", gkm.word(*w), c))
                .collect::<Vec<_>>()
                .join(" + "),
        };
        out.entry(key).or_insert(pair);
    }
    out
}

/// A class present in one basis and absent from the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisWitness {
    /// which parabolic's basis holds the class: "P" or "Q"
    pub side: &'static str,
    pub v: String,
    pub w: String,
    pub schubert_expansion: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctReport {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub mode: CompareMode,
    pub distinct: bool,
    pub witnesses: Vec<BasisWitness>,
}

fn describe_expansion(gkm: &Gkm, exp: &SchubertExpansion, mode: CompareMode) -> String {
    let terms: Vec<String> = match mode {
        CompareMode::Equivariant => gkm.format_expansion(exp),
        CompareMode::Ordinary => gkm
            .project_ordinary(exp)
            .iter()
            .map(|(w, c)| format!("{}: {}", gkm.word(*w), c))
            .collect(),
    };
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(", ")
    }
}

/// Compares `B_P` and `B_Q` as sets; on distinctness reports the first class
/// (in basis order) of each side missing from the other.
pub fn bases_distinct(
    gkm: &Gkm,
    p: (&ParabolicBasis, &[SchubertExpansion]),
    q: (&ParabolicBasis, &[SchubertExpansion]),
    mode: CompareMode,
) -> DistinctReport {
    let fp = fingerprint(gkm, p.0, p.1, mode);
    let fq = fingerprint(gkm, q.0, q.1, mode);
    let missing = |side: &'static str,
                   (basis, cols): (&ParabolicBasis, &[SchubertExpansion]),
                   mine: &BTreeMap<String, (usize, usize)>,
                   other: &BTreeMap<String, (usize, usize)>| {
        let first = mine
            .iter()
            .filter(|(key, _)| !other.contains_key(*key))
            .map(|(_, &pair)| pair)
            .min_by_key(|&(v, w)| basis.position(v, w))?;
        let k = basis.position(first.0, first.1).expect("own pair");
        Some(BasisWitness {
            side,
            v: gkm.word(first.0),
            w: gkm.word(first.1),
            schubert_expansion: describe_expansion(gkm, &cols[k], mode),
        })
    };
    let witnesses: Vec<BasisWitness> = [missing("P", p, &fp, &fq), missing("Q", q, &fq, &fp)]
        .into_iter()
        .flatten()
        .collect();
    DistinctReport {
        p: p.0.parabolic.to_vec(),
        q: q.0.parabolic.to_vec(),
        mode,
        distinct: fp.len() != fq.len() || !witnesses.is_empty(),
        witnesses,
    }
}

/// Predicted verdict: distinct iff some irreducible factor sees different
/// parabolics, at least one of which is a nonempty proper subset there.
pub fn predicted_distinct(gkm: &Gkm, p: &ParabolicSubset, q: &ParabolicSubset) -> bool {
    gkm.root_system().spec().factor_ranges().into_iter().any(|range| {
        let size = range.len();
        let pi: BTreeSet<usize> = p.generators().filter(|i| range.contains(&(i - 1))).collect();
        let qi: BTreeSet<usize> = q.generators().filter(|i| range.contains(&(i - 1))).collect();
        let proper = |s: &BTreeSet<usize>| !s.is_empty() && s.len() < size;
        pi != qi && (proper(&pi) || proper(&qi))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "2b")]
    TwoB,
}

impl std::fmt::Display for WitnessCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WitnessCase::One => "1",
            WitnessCase::TwoA => "2a",
            WitnessCase::TwoB => "2b",
        })
    }
}

/// Two classes, one from each basis, told apart at a single fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct DynkinWitness {
    pub case: WitnessCase,
    /// the parabolic playing the role of `P` (it has a generator `Q` lacks)
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub path: Vec<usize>,
    /// `v_R = s_j v s_i`, or `s_i s_j` in case 2b
    pub word: String,
    pub point: String,
    pub left: RootPolynomial,
    pub right: RootPolynomial,
    pub distinct: bool,
}

/// Dynkin path construction: needs an irreducible system and two different,
/// nonempty parabolics.
pub fn dynkin_path_witness(gkm: &Gkm, p: &ParabolicSubset, q: &ParabolicSubset) -> Result<DynkinWitness> {
    let rs = gkm.root_system();
    if !rs.spec().is_irreducible() {
        return Err(GkmError::Hypothesis("root system is not irreducible".into()));
    }
    if p == q || p.is_empty() || q.is_empty() {
        return Err(GkmError::Hypothesis(format!(
            "no path witness for P = {{{p}}}, Q = {{{q}}}"
        )));
    }
    let (p, q) = if p.generators().any(|i| !q.contains(i)) {
        (p, q)
    } else {
        (q, p)
    };
    let n = rs.rank();
    let cartan = rs.cartan();
    // BFS outward from Q; the first vertex reached in P \ Q closes a shortest path
    let mut parent: Vec<Option<usize>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    let mut queue: VecDeque<usize> = q.generators().collect();
    for j in q.generators() {
        seen[j] = true;
    }
    let mut end = None;
    while let Some(x) = queue.pop_front() {
        if p.contains(x) && !q.contains(x) {
            end = Some(x);
            break;
        }
        for y in 1..=n {
            if y != x && cartan[x - 1][y - 1] != 0 && !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    let i = end.ok_or_else(|| GkmError::Hypothesis("no Dynkin path between P \\ Q and Q".into()))?;
    let mut path = vec![i];
    while let Some(prev) = parent[*path.last().expect("nonempty")] {
        path.push(prev);
    }
    // path runs j, v..., i
    path.reverse();
    let j = path[0];
    let middle = &path[1..path.len() - 1];

    let group = gkm.group();
    let idx = |w: &[usize]| group.index_of_word(w).expect("valid word");
    let case = if !p.contains(j) {
        WitnessCase::One
    } else if !middle.is_empty() {
        WitnessCase::TwoA
    } else {
        WitnessCase::TwoB
    };
    let mut sjv = vec![j];
    sjv.extend_from_slice(middle);
    let mut vr = sjv.clone();
    vr.push(i);
    let (word, point, left, right) = match case {
        WitnessCase::One | WitnessCase::TwoA => {
            let point: Vec<usize> = match case {
                WitnessCase::One => vr.iter().chain(&sjv).copied().collect(),
                _ => std::iter::once(i).chain(vr.iter().copied()).collect(),
            };
            let x = idx(&point);
            let left = gkm.sigma(idx(&vr), x).clone();
            let right = gkm.sigma(idx(&sjv), x) * gkm.sigma(idx(&[i]), x);
            (vr.clone(), point, left, right)
        }
        WitnessCase::TwoB => {
            let x = idx(&[j, i, j]);
            let left = gkm.sigma(idx(&[i, j]), x).clone();
            let right = gkm.sigma(idx(&[i]), x) * gkm.sigma(idx(&[j]), x);
            (vec![i, j], vec![j, i, j], left, right)
        }
    };
    Ok(DynkinWitness {
        case,
        p: p.to_vec(),
        q: q.to_vec(),
        path,
        word: gkm.word(idx(&word)),
        point: gkm.word(idx(&point)),
        distinct: left != right,
        left,
        right,
    })
}
