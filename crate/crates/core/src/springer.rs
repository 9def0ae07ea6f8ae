//! The Kostant-Kumar action `(w·p)(v) = p(vw⁻¹)` and its characters.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cohomology::{EquivariantClass, Flavor, Gkm, SchubertExpansion};
use crate::error::{GkmError, Result};
use crate::parabolic::{ParabolicBasis, ParabolicExpander};
use crate::polyring::{PolyMatrix, RootPolynomial};
use crate::weyl::ParabolicSubset;

/// `w·p` on `G/B` (any `w ∈ W`) or `P/B` (`w ∈ W_P`).
pub fn kk_act(gkm: &Gkm, w: usize, p: &EquivariantClass) -> Result<EquivariantClass> {
    let group = gkm.group();
    let space = p.space();
    if space.flavor() == Flavor::GP {
        return Err(GkmError::SpaceMismatch(
            "the Weyl group does not act on G/P classes here".into(),
        ));
    }
    if space.flavor() == Flavor::PB && space.position(w).is_none() {
        return Err(GkmError::NotInIndexSet(format!(
            "{} is not in W_P for P = {{{}}}",
            gkm.word(w),
            space.parabolic()
        )));
    }
    let winv = group.inverse(w);
    let values = space
        .points()
        .iter()
        .map(|&v| p.at(group.mul(v, winv)).expect("closed under W_P").clone())
        .collect();
    EquivariantClass::new(space.clone(), values)
}

/// A basis for the acted-on module.
#[derive(Clone, Copy)]
pub enum ActionBasis<'a> {
    /// Schubert classes of `P/B`
    SchubertPB(&'a ParabolicSubset),
    /// Schubert classes of `G/B`
    SchubertGB,
    /// `B_P` on `G/B`
    Parabolic(&'a ParabolicExpander<'a>),
}

fn expansion_column(exp: &SchubertExpansion, points: &[usize], n: usize) -> Vec<RootPolynomial> {
    points
        .iter()
        .map(|x| exp.coeff(*x).cloned().unwrap_or_else(|| RootPolynomial::zero(n)))
        .collect()
}

/// Column `k` holds the coefficients of `w·b_k` in the same basis.
pub fn action_matrix(gkm: &Gkm, w: usize, basis: ActionBasis<'_>) -> Result<PolyMatrix> {
    let n = gkm.nvars();
    let columns: Vec<Vec<RootPolynomial>> = match basis {
        ActionBasis::SchubertPB(_) | ActionBasis::SchubertGB => {
            let space = match basis {
                ActionBasis::SchubertPB(p) => gkm.space(Flavor::PB, p),
                _ => gkm.gb(),
            };
            space
                .points()
                .iter()
                .map(|&u| {
                    let image = kk_act(gkm, w, &gkm.schubert_class(&space, u)?)?;
                    Ok(expansion_column(&gkm.expand_in_schubert(&image)?, space.points(), n))
                })
                .collect::<Result<_>>()?
        }
        ActionBasis::Parabolic(ex) => {
            let b = ex.basis();
            if b.subgroup().binary_search(&w).is_err() {
                return Err(GkmError::NotInIndexSet(format!("{} is not in W_P", gkm.word(w))));
            }
            b.classes()
                .iter()
                .map(|c| {
                    let d = ex.expand(&kk_act(gkm, w, c)?)?;
                    let mut col = vec![RootPolynomial::zero(n); b.len()];
                    for ((v, u), coef) in d.coeffs {
                        col[b.position(v, u).expect("own pair")] = coef;
                    }
                    Ok(col)
                })
                .collect::<Result<_>>()?
        }
    };
    let size = columns.len();
    Ok(PolyMatrix::from_fn(size, size, n, |r, c| columns[c][r].clone()))
}

fn basis_size(gkm: &Gkm, basis: ActionBasis<'_>) -> usize {
    match basis {
        ActionBasis::SchubertPB(p) => gkm.group().parabolic_subgroup(p).len(),
        ActionBasis::SchubertGB => gkm.group().len(),
        ActionBasis::Parabolic(ex) => ex.basis().len(),
    }
}

/// Action matrices for all of `W_P` in canonical order, from the generator
/// matrices along canonical words. The action satisfies
/// `w₁·(w₂·p) = (w₂w₁)·p`, so `M(x·s_i) = M(s_i)·M(x)`.
pub fn action_matrices(gkm: &Gkm, p: &ParabolicSubset, basis: ActionBasis<'_>) -> Result<Vec<(usize, PolyMatrix)>> {
    let group = gkm.group();
    let sub = group.parabolic_subgroup(p);
    let gens: BTreeMap<usize, PolyMatrix> = p
        .generators()
        .map(|i| Ok((i, action_matrix(gkm, group.index_of_word(&[i])?, basis)?)))
        .collect::<Result<_>>()?;
    let mut done: HashMap<usize, PolyMatrix> = HashMap::with_capacity(sub.len());
    let mut out = Vec::with_capacity(sub.len());
    for &w in &sub {
        let m = match group.word(w).letters().last() {
            None => PolyMatrix::identity(basis_size(gkm, basis), gkm.nvars()),
            Some(&i) => {
                let parent = group.right_mul_gen(w, i - 1);
                gens[&i].mul(&done[&parent])?
            }
        };
        done.insert(w, m.clone());
        out.push((w, m));
    }
    Ok(out)
}

pub fn trace(m: &PolyMatrix) -> RootPolynomial {
    (0..m.rows()).fold(RootPolynomial::zero(m.nvars()), |acc, i| &acc + m.get(i, i))
}

/// Traces over `W_P` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub root_system: String,
    pub parabolic: Vec<usize>,
    pub space: Flavor,
    /// `(word, trace)` per element of `W_P`
    pub values: Vec<(String, RootPolynomial)>,
}

impl CharacterTable {
    pub fn value(&self, word: &str) -> Option<&RootPolynomial> {
        self.values.iter().find(|(w, _)| w == word).map(|(_, v)| v)
    }
}

/// `χ` on `P/B` (Schubert basis) or `χ_P` on `G/B` (traces in `B_P`, checked
/// against the Schubert basis of `G/B`).
pub fn character(gkm: &Gkm, p: &ParabolicSubset, space: Flavor) -> Result<CharacterTable> {
    let traces = |basis| -> Result<Vec<(usize, RootPolynomial)>> {
        Ok(action_matrices(gkm, p, basis)?
            .iter()
            .map(|(w, m)| (*w, trace(m)))
            .collect())
    };
    let values = match space {
        Flavor::PB => traces(ActionBasis::SchubertPB(p))?,
        Flavor::GB => {
            let basis = ParabolicBasis::new(gkm, p);
            let ex = ParabolicExpander::new(gkm, &basis)?;
            let t = traces(ActionBasis::Parabolic(&ex))?;
            let t2 = traces(ActionBasis::SchubertGB)?;
            if let Some(((w, a), (_, b))) = t.iter().zip(&t2).find(|((_, a), (_, b))| a != b) {
                return Err(GkmError::Certification(format!(
                    "trace of {} differs between bases: {a} vs {b}",
                    gkm.word(*w)
                )));
            }
            t
        }
        Flavor::GP => return Err(GkmError::SpaceMismatch("characters are defined on GB and PB".into())),
    };
    Ok(CharacterTable {
        root_system: gkm.root_system().spec().to_string(),
        parabolic: p.to_vec(),
        space,
        values: values.into_iter().map(|(w, t)| (gkm.word(w), t)).collect(),
    })
}

/// Shape of the action matrices on `B_P`, blocks indexed by `W^P`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockShape {
    /// every off-diagonal block vanishes
    pub block_diagonal: bool,
    /// every diagonal block equals the `P/B` matrix itself
    pub identical_blocks: bool,
    /// block `(v, v′)` vanishes unless `v′ ≤ v`
    pub block_triangular: bool,
    /// the `(v,u),(v,u)` entry equals the `(u,u)` entry of the `P/B` matrix
    pub diagonal_entries_match: bool,
    pub first_off_diagonal: Option<String>,
}

fn block_shape(gkm: &Gkm, basis: &ParabolicBasis, mats: &[(usize, PolyMatrix, PolyMatrix)]) -> BlockShape {
    let group = gkm.group();
    let m = basis.subgroup().len();
    let mut shape = BlockShape {
        block_diagonal: true,
        identical_blocks: true,
        block_triangular: true,
        diagonal_entries_match: true,
        first_off_diagonal: None,
    };
    for (w, big, pb) in mats {
        for (bi, &v) in basis.reps().iter().enumerate() {
            for (bj, &vp) in basis.reps().iter().enumerate() {
                let block = |r: usize, c: usize| big.get(bi * m + r, bj * m + c);
                if bi == bj {
                    for r in 0..m {
                        if block(r, r) != pb.get(r, r) {
                            shape.diagonal_entries_match = false;
                        }
                        for c in 0..m {
                            if block(r, c) != pb.get(r, c) {
                                shape.identical_blocks = false;
                            }
                        }
                    }
                    continue;
                }
                let zero = (0..m).all(|r| (0..m).all(|c| block(r, c).is_zero()));
                if !zero {
                    shape.block_diagonal = false;
                    if shape.first_off_diagonal.is_none() {
                        shape.first_off_diagonal = Some(format!(
                            "w = {}: block (v = {}, v' = {}) is nonzero",
                            gkm.word(*w),
                            gkm.word(v),
                            gkm.word(vp)
                        ));
                    }
                    if !group.bruhat_leq(vp, v) {
                        shape.block_triangular = false;
                    }
                }
            }
        }
    }
    shape
}

#[derive(Debug, Clone, Serialize)]
pub struct SpringerReport {
    pub root_system: String,
    pub parabolic: Vec<usize>,
    pub coset_count: usize,
    pub subgroup_order: usize,
    pub chi_p: Vec<(String, RootPolynomial)>,
    pub chi: Vec<(String, RootPolynomial)>,
    /// `χ_P = |W^P|·χ` on all of `W_P`
    pub coset_multiple_holds: bool,
    /// `χ_P = |W_P|·χ` on all of `W_P`
    pub literal_multiple_holds: bool,
    /// `s_i·σ_v = σ_v` for `i ∈ P`, `v ∈ W^P`
    pub fixing_property_holds: bool,
    pub trace_basis_independent: bool,
    /// generator products agree with direct expansion at the probed elements
    pub products_consistent: bool,
    pub blocks: BlockShape,
    pub witness: Option<String>,
}

impl SpringerReport {
    /// The assertions that must hold: the `|W^P|` multiple, the fixing
    /// property, basis independence of traces, and the diagonal entries the
    /// multiple rests on.
    pub fn hard_ok(&self) -> bool {
        self.coset_multiple_holds
            && self.fixing_property_holds
            && self.trace_basis_independent
            && self.products_consistent
            && self.blocks.diagonal_entries_match
    }
}

/// Compares `χ_P` on `G/B` with `χ` on `P/B`.
pub fn verify_springer_multiple(gkm: &Gkm, p: &ParabolicSubset) -> Result<SpringerReport> {
    let group = gkm.group();
    let n = gkm.nvars();
    let basis = ParabolicBasis::new(gkm, p);
    let ex = ParabolicExpander::new(gkm, &basis)?;
    let sub = basis.subgroup().to_vec();
    let coset_count = basis.reps().len();
    let gb = gkm.gb();

    let mut witness = None;
    let mut fixing = true;
    for i in p.generators() {
        let si = group.index_of_word(&[i])?;
        for &v in basis.reps() {
            let s = gkm.schubert_class(&gb, v)?;
            if kk_act(gkm, si, &s)? != s {
                fixing = false;
                witness.get_or_insert_with(|| format!("s_{i} moves sigma_{}", gkm.word(v)));
            }
        }
    }

    let big_all = action_matrices(gkm, p, ActionBasis::Parabolic(&ex))?;
    let pb_all = action_matrices(gkm, p, ActionBasis::SchubertPB(p))?;
    let gb_all = action_matrices(gkm, p, ActionBasis::SchubertGB)?;

    // products must agree with direct expansion at the longest element and
    // at every element of length two (the shortest non-involutions)
    let probes: Vec<usize> = (0..sub.len())
        .filter(|&k| k + 1 == sub.len() || group.length(sub[k]) == 2)
        .collect();
    let mut consistent = true;
    for (b, all) in [
        (ActionBasis::Parabolic(&ex), &big_all),
        (ActionBasis::SchubertPB(p), &pb_all),
        (ActionBasis::SchubertGB, &gb_all),
    ] {
        for &k in &probes {
            if action_matrix(gkm, sub[k], b)? != all[k].1 {
                consistent = false;
                witness.get_or_insert_with(|| {
                    format!(
                        "product of generator matrices differs from direct action at {}",
                        gkm.word(sub[k])
                    )
                });
            }
        }
    }

    let mut independent = true;
    let mut chi_p = Vec::with_capacity(sub.len());
    let mut chi = Vec::with_capacity(sub.len());
    let mut mats = Vec::with_capacity(sub.len());
    for (((w, big), (_, pb)), (_, gbm)) in big_all.into_iter().zip(pb_all).zip(gb_all) {
        let t = trace(&big);
        if t != trace(&gbm) {
            independent = false;
            witness.get_or_insert_with(|| format!("trace of {} depends on the basis", gkm.word(w)));
        }
        chi_p.push((gkm.word(w), t));
        chi.push((gkm.word(w), trace(&pb)));
        mats.push((w, big, pb));
    }
    let multiple = |k: usize| {
        let k = RootPolynomial::from_int(n, k as i64);
        chi_p.iter().zip(&chi).all(|((_, a), (_, b))| a == &(&k * b))
    };
    let coset_multiple_holds = multiple(coset_count);
    if !coset_multiple_holds {
        witness.get_or_insert_with(|| "chi_P != |W^P| chi".into());
    }
    let literal_multiple_holds = multiple(sub.len());
    let blocks = block_shape(gkm, &basis, &mats);
    if !blocks.diagonal_entries_match {
        witness.get_or_insert_with(|| "diagonal of the action matrix on B_P differs from P/B".into());
    }
    Ok(SpringerReport {
        root_system: gkm.root_system().spec().to_string(),
        parabolic: p.to_vec(),
        coset_count,
        subgroup_order: sub.len(),
        chi_p,
        chi,
        coset_multiple_holds,
        literal_multiple_holds,
        fixing_property_holds: fixing,
        trace_basis_independent: independent,
        products_consistent: consistent,
        blocks,
        witness,
    })
}
