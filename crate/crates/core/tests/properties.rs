use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use gkm_core::cohomology::{EquivariantClass, Gkm};
use gkm_core::parabolic::{ParabolicBasis, ParabolicExpander};
use gkm_core::polyring::{Monomial, PolyMatrix, RootPolynomial};
use gkm_core::springer::kk_act;
use gkm_core::weyl::ParabolicSubset;
use num_rational::BigRational;

const SYSTEMS: [&str; 4] = ["A2", "B2", "G2", "A3"];

fn systems() -> &'static [Gkm] {
    static CELL: OnceLock<Vec<Gkm>> = OnceLock::new();
    CELL.get_or_init(|| SYSTEMS.iter().map(|s| Gkm::parse(s).unwrap()).collect())
}

/// Small integer coefficients on monomials of degree at most 2.
fn poly(nvars: usize) -> impl Strategy<Value = RootPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..=3), 0..4).prop_map(move |terms| {
        RootPolynomial::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), BigRational::from_integer(c.into()))),
        )
    })
}

#[derive(Debug, Clone)]
struct Case {
    system: usize,
    /// coefficients of a random combination of Schubert classes
    coeffs: BTreeMap<usize, RootPolynomial>,
    a: usize,
    b: usize,
    f: RootPolynomial,
    g: RootPolynomial,
}

impl Case {
    fn gkm(&self) -> &'static Gkm {
        &systems()[self.system]
    }
}

fn case() -> impl Strategy<Value = Case> {
    (0..SYSTEMS.len()).prop_flat_map(|system| {
        let gkm = &systems()[system];
        let (n, order) = (gkm.nvars(), gkm.group().len());
        (
            prop::collection::btree_map(0..order, poly(n), 0..4),
            0..order,
            0..order,
            poly(n),
            poly(n),
        )
            .prop_map(move |(coeffs, a, b, f, g)| Case {
                system,
                coeffs,
                a,
                b,
                f,
                g,
            })
    })
}

fn combination(g: &Gkm, coeffs: &BTreeMap<usize, RootPolynomial>) -> EquivariantClass {
    let gb = g.gb();
    coeffs.iter().fold(g.zero(&gb), |acc, (&w, c)| {
        acc.add(&g.schubert_class(&gb, w).unwrap().scale(c)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_act_is_a_ring_map_and_an_action(c in case()) {
        let group = c.gkm().group();
        let (wa, wb) = (group.element(c.a), group.element(c.b));
        let fg = c.f.try_mul(&c.g).unwrap();
        prop_assert_eq!(
            fg.weyl_act(wa).unwrap(),
            c.f.weyl_act(wa).unwrap().try_mul(&c.g.weyl_act(wa).unwrap()).unwrap()
        );
        let ab = group.element(group.mul(c.a, c.b));
        prop_assert_eq!(c.f.weyl_act(ab).unwrap(), c.f.weyl_act(wb).unwrap().weyl_act(wa).unwrap());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(3), q in poly(3)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.try_mul(&q).unwrap().exact_div(&q).unwrap(), p);
    }

    #[test]
    fn bareiss_matches_cofactor(entries in prop::collection::vec(poly(2), 16)) {
        let m = PolyMatrix::from_fn(4, 4, 2, |r, c| entries[4 * r + c].clone());
        prop_assert_eq!(m.det_bareiss(8).unwrap(), m.det_cofactor(8).unwrap());
    }

    #[test]
    fn schubert_expansion_recovers_coefficients(c in case()) {
        let g = c.gkm();
        let class = combination(g, &c.coeffs);
        let exp = g.expand_in_schubert(&class).unwrap();
        let want: BTreeMap<_, _> = c.coeffs.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        prop_assert_eq!(exp.coeffs(), &want);
        prop_assert_eq!(g.reassemble(&exp), class);
    }

    #[test]
    fn parabolic_expansion_round_trips(c in case()) {
        let g = c.gkm();
        let all = ParabolicSubset::all(g.root_system());
        let basis = ParabolicBasis::new(g, &all[c.a % all.len()]);
        let ex = ParabolicExpander::new(g, &basis).unwrap();
        let class = combination(g, &c.coeffs);
        prop_assert_eq!(ex.reassemble(&ex.expand(&class).unwrap()), class);
    }

    /// `(w·p)(v) = p(vw⁻¹)` composes on the right: `w₁·(w₂·p) = (w₂w₁)·p`.
    #[test]
    fn kk_act_is_a_module_algebra_and_right_action(c in case()) {
        let g = c.gkm();
        let (a, b, f) = (c.a, c.b, &c.f);
        let p = combination(g, &c.coeffs);
        let q = g.schubert_class(&g.gb(), b).unwrap();
        let act = |w, x: &EquivariantClass| kk_act(g, w, x).unwrap();
        prop_assert_eq!(act(a, &p.scale(f)), act(a, &p).scale(f));
        prop_assert_eq!(act(a, &p.mul(&q).unwrap()), act(a, &p).mul(&act(a, &q)).unwrap());
        let ba = g.group().mul(b, a);
        prop_assert_eq!(act(a, &act(b, &p)), act(ba, &p));
    }
}

#[test]
fn kk_act_is_not_a_left_action() {
    let g = Gkm::parse("A2").unwrap();
    let (s1, s2) = (g.parse_element("1").unwrap(), g.parse_element("2").unwrap());
    let p = g.schubert_class(&g.gb(), s1).unwrap();
    let left = kk_act(&g, g.group().mul(s1, s2), &p).unwrap();
    let nested = kk_act(&g, s1, &kk_act(&g, s2, &p).unwrap()).unwrap();
    assert_ne!(left, nested);
}
