use proptest::prelude::*;

use macdonald_hc::algebra::lattice::{q, qr, vscale, QVec};
use macdonald_hc::algebra::series::{cone_expand, mul_trunc};
use macdonald_hc::algebra::{Frac, Mono, Poly};
use macdonald_hc::hcseries::{baker_check, baker_support, expand_operator, hc_series_formal_with, SweepOptions};
use macdonald_hc::heckeops::{Context, Label};
use macdonald_hc::macops::{macdonald_operator, pi_prime, supported_pis, symmetrize, DiffOp, PiSel, Route};
use macdonald_hc::rootdata::{AffRoot, CartanType, Case, RootDatum};

const DATA: [(Case, CartanType, usize); 5] = [
    (Case::A, CartanType::A, 1),
    (Case::A, CartanType::A, 2),
    (Case::A, CartanType::B, 2),
    (Case::B, CartanType::A, 2),
    (Case::C, CartanType::C, 1),
];

fn datum(i: usize) -> RootDatum {
    let (c, t, n) = DATA[i % DATA.len()];
    RootDatum::build(c, t, n).unwrap()
}

fn ctx(i: usize) -> Context {
    Context::new(datum(i), Label::Generic).unwrap()
}

/// Small Laurent polynomials in the first three ring slots.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((-2i32..=2, -2i32..=2, -2i32..=2), -3i128..=3), 1..4).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|((a, b, c), k)| (Mono::var(0, a).mul(&Mono::var(1, b)).mul(&Mono::var(2, c)), k)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn frac_equality_is_cross_multiplication(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let x = Frac::new(a.clone(), &b).unwrap();
        let y = Frac::new(c.clone(), &d).unwrap();
        prop_assert_eq!(x == y, &a * &d == &c * &b);
    }

    #[test]
    fn frac_field_axioms(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly(), e in nonzero_poly()) {
        let x = Frac::new(a, &b).unwrap();
        let y = Frac::new(c, &d).unwrap();
        let z = Frac::from_poly(e);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!((&x * &z).div(&z).unwrap(), x.clone());
        prop_assert_eq!(&x - &x, Frac::zero());
        prop_assert_eq!(x.reduce(), x);
    }

    #[test]
    fn weyl_action_is_a_group_action(i in 0usize..5, a in 0usize..48, b in 0usize..48, v in prop::collection::vec(-4i64..=4, 2)) {
        let rd = datum(i);
        let (a, b) = (a % rd.order(), b % rd.order());
        let v: QVec = v.iter().take(rd.n).map(|x| qr(*x, 2)).collect();
        prop_assert_eq!(rd.act(rd.mul(a, b), &v), rd.act(a, &rd.act(b, &v)));
        prop_assert_eq!(rd.act(rd.inv(a), &rd.act(a, &v)), v.clone());
        prop_assert_eq!(rd.ip(&rd.act(a, &v), &rd.act(a, &v)), rd.ip(&v, &v));
    }

    #[test]
    fn length_counts_inverted_roots(i in 0usize..5, a in 0usize..48) {
        let rd = datum(i);
        let w = a % rd.order();
        let inverted = rd.positive.iter().filter(|r| !rd.is_positive_grad(&rd.act(w, r))).count();
        prop_assert_eq!(rd.length(w), inverted);
        prop_assert_eq!(rd.w0[w].word.len(), inverted);
        let from_word = rd.w0[w].word.iter().fold(0, |acc, s| rd.mul(acc, rd.simple_refl(*s)));
        prop_assert_eq!(from_word, w);
    }

    #[test]
    fn affine_reduced_words_have_minimal_length(i in 0usize..5, t in prop::collection::vec(-2i64..=2, 2), w in 0usize..48) {
        let rd = datum(i);
        let t: QVec = rd.lat_lp.point(&t[..rd.n]);
        let g = rd.aff_mul(&rd.finite(w % rd.order()), &rd.translation(&t));
        let (omega, word) = rd.reduced_word(&g);
        prop_assert_eq!(word.len(), rd.aff_length(&g));
        prop_assert_eq!(rd.compose_word(omega, &word), g.clone());
        prop_assert_eq!(rd.cross_set(&g).len(), word.len());
    }

    #[test]
    fn dominant_representative(i in 0usize..5, v in prop::collection::vec(-6i64..=6, 2)) {
        let rd = datum(i);
        let v = rd.lat_l.point(&v[..rd.n]);
        let d = rd.dominant(&v);
        prop_assert!(rd.is_dominant(&d));
        prop_assert!(rd.orbit(&v).contains(&d));
        prop_assert!(rd.leq(&v, &d));
    }

    #[test]
    fn c_function_pair_sum(i in 0usize..5, r in 0usize..16, cst in -3i64..=3) {
        let cx = ctx(i);
        let g = cx.rd.roots[r % cx.rd.roots.len()].clone();
        let step = cx.rd.step(&g);
        let a = AffRoot::new(g, step * q(cst));
        let t = cx.tau_of(&a);
        let s = &cx.c_function(&a).unwrap() + &cx.c_function(&a.neg()).unwrap();
        prop_assert_eq!(s, &Frac::from_mono(t) + &Frac::from_mono(t.inv()));
    }

    #[test]
    fn symmetrize_is_idempotent(i in 0usize..5, j in 0usize..4) {
        let cx = ctx(i);
        let sels = supported_pis(&cx.rd);
        let pi = pi_prime(&cx.rd, sels[j % sels.len()]).unwrap();
        let d = macdonald_operator(&cx, &pi, Route::Explicit).unwrap();
        let (lp, f) = d.terms.iter().next().map(|(a, b)| (a.clone(), b.clone())).unwrap();
        let one = DiffOp::translation(lp, f);
        let s = symmetrize(&cx, &one).unwrap();
        prop_assert!(symmetrize(&cx, &s).unwrap().equals(&s));
        prop_assert!(symmetrize(&cx, &d).unwrap().equals(&d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn cone_expansion_is_multiplicative(i in 0usize..5, a in 0usize..9, b in 0usize..9) {
        let cx = ctx(i);
        let pi = pi_prime(&cx.rd, PiSel::Quasi).unwrap();
        let d = macdonald_operator(&cx, &pi, Route::Explicit).unwrap();
        let coeffs: Vec<Frac> = d.terms.values().cloned().collect();
        let (f, g) = (&coeffs[a % coeffs.len()], &coeffs[b % coeffs.len()]);
        let h = 3;
        let ef = cone_expand(cx.frame(), f, Some(Mono::ONE), h).unwrap();
        let eg = cone_expand(cx.frame(), g, Some(Mono::ONE), h).unwrap();
        let efg = cone_expand(cx.frame(), &(f * g), Some(Mono::ONE), h).unwrap();
        let prod = mul_trunc(&ef.coeffs, &eg.coeffs, h);
        for (x, c) in &efg.coeffs {
            prop_assert_eq!(prod.get(x).cloned().unwrap_or_else(Frac::zero), c.clone());
        }
        prop_assert!(prod.iter().all(|(x, c)| c.is_zero() || efg.coeffs.contains_key(x)));
    }

    #[test]
    fn formal_series_independent_of_sweep_order(i in 0usize..2, perm in prop::collection::vec(0usize..16, 1..10), threads in 1usize..4) {
        let cx = ctx(i);
        let pi = pi_prime(&cx.rd, supported_pis(&cx.rd)[0]).unwrap();
        let h = if cx.rd.n == 1 { 4 } else { 3 };
        let e = expand_operator(&cx, &macdonald_operator(&cx, &pi, Route::Explicit).unwrap(), h).unwrap();
        let base = hc_series_formal_with(&cx, &e, &pi, h, &SweepOptions::default()).unwrap();
        let other = hc_series_formal_with(&cx, &e, &pi, h, &SweepOptions { layer_order: Some(perm), threads }).unwrap();
        prop_assert_eq!(base.coeffs, other.coeffs);
    }

    #[test]
    fn baker_support_is_stable_in_height(k in 1i64..=2, extra in 0usize..3) {
        let cx = Context::new(RootDatum::build(Case::A, CartanType::A, 1).unwrap(), Label::Specialized(vec![q(-k)])).unwrap();
        let pi = pi_prime(&cx.rd, PiSel::Minuscule(1)).unwrap();
        let top = baker_support(&cx).unwrap().iter().map(|x| x[0]).max().unwrap() as usize;
        prop_assert_eq!(top as i64, k);
        let r = baker_check(&cx, &pi, top + extra, &[vscale(&cx.rd.lat_l.basis()[0], q(1))]).unwrap();
        prop_assert!(r.pass());
    }
}
