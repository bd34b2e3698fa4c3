//! Closed-form rank-one values computed by hand, compared with the library.

use macdonald_hc::algebra::lattice::{q, qr};
use macdonald_hc::algebra::{Frac, Mono, Poly};
use macdonald_hc::hcseries::hc_series_formal;
use macdonald_hc::heckeops::{orbit_sum, Context, Label};
use macdonald_hc::macops::{eigenvalue_twist, macdonald_operator, macdonald_polynomial, pi_prime, PiSel, Route};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};

fn a1(label: Label) -> Context {
    Context::new(RootDatum::build(Case::A, CartanType::A, 1).unwrap(), label).unwrap()
}

fn p(terms: &[(Mono, i128)]) -> Poly {
    Poly::from_terms(terms.iter().copied())
}

/// For `D = c_α(z) t(−α∨/2) + c_{−α}(z) t(α∨/2)` the height-one recurrence gives
/// `Γ_α = (τ−τ⁻¹)(ξ−ξ⁻¹) / (τ(1−q⁻¹)ξ + τ⁻¹(1−q)ξ⁻¹)` with `ξ = ξ^{α∨/2}`.
#[test]
fn a1_first_series_coefficient() {
    let ctx = a1(Label::Generic);
    let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1)).unwrap();
    let s = hc_series_formal(&ctx, &pi, 2).unwrap();
    let t = Mono::var(ctx.ring.param_slot("t1").unwrap(), 1);
    let xi = ctx.xi(&ctx.rd.lat_lp.basis()[0]).unwrap();
    let qm = ctx.ring.q_pow(q(1)).unwrap();
    let num = &p(&[(t, 1), (t.inv(), -1)]) * &p(&[(xi, 1), (xi.inv(), -1)]);
    let den = p(&[(t.mul(&xi), 1), (t.mul(&xi).div(&qm), -1), (t.inv().mul(&xi.inv()), 1), (t.inv().mul(&xi.inv()).mul(&qm), -1)]);
    assert_eq!(s.coeff(&[1]), Frac::new(num, &den).unwrap());
}

/// Rogers polynomial of degree two: `P_{2ω} = m_{2ω} + (1+q)(1−t)/(1−qt)` with `t = τ²`.
#[test]
fn a1_degree_two_polynomial() {
    let ctx = a1(Label::Generic);
    let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1)).unwrap();
    let d = macdonald_operator(&ctx, &pi, Route::Explicit).unwrap();
    let lambda = ctx.rd.lat_l.point(&[2]);
    let poly = macdonald_polynomial(&ctx, &d, &orbit_sum(&ctx.rd, &pi), &lambda).unwrap();
    let t2 = Mono::var(ctx.ring.param_slot("t1").unwrap(), 2);
    let qm = ctx.ring.q_pow(q(1)).unwrap();
    let want = Frac::new(&p(&[(Mono::ONE, 1), (qm, 1)]) * &p(&[(Mono::ONE, 1), (t2, -1)]), &p(&[(Mono::ONE, 1), (qm.mul(&t2), -1)])).unwrap();
    assert_eq!(poly.len(), 2);
    assert_eq!(poly[&ctx.rd.lat_l.point(&[0])], want);
}

/// `D·1 = τ + τ⁻¹`, and the eigenvalue at `λ = nω` is `τq^{n/2} + τ⁻¹q^{−n/2}` up to `q ↦ q⁻¹`.
#[test]
fn a1_eigenvalues() {
    let ctx = a1(Label::Specialized(vec![qr(1, 3)]));
    let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1)).unwrap();
    let sym = orbit_sum(&ctx.rd, &pi);
    for n in 0..5 {
        let lambda = ctx.rd.lat_l.point(&[n]);
        let ev = eigenvalue_twist(&ctx, &sym, &lambda).unwrap();
        let e = qr(1, 6) + qr(n, 2);
        let a = Frac::from_mono(ctx.ring.q_pow(e).unwrap()) + Frac::from_mono(ctx.ring.q_pow(-e).unwrap());
        assert_eq!(ev, a, "n = {n}");
    }
}
