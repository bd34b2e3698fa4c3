//! Harish-Chandra series of type A1: the formal series, its eigen-equation,
//! and its specialization to a Macdonald polynomial.

use macdonald_hc::algebra::lattice::qr;
use macdonald_hc::hcseries::{hc_series_formal, hc_series_specialized, generator_operators, polynomial_mismatches};
use macdonald_hc::heckeops::{orbit_sum, Context, Label};
use macdonald_hc::macops::{macdonald_operator, macdonald_polynomial, pi_prime, PiSel, Route};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};

fn main() -> macdonald_hc::Result<()> {
    let ctx = Context::new(RootDatum::build(Case::A, CartanType::A, 1)?, Label::Generic)?;
    let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1))?;
    let s = hc_series_formal(&ctx, &pi, 3)?;
    for (x, g) in &s.coeffs {
        let (num, den) = ctx.ring.fmt_frac(g, "xi");
        println!("Gamma{x:?} = ({num}) / ({den})");
    }

    // With k = 1/3 the series at a dominant weight truncates to the polynomial.
    let ctx = Context::new(RootDatum::build(Case::A, CartanType::A, 1)?, Label::Specialized(vec![qr(1, 3)]))?;
    let lambda = ctx.rd.lat_l.point(&[3]);
    let d = macdonald_operator(&ctx, &pi, Route::Explicit)?;
    let p = macdonald_polynomial(&ctx, &d, &orbit_sum(&ctx.rd, &pi), &lambda)?;
    let s = hc_series_specialized(&ctx, &generator_operators(&ctx, 5)?, &pi, &lambda, 5)?;
    println!("mismatches against P_3: {:?}", polynomial_mismatches(&ctx, &s, &p)?);
    Ok(())
}
