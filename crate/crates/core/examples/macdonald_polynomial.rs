//! Monic Macdonald polynomial of type A2 with generic parameters, checked
//! against a second commuting operator.

use macdonald_hc::heckeops::{orbit_sum, Context, Label};
use macdonald_hc::macops::{is_eigenfunction, macdonald_operator, macdonald_polynomial, pi_prime, PiSel, Route};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};
use macdonald_hc::serial::sym_to_json;

fn main() -> macdonald_hc::Result<()> {
    let ctx = Context::new(RootDatum::build(Case::A, CartanType::A, 2)?, Label::Generic)?;
    let lambda = ctx.rd.lat_l.point(&[2, 1]);
    let lambda = ctx.rd.dominant(&lambda);
    let pi1 = pi_prime(&ctx.rd, PiSel::Minuscule(1))?;
    let d1 = macdonald_operator(&ctx, &pi1, Route::Explicit)?;
    let p = macdonald_polynomial(&ctx, &d1, &orbit_sum(&ctx.rd, &pi1), &lambda)?;
    for c in sym_to_json(&ctx, &p)? {
        println!("m{:?}: ({}) / ({})", c.exp, c.num, c.den);
    }
    let pi2 = pi_prime(&ctx.rd, PiSel::Minuscule(2))?;
    let d2 = macdonald_operator(&ctx, &pi2, Route::Explicit)?;
    println!("eigenfunction of D_2: {}", is_eigenfunction(&ctx, &d2, &orbit_sum(&ctx.rd, &pi2), &lambda, &p)?);
    Ok(())
}
