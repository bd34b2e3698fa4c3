//! The Askey-Wilson (rank-one Koornwinder) operator, built twice: from the
//! Hecke algebra and from the closed formula.

use macdonald_hc::heckeops::{Context, Label};
use macdonald_hc::macops::{gamma_hc, macdonald_operator, pi_prime, PiSel, Route};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};
use macdonald_hc::serial::op_to_json;

fn main() -> macdonald_hc::Result<()> {
    let ctx = Context::new(RootDatum::build(Case::C, CartanType::C, 1)?, Label::Generic)?;
    let pi = pi_prime(&ctx.rd, PiSel::Quasi)?;
    let hecke = macdonald_operator(&ctx, &pi, Route::Hecke)?;
    let explicit = macdonald_operator(&ctx, &pi, Route::Explicit)?;
    println!("routes agree: {}", hecke.equals(&explicit));
    for term in op_to_json(&ctx, &explicit) {
        println!("shift {:?}:\n  ({}) / ({})", term.shift, term.num, term.den);
    }
    let symbol = gamma_hc(&ctx, &explicit)?;
    println!("Harish-Chandra image has {} terms", symbol.len());
    Ok(())
}
