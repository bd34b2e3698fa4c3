//! Rank-one reduction of the Macdonald operator along each simple root of B2.

use macdonald_hc::heckeops::{Context, Label};
use macdonald_hc::macops::{pi_prime, supported_pis};
use macdonald_hc::rankone::verify_all;
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};

fn main() -> macdonald_hc::Result<()> {
    let ctx = Context::new(RootDatum::build(Case::A, CartanType::B, 2)?, Label::Generic)?;
    for sel in supported_pis(&ctx.rd) {
        let pi = pi_prime(&ctx.rd, sel)?;
        let (cases, checks) = verify_all(&ctx, &pi)?;
        for c in cases {
            println!("{} i={} part {:?}: {}", sel.tag(), c.index, c.part, c.identity_holds);
        }
        let failed = checks.iter().filter(|c| !c.pass).count();
        println!("{}: {} auxiliary checks, {failed} failed", sel.tag(), checks.len());
    }
    Ok(())
}
