//! For labels k = -1 the Harish-Chandra series of A2 terminates on a finite
//! support set, as for a Baker-Akhiezer function.

use macdonald_hc::algebra::lattice::q;
use macdonald_hc::hcseries::{baker_check, baker_support};
use macdonald_hc::heckeops::{Context, Label};
use macdonald_hc::macops::{pi_prime, PiSel};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};

fn main() -> macdonald_hc::Result<()> {
    let ctx = Context::new(RootDatum::build(Case::A, CartanType::A, 2)?, Label::Specialized(vec![q(-1)]))?;
    let pi = pi_prime(&ctx.rd, PiSel::Minuscule(1))?;
    let support = baker_support(&ctx)?;
    println!("support set: {support:?}");
    let samples = ctx.rd.lat_l.basis().to_vec();
    let report = baker_check(&ctx, &pi, 5, &samples)?;
    println!("violations outside support: {:?}", report.support_violations);
    println!("irregular points: {:?}", report.irregular);
    println!("normalization: {}", report.normalization_ok);
    Ok(())
}
