//! Builds a root datum and checks the affine Hecke relations of the
//! difference-reflection operators on a box of monomials.

use macdonald_hc::heckeops::{verify_presentation, Context, Label};
use macdonald_hc::rootdata::{CartanType, Case, RootDatum};

fn main() -> macdonald_hc::Result<()> {
    let rd = RootDatum::build(Case::A, CartanType::A, 2)?;
    println!("{}: |W0| = {}, {} positive roots", rd.describe(), rd.order(), rd.positive.len());
    let ctx = Context::new(rd, Label::Generic)?;
    for check in verify_presentation(&ctx, 3)? {
        println!("{:<32} {}", check.name, if check.pass { "ok" } else { "FAILED" });
    }
    Ok(())
}
