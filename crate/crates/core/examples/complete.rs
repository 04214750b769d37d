//! Completing `∂̄ + γ + A` to a flat superconnection, and the forced
//! obstruction when γ = 0 and A is curved.

use superconn::fixtures::gauged_koszul;
use superconn::ladder::complete_to_flat;
use superconn::scalar::{RingSpec, Scalar};
use superconn::{Error, Form, GradedBundle, SuperOperator};

fn main() -> anyhow::Result<()> {
    let g = gauged_koszul();
    let flat = complete_to_flat(g.bundle(), g.gamma(), g.connection(), 3)?;
    println!("recovered {} betas; flat: {}", flat.betas().len(), flat.is_flat());

    let r = RingSpec::poly(2);
    let b = GradedBundle::unit();
    let a = SuperOperator::from_entries(r, &b, &b, [(0, 0, Form::dzbar(r, 1).scale(&Scalar::zbar(r, 2)))])?;
    match complete_to_flat(&b, &SuperOperator::zero_endo(r, &b), &a, 3) {
        Err(Error::Obstruction { level, residue }) => println!("obstructed at level {level}: residue {residue}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
