//! Degree-zero cohomology of Hom complexes, Maurer-Cartan twists and cones.

use superconn::cohomology::h0_hom;
use superconn::connection::TwistCochain;
use superconn::fixtures::koszul;
use superconn::scalar::{RingSpec, Scalar};
use superconn::{DbarSuperconnection, Form, GradedBundle, SuperOperator};

fn main() -> anyhow::Result<()> {
    let r = RingSpec::poly(1);
    let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
    for d in 0..=3 {
        println!("dim H^0 Hom(O, O) up to degree {d}: {}", h0_hom(&unit, &unit, d)?.dimension);
    }

    let b = GradedBundle::new([(0, 1), (1, 1)]);
    let m = DbarSuperconnection::trivial(r, &b);
    let alpha = TwistCochain::new(SuperOperator::block_entry(r, &b, &b, 0, 0, 1, 0, Form::scalar(Scalar::z(r, 1))))?;
    println!("Maurer-Cartan residue vanishes: {}", alpha.maurer_cartan_residue(&m)?.is_zero());
    let twisted = m.twist(&alpha)?;
    println!("twisted: {twisted}");

    let k = koszul();
    let id = SuperOperator::identity(k.ring(), k.bundle());
    let cone = DbarSuperconnection::cone(&k, &k, &id)?;
    println!("cone(id on K(z1,z2)) has bundle {} and is flat: {}", cone.bundle(), cone.is_flat());
    Ok(())
}
