//! Exact scalars and Dolbeault forms: Wirtinger derivatives, the Dolbeault
//! differentials, conjugation and integration over the P1 model.

use superconn::scalar::{GaussianRational, RingSpec, Scalar, Wirtinger};
use superconn::Form;

fn main() -> anyhow::Result<()> {
    let r = RingSpec::poly(2);
    let z1 = Scalar::z(r, 1);
    let w2 = Scalar::zbar(r, 2);
    let f = &(&z1.pow(2) * &w2) + &Scalar::constant(r, GaussianRational::ratio(1, 3));
    println!("f            = {f}");
    println!("∂f/∂z_1      = {}", f.wirtinger(Wirtinger::Z, 1)?);
    println!("∂f/∂zbar_2   = {}", f.wirtinger(Wirtinger::Zbar, 2)?);
    println!("conj f       = {}", f.conj());

    let omega = Form::scalar(f.clone()).wedge(&Form::dz(r, 2));
    println!("ω            = {omega}");
    println!("∂̄ω           = {}", omega.delbar());
    println!("dω           = {}", omega.d());
    println!("d dω = 0     : {}", omega.d().d().is_zero());

    // On the P1 model, (1/π)∫ (1+|z|^2)^-2 dA = 1.
    let p = RingSpec::p1();
    let fs = Scalar::p1_weight(p, 2);
    println!("∫ (1+|z|^2)^-2 dA = {}", fs.integrate_p1()?);
    let g = &(&Scalar::z(p, 1) * &Scalar::zbar(p, 1)) * &Scalar::p1_weight(p, 3);
    println!("∫ |z|^2 (1+|z|^2)^-3 dA = {}", g.integrate_p1()?);

    // Dual numbers: eps^2 = 0.
    let d = RingSpec::poly(1).with_dual(true);
    let e = &Scalar::one(d) + &Scalar::eps(d);
    println!("(1 + eps)^3  = {}", e.pow(3));
    Ok(())
}
