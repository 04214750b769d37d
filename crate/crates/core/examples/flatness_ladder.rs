//! The flatness ladder of a Koszul complex, before and after a perturbation.

use superconn::connection::brute_force_flat;
use superconn::fixtures::{gauged_koszul, koszul};
use superconn::{DbarSuperconnection, Form, SuperOperator};

fn report(label: &str, m: &DbarSuperconnection) {
    println!("{label}: {} betas", m.betas().len());
    for (q, r) in m.flatness_residues().iter().enumerate() {
        println!("  residue {q}: {}", if r.is_zero() { "0".to_string() } else { r.to_string() });
    }
    println!("  brute force D̄^2 = 0: {}", brute_force_flat(m));
}

fn main() -> anyhow::Result<()> {
    report("Koszul complex K(z1, z2)", &koszul());
    report("after a strict gauge", &gauged_koszul());

    // A constant connection matrix that does not commute with γ breaks the second rung.
    let m = koszul();
    let r = m.ring();
    let b = m.bundle();
    let a = SuperOperator::block_entry(r, b, b, 0, 0, 0, 0, Form::dzbar(r, 1));
    let bent = DbarSuperconnection::new(b, m.gamma().clone(), a, vec![])?;
    report("with A = dzbar_1 on the degree-0 line", &bent);
    Ok(())
}
