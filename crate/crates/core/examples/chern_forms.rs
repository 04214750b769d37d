//! The Chern superconnection of a Koszul complex with a non-constant metric,
//! its curvature and Chern forms, and the rescaling law.

use superconn::check::all_passed;
use superconn::chern::{rescale_check, verify_chern_connection, verify_chern_form, verify_curvature, ChernData};
use superconn::fixtures::{koszul, koszul_unimodular_gauge};
use superconn::metric::HermitianMetric;
use superconn::scalar::rat;

fn main() -> anyhow::Result<()> {
    let m = koszul();
    let (g, g_inv) = koszul_unimodular_gauge();
    let h = HermitianMetric::identity(m.ring(), m.bundle()).gauged(&g, &g_inv)?;
    let data = ChernData::new(&m, &h)?;
    for c in verify_chern_connection(&m, &h, data.b()).into_iter().chain(verify_curvature(&m, data.b(), data.curvature())) {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    for i in 0..=2 {
        println!("β_{i} = {}", data.beta(i));
    }
    for k in 0..=2 {
        let omega = data.chern_form(k);
        println!("ω_{k} = {omega}");
        println!("  closed and of pure type: {}", all_passed(&verify_chern_form(&omega)));
    }
    for t in [rat(2, 1), rat(1, 2)] {
        println!("rescaling by t = {t}: {}", all_passed(&rescale_check(&m, &h, 2, &t)?));
    }
    Ok(())
}
