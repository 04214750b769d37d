//! ∂̄∂-potentials for the change of Chern forms under `h ↦ g†hg`.
//!
//! `det g = 1`, so `ω_1` does not move; `ω_2` changes by an exact top form
//! whose potential needs degree 2.

use superconn::bott_chern::{exactness_witness, ExactnessKind};
use superconn::chern::ChernData;
use superconn::fixtures::{koszul, koszul_unimodular_gauge};
use superconn::metric::HermitianMetric;
use superconn::Error;

fn main() -> anyhow::Result<()> {
    let m = koszul();
    let h = HermitianMetric::identity(m.ring(), m.bundle());
    let (g, g_inv) = koszul_unimodular_gauge();
    let h2 = h.gauged(&g, &g_inv)?;
    let a = ChernData::new(&m, &h)?;
    let b = ChernData::new(&m, &h2)?;
    for k in 1..=2 {
        let w = &b.chern_form(k) - &a.chern_form(k);
        println!("ω_{k}(g†hg) - ω_{k}(h) = {w}");
        for bound in [1, 2] {
            match exactness_witness(&w, ExactnessKind::DdBar, bound) {
                Ok(eta) => println!("  bound {bound}: η = {eta}"),
                Err(e @ Error::TruncationOverflow { .. }) => println!("  bound {bound}: {e}"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}
