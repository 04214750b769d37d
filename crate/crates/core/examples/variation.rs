//! First-order metric variation in dual-number arithmetic.

use superconn::chern::variation_check;
use superconn::fixtures::line_bundle;
use superconn::scalar::Scalar;
use superconn::SuperOperator;

fn main() -> anyhow::Result<()> {
    let inst = line_bundle(1);
    let m = &inst.superconnection;
    let h = inst.metric.as_ref().expect("metric");
    let r = m.ring();
    let weight = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)) * &Scalar::p1_weight(r, 1);
    let dh = SuperOperator::identity(r, m.bundle()).scale(&weight);
    for c in variation_check(m, h, &dh, 1)? {
        println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    Ok(())
}
