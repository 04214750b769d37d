//! Chern numbers on the P1 model: line bundles, a zero-map complex and the
//! cone of an identity map.

use superconn::chern::chern_number;
use superconn::fixtures::line_bundle;
use superconn::metric::HermitianMetric;
use superconn::scalar::RingSpec;
use superconn::{DbarSuperconnection, GradedBundle, SuperOperator};

fn main() -> anyhow::Result<()> {
    for k in -2..=3 {
        let inst = line_bundle(k);
        let h = inst.metric.as_ref().expect("metric");
        println!("ch_1(O({k})) = {}", chern_number(&inst.superconnection, h, 1)?);
    }

    let b = GradedBundle::new([(0, 1), (1, 1)]);
    let m = DbarSuperconnection::trivial(RingSpec::p1(), &b);
    let h = HermitianMetric::p1_line_weights(&b, &[3, 1])?;
    println!("O(3) -0-> O(1): ch_0 = {}, ch_1 = {}", chern_number(&m, &h, 0)?, chern_number(&m, &h, 1)?);

    let inst = line_bundle(2);
    let o2 = &inst.superconnection;
    let h = inst.metric.as_ref().expect("metric");
    let id = SuperOperator::identity(o2.ring(), o2.bundle());
    let cone = DbarSuperconnection::cone(o2, o2, &id)?;
    let hc = h.shift(1).direct_sum(h)?;
    println!("cone(id on O(2)): ch_0 = {}, ch_1 = {}", chern_number(&cone, &hc, 0)?, chern_number(&cone, &hc, 1)?);
    Ok(())
}
