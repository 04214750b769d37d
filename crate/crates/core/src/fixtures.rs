//! The shipped example instances, built in code.
//!
//! `examples/write_fixtures.rs` serializes these into `fixtures/`; the test
//! suite regenerates them and compares bytes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::GradedBundle;
use crate::cli::Command;
use crate::connection::{gauge, DbarSuperconnection};
use crate::form::Form;
use crate::io::{Exactness, Instance};
use crate::metric::{unimodular, HermitianMetric};
use crate::operator::SuperOperator;
use crate::random::{koszul_complex, random_strict_gauge};
use crate::scalar::{rat, RingSpec, Scalar};

pub struct Fixture {
    /// File stem inside `fixtures/`.
    pub name: &'static str,
    /// The command the fixture is meant for; it passes with default flags
    /// unless `max_k` is set.
    pub command: Command,
    pub max_k: Option<u32>,
    pub instance: Instance,
}

/// `K(z_1, z_2)` on the bidisc.
pub fn koszul() -> DbarSuperconnection {
    let r = RingSpec::poly(2);
    koszul_complex(r, &[Scalar::z(r, 1), Scalar::z(r, 2)]).expect("Koszul complexes are flat")
}

/// The Koszul complex moved by a seeded strict gauge, so that it carries betas.
pub fn gauged_koszul() -> DbarSuperconnection {
    let m = koszul();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phi = random_strict_gauge(&mut rng, m.ring(), m.bundle(), 1, 2);
    gauge(&m, &phi).expect("strict gauges apply")
}

/// `O(k)` on the P1 model with the Fubini-Study power metric.
pub fn line_bundle(k: i32) -> Instance {
    let b = GradedBundle::unit();
    Instance::new(DbarSuperconnection::trivial(RingSpec::p1(), &b))
        .with_metric(HermitianMetric::p1_line_weights(&b, &[k]).expect("valid weights"))
}

/// `g = 1 + (z_1 zbar_2 + zbar_1^2) E` inside the rank-two degree of the
/// Koszul bundle.
pub fn koszul_unimodular_gauge() -> (SuperOperator, SuperOperator) {
    let m = koszul();
    let r = m.ring();
    let b = m.bundle();
    let u = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 2)) + &Scalar::zbar(r, 1).pow(2);
    let n = SuperOperator::block_entry(r, b, b, -1, 1, -1, 0, Form::scalar(u));
    unimodular(&n).expect("strictly upper triangular")
}

pub fn all() -> Vec<Fixture> {
    let mut out = Vec::new();
    let fixture = |name, command, instance| Fixture { name, command, max_k: None, instance };

    out.push(fixture("koszul", Command::Check, Instance::new(koszul())));
    out.push(fixture("gauged", Command::Normalize, Instance::new(gauged_koszul())));

    let g = gauged_koszul();
    let stripped = DbarSuperconnection::new(g.bundle(), g.gamma().clone(), g.connection().clone(), vec![]).expect("shape");
    let mut inst = Instance::new(stripped);
    inst.params.degree_bound = Some(3);
    out.push(fixture("incomplete", Command::Complete, inst));

    out.push(Fixture { name: "o2", command: Command::ChernNumber, max_k: Some(1), instance: line_bundle(2) });

    let b = GradedBundle::new([(0, 1), (1, 1)]);
    let zero_map = Instance::new(DbarSuperconnection::trivial(RingSpec::p1(), &b))
        .with_metric(HermitianMetric::p1_line_weights(&b, &[3, 1]).expect("valid weights"));
    out.push(Fixture { name: "zero_map", command: Command::ChernNumber, max_k: Some(1), instance: zero_map });

    let m = koszul();
    let (g, g_inv) = koszul_unimodular_gauge();
    let h = HermitianMetric::identity(m.ring(), m.bundle()).gauged(&g, &g_inv).expect("unimodular");
    let mut inst = Instance::new(m).with_metric(h);
    inst.params.t = vec![rat(2, 1), rat(3, 1), rat(1, 2)];
    out.push(fixture("rescale", Command::RescaleCheck, inst));

    let mut inst = line_bundle(1);
    let r = RingSpec::p1();
    let weight = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)) * &Scalar::p1_weight(r, 1);
    inst.params.delta_h = Some(SuperOperator::identity(r, &GradedBundle::unit()).scale(&weight));
    inst.params.max_k = Some(1);
    out.push(fixture("variation", Command::VariationCheck, inst));

    let r = RingSpec::poly(1);
    let b = GradedBundle::new([(0, 1), (1, 1)]);
    let mut inst = Instance::new(DbarSuperconnection::trivial(r, &b));
    inst.params.alpha = Some(SuperOperator::block_entry(r, &b, &b, 0, 0, 1, 0, Form::scalar(Scalar::z(r, 1))));
    out.push(fixture("twist", Command::Twist, inst));

    let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
    let mut inst = Instance::new(unit.clone());
    inst.second = Some(unit);
    inst.params.degree_bound = Some(2);
    out.push(fixture("hom_h0", Command::HomH0, inst));

    let m = koszul();
    let h = HermitianMetric::identity(m.ring(), m.bundle());
    let (g, g_inv) = koszul_unimodular_gauge();
    let mut inst = Instance::new(m).with_metric(h.clone());
    inst.params.second_metric = Some(h.gauged(&g, &g_inv).expect("unimodular"));
    inst.params.exactness = Some(Exactness::DdBar);
    inst.params.degree_bound = Some(4);
    out.push(fixture("witness", Command::Witness, inst));

    out
}
