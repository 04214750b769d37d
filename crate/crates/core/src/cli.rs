//! Command dispatch behind the `superconn` binary.
//!
//! Every command turns an [`Instance`] into a [`Report`]; a command that
//! produces a new superconnection also returns it as an instance so that it
//! can be written out and fed back in.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bott_chern::{exactness_witness, ExactnessKind};
use crate::check::Check;
use crate::chern::{chern_number_of_form, rescale_check, variation_check, verify_chern_connection, verify_chern_form, verify_curvature, ChernData};
use crate::cohomology::h0_hom;
use crate::connection::{brute_force_flat, DbarSuperconnection, TwistCochain};
use crate::error::{Error, Result};
use crate::io::{form_to_terms, operator_to_entries, superconnection_to_file, ErrorReport, Exactness, Instance, Report, Status, SCHEMA_VERSION};
use crate::ladder::complete_to_flat;
use crate::normal_form::normalize;
use crate::random::random_section;
use crate::scalar::{format_rational, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Command {
    Check,
    Normalize,
    Complete,
    Chern,
    ChernNumber,
    RescaleCheck,
    VariationCheck,
    Twist,
    HomH0,
    Witness,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Check,
        Command::Normalize,
        Command::Complete,
        Command::Chern,
        Command::ChernNumber,
        Command::RescaleCheck,
        Command::VariationCheck,
        Command::Twist,
        Command::HomH0,
        Command::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Normalize => "normalize",
            Command::Complete => "complete",
            Command::Chern => "chern",
            Command::ChernNumber => "chern-number",
            Command::RescaleCheck => "rescale-check",
            Command::VariationCheck => "variation-check",
            Command::Twist => "twist",
            Command::HomH0 => "hom-h0",
            Command::Witness => "witness",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub max_k: Option<u32>,
    pub degree_bound: Option<u32>,
    pub seed: u64,
    pub timing: bool,
}

pub const DEFAULT_MAX_K: u32 = 2;
pub const RANDOM_SECTIONS: usize = 8;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    /// A new instance produced by `normalize`, `complete` or `twist`.
    pub output: Option<Instance>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.status.exit_code()
    }
}

#[derive(Default)]
struct Body {
    checks: Vec<Check>,
    results: BTreeMap<String, Value>,
    output: Option<Instance>,
}

impl Body {
    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check::new(name, passed));
    }

    fn extend(&mut self, prefix: &str, checks: Vec<Check>) {
        for c in checks {
            self.check(format!("{prefix}{}", c.name), c.passed);
        }
    }

    fn result(&mut self, key: impl Into<String>, value: Value) {
        self.results.insert(key.into(), value);
    }
}

/// Exit-code class and a stable name for each error.
pub fn classify(e: &Error) -> (Status, &'static str) {
    match e {
        Error::RingMismatch { .. } => (Status::InputError, "ring_mismatch"),
        Error::IndexOutOfRange { .. } => (Status::InputError, "index_out_of_range"),
        Error::UnsupportedRing { .. } => (Status::InputError, "unsupported_ring"),
        Error::Divergent { .. } => (Status::InputError, "divergent"),
        Error::ShapeMismatch(_) => (Status::InputError, "shape_mismatch"),
        Error::Precondition(_) => (Status::InputError, "precondition"),
        Error::NonStrictGauge(_) => (Status::InputError, "non_strict_gauge"),
        Error::InvalidMetric(_) => (Status::InputError, "invalid_metric"),
        Error::Parse { .. } => (Status::InputError, "parse"),
        Error::Unsupported(_) => (Status::InputError, "unsupported"),
        Error::MaurerCartan { .. } => (Status::VerificationFailure, "maurer_cartan"),
        Error::Obstruction { .. } => (Status::VerificationFailure, "obstruction"),
        Error::NotExact { .. } => (Status::VerificationFailure, "not_exact"),
        Error::Verification(_) => (Status::VerificationFailure, "verification"),
        Error::TruncationOverflow { .. } => (Status::TruncationOverflow, "truncation_overflow"),
    }
}

fn flag_echo(flags: &Flags) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    if let Some(k) = flags.max_k {
        m.insert("max_k".into(), json!(k));
    }
    if let Some(d) = flags.degree_bound {
        m.insert("degree_bound".into(), json!(d));
    }
    m.insert("seed".into(), json!(flags.seed));
    m
}

fn report(command: Command, flags: &Flags) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        command: command.name().into(),
        flags: flag_echo(flags),
        status: Status::Pass,
        checks: Vec::new(),
        results: BTreeMap::new(),
        error: None,
        timing_ms: None,
    }
}

/// Report for text that failed to parse.
pub fn input_error(command: Command, flags: &Flags, e: &Error) -> Outcome {
    let mut r = report(command, flags);
    let (status, kind) = classify(e);
    r.status = status;
    r.error = Some(ErrorReport { kind: kind.into(), message: e.to_string() });
    Outcome { report: r, output: None }
}

/// Parses `text` and runs `command` on it.
pub fn run_text(command: Command, text: &str, flags: &Flags) -> Outcome {
    match crate::io::parse_instance(text) {
        Ok(inst) => run(command, &inst, flags),
        Err(e) => input_error(command, flags, &e),
    }
}

pub fn run(command: Command, instance: &Instance, flags: &Flags) -> Outcome {
    let start = Instant::now();
    let mut r = report(command, flags);
    let mut body = Body::default();
    let result = match command {
        Command::Check => check(instance, flags, &mut body),
        Command::Normalize => normalize_cmd(instance, &mut body),
        Command::Complete => complete(instance, flags, &mut body),
        Command::Chern => chern(instance, flags, &mut body),
        Command::ChernNumber => chern_number_cmd(instance, flags, &mut body),
        Command::RescaleCheck => rescale(instance, flags, &mut body),
        Command::VariationCheck => variation(instance, flags, &mut body),
        Command::Twist => twist(instance, &mut body),
        Command::HomH0 => hom_h0(instance, flags, &mut body),
        Command::Witness => witness(instance, flags, &mut body),
    };
    r.checks = body.checks;
    r.results = body.results;
    match result {
        Ok(()) => {
            if !r.checks.iter().all(|c| c.passed) {
                r.status = Status::VerificationFailure;
            }
        }
        Err(e) => {
            let (status, kind) = classify(&e);
            r.status = status;
            r.error = Some(ErrorReport { kind: kind.into(), message: e.to_string() });
            body.output = None;
        }
    }
    if flags.timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Outcome { report: r, output: body.output }
}

fn max_k(instance: &Instance, flags: &Flags) -> u32 {
    flags.max_k.or(instance.params.max_k).unwrap_or(DEFAULT_MAX_K)
}

fn degree_bound(instance: &Instance, flags: &Flags, default: u32) -> u32 {
    flags.degree_bound.or(instance.params.degree_bound).unwrap_or(default)
}

fn metric(instance: &Instance) -> Result<&crate::metric::HermitianMetric> {
    instance.metric.as_ref().ok_or_else(|| Error::Precondition("instance has no metric".into()))
}

fn entries(op: &crate::operator::SuperOperator) -> Value {
    serde_json::to_value(operator_to_entries(op)).expect("entries serialize")
}

fn form(f: &crate::form::Form) -> Value {
    serde_json::to_value(form_to_terms(f)).expect("terms serialize")
}

fn check(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let residues = m.flatness_residues();
    let mut listed = Vec::new();
    for (q, r) in residues.iter().enumerate() {
        body.check(format!("ladder residue {q} vanishes"), r.is_zero());
        listed.push(json!({ "level": q, "vanishes": r.is_zero(), "entries": entries(r) }));
    }
    body.result("residues", Value::Array(listed));
    let brute = brute_force_flat(m);
    body.check("D̄^2 = 0 on spanning sections", brute);
    let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
    let random = (0..RANDOM_SECTIONS).all(|_| {
        let s = random_section(&mut rng, m.ring(), m.bundle(), 2, 3);
        m.apply(&m.apply(&s)).is_zero()
    });
    body.check(format!("D̄^2 = 0 on {RANDOM_SECTIONS} seeded random sections"), random);
    body.check("brute force agrees with the ladder", brute == m.is_flat());
    Ok(())
}

fn normalize_cmd(instance: &Instance, body: &mut Body) -> Result<()> {
    let cert = normalize(&instance.superconnection)?;
    body.check("certificate: gauge(input, phi_total) = normal form", cert.verify(&instance.superconnection).is_ok());
    body.check("normal form has no betas", cert.normal.betas().is_empty());
    body.result("normal", serde_json::to_value(superconnection_to_file(&cert.normal)).expect("serialize"));
    body.result("phi_total", entries(cert.phi_total.total()));
    let mut out = instance.clone();
    out.superconnection = cert.normal;
    out.params.gauge = Some(cert.phi_total.total().clone());
    body.output = Some(out);
    Ok(())
}

fn complete(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    if !m.betas().is_empty() {
        return Err(Error::Precondition("complete expects only gamma and the connection matrix".into()));
    }
    let bound = degree_bound(instance, flags, m.total().coefficient_degree() + 2);
    let flat = complete_to_flat(m.bundle(), m.gamma(), m.connection(), bound)?;
    body.check("completed superconnection is flat", flat.is_flat());
    body.check("D̄^2 = 0 on spanning sections", brute_force_flat(&flat));
    body.result("betas", Value::Array(flat.betas().iter().map(entries).collect()));
    let mut out = instance.clone();
    out.superconnection = flat;
    body.output = Some(out);
    Ok(())
}

fn chern(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let h = metric(instance)?;
    let data = ChernData::new(m, h)?;
    body.extend("", verify_chern_connection(m, h, data.b()));
    body.extend("", verify_curvature(m, data.b(), data.curvature()));
    body.result("B", entries(data.b()));
    body.result("curvature", entries(data.curvature()));
    for k in 0..=max_k(instance, flags) {
        let omega = data.chern_form(k);
        body.extend(&format!("k={k}: "), verify_chern_form(&omega));
        body.result(format!("omega_{k}"), form(&omega));
        body.result(format!("omega_{k}_top"), form(&omega.component(k as usize, k as usize)));
    }
    Ok(())
}

fn chern_number_cmd(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    if !m.ring().is_p1() {
        return Err(Error::UnsupportedRing { op: "chern-number", ring: m.ring() });
    }
    let data = ChernData::new(m, metric(instance)?)?;
    for k in 0..=max_k(instance, flags) {
        let omega = data.chern_form(k);
        body.extend(&format!("k={k}: "), verify_chern_form(&omega));
        body.result(format!("ch_{k}"), json!(format_rational(&chern_number_of_form(&omega, k)?)));
    }
    Ok(())
}

fn rescale(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let h = metric(instance)?;
    let ts: Vec<Rational> = if instance.params.t.is_empty() {
        vec![rat(2, 1), rat(3, 1), rat(1, 2)]
    } else {
        instance.params.t.clone()
    };
    for t in &ts {
        if t <= &rat(0, 1) {
            return Err(Error::Precondition(format!("rescaling parameter {} is not positive", format_rational(t))));
        }
        for k in 1..=max_k(instance, flags) {
            body.extend(&format!("t={} k={k}: ", format_rational(t)), rescale_check(m, h, k, t)?);
        }
    }
    body.result("t", Value::Array(ts.iter().map(|t| json!(format_rational(t))).collect()));
    Ok(())
}

fn variation(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let h = metric(instance)?;
    let dh = instance.params.delta_h.as_ref().ok_or_else(|| Error::Precondition("variation-check needs params.delta_h".into()))?;
    for k in 1..=max_k(instance, flags) {
        body.extend(&format!("k={k}: "), variation_check(m, h, dh, k)?);
    }
    Ok(())
}

fn twist(instance: &Instance, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let alpha = instance.params.alpha.as_ref().ok_or_else(|| Error::Precondition("twist needs params.alpha".into()))?;
    let alpha = TwistCochain::new(alpha.clone())?;
    let residue = alpha.maurer_cartan_residue(m)?;
    body.check("Maurer-Cartan residue vanishes", residue.is_zero());
    body.result("maurer_cartan_residue", entries(&residue));
    if !residue.is_zero() {
        return Ok(());
    }
    let twisted = m.twist(&alpha)?;
    body.check("twisted superconnection is flat", twisted.is_flat());
    let mut out = instance.clone();
    out.superconnection = twisted;
    out.params.alpha = None;
    body.output = Some(out);
    Ok(())
}

fn hom_h0(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let m = &instance.superconnection;
    let n = instance.second.as_ref().unwrap_or(m);
    let bound = degree_bound(instance, flags, 2);
    let h = h0_hom(m, n, bound)?;
    let closed = h
        .basis
        .iter()
        .map(|phi| DbarSuperconnection::hom_differential(m, n, phi).map(|d| d.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    body.check("basis elements are closed", closed.iter().all(|&c| c));
    body.result("dimension", json!(h.dimension));
    body.result("basis", Value::Array(h.basis.iter().map(entries).collect()));
    Ok(())
}

fn witness(instance: &Instance, flags: &Flags, body: &mut Body) -> Result<()> {
    let kind = match instance.params.exactness {
        Some(Exactness::D) => ExactnessKind::D,
        _ => ExactnessKind::DdBar,
    };
    let apply = |eta: &crate::form::Form| match kind {
        ExactnessKind::D => eta.d(),
        ExactnessKind::DdBar => eta.del().delbar(),
    };
    let bound = degree_bound(instance, flags, 4);
    if let Some(w) = &instance.params.form {
        let eta = exactness_witness(w, kind, bound)?;
        body.check("witness reproduces the form", apply(&eta) == *w);
        body.result("potential", form(&eta));
        return Ok(());
    }
    let m = &instance.superconnection;
    let h = metric(instance)?;
    let h2 = instance
        .params
        .second_metric
        .as_ref()
        .ok_or_else(|| Error::Precondition("witness needs params.form or params.second_metric".into()))?;
    let a = ChernData::new(m, h)?;
    let b = ChernData::new(m, h2)?;
    for k in 1..=max_k(instance, flags) {
        let w = &b.chern_form(k) - &a.chern_form(k);
        let eta = exactness_witness(&w, kind, bound)?;
        body.check(format!("k={k}: witness reproduces ω_k(h') - ω_k(h)"), apply(&eta) == w);
        body.result(format!("difference_{k}"), form(&w));
        body.result(format!("potential_{k}"), form(&eta));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::GradedBundle;
    use crate::metric::HermitianMetric;
    use crate::random::koszul_complex;
    use crate::scalar::{RingSpec, Scalar};

    #[test]
    fn check_passes_on_a_flat_complex() {
        let r = RingSpec::poly(2);
        let m = koszul_complex(r, &[Scalar::z(r, 1), Scalar::z(r, 2)]).unwrap();
        let out = run(Command::Check, &Instance::new(m), &Flags::default());
        assert_eq!(out.exit_code(), 0, "{}", out.report.to_text());
        assert!(out.report.results["residues"].as_array().unwrap().iter().all(|r| r["vanishes"] == json!(true)));
    }

    #[test]
    fn chern_number_of_o2() {
        let b = GradedBundle::unit();
        let inst = Instance::new(DbarSuperconnection::trivial(RingSpec::p1(), &b))
            .with_metric(HermitianMetric::p1_line_weights(&b, &[2]).unwrap());
        let flags = Flags { max_k: Some(1), ..Flags::default() };
        let out = run(Command::ChernNumber, &inst, &flags);
        assert_eq!(out.exit_code(), 0);
        assert_eq!(out.report.results["ch_1"], json!("2"));
        assert_eq!(out.report.results["ch_0"], json!("1"));
    }

    #[test]
    fn exit_codes_by_error_class() {
        let b = GradedBundle::unit();
        let inst = Instance::new(DbarSuperconnection::trivial(RingSpec::poly(1), &b));
        assert_eq!(run(Command::Chern, &inst, &Flags::default()).exit_code(), 2);
        assert_eq!(run_text(Command::Check, "{", &Flags::default()).exit_code(), 2);
        let curved = {
            let r = RingSpec::poly(2);
            let a = crate::operator::SuperOperator::from_entries(
                r,
                &b,
                &b,
                [(0, 0, crate::form::Form::dzbar(r, 1).scale(&Scalar::zbar(r, 2)))],
            )
            .unwrap();
            DbarSuperconnection::new(&b, crate::operator::SuperOperator::zero_endo(r, &b), a, vec![]).unwrap()
        };
        assert_eq!(run(Command::Check, &Instance::new(curved), &Flags::default()).exit_code(), 1);
    }
}
