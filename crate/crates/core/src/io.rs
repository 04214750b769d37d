//! JSON instance files and reports.
//!
//! Rationals are written as `"p/q"` strings. Every object rejects unknown
//! fields, and serializing a parsed canonical file reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bundle::GradedBundle;
use crate::check::Check;
use crate::connection::DbarSuperconnection;
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::metric::HermitianMetric;
use crate::operator::SuperOperator;
use crate::scalar::{format_rational, parse_rational, GaussianRational, Monomial, Rational, RingKind, RingSpec, Scalar};

pub const SCHEMA_VERSION: u32 = 1;

/// `c · z^a zbar^b (1+|z|^2)^-denom_pow eps^eps dz^dz ∧ dzbar^dzbar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    #[serde(default)]
    pub denom_pow: u32,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
    #[serde(default)]
    pub dz: Vec<usize>,
    #[serde(default)]
    pub dzbar: Vec<usize>,
    #[serde(default)]
    pub eps: bool,
}

fn zero_string() -> String {
    "0".into()
}

/// One matrix entry, addressed by degree and position inside the degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub source_degree: i32,
    pub target_degree: i32,
    pub row: usize,
    pub col: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub dual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankFile {
    pub degree: i32,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperconnectionFile {
    pub gamma: Vec<EntryFile>,
    pub connection: Vec<EntryFile>,
    /// `betas[k]` is `β̄_{k+2}`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub betas: Vec<Vec<EntryFile>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub h: Vec<EntryFile>,
    pub h_inv: Vec<EntryFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecondFile {
    pub bundle: Vec<RankFile>,
    pub superconnection: SuperconnectionFile,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<EntryFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_h: Option<Vec<EntryFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_metric: Option<MetricFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<TermFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exactness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<Vec<EntryFile>>,
}

impl ParamsFile {
    fn is_empty(&self) -> bool {
        *self == ParamsFile::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub ring: RingFile,
    pub bundle: Vec<RankFile>,
    pub superconnection: SuperconnectionFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SecondFile>,
    #[serde(default, skip_serializing_if = "ParamsFile::is_empty")]
    pub params: ParamsFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    D,
    DdBar,
}

/// Command parameters carried by an instance; flags override them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub max_k: Option<u32>,
    pub degree_bound: Option<u32>,
    pub t: Vec<Rational>,
    pub alpha: Option<SuperOperator>,
    pub delta_h: Option<SuperOperator>,
    pub second_metric: Option<HermitianMetric>,
    pub form: Option<Form>,
    pub exactness: Option<Exactness>,
    pub gauge: Option<SuperOperator>,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub superconnection: DbarSuperconnection,
    pub metric: Option<HermitianMetric>,
    pub second: Option<DbarSuperconnection>,
    pub params: Params,
}

impl Instance {
    pub fn new(superconnection: DbarSuperconnection) -> Self {
        Self { superconnection, metric: None, second: None, params: Params::default() }
    }

    pub fn with_metric(mut self, h: HermitianMetric) -> Self {
        self.metric = Some(h);
        self
    }

    pub fn ring(&self) -> RingSpec {
        self.superconnection.ring()
    }

    pub fn bundle(&self) -> &GradedBundle {
        self.superconnection.bundle()
    }
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn json_err(e: serde_json::Error) -> Error {
    parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

/// Parses the raw JSON layer, rejecting unknown fields.
pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    let file: InstanceFile = serde_json::from_str(text).map_err(json_err)?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(parse_err("schema_version", format!("expected {SCHEMA_VERSION}, found {}", file.schema_version)));
    }
    Ok(file)
}

pub fn serialize_instance_file(file: &InstanceFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("instance files serialize");
    s.push('\n');
    s
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    instance_from_file(&parse_instance_file(text)?)
}

pub fn serialize_instance(instance: &Instance) -> String {
    serialize_instance_file(&instance_to_file(instance))
}

// ---- rings, bundles, terms

pub fn ring_to_file(ring: RingSpec) -> RingFile {
    match ring.kind {
        RingKind::Poly(n) => RingFile { kind: "poly".into(), n: Some(n), dual: ring.dual },
        RingKind::P1 => RingFile { kind: "p1".into(), n: None, dual: ring.dual },
    }
}

pub fn ring_from_file(f: &RingFile) -> Result<RingSpec> {
    let ring = match (f.kind.as_str(), f.n) {
        ("poly", Some(n)) if (1..=8).contains(&n) => RingSpec::poly(n),
        ("poly", n) => return Err(parse_err("ring.n", format!("polynomial ring needs 1 <= n <= 8, found {n:?}"))),
        ("p1", None | Some(1)) => RingSpec::p1(),
        ("p1", Some(n)) => return Err(parse_err("ring.n", format!("p1 has one variable, found {n}"))),
        (k, _) => return Err(parse_err("ring.kind", format!("unknown ring kind {k:?}"))),
    };
    Ok(ring.with_dual(f.dual))
}

pub fn bundle_to_file(b: &GradedBundle) -> Vec<RankFile> {
    b.ranks().iter().map(|(&degree, &rank)| RankFile { degree, rank }).collect()
}

pub fn bundle_from_file(ranks: &[RankFile], path: &str) -> Result<GradedBundle> {
    let mut seen = std::collections::BTreeSet::new();
    for (i, r) in ranks.iter().enumerate() {
        if !seen.insert(r.degree) {
            return Err(parse_err(format!("{path}[{i}].degree"), format!("degree {} listed twice", r.degree)));
        }
    }
    Ok(GradedBundle::new(ranks.iter().map(|r| (r.degree, r.rank))))
}

fn rational_field(s: &str, path: &str) -> Result<Rational> {
    parse_rational(s).map_err(|m| parse_err(path, m))
}

pub fn form_to_terms(f: &Form) -> Vec<TermFile> {
    let mut out = Vec::new();
    for (basis, s) in f.terms() {
        for (m, c) in s.terms() {
            out.push(TermFile {
                a: m.z.to_vec(),
                b: m.zbar.to_vec(),
                denom_pow: m.denom,
                re: format_rational(&c.re),
                im: format_rational(&c.im),
                dz: basis.dz_indices(),
                dzbar: basis.dzbar_indices(),
                eps: m.eps,
            });
        }
    }
    out
}

pub fn form_from_terms(ring: RingSpec, terms: &[TermFile], path: &str) -> Result<Form> {
    let n = ring.n();
    let mut out = Form::zero(ring);
    for (i, t) in terms.iter().enumerate() {
        let here = format!("{path}[{i}]");
        if t.a.len() != n || t.b.len() != n {
            return Err(parse_err(&here, format!("exponent vectors must have length {n}")));
        }
        if t.denom_pow != 0 && !ring.is_p1() {
            return Err(parse_err(format!("{here}.denom_pow"), "denominators need the p1 ring"));
        }
        if t.eps && !ring.dual {
            return Err(parse_err(format!("{here}.eps"), "eps needs a dual ring"));
        }
        for &k in t.dz.iter().chain(&t.dzbar) {
            if k == 0 || k > n {
                return Err(parse_err(&here, format!("form index {k} outside 1..={n}")));
            }
        }
        let Some((sign, basis)) = FormBasis::from_indices(&t.dz, &t.dzbar) else {
            return Err(parse_err(&here, "repeated form index"));
        };
        let c = GaussianRational::new(rational_field(&t.re, &format!("{here}.re"))?, rational_field(&t.im, &format!("{here}.im"))?);
        let c = if sign < 0 { -c } else { c };
        let mono = Monomial { z: t.a.iter().copied().collect(), zbar: t.b.iter().copied().collect(), denom: t.denom_pow, eps: t.eps };
        out += &Form::term(Scalar::from_monomial(ring, mono, c), basis);
    }
    Ok(out)
}

pub fn operator_to_entries(op: &SuperOperator) -> Vec<EntryFile> {
    let src = op.source().basis();
    let tgt = op.target().basis();
    let mut out: Vec<EntryFile> = op
        .entries()
        .iter()
        .map(|(&(i, a), f)| EntryFile {
            source_degree: src[a].0,
            target_degree: tgt[i].0,
            row: tgt[i].1,
            col: src[a].1,
            terms: form_to_terms(f),
        })
        .collect();
    out.sort_by_key(|e| (e.source_degree, e.target_degree, e.row, e.col));
    out
}

pub fn operator_from_entries(
    ring: RingSpec,
    source: &GradedBundle,
    target: &GradedBundle,
    entries: &[EntryFile],
    path: &str,
) -> Result<SuperOperator> {
    let mut op = SuperOperator::zero(ring, source, target);
    for (k, e) in entries.iter().enumerate() {
        let here = format!("{path}[{k}]");
        if e.col >= source.rank(e.source_degree) {
            return Err(parse_err(format!("{here}.col"), format!("no column {} in source degree {}", e.col, e.source_degree)));
        }
        if e.row >= target.rank(e.target_degree) {
            return Err(parse_err(format!("{here}.row"), format!("no row {} in target degree {}", e.row, e.target_degree)));
        }
        let f = form_from_terms(ring, &e.terms, &format!("{here}.terms"))?;
        op.add_to_entry(target.index(e.target_degree, e.row), source.index(e.source_degree, e.col), &f);
    }
    Ok(op)
}

fn endo_from_entries(ring: RingSpec, b: &GradedBundle, entries: &[EntryFile], path: &str) -> Result<SuperOperator> {
    operator_from_entries(ring, b, b, entries, path)
}

pub fn superconnection_to_file(m: &DbarSuperconnection) -> SuperconnectionFile {
    SuperconnectionFile {
        gamma: operator_to_entries(m.gamma()),
        connection: operator_to_entries(m.connection()),
        betas: m.betas().iter().map(operator_to_entries).collect(),
    }
}

pub fn superconnection_from_file(ring: RingSpec, bundle: &GradedBundle, f: &SuperconnectionFile, path: &str) -> Result<DbarSuperconnection> {
    let gamma = endo_from_entries(ring, bundle, &f.gamma, &format!("{path}.gamma"))?;
    let a = endo_from_entries(ring, bundle, &f.connection, &format!("{path}.connection"))?;
    let betas = f
        .betas
        .iter()
        .enumerate()
        .map(|(k, e)| endo_from_entries(ring, bundle, e, &format!("{path}.betas[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    DbarSuperconnection::new(bundle, gamma, a, betas).map_err(|e| parse_err(path, e.to_string()))
}

pub fn metric_to_file(h: &HermitianMetric) -> MetricFile {
    MetricFile { h: operator_to_entries(h.matrix()), h_inv: operator_to_entries(h.inverse()) }
}

pub fn metric_from_file(ring: RingSpec, bundle: &GradedBundle, f: &MetricFile, path: &str) -> Result<HermitianMetric> {
    let h = endo_from_entries(ring, bundle, &f.h, &format!("{path}.h"))?;
    let h_inv = endo_from_entries(ring, bundle, &f.h_inv, &format!("{path}.h_inv"))?;
    HermitianMetric::new(h, h_inv).map_err(|e| parse_err(path, e.to_string()))
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    let p = &inst.params;
    InstanceFile {
        schema_version: SCHEMA_VERSION,
        ring: ring_to_file(inst.ring()),
        bundle: bundle_to_file(inst.bundle()),
        superconnection: superconnection_to_file(&inst.superconnection),
        metric: inst.metric.as_ref().map(metric_to_file),
        second: inst.second.as_ref().map(|s| SecondFile {
            bundle: bundle_to_file(s.bundle()),
            superconnection: superconnection_to_file(s),
        }),
        params: ParamsFile {
            max_k: p.max_k,
            degree_bound: p.degree_bound,
            t: p.t.iter().map(format_rational).collect(),
            alpha: p.alpha.as_ref().map(operator_to_entries),
            delta_h: p.delta_h.as_ref().map(operator_to_entries),
            second_metric: p.second_metric.as_ref().map(metric_to_file),
            form: p.form.as_ref().map(form_to_terms),
            exactness: p.exactness.map(|e| match e {
                Exactness::D => "d".to_string(),
                Exactness::DdBar => "ddbar".to_string(),
            }),
            gauge: p.gauge.as_ref().map(operator_to_entries),
        },
    }
}

pub fn instance_from_file(f: &InstanceFile) -> Result<Instance> {
    let ring = ring_from_file(&f.ring)?;
    let bundle = bundle_from_file(&f.bundle, "bundle")?;
    let superconnection = superconnection_from_file(ring, &bundle, &f.superconnection, "superconnection")?;
    let metric = f.metric.as_ref().map(|m| metric_from_file(ring, &bundle, m, "metric")).transpose()?;
    let second = f
        .second
        .as_ref()
        .map(|s| {
            let b = bundle_from_file(&s.bundle, "second.bundle")?;
            superconnection_from_file(ring, &b, &s.superconnection, "second.superconnection")
        })
        .transpose()?;
    let p = &f.params;
    let t = p
        .t
        .iter()
        .enumerate()
        .map(|(i, s)| rational_field(s, &format!("params.t[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let exactness = match p.exactness.as_deref() {
        None => None,
        Some("d") => Some(Exactness::D),
        Some("ddbar") => Some(Exactness::DdBar),
        Some(other) => return Err(parse_err("params.exactness", format!("expected \"d\" or \"ddbar\", found {other:?}"))),
    };
    let params = Params {
        max_k: p.max_k,
        degree_bound: p.degree_bound,
        t,
        alpha: p.alpha.as_ref().map(|e| endo_from_entries(ring, &bundle, e, "params.alpha")).transpose()?,
        delta_h: p.delta_h.as_ref().map(|e| endo_from_entries(ring, &bundle, e, "params.delta_h")).transpose()?,
        second_metric: p.second_metric.as_ref().map(|m| metric_from_file(ring, &bundle, m, "params.second_metric")).transpose()?,
        form: p.form.as_ref().map(|t| form_from_terms(ring, t, "params.form")).transpose()?,
        exactness,
        gauge: p.gauge.as_ref().map(|e| endo_from_entries(ring, &bundle, e, "params.gauge")).transpose()?,
    };
    Ok(Instance { superconnection, metric, second, params })
}

// ---- reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    VerificationFailure,
    InputError,
    TruncationOverflow,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::VerificationFailure => 1,
            Status::InputError => 2,
            Status::TruncationOverflow => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub flags: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub results: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error ({}): {}\n", e.kind, e.message));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time: {t} ms\n"));
        }
        out.push_str(&format!("status: {}\n", serde_json::to_value(self.status).expect("status").as_str().unwrap_or("?")));
        out
    }
}
