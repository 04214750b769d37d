//! Strict-gauge normalization of flat ∂̄-superconnections over the polydisc.
//!
//! Variables are processed in decreasing order. At variable `m` the `dzbar^m`
//! parts of `β̄_2, ..., β̄_m` are removed one level at a time by solving
//! `∂_{zbar_m} f = -c` with the canonical antiderivative.

use crate::connection::{gauge, DbarSuperconnection, GaugeParameter};
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::ladder::{solve_with_retry, RETRY_SLACK};
use crate::operator::SuperOperator;

/// A strict gauge parameter together with the normal form it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationCertificate {
    pub phi_total: GaugeParameter,
    pub normal: DbarSuperconnection,
}

impl NormalizationCertificate {
    /// Recomputes `gauge(input, phi_total)` and checks the normal-form shape.
    pub fn verify(&self, input: &DbarSuperconnection) -> Result<()> {
        if !self.normal.betas().is_empty() {
            return Err(Error::Verification("normal form still has betas".into()));
        }
        if gauge(input, &self.phi_total)? != self.normal {
            return Err(Error::Verification("gauge(input, phi_total) differs from the normal form".into()));
        }
        if !self.normal.is_flat() {
            return Err(Error::Verification("normal form is not flat".into()));
        }
        Ok(())
    }
}

fn bit(m: usize) -> u32 {
    1 << (m - 1)
}

fn filter_form(f: &Form, keep: impl Fn(&FormBasis) -> bool) -> Form {
    let mut out = Form::zero(f.ring());
    for (b, s) in f.terms() {
        if keep(b) {
            out += &Form::term(s.clone(), *b);
        }
    }
    out
}

/// Terms of `op` containing `dzbar^m`.
fn dzbar_part(op: &SuperOperator, m: usize) -> SuperOperator {
    op.map_entries(|_, _, f| filter_form(f, |b| b.dzbar & bit(m) != 0))
}

fn check_stage(mc: &DbarSuperconnection, m: usize) -> Result<()> {
    let n = mc.ring().n();
    if !mc.ring().is_poly() {
        return Err(Error::UnsupportedRing { op: "eliminate_variable", ring: mc.ring() });
    }
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m, ring: mc.ring() });
    }
    mc.require_flat()?;
    if !dzbar_part(mc.connection(), m).is_zero() {
        return Err(Error::Precondition(format!("connection matrix has a dzbar^{m} component")));
    }
    let total = mc.total();
    for f in total.entries().values() {
        for (b, s) in f.terms() {
            for l in m + 1..=n {
                if b.dzbar & bit(l) != 0 {
                    return Err(Error::Precondition(format!("dzbar^{l} still present")));
                }
                if s.depends_on_zbar(l) {
                    return Err(Error::Precondition(format!("coefficients depend on zbar_{l}")));
                }
            }
        }
    }
    Ok(())
}

/// Removes every `dzbar^m` from the betas of `mc` by strict gauges carrying no
/// `dzbar^m`. Returns the new superconnection and the composed parameter.
///
/// Requires: `mc` flat, no `dzbar^m` in the connection matrix, and no
/// `dzbar^l` or `zbar_l` anywhere for `l > m`.
pub fn eliminate_variable(mc: &DbarSuperconnection, m: usize) -> Result<(DbarSuperconnection, GaugeParameter)> {
    check_stage(mc, m)?;
    let ring = mc.ring();
    let mut current = mc.clone();
    let mut phi = GaugeParameter::zero(ring, mc.bundle());
    for k in 1..m {
        let target = dzbar_part(&current.beta(k + 1), m);
        if target.is_zero() {
            continue;
        }
        let mut step = SuperOperator::zero_endo(ring, mc.bundle());
        for (&(i, a), f) in target.entries() {
            let mut entry = Form::zero(ring);
            for (b, c) in f.terms() {
                let rest = FormBasis { dz: b.dz, dzbar: b.dzbar & !bit(m) };
                let sign = if rest.q() % 2 == 0 { 1 } else { -1 };
                let g = c.antideriv_zbar(m)?.scale_rational(&crate::scalar::rat(-sign, 1));
                entry += &Form::term(g, rest);
            }
            step.set_entry(i, a, entry);
        }
        let step = GaugeParameter::from_total(step)?;
        current = gauge(&current, &step)?;
        phi = phi.compose(&step)?;
    }
    if current.betas().iter().any(|b| !dzbar_part(b, m).is_zero()) {
        return Err(Error::Verification(format!("dzbar^{m} survives in the betas")));
    }
    Ok((current, phi))
}

/// Removes the `dzbar^m` part of the connection matrix by a strict gauge of
/// tridegree `(0, 1, -1)`, when it is `[γ̄, ψ]`-exact.
fn clear_connection(mc: &DbarSuperconnection, m: usize) -> Result<Option<GaugeParameter>> {
    let rhs = -dzbar_part(mc.connection(), m);
    if rhs.is_zero() {
        return Ok(None);
    }
    let bound = rhs.coefficient_degree();
    match solve_with_retry(mc.gamma(), &rhs, 1, -1, bound + RETRY_SLACK)? {
        Some(psi) => Ok(Some(GaugeParameter::from_total(psi)?)),
        None => Err(Error::Unsupported(format!(
            "connection matrix has a dzbar^{m} component that is not a commutator with the differential"
        ))),
    }
}

/// Gauges a flat superconnection over the polydisc to one without betas.
///
/// Before each variable, a `dzbar^m` part of the connection matrix of the
/// form `[γ̄, ψ]` is removed; any other `dzbar^m` part is unsupported.
pub fn normalize(mc: &DbarSuperconnection) -> Result<NormalizationCertificate> {
    let ring = mc.ring();
    if !ring.is_poly() {
        return Err(Error::UnsupportedRing { op: "normalize", ring });
    }
    mc.require_flat()?;
    let mut current = mc.clone();
    let mut phi = GaugeParameter::zero(ring, mc.bundle());
    for m in (2..=ring.n()).rev() {
        if let Some(psi) = clear_connection(&current, m)? {
            current = gauge(&current, &psi)?;
            phi = phi.compose(&psi)?;
        }
        let (next, step) = eliminate_variable(&current, m)?;
        current = next;
        phi = phi.compose(&step)?;
    }
    let cert = NormalizationCertificate { phi_total: phi, normal: current };
    cert.verify(mc)?;
    Ok(cert)
}
