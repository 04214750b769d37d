//! Completion of a connection on a holomorphic complex to a flat superconnection.
//!
//! The `k`-th rung of `D̄^2 = 0` reads `[γ̄, β̄_k] + u_k = 0`, where `u_k` only
//! involves `A` and `β̄_2, ..., β̄_{k-1}`. Each rung is a finite linear system
//! over monomials of bounded degree.

use std::collections::BTreeSet;

use crate::bundle::GradedBundle;
use crate::connection::DbarSuperconnection;
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::linalg::{flatten_operator, LinearSystem};
use crate::operator::SuperOperator;
use crate::scalar::{exponent_vectors, Exponents, GaussianRational, Monomial, Scalar};

/// Extra degree tried beyond the requested bound before calling a failure an
/// obstruction rather than a truncation shortfall.
pub const RETRY_SLACK: u32 = 2;

/// Solves `[γ, X] = rhs` for `X` with form degree `q` (only `dzbar`) and
/// bundle-degree shift `shift`, over monomials of total degree `<= bound`.
///
/// `γ` must have holomorphic function entries, so the bracket preserves the
/// `dzbar` part and the `zbar` exponents of every term; unknowns are restricted
/// to those occurring in `rhs`.
pub fn solve_gamma_equation(
    gamma: &SuperOperator,
    rhs: &SuperOperator,
    q: usize,
    shift: i32,
    bound: u32,
) -> Option<SuperOperator> {
    let ring = gamma.ring();
    let bundle = gamma.source().clone();
    if rhs.is_zero() {
        return Some(SuperOperator::zero_endo(ring, &bundle));
    }
    let n = ring.n();
    let mut patterns: BTreeSet<(FormBasis, Exponents, bool)> = BTreeSet::new();
    for f in rhs.entries().values() {
        for (b, s) in f.terms() {
            for m in s.terms().keys() {
                patterns.insert((*b, m.zbar.clone(), m.eps));
            }
        }
    }
    let degs = bundle.degree_vector();
    let mut unknowns: Vec<(usize, usize, FormBasis, Monomial)> = Vec::new();
    let mut system = LinearSystem::new();
    for (b, zbar, eps) in &patterns {
        if b.p() != 0 || b.q() != q {
            continue;
        }
        let zbar_deg: u32 = zbar.iter().sum();
        if zbar_deg > bound {
            continue;
        }
        for z in exponent_vectors(n, bound - zbar_deg) {
            let mono = Monomial { z, zbar: zbar.clone(), denom: 0, eps: *eps };
            for (i, &di) in degs.iter().enumerate() {
                for (a, &da) in degs.iter().enumerate() {
                    if di - da != shift {
                        continue;
                    }
                    let f = Form::term(Scalar::from_monomial(ring, mono.clone(), GaussianRational::one()), *b);
                    let unit = SuperOperator::from_entries(ring, &bundle, &bundle, [(i, a, f)]).expect("shape");
                    system.push_column(flatten_operator(&gamma.bracket(&unit)));
                    unknowns.push((i, a, *b, mono.clone()));
                }
            }
        }
    }
    let x = system.solve(&flatten_operator(rhs))?;
    let mut out = SuperOperator::zero_endo(ring, &bundle);
    for (j, c) in x {
        let (i, a, b, m) = &unknowns[j];
        out.add_to_entry(*i, *a, &Form::term(Scalar::from_monomial(ring, m.clone(), c), *b));
    }
    Some(out)
}

/// Solves with the retry protocol: success within `bound` returns the
/// solution, success only at a larger bound is a truncation overflow, and
/// failure throughout returns `None`.
pub(crate) fn solve_with_retry(
    gamma: &SuperOperator,
    rhs: &SuperOperator,
    q: usize,
    shift: i32,
    bound: u32,
) -> Result<Option<SuperOperator>> {
    if let Some(x) = solve_gamma_equation(gamma, rhs, q, shift, bound) {
        return Ok(Some(x));
    }
    for extra in 1..=RETRY_SLACK {
        if solve_gamma_equation(gamma, rhs, q, shift, bound + extra).is_some() {
            return Err(Error::TruncationOverflow { bound: bound as usize, required: Some((bound + extra) as usize) });
        }
    }
    Ok(None)
}

fn check_complex(gamma: &SuperOperator) -> Result<()> {
    for ((i, a), f) in gamma.entries() {
        if f.terms().keys().any(|b| b.degree() != 0) || !f.delbar().is_zero() {
            return Err(Error::Precondition(format!("differential entry ({i}, {a}) is not a holomorphic function")));
        }
    }
    if !gamma.compose(gamma).is_zero() {
        return Err(Error::Precondition("differential does not square to zero".into()));
    }
    Ok(())
}

/// Finds `β̄_2, β̄_3, ...` making `∂̄ + γ + A + sum β̄_i` flat.
///
/// Errors: `Obstruction` carries the first rung residue `u_k` that admits no
/// solution even with [`RETRY_SLACK`] extra degrees; `TruncationOverflow`
/// reports a rung that is solvable only beyond `degree_bound`.
pub fn complete_to_flat(
    bundle: &GradedBundle,
    gamma: &SuperOperator,
    a: &SuperOperator,
    degree_bound: u32,
) -> Result<DbarSuperconnection> {
    check_complex(gamma)?;
    let base = DbarSuperconnection::new(bundle, gamma.clone(), a.clone(), Vec::new())?;
    let residues = base.flatness_residues();
    if !residues[1].is_zero() {
        return Err(Error::Precondition("connection does not commute with the differential".into()));
    }
    let n = base.ring().n();
    let mut betas: Vec<SuperOperator> = Vec::new();
    for k in 2..=n {
        let current = base.with_betas(betas.clone())?;
        let u = current.flatness_residues()[k].clone();
        if !gamma.bracket(&u).is_zero() {
            return Err(Error::Verification(format!("Bianchi identity [γ̄, u_{k}] = 0 fails")));
        }
        let rhs = -&u;
        match solve_with_retry(gamma, &rhs, k, 1 - k as i32, degree_bound)? {
            Some(beta) => betas.push(beta),
            None => return Err(Error::Obstruction { level: k, residue: Box::new(u) }),
        }
    }
    let out = base.with_betas(betas)?;
    if !out.is_flat() {
        return Err(Error::Verification("completed superconnection is not flat".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::gauge;
    use crate::random::{random_koszul, random_strict_gauge};
    use crate::scalar::RingSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn already_flat_connection_needs_no_betas() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = RingSpec::poly(2);
        let m = random_koszul(&mut rng, r, 2, 1);
        let out = complete_to_flat(m.bundle(), m.gamma(), m.connection(), 2).unwrap();
        assert!(out.betas().is_empty());
    }

    #[test]
    fn recovers_discarded_betas() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = RingSpec::poly(2);
        let m = random_koszul(&mut rng, r, 2, 1);
        let mut found = 0;
        for _ in 0..6 {
            let g = gauge(&m, &random_strict_gauge(&mut rng, r, m.bundle(), 1, 2)).unwrap();
            if g.betas().is_empty() {
                continue;
            }
            found += 1;
            let bound = g.total().coefficient_degree() + 1;
            let out = complete_to_flat(g.bundle(), g.gamma(), g.connection(), bound).unwrap();
            assert!(out.flatness_residues().iter().all(SuperOperator::is_zero));
            assert_eq!(out.connection(), g.connection());
        }
        assert!(found > 0);
    }

    #[test]
    fn curved_connection_without_differential_is_obstructed() {
        let r = RingSpec::poly(2);
        let b = GradedBundle::unit();
        let gamma = SuperOperator::zero_endo(r, &b);
        let a = SuperOperator::from_entries(r, &b, &b, [(0, 0, Form::dzbar(r, 2).scale(&Scalar::zbar(r, 1)))]).unwrap();
        match complete_to_flat(&b, &gamma, &a, 3) {
            Err(Error::Obstruction { level, residue }) => {
                assert_eq!(level, 2);
                assert!(!residue.is_zero());
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn high_degree_solution_reports_truncation() {
        // The only solution has coefficient z2^3.
        let r = RingSpec::poly(2);
        let b = GradedBundle::new([(0, 1), (1, 1)]);
        let gamma = SuperOperator::from_entries(r, &b, &b, [(1, 0, Form::scalar(Scalar::z(r, 1)))]).unwrap();
        let target =
            SuperOperator::from_entries(r, &b, &b, [(0, 1, Form::monomial(Scalar::z(r, 2).pow(3), &[], &[1, 2]))]).unwrap();
        let rhs = gamma.bracket(&target);
        assert_eq!(solve_gamma_equation(&gamma, &rhs, 2, -1, 3), Some(target));
        assert!(solve_gamma_equation(&gamma, &rhs, 2, -1, 2).is_none());
        assert!(matches!(
            solve_with_retry(&gamma, &rhs, 2, -1, 1),
            Err(Error::TruncationOverflow { bound: 1, required: Some(3) })
        ));
        assert!(matches!(solve_with_retry(&gamma, &rhs, 2, -1, 0), Ok(None)));
    }
}
