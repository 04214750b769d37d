//! Degree-0 cohomology of the global Hom complex over polynomial coefficients.
//!
//! A cochain of total degree `p` is a sum of elementary maps `M^j -> N^{j+k}`
//! with `(0, p - k)`-form coefficients. Coefficients are truncated to monomials
//! in `z, zbar` of total degree at most a bound.

use crate::connection::{hom_basis, DbarSuperconnection};
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::linalg::{flatten_operator, Echelon, LinearSystem, OperatorKey, SparseVec};
use crate::operator::SuperOperator;
use crate::scalar::{exponent_vectors, GaussianRational, Monomial, Scalar};

/// Result of [`h0_hom`].
#[derive(Clone, Debug)]
pub struct HomCohomology {
    pub dimension: usize,
    /// Closed degree-0 maps whose classes span the truncated cohomology.
    pub basis: Vec<SuperOperator>,
}

/// Elementary cochains of total degree `p` with coefficient degree `<= bound`.
fn cochains(m: &DbarSuperconnection, n: &DbarSuperconnection, p: i32, bound: u32) -> Vec<SuperOperator> {
    let ring = m.ring();
    let dim = ring.n();
    let monos: Vec<Monomial> = exponent_vectors(2 * dim, bound)
        .into_iter()
        .map(|e| Monomial { z: e[..dim].into(), zbar: e[dim..].into(), denom: 0, eps: false })
        .collect();
    let mut out = Vec::new();
    for (k, j, row, col) in hom_basis(m.bundle(), n.bundle()) {
        let q = p - k;
        if q < 0 || q as usize > dim {
            continue;
        }
        for mask in 0u32..(1 << dim) {
            if mask.count_ones() != q as u32 {
                continue;
            }
            let basis = FormBasis { dz: 0, dzbar: mask };
            for mono in &monos {
                let f = Form::term(Scalar::from_monomial(ring, mono.clone(), GaussianRational::one()), basis);
                out.push(SuperOperator::block_entry(ring, m.bundle(), n.bundle(), j, col, j + k, row, f));
            }
        }
    }
    out
}

fn the_key(unit: &SuperOperator) -> OperatorKey {
    flatten_operator(unit).into_keys().next().expect("elementary cochain")
}

fn high_part(v: &SparseVec<OperatorKey>, bound: u32) -> SparseVec<OperatorKey> {
    v.iter().filter(|(k, _)| k.3.degree() > bound).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Exact coboundaries of degree `<= bound`, reached from cochains of degree
/// `<= image_bound`, as an echelon basis.
fn bounded_coboundaries(
    m: &DbarSuperconnection,
    n: &DbarSuperconnection,
    bound: u32,
    image_bound: u32,
) -> Result<Echelon<OperatorKey>> {
    let mut images = Vec::new();
    let mut outside = LinearSystem::new();
    for unit in cochains(m, n, -1, image_bound) {
        let img = flatten_operator(&DbarSuperconnection::hom_differential(m, n, &unit)?);
        outside.push_column(high_part(&img, bound));
        images.push(img);
    }
    let mut ech = Echelon::new();
    for combo in outside.kernel() {
        let mut v = SparseVec::new();
        for (j, c) in combo {
            for (k, x) in &images[j] {
                let e = v.entry(k.clone()).or_insert_with(GaussianRational::zero);
                *e += &(&c * x);
            }
        }
        v.retain(|_, c: &mut GaussianRational| !c.is_zero());
        ech.insert(v);
    }
    Ok(ech)
}

/// Dimension and representatives of `H^0` of `Hom(M, N)`: closed degree-0
/// cochains of coefficient degree `<= degree_bound` modulo coboundaries of
/// cochains of degree `<= degree_bound + 1`.
///
/// Errors: `TruncationOverflow` when allowing one more degree in the
/// coboundary search would make further closed cochains exact.
pub fn h0_hom(m: &DbarSuperconnection, n: &DbarSuperconnection, degree_bound: u32) -> Result<HomCohomology> {
    m.ring().check_same(&n.ring())?;
    if !m.ring().is_poly() || m.ring().dual {
        return Err(Error::UnsupportedRing { op: "h0_hom", ring: m.ring() });
    }
    m.require_flat()?;
    n.require_flat()?;
    let ring = m.ring();
    let units = cochains(m, n, 0, degree_bound);
    let mut closed = LinearSystem::new();
    for u in &units {
        closed.push_column(flatten_operator(&DbarSuperconnection::hom_differential(m, n, u)?));
    }
    let kernel = closed.kernel();
    let exact = bounded_coboundaries(m, n, degree_bound, degree_bound + 1)?;
    let probe = bounded_coboundaries(m, n, degree_bound, degree_bound + 2)?;
    if probe.rank() > exact.rank() {
        return Err(Error::TruncationOverflow { bound: degree_bound as usize, required: None });
    }
    let keys: Vec<OperatorKey> = units.iter().map(the_key).collect();
    let mut span = exact.clone();
    let mut basis = Vec::new();
    for combo in &kernel {
        let v: SparseVec<OperatorKey> = combo.iter().map(|(j, c)| (keys[*j].clone(), c.clone())).collect();
        if span.insert(v).is_some() {
            let mut op = SuperOperator::zero(ring, m.bundle(), n.bundle());
            for (j, c) in combo {
                op = &op + &units[*j].scale_constant(c);
            }
            basis.push(op);
        }
    }
    Ok(HomCohomology { dimension: kernel.len() - exact.rank(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::GradedBundle;
    use crate::random::binomial;
    use crate::scalar::RingSpec;

    #[test]
    fn unit_endomorphisms_are_holomorphic_polynomials() {
        for n in 1..=2 {
            let r = RingSpec::poly(n);
            let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
            for d in 0..=2u32 {
                let h = h0_hom(&unit, &unit, d).unwrap();
                assert_eq!(h.dimension, binomial(n + d as usize, n));
                assert_eq!(h.basis.len(), h.dimension);
                for b in &h.basis {
                    assert!(DbarSuperconnection::hom_differential(&unit, &unit, b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn one_forms_in_one_variable_are_exact() {
        let r = RingSpec::poly(1);
        let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
        let shifted = unit.shift(1);
        for d in 0..=3 {
            assert_eq!(h0_hom(&unit, &shifted, d).unwrap().dimension, 0);
        }
    }

    #[test]
    fn cone_of_identity_has_no_cohomology() {
        let r = RingSpec::poly(1);
        let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
        let id = SuperOperator::identity(r, unit.bundle());
        let c = DbarSuperconnection::cone(&unit, &unit, &id).unwrap();
        for d in 0..=2 {
            assert_eq!(h0_hom(&c, &c, d).unwrap().dimension, 0);
        }
    }

    #[test]
    fn rejects_p1() {
        let r = RingSpec::p1();
        let unit = DbarSuperconnection::trivial(r, &GradedBundle::unit());
        assert!(matches!(h0_hom(&unit, &unit, 1), Err(Error::UnsupportedRing { .. })));
    }
}
