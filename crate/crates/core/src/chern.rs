//! Chern superconnections, curvature and Chern forms.
//!
//! For a flat `D̄ = ∂̄ + Γ` and a metric `h`, the Chern superconnection
//! `D = ∂ + B` is the unique operator with
//! `∂̄(s1, s2) = (D s1, s2) + (-1)^{|s1|} (s1, D̄ s2)`.
//! On basis sections this reads `conj(B)^T g = R` with
//! `R_ab = ∂̄g_ab - (-1)^{j_a} sum_i (-1)^{|Γ_ib| j_a} Γ_ib g_ai`,
//! where `g` is the graded matrix of the pairing.

use crate::bundle::Section;
use crate::check::Check;
use crate::connection::DbarSuperconnection;
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::metric::{rational_power, HermitianMetric};
use crate::operator::SuperOperator;
use crate::scalar::{rat, GaussianRational, Rational, RingSpec, Scalar};

/// `D = ∂ + B` together with the curvature of `𝒟 = D + D̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    b: SuperOperator,
    curvature: SuperOperator,
}

fn sign_form(f: &Form, odd: bool) -> Form {
    if odd {
        f.parity_twist()
    } else {
        f.clone()
    }
}

/// Solves the defining equation on basis sections.
fn solve_b(m: &DbarSuperconnection, h: &HermitianMetric) -> SuperOperator {
    let ring = m.ring();
    let bundle = m.bundle();
    let degs = bundle.degree_vector();
    let r = bundle.total_rank();
    let gamma = m.total();
    let hm = h.graded_matrix();
    let mut rmat = vec![vec![Form::zero(ring); r]; r];
    for (&(a, b), hab) in hm.entries() {
        rmat[a][b] += &hab.delbar();
    }
    for (&(i, b), g) in gamma.entries() {
        for a in 0..r {
            let hai = hm.entry(a, i);
            if hai.is_zero() {
                continue;
            }
            let odd = degs[a].rem_euclid(2) == 1;
            let term = sign_form(g, odd).wedge(&hai);
            if odd {
                rmat[a][b] += &term;
            } else {
                rmat[a][b] -= &term;
            }
        }
    }
    let hinv = h.graded_inverse();
    let mut out = SuperOperator::zero_endo(ring, bundle);
    for (a, row) in rmat.iter().enumerate() {
        for (&(bb, i), hbi) in hinv.entries() {
            if row[bb].is_zero() {
                continue;
            }
            // B_ia = conj(C_ai), C = R h^-1
            out.add_to_entry(i, a, &row[bb].wedge(hbi).conj());
        }
    }
    out
}

/// Sections `f ω e_a` with `ω` ranging over functions, one-forms of both types
/// and a `(1,1)`-form.
pub fn full_spanning_sections(ring: RingSpec, bundle: &crate::bundle::GradedBundle) -> Vec<Section> {
    let n = ring.n();
    let mut forms = vec![Form::one(ring), Form::scalar(Scalar::z(ring, 1)), Form::scalar(Scalar::zbar(ring, n))];
    for i in 1..=n {
        forms.push(Form::dz(ring, i));
        forms.push(Form::dzbar(ring, i));
    }
    forms.push(Form::dz(ring, 1).wedge(&Form::dzbar(ring, n)).scale(&Scalar::zbar(ring, 1)));
    if ring.is_p1() {
        forms.push(Form::scalar(Scalar::p1_weight(ring, 1)));
    }
    let mut out = Vec::new();
    for a in 0..bundle.total_rank() {
        for f in &forms {
            out.push(Section::basis(bundle, a, f.clone()));
        }
    }
    out
}

fn section_degree(s: &Section) -> i32 {
    let degs = s.total_degrees();
    let d = degs[0];
    assert!(degs.iter().all(|&x| x == d), "spanning sections are homogeneous");
    d
}

fn sum(a: &Section, b: &Section) -> Section {
    a.add(b).expect("shape")
}

/// `D s = ∂ s + B s`.
pub fn apply_d(b: &SuperOperator, s: &Section) -> Section {
    sum(&s.del(), &b.apply(s))
}

/// `𝒟 s = D s + D̄ s`.
pub fn apply_total(m: &DbarSuperconnection, b: &SuperOperator, s: &Section) -> Section {
    sum(&apply_d(b, s), &m.apply(s))
}

/// Checks both defining equations, `D^2 = 0` and the degree law.
pub fn verify_chern_connection(m: &DbarSuperconnection, h: &HermitianMetric, b: &SuperOperator) -> Vec<Check> {
    let sections = full_spanning_sections(m.ring(), m.bundle());
    let mut defining = true;
    let mut conjugate = true;
    for s1 in &sections {
        let sign = if section_degree(s1).rem_euclid(2) == 1 { -1 } else { 1 };
        let ds1 = apply_d(b, s1);
        let dbs1 = m.apply(s1);
        for s2 in &sections {
            let p = h.pair(s1, s2);
            let lhs = p.delbar();
            let rhs = &h.pair(&ds1, s2) + &h.pair(s1, &m.apply(s2)).scale_constant(&GaussianRational::from_int(sign));
            defining &= lhs == rhs;
            let lhs = p.del();
            let rhs = &h.pair(&dbs1, s2) + &h.pair(s1, &apply_d(b, s2)).scale_constant(&GaussianRational::from_int(sign));
            conjugate &= lhs == rhs;
        }
    }
    let square = (&b.del() + &b.compose(b)).is_zero();
    let degrees = b.tridegrees().iter().all(|&(p, q, r)| q == 0 && r == p as i32 - 1);
    vec![
        Check::new("defining equation ∂̄(s1,s2) = (Ds1,s2) ± (s1,D̄s2)", defining),
        Check::new("conjugate equation ∂(s1,s2) = (D̄s1,s2) ± (s1,Ds2)", conjugate),
        Check::new("D^2 = 0", square),
        Check::new("D blocks of tridegree (i,0,i-1)", degrees),
    ]
}

/// The matrix part `B` of the Chern superconnection `D = ∂ + B`.
///
/// Errors: `Verification` if any post-hoc check fails.
pub fn chern_connection(m: &DbarSuperconnection, h: &HermitianMetric) -> Result<SuperOperator> {
    m.ring().check_same(&h.ring())?;
    if h.bundle() != m.bundle() {
        return Err(Error::ShapeMismatch("metric lives on a different bundle".into()));
    }
    m.require_flat()?;
    let b = solve_b(m, h);
    for c in verify_chern_connection(m, h, &b) {
        if !c.passed {
            return Err(Error::Verification(c.name));
        }
    }
    Ok(b)
}

/// `F = ∂̄B + ∂Γ + [B, Γ]`.
pub fn curvature(m: &DbarSuperconnection, b: &SuperOperator) -> SuperOperator {
    let g = m.total();
    &(&b.delbar() + &g.del()) + &b.bracket(&g)
}

/// Brute-force comparison with `𝒟^2`, the tridegree law and the Bianchi identity.
pub fn verify_curvature(m: &DbarSuperconnection, b: &SuperOperator, f: &SuperOperator) -> Vec<Check> {
    let brute = full_spanning_sections(m.ring(), m.bundle())
        .iter()
        .all(|s| f.apply(s) == apply_total(m, b, &apply_total(m, b, s)));
    let degrees = f.tridegrees().iter().all(|&(p, q, r)| r == p as i32 - q as i32);
    let connection = b + &m.total();
    let bianchi = (&f.d() + &connection.bracket(f)).is_zero();
    vec![
        Check::new("F equals 𝒟^2 on spanning sections", brute),
        Check::new("F blocks of tridegree (p,q,p-q)", degrees),
        Check::new("Bianchi identity [𝒟, F] = 0", bianchi),
    ]
}

impl ChernData {
    pub fn new(m: &DbarSuperconnection, h: &HermitianMetric) -> Result<Self> {
        let b = chern_connection(m, h)?;
        let curvature = curvature(m, &b);
        Ok(Self { b, curvature })
    }

    /// Matrix part of `D`.
    pub fn b(&self) -> &SuperOperator {
        &self.b
    }

    /// The tridegree `(i, 0, i-1)` part of `B`.
    pub fn beta(&self, i: usize) -> SuperOperator {
        self.b.tridegree_part(i, 0, i as i32 - 1)
    }

    pub fn curvature(&self) -> &SuperOperator {
        &self.curvature
    }

    /// `ω_k = str(F^k)`.
    pub fn chern_form(&self, k: u32) -> Form {
        self.curvature.pow(k).supertrace().expect("curvature is an endomorphism")
    }
}

/// `ω_k = str(F^k)` for the Chern superconnection of `(m, h)`.
pub fn chern_form(m: &DbarSuperconnection, h: &HermitianMetric, k: u32) -> Result<Form> {
    Ok(ChernData::new(m, h)?.chern_form(k))
}

/// Closedness and type checks on a Chern form.
pub fn verify_chern_form(omega: &Form) -> Vec<Check> {
    let pure = omega.types().iter().all(|&(p, q)| p == q);
    vec![Check::new("d ω_k = 0", omega.d().is_zero()), Check::new("ω_k^{p,q} = 0 for p ≠ q", pure)]
}

/// `(1/k!) (i/2π)^k ∫ ω_k` on the P1 model. Only `k <= 1` can be nonzero;
/// `k = 0` is the super-rank.
pub fn chern_number_of_form(omega: &Form, k: u32) -> Result<Rational> {
    let ring = omega.ring();
    if !ring.is_p1() || ring.dual {
        return Err(Error::UnsupportedRing { op: "chern_number", ring });
    }
    match k {
        0 => {
            let c = omega.coefficient(&FormBasis::ONE).as_constant().unwrap_or_else(GaussianRational::zero);
            real_part(c)
        }
        1 => {
            // dz∧dzbar = -2i (i/2) dz∧dzbar, so (i/2π)∫ f dz∧dzbar = (1/π) ∫ f dA.
            let f = omega.coefficient(&FormBasis { dz: 1, dzbar: 1 });
            real_part(f.integrate_p1()?.value)
        }
        _ => Ok(rat(0, 1)),
    }
}

fn real_part(c: GaussianRational) -> Result<Rational> {
    if !c.is_real() {
        return Err(Error::Verification(format!("Chern number {c} is not real")));
    }
    Ok(c.re)
}

/// `ch_k` of `(m, h)` on the P1 model.
pub fn chern_number(m: &DbarSuperconnection, h: &HermitianMetric, k: u32) -> Result<Rational> {
    if !m.ring().is_p1() {
        return Err(Error::UnsupportedRing { op: "chern_number", ring: m.ring() });
    }
    chern_number_of_form(&ChernData::new(m, h)?.chern_form(k), k)
}

/// `h_j ↦ t^{-j} h_j` leaves `β_1` fixed, multiplies `β_i` by `t^{i-1}` and
/// `ω_k^{p,p}` by `t^{p-k}`; `h_j ↦ t^j h_j` gives the reciprocal factors.
pub fn rescale_check(m: &DbarSuperconnection, h: &HermitianMetric, k: u32, t: &Rational) -> Result<Vec<Check>> {
    let base = ChernData::new(m, h)?;
    let omega = base.chern_form(k);
    let n = m.ring().n();
    let mut checks = Vec::new();
    for (label, param, sign) in [("t^-j", t.recip(), 1), ("t^j", t.clone(), -1)] {
        let scaled = ChernData::new(m, &h.rescale(&param)?)?;
        let mut betas = true;
        for i in 0..=n {
            let factor = rational_power(t, sign * (i as i32 - 1));
            betas &= scaled.beta(i) == base.beta(i).scale_constant(&GaussianRational::real(factor));
        }
        checks.push(Check::new(format!("h_j ↦ {label} h_j: β_i scales by t^{}(i-1)", if sign > 0 { "" } else { "-" }), betas));
        let omega_t = scaled.chern_form(k);
        let mut forms = true;
        for p in 0..=n {
            let factor = rational_power(t, sign * (p as i32 - k as i32));
            forms &= omega_t.component(p, p) == omega.component(p, p).scale_constant(&GaussianRational::real(factor));
        }
        forms &= omega_t.types().iter().all(|&(p, q)| p == q);
        checks.push(Check::new(
            format!("h_j ↦ {label} h_j: ω_{k}^(p,p) scales by t^{}(p-k)", if sign > 0 { "" } else { "-" }),
            forms,
        ));
    }
    Ok(checks)
}

/// First-order variation `h ↦ h + ε h δh` in dual-number arithmetic.
pub fn variation_check(
    m: &DbarSuperconnection,
    h: &HermitianMetric,
    delta_h: &SuperOperator,
    k: u32,
) -> Result<Vec<Check>> {
    if k == 0 {
        return Err(Error::Precondition("variation is trivial for k = 0".into()));
    }
    let base = ChernData::new(m, h)?;
    let perturbed = ChernData::new(&m.with_dual(true), &h.perturb(delta_h)?)?;
    let (_, eps_omega) = perturbed.chern_form(k).split_eps();
    let eps_omega = eps_omega.with_dual(false);
    let inner = delta_h.compose(&base.curvature().pow(k - 1)).supertrace()?;
    let expected = inner.del().delbar().scale_constant(&GaussianRational::from_int(k as i64));
    let (_, eps_b) = perturbed.b().split_eps();
    let delta_d = &delta_h.del() + &base.b().bracket(delta_h);
    let mut checks = vec![
        Check::new(format!("ε-part of ω_{k} = {k} ∂̄∂ str(δh F^{})", k - 1), eps_omega == expected),
        Check::new("δD = [D, δh]", eps_b.with_dual(false) == delta_d),
    ];
    if m.ring().is_p1() && k == 1 {
        let total = eps_omega.coefficient(&FormBasis { dz: 1, dzbar: 1 }).integrate_p1()?;
        checks.push(Check::new("ε-part of ω_1 integrates to 0", total.value.is_zero()));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::GradedBundle;
    use crate::check::all_passed;
    use crate::metric::p1_power;

    fn o_k(k: i32) -> (DbarSuperconnection, HermitianMetric) {
        let r = RingSpec::p1();
        let b = GradedBundle::unit();
        (DbarSuperconnection::trivial(r, &b), HermitianMetric::p1_line_weights(&b, &[k]).unwrap())
    }

    #[test]
    fn trivial_metric_gives_bare_del() {
        let r = RingSpec::poly(2);
        let b = GradedBundle::unit();
        let m = DbarSuperconnection::trivial(r, &b);
        let d = ChernData::new(&m, &HermitianMetric::identity(r, &b)).unwrap();
        assert!(d.b().is_zero());
        assert!(d.curvature().is_zero());
    }

    #[test]
    fn line_bundle_connection_and_curvature() {
        for k in -2..=3 {
            let (m, h) = o_k(k);
            let r = m.ring();
            let d = ChernData::new(&m, &h).unwrap();
            let w = p1_power(r, 1);
            let expected_b = Form::dz(r, 1).scale(&(&Scalar::zbar(r, 1) * &w).scale(&GaussianRational::from_int(-k as i64)));
            assert_eq!(d.b().entry(0, 0), expected_b);
            let expected_f = Form::dz(r, 1).wedge(&Form::dzbar(r, 1)).scale(&p1_power(r, 2).scale(&GaussianRational::from_int(k as i64)));
            assert_eq!(d.curvature().entry(0, 0), expected_f);
            assert!(all_passed(&verify_curvature(&m, d.b(), d.curvature())));
            assert_eq!(chern_number(&m, &h, 1).unwrap(), rat(k as i64, 1));
            assert_eq!(chern_number(&m, &h, 0).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn adjoint_of_differential_for_constant_metric() {
        let r = RingSpec::poly(1);
        let b = GradedBundle::new([(0, 1), (1, 1)]);
        let gamma = SuperOperator::from_entries(r, &b, &b, [(1, 0, Form::scalar(Scalar::z(r, 1)))]).unwrap();
        let m = DbarSuperconnection::from_complex(&b, gamma).unwrap();
        let h = HermitianMetric::constant(r, &b, &[vec![vec![GaussianRational::from_int(2)]], vec![vec![GaussianRational::from_int(3)]]])
            .unwrap();
        let d = ChernData::new(&m, &h).unwrap();
        // conj(β0_01) g_0 = z g_1 with g_0 = 2, g_1 = 3i.
        let expected = Form::scalar(Scalar::zbar(r, 1).scale(&GaussianRational::new(rat(0, 1), rat(-3, 2))));
        assert_eq!(d.beta(0).entry(0, 1), expected);
        assert_eq!(d.beta(0).tridegrees().into_iter().collect::<Vec<_>>(), vec![(0, 0, -1)]);
        let omega = d.chern_form(1);
        assert!(all_passed(&verify_chern_form(&omega)));
    }

    #[test]
    fn zero_map_complex_has_difference_of_degrees() {
        let b = GradedBundle::new([(0, 1), (1, 1)]);
        let m = DbarSuperconnection::trivial(RingSpec::p1(), &b);
        for (a, c) in [(1, 1), (2, -1), (3, 0)] {
            let h = HermitianMetric::p1_line_weights(&b, &[a, c]).unwrap();
            assert_eq!(chern_number(&m, &h, 1).unwrap(), rat((a - c) as i64, 1));
            assert_eq!(chern_number(&m, &h, 0).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn rescaling_laws() {
        let r = RingSpec::poly(2);
        let b = GradedBundle::new([(-1, 1), (0, 2)]);
        let gamma = SuperOperator::from_entries(
            r,
            &b,
            &b,
            [(1, 0, Form::scalar(Scalar::z(r, 1))), (2, 0, Form::scalar(Scalar::z(r, 2)))],
        )
        .unwrap();
        let m = DbarSuperconnection::from_complex(&b, gamma).unwrap();
        let h = HermitianMetric::identity(r, &b);
        for k in 1..=2 {
            for t in [rat(2, 1), rat(1, 2)] {
                let checks = rescale_check(&m, &h, k, &t).unwrap();
                assert!(all_passed(&checks), "{checks:?}");
            }
        }
    }

    #[test]
    fn variation_on_trivial_line() {
        let r = RingSpec::poly(1);
        let b = GradedBundle::unit();
        let m = DbarSuperconnection::trivial(r, &b);
        let dh = SuperOperator::from_entries(r, &b, &b, [(0, 0, Form::scalar(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)))]).unwrap();
        let checks = variation_check(&m, &HermitianMetric::identity(r, &b), &dh, 1).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn variation_on_p1() {
        let (m, h) = o_k(1);
        let r = m.ring();
        let b = m.bundle().clone();
        let s = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)) * &p1_power(r, 1);
        let dh = SuperOperator::from_entries(r, &b, &b, [(0, 0, Form::scalar(s))]).unwrap();
        let checks = variation_check(&m, &h, &dh, 1).unwrap();
        assert!(all_passed(&checks), "{checks:?}");
    }
}
