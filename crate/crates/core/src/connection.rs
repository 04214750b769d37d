//! ∂̄-superconnections `D̄ = ∂̄ + γ̄ + ∇̄-matrix + sum β̄_i` on trivial graded bundles.
//!
//! The bare Dolbeault operator is implicit: a superconnection stores only the
//! matrix components
//!
//! * `gamma` of tridegree `(0, 0, 1)`,
//! * `A` of tridegree `(0, 1, 0)` (so that `∇̄ = ∂̄ + A`),
//! * `β̄_i` of tridegree `(0, i, 1 - i)` for `i >= 2`.

use std::fmt;

use crate::bundle::{GradedBundle, Section};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::operator::{SuperOperator, Tridegree};
use crate::scalar::{GaussianRational, RingSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DbarSuperconnection {
    ring: RingSpec,
    bundle: GradedBundle,
    gamma: SuperOperator,
    a: SuperOperator,
    /// `betas[k]` is `β̄_{k+2}`; no trailing zeros.
    betas: Vec<SuperOperator>,
}

fn check_tridegree(op: &SuperOperator, want: Tridegree, what: &str) -> Result<()> {
    for t in op.tridegrees() {
        if t != want {
            return Err(Error::ShapeMismatch(format!("{what} has a term of tridegree {t:?}, expected {want:?}")));
        }
    }
    Ok(())
}

/// `exp(x)` for a nilpotent endomorphism `x`, summed until the terms vanish.
pub fn exp_nilpotent(x: &SuperOperator) -> SuperOperator {
    let ring = x.ring();
    let mut out = SuperOperator::identity(ring, x.source());
    let mut term = out.clone();
    let cap = 2 * ring.n() + 4;
    for k in 1.. {
        term = term.compose(x).scale_constant(&GaussianRational::ratio(1, k));
        if term.is_zero() {
            break;
        }
        assert!((k as usize) <= cap, "exponent argument is not nilpotent");
        out = &out + &term;
    }
    out
}

/// `log(u)` for `u = 1 + nilpotent`.
pub fn log_unipotent(u: &SuperOperator) -> SuperOperator {
    let ring = u.ring();
    let nil = u - &SuperOperator::identity(ring, u.source());
    let mut out = SuperOperator::zero_endo(ring, u.source());
    let mut power = SuperOperator::identity(ring, u.source());
    let cap = 2 * ring.n() + 4;
    for k in 1..=(cap as i64 + 1) {
        power = power.compose(&nil);
        if power.is_zero() {
            return out;
        }
        let c = GaussianRational::ratio(if k % 2 == 1 { 1 } else { -1 }, k);
        out = &out + &power.scale_constant(&c);
    }
    panic!("logarithm argument is not unipotent")
}

impl DbarSuperconnection {
    pub fn new(
        bundle: &GradedBundle,
        gamma: SuperOperator,
        a: SuperOperator,
        betas: Vec<SuperOperator>,
    ) -> Result<Self> {
        let ring = gamma.ring();
        for op in std::iter::once(&gamma).chain(std::iter::once(&a)).chain(&betas) {
            ring.check_same(&op.ring())?;
            if op.source() != bundle || op.target() != bundle {
                return Err(Error::ShapeMismatch(format!("component is not an endomorphism of {bundle}")));
            }
        }
        check_tridegree(&gamma, (0, 0, 1), "gamma")?;
        check_tridegree(&a, (0, 1, 0), "connection matrix")?;
        for (k, b) in betas.iter().enumerate() {
            let i = k + 2;
            check_tridegree(b, (0, i, 1 - i as i32), &format!("beta_{i}"))?;
        }
        let mut betas = betas;
        while betas.last().is_some_and(SuperOperator::is_zero) {
            betas.pop();
        }
        Ok(Self { ring, bundle: bundle.clone(), gamma, a, betas })
    }

    /// Splits a total matrix part `Γ` into components by tridegree.
    pub fn from_total(bundle: &GradedBundle, total: &SuperOperator) -> Result<Self> {
        let ring = total.ring();
        for (p, q, r) in total.tridegrees() {
            if p != 0 || r != 1 - q as i32 {
                return Err(Error::ShapeMismatch(format!(
                    "term of tridegree {:?} cannot appear in a ∂̄-superconnection",
                    (p, q, r)
                )));
            }
        }
        let gamma = total.tridegree_part(0, 0, 1);
        let a = total.tridegree_part(0, 1, 0);
        let betas = (2..=ring.n()).map(|i| total.tridegree_part(0, i, 1 - i as i32)).collect();
        Self::new(bundle, gamma, a, betas)
    }

    /// The bare Dolbeault superconnection `D̄ = ∂̄`.
    pub fn trivial(ring: RingSpec, bundle: &GradedBundle) -> Self {
        let z = SuperOperator::zero_endo(ring, bundle);
        Self { ring, bundle: bundle.clone(), gamma: z.clone(), a: z, betas: Vec::new() }
    }

    /// `D̄ = ∂̄ + γ` for a holomorphic complex `(E, γ)`.
    pub fn from_complex(bundle: &GradedBundle, gamma: SuperOperator) -> Result<Self> {
        for ((i, a), f) in gamma.entries() {
            if f.terms().keys().any(|b| b.degree() != 0) {
                return Err(Error::Precondition(format!("differential entry ({i}, {a}) is not a function")));
            }
            if !f.delbar().is_zero() {
                return Err(Error::Precondition(format!("differential entry ({i}, {a}) is not holomorphic")));
            }
        }
        let z = SuperOperator::zero_endo(gamma.ring(), bundle);
        let m = Self::new(bundle, gamma, z.clone(), Vec::new())?;
        if !m.gamma.compose(&m.gamma).is_zero() {
            return Err(Error::Precondition("differential does not square to zero".into()));
        }
        Ok(m)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn bundle(&self) -> &GradedBundle {
        &self.bundle
    }

    pub fn gamma(&self) -> &SuperOperator {
        &self.gamma
    }

    /// Matrix part `A` of `∇̄ = ∂̄ + A`.
    pub fn connection(&self) -> &SuperOperator {
        &self.a
    }

    /// `[β̄_2, β̄_3, ...]`.
    pub fn betas(&self) -> &[SuperOperator] {
        &self.betas
    }

    /// `β̄_i` for `i >= 2` (zero when absent).
    pub fn beta(&self, i: usize) -> SuperOperator {
        assert!(i >= 2, "betas start at index 2");
        self.betas.get(i - 2).cloned().unwrap_or_else(|| SuperOperator::zero_endo(self.ring, &self.bundle))
    }

    /// Total matrix part `Γ = γ + A + sum β̄_i`.
    pub fn total(&self) -> SuperOperator {
        let mut t = &self.gamma + &self.a;
        for b in &self.betas {
            t = &t + b;
        }
        t
    }

    /// `D̄^2 = ∂̄(Γ) + Γ∘Γ` as a matrix operator.
    pub fn dbar_squared(&self) -> SuperOperator {
        let g = self.total();
        &g.delbar() + &g.compose(&g)
    }

    /// Graded components of `D̄^2`: entry `q` collects tridegree `(0, q, 2 - q)`,
    /// so that the list reads `γ̄²`, `[γ̄, ∇̄]`, `∇̄² + [γ̄, β̄_2]`, `[∇̄, β̄_2] + [γ̄, β̄_3]`, ...
    pub fn flatness_residues(&self) -> Vec<SuperOperator> {
        let sq = self.dbar_squared();
        (0..=self.ring.n()).map(|q| sq.tridegree_part(0, q, 2 - q as i32)).collect()
    }

    pub fn is_flat(&self) -> bool {
        self.dbar_squared().is_zero()
    }

    pub fn require_flat(&self) -> Result<()> {
        match self.flatness_residues().iter().position(|r| !r.is_zero()) {
            None => Ok(()),
            Some(q) => Err(Error::Precondition(format!("superconnection is not flat (residue {q} is nonzero)"))),
        }
    }

    /// `D̄ s = ∂̄ s + Γ s`.
    pub fn apply(&self, s: &Section) -> Section {
        s.delbar().add(&self.total().apply(s)).expect("shape")
    }

    /// Replaces `β̄_i` for `i >= 2`.
    pub fn with_betas(&self, betas: Vec<SuperOperator>) -> Result<Self> {
        Self::new(&self.bundle, self.gamma.clone(), self.a.clone(), betas)
    }

    pub fn with_dual(&self, dual: bool) -> Self {
        Self {
            ring: self.ring.with_dual(dual),
            bundle: self.bundle.clone(),
            gamma: self.gamma.with_dual(dual),
            a: self.a.with_dual(dual),
            betas: self.betas.iter().map(|b| b.with_dual(dual)).collect(),
        }
    }

    /// `M[k]`: degrees move `j -> j - k` and the matrix part becomes
    /// `(-1)^k τ^k(Γ)` where `τ` is `(-1)^{form degree}` on entries, i.e.
    /// `D̄_{M[1]} = -s^{-1} D̄_M s` for the suspension `s`.
    pub fn shift(&self, k: i32) -> Self {
        let mut g = self.total().shift(k);
        if k.rem_euclid(2) == 1 {
            g = -g.parity_twist();
        }
        Self::from_total(&self.bundle.shift(k), &g).expect("shift preserves tridegrees")
    }

    pub fn direct_sum(&self, other: &DbarSuperconnection) -> Result<Self> {
        let g = self.total().direct_sum(&other.total())?;
        Self::from_total(&self.bundle.direct_sum(&other.bundle), &g)
    }

    /// `D̄_Hom(φ) = ∂̄φ + Γ_N∘φ - (-1)^{|φ|} φ∘Γ_M` for `φ: M -> N`.
    pub fn hom_differential(m: &Self, n: &Self, phi: &SuperOperator) -> Result<SuperOperator> {
        let (even, odd) = phi.split_parity();
        let gn = n.total();
        let gm = m.total();
        let mut out = phi.delbar();
        out = out.try_add(&gn.try_compose(phi)?)?;
        out = out.try_sub(&even.try_compose(&gm)?)?;
        out = out.try_add(&odd.try_compose(&gm)?)?;
        Ok(out)
    }

    /// `D̄ + α`, provided `α` satisfies the Maurer-Cartan equation.
    pub fn twist(&self, alpha: &TwistCochain) -> Result<Self> {
        let residue = alpha.maurer_cartan_residue(self)?;
        if !residue.is_zero() {
            return Err(Error::MaurerCartan { residue: Box::new(residue) });
        }
        Self::from_total(&self.bundle, &(&self.total() + &alpha.alpha))
    }

    /// Cone of a closed degree-0 map `f: M -> N`: the twist of `M[1] ⊕ N`
    /// by `α = f∘s`, where `s: M[1] -> M` is the suspension.
    pub fn cone(m: &Self, n: &Self, f: &SuperOperator) -> Result<Self> {
        if f.source() != &m.bundle || f.target() != &n.bundle {
            return Err(Error::ShapeMismatch("cone map does not go from M to N".into()));
        }
        if f.total_degrees().iter().any(|&d| d != 0) {
            return Err(Error::Precondition("cone map must have total degree 0".into()));
        }
        if !Self::hom_differential(m, n, f)?.is_zero() {
            return Err(Error::Precondition("cone map is not closed".into()));
        }
        let shifted = m.shift(1);
        let sum = shifted.direct_sum(n)?;
        let (left, right) = shifted.bundle.direct_sum_embeddings(&n.bundle);
        // Flat indices of M and M[1] agree, and (f∘s)_{ia} = f_{ia}.
        let alpha = f.embed(&sum.bundle, &left, &sum.bundle, &right);
        sum.twist(&TwistCochain::new(alpha)?)
    }
}

impl fmt::Display for DbarSuperconnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "∂̄-superconnection on {} over {}", self.bundle, self.ring)?;
        writeln!(f, "gamma: {}", self.gamma)?;
        writeln!(f, "A: {}", self.a)?;
        for (k, b) in self.betas.iter().enumerate() {
            writeln!(f, "beta_{}: {}", k + 2, b)?;
        }
        Ok(())
    }
}

/// A strict gauge parameter `φ = φ_1 + φ_2 + ...` with `φ_i` of tridegree `(0, i, -i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaugeParameter {
    total: SuperOperator,
}

impl GaugeParameter {
    pub fn zero(ring: RingSpec, bundle: &GradedBundle) -> Self {
        Self { total: SuperOperator::zero_endo(ring, bundle) }
    }

    /// Validates strictness of an operator sum.
    pub fn from_total(total: SuperOperator) -> Result<Self> {
        if !total.is_endomorphism() {
            return Err(Error::ShapeMismatch("gauge parameter must be an endomorphism".into()));
        }
        for (p, q, r) in total.tridegrees() {
            if p != 0 || q == 0 || r != -(q as i32) {
                return Err(Error::NonStrictGauge(format!("term of tridegree {:?}", (p, q, r))));
            }
        }
        Ok(Self { total })
    }

    pub fn new(phis: Vec<SuperOperator>) -> Result<Self> {
        let mut it = phis.into_iter();
        let first = it.next().ok_or_else(|| Error::Precondition("empty gauge parameter".into()))?;
        let mut total = first;
        for p in it {
            total = total.try_add(&p)?;
        }
        Self::from_total(total)
    }

    pub fn total(&self) -> &SuperOperator {
        &self.total
    }

    /// `φ_i` for `i >= 1`.
    pub fn phi(&self, i: usize) -> SuperOperator {
        self.total.tridegree_part(0, i, -(i as i32))
    }

    pub fn phis(&self) -> Vec<SuperOperator> {
        (1..=self.total.ring().n()).map(|i| self.phi(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }

    /// The parameter of `e^{-φ}`.
    pub fn inverse(&self) -> Self {
        Self { total: -&self.total }
    }

    pub fn exp(&self) -> SuperOperator {
        exp_nilpotent(&self.total)
    }

    /// `φ` with `e^φ = e^{self} e^{then}`, so that gauging by the result equals
    /// gauging by `self` and then by `then`.
    pub fn compose(&self, then: &GaugeParameter) -> Result<Self> {
        let u = self.exp().try_compose(&then.exp())?;
        Self::from_total(log_unipotent(&u))
    }

    pub fn with_dual(&self, dual: bool) -> Self {
        Self { total: self.total.with_dual(dual) }
    }
}

/// `e^{-φ} D̄ e^{φ}`, computed as `Γ' = e^{-φ}∂̄(e^{φ}) + e^{-φ} Γ e^{φ}`.
pub fn gauge(m: &DbarSuperconnection, phi: &GaugeParameter) -> Result<DbarSuperconnection> {
    m.ring.check_same(&phi.total.ring())?;
    if phi.total.source() != &m.bundle {
        return Err(Error::ShapeMismatch("gauge parameter lives on a different bundle".into()));
    }
    if phi.is_zero() {
        return Ok(m.clone());
    }
    let e = phi.exp();
    let e_inv = phi.inverse().exp();
    let g = &e_inv.compose(&e.delbar()) + &e_inv.compose(&m.total()).compose(&e);
    DbarSuperconnection::from_total(&m.bundle, &g)
}

/// A degree-1 cochain used to twist a superconnection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistCochain {
    pub alpha: SuperOperator,
}

impl TwistCochain {
    pub fn new(alpha: SuperOperator) -> Result<Self> {
        if alpha.total_degrees().iter().any(|&d| d != 1) {
            return Err(Error::Precondition("twisting cochain must have total degree 1".into()));
        }
        Ok(Self { alpha })
    }

    /// `∂̄α + Γα + αΓ + α²`.
    pub fn maurer_cartan_residue(&self, m: &DbarSuperconnection) -> Result<SuperOperator> {
        let g = m.total();
        let a = &self.alpha;
        let mut r = a.delbar();
        r = r.try_add(&g.try_compose(a)?)?;
        r = r.try_add(&a.try_compose(&g)?)?;
        r = r.try_add(&a.try_compose(a)?)?;
        Ok(r)
    }
}

/// Basis of `Hom(M, N)` in flat order: `(k, j, row, col)` is the elementary
/// map from the `col`-th basis element of `M^j` to the `row`-th of `N^{j+k}`.
pub fn hom_basis(m: &GradedBundle, n: &GradedBundle) -> Vec<(i32, i32, usize, usize)> {
    let mut ks: Vec<i32> = Vec::new();
    for j in m.degrees() {
        for l in n.degrees() {
            ks.push(l - j);
        }
    }
    ks.sort();
    ks.dedup();
    let mut out = Vec::new();
    for k in ks {
        for j in m.degrees() {
            for row in 0..n.rank(j + k) {
                for col in 0..m.rank(j) {
                    out.push((k, j, row, col));
                }
            }
        }
    }
    out
}

/// The graded bundle `Hom(M, N)` with degree-`k` rank `sum_j r^N_{j+k} r^M_j`.
pub fn hom_bundle(m: &GradedBundle, n: &GradedBundle) -> GradedBundle {
    let mut ranks = std::collections::BTreeMap::new();
    for (k, ..) in hom_basis(m, n) {
        *ranks.entry(k).or_insert(0usize) += 1;
    }
    GradedBundle::new(ranks)
}

/// Reads a section of `Hom(M, N)` as an operator `M -> N`.
pub fn hom_section_to_operator(s: &Section, m: &GradedBundle, n: &GradedBundle) -> SuperOperator {
    let mut op = SuperOperator::zero(s.ring(), m, n);
    for (t, (k, j, row, col)) in hom_basis(m, n).into_iter().enumerate() {
        op.set_entry(n.index(j + k, row), m.index(j, col), s.component(t).clone());
    }
    op
}

/// Writes an operator `M -> N` as a section of `Hom(M, N)`.
pub fn operator_to_hom_section(op: &SuperOperator) -> Section {
    let (m, n) = (op.source(), op.target());
    let comps = hom_basis(m, n)
        .into_iter()
        .map(|(k, j, row, col)| op.entry(n.index(j + k, row), m.index(j, col)))
        .collect();
    Section::from_components(&hom_bundle(m, n), op.ring(), comps).expect("shape")
}

/// The Hom superconnection with `D̄_Hom(φ) = D̄_N∘φ - (-1)^{|φ|} φ∘D̄_M`.
pub fn hom_sc(m: &DbarSuperconnection, n: &DbarSuperconnection) -> Result<DbarSuperconnection> {
    m.ring.check_same(&n.ring)?;
    let ring = m.ring;
    let hb = hom_bundle(&m.bundle, &n.bundle);
    let basis = hom_basis(&m.bundle, &n.bundle);
    let mut total = SuperOperator::zero_endo(ring, &hb);
    for (t, &(k, j, row, col)) in basis.iter().enumerate() {
        let e = SuperOperator::block_entry(ring, &m.bundle, &n.bundle, j, col, j + k, row, Form::one(ring));
        let image = DbarSuperconnection::hom_differential(m, n, &e)?;
        let sec = operator_to_hom_section(&image);
        for (i, f) in sec.components().iter().enumerate() {
            total.set_entry(i, t, f.clone());
        }
    }
    DbarSuperconnection::from_total(&hb, &total)
}

/// Sections `f·ω·e_a` exercising every basis element, a few coefficient
/// functions and every `dzbar` direction.
pub fn spanning_sections(ring: RingSpec, bundle: &GradedBundle) -> Vec<Section> {
    let n = ring.n();
    let mut forms = vec![Form::one(ring), Form::scalar(Scalar::z(ring, 1)), Form::scalar(Scalar::zbar(ring, n))];
    for i in 1..=n {
        forms.push(Form::dzbar(ring, i));
    }
    forms.push(Form::dzbar(ring, 1).scale(&Scalar::zbar(ring, 1)));
    if ring.is_p1() {
        forms.push(Form::scalar(Scalar::p1_weight(ring, 1)));
    }
    let mut out = Vec::new();
    for a in 0..bundle.total_rank() {
        for f in &forms {
            out.push(Section::basis(bundle, a, f.with_dual(ring.dual)));
        }
    }
    out
}

/// Brute-force flatness: `D̄(D̄ s) = 0` on every spanning section.
pub fn brute_force_flat(m: &DbarSuperconnection) -> bool {
    spanning_sections(m.ring, &m.bundle).iter().all(|s| m.apply(&m.apply(s)).is_zero())
}
