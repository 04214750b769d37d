//! Hermitian metrics on trivial graded bundles and the induced pairing.
//!
//! A metric is a block-diagonal matrix `h` of scalar functions stored together
//! with its exact inverse. The pairing on sections is sesquilinear:
//! `(ω1 e_a, ω2 e_b) = conj(ω1) ∧ (-1)^{|ω2| deg(e_a)} ω2 g_ab`, where the
//! graded matrix `g` is `h` on even degrees and `i h` on odd degrees, so that
//! `conj(s1, s2) = (-1)^{|s1||s2|} (s2, s1)`.

use num::{Signed, Zero};

use crate::bundle::{GradedBundle, Section};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::operator::SuperOperator;
use crate::scalar::{GaussianRational, Rational, RingSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    h: SuperOperator,
    h_inv: SuperOperator,
}

/// Conjugate transpose of a matrix of forms.
pub fn adjoint(op: &SuperOperator) -> SuperOperator {
    let mut out = SuperOperator::zero(op.ring(), op.target(), op.source());
    for (&(i, a), f) in op.entries() {
        out.set_entry(a, i, f.conj());
    }
    out
}

/// `(1 + z zbar)^-k` in the P1 ring, for any integer `k`.
pub fn p1_power(ring: RingSpec, k: i32) -> Scalar {
    if k >= 0 {
        Scalar::p1_weight(ring, k as u32)
    } else {
        let w = &Scalar::one(ring) + &(&Scalar::z(ring, 1) * &Scalar::zbar(ring, 1));
        w.pow((-k) as u32)
    }
}

/// `(g, g^-1)` for `g = 1 + N` with `N` nilpotent and of degree zero.
pub fn unimodular(nilpotent: &SuperOperator) -> Result<(SuperOperator, SuperOperator)> {
    let ring = nilpotent.ring();
    let bundle = nilpotent.source();
    if nilpotent.entries().values().any(|f| f.terms().keys().any(|b| b.degree() != 0)) {
        return Err(Error::Precondition("gauge matrix must have function entries".into()));
    }
    let id = SuperOperator::identity(ring, bundle);
    let mut inv = id.clone();
    let mut power = id.clone();
    for k in 1..=bundle.total_rank() + 1 {
        power = power.compose(nilpotent);
        if power.is_zero() {
            return Ok((&id + nilpotent, inv));
        }
        inv = if k % 2 == 1 { &inv - &power } else { &inv + &power };
    }
    Err(Error::Precondition("matrix is not nilpotent".into()))
}

fn value_at_origin(s: &Scalar) -> GaussianRational {
    let mut v = GaussianRational::zero();
    for (m, c) in s.terms() {
        if m.degree() == 0 && !m.eps {
            v += c;
        }
    }
    v
}

/// Positive definiteness of a Hermitian constant matrix by its pivots.
fn is_positive_definite(mut a: Vec<Vec<GaussianRational>>) -> bool {
    let n = a.len();
    for k in 0..n {
        let p = a[k][k].clone();
        if !p.is_real() || !p.re.is_positive() {
            return false;
        }
        let p_inv = p.inv().expect("nonzero");
        for i in k + 1..n {
            let f = &a[i][k] * &p_inv;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= &d;
            }
        }
    }
    true
}

/// Inverse of a constant matrix by Gauss-Jordan elimination.
pub fn invert_constant(a: &[Vec<GaussianRational>]) -> Option<Vec<Vec<GaussianRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<GaussianRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv()?;
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..2 * n {
                    let d = &f * &m[col][j];
                    m[r][j] -= &d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl HermitianMetric {
    /// Validates symmetry, block-diagonality, the inverse and positivity at the origin.
    pub fn new(h: SuperOperator, h_inv: SuperOperator) -> Result<Self> {
        if !h.is_endomorphism() || h_inv.source() != h.source() || h_inv.target() != h.target() {
            return Err(Error::InvalidMetric("metric and inverse must be endomorphisms of one bundle".into()));
        }
        for op in [&h, &h_inv] {
            for (&(i, a), f) in op.entries() {
                if f.terms().keys().any(|b| b.degree() != 0) {
                    return Err(Error::InvalidMetric(format!("entry ({i}, {a}) is not a function")));
                }
                if op.entry_shift(i, a) != 0 {
                    return Err(Error::InvalidMetric(format!("entry ({i}, {a}) couples different degrees")));
                }
            }
        }
        if adjoint(&h) != h {
            return Err(Error::InvalidMetric("matrix is not Hermitian".into()));
        }
        let id = SuperOperator::identity(h.ring(), h.source());
        if h.compose(&h_inv) != id || h_inv.compose(&h) != id {
            return Err(Error::InvalidMetric("stated inverse is wrong".into()));
        }
        let bundle = h.source().clone();
        for d in bundle.degrees() {
            let r = bundle.rank(d);
            let block: Vec<Vec<GaussianRational>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|a| {
                            let f = h.entry(bundle.index(d, i), bundle.index(d, a));
                            value_at_origin(&f.coefficient(&crate::form::FormBasis::ONE))
                        })
                        .collect()
                })
                .collect();
            if !is_positive_definite(block) {
                return Err(Error::InvalidMetric(format!("degree {d} block is not positive at the origin")));
            }
        }
        Ok(Self { h, h_inv })
    }

    pub fn identity(ring: RingSpec, bundle: &GradedBundle) -> Self {
        let id = SuperOperator::identity(ring, bundle);
        Self { h: id.clone(), h_inv: id }
    }

    /// Constant blocks, one square matrix per bundle degree.
    pub fn constant(ring: RingSpec, bundle: &GradedBundle, blocks: &[Vec<Vec<GaussianRational>>]) -> Result<Self> {
        if blocks.len() != bundle.ranks().len() {
            return Err(Error::InvalidMetric("one block per bundle degree expected".into()));
        }
        let mut h = SuperOperator::zero_endo(ring, bundle);
        let mut h_inv = SuperOperator::zero_endo(ring, bundle);
        for (d, block) in bundle.degrees().zip(blocks) {
            let r = bundle.rank(d);
            if block.len() != r || block.iter().any(|row| row.len() != r) {
                return Err(Error::InvalidMetric(format!("degree {d} block must be {r}x{r}")));
            }
            let inv = invert_constant(block).ok_or_else(|| Error::InvalidMetric(format!("degree {d} block is singular")))?;
            for i in 0..r {
                for a in 0..r {
                    let (row, col) = (bundle.index(d, i), bundle.index(d, a));
                    h.set_entry(row, col, Form::constant(ring, block[i][a].clone()));
                    h_inv.set_entry(row, col, Form::constant(ring, inv[i][a].clone()));
                }
            }
        }
        Self::new(h, h_inv)
    }

    /// Diagonal metric with invertible scalar entries (constants, or
    /// `c (1+z zbar)^k` on the P1 model).
    pub fn diagonal(ring: RingSpec, bundle: &GradedBundle, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != bundle.total_rank() {
            return Err(Error::InvalidMetric("one diagonal entry per basis element expected".into()));
        }
        let mut h = SuperOperator::zero_endo(ring, bundle);
        let mut h_inv = SuperOperator::zero_endo(ring, bundle);
        for (a, s) in entries.iter().enumerate() {
            let inv = s.try_inverse().ok_or_else(|| Error::InvalidMetric(format!("entry {a} is not an exact unit")))?;
            h.set_entry(a, a, Form::scalar(s.clone()));
            h_inv.set_entry(a, a, Form::scalar(inv));
        }
        Self::new(h, h_inv)
    }

    /// The P1 metric with diagonal entries `(1 + z zbar)^-k_a`.
    pub fn p1_line_weights(bundle: &GradedBundle, weights: &[i32]) -> Result<Self> {
        let ring = RingSpec::p1();
        let entries: Vec<Scalar> = weights.iter().map(|&k| p1_power(ring, k)).collect();
        Self::diagonal(ring, bundle, &entries)
    }

    pub fn ring(&self) -> RingSpec {
        self.h.ring()
    }

    pub fn bundle(&self) -> &GradedBundle {
        self.h.source()
    }

    pub fn matrix(&self) -> &SuperOperator {
        &self.h
    }

    pub fn inverse(&self) -> &SuperOperator {
        &self.h_inv
    }

    fn graded_factor(&self, a: usize) -> GaussianRational {
        if self.bundle().degree_vector()[a].rem_euclid(2) == 1 {
            GaussianRational::i()
        } else {
            GaussianRational::one()
        }
    }

    /// `g = i^{deg} h` blockwise: the matrix of the pairing on basis sections.
    pub fn graded_matrix(&self) -> SuperOperator {
        self.h.map_entries(|_, a, f| f.scale_constant(&self.graded_factor(a)))
    }

    pub fn graded_inverse(&self) -> SuperOperator {
        self.h_inv.map_entries(|_, a, f| f.scale_constant(&self.graded_factor(a).inv().expect("unit")))
    }

    /// `g^† h g`, the metric pulled back along `g`.
    pub fn gauged(&self, g: &SuperOperator, g_inv: &SuperOperator) -> Result<Self> {
        let h = adjoint(g).try_compose(&self.h)?.try_compose(g)?;
        let h_inv = g_inv.try_compose(&self.h_inv)?.try_compose(&adjoint(g_inv))?;
        Self::new(h, h_inv)
    }

    /// `h_j ↦ t^j h_j`.
    pub fn rescale(&self, t: &Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Precondition("rescaling parameter must be nonzero".into()));
        }
        let degs = self.bundle().degree_vector();
        let h = self.h.map_entries(|_, a, f| f.scale_constant(&GaussianRational::real(rational_power(t, degs[a]))));
        let h_inv =
            self.h_inv.map_entries(|_, a, f| f.scale_constant(&GaussianRational::real(rational_power(t, -degs[a]))));
        Ok(Self { h, h_inv })
    }

    /// The metric `(s1, s2) + eps (s1, δh s2)` over the dual ring, for an
    /// `h`-self-adjoint degree-0 endomorphism `δh`.
    pub fn perturb(&self, delta_h: &SuperOperator) -> Result<Self> {
        let ring = self.ring().with_dual(true);
        let base = self.with_dual(true);
        let dh = delta_h.with_dual(true);
        let hdh = base.h.try_compose(&dh)?;
        if adjoint(&hdh) != hdh {
            return Err(Error::Precondition("metric variation is not self-adjoint".into()));
        }
        let eps = Scalar::eps(ring);
        let h = &base.h + &hdh.scale(&eps);
        let h_inv = &base.h_inv - &dh.compose(&base.h_inv).scale(&eps);
        Self::new(h, h_inv)
    }

    pub fn with_dual(&self, dual: bool) -> Self {
        Self { h: self.h.with_dual(dual), h_inv: self.h_inv.with_dual(dual) }
    }

    /// The metric on the shifted bundle with the same blocks.
    pub fn shift(&self, k: i32) -> Self {
        Self { h: self.h.shift(k), h_inv: self.h_inv.shift(k) }
    }

    pub fn direct_sum(&self, other: &HermitianMetric) -> Result<Self> {
        Ok(Self { h: self.h.direct_sum(&other.h)?, h_inv: self.h_inv.direct_sum(&other.h_inv)? })
    }

    /// The form-valued pairing `(s1, s2)`.
    pub fn pair(&self, s1: &Section, s2: &Section) -> Form {
        let degs = self.bundle().degree_vector();
        let mut out = Form::zero(self.ring());
        for (&(a, b), hab) in self.graded_matrix().entries() {
            let left = s1.component(a).conj();
            let mut right = s2.component(b).clone();
            if degs[a].rem_euclid(2) == 1 {
                right = right.parity_twist();
            }
            out += &left.wedge(&right).wedge(hab);
        }
        out
    }
}

/// `t^j` for a nonzero rational `t` and any integer `j`.
pub fn rational_power(t: &Rational, j: i32) -> Rational {
    if j >= 0 {
        num::pow(t.clone(), j as usize)
    } else {
        num::pow(t.recip(), (-j) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn constant_metric_inverse_and_positivity() {
        let r = RingSpec::poly(1);
        let b = GradedBundle::new([(0, 2)]);
        let m = HermitianMetric::constant(r, &b, &[vec![vec![g(2), GaussianRational::i()], vec![-GaussianRational::i(), g(1)]]])
            .unwrap();
        assert_eq!(m.matrix().compose(m.inverse()), SuperOperator::identity(r, &b));
        let bad = HermitianMetric::constant(r, &b, &[vec![vec![g(1), g(2)], vec![g(2), g(1)]]]);
        assert!(matches!(bad, Err(Error::InvalidMetric(_))));
        let not_hermitian = HermitianMetric::constant(r, &b, &[vec![vec![g(1), g(1)], vec![g(0), g(1)]]]);
        assert!(not_hermitian.is_err());
    }

    #[test]
    fn unimodular_gauge_keeps_inverse_polynomial() {
        let r = RingSpec::poly(2);
        let b = GradedBundle::new([(0, 2)]);
        let n = SuperOperator::from_entries(r, &b, &b, [(0, 1, Form::scalar(&Scalar::z(r, 1) * &Scalar::zbar(r, 2)))]).unwrap();
        let (gm, gi) = unimodular(&n).unwrap();
        let m = HermitianMetric::identity(r, &b).gauged(&gm, &gi).unwrap();
        assert_eq!(m.matrix().compose(m.inverse()), SuperOperator::identity(r, &b));
    }

    #[test]
    fn p1_weights_have_exact_inverses() {
        let b = GradedBundle::new([(0, 1), (1, 1)]);
        let m = HermitianMetric::p1_line_weights(&b, &[2, -1]).unwrap();
        assert_eq!(m.matrix().compose(m.inverse()), SuperOperator::identity(RingSpec::p1(), &b));
    }

    #[test]
    fn pairing_is_sesquilinear() {
        let r = RingSpec::poly(2);
        let b = GradedBundle::new([(0, 1), (1, 1)]);
        let m = HermitianMetric::constant(r, &b, &[vec![vec![g(2)]], vec![vec![g(3)]]]).unwrap();
        let alpha = Form::dzbar(r, 1).scale(&Scalar::z(r, 2));
        for a in 0..2 {
            for c in 0..2 {
                let s1 = Section::basis(&b, a, Form::dz(r, 2));
                let s2 = Section::basis(&b, c, Form::scalar(Scalar::zbar(r, 1)));
                let base = m.pair(&s1, &s2);
                // (α s1, s2) = conj(α) (s1, s2)
                assert_eq!(m.pair(&s1.left_multiply(&alpha), &s2), alpha.conj().wedge(&base));
                // (s1, α s2) = (-1)^{|α||s1|} α (s1, s2)
                let deg_s1 = 1 + b.degree_vector()[a];
                let sign = if deg_s1.rem_euclid(2) == 1 { -1 } else { 1 };
                assert_eq!(m.pair(&s1, &s2.left_multiply(&alpha)), alpha.wedge(&base).scale_constant(&g(sign)));
            }
        }
    }

    #[test]
    fn rescaling_multiplies_blocks() {
        let r = RingSpec::poly(1);
        let b = GradedBundle::new([(-1, 1), (1, 1)]);
        let m = HermitianMetric::identity(r, &b).rescale(&rat(2, 1)).unwrap();
        assert_eq!(m.matrix().entry(0, 0), Form::constant(r, GaussianRational::ratio(1, 2)));
        assert_eq!(m.matrix().entry(1, 1), Form::constant(r, g(2)));
        assert_eq!(m.matrix().compose(m.inverse()), SuperOperator::identity(r, &b));
    }
}
