//! Dolbeault-type forms `sum f_{I,J} dz^I ∧ dzbar^J` with scalar coefficients.
//!
//! Basis monomials are stored in canonical order: all `dz` factors ascending,
//! then all `dzbar` factors ascending.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::Result;
use crate::scalar::{GaussianRational, RingSpec, Scalar, Wirtinger};

/// `dz^I ∧ dzbar^J` with `I`, `J` encoded as bitmasks (bit `k` is variable `k+1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct FormBasis {
    pub dz: u32,
    pub dzbar: u32,
}

impl FormBasis {
    pub const ONE: FormBasis = FormBasis { dz: 0, dzbar: 0 };

    /// Build from 1-based index lists; `None` if an index repeats.
    pub fn from_indices(dz: &[usize], dzbar: &[usize]) -> Option<(i32, FormBasis)> {
        let mut sign = 1;
        let mut basis = FormBasis::ONE;
        for &i in dz {
            let (s, b) = basis.wedge(&FormBasis::ONE.with_dz(i))?;
            sign *= s;
            basis = b;
        }
        for &j in dzbar {
            let (s, b) = basis.wedge(&FormBasis::ONE.with_dzbar(j))?;
            sign *= s;
            basis = b;
        }
        Some((sign, basis))
    }

    fn with_dz(self, i: usize) -> FormBasis {
        FormBasis { dz: self.dz | (1 << (i - 1)), ..self }
    }

    fn with_dzbar(self, j: usize) -> FormBasis {
        FormBasis { dzbar: self.dzbar | (1 << (j - 1)), ..self }
    }

    pub fn p(&self) -> usize {
        self.dz.count_ones() as usize
    }

    pub fn q(&self) -> usize {
        self.dzbar.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.p() + self.q()
    }

    /// 1-based indices of the `dz` factors.
    pub fn dz_indices(&self) -> Vec<usize> {
        bits(self.dz)
    }

    /// 1-based indices of the `dzbar` factors.
    pub fn dzbar_indices(&self) -> Vec<usize> {
        bits(self.dzbar)
    }

    /// `self ∧ other` as `(sign, basis)`, or `None` when a generator repeats.
    pub fn wedge(&self, other: &FormBasis) -> Option<(i32, FormBasis)> {
        if self.dz & other.dz != 0 || self.dzbar & other.dzbar != 0 {
            return None;
        }
        let swaps = self.q() * other.p() + inversions(self.dz, other.dz) + inversions(self.dzbar, other.dzbar);
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, FormBasis { dz: self.dz | other.dz, dzbar: self.dzbar | other.dzbar }))
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect()
}

/// Pairs `(a in left, b in right)` with `a > b`.
fn inversions(left: u32, right: u32) -> usize {
    bits(right).iter().map(|&b| (left >> b).count_ones() as usize).sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dolbeault {
    Del,
    Delbar,
    D,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    ring: RingSpec,
    terms: BTreeMap<FormBasis, Scalar>,
}

impl Form {
    pub fn zero(ring: RingSpec) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::scalar(Scalar::one(ring))
    }

    /// A 0-form.
    pub fn scalar(s: Scalar) -> Self {
        Self::term(s, FormBasis::ONE)
    }

    pub fn term(s: Scalar, basis: FormBasis) -> Self {
        let mut f = Self::zero(s.ring());
        f.insert(basis, s);
        f
    }

    pub fn constant(ring: RingSpec, c: GaussianRational) -> Self {
        Self::scalar(Scalar::constant(ring, c))
    }

    /// `dz^i` (1-based).
    pub fn dz(ring: RingSpec, i: usize) -> Self {
        assert!(i >= 1 && i <= ring.n(), "dz index out of range");
        Self::term(Scalar::one(ring), FormBasis::ONE.with_dz(i))
    }

    /// `dzbar^j` (1-based).
    pub fn dzbar(ring: RingSpec, j: usize) -> Self {
        assert!(j >= 1 && j <= ring.n(), "dzbar index out of range");
        Self::term(Scalar::one(ring), FormBasis::ONE.with_dzbar(j))
    }

    /// `s · dz^I ∧ dzbar^J` from 1-based index lists in any order.
    pub fn monomial(s: Scalar, dz: &[usize], dzbar: &[usize]) -> Self {
        let n = s.ring().n();
        assert!(dz.iter().chain(dzbar).all(|&i| i >= 1 && i <= n), "form index out of range");
        match FormBasis::from_indices(dz, dzbar) {
            Some((sign, basis)) => Self::term(if sign < 0 { -s } else { s }, basis),
            None => Self::zero(s.ring()),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<FormBasis, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, basis: &FormBasis) -> Scalar {
        self.terms.get(basis).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, basis: FormBasis, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The total degree if all terms share one, `None` for zero or mixed forms.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(FormBasis::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn try_add(&self, other: &Form) -> Result<Form> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (b, s) in &other.terms {
            out.insert(*b, s.clone());
        }
        Ok(out)
    }

    pub fn try_wedge(&self, other: &Form) -> Result<Form> {
        self.ring.check_same(&other.ring)?;
        let mut out = Form::zero(self.ring);
        for (ba, sa) in &self.terms {
            for (bb, sb) in &other.terms {
                if let Some((sign, b)) = ba.wedge(bb) {
                    let prod = sa * sb;
                    out.insert(b, if sign < 0 { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ other`. Panics on ring mismatch; see [`Form::try_wedge`].
    pub fn wedge(&self, other: &Form) -> Form {
        self.try_wedge(other).unwrap()
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        let mut out = Form::zero(self.ring);
        for (b, c) in &self.terms {
            out.insert(*b, c * s);
        }
        out
    }

    pub fn scale_constant(&self, c: &GaussianRational) -> Form {
        self.map_coefficients(|s| s.scale(c))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Form {
        let mut out = Form::zero(self.ring);
        for (b, c) in &self.terms {
            out.insert(*b, f(c));
        }
        out
    }

    /// `(-1)^{deg}` applied termwise.
    pub fn parity_twist(&self) -> Form {
        let mut out = Form::zero(self.ring);
        for (b, c) in &self.terms {
            out.insert(*b, if b.degree() % 2 == 1 { -c } else { c.clone() });
        }
        out
    }

    pub fn dolbeault(&self, kind: Dolbeault) -> Form {
        match kind {
            Dolbeault::Del => self.partial(Wirtinger::Z),
            Dolbeault::Delbar => self.partial(Wirtinger::Zbar),
            Dolbeault::D => &self.partial(Wirtinger::Z) + &self.partial(Wirtinger::Zbar),
        }
    }

    pub fn del(&self) -> Form {
        self.partial(Wirtinger::Z)
    }

    pub fn delbar(&self) -> Form {
        self.partial(Wirtinger::Zbar)
    }

    pub fn d(&self) -> Form {
        self.dolbeault(Dolbeault::D)
    }

    fn partial(&self, kind: Wirtinger) -> Form {
        let mut out = Form::zero(self.ring);
        for (b, s) in &self.terms {
            for k in 1..=self.ring.n() {
                let ds = s.wirtinger(kind, k).expect("index in range");
                if ds.is_zero() {
                    continue;
                }
                let gen = match kind {
                    Wirtinger::Z => FormBasis::ONE.with_dz(k),
                    Wirtinger::Zbar => FormBasis::ONE.with_dzbar(k),
                };
                if let Some((sign, nb)) = gen.wedge(b) {
                    out.insert(nb, if sign < 0 { -ds } else { ds });
                }
            }
        }
        out
    }

    /// Complex conjugation: `conj(f dz^I dzbar^J) = (-1)^{|I||J|} conj(f) dz^J dzbar^I`.
    pub fn conj(&self) -> Form {
        let mut out = Form::zero(self.ring);
        for (b, s) in &self.terms {
            let c = s.conj();
            let nb = FormBasis { dz: b.dzbar, dzbar: b.dz };
            out.insert(nb, if (b.p() * b.q()) % 2 == 1 { -c } else { c });
        }
        out
    }

    /// The `(p, q)` type component.
    pub fn component(&self, p: usize, q: usize) -> Form {
        Form {
            ring: self.ring,
            terms: self.terms.iter().filter(|(b, _)| b.p() == p && b.q() == q).map(|(b, s)| (*b, s.clone())).collect(),
        }
    }

    /// Component of total degree `k`.
    pub fn degree_part(&self, k: usize) -> Form {
        Form {
            ring: self.ring,
            terms: self.terms.iter().filter(|(b, _)| b.degree() == k).map(|(b, s)| (*b, s.clone())).collect(),
        }
    }

    /// Types `(p, q)` with a nonzero component.
    pub fn types(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|b| (b.p(), b.q())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn with_dual(&self, dual: bool) -> Form {
        let mut out = Form::zero(self.ring.with_dual(dual));
        for (b, s) in &self.terms {
            out.insert(*b, s.with_dual(dual));
        }
        out
    }

    /// `(value part, eps coefficient)`.
    pub fn split_eps(&self) -> (Form, Form) {
        let mut base = Form::zero(self.ring);
        let mut eps = Form::zero(self.ring);
        for (b, s) in &self.terms {
            let (x, y) = s.split_eps();
            base.insert(*b, x);
            eps.insert(*b, y);
        }
        (base, eps)
    }

    /// Largest polynomial degree of any coefficient.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.values().map(Scalar::degree).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        self.try_add(o).unwrap()
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self.try_add(&-o).unwrap()
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form { ring: self.ring, terms: self.terms.iter().map(|(b, s)| (*b, -s)).collect() }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, o: &Form) {
        self.ring.check_same(&o.ring).unwrap();
        for (b, s) in &o.terms {
            self.insert(*b, s.clone());
        }
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, o: &Form) {
        self.ring.check_same(&o.ring).unwrap();
        for (b, s) in &o.terms {
            self.insert(*b, -s);
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, s)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{s}]")?;
            for i in b.dz_indices() {
                write!(f, "·dz{i}")?;
            }
            for j in b.dzbar_indices() {
                write!(f, "·dzbar{j}")?;
            }
        }
        Ok(())
    }
}
