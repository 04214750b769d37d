//! Form-valued matrix operators between graded bundles.
//!
//! An operator `T: E → F` is stored by its values on basis sections,
//! `T(e_a) = sum_i T_{ia} ⊗ f_i`, with the form `T_{ia}` written on the left.
//! It acts on all sections through the sign rule
//! `T(omega·s) = (-1)^{|T||omega|} omega·T(s)`.
//!
//! A term of `T_{ia}` of form type `(p, q)` has tridegree `(p, q, deg f_i - deg e_a)`
//! and total degree `p + q + deg f_i - deg e_a`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::bundle::{GradedBundle, Section};
use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::scalar::{GaussianRational, RingSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperOperator {
    ring: RingSpec,
    source: GradedBundle,
    target: GradedBundle,
    entries: BTreeMap<(usize, usize), Form>,
}

/// Tridegree `(p, q, r)`: `dz`-degree, `dzbar`-degree, bundle-degree shift.
pub type Tridegree = (usize, usize, i32);

/// Splits `f` by the parity of `form degree + offset`.
fn split_parity(f: &Form, offset: i32) -> (Form, Form) {
    let ring = f.ring();
    let mut even = Form::zero(ring);
    let mut odd = Form::zero(ring);
    for (b, s) in f.terms() {
        let t = Form::term(s.clone(), *b);
        if (b.degree() as i32 + offset).rem_euclid(2) == 0 {
            even += &t;
        } else {
            odd += &t;
        }
    }
    (even, odd)
}

impl SuperOperator {
    pub fn zero(ring: RingSpec, source: &GradedBundle, target: &GradedBundle) -> Self {
        Self { ring, source: source.clone(), target: target.clone(), entries: BTreeMap::new() }
    }

    pub fn zero_endo(ring: RingSpec, bundle: &GradedBundle) -> Self {
        Self::zero(ring, bundle, bundle)
    }

    pub fn identity(ring: RingSpec, bundle: &GradedBundle) -> Self {
        let mut op = Self::zero_endo(ring, bundle);
        for a in 0..bundle.total_rank() {
            op.set_entry(a, a, Form::one(ring));
        }
        op
    }

    /// Builds from `(row, col, form)` triples over flat indices; repeated
    /// positions are summed.
    pub fn from_entries(
        ring: RingSpec,
        source: &GradedBundle,
        target: &GradedBundle,
        entries: impl IntoIterator<Item = (usize, usize, Form)>,
    ) -> Result<Self> {
        let mut op = Self::zero(ring, source, target);
        for (i, a, f) in entries {
            if i >= target.total_rank() || a >= source.total_rank() {
                return Err(Error::ShapeMismatch(format!("entry ({i}, {a}) outside {target} x {source}")));
            }
            ring.check_same(&f.ring())?;
            op.add_to_entry(i, a, &f);
        }
        Ok(op)
    }

    /// A single block entry addressed by degrees and positions inside them.
    pub fn block_entry(
        ring: RingSpec,
        source: &GradedBundle,
        target: &GradedBundle,
        source_degree: i32,
        col: usize,
        target_degree: i32,
        row: usize,
        f: Form,
    ) -> Self {
        let mut op = Self::zero(ring, source, target);
        op.set_entry(target.index(target_degree, row), source.index(source_degree, col), f);
        op
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn source(&self) -> &GradedBundle {
        &self.source
    }

    pub fn target(&self) -> &GradedBundle {
        &self.target
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Form> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Form {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| Form::zero(self.ring))
    }

    pub fn set_entry(&mut self, row: usize, col: usize, f: Form) {
        if f.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), f);
        }
    }

    pub fn add_to_entry(&mut self, row: usize, col: usize, f: &Form) {
        if f.is_zero() {
            return;
        }
        let e = self.entries.entry((row, col)).or_insert_with(|| Form::zero(f.ring()));
        *e += f;
        if e.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bundle-degree shift `deg f_row - deg e_col` of an entry.
    pub fn entry_shift(&self, row: usize, col: usize) -> i32 {
        self.target.degree_vector()[row] - self.source.degree_vector()[col]
    }

    fn degree_vectors(&self) -> (Vec<i32>, Vec<i32>) {
        (self.target.degree_vector(), self.source.degree_vector())
    }

    pub fn map_entries(&self, f: impl Fn(usize, usize, &Form) -> Form) -> SuperOperator {
        let mut out = Self::zero(self.ring, &self.source, &self.target);
        for (&(i, a), e) in &self.entries {
            out.set_entry(i, a, f(i, a, e));
        }
        out
    }

    /// Keeps only terms whose tridegree satisfies `keep`.
    pub fn filter_tridegree(&self, keep: impl Fn(Tridegree) -> bool) -> SuperOperator {
        let (tdeg, sdeg) = self.degree_vectors();
        let mut out = Self::zero(self.ring, &self.source, &self.target);
        for (&(i, a), e) in &self.entries {
            let r = tdeg[i] - sdeg[a];
            let mut kept = Form::zero(self.ring);
            for (b, s) in e.terms() {
                if keep((b.p(), b.q(), r)) {
                    kept += &Form::term(s.clone(), *b);
                }
            }
            out.set_entry(i, a, kept);
        }
        out
    }

    pub fn tridegree_part(&self, p: usize, q: usize, r: i32) -> SuperOperator {
        self.filter_tridegree(|t| t == (p, q, r))
    }

    pub fn tridegrees(&self) -> BTreeSet<Tridegree> {
        let (tdeg, sdeg) = self.degree_vectors();
        let mut out = BTreeSet::new();
        for (&(i, a), e) in &self.entries {
            for b in e.terms().keys() {
                out.insert((b.p(), b.q(), tdeg[i] - sdeg[a]));
            }
        }
        out
    }

    /// Total degrees `p + q + r` present.
    pub fn total_degrees(&self) -> BTreeSet<i32> {
        self.tridegrees().into_iter().map(|(p, q, r)| (p + q) as i32 + r).collect()
    }

    /// The common total degree, `None` for zero or inhomogeneous operators.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let degs = self.total_degrees();
        if degs.len() == 1 {
            degs.into_iter().next()
        } else {
            None
        }
    }

    /// `(even part, odd part)` by total degree.
    pub fn split_parity(&self) -> (SuperOperator, SuperOperator) {
        let (tdeg, sdeg) = self.degree_vectors();
        let mut even = Self::zero(self.ring, &self.source, &self.target);
        let mut odd = even.clone();
        for (&(i, a), e) in &self.entries {
            let (x, y) = split_parity(e, tdeg[i] - sdeg[a]);
            even.set_entry(i, a, x);
            odd.set_entry(i, a, y);
        }
        (even, odd)
    }

    fn check_same_shape(&self, other: &SuperOperator) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(format!(
                "operators {} -> {} and {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SuperOperator) -> Result<SuperOperator> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (&(i, a), e) in &other.entries {
            out.add_to_entry(i, a, e);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SuperOperator) -> Result<SuperOperator> {
        self.try_add(&-other)
    }

    /// Entrywise multiplication by a scalar (scalars are even, so this is
    /// multiplication on either side).
    pub fn scale(&self, s: &Scalar) -> SuperOperator {
        self.map_entries(|_, _, e| e.scale(s))
    }

    pub fn scale_constant(&self, c: &GaussianRational) -> SuperOperator {
        self.map_entries(|_, _, e| e.scale_constant(c))
    }

    /// `self ∘ other`.
    pub fn try_compose(&self, other: &SuperOperator) -> Result<SuperOperator> {
        self.ring.check_same(&other.ring)?;
        if other.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let mid = self.source.degree_vector();
        let tdeg = self.target.degree_vector();
        // S(T(e_a)) = sum_i S(T_ia e_i) = sum_{i,k} (-1)^{|s||t|} T_ia ∧ S_ki e_k,
        // with |s| the total degree of the S-term and |t| the form degree of the T-term.
        let mut by_col: BTreeMap<usize, Vec<(usize, Form, Form)>> = BTreeMap::new();
        for (&(k, i), s) in &self.entries {
            let (even, odd) = split_parity(s, tdeg[k] - mid[i]);
            let twisted = &even - &odd;
            by_col.entry(i).or_default().push((k, s.clone(), twisted));
        }
        let mut out = Self::zero(self.ring, &other.source, &self.target);
        for (&(i, a), t) in &other.entries {
            let Some(list) = by_col.get(&i) else { continue };
            let (t_even, t_odd) = split_parity(t, 0);
            for (k, s, s_twisted) in list {
                let mut v = t_even.wedge(s);
                v += &t_odd.wedge(s_twisted);
                out.add_to_entry(*k, a, &v);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`. Panics on shape mismatch; see [`SuperOperator::try_compose`].
    pub fn compose(&self, other: &SuperOperator) -> SuperOperator {
        self.try_compose(other).unwrap()
    }

    /// Supercommutator `[S, T] = S∘T - (-1)^{|S||T|} T∘S`, extended bilinearly
    /// over the parity decomposition.
    pub fn try_bracket(&self, other: &SuperOperator) -> Result<SuperOperator> {
        let st = self.try_compose(other)?;
        let ts = other.try_compose(self)?;
        let (_, s_odd) = self.split_parity();
        let (_, t_odd) = other.split_parity();
        // [S,T] = S∘T - T∘S + 2 T_odd∘S_odd.
        let odd_odd = t_odd.try_compose(&s_odd)?;
        let mut out = st.try_sub(&ts)?;
        out = out.try_add(&odd_odd)?;
        out = out.try_add(&odd_odd)?;
        Ok(out)
    }

    pub fn bracket(&self, other: &SuperOperator) -> SuperOperator {
        self.try_bracket(other).unwrap()
    }

    pub fn pow(&self, k: u32) -> SuperOperator {
        assert!(self.is_endomorphism(), "power of a non-endomorphism");
        let mut out = Self::identity(self.ring, &self.source);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    /// Action on a section through the sign rule.
    pub fn try_apply(&self, s: &Section) -> Result<Section> {
        self.ring.check_same(&s.ring())?;
        if s.bundle() != &self.source {
            return Err(Error::ShapeMismatch(format!("operator on {} applied to section of {}", self.source, s.bundle())));
        }
        let (tdeg, sdeg) = self.degree_vectors();
        let mut comps = vec![Form::zero(self.ring); self.target.total_rank()];
        for (&(i, a), t) in &self.entries {
            let omega = s.component(a);
            if omega.is_zero() {
                continue;
            }
            let (t_even, t_odd) = split_parity(t, tdeg[i] - sdeg[a]);
            let (w_even, w_odd) = split_parity(omega, 0);
            let mut v = omega.wedge(&t_even);
            v += &w_even.wedge(&t_odd);
            v -= &w_odd.wedge(&t_odd);
            comps[i] += &v;
        }
        Section::from_components(&self.target, self.ring, comps)
    }

    pub fn apply(&self, s: &Section) -> Section {
        self.try_apply(s).unwrap()
    }

    /// Entrywise `∂̄`; equals the supercommutator `[∂̄, T]`.
    pub fn delbar(&self) -> SuperOperator {
        self.map_entries(|_, _, e| e.delbar())
    }

    /// Entrywise `∂`; equals the supercommutator `[∂, T]`.
    pub fn del(&self) -> SuperOperator {
        self.map_entries(|_, _, e| e.del())
    }

    /// Entrywise `d = ∂ + ∂̄`.
    pub fn d(&self) -> SuperOperator {
        self.map_entries(|_, _, e| e.d())
    }

    /// `sum_a (-1)^{deg e_a} T_aa`. Entries off the diagonal never contribute,
    /// in particular no block with nonzero bundle-degree shift does.
    pub fn supertrace(&self) -> Result<Form> {
        if !self.is_endomorphism() {
            return Err(Error::ShapeMismatch(format!("supertrace of {} -> {}", self.source, self.target)));
        }
        let degs = self.source.degree_vector();
        let mut out = Form::zero(self.ring);
        for (&(i, a), e) in &self.entries {
            if i != a {
                continue;
            }
            if degs[a].rem_euclid(2) == 0 {
                out += e;
            } else {
                out -= e;
            }
        }
        Ok(out)
    }

    /// Reindexes source and target degrees `j -> j - k` without changing entries.
    pub fn shift(&self, k: i32) -> SuperOperator {
        SuperOperator {
            ring: self.ring,
            source: self.source.shift(k),
            target: self.target.shift(k),
            entries: self.entries.clone(),
        }
    }

    /// Multiplies every entry term by `(-1)^{form degree}`.
    pub fn parity_twist(&self) -> SuperOperator {
        self.map_entries(|_, _, e| e.parity_twist())
    }

    /// Block-diagonal `self ⊕ other` on the direct-sum bundles.
    pub fn direct_sum(&self, other: &SuperOperator) -> Result<SuperOperator> {
        self.ring.check_same(&other.ring)?;
        let (sl, sr) = self.source.direct_sum_embeddings(&other.source);
        let (tl, tr) = self.target.direct_sum_embeddings(&other.target);
        let mut out = Self::zero(self.ring, &self.source.direct_sum(&other.source), &self.target.direct_sum(&other.target));
        for (&(i, a), e) in &self.entries {
            out.set_entry(tl[i], sl[a], e.clone());
        }
        for (&(i, a), e) in &other.entries {
            out.set_entry(tr[i], sr[a], e.clone());
        }
        Ok(out)
    }

    /// Re-homes entries into larger bundles along index maps.
    pub fn embed(
        &self,
        source: &GradedBundle,
        source_map: &[usize],
        target: &GradedBundle,
        target_map: &[usize],
    ) -> SuperOperator {
        let mut out = Self::zero(self.ring, source, target);
        for (&(i, a), e) in &self.entries {
            out.set_entry(target_map[i], source_map[a], e.clone());
        }
        out
    }

    /// Extracts the sub-operator between index subsets (inverse of [`embed`](Self::embed)).
    pub fn restrict(
        &self,
        source: &GradedBundle,
        source_map: &[usize],
        target: &GradedBundle,
        target_map: &[usize],
    ) -> SuperOperator {
        let mut out = Self::zero(self.ring, source, target);
        for (i, &ti) in target_map.iter().enumerate() {
            for (a, &sa) in source_map.iter().enumerate() {
                if let Some(e) = self.entries.get(&(ti, sa)) {
                    out.set_entry(i, a, e.clone());
                }
            }
        }
        out
    }

    pub fn with_dual(&self, dual: bool) -> SuperOperator {
        let mut out = Self::zero(self.ring.with_dual(dual), &self.source, &self.target);
        for (&(i, a), e) in &self.entries {
            out.set_entry(i, a, e.with_dual(dual));
        }
        out
    }

    /// `(value part, eps coefficient)`.
    pub fn split_eps(&self) -> (SuperOperator, SuperOperator) {
        let mut base = Self::zero(self.ring, &self.source, &self.target);
        let mut eps = base.clone();
        for (&(i, a), e) in &self.entries {
            let (x, y) = e.split_eps();
            base.set_entry(i, a, x);
            eps.set_entry(i, a, y);
        }
        (base, eps)
    }

    /// Largest polynomial degree of any coefficient.
    pub fn coefficient_degree(&self) -> u32 {
        self.entries.values().map(Form::coefficient_degree).max().unwrap_or(0)
    }

    /// Entries grouped by `(source degree, target degree)` as
    /// `(row in target degree, col in source degree, form)`.
    pub fn blocks(&self) -> BTreeMap<(i32, i32), Vec<(usize, usize, Form)>> {
        let tb = self.target.basis();
        let sb = self.source.basis();
        let mut out: BTreeMap<(i32, i32), Vec<(usize, usize, Form)>> = BTreeMap::new();
        for (&(i, a), e) in &self.entries {
            let (tj, row) = tb[i];
            let (sj, col) = sb[a];
            out.entry((sj, tj)).or_default().push((row, col, e.clone()));
        }
        out
    }

    /// Nonzero `(p, q)` form types appearing in entries.
    pub fn form_types(&self) -> BTreeSet<(usize, usize)> {
        self.entries.values().flat_map(|e| e.terms().keys().map(|b: &FormBasis| (b.p(), b.q()))).collect()
    }
}

impl<'a> Add<&'a SuperOperator> for &'a SuperOperator {
    type Output = SuperOperator;
    fn add(self, o: &SuperOperator) -> SuperOperator {
        self.try_add(o).unwrap()
    }
}

impl<'a> Sub<&'a SuperOperator> for &'a SuperOperator {
    type Output = SuperOperator;
    fn sub(self, o: &SuperOperator) -> SuperOperator {
        self.try_sub(o).unwrap()
    }
}

impl Neg for &SuperOperator {
    type Output = SuperOperator;
    fn neg(self) -> SuperOperator {
        self.map_entries(|_, _, e| -e)
    }
}

impl Neg for SuperOperator {
    type Output = SuperOperator;
    fn neg(self) -> SuperOperator {
        -&self
    }
}

impl fmt::Display for SuperOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0 : {} -> {}", self.source, self.target);
        }
        writeln!(f, "{} -> {}", self.source, self.target)?;
        for ((sj, tj), list) in self.blocks() {
            for (row, col, e) in list {
                writeln!(f, "  e[{sj}][{col}] -> e[{tj}][{row}]: {e}")?;
            }
        }
        Ok(())
    }
}
