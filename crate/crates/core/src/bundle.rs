//! Graded bundles `E^•` of trivial vector bundles and their form-valued sections.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::form::Form;
use crate::scalar::RingSpec;

/// Ranks `r_j` of a graded trivial bundle, indexed by degree.
///
/// Basis sections `e_a` are numbered by a flat index: degrees ascending, then
/// position inside the degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradedBundle {
    ranks: BTreeMap<i32, usize>,
}

impl GradedBundle {
    pub fn new(ranks: impl IntoIterator<Item = (i32, usize)>) -> Self {
        Self { ranks: ranks.into_iter().filter(|&(_, r)| r > 0).collect() }
    }

    /// Rank 1 in degree 0.
    pub fn unit() -> Self {
        Self::new([(0, 1)])
    }

    pub fn ranks(&self) -> &BTreeMap<i32, usize> {
        &self.ranks
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.ranks.keys().copied()
    }

    /// `sum_j (-1)^j r_j`.
    pub fn super_rank(&self) -> i64 {
        self.ranks.iter().map(|(&j, &r)| if j.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Degree `j` moves to `j - k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { ranks: self.ranks.iter().map(|(&j, &r)| (j - k, r)).collect() }
    }

    /// Ranks add degreewise; basis of `self` comes first inside each degree.
    pub fn direct_sum(&self, other: &GradedBundle) -> Self {
        let mut ranks = self.ranks.clone();
        for (&j, &r) in &other.ranks {
            *ranks.entry(j).or_default() += r;
        }
        Self { ranks }
    }

    /// Flat index of the `i`-th basis element in degree `j`.
    pub fn index(&self, degree: i32, i: usize) -> usize {
        assert!(i < self.rank(degree), "basis index out of range");
        self.ranks.range(..degree).map(|(_, r)| r).sum::<usize>() + i
    }

    /// `(degree, position)` of every flat index.
    pub fn basis(&self) -> Vec<(i32, usize)> {
        self.ranks.iter().flat_map(|(&j, &r)| (0..r).map(move |i| (j, i))).collect()
    }

    /// Degree of every flat index.
    pub fn degree_vector(&self) -> Vec<i32> {
        self.basis().into_iter().map(|(j, _)| j).collect()
    }

    /// Flat indices of `self` inside `self ⊕ other`, followed by those of `other`.
    pub fn direct_sum_embeddings(&self, other: &GradedBundle) -> (Vec<usize>, Vec<usize>) {
        let sum = self.direct_sum(other);
        let left = self.basis().into_iter().map(|(j, i)| sum.index(j, i)).collect();
        let right = other.basis().into_iter().map(|(j, i)| sum.index(j, i + self.rank(j))).collect();
        (left, right)
    }
}

impl fmt::Display for GradedBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (j, r)) in self.ranks.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}:{r}")?;
        }
        write!(f, "}}")
    }
}

/// `sum_a omega_a ⊗ e_a`, stored by flat basis index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Section {
    bundle: GradedBundle,
    ring: RingSpec,
    components: Vec<Form>,
}

impl Section {
    pub fn zero(bundle: &GradedBundle, ring: RingSpec) -> Self {
        Self { bundle: bundle.clone(), ring, components: vec![Form::zero(ring); bundle.total_rank()] }
    }

    /// `omega ⊗ e_a` for the flat index `a`.
    pub fn basis(bundle: &GradedBundle, a: usize, omega: Form) -> Self {
        let mut s = Self::zero(bundle, omega.ring());
        s.components[a] = omega;
        s
    }

    pub fn from_components(bundle: &GradedBundle, ring: RingSpec, components: Vec<Form>) -> Result<Self> {
        if components.len() != bundle.total_rank() {
            return Err(Error::ShapeMismatch(format!(
                "section has {} components, bundle {} has rank {}",
                components.len(),
                bundle,
                bundle.total_rank()
            )));
        }
        for c in &components {
            ring.check_same(&c.ring())?;
        }
        Ok(Self { bundle: bundle.clone(), ring, components })
    }

    pub fn bundle(&self) -> &GradedBundle {
        &self.bundle
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn components(&self) -> &[Form] {
        &self.components
    }

    pub fn component(&self, a: usize) -> &Form {
        &self.components[a]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Form::is_zero)
    }

    pub fn add(&self, other: &Section) -> Result<Section> {
        if self.bundle != other.bundle {
            return Err(Error::ShapeMismatch(format!("sections over {} and {}", self.bundle, other.bundle)));
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(Section { bundle: self.bundle.clone(), ring: self.ring, components })
    }

    pub fn neg(&self) -> Section {
        Section { bundle: self.bundle.clone(), ring: self.ring, components: self.components.iter().map(|c| -c).collect() }
    }

    /// `omega ∧ self`, multiplying each component on the left.
    pub fn left_multiply(&self, omega: &Form) -> Section {
        Section {
            bundle: self.bundle.clone(),
            ring: self.ring,
            components: self.components.iter().map(|c| omega.wedge(c)).collect(),
        }
    }

    /// Entrywise `∂̄`, i.e. the bare Dolbeault operator in the flat frame.
    pub fn delbar(&self) -> Section {
        self.map(Form::delbar)
    }

    /// Entrywise `∂`.
    pub fn del(&self) -> Section {
        self.map(Form::del)
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Section {
        Section { bundle: self.bundle.clone(), ring: self.ring, components: self.components.iter().map(f).collect() }
    }

    /// Same components viewed in `shift(bundle, k)`.
    pub fn shift(&self, k: i32) -> Section {
        Section { bundle: self.bundle.shift(k), ring: self.ring, components: self.components.clone() }
    }

    /// Total degrees `form degree + bundle degree` present in the section.
    pub fn total_degrees(&self) -> Vec<i32> {
        let degs = self.bundle.degree_vector();
        let mut out: Vec<i32> = self
            .components
            .iter()
            .zip(&degs)
            .flat_map(|(c, &j)| c.terms().keys().map(move |b| b.degree() as i32 + j))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}
