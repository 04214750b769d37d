//! Sparse exact linear algebra over Gaussian rationals.
//!
//! Vectors are maps from an ordered key type to coefficients. Elimination
//! pivots on the largest key of each vector.

use std::collections::BTreeMap;

use crate::form::FormBasis;
use crate::operator::SuperOperator;
use crate::scalar::{GaussianRational, Monomial};

pub type SparseVec<K> = BTreeMap<K, GaussianRational>;

/// Coordinates of an operator: `(row, col, form basis, monomial)`.
pub type OperatorKey = (usize, usize, FormBasis, Monomial);

pub fn flatten_operator(op: &SuperOperator) -> SparseVec<OperatorKey> {
    let mut out = SparseVec::new();
    for (&(i, a), f) in op.entries() {
        for (b, s) in f.terms() {
            for (m, c) in s.terms() {
                out.insert((i, a, *b, m.clone()), c.clone());
            }
        }
    }
    out
}

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, c: &GaussianRational, x: &SparseVec<K>) {
    for (k, v) in x {
        let delta = c * v;
        match y.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(delta);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Row-echelon basis of a subspace, one row per pivot (its largest key),
/// each row normalized to pivot coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut upper: Option<K> = None;
        loop {
            let next = match &upper {
                None => v.keys().next_back().cloned(),
                Some(u) => v.range(..u.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = -v[&k].clone();
                axpy(&mut v, &c, row);
            }
            upper = Some(k);
        }
        v
    }

    /// Adds `v` to the span; returns the pivot key if `v` was independent.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<K> {
        let r = self.reduce(v);
        let (k, lead) = r.iter().next_back()?;
        let k = k.clone();
        let inv = lead.inv().expect("nonzero pivot");
        let row: SparseVec<K> = r.into_iter().map(|(key, c)| (key, &c * &inv)).collect();
        self.rows.insert(k.clone(), row);
        Some(k)
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }
}

/// Bookkeeping key for [`LinearSystem`]: unknown tags sort below coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Key<K> {
    Tag(usize),
    Coord(K),
}

/// Incrementally built linear map `x ↦ sum_j x_j col_j` supporting rank,
/// kernel and solve queries.
#[derive(Clone, Debug)]
pub struct LinearSystem<K: Ord + Clone> {
    echelon: Echelon<Key<K>>,
    unknowns: usize,
}

impl<K: Ord + Clone> Default for LinearSystem<K> {
    fn default() -> Self {
        Self { echelon: Echelon::new(), unknowns: 0 }
    }
}

impl<K: Ord + Clone> LinearSystem<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the image of a new unknown; returns its index.
    pub fn push_column(&mut self, column: SparseVec<K>) -> usize {
        let j = self.unknowns;
        self.unknowns += 1;
        let mut v: SparseVec<Key<K>> = column.into_iter().map(|(k, c)| (Key::Coord(k), c)).collect();
        v.insert(Key::Tag(j), GaussianRational::one());
        self.echelon.insert(v);
        j
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Rank of the map.
    pub fn rank(&self) -> usize {
        self.echelon.rows.keys().filter(|k| matches!(k, Key::Coord(_))).count()
    }

    /// A basis of the kernel, as coefficient vectors over unknowns.
    pub fn kernel(&self) -> Vec<SparseVec<usize>> {
        self.echelon
            .rows
            .iter()
            .filter(|(k, _)| matches!(k, Key::Tag(_)))
            .map(|(_, row)| {
                row.iter()
                    .map(|(k, c)| match k {
                        Key::Tag(j) => (*j, c.clone()),
                        Key::Coord(_) => unreachable!("kernel rows carry only tags"),
                    })
                    .collect()
            })
            .collect()
    }

    /// Some `x` with `sum_j x_j col_j = rhs`, or `None`.
    pub fn solve(&self, rhs: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let v: SparseVec<Key<K>> = rhs.iter().map(|(k, c)| (Key::Coord(k.clone()), c.clone())).collect();
        let r = self.echelon.reduce(v);
        let mut x = SparseVec::new();
        for (k, c) in r {
            match k {
                Key::Coord(_) => return None,
                Key::Tag(j) => {
                    x.insert(j, -c);
                }
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn vecs(pairs: &[(u32, i64)]) -> SparseVec<u32> {
        pairs.iter().map(|&(k, c)| (k, g(c))).collect()
    }

    #[test]
    fn rank_kernel_and_solve() {
        let mut sys = LinearSystem::new();
        sys.push_column(vecs(&[(0, 1), (1, 2)]));
        sys.push_column(vecs(&[(1, 1)]));
        sys.push_column(vecs(&[(0, 2), (1, 5)]));
        assert_eq!(sys.rank(), 2);
        let kernel = sys.kernel();
        assert_eq!(kernel.len(), 1);
        // check kernel relation: k0 * c0 + k1 * c1 + k2 * c2 = 0
        let k = &kernel[0];
        let cols = [vecs(&[(0, 1), (1, 2)]), vecs(&[(1, 1)]), vecs(&[(0, 2), (1, 5)])];
        let mut sum = SparseVec::new();
        for (j, c) in k {
            axpy(&mut sum, c, &cols[*j]);
        }
        assert!(sum.is_empty());

        let rhs = vecs(&[(0, 3), (1, 7)]);
        let x = sys.solve(&rhs).unwrap();
        let mut img = SparseVec::new();
        for (j, c) in &x {
            axpy(&mut img, c, &cols[*j]);
        }
        assert_eq!(img, rhs);
        assert!(sys.solve(&vecs(&[(2, 1)])).is_none());
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(vecs(&[(0, 1), (2, 1)])).is_some());
        assert!(e.insert(vecs(&[(0, 2), (2, 2)])).is_none());
        assert!(e.contains(vecs(&[(0, -3), (2, -3)])));
        assert!(!e.contains(vecs(&[(0, 1)])));
        assert_eq!(e.rank(), 1);
    }
}
