//! Exactness witnesses for closed forms over the polydisc: `dη = w` or `∂̄∂η = w`.
//!
//! Both operators lower the polynomial degree by a fixed amount and `∂̄∂`
//! also preserves the form type shift and the weight `a - b` of `z^a zbar^b`,
//! so the linear system splits into small independent blocks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::form::{Form, FormBasis};
use crate::ladder::RETRY_SLACK;
use crate::linalg::{LinearSystem, SparseVec};
use crate::scalar::{exponent_vectors, GaussianRational, Monomial, RingSpec, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExactnessKind {
    /// `dη = w`.
    D,
    /// `∂̄∂η = w`.
    DdBar,
}

type Key = (FormBasis, Monomial);

fn flatten(f: &Form) -> SparseVec<Key> {
    let mut out = SparseVec::new();
    for (b, s) in f.terms() {
        for (m, c) in s.terms() {
            out.insert((*b, m.clone()), c.clone());
        }
    }
    out
}

fn apply(kind: ExactnessKind, f: &Form) -> Form {
    match kind {
        ExactnessKind::D => f.d(),
        ExactnessKind::DdBar => f.del().delbar(),
    }
}

/// Block label of a target term: polynomial degree, and for `∂̄∂` also the
/// form type and the weight `a - b`.
fn block_of(kind: ExactnessKind, b: &FormBasis, m: &Monomial) -> (u32, Vec<i64>, (usize, usize)) {
    match kind {
        ExactnessKind::D => (m.degree(), Vec::new(), (0, b.degree())),
        ExactnessKind::DdBar => {
            let w = m.z.iter().zip(&m.zbar).map(|(&a, &c)| a as i64 - c as i64).collect();
            (m.degree(), w, (b.p(), b.q()))
        }
    }
}

fn bases(n: usize, p: usize, q: usize) -> Vec<FormBasis> {
    let mut out = Vec::new();
    for dz in 0u32..(1 << n) {
        for dzbar in 0u32..(1 << n) {
            if dz.count_ones() as usize == p && dzbar.count_ones() as usize == q {
                out.push(FormBasis { dz, dzbar });
            }
        }
    }
    out
}

/// Unknown terms of a potential for one block.
fn candidates(ring: RingSpec, kind: ExactnessKind, block: &(u32, Vec<i64>, (usize, usize))) -> Vec<Form> {
    let n = ring.n();
    let (deg, weight, (p, q)) = block;
    let mut out = Vec::new();
    match kind {
        ExactnessKind::D => {
            let target_degree = *q;
            for e in exponent_vectors(2 * n, deg + 1) {
                let m = Monomial { z: e[..n].into(), zbar: e[n..].into(), denom: 0, eps: false };
                if m.degree() != deg + 1 {
                    continue;
                }
                for pp in 0..target_degree {
                    for b in bases(n, pp, target_degree - 1 - pp) {
                        out.push(Form::term(Scalar::from_monomial(ring, m.clone(), GaussianRational::one()), b));
                    }
                }
            }
        }
        ExactnessKind::DdBar => {
            if *p == 0 || *q == 0 {
                return out;
            }
            for e in exponent_vectors(2 * n, deg + 2) {
                let m = Monomial { z: e[..n].into(), zbar: e[n..].into(), denom: 0, eps: false };
                if m.degree() != deg + 2 {
                    continue;
                }
                let w: Vec<i64> = m.z.iter().zip(&m.zbar).map(|(&a, &c)| a as i64 - c as i64).collect();
                if &w != weight {
                    continue;
                }
                for b in bases(n, p - 1, q - 1) {
                    out.push(Form::term(Scalar::from_monomial(ring, m.clone(), GaussianRational::one()), b));
                }
            }
        }
    }
    out
}

/// Solves `dη = w` (resp. `∂̄∂η = w`) for a polynomial form `η` with
/// coefficients of degree `<= degree_bound`.
///
/// Errors: `UnsupportedRing` off the polydisc; `Precondition` if `w` is not
/// closed (or not a sum of `(p,p)`-forms for `∂̄∂`); `TruncationOverflow` if a
/// potential exists only beyond the bound (within the retry slack);
/// `NotExact` with the rank data of the first unsolvable block otherwise.
pub fn exactness_witness(w: &Form, kind: ExactnessKind, degree_bound: u32) -> Result<Form> {
    let ring = w.ring();
    if !ring.is_poly() || ring.dual {
        return Err(Error::UnsupportedRing { op: "exactness_witness", ring });
    }
    if !w.d().is_zero() {
        return Err(Error::Precondition("form is not closed".into()));
    }
    if kind == ExactnessKind::DdBar && w.types().iter().any(|&(p, q)| p != q) {
        return Err(Error::Precondition("∂̄∂-exactness needs a sum of (p,p)-forms".into()));
    }
    let mut blocks: BTreeMap<(u32, Vec<i64>, (usize, usize)), SparseVec<Key>> = BTreeMap::new();
    for (key, c) in flatten(w) {
        blocks.entry(block_of(kind, &key.0, &key.1)).or_default().insert(key, c);
    }
    let lift = match kind {
        ExactnessKind::D => 1,
        ExactnessKind::DdBar => 2,
    };
    let mut eta = Form::zero(ring);
    let mut overflow: Option<u32> = None;
    for (block, rhs) in &blocks {
        let unknowns = candidates(ring, kind, block);
        let mut system = LinearSystem::new();
        for u in &unknowns {
            system.push_column(flatten(&apply(kind, u)));
        }
        let Some(x) = system.solve(rhs) else {
            return Err(Error::NotExact { unknowns: unknowns.len(), equations: rhs.len(), rank: system.rank() });
        };
        let needed = block.0 + lift;
        if needed > degree_bound {
            if needed > degree_bound + RETRY_SLACK {
                return Err(Error::NotExact { unknowns: unknowns.len(), equations: rhs.len(), rank: system.rank() });
            }
            overflow = Some(overflow.map_or(needed, |o| o.max(needed)));
            continue;
        }
        for (j, c) in x {
            eta += &unknowns[j].scale_constant(&c);
        }
    }
    if let Some(required) = overflow {
        return Err(Error::TruncationOverflow { bound: degree_bound as usize, required: Some(required as usize) });
    }
    if apply(kind, &eta) != *w {
        return Err(Error::Verification("witness does not reproduce the form".into()));
    }
    Ok(eta)
}
