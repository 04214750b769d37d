//! Seeded generators for random instances.
//!
//! All generators take an explicit `Rng`; property suites seed a
//! `ChaCha8Rng` so every failure is reproducible from its seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bundle::{GradedBundle, Section};
use crate::connection::{DbarSuperconnection, GaugeParameter};
use crate::form::{Form, FormBasis};
use crate::operator::SuperOperator;
use crate::scalar::{rat, GaussianRational, Monomial, RingSpec, Scalar};

pub fn random_coefficient(rng: &mut impl Rng) -> GaussianRational {
    let den = rng.gen_range(1..=2);
    let mut re = rng.gen_range(-3..=3);
    if re == 0 {
        re = 1;
    }
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    GaussianRational::new(rat(re, den), rat(im, den))
}

fn random_monomial(rng: &mut impl Rng, ring: RingSpec, max_deg: u32, holomorphic: bool) -> Monomial {
    let n = ring.n();
    let mut m = Monomial::one(n);
    let d = rng.gen_range(0..=max_deg);
    for _ in 0..d {
        let slot = rng.gen_range(0..if holomorphic { n } else { 2 * n });
        if slot < n {
            m.z[slot] += 1;
        } else {
            m.zbar[slot - n] += 1;
        }
    }
    if ring.is_p1() && !holomorphic {
        m.denom = rng.gen_range(0..=3);
    }
    m
}

/// A scalar with up to `max_terms` terms of polynomial degree at most `max_deg`.
pub fn random_scalar(rng: &mut impl Rng, ring: RingSpec, max_deg: u32, max_terms: usize) -> Scalar {
    let mut s = Scalar::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = random_monomial(rng, ring, max_deg, false);
        s += &Scalar::from_monomial(ring, m, random_coefficient(rng));
    }
    s
}

/// A polynomial in `z` only.
pub fn random_holomorphic(rng: &mut impl Rng, ring: RingSpec, max_deg: u32, max_terms: usize) -> Scalar {
    let mut s = Scalar::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = random_monomial(rng, ring, max_deg, true);
        s += &Scalar::from_monomial(ring, m, random_coefficient(rng));
    }
    s
}

fn random_subset(rng: &mut impl Rng, n: usize, size: usize) -> u32 {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx[..size].iter().fold(0, |m, &k| m | (1 << k))
}

/// A random form basis of type `(p, q)`.
pub fn random_basis(rng: &mut impl Rng, n: usize, p: usize, q: usize) -> FormBasis {
    FormBasis { dz: random_subset(rng, n, p), dzbar: random_subset(rng, n, q) }
}

fn random_type_of_degree(rng: &mut impl Rng, n: usize, degree: usize) -> Option<(usize, usize)> {
    let options: Vec<(usize, usize)> = (0..=n.min(degree)).filter(|&p| degree - p <= n).map(|p| (p, degree - p)).collect();
    options.choose(rng).copied()
}

/// A form of type `(p, q)`.
pub fn random_typed_form(rng: &mut impl Rng, ring: RingSpec, p: usize, q: usize, max_deg: u32, max_terms: usize) -> Form {
    let mut f = Form::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let b = random_basis(rng, ring.n(), p, q);
        f += &Form::term(random_scalar(rng, ring, max_deg, 2), b);
    }
    f
}

/// A form whose terms all have total degree `degree` (zero if no such type exists).
pub fn random_homogeneous_form(rng: &mut impl Rng, ring: RingSpec, degree: usize, max_deg: u32, max_terms: usize) -> Form {
    let mut f = Form::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        if let Some((p, q)) = random_type_of_degree(rng, ring.n(), degree) {
            f += &random_typed_form(rng, ring, p, q, max_deg, 1);
        }
    }
    f
}

/// A form of mixed degree.
pub fn random_form(rng: &mut impl Rng, ring: RingSpec, max_deg: u32, max_terms: usize) -> Form {
    let mut f = Form::zero(ring);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let p = rng.gen_range(0..=ring.n());
        let q = rng.gen_range(0..=ring.n());
        f += &random_typed_form(rng, ring, p, q, max_deg, 1);
    }
    f
}

pub fn random_section(rng: &mut impl Rng, ring: RingSpec, bundle: &GradedBundle, max_deg: u32, max_terms: usize) -> Section {
    let comps = (0..bundle.total_rank()).map(|_| random_form(rng, ring, max_deg, max_terms)).collect();
    Section::from_components(bundle, ring, comps).expect("shape")
}

/// Constraint on the terms of a random operator.
#[derive(Clone, Copy, Debug, Default)]
pub struct OperatorShape {
    pub parity: Option<usize>,
    pub tridegree: Option<(usize, usize, i32)>,
    pub density: Option<f64>,
}

impl OperatorShape {
    pub fn any() -> Self {
        Self::default()
    }

    /// Homogeneous of total degree parity `p`.
    pub fn parity(p: usize) -> Self {
        Self { parity: Some(p % 2), ..Self::default() }
    }

    pub fn tridegree(p: usize, q: usize, r: i32) -> Self {
        Self { tridegree: Some((p, q, r)), ..Self::default() }
    }

    pub fn with_density(self, density: f64) -> Self {
        Self { density: Some(density), ..self }
    }
}

pub fn random_operator(
    rng: &mut impl Rng,
    ring: RingSpec,
    source: &GradedBundle,
    target: &GradedBundle,
    shape: OperatorShape,
    max_deg: u32,
    max_terms: usize,
) -> SuperOperator {
    let n = ring.n();
    let sdeg = source.degree_vector();
    let tdeg = target.degree_vector();
    let density = shape.density.unwrap_or(0.5);
    let mut op = SuperOperator::zero(ring, source, target);
    for (i, &tj) in tdeg.iter().enumerate() {
        for (a, &sj) in sdeg.iter().enumerate() {
            let r = tj - sj;
            if let Some((_, _, want)) = shape.tridegree {
                if want != r {
                    continue;
                }
            }
            if !rng.gen_bool(density) {
                continue;
            }
            let mut f = Form::zero(ring);
            for _ in 0..rng.gen_range(1..=max_terms) {
                let (p, q) = match (shape.tridegree, shape.parity) {
                    (Some((p, q, _)), _) => (p, q),
                    (None, Some(par)) => {
                        let mut choices = Vec::new();
                        for p in 0..=n {
                            for q in 0..=n {
                                if ((p + q) as i32 + r).rem_euclid(2) as usize == par {
                                    choices.push((p, q));
                                }
                            }
                        }
                        *choices.choose(rng).unwrap()
                    }
                    (None, None) => (rng.gen_range(0..=n), rng.gen_range(0..=n)),
                };
                f += &random_typed_form(rng, ring, p, q, max_deg, 1);
            }
            op.set_entry(i, a, f);
        }
    }
    op
}

/// Koszul complex of `fs = (f_1, ..., f_r)`: degree `-p` is spanned by the
/// `p`-subsets `S` (lexicographic order) and
/// `d e_S = sum_t (-1)^t f_{s_t} e_{S \ s_t}`.
pub fn koszul_complex(ring: RingSpec, fs: &[Scalar]) -> crate::Result<DbarSuperconnection> {
    let r = fs.len();
    let subsets_of = |p: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1 << r) {
            if mask.count_ones() as usize == p {
                out.push((0..r).filter(|k| mask & (1 << k) != 0).collect());
            }
        }
        out.sort();
        out
    };
    let bundle = GradedBundle::new((0..=r).map(|p| (-(p as i32), binomial(r, p))));
    let mut gamma = SuperOperator::zero_endo(ring, &bundle);
    for p in 1..=r {
        let sources = subsets_of(p);
        let targets = subsets_of(p - 1);
        for (col, s) in sources.iter().enumerate() {
            for (t, &k) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != k).collect();
                let row = targets.iter().position(|x| *x == rest).unwrap();
                let f = if t % 2 == 0 { fs[k].clone() } else { -&fs[k] };
                gamma.set_entry(bundle.index(-(p as i32) + 1, row), bundle.index(-(p as i32), col), Form::scalar(f));
            }
        }
    }
    DbarSuperconnection::from_complex(&bundle, gamma)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `φ_1 + ... + φ_n` with random polynomial entries of tridegree `(0, i, -i)`.
pub fn random_strict_gauge(
    rng: &mut impl Rng,
    ring: RingSpec,
    bundle: &GradedBundle,
    max_deg: u32,
    max_terms: usize,
) -> GaugeParameter {
    let mut total = SuperOperator::zero_endo(ring, bundle);
    for i in 1..=ring.n() {
        let phi = random_operator(rng, ring, bundle, bundle, OperatorShape::tridegree(0, i, -(i as i32)), max_deg, max_terms);
        total = &total + &phi;
    }
    GaugeParameter::from_total(total).expect("strict by construction")
}

/// Koszul complex of `r` random holomorphic polynomials.
pub fn random_koszul(rng: &mut impl Rng, ring: RingSpec, r: usize, max_deg: u32) -> DbarSuperconnection {
    let fs: Vec<Scalar> = (0..r).map(|_| random_holomorphic(rng, ring, max_deg, 2)).collect();
    koszul_complex(ring, &fs).expect("Koszul complexes are flat")
}
