//! Exact coefficient rings.
//!
//! A [`Scalar`] is a finite Gaussian-rational combination of monomials in one
//! of two rings:
//!
//! * `PolyRing(n)`: polynomials in `z_1..z_n, zbar_1..zbar_n` (the polydisc model);
//! * `P1Ring`: `z^a zbar^b (1+|z|^2)^-m` in one variable (the compact model).
//!
//! Either ring can be extended by a dual unit `eps` with `eps^2 = 0`.
//! Variable indices are 1-based throughout the public API.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p/q` as a big rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact complex number `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat(n, 1))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(rat(p, q))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({} {} {}i)", format_rational(&self.re), sign, format_rational(&self.im.abs()))
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

/// A rational multiple of `pi`. The coefficient is Gaussian so that
/// integrals of complex-valued integrands stay exact.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PiRational {
    pub value: GaussianRational,
}

impl PiRational {
    pub fn new(value: GaussianRational) -> Self {
        Self { value }
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·π", self.value)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RingKind {
    /// Polynomials in `n` complex variables and their conjugates.
    Poly(usize),
    /// One variable, localized at `1 + z zbar`.
    P1,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RingSpec {
    pub kind: RingKind,
    pub dual: bool,
}

impl RingSpec {
    pub fn poly(n: usize) -> Self {
        assert!(n >= 1, "PolyRing needs at least one variable");
        Self { kind: RingKind::Poly(n), dual: false }
    }

    pub fn p1() -> Self {
        Self { kind: RingKind::P1, dual: false }
    }

    pub fn with_dual(self, dual: bool) -> Self {
        Self { dual, ..self }
    }

    /// Number of complex variables.
    pub fn n(&self) -> usize {
        match self.kind {
            RingKind::Poly(n) => n,
            RingKind::P1 => 1,
        }
    }

    pub fn is_p1(&self) -> bool {
        matches!(self.kind, RingKind::P1)
    }

    pub fn is_poly(&self) -> bool {
        matches!(self.kind, RingKind::Poly(_))
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: *self, right: *other })
        }
    }

    fn check_index(&self, index: usize) -> Result<usize> {
        if index == 0 || index > self.n() {
            Err(Error::IndexOutOfRange { index, ring: *self })
        } else {
            Ok(index - 1)
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Poly(n) => write!(f, "PolyRing({n})")?,
            RingKind::P1 => write!(f, "P1Ring")?,
        }
        if self.dual {
            write!(f, "[eps]")?;
        }
        Ok(())
    }
}

pub type Exponents = SmallVec<[u32; 4]>;

/// `z^z zbar^zbar (1+z zbar)^-denom eps^eps`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    pub z: Exponents,
    pub zbar: Exponents,
    pub denom: u32,
    pub eps: bool,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { z: SmallVec::from_elem(0, n), zbar: SmallVec::from_elem(0, n), denom: 0, eps: false }
    }

    /// Polynomial degree `|a| + |b|` (the `(1+z zbar)` power is ignored).
    pub fn degree(&self) -> u32 {
        self.z.iter().sum::<u32>() + self.zbar.iter().sum::<u32>()
    }

    fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if self.eps && other.eps {
            return None;
        }
        Some(Monomial {
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
            zbar: self.zbar.iter().zip(&other.zbar).map(|(a, b)| a + b).collect(),
            denom: self.denom + other.denom,
            eps: self.eps || other.eps,
        })
    }

    fn conj(&self) -> Monomial {
        Monomial { z: self.zbar.clone(), zbar: self.z.clone(), denom: self.denom, eps: self.eps }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Wirtinger {
    Z,
    Zbar,
}

/// An exact element of one of the coefficient rings.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    ring: RingSpec,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Scalar {
    pub fn zero(ring: RingSpec) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::constant(ring, GaussianRational::one())
    }

    pub fn constant(ring: RingSpec, c: GaussianRational) -> Self {
        let mut s = Self::zero(ring);
        s.insert(Monomial::one(ring.n()), c);
        s
    }

    pub fn from_int(ring: RingSpec, n: i64) -> Self {
        Self::constant(ring, GaussianRational::from_int(n))
    }

    pub fn i(ring: RingSpec) -> Self {
        Self::constant(ring, GaussianRational::i())
    }

    /// `z_index` (1-based).
    pub fn z(ring: RingSpec, index: usize) -> Self {
        let k = ring.check_index(index).expect("variable index");
        let mut m = Monomial::one(ring.n());
        m.z[k] = 1;
        Self::from_monomial(ring, m, GaussianRational::one())
    }

    /// `zbar_index` (1-based).
    pub fn zbar(ring: RingSpec, index: usize) -> Self {
        let k = ring.check_index(index).expect("variable index");
        let mut m = Monomial::one(ring.n());
        m.zbar[k] = 1;
        Self::from_monomial(ring, m, GaussianRational::one())
    }

    /// `(1 + z zbar)^-m` in the P1 ring.
    pub fn p1_weight(ring: RingSpec, m: u32) -> Self {
        assert!(ring.is_p1(), "p1_weight needs P1Ring");
        let mut mono = Monomial::one(1);
        mono.denom = m;
        Self::from_monomial(ring, mono, GaussianRational::one())
    }

    /// The dual unit `eps`.
    pub fn eps(ring: RingSpec) -> Self {
        assert!(ring.dual, "eps needs a dual ring");
        let mut mono = Monomial::one(ring.n());
        mono.eps = true;
        Self::from_monomial(ring, mono, GaussianRational::one())
    }

    pub fn from_monomial(ring: RingSpec, mono: Monomial, c: GaussianRational) -> Self {
        assert_eq!(mono.z.len(), ring.n());
        assert_eq!(mono.zbar.len(), ring.n());
        assert!(ring.is_p1() || mono.denom == 0, "denominators need P1Ring");
        assert!(ring.dual || !mono.eps, "eps needs a dual ring");
        let mut s = Self::zero(ring);
        s.insert(mono, c);
        s
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient when `self` is a constant, `None` otherwise.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (*m == Monomial::one(self.ring.n())).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Maximum polynomial degree of any term, 0 for the zero scalar.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Canonicalizing insertion. In the P1 ring a term with `z`, `zbar` and a
    /// negative power of `1 + z zbar` is rewritten through
    /// `z zbar (1+w)^-m = (1+w)^-(m-1) - (1+w)^-m`.
    fn insert(&mut self, mono: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        if self.ring.is_p1() && mono.denom >= 1 && mono.z[0] >= 1 && mono.zbar[0] >= 1 {
            let mut lower = mono.clone();
            lower.z[0] -= 1;
            lower.zbar[0] -= 1;
            let keep = lower.clone();
            lower.denom -= 1;
            self.insert(lower, c.clone());
            self.insert(keep, -c);
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.ring.check_same(&other.ring)?;
        let mut out = Scalar::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(m) = ma.mul(mb) {
                    out.insert(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(self.ring);
        }
        Scalar { ring: self.ring, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        self.scale(&GaussianRational::real(r.clone()))
    }

    /// Complex conjugation: conjugates coefficients and swaps `z` with `zbar`.
    pub fn conj(&self) -> Scalar {
        let mut out = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            out.insert(m.conj(), c.conj());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut out = Scalar::one(self.ring);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Wirtinger derivative `d/dz_index` or `d/dzbar_index`.
    pub fn wirtinger(&self, kind: Wirtinger, index: usize) -> Result<Scalar> {
        let k = self.ring.check_index(index)?;
        let mut out = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            let e = match kind {
                Wirtinger::Z => m.z[k],
                Wirtinger::Zbar => m.zbar[k],
            };
            if e > 0 {
                let mut d = m.clone();
                match kind {
                    Wirtinger::Z => d.z[k] -= 1,
                    Wirtinger::Zbar => d.zbar[k] -= 1,
                }
                out.insert(d, c.scale(&rat(e as i64, 1)));
            }
            // d/dz (1+z zbar)^-m = -m zbar (1+z zbar)^-(m+1), and symmetrically.
            if m.denom > 0 {
                let mut d = m.clone();
                match kind {
                    Wirtinger::Z => d.zbar[k] += 1,
                    Wirtinger::Zbar => d.z[k] += 1,
                }
                d.denom += 1;
                out.insert(d, c.scale(&rat(-(m.denom as i64), 1)));
            }
        }
        Ok(out)
    }

    /// Canonical antiderivative in `zbar_m`: `zbar_m^b -> zbar_m^(b+1)/(b+1)`
    /// term by term, so that `d/dzbar_m` of the result is `self`.
    pub fn antideriv_zbar(&self, index: usize) -> Result<Scalar> {
        if !self.ring.is_poly() {
            return Err(Error::UnsupportedRing { op: "antideriv_zbar", ring: self.ring });
        }
        let k = self.ring.check_index(index)?;
        let mut out = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            let mut d = m.clone();
            d.zbar[k] += 1;
            let w = rat(1, d.zbar[k] as i64);
            out.insert(d, c.scale(&w));
        }
        Ok(out)
    }

    /// `∫_C self · (i/2) dz∧dzbar` in the P1 ring, as a multiple of `pi`.
    pub fn integrate_p1(&self) -> Result<PiRational> {
        if !self.ring.is_p1() {
            return Err(Error::UnsupportedRing { op: "integrate_p1", ring: self.ring });
        }
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            if m.eps {
                return Err(Error::Unsupported("integration of eps terms; split them off first".into()));
            }
            let (a, b, d) = (m.z[0], m.zbar[0], m.denom);
            if a != b {
                continue;
            }
            if d < a + 2 {
                return Err(Error::Divergent { a, b, m: d });
            }
            // pi * a! (m-a-2)! / (m-1)!
            let w = factorial(a) * factorial(d - a - 2) / factorial(d - 1);
            total += &c.scale(&w);
        }
        Ok(PiRational::new(total))
    }

    /// Whether any term involves `zbar_index`.
    pub fn depends_on_zbar(&self, index: usize) -> bool {
        let k = index - 1;
        self.terms.keys().any(|m| m.zbar[k] > 0 || m.denom > 0)
    }

    /// Whether the scalar is annihilated by every `d/dzbar_i`.
    pub fn is_holomorphic(&self) -> bool {
        (1..=self.ring.n()).all(|i| self.wirtinger(Wirtinger::Zbar, i).map(|s| s.is_zero()).unwrap_or(false))
    }

    /// Reinterpret in a dual (or non-dual) version of the same ring.
    /// Dropping the dual unit discards `eps` terms.
    pub fn with_dual(&self, dual: bool) -> Scalar {
        let ring = self.ring.with_dual(dual);
        let terms = self.terms.iter().filter(|(m, _)| dual || !m.eps).map(|(m, c)| (m.clone(), c.clone())).collect();
        Scalar { ring, terms }
    }

    /// `(value part, eps coefficient)`, both in the dual ring.
    pub fn split_eps(&self) -> (Scalar, Scalar) {
        let mut base = Scalar::zero(self.ring);
        let mut eps = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            if m.eps {
                let mut m = m.clone();
                m.eps = false;
                eps.terms.insert(m, c.clone());
            } else {
                base.terms.insert(m.clone(), c.clone());
            }
        }
        (base, eps)
    }

    /// `eps · self`.
    pub fn times_eps(&self) -> Scalar {
        assert!(self.ring.dual, "eps needs a dual ring");
        let mut out = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            if !m.eps {
                let mut m = m.clone();
                m.eps = true;
                out.terms.insert(m, c.clone());
            }
        }
        out
    }

    /// Multiplicative inverse for the units this crate can invert exactly:
    /// nonzero constants, `c (1+z zbar)^k` in the P1 ring, and
    /// `u + eps v` whenever `u` is one of these.
    pub fn try_inverse(&self) -> Option<Scalar> {
        let (base, eps) = self.split_eps();
        let inv = base.unit_inverse()?;
        if eps.is_zero() {
            return Some(inv);
        }
        // (u + eps v)^-1 = u^-1 - eps u^-2 v
        let correction = (&(&inv * &inv) * &eps).times_eps();
        Some(&inv - &correction)
    }

    fn unit_inverse(&self) -> Option<Scalar> {
        if let Some(c) = self.as_constant() {
            return c.inv().map(|c| Scalar::constant(self.ring, c));
        }
        if !self.ring.is_p1() {
            return None;
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.z[0] == 0 && m.zbar[0] == 0 && !m.eps {
                let one_plus_w = &Scalar::one(self.ring) + &(&Scalar::z(self.ring, 1) * &Scalar::zbar(self.ring, 1));
                return Some(one_plus_w.pow(m.denom).scale(&c.inv()?));
            }
            return None;
        }
        // c (1 + z zbar)^k with k > 0 is a polynomial; detect it by its top term.
        let k = self.terms.keys().map(|m| m.z[0]).max()?;
        let lead = self.terms.iter().find(|(m, _)| m.z[0] == k)?.1.clone();
        let one_plus_w = &Scalar::one(self.ring) + &(&Scalar::z(self.ring, 1) * &Scalar::zbar(self.ring, 1));
        if one_plus_w.pow(k).scale(&lead) == *self {
            Some(Scalar::p1_weight(self.ring, k).scale(&lead.inv()?))
        } else {
            None
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Scalar {
        let mut out = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            out.insert(m.clone(), f(c));
        }
        out
    }
}

/// All exponent vectors of length `n` with total degree at most `max_total`,
/// in increasing degree.
pub fn exponent_vectors(n: usize, max_total: u32) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = Vec::new();
    for d in 0..=max_total {
        let mut cur: Exponents = SmallVec::from_elem(0, n);
        fill(&mut out, &mut cur, 0, d);
    }
    out
}

fn fill(out: &mut Vec<Exponents>, cur: &mut Exponents, pos: usize, remaining: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, remaining - e);
    }
    cur[pos] = 0;
}

fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on ring mismatch; see [`Scalar::try_add`].
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).unwrap()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.try_sub(o).unwrap()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).unwrap()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.ring.check_same(&o.ring).unwrap();
        for (m, c) in &o.terms {
            self.insert(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.ring.check_same(&o.ring).unwrap();
        for (m, c) in &o.terms {
            self.insert(m.clone(), -c);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, e) in m.z.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·z{}", k + 1)?,
                    _ => write!(f, "·z{}^{e}", k + 1)?,
                }
            }
            for (k, e) in m.zbar.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·zbar{}", k + 1)?,
                    _ => write!(f, "·zbar{}^{e}", k + 1)?,
                }
            }
            if m.denom > 0 {
                write!(f, "·(1+|z|^2)^-{}", m.denom)?;
            }
            if m.eps {
                write!(f, "·eps")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> RingSpec {
        RingSpec::p1()
    }

    #[test]
    fn z_times_zbar() {
        let r = RingSpec::poly(1);
        let zz = &Scalar::z(r, 1) * &Scalar::zbar(r, 1);
        let mut m = Monomial::one(1);
        m.z[0] = 1;
        m.zbar[0] = 1;
        assert_eq!(zz, Scalar::from_monomial(r, m, GaussianRational::one()));
    }

    #[test]
    fn conj_of_i_z() {
        let r = RingSpec::poly(1);
        let s = &Scalar::i(r) * &Scalar::z(r, 1);
        let expected = -&(&Scalar::i(r) * &Scalar::zbar(r, 1));
        assert_eq!(s.conj(), expected);
    }

    #[test]
    fn p1_unit_cancellation() {
        let r = p1();
        let one_plus_w = &Scalar::one(r) + &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1));
        assert_eq!(&Scalar::p1_weight(r, 1) * &one_plus_w, Scalar::one(r));
    }

    #[test]
    fn p1_keys_are_reduced() {
        let r = p1();
        let s = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)) * &Scalar::p1_weight(r, 3);
        for m in s.terms().keys() {
            assert!(m.denom == 0 || m.z[0] == 0 || m.zbar[0] == 0);
        }
        // w (1+w)^-3 = (1+w)^-2 - (1+w)^-3
        assert_eq!(s, &Scalar::p1_weight(r, 2) - &Scalar::p1_weight(r, 3));
    }

    #[test]
    fn d_dz_of_z_squared() {
        let r = RingSpec::poly(1);
        let z = Scalar::z(r, 1);
        assert_eq!((&z * &z).wirtinger(Wirtinger::Z, 1).unwrap(), z.scale(&GaussianRational::from_int(2)));
    }

    #[test]
    fn holomorphic_monomial_has_no_zbar_derivative() {
        let r = RingSpec::poly(2);
        let s = Scalar::z(r, 1).pow(3);
        assert!(s.wirtinger(Wirtinger::Zbar, 1).unwrap().is_zero());
        assert!(s.wirtinger(Wirtinger::Zbar, 2).unwrap().is_zero());
        assert!(s.wirtinger(Wirtinger::Z, 3).is_err());
    }

    #[test]
    fn zbar_derivative_of_p1_weight() {
        let r = p1();
        let d = Scalar::p1_weight(r, 1).wirtinger(Wirtinger::Zbar, 1).unwrap();
        let expected = -&(&Scalar::z(r, 1) * &Scalar::p1_weight(r, 2));
        assert_eq!(d, expected);
        // Cross-check: d · (1+w)^2 = -z, and the product rule on (1+w)^-1 · (1+w) = 1.
        let one_plus_w = &Scalar::one(r) + &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1));
        assert_eq!(&d * &one_plus_w.pow(2), -Scalar::z(r, 1));
        let lhs = &(&d * &one_plus_w) + &(&Scalar::p1_weight(r, 1) * &one_plus_w.wirtinger(Wirtinger::Zbar, 1).unwrap());
        assert!(lhs.is_zero());
    }

    #[test]
    fn antiderivative_examples() {
        let r = RingSpec::poly(2);
        let zb1 = Scalar::zbar(r, 1);
        assert_eq!(zb1.antideriv_zbar(1).unwrap(), (&zb1 * &zb1).scale(&GaussianRational::ratio(1, 2)));
        let s = &Scalar::z(r, 1) * &Scalar::zbar(r, 2);
        let expected = (&s * &Scalar::zbar(r, 2)).scale(&GaussianRational::ratio(1, 2));
        assert_eq!(s.antideriv_zbar(2).unwrap(), expected);
        assert!(Scalar::zero(r).antideriv_zbar(1).unwrap().is_zero());
        assert!(Scalar::one(p1()).antideriv_zbar(1).is_err());
    }

    /// Independent oracle: midpoint rule on `∫_0^∞ u^a (1+u)^-m du` after
    /// substituting `u = s/(1-s)`, times `pi` from the angular integral.
    fn beta_quadrature(a: u32, m: u32) -> f64 {
        let steps = 200_000;
        let h = 1.0 / steps as f64;
        let mut acc = 0.0;
        for k in 0..steps {
            let s = (k as f64 + 0.5) * h;
            let u = s / (1.0 - s);
            let jac = 1.0 / ((1.0 - s) * (1.0 - s));
            acc += u.powi(a as i32) * (1.0 + u).powi(-(m as i32)) * jac * h;
        }
        acc
    }

    fn to_f64(r: &Rational) -> f64 {
        use num::ToPrimitive;
        r.to_f64().unwrap()
    }

    #[test]
    fn integrate_p1_examples() {
        let r = p1();
        let v = Scalar::p1_weight(r, 2).integrate_p1().unwrap();
        assert_eq!(v.value, GaussianRational::one());
        assert!((beta_quadrature(0, 2) - 1.0).abs() < 1e-6);

        let odd = &Scalar::z(r, 1) * &Scalar::p1_weight(r, 3);
        assert!(odd.integrate_p1().unwrap().value.is_zero());

        let s = &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1)) * &Scalar::p1_weight(r, 3);
        let v = s.integrate_p1().unwrap();
        assert_eq!(v.value, GaussianRational::ratio(1, 2));
        assert!((beta_quadrature(1, 3) - 0.5).abs() < 1e-6);
        assert!((to_f64(&v.value.re) - beta_quadrature(1, 3)).abs() < 1e-6);
    }

    #[test]
    fn integrate_p1_rejects_divergent() {
        let r = p1();
        assert!(matches!(Scalar::p1_weight(r, 1).integrate_p1(), Err(Error::Divergent { .. })));
        assert!(matches!(Scalar::one(r).integrate_p1(), Err(Error::Divergent { .. })));
    }

    #[test]
    fn beta_formula_agrees_with_quadrature() {
        let r = p1();
        for (a, m) in [(0u32, 3u32), (1, 4), (2, 5), (0, 5), (2, 4)] {
            let mut mono = Monomial::one(1);
            mono.z[0] = a;
            mono.zbar[0] = a;
            let s = &Scalar::from_monomial(r, mono, GaussianRational::one()) * &Scalar::p1_weight(r, m);
            let exact = to_f64(&s.integrate_p1().unwrap().value.re);
            assert!((exact - beta_quadrature(a, m)).abs() < 1e-5, "a={a} m={m}");
        }
    }

    #[test]
    fn dual_inverse() {
        let r = RingSpec::poly(1).with_dual(true);
        let zz = &Scalar::z(r, 1) * &Scalar::zbar(r, 1);
        let h = &Scalar::one(r) + &zz.times_eps();
        let inv = h.try_inverse().unwrap();
        assert_eq!(&h * &inv, Scalar::one(r));
        assert_eq!(&Scalar::eps(r) * &Scalar::eps(r), Scalar::zero(r));
    }

    #[test]
    fn p1_inverse_of_polynomial_unit() {
        let r = p1();
        let one_plus_w = &Scalar::one(r) + &(&Scalar::z(r, 1) * &Scalar::zbar(r, 1));
        let u = one_plus_w.pow(3).scale(&GaussianRational::ratio(2, 3));
        assert_eq!(&u * &u.try_inverse().unwrap(), Scalar::one(r));
        let w = Scalar::p1_weight(r, 2).scale(&GaussianRational::from_int(5));
        assert_eq!(&w * &w.try_inverse().unwrap(), Scalar::one(r));
        assert!(Scalar::z(r, 1).try_inverse().is_none());
    }

    #[test]
    fn exponent_vector_counts() {
        assert_eq!(exponent_vectors(2, 2).len(), 6);
        assert_eq!(exponent_vectors(3, 4).len(), 35);
        assert_eq!(exponent_vectors(1, 0).len(), 1);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
