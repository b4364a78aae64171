use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::ring::{Ring, RingSpec};

pub type Rational = BigRational;

/// Dense exponent vector, one slot per generator of the owning ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn var(width: usize, idx: usize) -> Self {
        let mut m = Self::one(width);
        m.0[idx] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn times(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b)?);
        }
        Some(Monomial(out))
    }
}

pub(crate) fn accumulate<C>(map: &mut HashMap<Monomial, C>, mono: Monomial, c: C)
where
    C: Zero + AddAssign,
{
    match map.entry(mono) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
    }
}

/// Applies every reduction rule of `ring` to a single term and adds the
/// result into `out`.
fn reduce_into(ring: &RingSpec, mono: Monomial, c: Rational, out: &mut HashMap<Monomial, Rational>) {
    if c.is_zero() || ring.degree(&mono) > ring.top_dim() {
        return;
    }
    if let Some(f) = ring.fiber_index() {
        if mono.0[f] >= 2 {
            return;
        }
    }
    if ring.base_degree(&mono) > ring.base_dim() {
        return;
    }
    let (Some(r), Some(l)) = (ring.rank(), ring.tautological_index()) else {
        accumulate(out, mono, c);
        return;
    };
    let k = u32::from(mono.0[l]);
    if k < r {
        accumulate(out, mono, c);
        return;
    }
    let mut beta = mono;
    beta.0[l] = 0;
    for (lk, coeff) in ring.l_power(k) {
        let term = lk.times(&beta).expect("exponent overflow beyond top dimension");
        if ring.base_degree(&term) > ring.base_dim() {
            continue;
        }
        accumulate(out, term, &c * Rational::from_integer(coeff.clone()));
    }
}

/// An element of the Chow ring, always stored in normal form.
///
/// Normal form: `L`-exponent below the rank, base degree at most `m`,
/// total degree at most `n`, `F`-exponent at most one, no zero coefficients.
#[derive(Clone)]
pub struct ClassExpr {
    ring: Ring,
    terms: HashMap<Monomial, Rational>,
}

impl ClassExpr {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: HashMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.width()), c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn integer(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    /// The generator with the given name, reduced.
    pub fn generator(ring: &Ring, name: &str) -> Result<Self> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(Self::from_monomial(ring, Monomial::var(ring.width(), idx), Rational::one()))
    }

    /// Tautological class `L`, or zero when the ring has none.
    pub fn tautological(ring: &Ring) -> Self {
        match ring.tautological_index() {
            Some(idx) => Self::from_monomial(ring, Monomial::var(ring.width(), idx), Rational::one()),
            None => Self::zero(ring),
        }
    }

    /// `c_i(E)`; zero when `e_i` is not a generator (and one for `i = 0`).
    pub fn bundle_chern(ring: &Ring, i: u32) -> Self {
        if i == 0 {
            return Self::one(ring);
        }
        match ring.bundle_index(i) {
            Some(idx) => Self::from_monomial(ring, Monomial::var(ring.width(), idx), Rational::one()),
            None => Self::zero(ring),
        }
    }

    /// `c_j(T_Y)`; zero when `t_j` is not a generator (and one for `j = 0`).
    pub fn tangent_chern(ring: &Ring, j: u32) -> Self {
        if j == 0 {
            return Self::one(ring);
        }
        match ring.tangent_index(j) {
            Some(idx) => Self::from_monomial(ring, Monomial::var(ring.width(), idx), Rational::one()),
            None => Self::zero(ring),
        }
    }

    /// Fibre class `F`, or zero when the ring has none.
    pub fn fiber(ring: &Ring) -> Self {
        match ring.fiber_index() {
            Some(idx) => Self::from_monomial(ring, Monomial::var(ring.width(), idx), Rational::one()),
            None => Self::zero(ring),
        }
    }

    /// Reduces `c * mono` to normal form.
    pub fn from_monomial(ring: &Ring, mono: Monomial, c: Rational) -> Self {
        let mut terms = HashMap::new();
        reduce_into(ring, mono, c, &mut terms);
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Reduces an arbitrary list of terms to normal form.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut out = HashMap::new();
        for (mono, c) in terms {
            if mono.0.len() != ring.width() {
                return Err(Error::Precondition(format!(
                    "exponent vector of width {} in a ring with {} generators",
                    mono.0.len(),
                    ring.width()
                )));
            }
            reduce_into(ring, mono, c, &mut out);
        }
        Ok(Self {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in a fixed display order: decreasing degree, then decreasing exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            self.ring
                .degree(b.0)
                .cmp(&self.ring.degree(a.0))
                .then_with(|| b.0.cmp(a.0))
        });
        v
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_ring(&self, other: &ClassExpr) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &ClassExpr) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &ClassExpr) -> Result<ClassExpr> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &ClassExpr) -> Result<ClassExpr> {
        self.try_add(&-other)
    }

    /// Product followed by reduction of every resulting term.
    pub fn try_mul(&self, other: &ClassExpr) -> Result<ClassExpr> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let n = ring.top_dim();
        let mut out = HashMap::new();
        let rhs: Vec<(&Monomial, &Rational, u32)> = other
            .terms
            .iter()
            .map(|(m, c)| (m, c, ring.degree(m)))
            .collect();
        for (ma, ca) in &self.terms {
            let da = ring.degree(ma);
            for &(mb, cb, db) in &rhs {
                if da + db > n {
                    continue;
                }
                let Some(mono) = ma.times(mb) else { continue };
                reduce_into(ring, mono, ca * cb, &mut out);
            }
        }
        Ok(Self {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn pow(&self, k: u32) -> ClassExpr {
        let mut acc = ClassExpr::one(&self.ring);
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> ClassExpr {
        if c.is_zero() {
            return ClassExpr::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> ClassExpr {
        self.scale(&Rational::from_integer(c.into()))
    }

    /// Always the identity: values are kept reduced on construction.
    pub fn normal_form(&self) -> ClassExpr {
        self.clone()
    }

    /// Degree-`d` graded piece.
    pub fn component(&self, d: u32) -> ClassExpr {
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| self.ring.degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Highest degree carrying a term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree(m)).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.width()))
    }

    /// True when no term involves `L`.
    pub fn is_base_class(&self) -> bool {
        match self.ring.tautological_index() {
            Some(l) => self.terms.keys().all(|m| m.0[l] == 0),
            None => true,
        }
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub(crate) fn from_reduced_map(ring: &Ring, terms: HashMap<Monomial, Rational>) -> Self {
        Self {
            ring: ring.clone(),
            terms,
        }
    }
}

impl PartialEq for ClassExpr {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for ClassExpr {}

impl fmt::Debug for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassExpr({self})")
    }
}

pub(crate) fn format_monomial(ring: &RingSpec, mono: &Monomial) -> String {
    let mut parts = Vec::new();
    for (g, &e) in ring.generators().iter().zip(&mono.0) {
        match e {
            0 => {}
            1 => parts.push(g.name.clone()),
            _ => parts.push(format!("{}^{}", g.name, e)),
        }
    }
    parts.join("*")
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    ring: &RingSpec,
    terms: impl IntoIterator<Item = (&'a Monomial, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let body = format_monomial(ring, mono);
        if body.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{abs}*{body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.ring, self.sorted_terms())
    }
}

impl Add for &ClassExpr {
    type Output = ClassExpr;
    fn add(self, rhs: &ClassExpr) -> ClassExpr {
        self.try_add(rhs).expect("add: operands from different rings")
    }
}

impl Sub for &ClassExpr {
    type Output = ClassExpr;
    fn sub(self, rhs: &ClassExpr) -> ClassExpr {
        self.try_sub(rhs).expect("sub: operands from different rings")
    }
}

impl Mul for &ClassExpr {
    type Output = ClassExpr;
    fn mul(self, rhs: &ClassExpr) -> ClassExpr {
        self.try_mul(rhs).expect("mul: operands from different rings")
    }
}

impl Neg for &ClassExpr {
    type Output = ClassExpr;
    fn neg(self) -> ClassExpr {
        ClassExpr {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// A polynomial in the generators of a ring with no relations applied.
///
/// Used to state the homomorphism property of [`normal_form`]: reducing a
/// free product equals multiplying reduced factors.
#[derive(Clone, PartialEq)]
pub struct FreePoly {
    ring: Ring,
    terms: HashMap<Monomial, Rational>,
}

impl FreePoly {
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut out = HashMap::new();
        for (mono, c) in terms {
            if mono.0.len() != ring.width() {
                return Err(Error::Precondition("exponent vector width mismatch".into()));
            }
            accumulate(&mut out, mono, c);
        }
        Ok(Self {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn try_add(&self, other: &FreePoly) -> Result<FreePoly> {
        if *self.ring != *other.ring {
            return Err(Error::MixedRings);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        if *self.ring != *other.ring {
            return Err(Error::MixedRings);
        }
        let mut terms = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = ma
                    .times(mb)
                    .ok_or_else(|| Error::Precondition("exponent overflow".into()))?;
                accumulate(&mut terms, mono, ca * cb);
            }
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms,
        })
    }
}

impl From<&ClassExpr> for FreePoly {
    fn from(c: &ClassExpr) -> Self {
        Self {
            ring: c.ring.clone(),
            terms: c.terms.clone(),
        }
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        write!(f, "FreePoly(")?;
        write_terms(f, &self.ring, v)?;
        write!(f, ")")
    }
}

/// Reduces a free polynomial modulo every rule of its ring.
pub fn normal_form(p: &FreePoly) -> ClassExpr {
    let mut out = HashMap::new();
    for (m, c) in &p.terms {
        reduce_into(&p.ring, m.clone(), c.clone(), &mut out);
    }
    ClassExpr::from_reduced_map(&p.ring, out)
}

/// Checks the stored-term invariants of a normal form.
pub fn is_normal(c: &ClassExpr) -> bool {
    let ring = c.ring();
    c.terms().all(|(m, v)| {
        !v.is_zero()
            && ring.degree(m) <= ring.top_dim()
            && ring.base_degree(m) <= ring.base_dim()
            && ring.fiber_index().is_none_or(|f| m.0[f] <= 1)
            && match (ring.rank(), ring.tautological_index()) {
                (Some(r), Some(l)) => u32::from(m.0[l]) < r,
                _ => true,
            }
    })
}
