//! Total Chern classes: duals, twists by a line class, Whitney products and
//! the tangent bundle of a projective bundle.

use std::fmt;

use crate::binomial::binom;
use crate::chowring::{ClassExpr, Rational, Ring};
use crate::error::{Error, Result};

/// `c_0 + c_1 + ... + c_k` of a bundle of the given rank.
///
/// `classes[i]` is homogeneous of degree `i`; pieces above the rank or above
/// the top dimension of the ring are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TotalChern {
    ring: Ring,
    rank: u32,
    classes: Vec<ClassExpr>,
}

impl TotalChern {
    /// Validates and packs `c_0, c_1, ...`.
    pub fn new(ring: &Ring, rank: u32, classes: Vec<ClassExpr>) -> Result<Self> {
        let one = ClassExpr::one(ring);
        match classes.first() {
            Some(c0) if *c0 == one => {}
            _ => return Err(Error::Precondition("c_0 must be 1".into())),
        }
        for (i, c) in classes.iter().enumerate() {
            if !c.same_ring(&one) {
                return Err(Error::MixedRings);
            }
            if !c.is_zero() && c.homogeneous_degree() != Some(i as u32) {
                return Err(Error::DegreeMismatch {
                    expected: i as u32,
                    found: c.to_string(),
                });
            }
            if i as u32 > rank && !c.is_zero() {
                return Err(Error::Precondition(format!(
                    "c_{i} is nonzero for a bundle of rank {rank}"
                )));
            }
        }
        let mut out = Self {
            ring: ring.clone(),
            rank,
            classes,
        };
        out.trim();
        Ok(out)
    }

    /// Total class of a trivial bundle of the given rank.
    pub fn trivial(ring: &Ring, rank: u32) -> Self {
        Self {
            ring: ring.clone(),
            rank,
            classes: vec![ClassExpr::one(ring)],
        }
    }

    /// `c(E)` from the generators `e_i`; rank from the ring.
    pub fn bundle(ring: &Ring) -> Result<Self> {
        let rank = ring
            .rank()
            .ok_or_else(|| Error::Precondition("ring carries no bundle rank".into()))?;
        let classes = (0..=ring.bundle_count())
            .map(|i| ClassExpr::bundle_chern(ring, i))
            .collect();
        Self::new(ring, rank, classes)
    }

    /// `c(T_Y)` from the generators `t_j`; rank is the base dimension.
    pub fn base_tangent(ring: &Ring) -> Result<Self> {
        let classes = (0..=ring.tangent_count())
            .map(|j| ClassExpr::tangent_chern(ring, j))
            .collect();
        Self::new(ring, ring.base_dim(), classes)
    }

    fn trim(&mut self) {
        let keep = (self.rank.min(self.ring.top_dim()) as usize) + 1;
        self.classes.truncate(keep);
        while self.classes.len() > 1 && self.classes.last().is_some_and(ClassExpr::is_zero) {
            self.classes.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `c_i`, zero beyond what is stored.
    pub fn c(&self, i: u32) -> ClassExpr {
        self.classes
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| ClassExpr::zero(&self.ring))
    }

    pub fn classes(&self) -> &[ClassExpr] {
        &self.classes
    }

    /// Sum of all pieces as one inhomogeneous class.
    pub fn total(&self) -> ClassExpr {
        self.classes
            .iter()
            .fold(ClassExpr::zero(&self.ring), |acc, c| &acc + c)
    }

    /// Asserts that `c_i` vanishes for `i > rank` and lowers the stored rank.
    pub fn with_rank(&self, rank: u32) -> Result<Self> {
        if let Some((i, c)) = self
            .classes
            .iter()
            .enumerate()
            .skip(rank as usize + 1)
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::Precondition(format!(
                "cannot lower rank to {rank}: c_{i} = {c}"
            )));
        }
        let mut out = self.clone();
        out.rank = rank;
        out.trim();
        Ok(out)
    }
}

impl fmt::Debug for TotalChern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TotalChern")
            .field("rank", &self.rank)
            .field("classes", &self.classes)
            .finish()
    }
}

/// `c_i -> (-1)^i c_i`.
pub fn dual(c: &TotalChern) -> TotalChern {
    TotalChern {
        ring: c.ring.clone(),
        rank: c.rank,
        classes: c
            .classes
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
            .collect(),
    }
}

/// `c(E ⊗ ℓ)` for a line class `ℓ`:
/// `c_i = sum_{j<=i} C(rank - j, i - j) c_j(E) ℓ^{i-j}`.
pub fn twist_by_line(c: &TotalChern, rank: u32, line: &ClassExpr) -> Result<TotalChern> {
    if rank != c.rank {
        return Err(Error::RankMismatch {
            expected: c.rank,
            found: rank,
        });
    }
    if !line.same_ring(&ClassExpr::one(&c.ring)) {
        return Err(Error::MixedRings);
    }
    if !line.is_zero() && line.homogeneous_degree() != Some(1) {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: line.to_string(),
        });
    }
    let top = rank.min(c.ring.top_dim());
    let powers: Vec<ClassExpr> = (0..=top).map(|k| line.pow(k)).collect();
    let r = i64::from(rank);
    let classes = (0..=top)
        .map(|i| {
            (0..=i).fold(ClassExpr::zero(&c.ring), |acc, j| {
                let coeff = binom(r - i64::from(j), i64::from(i - j));
                let term = (&c.c(j) * &powers[(i - j) as usize]).scale(&Rational::from_integer(coeff));
                &acc + &term
            })
        })
        .collect();
    TotalChern::new(&c.ring, rank, classes)
}

/// Whitney product `c(A ⊕ B) = c(A) c(B)`.
pub fn whitney(a: &TotalChern, b: &TotalChern) -> Result<TotalChern> {
    if *a.ring != *b.ring {
        return Err(Error::MixedRings);
    }
    let rank = a.rank + b.rank;
    let top = rank.min(a.ring.top_dim());
    let classes = (0..=top)
        .map(|k| {
            (0..=k).fold(ClassExpr::zero(&a.ring), |acc, i| &acc + &(&a.c(i) * &b.c(k - i)))
        })
        .collect();
    TotalChern::new(&a.ring, rank, classes)
}

/// `c(T_{X/Y}) = c(pi^* E^∨ ⊗ L)` from the relative Euler sequence with trivial kernel.
///
/// The top piece `c_r(E^∨ ⊗ L)` is the Chern–Wu relation and vanishes, so the
/// result has rank `r - 1`.
pub fn relative_tangent_scroll(ring: &Ring) -> Result<TotalChern> {
    let e = TotalChern::bundle(ring)?;
    let twisted = twist_by_line(&dual(&e), e.rank(), &ClassExpr::tautological(ring))?;
    twisted.with_rank(e.rank() - 1)
}

/// `c(T_X) = c(pi^* E^∨ ⊗ L) · pi^* c(T_Y)` for `X = P_Y(E)`.
pub fn tangent_classes_scroll(ring: &Ring) -> Result<TotalChern> {
    whitney(&relative_tangent_scroll(ring)?, &TotalChern::base_tangent(ring)?)
}
