//! Pushforward to the base and numerical evaluation of top-degree classes.
//!
//! A base assignment sends every base generator of degree `d` to an integer
//! multiple of `H^d`, where `H` is a class on the base with `H^m = 1`. Under
//! such an assignment a degree-`m` base class becomes a number.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::binom;
use crate::error::{Error, Result};

use super::expr::{accumulate, ClassExpr, Monomial, Rational};
use super::ring::{GeneratorKind, Ring};

/// `pi_*` on normal forms: keeps the coefficient of `L^{r-1}`.
///
/// In normal form every `L`-exponent is below `r`, and
/// `pi_*(L^k * beta) = beta` for `k = r - 1`, zero for `k < r - 1`.
pub fn pushforward(a: &ClassExpr) -> Result<ClassExpr> {
    let ring = a.ring();
    let (Some(r), Some(l)) = (ring.rank(), ring.tautological_index()) else {
        return Err(Error::Precondition(
            "pushforward needs a projective-bundle ring".into(),
        ));
    };
    let mut out = HashMap::new();
    for (mono, c) in a.terms() {
        if u32::from(mono.0[l]) == r - 1 {
            let mut beta = mono.clone();
            beta.0[l] = 0;
            accumulate(&mut out, beta, c.clone());
        }
    }
    ClassExpr::from_terms(ring, out)
}

/// `L^{r-1} * beta`, the inverse of [`pushforward`] on base classes.
pub fn lift_to_top(beta: &ClassExpr) -> Result<ClassExpr> {
    let ring = beta.ring();
    let r = ring
        .rank()
        .ok_or_else(|| Error::Precondition("lift needs a projective-bundle ring".into()))?;
    Ok(&ClassExpr::tautological(ring).pow(r - 1) * beta)
}

/// Integer value of each base generator, by name, as a multiple of `H^deg`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BaseAssignment {
    values: HashMap<String, BigInt>,
}

impl BaseAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: impl Into<BigInt>) -> &mut Self {
        self.values.insert(name.into(), value.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.values.get(name)
    }

    /// `Y = P^m`, `E = O(1)^{+m}`: `c_i(E) = C(m, i) H^i`, `c_j(T_Y) = C(m+1, j) H^j`.
    pub fn projective_space_with_hyperplane_sum(ring: &Ring) -> Self {
        let m = i64::from(ring.base_dim());
        let mut a = Self::new();
        for g in ring.generators() {
            match g.kind {
                GeneratorKind::BundleChern(i) => {
                    a.set(g.name.clone(), binom(m, i64::from(i)));
                }
                GeneratorKind::TangentChern(j) => {
                    a.set(g.name.clone(), binom(m + 1, i64::from(j)));
                }
                _ => {}
            }
        }
        a
    }

    /// Every base generator of degree `d` set to `d + 1`.
    pub fn generic_positive(ring: &Ring) -> Self {
        let mut a = Self::new();
        for g in ring.generators() {
            if g.kind.is_base() {
                a.set(g.name.clone(), i64::from(g.degree) + 1);
            }
        }
        a
    }
}

/// Evaluates the degree-`m` piece of a base class (no `L`) under an assignment.
pub fn integrate_base(a: &ClassExpr, assignment: &BaseAssignment) -> Result<Rational> {
    let ring = a.ring();
    if !a.is_base_class() {
        return Err(Error::Precondition(
            "integrate_base called on a class involving L".into(),
        ));
    }
    let m = ring.base_dim();
    let mut total = Rational::zero();
    for (mono, c) in a.terms() {
        if ring.degree(mono) != m {
            continue;
        }
        total += c * Rational::from_integer(evaluate_monomial(ring, mono, assignment)?);
    }
    Ok(total)
}

/// Degree of a top-dimensional class on `P(E)`: pushforward, then evaluate.
pub fn integrate_top(a: &ClassExpr, assignment: &BaseAssignment) -> Result<Rational> {
    let top = a.component(a.ring().top_dim());
    integrate_base(&pushforward(&top)?, assignment)
}

fn evaluate_monomial(ring: &Ring, mono: &Monomial, assignment: &BaseAssignment) -> Result<BigInt> {
    let mut v = BigInt::one();
    for (g, &e) in ring.generators().iter().zip(&mono.0) {
        if e == 0 {
            continue;
        }
        let x = assignment
            .get(&g.name)
            .ok_or_else(|| Error::UnknownGenerator(format!("{} (no value assigned)", g.name)))?;
        v *= num_traits::pow(x.clone(), usize::from(e));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowring::make_scroll_ring;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn pushforward_keeps_top_l_power() {
        let ring = make_scroll_ring(1, 3).unwrap();
        let l = ClassExpr::tautological(&ring);
        let e1 = ClassExpr::bundle_chern(&ring, 1);
        let t1 = ClassExpr::tangent_chern(&ring, 1);
        let x = &(&l.pow(2) * &e1) + &(&l * &t1);
        assert_eq!(pushforward(&x).unwrap(), e1);
        assert_eq!(pushforward(&lift_to_top(&t1).unwrap()).unwrap(), t1);
    }

    #[test]
    fn preset_values() {
        let ring = make_scroll_ring(3, 3).unwrap();
        let a = BaseAssignment::projective_space_with_hyperplane_sum(&ring);
        assert_eq!(a.get("e1"), Some(&BigInt::from(3)));
        assert_eq!(a.get("e3"), Some(&BigInt::from(1)));
        assert_eq!(a.get("t1"), Some(&BigInt::from(4)));
        assert_eq!(a.get("t2"), Some(&BigInt::from(6)));
        let e1 = ClassExpr::bundle_chern(&ring, 1);
        let t2 = ClassExpr::tangent_chern(&ring, 2);
        // c1(E) c2(T) on P^3 = 3 * 6
        assert_eq!(integrate_base(&(&e1 * &t2), &a).unwrap(), int(18));
        // lower-degree pieces do not contribute
        assert_eq!(integrate_base(&e1, &a).unwrap(), int(0));
    }

    #[test]
    fn l_powers_integrate_to_segre_numbers() {
        // On P(O(1)^2) over P^1 (a quadric surface), L^2 = c1(E) = 2.
        let ring = make_scroll_ring(1, 2).unwrap();
        let mut a = BaseAssignment::new();
        a.set("e1", 2).set("t1", 2);
        let l = ClassExpr::tautological(&ring);
        assert_eq!(integrate_top(&l.pow(2), &a).unwrap(), int(2));
        // P(O(1)^3) over P^1, a rational normal scroll of degree 3
        let ring = make_scroll_ring(1, 3).unwrap();
        let mut a = BaseAssignment::new();
        a.set("e1", 3).set("t1", 2);
        let l = ClassExpr::tautological(&ring);
        assert_eq!(integrate_top(&l.pow(3), &a).unwrap(), int(3));
    }

    #[test]
    fn rejects_unreduced_evaluation() {
        let ring = make_scroll_ring(1, 2).unwrap();
        let l = ClassExpr::tautological(&ring);
        assert!(integrate_base(&l, &BaseAssignment::new()).is_err());
        let e1 = ClassExpr::bundle_chern(&ring, 1);
        assert!(integrate_base(&e1, &BaseAssignment::new()).is_err());
    }
}
