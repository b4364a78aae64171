//! Top Chern class of the first jet bundle `J_1(L)` of a scroll `P_Y(E)`.
//!
//! Two independent routes are provided:
//! - [`cn_closed`] sums the coefficient table `A_{s1,s2}` against
//!   `L^{n-s1-s2} c_{s1}(E^∨) c_{s2}(T_Y)`;
//! - [`cn_expansion`] builds `c(T_X)` from the relative Euler and tangent
//!   sequences and expands `sum_t (-1)^t (n+1-t) c_t(T_X) L^{n-t}` inside the
//!   ring, never touching the coefficient table.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::binomial::{binom, sign};
use crate::chern::{dual, tangent_classes_scroll, TotalChern};
use crate::chowring::{
    integrate_base, lift_to_top, make_scroll_ring, pushforward, BaseAssignment, ClassExpr, Rational, Ring,
};
use crate::error::{Error, Result};

/// `f(m, r, s1, s2) = sum_{t=0}^{m+r-1} (-1)^t (m+r-t) C(r-s1, t-s1-s2)`.
///
/// Defined for any nonnegative arguments; equals `A_{s1,s2}` for the scroll
/// with base dimension `m` and rank `r` (there `n + 1 - t = m + r - t`).
pub fn f_eval(m: i64, r: i64, s1: i64, s2: i64) -> BigInt {
    (0..=m + r - 1)
        .map(|t| binom(r - s1, t - s1 - s2) * (sign(t) * (m + r - t)))
        .sum()
}

/// `A_{s1,s2}` for a scroll, with its admissibility checks.
pub fn coeff_a(m: u32, r: u32, s1: u32, s2: u32) -> Result<BigInt> {
    check_scroll(m, r)?;
    if s1 + s2 > m {
        return Err(Error::CoefficientIndex { s1, s2, m });
    }
    Ok(f_eval(m.into(), r.into(), s1.into(), s2.into()))
}

fn check_scroll(m: u32, r: u32) -> Result<()> {
    if m < 1 {
        return Err(Error::BaseDimension { m: m.into() });
    }
    if r < 2 {
        return Err(Error::NotAScroll { r: r.into() });
    }
    Ok(())
}

/// All `A_{s1,s2}` with `s1 + s2 <= m` for one `(m, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub m: u32,
    pub r: u32,
    pub entries: BTreeMap<(u32, u32), BigInt>,
}

impl CoeffTable {
    pub fn compute(m: u32, r: u32) -> Result<Self> {
        check_scroll(m, r)?;
        let mut entries = BTreeMap::new();
        for s1 in 0..=m {
            for s2 in 0..=m - s1 {
                entries.insert((s1, s2), coeff_a(m, r, s1, s2)?);
            }
        }
        Ok(Self { m, r, entries })
    }

    pub fn get(&self, s1: u32, s2: u32) -> Option<&BigInt> {
        self.entries.get(&(s1, s2))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero())
    }
}

/// Cached coefficient table for `(m, r)`.
pub fn coeff_table(m: u32, r: u32) -> Result<Arc<CoeffTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<CoeffTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("coefficient cache poisoned").get(&(m, r)) {
        return Ok(t.clone());
    }
    let table = Arc::new(CoeffTable::compute(m, r)?);
    cache
        .lock()
        .expect("coefficient cache poisoned")
        .insert((m, r), table.clone());
    Ok(table)
}

/// `c_n(J_1(L))` from the coefficient table.
pub fn cn_closed(m: u32, r: u32) -> Result<ClassExpr> {
    check_scroll(m, r)?;
    let ring = make_scroll_ring(m.into(), r.into())?;
    cn_closed_in(&ring)
}

/// Same as [`cn_closed`] inside an already constructed scroll ring.
pub fn cn_closed_in(ring: &Ring) -> Result<ClassExpr> {
    let (m, r, n) = scroll_params(ring)?;
    let table = coeff_table(m, r)?;
    let l = ClassExpr::tautological(ring);
    let e_dual = dual(&TotalChern::bundle(ring)?);
    let tangent = TotalChern::base_tangent(ring)?;
    let mut acc = ClassExpr::zero(ring);
    for (&(s1, s2), a) in table.nonzero() {
        let base = &e_dual.c(s1) * &tangent.c(s2);
        if base.is_zero() {
            continue;
        }
        let term = &l.pow(n - s1 - s2) * &base;
        acc = &acc + &term.scale(&Rational::from_integer(a.clone()));
    }
    Ok(acc)
}

/// `c_n(J_1(L))` expanded from `c(T_X)`; the independent route.
pub fn cn_expansion(m: u32, r: u32) -> Result<ClassExpr> {
    check_scroll(m, r)?;
    let ring = make_scroll_ring(m.into(), r.into())?;
    let tx = tangent_classes_scroll(&ring)?;
    Ok(jet_top_chern(&tx, &ClassExpr::tautological(&ring), ring.top_dim()))
}

/// `sum_{t=0}^{n} (-1)^t (n+1-t) c_t(T_X) L^{n-t}`, from `0 -> Ω_X(L) -> J_1(L) -> L -> 0`.
pub fn jet_top_chern(tangent: &TotalChern, line: &ClassExpr, n: u32) -> ClassExpr {
    let ring = tangent.ring();
    (0..=n).fold(ClassExpr::zero(ring), |acc, t| {
        let coeff = sign(t.into()) * i64::from(n + 1 - t);
        let term = (&tangent.c(t) * &line.pow(n - t)).scale_int(coeff);
        &acc + &term
    })
}

fn scroll_params(ring: &Ring) -> Result<(u32, u32, u32)> {
    let r = ring
        .rank()
        .ok_or_else(|| Error::Precondition("not a scroll ring".into()))?;
    Ok((ring.base_dim(), r, ring.top_dim()))
}

/// The printed case formulas for `r >= m`, with no summation.
pub fn special_case_cn(m: u32, r: u32) -> Result<ClassExpr> {
    check_scroll(m, r)?;
    if r < m {
        return Err(Error::NoSpecialCase { m, r });
    }
    let ring = make_scroll_ring(m.into(), r.into())?;
    let e = |i| ClassExpr::bundle_chern(&ring, i);
    let base = if r >= m + 2 {
        return Ok(ClassExpr::zero(&ring));
    } else if r == m + 1 {
        e(m)
    } else {
        // c_{m-1}(E) (c_1(E) + K_Y) + m c_m(E), with K_Y = -t_1
        let k_y = -&ClassExpr::tangent_chern(&ring, 1);
        &(&e(m - 1) * &(&e(1) + &k_y)) + &e(m).scale_int(m)
    };
    lift_to_top(&base)
}

/// `v(Y, E) = 1 + ½((m-2) c_m(E) + (K_Y + c_1(E)) c_{m-1}(E))` with `K_Y = -t_1`.
///
/// The constant 1 is the degree-0 piece of the returned class.
pub fn fukuma_v(m: u32, c_e: &TotalChern) -> Result<ClassExpr> {
    if c_e.rank() != m {
        return Err(Error::RankMismatch {
            expected: m,
            found: c_e.rank(),
        });
    }
    if m < 1 {
        return Err(Error::BaseDimension { m: 0 });
    }
    let ring = c_e.ring();
    let k_y = -&ClassExpr::tangent_chern(ring, 1);
    let inner = &c_e.c(m).scale_int(i64::from(m) - 2) + &(&(&k_y + &c_e.c(1)) * &c_e.c(m - 1));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Ok(&ClassExpr::one(ring) + &inner.scale(&half))
}

/// `2 v(Y, E) - 2 + 2 c_m(E)`.
pub fn fukuma_rhs(m: u32, c_e: &TotalChern) -> Result<ClassExpr> {
    let v = fukuma_v(m, c_e)?;
    Ok(&(&v.scale_int(2) - &ClassExpr::integer(c_e.ring(), 2)) + &c_e.c(m).scale_int(2))
}

/// A ring holding `c(E)` of rank `m` over an `m`-dimensional base.
///
/// For `m >= 2` this is the scroll ring with `r = m`. A rank-one bundle is
/// not a scroll, so for `m = 1` the classes live in the `r = 2` ring and only
/// `c_1(E)` is used.
pub fn equal_rank_bundle(m: u32) -> Result<(Ring, TotalChern)> {
    if m < 1 {
        return Err(Error::BaseDimension { m: 0 });
    }
    let ring = make_scroll_ring(m.into(), m.max(2).into())?;
    let classes = (0..=m).map(|i| ClassExpr::bundle_chern(&ring, i)).collect();
    let c_e = TotalChern::new(&ring, m, classes)?;
    Ok((ring, c_e))
}

/// Values of the Fukuma relation on `Y = P^m`, `E = O(1)^{+m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresetEvaluation {
    pub m: u32,
    pub v: Rational,
    pub top_chern_e: Rational,
    /// `2v - 2 + 2 c_m(E)`
    pub relation_rhs: Rational,
    /// `c_n(J_1(L))` from the closed form; `None` for `m = 1` where `r = m` is not a scroll.
    pub cn_closed: Option<Rational>,
}

pub fn evaluate_projective_preset(m: u32) -> Result<PresetEvaluation> {
    let (ring, c_e) = equal_rank_bundle(m)?;
    let assignment = BaseAssignment::projective_space_with_hyperplane_sum(&ring);
    let v_class = fukuma_v(m, &c_e)?;
    let v = v_class.constant_term() + integrate_base(&v_class.component(m), &assignment)?;
    let top_chern_e = integrate_base(&c_e.c(m), &assignment)?;
    let rhs = fukuma_rhs(m, &c_e)?;
    let relation_rhs = rhs.constant_term() + integrate_base(&rhs.component(m), &assignment)?;
    let cn_closed = if m >= 2 {
        let cn = cn_closed_in(&ring)?;
        Some(integrate_base(&pushforward(&cn)?, &assignment)?)
    } else {
        None
    };
    Ok(PresetEvaluation {
        m,
        v,
        top_chern_e,
        relation_rhs,
        cn_closed,
    })
}

/// `c_1(J_1(L))` on a curve of genus `g`: `2g - 2 + 2 deg(L)`.
pub fn curve_jet_degree(genus: i128, line_degree: i128) -> i128 {
    2 * genus - 2 + 2 * line_degree
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PluckerSplit {
    pub total: i128,
    pub dual_curve_part: i128,
    pub flex_part: i128,
}

/// `c_1(J_1(L)) = d + 3d(d-2)` for the conormal variety of a smooth plane curve of degree `d`.
pub fn plucker_codegree(d: i64) -> Result<PluckerSplit> {
    if d < 2 {
        return Err(Error::Precondition(format!("plane curve degree must be >= 2, got {d}")));
    }
    let d = i128::from(d);
    Ok(PluckerSplit {
        total: d + 3 * d * (d - 2),
        dual_curve_part: d,
        flex_part: 3 * d * (d - 2),
    })
}

/// Outcome of comparing the two routes at one `(m, r)`.
#[derive(Debug, Clone)]
pub struct OracleCheck {
    pub m: u32,
    pub r: u32,
    pub closed: ClassExpr,
    pub expansion: ClassExpr,
}

impl OracleCheck {
    pub fn agrees(&self) -> bool {
        self.closed == self.expansion
    }
}

pub fn oracle_compare(m: u32, r: u32) -> Result<OracleCheck> {
    Ok(OracleCheck {
        m,
        r,
        closed: cn_closed(m, r)?,
        expansion: cn_expansion(m, r)?,
    })
}

/// All `(m, r)` with `m >= 1`, `r >= 2`, `m + r - 1 <= n_max`.
pub fn scroll_grid(n_max: u32) -> Vec<(u32, u32)> {
    (1..n_max)
        .flat_map(|m| (2..=n_max + 1 - m).map(move |r| (m, r)))
        .collect()
}

/// Runs [`oracle_compare`] over [`scroll_grid`] in parallel; output sorted by `(m, r)`.
pub fn oracle_sweep(n_max: u32) -> Result<Vec<OracleCheck>> {
    let mut out = scroll_grid(n_max)
        .into_par_iter()
        .map(|(m, r)| oracle_compare(m, r))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|c| (c.m, c.r));
    Ok(out)
}

/// Coefficient predicted by the printed case analysis for `r >= m`; `None` for `r < m`.
pub fn printed_coefficient(m: i64, r: i64, s1: i64, s2: i64) -> Option<BigInt> {
    let v = if r >= m + 2 {
        0
    } else if r == m + 1 {
        if (s1, s2) == (m, 0) {
            sign(m)
        } else {
            0
        }
    } else if r == m {
        if (s1, s2) == (m, 0) {
            sign(m) * m
        } else if (s1, s2) == (m - 1, 1) {
            sign(m)
        } else if (s1, s2) == (m - 1, 0) {
            sign(m + 1)
        } else {
            0
        }
    } else {
        return None;
    };
    Some(BigInt::from(v))
}

/// A coefficient that disagrees with the printed case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub m: i64,
    pub r: i64,
    pub s1: i64,
    pub s2: i64,
    pub expected: BigInt,
    pub found: BigInt,
}

/// Compares `f` with [`printed_coefficient`] for every admissible `(s1, s2)`.
pub fn check_printed_coefficients(m: i64, r: i64) -> Vec<CoefficientMismatch> {
    let mut out = Vec::new();
    for s1 in 0..=m {
        for s2 in 0..=m - s1 {
            let Some(expected) = printed_coefficient(m, r, s1, s2) else {
                continue;
            };
            let found = f_eval(m, r, s1, s2);
            if found != expected {
                out.push(CoefficientMismatch {
                    m,
                    r,
                    s1,
                    s2,
                    expected,
                    found,
                });
            }
        }
    }
    out
}

/// `(sum_t (-1)^t C(m-1, t), sum_t (-1)^t t C(m, t))`; both vanish for `m >= 2`.
pub fn alternating_binomial_sums(m: i64) -> (BigInt, BigInt) {
    let first = (0..m).map(|t| binom(m - 1, t) * sign(t)).sum();
    let second = (0..=m).map(|t| binom(m, t) * (sign(t) * t)).sum();
    (first, second)
}

/// Nonzero coefficients and pushed-forward class for the `r = m - 1` regime.
#[derive(Debug, Clone)]
pub struct BelowDiagonalReport {
    pub m: u32,
    pub nonzero_coefficients: Vec<((u32, u32), BigInt)>,
    /// Nonzero `A_{s1,s2}` whose class `c_{s1}(E^∨) c_{s2}(T_Y)` is not identically zero.
    pub effective_coefficients: usize,
    pub base_class: ClassExpr,
}

pub fn below_diagonal_report(m: u32) -> Result<BelowDiagonalReport> {
    if m < 3 {
        return Err(Error::Precondition("r = m - 1 >= 2 needs m >= 3".into()));
    }
    let r = m - 1;
    let table = coeff_table(m, r)?;
    let nonzero_coefficients: Vec<_> = table.nonzero().map(|(k, v)| (*k, v.clone())).collect();
    let effective_coefficients = nonzero_coefficients.iter().filter(|((s1, _), _)| *s1 <= r).count();
    let cn = cn_closed(m, r)?;
    Ok(BelowDiagonalReport {
        m,
        nonzero_coefficients,
        effective_coefficients,
        base_class: pushforward(&cn)?,
    })
}

/// True when every coefficient of the class is a nonnegative integer.
pub fn has_nonnegative_coefficients(c: &ClassExpr) -> bool {
    c.terms().all(|(_, v)| v.is_integer() && !v.is_negative())
}
