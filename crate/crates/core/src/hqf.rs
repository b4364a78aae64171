//! Hyperquadric fibrations `f: X -> B` over a smooth curve of genus `g`.
//!
//! `X` sits in `P = P_B(E)`, `E = f_* L` of rank `n + 1`, as a member of
//! `|2ξ - π^*β|` with `deg c_1(E) = e` and `deg β = b`. Only the restricted
//! classes on `X` are modelled: the two-generator ring `{L, F}` with
//! `F^2 = 0`, evaluated by `L^{n-1} F = 2` and `L^n = 2e - b`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binomial::{binom, sign};
use crate::chern::TotalChern;
use crate::chowring::{make_fibration_ring, ClassExpr, Monomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::jet::jet_top_chern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HqfInput {
    /// `dim X`
    pub n: u32,
    /// genus of the base curve
    pub g: i64,
    /// `deg c_1(f_* L)`
    pub e: i64,
    /// `deg β`
    pub b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HqfWarning {
    /// `2e - 5b < 0` away from `n = 4`, where no sign constraint is asserted.
    NegativeSingularFiberCount { n: u32, value: i64 },
}

impl fmt::Display for HqfWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HqfWarning::NegativeSingularFiberCount { n, value } => write!(
                f,
                "2e - 5b = {value} < 0 at n = {n} (constraint only established for n = 4)"
            ),
        }
    }
}

impl HqfInput {
    pub fn new(n: u32, g: i64, e: i64, b: i64) -> Self {
        Self { n, g, e, b }
    }

    /// Checks the input invariants; returns the warnings that do not reject.
    pub fn validate(&self) -> Result<Vec<HqfWarning>> {
        if self.n < 3 {
            return Err(Error::HqfInvariant(format!("n >= 3 (got n = {})", self.n)));
        }
        if self.g < 0 {
            return Err(Error::HqfInvariant(format!("g >= 0 (got g = {})", self.g)));
        }
        let degree = 2 * self.e - self.b;
        if degree <= 0 {
            return Err(Error::HqfInvariant(format!(
                "2e - b > 0 (L^n = {degree})"
            )));
        }
        let singular = 2 * self.e - 5 * self.b;
        let mut warnings = Vec::new();
        if singular < 0 {
            if self.n == 4 {
                return Err(Error::HqfInvariant(format!(
                    "2e - 5b >= 0 (got {singular})"
                )));
            }
            warnings.push(HqfWarning::NegativeSingularFiberCount {
                n: self.n,
                value: singular,
            });
        }
        Ok(warnings)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcTriple {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// The three coefficient sums, evaluated directly.
pub fn abc(n: u32) -> Result<AbcTriple> {
    if n < 3 {
        return Err(Error::Precondition(format!("abc needs n >= 3, got {n}")));
    }
    let n = i64::from(n);
    let outer = |inner: &dyn Fn(i64) -> BigInt| -> BigInt {
        (0..=n).map(|t| inner(t) * (sign(t) * (n + 1 - t))).sum()
    };
    let pow2 = |i: i64| BigInt::from(2).pow(i as u32);
    let a = outer(&|t| (0..=t).map(|i| binom(n, t - i) * pow2(i) * sign(i)).sum());
    let b = outer(&|t| {
        (0..=t)
            .map(|i| binom(n + 1, t - i) * pow2(i) * (sign(i) * (i + 1)))
            .sum()
    });
    let c = outer(&|t| (0..=t).map(|i| binom(n + 1, t - i - 1) * pow2(i) * sign(i)).sum());
    Ok(AbcTriple { a, b, c })
}

/// `2Ae - Bb + 4C(1 - g)`.
pub fn cn_closed(input: &HqfInput) -> Result<BigInt> {
    input.validate()?;
    let AbcTriple { a, b, c } = abc(input.n)?;
    Ok(BigInt::from(2) * a * input.e - b * input.b + BigInt::from(4) * c * (1 - input.g))
}

/// An affine form `e·x_e + b·x_b + g·x_g + constant` in the integer parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub e: BigInt,
    pub b: BigInt,
    pub g: BigInt,
    pub constant: BigInt,
}

impl AffineForm {
    pub fn eval(&self, e: i64, b: i64, g: i64) -> BigInt {
        &self.e * e + &self.b * b + &self.g * g + &self.constant
    }
}

/// The closed form as a polynomial in `(e, b, g)`.
pub fn closed_form_polynomial(n: u32) -> Result<AffineForm> {
    let AbcTriple { a, b, c } = abc(n)?;
    Ok(AffineForm {
        e: BigInt::from(2) * a,
        b: -b,
        g: BigInt::from(-4) * &c,
        constant: BigInt::from(4) * c,
    })
}

/// `(2e - b) + 3(2e - 5b) - 4(1 - g)`, the regrouped four-dimensional form.
pub fn regrouped_fourfold_polynomial() -> AffineForm {
    AffineForm {
        e: BigInt::from(2 + 3 * 2),
        b: BigInt::from(-1 - 3 * 5),
        g: BigInt::from(4),
        constant: BigInt::from(-4),
    }
}

pub fn regrouped_fourfold(e: i64, b: i64, g: i64) -> i64 {
    (2 * e - b) + 3 * (2 * e - 5 * b) - 4 * (1 - g)
}

/// Classes on `X` before the final evaluation.
#[derive(Debug, Clone)]
pub struct RecursionTrace {
    pub ring: Ring,
    pub tangent: TotalChern,
    pub top: ClassExpr,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `c(T_X)` from the divisor sequence and `c_n(J_1(L))` as a class in `{L, F}`.
pub fn recursion_classes(input: &HqfInput) -> Result<RecursionTrace> {
    input.validate()?;
    let n = input.n;
    let ring = make_fibration_ring(n)?;
    let l = ClassExpr::tautological(&ring);
    let f = ClassExpr::fiber(&ring);
    let ni = i64::from(n);
    let bin = |top: i64, k: i64| Rational::from_integer(binom(top, k));

    let l_pows: Vec<ClassExpr> = (0..=n).map(|k| l.pow(k)).collect();
    let lf_pows: Vec<ClassExpr> = l_pows.iter().map(|lk| lk * &f).collect();

    // c_s(T_P)|_X = C(n+1, s) L^s - e C(n, s-1) F L^{s-1} + 2(1-g) C(n+1, s-1) L^{s-1} F
    let ambient: Vec<ClassExpr> = (0..=ni)
        .map(|s| {
            let ls = l_pows[s as usize].scale(&bin(ni + 1, s));
            if s == 0 {
                return ls;
            }
            let fiber_coeff = -q(input.e) * bin(ni, s - 1) + q(2 * (1 - input.g)) * bin(ni + 1, s - 1);
            &ls + &lf_pows[s as usize - 1].scale(&fiber_coeff)
        })
        .collect();

    // (2ξ - π^*β)|_X^i = 2^i L^i - i b 2^{i-1} L^{i-1} F, with alternating sign (-1)^i folded in
    let divisor_powers: Vec<ClassExpr> = (0..=ni)
        .map(|i| {
            let li = l_pows[i as usize].scale(&q(1 << i));
            let power = if i == 0 {
                li
            } else {
                &li - &lf_pows[i as usize - 1].scale(&q(i * input.b * (1 << (i - 1))))
            };
            if i % 2 == 0 {
                power
            } else {
                -&power
            }
        })
        .collect();

    // c_t(T_X) = sum_i (-1)^i c_{t-i}(T_P)|_X (2ξ - π^*β)|_X^i
    let classes: Vec<ClassExpr> = (0..=ni as usize)
        .map(|t| {
            (0..=t).fold(ClassExpr::zero(&ring), |acc, i| &acc + &(&ambient[t - i] * &divisor_powers[i]))
        })
        .collect();
    let tangent = TotalChern::new(&ring, n, classes)?;
    let top = jet_top_chern(&tangent, &l, n);
    Ok(RecursionTrace { ring, tangent, top })
}

/// Evaluates a top class of `X` with `L^n = 2e - b` and `L^{n-1} F = 2`.
pub fn evaluate_top(class: &ClassExpr, input: &HqfInput) -> Result<BigInt> {
    let ring = class.ring();
    let n = ring.top_dim();
    let (l, f) = (
        ring.tautological_index().expect("fibration ring has L"),
        ring.fiber_index().expect("fibration ring has F"),
    );
    let mut total = Rational::zero();
    for (mono, c) in class.component(n).terms() {
        let value = if mono.0[f] == 0 {
            q(2 * input.e - input.b)
        } else if mono.0[f] == 1 && u32::from(mono.0[l]) == n - 1 {
            q(2)
        } else {
            return Err(Error::Precondition(format!("unexpected top monomial {mono:?}")));
        };
        total += c * value;
    }
    if !total.is_integer() {
        return Err(Error::Precondition(format!("non-integral top degree {total}")));
    }
    Ok(total.to_integer())
}

/// `c_n(J_1(L))` by the divisor recursion; independent of [`abc`].
pub fn cn_recursion(input: &HqfInput) -> Result<BigInt> {
    let trace = recursion_classes(input)?;
    evaluate_top(&trace.top, input)
}

/// Coefficient of `L^n` in the unevaluated top class.
pub fn fiber_free_top_coefficient(trace: &RecursionTrace) -> Rational {
    let n = trace.ring.top_dim();
    let l = trace.ring.tautological_index().expect("fibration ring has L");
    let mut mono = Monomial::one(trace.ring.width());
    mono.0[l] = n as u8;
    trace.top.coefficient(&mono)
}

/// `2e - 5b`, the number of singular fibres of a fourfold hyperquadric fibration.
pub fn singular_fiber_count(e: i64, b: i64) -> Result<i64> {
    let v = 2 * e - 5 * b;
    if v < 0 {
        return Err(Error::HqfInvariant(format!("2e - 5b >= 0 (got {v})")));
    }
    Ok(v)
}

/// Result of the exhaustive search for `(2e - b) + 3(2e - 5b) = 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub e_max: i64,
    pub b_max: i64,
    pub witnesses: Vec<(i64, i64)>,
    /// Number of `(e, b)` pairs covered by the scan.
    pub pairs_covered: u128,
    /// One line per branch `2e - 5b = k` of the case analysis.
    pub explanation: Vec<String>,
}

/// Scans `|e| <= e_max`, `|b| <= b_max` for solutions of the genus-zero vanishing
/// condition with `2e - b > 0`, `2e - 5b >= 0`.
///
/// The equation is `8e - 16b = 4`, so `e` is determined by `b`; one pass
/// over `b` covers every pair.
pub fn defect_obstruction_search(e_max: i64, b_max: i64) -> Result<ObstructionReport> {
    if e_max < 1 || b_max < 1 {
        return Err(Error::Precondition("search bounds must be positive".into()));
    }
    let mut witnesses = Vec::new();
    for b in -b_max..=b_max {
        let numerator = 4 + 16 * b;
        if numerator % 8 != 0 {
            continue;
        }
        let e = numerator / 8;
        if e.abs() > e_max {
            continue;
        }
        if 2 * e - b > 0 && 2 * e - 5 * b >= 0 && regrouped_fourfold(e, b, 0) == 0 {
            witnesses.push((e, b));
        }
    }
    Ok(ObstructionReport {
        e_max,
        b_max,
        witnesses,
        pairs_covered: (2 * e_max as u128 + 1) * (2 * b_max as u128 + 1),
        explanation: obstruction_branches(),
    })
}

/// Case analysis on `y = 2e - 5b`: `x = 2e - b = 4 - 3y > 0` leaves `y ∈ {0, 1}`,
/// and in each branch `b = (x - y) / 4`, `2e = x + b`.
fn obstruction_branches() -> Vec<String> {
    let mut out = Vec::new();
    let mut y = 0;
    while 4 - 3 * y > 0 {
        let x = 4 - 3 * y;
        let line = if (x - y) % 4 != 0 {
            format!("2e - 5b = {y}, 2e - b = {x}: b = {}/4 is not an integer", x - y)
        } else {
            let b = (x - y) / 4;
            let two_e = x + b;
            if two_e % 2 == 0 {
                format!("2e - 5b = {y}, 2e - b = {x}: b = {b}, e = {} (integral)", two_e / 2)
            } else {
                format!("2e - 5b = {y}, 2e - b = {x}: b = {b}, 2e = {two_e} is odd, no integer e")
            }
        };
        out.push(line);
        y += 1;
    }
    out
}
