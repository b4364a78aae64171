//! Defect values and classification rules as decision procedures.
//!
//! Hypotheses such as ampleness, spannedness or Picard rank are never
//! checked: callers assert them. Every decided outcome carries at least one
//! citation anchor naming the rule it came from.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::anchor;
use crate::chowring::{integrate_top, make_scroll_ring, BaseAssignment, Rational};
use crate::error::{Error, Result};
use crate::jet::cn_closed_in;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// `(P^n, O(1))`
    ProjectiveSpace,
    Impossible,
    ScrollOverCurve,
    /// `G(1,4) ⊂ P^9` with the Plücker polarization.
    GrassmannianG14,
    /// A smooth hyperplane section of `G(1,4) ⊂ P^9`.
    HyperplaneSectionOfG14,
    /// `(P^m × P^{m-1}, O(1,1))`
    ExceptionalSegrePair,
    /// Defect exactly zero.
    Zero,
    /// Defect at least one, exact value not determined.
    PositiveAtLeastOne,
    /// Defect equal to the given value.
    ExactDefect(u32),
    Undetermined,
    /// One of several pairs, not distinguished further.
    OneOf(Vec<Outcome>),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::ProjectiveSpace => f.write_str("ProjectiveSpace"),
            Outcome::Impossible => f.write_str("Impossible"),
            Outcome::ScrollOverCurve => f.write_str("ScrollOverCurve"),
            Outcome::GrassmannianG14 => f.write_str("GrassmannianG14"),
            Outcome::HyperplaneSectionOfG14 => f.write_str("HyperplaneSectionOfG14"),
            Outcome::ExceptionalSegrePair => f.write_str("ExceptionalSegrePair"),
            Outcome::Zero => f.write_str("Zero"),
            Outcome::PositiveAtLeastOne => f.write_str("PositiveAtLeastOne"),
            Outcome::ExactDefect(k) => write!(f, "ExactDefect({k})"),
            Outcome::Undetermined => f.write_str("Undetermined"),
            Outcome::OneOf(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "OneOf({})", parts.join(" | "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub outcome: Outcome,
    /// The pair `(X, L)` when the rule names it, separately from the defect value.
    pub identified_pair: Option<Outcome>,
    pub citations: Vec<&'static str>,
    pub notes: Vec<String>,
}

impl Classification {
    fn new(outcome: Outcome, citations: Vec<&'static str>) -> Self {
        Self {
            outcome,
            identified_pair: None,
            citations,
            notes: Vec::new(),
        }
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }
}

/// Named base data for a scroll.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasePreset {
    /// `Y = P^m`, `E = O(1)^{⊕m}`.
    ProjectiveSpaceHyperplaneSum,
}

/// Defect of the scroll `P_Y(E)` with `dim Y = m`, `rk E = r`.
pub fn scroll_defect(m: i64, r: i64, preset: Option<BasePreset>) -> Result<Classification> {
    if m < 1 {
        return Err(Error::BaseDimension { m });
    }
    if r <= 1 {
        return Err(Error::NotAScroll { r });
    }
    if preset.is_some() && r != m {
        return Err(Error::Precondition(format!(
            "the preset O(1)^m on P^m has rank {m}, not {r}"
        )));
    }
    let n = m + r - 1;
    let gap = n - 2 * m;
    let c = if gap >= 0 {
        Classification::new(
            Outcome::ExactDefect(gap as u32),
            vec![anchor::SCROLL_DEFECT, anchor::DISCRIMINANT_IRREDUCIBLE],
        )
        .note("discriminant irreducible, D(X,V) = p1(I)")
    } else if gap == -1 {
        let mut citations = vec![anchor::EQUAL_RANK_EXCEPTION];
        if m < 3 {
            citations.push(anchor::EQUAL_RANK_LOW_DIMENSION);
        }
        match preset {
            Some(BasePreset::ProjectiveSpaceHyperplaneSum) => {
                citations.push(anchor::CODEGREE_DICTIONARY);
                let mut c = Classification::new(Outcome::PositiveAtLeastOne, citations)
                    .note(format!(
                        "(X, L) = (P^{m} x P^{}, O(1,1)); c_n(J_1(L)) = 0",
                        m - 1
                    ))
                    .note("exact defect not determined, reported as >= 1");
                c.identified_pair = Some(Outcome::ExceptionalSegrePair);
                c
            }
            None => Classification::new(Outcome::Zero, citations)
                .note(format!("def = 0 unless (Y, E) = (P^{m}, O(1)^{m})")),
        }
    } else {
        Classification::new(Outcome::Undetermined, Vec::new())
            .note(format!("def >= n - 2m = {gap} holds trivially; no equality available"))
    };
    Ok(c)
}

/// Classification of `(X, L)`, `L` ample and spanned, from `n = dim X` and
/// `k = def(X, L)`.
pub fn classify_by_defect(n: i64, k: i64, picard_rank_one: bool) -> Result<Classification> {
    if n < 1 {
        return Err(Error::Precondition(format!("n >= 1 required, got {n}")));
    }
    if k < 0 || k > n {
        return Err(Error::Precondition(format!("defect must lie in 0..={n}, got {k}")));
    }
    let c = if k == n {
        Classification::new(Outcome::ProjectiveSpace, vec![anchor::MAXIMAL_DEFECT])
            .note(format!("(X, L) = (P^{n}, O(1))"))
    } else if k == 0 {
        Classification::new(Outcome::Undetermined, Vec::new())
            .note("only positive defect is classified")
    } else if k == n - 1 {
        Classification::new(Outcome::Impossible, vec![anchor::DEFECT_N_MINUS_1])
    } else if k == n - 2 && n >= 3 {
        Classification::new(Outcome::ScrollOverCurve, vec![anchor::SCROLL_OVER_CURVE])
            .note("X = P_C(E) over a smooth curve C, L tautological")
    } else if k == n - 3 && n >= 4 {
        Classification::new(Outcome::Impossible, vec![anchor::DEFECT_N_MINUS_3])
    } else if k == n - 4 && picard_rank_one {
        Classification::new(
            Outcome::OneOf(vec![Outcome::GrassmannianG14, Outcome::HyperplaneSectionOfG14]),
            vec![anchor::PICARD_ONE_GRASSMANNIAN],
        )
        .note("G(1,4) in P^9 with the Plücker embedding, or a smooth hyperplane section of it")
    } else if k == n - 4 {
        Classification::new(Outcome::Undetermined, Vec::new())
            .note("without Picard rank one the case def = n - 4 is open")
    } else {
        Classification::new(Outcome::Undetermined, Vec::new())
    };
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankValidation {
    pub accepted: bool,
    pub reason: Option<String>,
    pub citation: &'static str,
}

/// Whether an ample and spanned `E` of rank `r` on an `m`-fold can have `c_m(E) = 1`.
pub fn rank_from_top_chern_one(m: i64, r: i64) -> RankValidation {
    let reason = if m < 1 || r < 1 {
        Some(format!("m and r must be positive (m = {m}, r = {r})"))
    } else if r < m {
        Some("c_m(E)=0".to_string())
    } else if r > m {
        Some("codegree 1 impossible".to_string())
    } else {
        None
    };
    RankValidation {
        accepted: reason.is_none(),
        reason,
        citation: anchor::RANK_FROM_TOP_CHERN,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConormalReport {
    pub ambient: i64,
    pub m: i64,
    pub n: i64,
    pub def0: i64,
    pub defect: Option<i64>,
    pub tangent_developable: bool,
    /// `D_0(X,V) ⊊ D(X,V)`
    pub strict_inclusion: bool,
    pub citations: Vec<&'static str>,
    pub notes: Vec<String>,
}

/// Invariants of the conormal variety of `Y^m ⊂ P^N`.
pub fn conormal_invariants(ambient: i64, m: i64) -> Result<ConormalReport> {
    if m < 1 {
        return Err(Error::BaseDimension { m });
    }
    if ambient <= m {
        return Err(Error::Precondition(format!(
            "degenerate embedding: N = {ambient} must exceed m = {m}"
        )));
    }
    let n = ambient - 1;
    let mut citations = vec![anchor::CONORMAL_DEF0];
    let mut notes = Vec::new();
    let defect = (n >= 2 * m).then(|| {
        citations.push(anchor::SCROLL_DEFECT);
        n - 2 * m
    });
    let wide = ambient >= 2 * m + 1;
    if wide {
        citations.push(anchor::CONORMAL_TANGENT_DEVELOPABLE);
        notes.push("discriminant locus identified with the tangent developable TY".to_string());
        notes.push("strict inclusion D_0(X,V) < D(X,V)".to_string());
    }
    Ok(ConormalReport {
        ambient,
        m,
        n,
        def0: n - m,
        defect,
        tangent_developable: wide,
        strict_inclusion: wide,
        citations,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodegreeStatus {
    DefectAtLeastOne,
    /// Not defective; the codegree equals this value when it is tame.
    Codegree(BigInt),
    /// A negative top Chern class cannot occur for ample and spanned `L`.
    Inconsistent(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodegreeReport {
    pub status: CodegreeStatus,
    pub note: String,
    pub citation: &'static str,
}

pub fn codegree_report(cn: &BigInt) -> CodegreeReport {
    let (status, note) = if cn.is_zero() {
        (CodegreeStatus::DefectAtLeastOne, "defect ≥ 1".to_string())
    } else if cn.is_positive() {
        (
            CodegreeStatus::Codegree(cn.clone()),
            format!("not defective; under tame codegree, codeg = {cn}"),
        )
    } else {
        (
            CodegreeStatus::Inconsistent(cn.clone()),
            format!("c_n = {cn} < 0 is inconsistent with c_n(J_1(L)) >= 0"),
        )
    };
    CodegreeReport {
        status,
        note,
        citation: anchor::CODEGREE_DICTIONARY,
    }
}

/// Which assignment of base generators was used for a consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessAssignment {
    /// `(P^m, O(1)^m)`; exact for that pair.
    Preset,
    /// Degree `d` generators set to `d + 1`; a heuristic witness only.
    GenericPositive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectConsistency {
    pub m: i64,
    pub r: i64,
    pub outcome: Outcome,
    pub assignment: WitnessAssignment,
    pub cn_value: Rational,
    pub consistent: bool,
}

/// Compares a `Zero` / `PositiveAtLeastOne` verdict with the evaluated closed form.
///
/// Returns `None` for the other outcomes.
pub fn defect_consistency(
    m: i64,
    r: i64,
    preset: Option<BasePreset>,
) -> Result<Option<DefectConsistency>> {
    let verdict = scroll_defect(m, r, preset)?;
    let (assignment, want_zero) = match verdict.outcome {
        Outcome::PositiveAtLeastOne => (WitnessAssignment::Preset, true),
        Outcome::Zero => (WitnessAssignment::GenericPositive, false),
        _ => return Ok(None),
    };
    let ring = make_scroll_ring(m, r)?;
    let values = match assignment {
        WitnessAssignment::Preset => BaseAssignment::projective_space_with_hyperplane_sum(&ring),
        WitnessAssignment::GenericPositive => BaseAssignment::generic_positive(&ring),
    };
    let cn_value = integrate_top(&cn_closed_in(&ring)?, &values)?;
    Ok(Some(DefectConsistency {
        m,
        r,
        outcome: verdict.outcome,
        assignment,
        consistent: cn_value.is_zero() == want_zero,
        cn_value,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scroll_defect_examples() {
        // n = 4 over a curve, so n - 2m = 2 = n - 2
        let c = scroll_defect(1, 4, None).unwrap();
        assert_eq!(c.outcome, Outcome::ExactDefect(2));
        assert!(c.citations.contains(&anchor::SCROLL_DEFECT));

        let c = scroll_defect(3, 3, Some(BasePreset::ProjectiveSpaceHyperplaneSum)).unwrap();
        assert_eq!(c.outcome, Outcome::PositiveAtLeastOne);
        assert_eq!(c.identified_pair, Some(Outcome::ExceptionalSegrePair));
        assert!(c.notes[0].contains("P^3 x P^2, O(1,1)"));

        let c = scroll_defect(3, 3, None).unwrap();
        assert_eq!(c.outcome, Outcome::Zero);
        assert!(!c.citations.is_empty());
    }

    #[test]
    fn scroll_defect_far_below_diagonal() {
        let c = scroll_defect(5, 2, None).unwrap();
        assert_eq!(c.outcome, Outcome::Undetermined);
        assert!(c.notes[0].contains("holds trivially"));
    }

    #[test]
    fn scroll_defect_rejections() {
        assert!(matches!(scroll_defect(2, 1, None), Err(Error::NotAScroll { r: 1 })));
        assert!(scroll_defect(0, 2, None).is_err());
        assert!(scroll_defect(3, 4, Some(BasePreset::ProjectiveSpaceHyperplaneSum)).is_err());
    }

    #[test]
    fn low_dimensional_exception_cites_extension() {
        let c = scroll_defect(2, 2, None).unwrap();
        assert!(c.citations.contains(&anchor::EQUAL_RANK_LOW_DIMENSION));
        let c = scroll_defect(4, 4, None).unwrap();
        assert!(!c.citations.contains(&anchor::EQUAL_RANK_LOW_DIMENSION));
    }

    #[test]
    fn classify_examples() {
        for pic in [true, false] {
            assert_eq!(classify_by_defect(5, 5, pic).unwrap().outcome, Outcome::ProjectiveSpace);
        }
        let c = classify_by_defect(6, 2, true).unwrap();
        assert_eq!(
            c.outcome,
            Outcome::OneOf(vec![Outcome::GrassmannianG14, Outcome::HyperplaneSectionOfG14])
        );
        assert_eq!(c.citations, vec![anchor::PICARD_ONE_GRASSMANNIAN]);
        assert_eq!(classify_by_defect(7, 4, false).unwrap().outcome, Outcome::Impossible);
        assert_eq!(classify_by_defect(6, 2, false).unwrap().outcome, Outcome::Undetermined);
    }

    #[test]
    fn classify_rejections() {
        assert!(classify_by_defect(4, 5, false).is_err());
        assert!(classify_by_defect(4, -1, false).is_err());
        assert!(classify_by_defect(0, 0, false).is_err());
    }

    #[test]
    fn decided_outcomes_carry_citations() {
        for n in 1..=12 {
            for k in 0..=n {
                for pic in [false, true] {
                    let c = classify_by_defect(n, k, pic).unwrap();
                    if c.outcome != Outcome::Undetermined {
                        assert!(!c.citations.is_empty(), "n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn rank_validation() {
        assert!(rank_from_top_chern_one(3, 3).accepted);
        let v = rank_from_top_chern_one(3, 2);
        assert!(!v.accepted);
        assert_eq!(v.reason.as_deref(), Some("c_m(E)=0"));
        let v = rank_from_top_chern_one(3, 5);
        assert_eq!(v.reason.as_deref(), Some("codegree 1 impossible"));
        assert!(!rank_from_top_chern_one(3, 4).accepted);
    }

    #[test]
    fn conormal_examples() {
        let c = conormal_invariants(5, 1).unwrap();
        assert_eq!((c.n, c.def0, c.defect), (4, 3, Some(2)));
        assert!(c.tangent_developable && c.strict_inclusion);

        let c = conormal_invariants(3, 2).unwrap();
        assert_eq!((c.n, c.def0, c.defect), (2, 0, None));
        assert!(!c.tangent_developable);

        let c = conormal_invariants(9, 4).unwrap();
        assert_eq!((c.n, c.def0, c.defect), (8, 4, Some(0)));
        assert!(c.tangent_developable);

        assert!(conormal_invariants(2, 2).is_err());
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(codegree_report(&BigInt::from(0)).status, CodegreeStatus::DefectAtLeastOne);
        assert_eq!(codegree_report(&BigInt::from(0)).note, "defect ≥ 1");
        let r = codegree_report(&BigInt::from(12));
        assert_eq!(r.status, CodegreeStatus::Codegree(BigInt::from(12)));
        assert!(r.note.contains("codeg = 12"));
        assert!(matches!(
            codegree_report(&BigInt::from(-1)).status,
            CodegreeStatus::Inconsistent(_)
        ));
    }

    #[test]
    fn zero_and_positive_verdicts_match_closed_form() {
        for m in 2..=4 {
            let preset = defect_consistency(m, m, Some(BasePreset::ProjectiveSpaceHyperplaneSum))
                .unwrap()
                .unwrap();
            assert!(preset.consistent, "{preset:?}");
            let generic = defect_consistency(m, m, None).unwrap().unwrap();
            assert_eq!(generic.assignment, WitnessAssignment::GenericPositive);
            assert!(generic.consistent, "{generic:?}");
        }
        assert!(defect_consistency(1, 3, None).unwrap().is_none());
    }
}
