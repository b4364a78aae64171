//! Executes a resolved [`RunConfig`] and collects report records.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use jetchern::anchor;
use jetchern::chowring::{integrate_top, make_scroll_ring, pushforward, BaseAssignment, Rational};
use jetchern::classify::{
    classify_by_defect, codegree_report, conormal_invariants, defect_consistency, scroll_defect, BasePreset,
    Classification, CodegreeStatus, Outcome,
};
use jetchern::hqf::{self, HqfInput};
use jetchern::jet::{
    alternating_binomial_sums, below_diagonal_report, check_printed_coefficients, cn_closed_in, coeff_table,
    curve_jet_degree, equal_rank_bundle, evaluate_projective_preset, fukuma_rhs, has_nonnegative_coefficients,
    oracle_compare, oracle_sweep, plucker_codegree, special_case_cn, CoefficientMismatch, OracleCheck,
};

use crate::config::{Command, Preset, RunConfig, SweepBounds};
use crate::report::{int_value, CommandEcho, Record, Report, PLUMBING};

#[derive(Debug, Error)]
pub enum RunError {
    /// Parameters rejected by the engine's preconditions.
    #[error("invalid input: {0}")]
    Input(#[from] jetchern::Error),
}

type Records = Result<Vec<Record>, RunError>;

pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let records = match config.command {
        Command::VerifyIdentities(bounds) => verify_identities(bounds)?,
        Command::Scroll { m, r, preset } => scroll(m, r, preset)?,
        Command::Hqf { n, g, e, b } => hqf_scenario(n, g, e, b)?,
        Command::Classify { n, defect, picard_rank_one } => {
            vec![classification_record("classify/outcome", &classify_by_defect(n, defect, picard_rank_one)?)]
        }
        Command::Conormal { ambient, m } => conormal(ambient, m)?,
        Command::Plucker { degree } => plucker(degree)?,
        Command::OracleCompare { n_max, pair } => match pair {
            Some((m, r)) => {
                let (m, r) = scroll_pair(m, r)?;
                vec![oracle_record(&oracle_compare(m, r)?)]
            }
            None => oracle_sweep(n_max)?.iter().map(oracle_record).collect(),
        },
    };
    let echo = CommandEcho {
        name: config.command.kind().name().to_string(),
        parameters: config.command.parameters(),
        strict: config.strict,
    };
    Ok(Report::assemble(echo, records))
}

fn scroll_pair(m: i64, r: i64) -> Result<(u32, u32), RunError> {
    make_scroll_ring(m, r)?;
    let narrow = |v: i64| u32::try_from(v).map_err(|_| jetchern::Error::Precondition(format!("{v} is too large")));
    Ok((narrow(m)?, narrow(r)?))
}

fn rational_value(q: &Rational) -> Value {
    if q.is_integer() {
        int_value(&q.to_integer())
    } else {
        Value::from(q.to_string())
    }
}

fn strings<S: ToString>(items: impl IntoIterator<Item = S>) -> Value {
    Value::Array(items.into_iter().map(|s| Value::from(s.to_string())).collect())
}

fn classification_record(name: &str, c: &Classification) -> Record {
    let citation = if c.citations.is_empty() {
        PLUMBING.to_string()
    } else {
        c.citations.join("; ")
    };
    let mut rec = Record::info(name, citation)
        .with("outcome", c.outcome.to_string())
        .with("citations", strings(&c.citations))
        .with("notes", strings(&c.notes));
    if let Some(pair) = &c.identified_pair {
        rec = rec.with("identified_pair", pair.to_string());
    }
    rec
}

fn oracle_record(c: &OracleCheck) -> Record {
    let rec = Record::check(format!("oracle/m{:02}-r{:02}", c.m, c.r), anchor::EXPANSION, c.agrees())
        .with("m", c.m)
        .with("r", c.r)
        .with("terms", c.closed.len());
    if c.agrees() {
        rec
    } else {
        rec.with("closed", c.closed.to_string()).with("expansion", c.expansion.to_string())
    }
}

fn mismatch_values(mismatches: &[CoefficientMismatch]) -> Value {
    strings(mismatches.iter().map(|x| {
        format!("(m={}, r={}, s1={}, s2={}): expected {}, found {}", x.m, x.r, x.s1, x.s2, x.expected, x.found)
    }))
}

fn coefficient_record(name: &str, citation: &str, cases: impl Iterator<Item = (i64, i64)>) -> Record {
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    for (m, r) in cases {
        checked += 1;
        mismatches.extend(check_printed_coefficients(m, r));
    }
    let rec = Record::check(name, citation, mismatches.is_empty()).with("pairs", checked);
    if mismatches.is_empty() {
        rec
    } else {
        rec.with("mismatches", mismatch_values(&mismatches))
    }
}

fn verify_identities(b: SweepBounds) -> Records {
    let mut recs = Vec::new();
    let sweep = oracle_sweep(b.n_max)?;
    recs.extend(sweep.iter().map(oracle_record));

    for c in sweep.iter().filter(|c| c.r >= c.m) {
        let ok = special_case_cn(c.m, c.r)? == c.closed;
        recs.push(
            Record::check(format!("special-case/m{:02}-r{:02}", c.m, c.r), anchor::SPECIAL_CASES, ok)
                .with("m", c.m)
                .with("r", c.r),
        );
    }

    let m_max = i64::from(b.m_max);
    let n_max = i64::from(b.n_max);
    recs.push(coefficient_record(
        "identity/coefficients-rank-above-m-plus-1",
        anchor::VANISHING_COEFFICIENTS,
        (1..=m_max).flat_map(|m| (m + 2..=m + 4).map(move |r| (m, r))),
    ));
    recs.push(coefficient_record(
        "identity/coefficients-rank-m-plus-1",
        anchor::NEXT_TO_DIAGONAL,
        (1..=n_max).map(|m| (m, m + 1)),
    ));
    recs.push(coefficient_record(
        "identity/coefficients-rank-m",
        anchor::DIAGONAL,
        (2..=n_max).map(|m| (m, m)),
    ));
    let bad_sums: Vec<i64> = (2..=30)
        .filter(|&m| {
            let (a, s) = alternating_binomial_sums(m);
            !(a.is_zero() && s.is_zero())
        })
        .collect();
    recs.push(
        Record::check("identity/alternating-sums", anchor::ALTERNATING_SUMS, bad_sums.is_empty())
            .with("m_range", "2..=30")
            .with("failing_m", bad_sums),
    );

    for m in 2..=b.m_max {
        let (ring, c_e) = equal_rank_bundle(m)?;
        let lhs = pushforward(&cn_closed_in(&ring)?)?;
        let rhs = fukuma_rhs(m, &c_e)?;
        let rec = Record::check(format!("relation/equal-rank-m{m:02}"), anchor::EQUAL_RANK_RELATION, lhs == rhs)
            .with("m", m);
        recs.push(if lhs == rhs {
            rec
        } else {
            rec.with("closed", lhs.to_string()).with("relation", rhs.to_string())
        });
    }
    for m in 1..=b.m_max {
        let p = evaluate_projective_preset(m)?;
        let ok = p.v.is_zero()
            && p.top_chern_e.is_one()
            && p.relation_rhs.is_zero()
            && p.cn_closed.as_ref().is_none_or(|c| c.is_zero());
        let mut rec = Record::check(format!("preset/projective-m{m:02}"), anchor::EQUAL_RANK_EXCEPTION, ok)
            .with("m", m)
            .with("v", rational_value(&p.v))
            .with("c_m", rational_value(&p.top_chern_e))
            .with("relation", rational_value(&p.relation_rhs));
        rec = match &p.cn_closed {
            Some(c) => rec.with("c_n", rational_value(c)),
            None => rec.with("c_n", "rank one is not a scroll; relation value used"),
        };
        recs.push(rec);
    }
    for m in (3..).take_while(|m| 2 * m - 2 <= b.n_max) {
        let rep = below_diagonal_report(m)?;
        recs.push(
            Record::info(format!("info/rank-m-minus-1-m{m:02}"), anchor::BELOW_DIAGONAL)
                .with("m", m)
                .with("nonzero_coefficients", rep.nonzero_coefficients.len())
                .with("effective_coefficients", rep.effective_coefficients)
                .with("nonnegative_class", has_nonnegative_coefficients(&rep.base_class))
                .with("class", rep.base_class.to_string()),
        );
    }

    recs.extend(hqf_suite(&b)?);
    recs.extend(classification_suite(b.m_max)?);

    let bad_plucker: Vec<i64> = (2..=20)
        .filter(|&d| {
            let p = plucker_codegree(d).expect("d >= 2");
            let d = i128::from(d);
            p.total != curve_jet_degree((d - 1) * (d - 2) / 2, d * (d - 1))
                || p.total != p.dual_curve_part + p.flex_part
        })
        .collect();
    recs.push(
        Record::check("plucker/consistency", anchor::PLUCKER, bad_plucker.is_empty())
            .with("degree_range", "2..=20")
            .with("failing_degrees", bad_plucker),
    );
    Ok(recs)
}

fn hqf_suite(b: &SweepBounds) -> Records {
    let mut recs = Vec::new();
    let t = hqf::abc(4)?;
    let ok = (t.a.clone(), t.b.clone(), t.c.clone()) == (BigInt::from(4), BigInt::from(16), BigInt::from(-1));
    recs.push(
        Record::check("hqf/abc-fourfold", anchor::HQF_CLOSED_FORM, ok)
            .with_int("A", &t.a)
            .with_int("B", &t.b)
            .with_int("C", &t.c),
    );
    for n in 3..=b.n_max.max(3) {
        let inputs: Vec<HqfInput> = (0..=b.hqf_g_max)
            .flat_map(|g| {
                (-b.hqf_bound..=b.hqf_bound)
                    .flat_map(move |e| (-b.hqf_bound..=b.hqf_bound).map(move |bb| HqfInput::new(n, g, e, bb)))
            })
            .filter(|i| i.validate().is_ok())
            .collect();
        let mut bad: Vec<String> = inputs
            .par_iter()
            .filter_map(|i| {
                let closed = hqf::cn_closed(i);
                let rec = hqf::cn_recursion(i);
                match (&closed, &rec) {
                    (Ok(c), Ok(r)) if c == r => None,
                    _ => Some(format!("(n={}, g={}, e={}, b={}): closed {closed:?}, recursion {rec:?}", i.n, i.g, i.e, i.b)),
                }
            })
            .collect();
        bad.sort();
        let rec = Record::check(format!("hqf/recursion-n{n:02}"), anchor::HQF_RECURSION, bad.is_empty())
            .with("n", n)
            .with("inputs", inputs.len());
        recs.push(if bad.is_empty() {
            rec
        } else {
            rec.with("offending", strings(bad.iter().take(20)))
        });
    }
    let closed = hqf::closed_form_polynomial(4)?;
    let regrouped = hqf::regrouped_fourfold_polynomial();
    recs.push(
        Record::check("hqf/fourfold-rewrite", anchor::HQF_FOURFOLD, closed == regrouped)
            .with_int("e", &closed.e)
            .with_int("b", &closed.b)
            .with_int("g", &closed.g)
            .with_int("constant", &closed.constant),
    );
    let search = hqf::defect_obstruction_search(b.search_bound, b.search_bound)?;
    recs.push(
        Record::check("obstruction/defect-n-minus-3", anchor::DEFECT_N_MINUS_3, search.witnesses.is_empty())
            .with("bound", b.search_bound)
            .with("pairs_covered", search.pairs_covered.to_string())
            .with("witnesses", strings(search.witnesses.iter().map(|(e, bb)| format!("(e={e}, b={bb})"))))
            .with("explanation", strings(&search.explanation)),
    );
    Ok(recs)
}

fn classification_suite(m_max: u32) -> Records {
    let mut recs = Vec::new();
    let g14 = Outcome::OneOf(vec![Outcome::GrassmannianG14, Outcome::HyperplaneSectionOfG14]);
    let table = [
        (0, Outcome::ProjectiveSpace, anchor::MAXIMAL_DEFECT, false),
        (1, Outcome::Impossible, anchor::DEFECT_N_MINUS_1, false),
        (2, Outcome::ScrollOverCurve, anchor::SCROLL_OVER_CURVE, false),
        (3, Outcome::Impossible, anchor::DEFECT_N_MINUS_3, false),
        (4, g14, anchor::PICARD_ONE_GRASSMANNIAN, true),
    ];
    let mut wrong = Vec::new();
    for n in 5..=12 {
        for (drop, want, cite, pic) in &table {
            let c = classify_by_defect(n, n - drop, *pic)?;
            if &c.outcome != want || !c.citations.contains(cite) {
                wrong.push(format!("(n={n}, k={}): {}", n - drop, c.outcome));
            }
        }
    }
    recs.push(
        Record::check("classify/summary-table", PLUMBING, wrong.is_empty())
            .with("n_range", "5..=12")
            .with("mismatches", strings(wrong)),
    );
    let mut wrong = Vec::new();
    for m in 1..=20i64 {
        for r in 2..=20i64 {
            let gap = r - 1 - m;
            if gap >= 0 && scroll_defect(m, r, None)?.outcome != Outcome::ExactDefect(gap as u32) {
                wrong.push(format!("(m={m}, r={r})"));
            }
        }
    }
    recs.push(
        Record::check("classify/scroll-defect", anchor::SCROLL_DEFECT, wrong.is_empty())
            .with("range", "m, r <= 20")
            .with("mismatches", strings(wrong)),
    );
    for m in 2..=i64::from(m_max.min(4)) {
        for preset in [None, Some(BasePreset::ProjectiveSpaceHyperplaneSum)] {
            let Some(c) = defect_consistency(m, m, preset)? else { continue };
            let label = if preset.is_some() { "preset" } else { "generic" };
            recs.push(
                Record::check(format!("classify/consistency-{label}-m{m:02}"), anchor::CODEGREE_DICTIONARY, c.consistent)
                    .with("m", m)
                    .with("outcome", c.outcome.to_string())
                    .with("c_n", rational_value(&c.cn_value))
                    .with("assignment", format!("{:?}", c.assignment)),
            );
        }
    }
    Ok(recs)
}

fn codegree_values(rec: Record, cn: &BigInt) -> Record {
    let report = codegree_report(cn);
    let status = match &report.status {
        CodegreeStatus::DefectAtLeastOne => "defect-at-least-one",
        CodegreeStatus::Codegree(_) => "codegree",
        CodegreeStatus::Inconsistent(_) => "inconsistent",
    };
    rec.with("codegree_status", status).with("codegree_note", report.note)
}

fn scroll(m: i64, r: i64, preset: Option<Preset>) -> Records {
    let base_preset = preset.map(|Preset::Projective| BasePreset::ProjectiveSpaceHyperplaneSum);
    let classification = scroll_defect(m, r, base_preset)?;
    let (mu, ru) = scroll_pair(m, r)?;
    let ring = make_scroll_ring(m, r)?;
    let mut recs = Vec::new();

    let check = oracle_compare(mu, ru)?;
    let table = coeff_table(mu, ru)?;
    let coefficients: BTreeMap<String, Value> = table
        .nonzero()
        .map(|((s1, s2), a)| (format!("{s1},{s2}"), int_value(a)))
        .collect();
    recs.push(
        Record::info("scroll/closed-form", anchor::CLOSED_FORM)
            .with("n", ring.top_dim())
            .with("class", check.closed.to_string())
            .with("pushforward", pushforward(&check.closed)?.to_string())
            .with("coefficients", Value::Object(coefficients.into_iter().collect())),
    );
    recs.push(oracle_record(&check));
    recs.push(match special_case_cn(mu, ru) {
        Ok(printed) => Record::check("scroll/special-case", anchor::SPECIAL_CASES, printed == check.closed),
        Err(e) => Record::info("scroll/special-case", anchor::BELOW_DIAGONAL).with("note", e.to_string()),
    });
    if ru + 1 == mu {
        let rep = below_diagonal_report(mu)?;
        recs.push(
            Record::info("scroll/rank-m-minus-1", anchor::BELOW_DIAGONAL)
                .with("nonzero_coefficients", rep.nonzero_coefficients.len())
                .with("effective_coefficients", rep.effective_coefficients)
                .with("nonnegative_class", has_nonnegative_coefficients(&rep.base_class)),
        );
    }
    recs.push(classification_record("scroll/defect", &classification));
    if base_preset.is_some() {
        let values = BaseAssignment::projective_space_with_hyperplane_sum(&ring);
        let cn = integrate_top(&check.closed, &values)?;
        let rec = Record::info("scroll/preset-degree", anchor::CODEGREE_DICTIONARY).with("c_n", rational_value(&cn));
        recs.push(if cn.is_integer() {
            codegree_values(rec, &cn.to_integer())
        } else {
            rec
        });
    }
    if let Some(c) = defect_consistency(m, r, base_preset)? {
        recs.push(
            Record::check("scroll/defect-consistency", anchor::CODEGREE_DICTIONARY, c.consistent)
                .with("c_n", rational_value(&c.cn_value))
                .with("assignment", format!("{:?}", c.assignment)),
        );
    }
    Ok(recs)
}

fn hqf_scenario(n: i64, g: i64, e: i64, b: i64) -> Records {
    let n = u32::try_from(n).map_err(|_| jetchern::Error::HqfInvariant(format!("n >= 3 (got n = {n})")))?;
    let input = HqfInput::new(n, g, e, b);
    let warnings = input.validate()?;
    let t = hqf::abc(n)?;
    let closed = hqf::cn_closed(&input)?;
    let recursion = hqf::cn_recursion(&input)?;
    let mut recs = vec![
        Record::info("hqf/abc", anchor::HQF_CLOSED_FORM)
            .with_int("A", &t.a)
            .with_int("B", &t.b)
            .with_int("C", &t.c),
        codegree_values(
            Record::info("hqf/closed-form", anchor::HQF_CLOSED_FORM).with_int("c_n", &closed),
            &closed,
        ),
        Record::check("hqf/recursion", anchor::HQF_RECURSION, recursion == closed)
            .with_int("closed", &closed)
            .with_int("recursion", &recursion),
    ];
    if n == 4 {
        recs.push(
            Record::info("hqf/singular-fibers", anchor::HQF_SINGULAR_FIBERS)
                .with("count", hqf::singular_fiber_count(e, b)?),
        );
        recs.push(
            Record::check(
                "hqf/fourfold-rewrite",
                anchor::HQF_FOURFOLD,
                BigInt::from(hqf::regrouped_fourfold(e, b, g)) == closed,
            )
            .with("regrouped", hqf::regrouped_fourfold(e, b, g)),
        );
    }
    for (i, w) in warnings.iter().enumerate() {
        recs.push(Record::warning(format!("hqf/warning-{i}"), anchor::HQF_SINGULAR_FIBERS, w.to_string()));
    }
    Ok(recs)
}

fn conormal(ambient: i64, m: i64) -> Records {
    let c = conormal_invariants(ambient, m)?;
    Ok(vec![Record::info("conormal/invariants", c.citations.join("; "))
        .with("N", c.ambient)
        .with("m", c.m)
        .with("n", c.n)
        .with("def0", c.def0)
        .with("defect", c.defect.map_or(Value::Null, Value::from))
        .with("tangent_developable", c.tangent_developable)
        .with("strict_inclusion", c.strict_inclusion)
        .with("notes", strings(&c.notes))])
}

fn plucker(degree: i64) -> Records {
    let p = plucker_codegree(degree)?;
    let d = i128::from(degree);
    let curve = curve_jet_degree((d - 1) * (d - 2) / 2, d * (d - 1));
    let big = |v: i128| int_value(&BigInt::from(v));
    Ok(vec![
        codegree_values(
            Record::info("plucker/codegree", anchor::PLUCKER)
                .with("total", big(p.total))
                .with("dual_curve_part", big(p.dual_curve_part))
                .with("flex_part", big(p.flex_part)),
            &BigInt::from(p.total),
        ),
        Record::check("plucker/consistency", anchor::PLUCKER, curve == p.total).with("curve_formula", big(curve)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Format, SweepBounds};
    use crate::report::Status;

    fn config(command: Command) -> RunConfig {
        RunConfig {
            command,
            strict: false,
            output: None,
            format: Format::Json,
        }
    }

    fn record<'a>(report: &'a Report, name: &str) -> &'a Record {
        report.records.iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn plucker_cubic() {
        let rep = run(&config(Command::Plucker { degree: 3 })).unwrap();
        let r = record(&rep, "plucker/codegree");
        assert_eq!(r.values["total"], 12);
        assert_eq!(r.values["dual_curve_part"], 3);
        assert_eq!(r.values["flex_part"], 9);
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn classify_grassmannian() {
        let rep = run(&config(Command::Classify { n: 6, defect: 2, picard_rank_one: true })).unwrap();
        let r = record(&rep, "classify/outcome");
        assert_eq!(r.citation, anchor::PICARD_ONE_GRASSMANNIAN);
        assert!(r.values["outcome"].as_str().unwrap().contains("GrassmannianG14"));
    }

    #[test]
    fn scroll_with_preset() {
        let rep = run(&config(Command::Scroll { m: 3, r: 3, preset: Some(Preset::Projective) })).unwrap();
        assert_eq!(record(&rep, "scroll/defect").values["outcome"], "PositiveAtLeastOne");
        assert_eq!(record(&rep, "scroll/preset-degree").values["c_n"], 0);
        assert_eq!(record(&rep, "scroll/defect-consistency").status, Status::Pass);
        assert_eq!(rep.summary.fail, 0);
    }

    #[test]
    fn hqf_warning_escalates_under_strict() {
        let mut cfg = config(Command::Hqf { n: 5, g: 0, e: 2, b: 1 });
        assert_eq!(run(&cfg).unwrap().exit_code(), 0);
        cfg.strict = true;
        assert_eq!(run(&cfg).unwrap().exit_code(), 1);
    }

    #[test]
    fn hqf_invariant_violation_is_an_input_error() {
        assert!(run(&config(Command::Hqf { n: 4, g: 0, e: 2, b: 1 })).is_err());
    }

    #[test]
    fn small_verification_suite_passes() {
        let bounds = SweepBounds {
            n_max: 5,
            m_max: 3,
            hqf_bound: 3,
            hqf_g_max: 1,
            search_bound: 100,
        };
        let rep = run(&config(Command::VerifyIdentities(bounds))).unwrap();
        let failed: Vec<_> = rep.failures().map(|r| r.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(rep.summary.pass > 20);
        let names: Vec<_> = rep.records.iter().map(|r| r.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
