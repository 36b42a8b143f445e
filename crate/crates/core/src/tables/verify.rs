//! Row-by-row verification of the fixture tables against the library.

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;

use super::{fixtures, Body, FixtureRow, FixtureStore, Instance, RowKind};
use crate::affine::{canonical_of_word, fundamental_translation_word, CanonicalAffineElement};
use crate::error::Result;
use crate::exec::Execution;
use crate::rational::{RationalVector, Q};
use crate::rootsys::{AlgebraFamily, Family, RootLabel, RootSystem};
use crate::weyl::FiniteElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Pass,
    Fail,
    OutOfRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub subject: String,
    pub bindings: String,
    pub passed: bool,
    /// The normal form, matrix or vector the check compared.
    pub compared: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub line: usize,
    pub subject: String,
    pub entry: String,
    pub status: RowStatus,
    pub instances: Vec<InstanceReport>,
}

/// Whole-system checks that span several rows of one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub passed: usize,
    pub failed: usize,
    pub out_of_range: usize,
    pub instances_checked: usize,
    pub rows: Vec<RowReport>,
    pub coverage: Vec<CoverageCheck>,
    pub parallel: bool,
    pub elapsed_micros: u64,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.failed == 0 && self.coverage.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail)
    }
}

/// The rank set every row is exercised on.
pub fn default_algebras() -> Vec<AlgebraFamily> {
    let mut out = Vec::new();
    let mut push = |f: Family, ranks: std::ops::RangeInclusive<usize>| {
        for r in ranks {
            out.push(AlgebraFamily::new(f, r).expect("default ranks are supported"));
        }
    };
    push(Family::A, 1..=6);
    push(Family::B, 3..=6);
    push(Family::C, 2..=6);
    push(Family::D, 4..=6);
    push(Family::E, 6..=8);
    push(Family::F, 4..=4);
    push(Family::G, 2..=2);
    out
}

pub fn verify_all(algebra: AlgebraFamily) -> Result<VerificationReport> {
    verify_with(algebra, Execution::default())
}

pub fn verify_with(algebra: AlgebraFamily, exec: Execution) -> Result<VerificationReport> {
    let start = Instant::now();
    let rs = RootSystem::new(algebra);
    let store = fixtures();
    let rows: Vec<&FixtureRow> = store.rows().iter().collect();
    let reports = exec.map(&rows, |row| check_row(store, &rs, row));
    let coverage = coverage_checks(store, &rs);
    let count = |s: RowStatus| reports.iter().filter(|r| r.status == s).count();
    Ok(VerificationReport {
        algebra: algebra.to_string(),
        passed: count(RowStatus::Pass),
        failed: count(RowStatus::Fail),
        out_of_range: count(RowStatus::OutOfRange),
        instances_checked: reports.iter().map(|r| r.instances.len()).sum(),
        rows: reports,
        coverage,
        parallel: exec.is_parallel(),
        elapsed_micros: start.elapsed().as_micros() as u64,
    })
}

fn check_row(store: &FixtureStore, rs: &RootSystem, row: &FixtureRow) -> RowReport {
    let instances: Vec<InstanceReport> = store
        .instances(row, rs)
        .into_iter()
        .map(|inst| check_instance(store, rs, row, &inst))
        .collect();
    let status = if instances.is_empty() {
        RowStatus::OutOfRange
    } else if instances.iter().all(|i| i.passed) {
        RowStatus::Pass
    } else {
        RowStatus::Fail
    };
    RowReport {
        table: row.table,
        line: row.line,
        subject: row.subject_text.clone(),
        entry: row.body_text.clone(),
        status,
        instances,
    }
}

fn describe_vector(v: &[Q]) -> String {
    RationalVector::new(v.to_vec()).to_string()
}

fn check_instance(store: &FixtureStore, rs: &RootSystem, row: &FixtureRow, inst: &Instance) -> InstanceReport {
    let subject = inst
        .label
        .as_ref()
        .map(|l| rs.format_label(l))
        .unwrap_or_else(|| "pairing".into());
    let (passed, compared, detail) = match run_check(store, rs, row, inst) {
        Ok(outcome) => outcome,
        Err(e) => (false, String::new(), Some(format!("{}: {e}", e.code()))),
    };
    InstanceReport {
        subject,
        bindings: inst.env.describe(),
        passed,
        compared,
        detail,
    }
}

type Outcome = (bool, String, Option<String>);

fn mismatch(ok: bool, what: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(what)
}

fn run_check(store: &FixtureStore, rs: &RootSystem, row: &FixtureRow, inst: &Instance) -> Result<Outcome> {
    let label = inst.label.as_ref();
    match row.kind {
        RowKind::Translation => {
            let Some(RootLabel::Simple(i)) = label else {
                unreachable!("translation rows name simple roots")
            };
            let expected = CanonicalAffineElement::translation(rs.simple_coroot(*i).clone());
            let tokens = store.translation_tokens(rs, row, &inst.env)?;
            let found = canonical_of_word(rs, &tokens)?;
            let constructed = canonical_of_word(rs, &fundamental_translation_word(rs, *i)?)?;
            let ok = found == expected && constructed == expected;
            Ok((
                ok,
                found.to_string(),
                mismatch(ok, || {
                    format!("expected {expected}, table gives {found}, construction gives {constructed}")
                }),
            ))
        }
        RowKind::Classical => {
            let v = rs.resolve(label.expect("classical rows have labels"))?;
            let word = store.expand_classical(rs, row, &inst.env)?;
            let found = FiniteElement::of_word(rs, &word)?;
            let ok = found == FiniteElement::reflection(&v);
            Ok((
                ok,
                word.to_string(),
                mismatch(ok, || format!("word {word} is not the reflection in {v}")),
            ))
        }
        RowKind::Pairing => {
            let Body::Indices(es) = &row.body else { unreachable!() };
            let mut want: Vec<usize> = es.iter().map(|e| e.eval(&inst.env) as usize).collect();
            want.sort_unstable();
            want.dedup();
            let got = rs.theta_pairing_simples();
            let ok = got == want;
            Ok((ok, format!("{got:?}"), mismatch(ok, || format!("table lists {want:?}"))))
        }
        RowKind::SimpleRoot | RowKind::Positive | RowKind::Theta => {
            let Body::Vector(expr) = &row.body else { unreachable!() };
            let label = label.expect("embedding rows have labels");
            let Some(coords) = expr.eval(&inst.env, rs.dim()) else {
                return Ok((
                    false,
                    String::new(),
                    Some("value has an index outside the ambient space".into()),
                ));
            };
            let value = RationalVector::new(coords);
            let compared = describe_vector(value.coords());
            let problem = match row.kind {
                RowKind::SimpleRoot => match label {
                    RootLabel::Simple(i) if (1..=rs.rank()).contains(i) => {
                        mismatch(rs.simple_root(*i) == &value, || {
                            format!("library has {}", rs.simple_root(*i))
                        })
                    }
                    _ => Some(format!("{} is not a simple root label", rs.format_label(label))),
                },
                RowKind::Positive => {
                    if !rs.is_positive_root(&value) {
                        Some(format!("{value} is not a positive root"))
                    } else {
                        match rs.label_vector(label) {
                            Some(v) if v == value => None,
                            Some(v) => Some(format!("label names {v}")),
                            None => Some(format!("no root labelled {}", rs.format_label(label))),
                        }
                    }
                }
                _ => theta_problem(rs, row, inst, &value),
            };
            Ok((problem.is_none(), compared, problem))
        }
    }
}

fn theta_problem(rs: &RootSystem, row: &FixtureRow, inst: &Instance, value: &RationalVector) -> Option<String> {
    let marks = row.marks.as_ref().expect("theta rows carry marks").eval(&inst.env);
    if rs.theta() != value {
        return Some(format!("library theta is {}", rs.theta()));
    }
    if marks.len() != rs.rank() {
        return Some(format!("{} marks for rank {}", marks.len(), rs.rank()));
    }
    if rs.theta_marks() != marks.as_slice() {
        return Some(format!("library marks are {:?}", rs.theta_marks()));
    }
    // independent re-summation of the marks on the simple roots
    let sum = rs.root_from_coords(&marks);
    mismatch(&sum == value, || format!("marks sum to {sum}"))
}

/// Tables 7-9 list whole families of roots; together the rows must give each
/// simple root once and each positive root once.
fn coverage_checks(store: &FixtureStore, rs: &RootSystem) -> Vec<CoverageCheck> {
    let mut simple = Vec::new();
    let mut positive = Vec::new();
    for row in store.rows() {
        if !matches!(row.kind, RowKind::SimpleRoot | RowKind::Positive) {
            continue;
        }
        let Body::Vector(expr) = &row.body else { continue };
        for inst in store.instances(row, rs) {
            let Some(coords) = expr.eval(&inst.env, rs.dim()) else {
                continue;
            };
            let v = RationalVector::new(coords);
            if row.kind == RowKind::SimpleRoot {
                if let Some(RootLabel::Simple(i)) = inst.label {
                    simple.push(i);
                }
            } else {
                positive.push(v);
            }
        }
    }
    if simple.is_empty() && positive.is_empty() {
        return Vec::new();
    }
    simple.sort_unstable();
    let simple_ok = simple == (1..=rs.rank()).collect::<Vec<_>>();
    let distinct: HashSet<&RationalVector> = positive.iter().collect();
    let library: HashSet<&RationalVector> = rs.positive_roots().iter().map(|(_, v)| v).collect();
    let expected_count = rs.algebra().positive_root_count();
    let positive_ok = distinct.len() == positive.len() && distinct == library && positive.len() == expected_count;
    vec![
        CoverageCheck {
            name: "simple roots listed once each".into(),
            passed: simple_ok,
            detail: format!("{simple:?}"),
        },
        CoverageCheck {
            name: "positive roots listed once each".into(),
            passed: positive_ok,
            detail: format!(
                "{} listed, {} distinct, {} in library, {} expected",
                positive.len(),
                distinct.len(),
                library.len(),
                expected_count
            ),
        },
    ]
}
