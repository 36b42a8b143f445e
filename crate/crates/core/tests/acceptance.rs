//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the summary reads top to bottom; exits non-zero on any failure.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use affine_weyl::affine::{
    affine_reflect, canonical_action, canonical_of_letters, canonical_of_word, decompose_affine, evaluate_word,
    lemma_word, translate, AffineDecomposer,
};
use affine_weyl::rational::{frac, q};
use affine_weyl::rootsys::{algebras_up_to, coroot_of};
use affine_weyl::tables::{verify_all, RowStatus, VerificationReport};
use affine_weyl::weyl::{reflect, FiniteElement};
use affine_weyl::{
    AffineRoot, AffineWeight, AlgebraFamily, CanonicalAffineElement, RationalVector, RootSystem, Token, Q,
};

const PROPERTY_CASES: u32 = 256;

static CASES_RUN: AtomicUsize = AtomicUsize::new(0);

fn tick() {
    CASES_RUN.fetch_add(1, Ordering::Relaxed);
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn algebras(names: &[&str]) -> Vec<AlgebraFamily> {
    names.iter().map(|n| n.parse().unwrap()).collect()
}

fn table_set() -> Vec<AlgebraFamily> {
    algebras(&[
        "A2", "A3", "A4", "A5", "A6", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "C6", "D4", "D5", "D6", "E6",
        "E7", "E8", "F4", "G2",
    ])
}

fn reports() -> Vec<VerificationReport> {
    table_set().into_iter().map(|a| verify_all(a).unwrap()).collect()
}

fn table_rows(reports: &[VerificationReport], tables: &[u8]) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in reports {
        for row in r.rows.iter().filter(|row| tables.contains(&row.table)) {
            checked += row.instances.len();
            if row.status == RowStatus::Fail {
                failures.push(format!("{} table {} line {}", r.algebra, row.table, row.line));
            }
        }
    }
    let ok = failures.is_empty() && checked > 0;
    outcome(
        ok,
        format!("{checked} instances, {} failing {:?}", failures.len(), failures),
    )
}

fn criterion_1() -> Outcome {
    let reports = reports();
    let mut out = table_rows(&reports, &[1, 2]);
    // each simple root of each algebra must be covered by some printed word
    for r in &reports {
        let rank = r.algebra[1..].parse::<usize>().unwrap();
        let covered: HashSet<&str> = r
            .rows
            .iter()
            .filter(|row| matches!(row.table, 1 | 2))
            .flat_map(|row| row.instances.iter().map(|i| i.subject.as_str()))
            .collect();
        if covered.len() != rank {
            out.ok = false;
            out.detail
                .push_str(&format!("; {} covers {} of {rank} nodes", r.algebra, covered.len()));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    table_rows(&reports(), &[4, 5, 6])
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for algebra in algebras_up_to(8) {
        let rs = RootSystem::new(algebra);
        for (_, alpha) in rs.positive_roots() {
            if rs.theta_pairing(alpha) != q(1) {
                continue;
            }
            checked += 1;
            let word = lemma_word(&rs, alpha).unwrap();
            let expected = CanonicalAffineElement::translation(coroot_of(alpha));
            if word.len() != 4 || canonical_of_word(&rs, &word).unwrap() != expected {
                bad.push(format!("{algebra} {alpha}"));
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{checked} roots, {} failing {bad:?}", bad.len()),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut expect = |name: String, want: Vec<usize>| {
        let rs = RootSystem::parse(&name).unwrap();
        let got = rs.theta_pairing_simples();
        if got != want {
            bad.push(format!("{name}: {got:?} != {want:?}"));
        }
    };
    for r in 2..=8 {
        expect(format!("A{r}"), vec![1, r]);
    }
    for r in 3..=8 {
        expect(format!("B{r}"), vec![2]);
    }
    for r in 2..=8 {
        expect(format!("C{r}"), vec![1]);
    }
    for r in 4..=8 {
        expect(format!("D{r}"), vec![2]);
    }
    for e in ["E6", "E7", "E8"] {
        expect(e.into(), vec![6]);
    }
    expect("F4".into(), vec![2]);
    expect("G2".into(), vec![2]);
    outcome(bad.is_empty(), format!("{bad:?}"))
}

fn criterion_5() -> Outcome {
    let rs = RootSystem::parse("A1").unwrap();
    let mut bad = Vec::new();
    for n in -5i64..=5 {
        // σ_1 (σ_0 σ_1)^n, negative n through the inverse (σ_1 σ_0)^|n|
        let mut closed = vec![Token::Simple(1)];
        let pair = if n >= 0 { [0, 1] } else { [1, 0] };
        for _ in 0..n.abs() {
            closed.extend(pair.map(Token::Simple));
        }
        let word = decompose_affine(&rs, &AffineRoot::real(&rs, rs.theta().clone(), n).unwrap()).unwrap();
        if canonical_of_letters(&rs, &word).unwrap() != canonical_of_word(&rs, &closed).unwrap() {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n in -5..=5, failing {bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut set = algebras_up_to(5);
    set.extend(algebras(&["E6"]));
    let mut checked = 0;
    let mut bad = Vec::new();
    for algebra in set {
        let rs = RootSystem::new(algebra);
        let dec = AffineDecomposer::new(&rs).unwrap();
        for (_, pos) in rs.positive_roots() {
            for alpha in [pos.clone(), -pos] {
                for n in -3..=3 {
                    checked += 1;
                    let word = dec
                        .decompose(&AffineRoot::real(&rs, alpha.clone(), n).unwrap())
                        .unwrap();
                    if canonical_of_letters(&rs, &word).unwrap() != CanonicalAffineElement::reflection(&alpha, n) {
                        bad.push(format!("{algebra} ({alpha}, 0, {n})"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} reflections, {} failing {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn systems() -> Vec<RootSystem> {
    algebras_up_to(8).into_iter().map(RootSystem::new).collect()
}

fn rational() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn weight_for(rs: &RootSystem, zero_level: bool) -> impl Strategy<Value = AffineWeight> {
    let k = if zero_level {
        Just(0i64).boxed()
    } else {
        (-3i64..=3).boxed()
    };
    (proptest::collection::vec(rational(), rs.dim()), k, rational())
        .prop_map(|(l, k, m)| AffineWeight::new(RationalVector::new(l), q(k), m))
}

fn root_at(rs: &RootSystem, i: usize, neg: bool) -> RationalVector {
    let v = rs.positive_roots()[i % rs.positive_roots().len()].1.clone();
    if neg {
        -&v
    } else {
        v
    }
}

/// A fresh runner per suite; a runner's case budget is spent by its first run.
fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn record(name: &str, failures: &mut Vec<String>, result: Result<(), String>) {
    if let Err(e) = result {
        failures.push(format!("{name}: {e}"));
    }
}

fn criterion_7() -> Outcome {
    let all = systems();
    let n_sys = all.len();
    let mut failures = Vec::new();
    let any_system = move || (0..n_sys, 0usize..1000, 0usize..1000, any::<bool>(), -3i64..=3);

    let r = runner()
        .run(&any_system(), |(s, i, _, neg, n)| {
            tick();
            let rs = &all[s];
            let w = AffineWeight::new(rs.simple_root(1).scale(frac(3, 2)), q(2), frac(-1, 3));
            let root = AffineRoot::real(rs, root_at(rs, i, neg), n).unwrap();
            let twice = affine_reflect(rs, &root, &affine_reflect(rs, &root, &w).unwrap()).unwrap();
            prop_assert_eq!(twice, w);
            Ok(())
        })
        .map_err(|e| e.to_string());
    record("involution", &mut failures, r);

    let r = runner()
        .run(&any_system(), |(s, i, j, neg, _)| {
            tick();
            let rs = &all[s];
            let (a, b) = (root_at(rs, i, neg), root_at(rs, j, false));
            let sa = FiniteElement::reflection(&a);
            let lhs = FiniteElement::reflection(&reflect(rs, &a, &b).unwrap());
            prop_assert_eq!(lhs, sa.compose(&FiniteElement::reflection(&b)).compose(&sa));
            Ok(())
        })
        .map_err(|e| e.to_string());
    record("conjugation", &mut failures, r);

    let r = runner()
        .run(
            &(
                0..n_sys,
                proptest::collection::vec(-3i64..=3, 16),
                -2i64..=2,
                rational(),
            ),
            |(s, c, p, m)| {
                tick();
                let rs = &all[s];
                let r = rs.rank();
                let (mu, nu) = (rs.coroot_from_coords(&c[..r]), rs.coroot_from_coords(&c[8..8 + r]));
                let w = AffineWeight::new(rs.simple_root(r).clone(), q(1), m);
                let a = translate(rs, &nu, p, &translate(rs, &mu, p, &w).unwrap()).unwrap();
                let b = translate(rs, &mu, p, &translate(rs, &nu, p, &w).unwrap()).unwrap();
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(a, translate(rs, &(&mu + &nu), p, &w).unwrap());
                Ok(())
            },
        )
        .map_err(|e| e.to_string());
    record("translation additivity and commutativity", &mut failures, r);

    let r = runner()
        .run(&any_system(), |(s, i, j, _, _)| {
            tick();
            let rs = &all[s];
            let (a, b) = (root_at(rs, i, false), root_at(rs, j, false));
            let sa = CanonicalAffineElement::reflection(&a, 0);
            let lhs = CanonicalAffineElement::translation(reflect(rs, &a, &coroot_of(&b)).unwrap());
            let rhs = sa
                .compose(&CanonicalAffineElement::translation(coroot_of(&b)))
                .compose(&sa);
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string());
    record("translation conjugation", &mut failures, r);

    let strat = (0..n_sys).prop_flat_map(|s| {
        let rs = RootSystem::new(algebras_up_to(8)[s]);
        (Just(s), weight_for(&rs, false), 0usize..1000, any::<bool>(), -4i64..=4)
    });
    let r = runner()
        .run(&strat, |(s, w, i, neg, n)| {
            tick();
            let rs = &all[s];
            let out = affine_reflect(rs, &AffineRoot::real(rs, root_at(rs, i, neg), n).unwrap(), &w).unwrap();
            prop_assert_eq!(out.k, w.k);
            prop_assert_eq!(out.norm2(), w.norm2());
            Ok(())
        })
        .map_err(|e| e.to_string());
    record("level and quadratic form", &mut failures, r);

    for zero_level in [false, true] {
        let strat = (0..n_sys).prop_flat_map(move |s| {
            let rs = RootSystem::new(algebras_up_to(8)[s]);
            let tok = (
                0u8..4,
                0usize..1000,
                any::<bool>(),
                -3i64..=3,
                proptest::collection::vec(-2i64..=2, rs.rank()),
            );
            (
                Just(s),
                weight_for(&rs, zero_level),
                proptest::collection::vec(tok, 0..=12),
            )
        });
        let r = runner()
            .run(&strat, |(s, w, raw)| {
                tick();
                let rs = &all[s];
                let tokens: Vec<Token> = raw
                    .into_iter()
                    .map(|(kind, i, neg, n, c)| match kind {
                        0 => Token::Simple(i % (rs.rank() + 1)),
                        1 => Token::Named(rs.lookup_label(&root_at(rs, i, neg)).unwrap()),
                        2 => Token::Reflection {
                            alpha: root_at(rs, i, neg),
                            n,
                        },
                        _ => Token::Translation { coroot: c, power: n },
                    })
                    .collect();
                let e = canonical_of_word(rs, &tokens).unwrap();
                prop_assert_eq!(
                    canonical_action(rs, &e, &w).unwrap(),
                    evaluate_word(rs, &tokens, &w).unwrap()
                );
                Ok(())
            })
            .map_err(|e| e.to_string());
        let name = if zero_level {
            "normal form vs evaluation at k = 0"
        } else {
            "normal form vs evaluation"
        };
        record(name, &mut failures, r);
    }

    let ran = CASES_RUN.load(Ordering::Relaxed);
    let enough = ran >= 7 * PROPERTY_CASES as usize;
    outcome(
        failures.is_empty() && enough,
        format!("7 suites, {ran} cases run, failing {failures:?}"),
    )
}

/// Closes the simple roots under their own reflections.
fn enumerate_roots(rs: &RootSystem) -> HashSet<RationalVector> {
    let simple = rs.simple_roots();
    let mut seen: HashSet<RationalVector> = simple.iter().cloned().collect();
    let mut frontier: Vec<RationalVector> = simple.to_vec();
    while let Some(v) = frontier.pop() {
        for a in simple {
            let c = q(2) * v.dot(a) / a.norm2();
            let image = v.add_scaled(-c, a);
            if seen.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    seen
}

fn criterion_8() -> Outcome {
    let expected = |a: &str, r: usize| -> usize {
        match a {
            "A" => r * (r + 1) / 2,
            "B" | "C" => r * r,
            "D" => r * (r - 1),
            "E6" => 36,
            "E7" => 63,
            "E8" => 120,
            "F4" => 24,
            _ => 6,
        }
    };
    let mut bad = Vec::new();
    for algebra in algebras_up_to(8) {
        let rs = RootSystem::new(algebra);
        let name = algebra.to_string();
        let key = if matches!(&name[..1], "E" | "F" | "G") {
            name.as_str()
        } else {
            &name[..1]
        };
        let all = enumerate_roots(&rs);
        let want = expected(key, algebra.rank());
        if all.len() != 2 * want || rs.positive_roots().len() != want {
            bad.push(format!(
                "{name}: {} roots enumerated, {} positive, {want} expected",
                all.len(),
                rs.positive_roots().len()
            ));
        }
        for v in &all {
            if !rs.is_root(v) {
                bad.push(format!("{name}: {v} missing"));
            }
        }
        // θ marks expand back to θ
        let sum = rs.root_from_coords(rs.theta_marks());
        if &sum != rs.theta() {
            bad.push(format!("{name}: marks sum to {sum}"));
        }
        for a in &all {
            for b in &all {
                let ab = q(2) * a.dot(b) / b.norm2();
                let ba = q(2) * a.dot(b) / a.norm2();
                let prod = ab * ba;
                if !ab.is_integer() || ab * ab > q(9) || (a != b && a != &-b && prod > q(3)) {
                    bad.push(format!("{name}: pairing of {a} and {b} is {ab}"));
                }
            }
        }
    }
    // the embedding rows of the tables list the same sets and the same marks
    for r in reports() {
        let theta_rows_ok = r
            .rows
            .iter()
            .filter(|row| (7..=9).contains(&row.table))
            .all(|row| row.status != RowStatus::Fail);
        if !theta_rows_ok || !r.coverage.iter().all(|c| c.passed) {
            bad.push(format!("{}: embedding rows disagree", r.algebra));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} problems {:?}", bad.len(), bad.iter().take(5).collect::<Vec<_>>()),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            1,
            "fundamental translation words normalize to t(alpha_i^v)",
            criterion_1,
            Duration::from_secs(10),
        ),
        (
            2,
            "classical reflection words give the reflection matrices",
            criterion_2,
            Duration::from_secs(10),
        ),
        (
            3,
            "four-letter lemma word wherever (theta^v, alpha) = 1",
            criterion_3,
            Duration::from_secs(5),
        ),
        (
            4,
            "simple roots pairing to one with theta^v",
            criterion_4,
            Duration::MAX,
        ),
        (5, "sl(2) closed form for n in -5..=5", criterion_5, Duration::MAX),
        (
            6,
            "decomposition soundness, rank <= 5 plus E6, F4, G2",
            criterion_6,
            Duration::from_secs(120),
        ),
        (7, "property suites", criterion_7, Duration::MAX),
        (8, "root system structure", criterion_8, Duration::MAX),
    ];
    let mut failed = 0;
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if elapsed > budget {
            result.ok = false;
            result.detail.push_str(&format!("; over the {budget:?} budget"));
        }
        let verdict = if result.ok { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} {name} ({elapsed:.2?}) {}", result.detail);
        if !result.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
