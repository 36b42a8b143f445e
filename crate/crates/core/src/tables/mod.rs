//! Transcribed decomposition and embedding tables, and a verifier that
//! re-derives every row with exact arithmetic.

mod parse;
mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use parse::{Body, Env, FixtureRow, LabelTemplate, Parity, RowKind, WordItem};
pub use verify::{
    default_algebras, verify_all, verify_with, CoverageCheck, InstanceReport, RowReport, RowStatus, VerificationReport,
};

use crate::affine::Token;
use crate::error::{Error, Result};
use crate::rational::RationalVector;
use crate::rootsys::{AlgebraFamily, Family, RootLabel, RootSystem, Sign};
use crate::weyl::SimpleWord;

const SOURCE: &str = include_str!("../../fixtures/tables.txt");

/// Longest chain of rows referring to other rows before giving up.
const MAX_NESTING: usize = 32;

/// Number of sign slots in the sign-vector labels of an algebra.
pub fn sign_slots(algebra: AlgebraFamily) -> Option<usize> {
    match (algebra.family(), algebra.rank()) {
        (Family::E, r) => Some(r - 1),
        (Family::F, _) | (Family::G, _) => Some(3),
        _ => None,
    }
}

/// One binding of a row's variables, with the subject it names.
#[derive(Clone, Debug)]
pub struct Instance {
    pub env: Env,
    pub label: Option<RootLabel>,
}

type ClassicalIndex = HashMap<RationalVector, (usize, Env)>;

#[derive(Debug)]
pub struct FixtureStore {
    rows: Vec<FixtureRow>,
    classical: Mutex<HashMap<AlgebraFamily, Arc<ClassicalIndex>>>,
}

static STORE: OnceLock<FixtureStore> = OnceLock::new();

/// The embedded table data.
pub fn fixtures() -> &'static FixtureStore {
    STORE.get_or_init(|| FixtureStore::parse(SOURCE).expect("embedded fixtures parse"))
}

fn all_signs(slots: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0u32..(1 << slots)).map(move |mask| {
        (0..slots)
            .map(|k| {
                if mask & (1 << (slots - 1 - k)) != 0 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect()
    })
}

impl FixtureStore {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = FixtureRow::parse(k + 1, line).map_err(|message| Error::Fixture { line: k + 1, message })?;
            rows.push(row);
        }
        Ok(Self {
            rows,
            classical: Mutex::new(HashMap::new()),
        })
    }

    pub fn rows(&self) -> &[FixtureRow] {
        &self.rows
    }

    pub fn table(&self, table: u8) -> impl Iterator<Item = &FixtureRow> {
        self.rows.iter().filter(move |r| r.table == table)
    }

    /// Whether a row's family and rank range cover `algebra`.
    pub fn applies(row: &FixtureRow, algebra: AlgebraFamily) -> bool {
        row.family == algebra.family()
            && row.fixed_rank.is_none_or(|r| r == algebra.rank())
            && row.min_rank.is_none_or(|m| algebra.rank() >= m)
    }

    /// Every binding of the row's variables that satisfies its constraints.
    ///
    /// Word rows only keep bindings whose subject names a root of `rs`, so
    /// partially constrained families pick up exactly the roots that exist.
    /// Embedding rows keep every binding so a wrong label shows up as a
    /// failure.
    pub fn instances(&self, row: &FixtureRow, rs: &RootSystem) -> Vec<Instance> {
        if !Self::applies(row, rs.algebra()) {
            return Vec::new();
        }
        if row.kind == RowKind::Pairing {
            return vec![Instance {
                env: Env::with_rank(rs.rank()),
                label: None,
            }];
        }
        let slots = sign_slots(rs.algebra());
        let vars = row.free_syms();
        let n = rs.dim() as i64;
        let signs: Vec<Option<Sign>> = if row.uses_sign() {
            vec![Some(Sign::Plus), Some(Sign::Minus)]
        } else {
            vec![None]
        };
        let slot_strings: Vec<Option<Vec<Sign>>> = match (&row.subject, slots) {
            (Some(LabelTemplate::AnySigns), Some(s)) => all_signs(s)
                .filter(|v| {
                    let minus = v.iter().filter(|&&x| x == Sign::Minus).count();
                    match row.parity {
                        Some(Parity::Even) => minus % 2 == 0,
                        Some(Parity::Odd) => minus % 2 == 1,
                        None => true,
                    }
                })
                .map(Some)
                .collect(),
            (Some(LabelTemplate::AnySigns), None) => return Vec::new(),
            _ => vec![None],
        };
        let keep_missing = matches!(row.kind, RowKind::SimpleRoot | RowKind::Positive | RowKind::Theta);
        let mut out = Vec::new();
        let mut counters = vec![1i64; vars.len()];
        loop {
            let mut env = Env::with_rank(rs.rank());
            for (&s, &v) in vars.iter().zip(&counters) {
                env.set(s, v);
            }
            if row.constraints.iter().all(|c| c.holds(&env)) {
                for sign in &signs {
                    for slot in &slot_strings {
                        let mut env = env.clone();
                        env.sign = *sign;
                        env.slots = slot.clone();
                        let subject = row.subject.as_ref().expect("non-pairing rows have subjects");
                        let Some(label) = subject.instantiate(&env, slots) else {
                            continue;
                        };
                        if keep_missing || rs.label_vector(&label).is_some() {
                            out.push(Instance {
                                env,
                                label: Some(label),
                            });
                        }
                    }
                }
            }
            // odometer over 1..=n for each variable
            let mut k = 0;
            loop {
                if k == counters.len() {
                    return out;
                }
                counters[k] += 1;
                if counters[k] <= n {
                    break;
                }
                counters[k] = 1;
                k += 1;
            }
        }
    }

    fn classical_index(&self, rs: &RootSystem) -> Arc<ClassicalIndex> {
        let mut cache = self.classical.lock().expect("fixture cache lock");
        cache
            .entry(rs.algebra())
            .or_insert_with(|| {
                let mut index = ClassicalIndex::new();
                for (k, row) in self.rows.iter().enumerate() {
                    if row.kind != RowKind::Classical {
                        continue;
                    }
                    for inst in self.instances(row, rs) {
                        let label = inst.label.expect("classical rows have labels");
                        let v = rs.label_vector(&label).expect("instances name roots");
                        index.entry(v).or_insert((k, inst.env));
                    }
                }
                Arc::new(index)
            })
            .clone()
    }

    /// The printed word of a classical row instance, with named reflections
    /// replaced by their own rows (or by the fundamental reflection when the
    /// root is simple).
    pub fn expand_classical(&self, rs: &RootSystem, row: &FixtureRow, env: &Env) -> Result<SimpleWord> {
        let index = self.classical_index(rs);
        let mut letters = Vec::new();
        self.expand_into(rs, &index, row, env, 0, &mut letters)?;
        Ok(SimpleWord::from_letters(letters))
    }

    fn expand_into(
        &self,
        rs: &RootSystem,
        index: &ClassicalIndex,
        row: &FixtureRow,
        env: &Env,
        depth: usize,
        out: &mut Vec<usize>,
    ) -> Result<()> {
        if depth > MAX_NESTING {
            return Err(Error::Fixture {
                line: row.line,
                message: "rows refer to each other in a cycle".into(),
            });
        }
        let Body::Word(items) = &row.body else {
            return Err(Error::Fixture {
                line: row.line,
                message: "not a word row".into(),
            });
        };
        let letter = |v: i64| -> Result<usize> {
            usize::try_from(v)
                .ok()
                .filter(|&l| (1..=rs.rank()).contains(&l))
                .ok_or_else(|| Error::Fixture {
                    line: row.line,
                    message: format!("letter {v} out of range for {}", rs.algebra()),
                })
        };
        for item in items {
            match item {
                WordItem::Letter(e) => out.push(letter(e.eval(env))?),
                WordItem::Up(a, b) => {
                    for v in a.eval(env)..=b.eval(env) {
                        out.push(letter(v)?);
                    }
                }
                WordItem::Down(a, b) => {
                    for v in (b.eval(env)..=a.eval(env)).rev() {
                        out.push(letter(v)?);
                    }
                }
                WordItem::Reflection(t) => {
                    let label = t
                        .instantiate(env, sign_slots(rs.algebra()))
                        .ok_or_else(|| Error::FixtureUnavailable(format!("line {}: {t:?}", row.line)))?;
                    let v = rs.resolve(&label)?;
                    if let RootLabel::Simple(i) = label {
                        out.push(letter(i as i64)?);
                    } else if let Some((k, env2)) = index.get(&v) {
                        self.expand_into(rs, index, &self.rows[*k], env2, depth + 1, out)?;
                    } else if let Some(i) = rs.simple_roots().iter().position(|s| *s == v) {
                        out.push(i + 1);
                    } else {
                        return Err(Error::FixtureUnavailable(rs.format_label(&label)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The table word for `σ_label`, expanded to fundamental reflections.
    pub fn classical_word(&self, rs: &RootSystem, label: &RootLabel) -> Result<SimpleWord> {
        let v = rs.resolve(label)?;
        let index = self.classical_index(rs);
        let (k, env) = index
            .get(&v)
            .ok_or_else(|| Error::FixtureUnavailable(format!("{} in {}", rs.format_label(label), rs.algebra())))?;
        let mut letters = Vec::new();
        self.expand_into(rs, &index, &self.rows[*k], env, 0, &mut letters)?;
        Ok(SimpleWord::from_letters(letters))
    }

    /// The printed word of a translation row instance as affine tokens.
    pub fn translation_tokens(&self, rs: &RootSystem, row: &FixtureRow, env: &Env) -> Result<Vec<Token>> {
        let Body::Word(items) = &row.body else {
            return Err(Error::Fixture {
                line: row.line,
                message: "not a word row".into(),
            });
        };
        let mut out = Vec::new();
        for item in items {
            match item {
                WordItem::Letter(e) => out.push(Token::Simple(usize::try_from(e.eval(env)).map_err(|_| {
                    Error::Fixture {
                        line: row.line,
                        message: "negative letter".into(),
                    }
                })?)),
                WordItem::Up(a, b) => out.extend((a.eval(env)..=b.eval(env)).map(|v| Token::Simple(v as usize))),
                WordItem::Down(a, b) => {
                    out.extend((b.eval(env)..=a.eval(env)).rev().map(|v| Token::Simple(v as usize)))
                }
                WordItem::Reflection(t) => {
                    let label = t
                        .instantiate(env, sign_slots(rs.algebra()))
                        .ok_or_else(|| Error::FixtureUnavailable(format!("line {}: {t:?}", row.line)))?;
                    rs.resolve(&label)?;
                    out.push(Token::named(label));
                }
            }
        }
        Ok(out)
    }

    /// The table word for `t_{α_i∨}`.
    pub fn translation_word(&self, rs: &RootSystem, i: usize) -> Result<Vec<Token>> {
        for row in self.rows.iter().filter(|r| r.kind == RowKind::Translation) {
            for inst in self.instances(row, rs) {
                if inst.label == Some(RootLabel::Simple(i)) {
                    return self.translation_tokens(rs, row, &inst.env);
                }
            }
        }
        Err(Error::FixtureUnavailable(format!(
            "t for alpha[{i}] in {}",
            rs.algebra()
        )))
    }

    /// All rows as markdown tables, one per printed table.
    pub fn emit_markdown(&self) -> String {
        let mut out = String::new();
        for table in 1..=9u8 {
            let title = match table {
                1 | 2 => "Fundamental translations",
                3 => "Simple roots with (alpha_i, theta^v) = 1",
                4..=6 => "Decompositions of classical reflections",
                _ => "Embeddings",
            };
            out.push_str(&format!("## Table {table}: {title}\n\n"));
            out.push_str("| algebra | ranks | condition | kind | subject | entry |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for row in self.table(table) {
                let mut entry = row.body_text.clone();
                if !row.marks_text.is_empty() {
                    entry = format!("{entry} (marks {})", row.marks_text);
                }
                if let Some(p) = row.parity {
                    entry = format!(
                        "{entry} ({} minus signs)",
                        if p == Parity::Even { "even" } else { "odd" }
                    );
                }
                out.push_str(&format!(
                    "| {} | {} | {} | {:?} | `{}` | `{}` |\n",
                    row.family.letter(),
                    row.ranks(),
                    row.constraint_text,
                    row.kind,
                    row.subject_text,
                    entry
                ));
            }
            out.push('\n');
        }
        out
    }
}
