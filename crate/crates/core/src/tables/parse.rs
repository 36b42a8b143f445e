//! Parser for fixture records.
//!
//! A record is one line of whitespace-separated `key=value` fields. The
//! `word=` and `value=` fields run to the end of the line. Index expressions
//! are linear in the bound variables `i j k l m` and the rank `r`.

use std::fmt;

use crate::rational::{parse_q, Q};
use crate::rootsys::{Family, RootLabel, Sign};

type Parsed<T> = std::result::Result<T, String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    I,
    J,
    K,
    L,
    M,
    R,
}

impl Sym {
    pub const FREE: [Sym; 5] = [Sym::I, Sym::J, Sym::K, Sym::L, Sym::M];

    fn from_char(c: char) -> Option<Sym> {
        Some(match c {
            'i' => Sym::I,
            'j' => Sym::J,
            'k' => Sym::K,
            'l' => Sym::L,
            'm' => Sym::M,
            'r' => Sym::R,
            _ => return None,
        })
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Variable bindings for one instance of a row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    values: [Option<i64>; 6],
    /// The `±` of pair rows.
    pub sign: Option<Sign>,
    /// The sign string of `s[*]` rows.
    pub slots: Option<Vec<Sign>>,
}

impl Env {
    pub fn with_rank(rank: usize) -> Self {
        let mut env = Env::default();
        env.set(Sym::R, rank as i64);
        env
    }

    pub fn set(&mut self, sym: Sym, value: i64) {
        self.values[sym.slot()] = Some(value);
    }

    pub fn get(&self, sym: Sym) -> i64 {
        self.values[sym.slot()].expect("every variable is bound before evaluation")
    }

    /// Bindings other than the rank, for reports.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (sym, name) in Sym::FREE.iter().zip(["i", "j", "k", "l", "m"]) {
            if let Some(v) = self.values[sym.slot()] {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(s) = self.sign {
            parts.push(format!("±={}", s.as_char()));
        }
        parts.join(" ")
    }
}

/// `c + Σ a_s s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    constant: i64,
    terms: Vec<(i64, Sym)>,
}

impl Expr {
    pub fn constant(c: i64) -> Self {
        Self {
            constant: c,
            terms: Vec::new(),
        }
    }

    pub fn eval(&self, env: &Env) -> i64 {
        self.constant + self.terms.iter().map(|&(a, s)| a * env.get(s)).sum::<i64>()
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> + '_ {
        self.terms.iter().map(|&(_, s)| s)
    }

    pub fn parse(text: &str) -> Parsed<Self> {
        let s = text.trim();
        if s.is_empty() {
            return Err("empty index expression".into());
        }
        let mut e = Expr::constant(0);
        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            let (sign, after) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if first => (1, rest),
                _ => return Err(format!("bad index expression `{s}`")),
            };
            let end = after.find(['+', '-']).unwrap_or(after.len());
            let atom = after[..end].trim();
            if let Ok(n) = atom.parse::<i64>() {
                e.constant += sign * n;
            } else {
                let mut cs = atom.chars();
                match (cs.next().and_then(Sym::from_char), cs.next()) {
                    (Some(sym), None) => e.terms.push((sign, sym)),
                    _ => return Err(format!("bad index term `{atom}` in `{s}`")),
                }
            }
            rest = &after[end..];
            first = false;
        }
        Ok(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl Cmp {
    fn holds(self, a: i64, b: i64) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
        }
    }
}

/// `e₁ op e₂ op e₃ ...`, e.g. `1<=i<j<=r+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    operands: Vec<Expr>,
    ops: Vec<Cmp>,
}

impl Chain {
    pub fn holds(&self, env: &Env) -> bool {
        let values: Vec<i64> = self.operands.iter().map(|e| e.eval(env)).collect();
        self.ops
            .iter()
            .zip(values.windows(2))
            .all(|(op, w)| op.holds(w[0], w[1]))
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> + '_ {
        self.operands.iter().flat_map(Expr::syms)
    }

    pub fn parse(text: &str) -> Parsed<Self> {
        let mut operands = Vec::new();
        let mut ops = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut start = 0;
        let mut k = 0;
        while k < chars.len() {
            let two = chars.get(k + 1) == Some(&'=');
            let op = match chars[k] {
                '<' if two => Some((Cmp::Le, 2)),
                '>' if two => Some((Cmp::Ge, 2)),
                '!' if two => Some((Cmp::Ne, 2)),
                '<' => Some((Cmp::Lt, 1)),
                '>' => Some((Cmp::Gt, 1)),
                '=' => Some((Cmp::Eq, 1)),
                _ => None,
            };
            if let Some((op, width)) = op {
                operands.push(Expr::parse(&chars[start..k].iter().collect::<String>())?);
                ops.push(op);
                k += width;
                start = k;
            } else {
                k += 1;
            }
        }
        operands.push(Expr::parse(&chars[start..].iter().collect::<String>())?);
        if ops.is_empty() {
            return Err(format!("constraint `{text}` has no comparison"));
        }
        Ok(Chain { operands, ops })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSuffix {
    /// `a[i,j]`, the unsigned form of the A and G families.
    Plain,
    Minus,
    Plus,
    /// `a[i,j]±`, bound to the row's sign variable.
    Either,
}

/// A root label with index expressions in place of numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelTemplate {
    Simple(Expr),
    Pair(Expr, Expr, PairSuffix),
    Diag(Expr),
    Signs(Vec<Sign>),
    /// Plus signs exactly at the listed slots.
    PlusAt(Vec<Expr>),
    /// Every sign string, taken from the row's slot binding.
    AnySigns,
    Theta,
}

impl LabelTemplate {
    pub fn parse(text: &str) -> Parsed<Self> {
        let t = text.trim();
        if t == "theta" {
            return Ok(LabelTemplate::Theta);
        }
        let (head, inner, tail) = split_bracket(t)?;
        match head {
            "alpha" if tail.is_empty() => Ok(LabelTemplate::Simple(Expr::parse(inner)?)),
            "d" if tail.is_empty() => Ok(LabelTemplate::Diag(Expr::parse(inner)?)),
            "a" => {
                let (i, j) = inner
                    .split_once(',')
                    .ok_or_else(|| format!("pair `{t}` needs two indices"))?;
                let suffix = match tail {
                    "" => PairSuffix::Plain,
                    "-" => PairSuffix::Minus,
                    "+" => PairSuffix::Plus,
                    "±" => PairSuffix::Either,
                    _ => return Err(format!("bad pair suffix in `{t}`")),
                };
                Ok(LabelTemplate::Pair(Expr::parse(i)?, Expr::parse(j)?, suffix))
            }
            "s" if tail.is_empty() => {
                if inner == "*" {
                    Ok(LabelTemplate::AnySigns)
                } else if let Some(list) = inner.strip_prefix("+@") {
                    let positions = list.split(',').map(Expr::parse).collect::<Parsed<Vec<_>>>()?;
                    Ok(LabelTemplate::PlusAt(positions))
                } else if !inner.is_empty() && inner.chars().all(|c| c == '+' || c == '-') {
                    Ok(LabelTemplate::Signs(
                        inner
                            .chars()
                            .map(|c| if c == '+' { Sign::Plus } else { Sign::Minus })
                            .collect(),
                    ))
                } else {
                    Err(format!("bad sign vector `{t}`"))
                }
            }
            _ => Err(format!("unknown label `{t}`")),
        }
    }

    pub fn syms(&self) -> Vec<Sym> {
        match self {
            LabelTemplate::Simple(e) | LabelTemplate::Diag(e) => e.syms().collect(),
            LabelTemplate::Pair(a, b, _) => a.syms().chain(b.syms()).collect(),
            LabelTemplate::PlusAt(es) => es.iter().flat_map(Expr::syms).collect(),
            _ => Vec::new(),
        }
    }

    pub fn uses_sign(&self) -> bool {
        matches!(self, LabelTemplate::Pair(_, _, PairSuffix::Either))
    }

    /// The concrete label for a binding, or `None` when the indices do not
    /// form a label (for example `a[3,2]` or a slot beyond `slots`).
    pub fn instantiate(&self, env: &Env, slots: Option<usize>) -> Option<RootLabel> {
        let index = |e: &Expr| usize::try_from(e.eval(env)).ok().filter(|&v| v >= 1);
        Some(match self {
            LabelTemplate::Simple(e) => RootLabel::Simple(index(e)?),
            LabelTemplate::Diag(e) => RootLabel::Diag(index(e)?),
            LabelTemplate::Pair(a, b, suffix) => {
                let (i, j) = (index(a)?, index(b)?);
                if i >= j {
                    return None;
                }
                let plus = match suffix {
                    PairSuffix::Plain | PairSuffix::Minus => false,
                    PairSuffix::Plus => true,
                    PairSuffix::Either => env.sign? == Sign::Plus,
                };
                if plus {
                    RootLabel::PairPlus(i, j)
                } else {
                    RootLabel::PairMinus(i, j)
                }
            }
            LabelTemplate::Signs(s) => RootLabel::SignVector(s.clone()),
            LabelTemplate::PlusAt(es) => {
                let n = slots?;
                let mut signs = vec![Sign::Minus; n];
                for e in es {
                    let p = index(e)?;
                    if p > n || signs[p - 1] == Sign::Plus {
                        return None;
                    }
                    signs[p - 1] = Sign::Plus;
                }
                RootLabel::SignVector(signs)
            }
            LabelTemplate::AnySigns => RootLabel::SignVector(env.slots.clone()?),
            LabelTemplate::Theta => RootLabel::Theta,
        })
    }
}

/// Splits `head[inner]tail`.
fn split_bracket(t: &str) -> Parsed<(&str, &str, &str)> {
    let open = t.find('[').ok_or_else(|| format!("expected `[` in `{t}`"))?;
    let close = t.rfind(']').ok_or_else(|| format!("expected `]` in `{t}`"))?;
    if close < open {
        return Err(format!("unbalanced brackets in `{t}`"));
    }
    Ok((&t[..open], &t[open + 1..close], &t[close + 1..]))
}

/// One comma-separated item of a word, leftmost first as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordItem {
    /// `σ_e`; `0` is `σ_0`.
    Letter(Expr),
    /// `σ_a σ_{a+1} ... σ_b`, empty when `a > b`.
    Up(Expr, Expr),
    /// `σ_a σ_{a-1} ... σ_b`, empty when `a < b`.
    Down(Expr, Expr),
    Reflection(LabelTemplate),
}

impl WordItem {
    fn parse(text: &str) -> Parsed<Self> {
        let t = text.trim();
        for (name, up) in [("up(", true), ("down(", false)] {
            if let Some(args) = t.strip_prefix(name) {
                let args = args.strip_suffix(')').ok_or_else(|| format!("unclosed `{t}`"))?;
                let (a, b) = args.split_once(',').ok_or_else(|| format!("`{t}` needs two bounds"))?;
                let (a, b) = (Expr::parse(a)?, Expr::parse(b)?);
                return Ok(if up { WordItem::Up(a, b) } else { WordItem::Down(a, b) });
            }
        }
        let is_label = t == "theta" || ["a[", "d[", "s[", "alpha["].iter().any(|p| t.starts_with(p));
        if is_label {
            Ok(WordItem::Reflection(LabelTemplate::parse(t)?))
        } else {
            Ok(WordItem::Letter(Expr::parse(t)?))
        }
    }

    fn syms(&self) -> Vec<Sym> {
        match self {
            WordItem::Letter(e) => e.syms().collect(),
            WordItem::Up(a, b) | WordItem::Down(a, b) => a.syms().chain(b.syms()).collect(),
            WordItem::Reflection(l) => l.syms(),
        }
    }
}

/// Splits on commas outside brackets and parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

pub fn parse_word(text: &str) -> Parsed<Vec<WordItem>> {
    split_top_level(text).into_iter().map(WordItem::parse).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TermSign {
    Fixed(i64),
    /// `±`, the row's pair sign.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Span {
    One(Expr),
    Range(Expr, Expr),
    /// `e[±a..b]`: one slot sign per coordinate, in order.
    Slots(Expr, Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    sign: TermSign,
    coef: Q,
    span: Span,
}

/// A vector written on the orthonormal basis, such as `1/2e[1]-1/2e[2..7]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorExpr {
    terms: Vec<Term>,
}

impl VectorExpr {
    pub fn parse(text: &str) -> Parsed<Self> {
        let mut terms = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err("empty vector".into());
        }
        while !rest.is_empty() {
            let (sign, after) = if let Some(r) = rest.strip_prefix('+') {
                (TermSign::Fixed(1), r)
            } else if let Some(r) = rest.strip_prefix('-') {
                (TermSign::Fixed(-1), r)
            } else if let Some(r) = rest.strip_prefix('±') {
                (TermSign::Pair, r)
            } else if terms.is_empty() {
                (TermSign::Fixed(1), rest)
            } else {
                return Err(format!("expected a sign before `{rest}`"));
            };
            let e_at = after.find("e[").ok_or_else(|| format!("expected `e[` in `{after}`"))?;
            let coef = match &after[..e_at] {
                "" => Q::from_integer(1),
                c => parse_q(c).map_err(|_| format!("bad coefficient `{c}`"))?,
            };
            let close = after.find(']').ok_or_else(|| format!("unclosed `e[` in `{after}`"))?;
            let inner = &after[e_at + 2..close];
            let span = if let Some((a, b)) = inner.split_once("..") {
                match a.strip_prefix('±') {
                    Some(a) => Span::Slots(Expr::parse(a)?, Expr::parse(b)?),
                    None => Span::Range(Expr::parse(a)?, Expr::parse(b)?),
                }
            } else {
                Span::One(Expr::parse(inner)?)
            };
            terms.push(Term { sign, coef, span });
            rest = &after[close + 1..];
        }
        Ok(Self { terms })
    }

    pub fn uses_sign(&self) -> bool {
        self.terms.iter().any(|t| t.sign == TermSign::Pair)
    }

    pub fn syms(&self) -> Vec<Sym> {
        self.terms
            .iter()
            .flat_map(|t| match &t.span {
                Span::One(e) => e.syms().collect::<Vec<_>>(),
                Span::Range(a, b) | Span::Slots(a, b) => a.syms().chain(b.syms()).collect(),
            })
            .collect()
    }

    /// Evaluates in ambient dimension `n`; `None` if an index falls outside
    /// `1..=n` or the slot signs run out.
    pub fn eval(&self, env: &Env, n: usize) -> Option<Vec<Q>> {
        let mut out = vec![Q::from_integer(0); n];
        let mut slot = 0;
        for t in &self.terms {
            let sign = match t.sign {
                TermSign::Fixed(s) => s,
                TermSign::Pair => env.sign?.value(),
            };
            let c = t.coef * Q::from_integer(sign);
            let mut add = |idx: i64, c: Q| -> Option<()> {
                let k = usize::try_from(idx).ok().filter(|&k| (1..=n).contains(&k))?;
                out[k - 1] += c;
                Some(())
            };
            match &t.span {
                Span::One(e) => add(e.eval(env), c)?,
                Span::Range(a, b) => {
                    for idx in a.eval(env)..=b.eval(env) {
                        add(idx, c)?;
                    }
                }
                Span::Slots(a, b) => {
                    let signs = env.slots.as_ref()?;
                    for idx in a.eval(env)..=b.eval(env) {
                        let s = signs.get(slot)?.value();
                        slot += 1;
                        add(idx, c * Q::from_integer(s))?;
                    }
                }
            }
        }
        Some(out)
    }
}

/// Coefficients such as `1,2@2..r`: plain values or `value@from..to` runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marks {
    segments: Vec<(i64, Option<(Expr, Expr)>)>,
}

impl Marks {
    pub fn parse(text: &str) -> Parsed<Self> {
        let mut segments = Vec::new();
        for part in text.split(',') {
            let seg = match part.split_once('@') {
                Some((v, range)) => {
                    let (a, b) = range.split_once("..").ok_or_else(|| format!("bad run `{part}`"))?;
                    (parse_int(v)?, Some((Expr::parse(a)?, Expr::parse(b)?)))
                }
                None => (parse_int(part)?, None),
            };
            segments.push(seg);
        }
        Ok(Self { segments })
    }

    pub fn eval(&self, env: &Env) -> Vec<i64> {
        let mut out = Vec::new();
        for (v, range) in &self.segments {
            match range {
                None => out.push(*v),
                Some((a, b)) => {
                    for _ in a.eval(env)..=b.eval(env) {
                        out.push(*v);
                    }
                }
            }
        }
        out
    }
}

fn parse_int(t: &str) -> Parsed<i64> {
    t.trim().parse().map_err(|_| format!("bad integer `{t}`"))
}

/// What a row asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowKind {
    /// A word equal to `t_{α_i∨}`.
    Translation,
    /// A word in fundamental reflections equal to `σ_β`.
    Classical,
    /// The simple roots with `(α_i, θ∨) = 1`.
    Pairing,
    /// A simple root's coordinates.
    SimpleRoot,
    /// Coordinates of a family of positive roots.
    Positive,
    /// The highest root and its marks.
    Theta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Word(Vec<WordItem>),
    Vector(VectorExpr),
    Indices(Vec<Expr>),
}

/// One transcribed table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub line: usize,
    pub table: u8,
    pub family: Family,
    /// Set for the exceptional algebras, which have a single rank.
    pub fixed_rank: Option<usize>,
    pub min_rank: Option<usize>,
    pub kind: RowKind,
    pub constraints: Vec<Chain>,
    pub constraint_text: String,
    /// `None` only for pairing rows.
    pub subject: Option<LabelTemplate>,
    pub subject_text: String,
    pub parity: Option<Parity>,
    pub marks: Option<Marks>,
    pub marks_text: String,
    pub body: Body,
    pub body_text: String,
}

impl FixtureRow {
    pub fn parse(line_no: usize, line: &str) -> Parsed<Self> {
        let mut fields: Vec<(&str, &str)> = Vec::new();
        let mut rest = line.trim();
        while !rest.is_empty() {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let token = &rest[..end];
            if let Some(tail) = ["word=", "value="]
                .iter()
                .find_map(|p| token.strip_prefix(p).map(|_| p))
            {
                let key = tail.trim_end_matches('=');
                fields.push((key, rest[tail.len()..].trim()));
                break;
            }
            if let Some(n) = token.strip_prefix("rank>=") {
                fields.push(("rank>=", n));
            } else {
                let (k, v) = token
                    .split_once('=')
                    .ok_or_else(|| format!("expected key=value, found `{token}`"))?;
                fields.push((k, v));
            }
            rest = rest[end..].trim_start();
        }
        let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        for (k, _) in &fields {
            if ![
                "table", "algebra", "rank>=", "for", "kind", "subject", "parity", "marks", "word", "value",
            ]
            .contains(k)
            {
                return Err(format!("unknown field `{k}`"));
            }
        }
        let table: u8 = get("table")
            .ok_or("missing table")?
            .parse()
            .map_err(|_| "bad table number".to_string())?;
        if !(1..=9).contains(&table) {
            return Err(format!("no table {table}"));
        }
        let algebra = get("algebra").ok_or("missing algebra")?;
        let mut chars = algebra.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| format!("bad algebra `{algebra}`"))?;
        let fixed_rank = match chars.as_str() {
            "" => None,
            digits => Some(parse_int(digits)? as usize),
        };
        let min_rank = get("rank>=").map(parse_int).transpose()?.map(|n| n as usize);
        let kind = match (table, get("kind")) {
            (1 | 2, None) => RowKind::Translation,
            (3, None) => RowKind::Pairing,
            (4..=6, None) => RowKind::Classical,
            (7..=9, Some("simple")) => RowKind::SimpleRoot,
            (7..=9, Some("positive")) => RowKind::Positive,
            (7..=9, Some("theta")) => RowKind::Theta,
            (_, k) => return Err(format!("kind {k:?} does not fit table {table}")),
        };
        let constraint_text = get("for").unwrap_or("").to_string();
        let constraints = if constraint_text.is_empty() {
            Vec::new()
        } else {
            constraint_text.split(',').map(Chain::parse).collect::<Parsed<_>>()?
        };
        let subject_text = get("subject").ok_or("missing subject")?.to_string();
        let subject = if kind == RowKind::Pairing {
            if subject_text != "pairing" {
                return Err("table 3 rows take subject=pairing".into());
            }
            None
        } else {
            Some(LabelTemplate::parse(&subject_text)?)
        };
        let parity = match get("parity") {
            None => None,
            Some("even") => Some(Parity::Even),
            Some("odd") => Some(Parity::Odd),
            Some(p) => return Err(format!("bad parity `{p}`")),
        };
        let marks_text = get("marks").unwrap_or("").to_string();
        let marks = get("marks").map(Marks::parse).transpose()?;
        if (kind == RowKind::Theta) != marks.is_some() {
            return Err("marks belong to theta rows exactly".into());
        }
        let (body, body_text) = match kind {
            RowKind::Translation | RowKind::Classical => {
                let w = get("word").ok_or("missing word")?;
                (Body::Word(parse_word(w)?), w)
            }
            RowKind::Pairing => {
                let v = get("value").ok_or("missing value")?;
                let idx = v.split(',').map(Expr::parse).collect::<Parsed<_>>()?;
                (Body::Indices(idx), v)
            }
            _ => {
                let v = get("value").ok_or("missing value")?;
                (Body::Vector(VectorExpr::parse(v)?), v)
            }
        };
        Ok(FixtureRow {
            line: line_no,
            table,
            family,
            fixed_rank,
            min_rank,
            kind,
            constraints,
            constraint_text,
            subject,
            subject_text,
            parity,
            marks,
            marks_text,
            body,
            body_text: body_text.to_string(),
        })
    }

    /// Free variables, in `i j k l m` order.
    pub fn free_syms(&self) -> Vec<Sym> {
        let mut syms: Vec<Sym> = Vec::new();
        if let Some(s) = &self.subject {
            syms.extend(s.syms());
        }
        for c in &self.constraints {
            syms.extend(c.syms());
        }
        match &self.body {
            Body::Word(items) => syms.extend(items.iter().flat_map(WordItem::syms)),
            Body::Vector(v) => syms.extend(v.syms()),
            Body::Indices(es) => syms.extend(es.iter().flat_map(Expr::syms)),
        }
        syms.retain(|&s| s != Sym::R);
        syms.sort();
        syms.dedup();
        syms
    }

    pub fn uses_sign(&self) -> bool {
        self.subject.as_ref().is_some_and(LabelTemplate::uses_sign)
            || matches!(&self.body, Body::Vector(v) if v.uses_sign())
    }

    /// Human-readable validity range.
    pub fn ranks(&self) -> String {
        match (self.fixed_rank, self.min_rank) {
            (Some(r), _) => format!("{}{r}", self.family.letter()),
            (None, Some(m)) => format!("r >= {m}"),
            (None, None) => "all".into(),
        }
    }
}

impl fmt::Display for FixtureRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table {} line {}: {}", self.table, self.line, self.subject_text)
    }
}
