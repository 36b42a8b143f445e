//! Root labels and their text grammar.
//!
//! ```text
//! a[i,j]      pair root without sign (A_r, G_2)
//! a[i,j]+     a[i,j]-   signed pair roots
//! d[i]        diagonal root
//! s[+-+]      sign-vector root, one character per sign slot
//! alpha[i]    simple root i
//! theta       highest root
//! c:[1,0,2]   coefficients on the simple roots
//! ```
//!
//! A leading `-` negates any of the above.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Names of positive roots, following the naming of the standard embeddings.
///
/// The variant order is the search order used when candidate roots are
/// enumerated, so it must not be rearranged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    /// `α_{ij}` or `α_{ij}^-`.
    PairMinus(usize, usize),
    /// `α_{ij}^+`.
    PairPlus(usize, usize),
    /// `α_{ii}`.
    Diag(usize),
    /// `α_{±…±}`.
    SignVector(Vec<Sign>),
    /// `α_i`.
    Simple(usize),
    Theta,
}

impl RootLabel {
    pub fn sign_vector(text: &str) -> Self {
        RootLabel::SignVector(
            text.chars()
                .map(|c| if c == '-' { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }
}

/// Generic rendering with explicit signs on pair roots; use
/// [`crate::RootSystem::format_label`] for the family-specific form.
impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::PairMinus(i, j) => write!(f, "a[{i},{j}]-"),
            RootLabel::PairPlus(i, j) => write!(f, "a[{i},{j}]+"),
            RootLabel::Diag(i) => write!(f, "d[{i}]"),
            RootLabel::SignVector(signs) => {
                f.write_str("s[")?;
                for s in signs {
                    write!(f, "{}", s.as_char())?;
                }
                f.write_str("]")
            }
            RootLabel::Simple(i) => write!(f, "alpha[{i}]"),
            RootLabel::Theta => f.write_str("theta"),
        }
    }
}

/// A label together with an orientation: `negative` names `-α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedLabel {
    pub label: RootLabel,
    pub negative: bool,
}

/// Result of parsing the grammar before it is resolved against a root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSyntax {
    Label(RootLabel),
    /// `a[i,j]` with no sign suffix.
    PlainPair(usize, usize),
    Coefficients(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRoot {
    pub syntax: RootSyntax,
    pub negative: bool,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if self.text[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let value = self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "expected an integer"))?;
        self.skip_ws();
        Ok(value)
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.integer()?;
        if v < 1 {
            return Err(Error::parse(start, "indices start at 1"));
        }
        Ok(v as usize)
    }
}

/// Parses root text without reference to a root system.
pub fn parse_root_syntax(text: &str) -> Result<ParsedRoot> {
    let mut c = Cursor {
        text: text.trim(),
        pos: 0,
    };
    let negative = c.eat('-');
    let syntax = if c.eat_word("theta") {
        RootSyntax::Label(RootLabel::Theta)
    } else if c.eat_word("alpha[") {
        let i = c.index()?;
        c.expect(']')?;
        RootSyntax::Label(RootLabel::Simple(i))
    } else if c.eat_word("a[") {
        let i = c.index()?;
        c.expect(',')?;
        let j = c.index()?;
        c.expect(']')?;
        if c.eat('+') {
            RootSyntax::Label(RootLabel::PairPlus(i, j))
        } else if c.eat('-') {
            RootSyntax::Label(RootLabel::PairMinus(i, j))
        } else {
            RootSyntax::PlainPair(i, j)
        }
    } else if c.eat_word("d[") {
        let i = c.index()?;
        c.expect(']')?;
        RootSyntax::Label(RootLabel::Diag(i))
    } else if c.eat_word("s[") {
        let mut signs = Vec::new();
        loop {
            if c.eat('+') {
                signs.push(Sign::Plus);
            } else if c.eat('-') {
                signs.push(Sign::Minus);
            } else {
                break;
            }
        }
        if signs.is_empty() {
            return Err(c.error("expected at least one sign"));
        }
        c.expect(']')?;
        RootSyntax::Label(RootLabel::SignVector(signs))
    } else if c.eat_word("c:[") {
        let mut coeffs = vec![c.integer()?];
        while c.eat(',') {
            coeffs.push(c.integer()?);
        }
        c.expect(']')?;
        RootSyntax::Coefficients(coeffs)
    } else {
        return Err(c.error("expected a root: a[..], d[..], s[..], alpha[..], theta or c:[..]"));
    };
    if c.pos != c.text.len() {
        return Err(c.error("trailing characters"));
    }
    Ok(ParsedRoot { syntax, negative })
}
