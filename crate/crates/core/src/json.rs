//! Wire formats. Rationals travel as `"p/q"` strings (`"p"` when the
//! denominator is one); words carry their reading order explicitly.

use serde::{Deserialize, Serialize};

use crate::affine::{AffineRoot, AffineWeight, AffineWord};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, RationalVector};
use crate::rootsys::RootSystem;
use crate::weyl::SimpleWord;

pub const RIGHT_TO_LEFT: &str = "right-to-left";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub letters: Vec<usize>,
    pub order: String,
}

impl WordJson {
    fn new(letters: Vec<usize>) -> Self {
        Self {
            letters,
            order: RIGHT_TO_LEFT.to_string(),
        }
    }

    fn checked_letters(self) -> Result<Vec<usize>> {
        if self.order != RIGHT_TO_LEFT {
            return Err(Error::parse(0, format!("unsupported word order `{}`", self.order)));
        }
        Ok(self.letters)
    }
}

impl From<SimpleWord> for WordJson {
    fn from(w: SimpleWord) -> Self {
        Self::new(w.into_letters())
    }
}

impl TryFrom<WordJson> for SimpleWord {
    type Error = Error;

    fn try_from(w: WordJson) -> Result<Self> {
        let letters = w.checked_letters()?;
        if letters.contains(&0) {
            return Err(Error::NotARoot("σ_0 is not a classical letter".into()));
        }
        Ok(SimpleWord::from_letters(letters))
    }
}

impl From<AffineWord> for WordJson {
    fn from(w: AffineWord) -> Self {
        Self::new(w.letters().to_vec())
    }
}

impl TryFrom<WordJson> for AffineWord {
    type Error = Error;

    fn try_from(w: WordJson) -> Result<Self> {
        Ok(AffineWord::from_letters(w.checked_letters()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub lambda: Vec<String>,
    pub k: String,
    pub m: String,
}

impl From<AffineWeight> for WeightJson {
    fn from(w: AffineWeight) -> Self {
        Self {
            lambda: w.lambda.coords().iter().map(format_q).collect(),
            k: format_q(&w.k),
            m: format_q(&w.m),
        }
    }
}

impl TryFrom<WeightJson> for AffineWeight {
    type Error = Error;

    fn try_from(w: WeightJson) -> Result<Self> {
        let lambda = w.lambda.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
        Ok(AffineWeight::new(
            RationalVector::new(lambda),
            parse_q(&w.k)?,
            parse_q(&w.m)?,
        ))
    }
}

/// Either root text in the label grammar or explicit ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootJson {
    Text(String),
    Coordinates(Vec<String>),
}

/// Unresolved affine root; needs a root system to become an [`AffineRoot`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRootJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RootJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub imaginary: bool,
    pub n: i64,
}

impl AffineRootJson {
    pub fn resolve(&self, rs: &RootSystem) -> Result<AffineRoot> {
        match (&self.alpha, self.imaginary) {
            (None, true) => AffineRoot::imaginary(self.n),
            (Some(_), true) => Err(Error::parse(0, "an imaginary root has no finite part")),
            (None, false) => Err(Error::parse(0, "missing `alpha`")),
            (Some(RootJson::Text(text)), false) => {
                let label = rs.parse_signed_root(text)?;
                AffineRoot::real(rs, rs.resolve_signed(&label)?, self.n)
            }
            (Some(RootJson::Coordinates(coords)), false) => {
                let v = coords.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?;
                AffineRoot::real(rs, RationalVector::new(v), self.n)
            }
        }
    }

    /// Names the finite part by label where possible.
    pub fn from_root(rs: &RootSystem, root: &AffineRoot) -> Self {
        match root {
            AffineRoot::Imaginary { n } => Self {
                alpha: None,
                imaginary: true,
                n: *n,
            },
            AffineRoot::Real { alpha, n } => {
                let text = rs
                    .lookup_label(alpha)
                    .map(|l| RootJson::Text(rs.format_signed(&l)))
                    .unwrap_or_else(|| RootJson::Coordinates(alpha.coords().iter().map(format_q).collect()));
                Self {
                    alpha: Some(text),
                    imaginary: false,
                    n: *n,
                }
            }
        }
    }
}
