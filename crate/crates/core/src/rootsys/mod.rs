//! Root systems of the simple Lie algebras in their standard embeddings.

mod embed;
mod label;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

pub use label::{parse_root_syntax, ParsedRoot, RootLabel, RootSyntax, Sign, SignedLabel};

use crate::error::{Error, Result};
use crate::rational::{to_integer, Basis, RationalVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    /// True for the families whose pair roots carry no `±` in their names.
    fn unsigned_pairs(self) -> bool {
        matches!(self, Family::A | Family::G)
    }
}

/// A family letter together with a supported rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraFamily {
    family: Family,
    rank: usize,
}

impl AlgebraFamily {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Dimension of the ambient space of the embedding.
    pub fn ambient_dim(self) -> usize {
        match self.family {
            Family::B | Family::C | Family::D | Family::F => self.rank,
            Family::A | Family::G => self.rank + 1,
            Family::E => 8,
        }
    }

    /// `|Δ_+|` from the closed-form count of each family.
    pub fn positive_root_count(self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for AlgebraFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AlgebraFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::parse(0, format!("unknown algebra `{s}`")))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(1, format!("invalid rank in `{s}`")))?;
        AlgebraFamily::new(family, rank)
    }
}

/// An immutable root system: simple roots, labelled positive roots and the
/// highest root, with the derived coroot data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    algebra: AlgebraFamily,
    simple: Vec<RationalVector>,
    simple_coroots: Vec<RationalVector>,
    positive: Vec<(RootLabel, RationalVector)>,
    by_label: HashMap<RootLabel, usize>,
    by_vector: HashMap<RationalVector, usize>,
    theta: RationalVector,
    theta_marks: Vec<i64>,
    roots: Basis,
    coroots: Basis,
}

pub fn build_root_system(algebra: AlgebraFamily) -> RootSystem {
    RootSystem::new(algebra)
}

/// `2α/(α,α)`, without checking that `α` is a root.
pub fn coroot_of(alpha: &RationalVector) -> RationalVector {
    alpha.scale(Q::from_integer(2) / alpha.norm2())
}

impl RootSystem {
    pub fn new(algebra: AlgebraFamily) -> Self {
        let embed::Embedding {
            simple,
            positive,
            theta,
        } = embed::embed(algebra);
        let simple_coroots: Vec<_> = simple.iter().map(coroot_of).collect();
        let roots = Basis::new(simple.clone());
        let coroots = Basis::new(simple_coroots.clone());
        let by_label = positive.iter().enumerate().map(|(k, (l, _))| (l.clone(), k)).collect();
        let by_vector = positive.iter().enumerate().map(|(k, (_, v))| (v.clone(), k)).collect();
        let theta_marks = roots
            .integer_coordinates(&theta)
            .expect("highest root has integer marks");
        Self {
            algebra,
            simple,
            simple_coroots,
            positive,
            by_label,
            by_vector,
            theta,
            theta_marks,
            roots,
            coroots,
        }
    }

    pub fn parse(algebra: &str) -> Result<Self> {
        Ok(Self::new(algebra.parse()?))
    }

    pub fn algebra(&self) -> AlgebraFamily {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn dim(&self) -> usize {
        self.algebra.ambient_dim()
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple
    }

    /// Simple root `α_i`, `i` counted from one.
    pub fn simple_root(&self, i: usize) -> &RationalVector {
        &self.simple[i - 1]
    }

    pub fn simple_coroot(&self, i: usize) -> &RationalVector {
        &self.simple_coroots[i - 1]
    }

    /// Positive roots under their canonical labels, in label order.
    pub fn positive_roots(&self) -> &[(RootLabel, RationalVector)] {
        &self.positive
    }

    /// All roots, positive first.
    pub fn roots(&self) -> impl Iterator<Item = RationalVector> + '_ {
        self.positive
            .iter()
            .map(|(_, v)| v.clone())
            .chain(self.positive.iter().map(|(_, v)| -v))
    }

    pub fn theta(&self) -> &RationalVector {
        &self.theta
    }

    pub fn theta_coroot(&self) -> RationalVector {
        coroot_of(&self.theta)
    }

    pub fn theta_marks(&self) -> &[i64] {
        &self.theta_marks
    }

    pub fn is_positive_root(&self, v: &RationalVector) -> bool {
        self.by_vector.contains_key(v)
    }

    pub fn is_root(&self, v: &RationalVector) -> bool {
        self.is_positive_root(v) || self.is_positive_root(&-v)
    }

    pub fn check_dim(&self, v: &RationalVector) -> Result<()> {
        if v.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            })
        }
    }

    pub fn require_root(&self, v: &RationalVector) -> Result<()> {
        self.check_dim(v)?;
        if self.is_root(v) {
            Ok(())
        } else {
            Err(Error::NotARoot(v.to_string()))
        }
    }

    /// The positive root a label names, if it names one in this system.
    pub fn label_vector(&self, label: &RootLabel) -> Option<RationalVector> {
        match label {
            RootLabel::Simple(i) if (1..=self.rank()).contains(i) => Some(self.simple[i - 1].clone()),
            RootLabel::Simple(_) => None,
            RootLabel::Theta => Some(self.theta.clone()),
            other => self.by_label.get(other).map(|&k| self.positive[k].1.clone()),
        }
    }

    pub fn resolve(&self, label: &RootLabel) -> Result<RationalVector> {
        self.label_vector(label)
            .ok_or_else(|| Error::NotARoot(self.format_label(label)))
    }

    pub fn resolve_signed(&self, label: &SignedLabel) -> Result<RationalVector> {
        let v = self.resolve(&label.label)?;
        Ok(if label.negative { -&v } else { v })
    }

    /// Name of `v`: simple roots are reported as `Simple(i)`, everything else
    /// under its family label; `-v` for a positive `v` comes back flagged.
    pub fn lookup_label(&self, v: &RationalVector) -> Option<SignedLabel> {
        if v.dim() != self.dim() {
            return None;
        }
        let find = |w: &RationalVector| {
            if let Some(i) = self.simple.iter().position(|s| s == w) {
                return Some(RootLabel::Simple(i + 1));
            }
            self.by_vector.get(w).map(|&k| self.positive[k].0.clone())
        };
        if let Some(label) = find(v) {
            return Some(SignedLabel { label, negative: false });
        }
        find(&-v).map(|label| SignedLabel { label, negative: true })
    }

    /// Canonical family label of a positive root.
    pub fn canonical_label(&self, v: &RationalVector) -> Option<&RootLabel> {
        self.by_vector.get(v).map(|&k| &self.positive[k].0)
    }

    /// Family-specific printed form; inverse of [`RootSystem::parse_root`].
    pub fn format_label(&self, label: &RootLabel) -> String {
        match label {
            RootLabel::PairMinus(i, j) if self.algebra.family().unsigned_pairs() => {
                format!("a[{i},{j}]")
            }
            other => other.to_string(),
        }
    }

    pub fn format_signed(&self, label: &SignedLabel) -> String {
        let text = self.format_label(&label.label);
        if label.negative {
            format!("-{text}")
        } else {
            text
        }
    }

    /// Parses root text that must name a positive root.
    pub fn parse_root(&self, text: &str) -> Result<RootLabel> {
        let signed = self.parse_signed_root(text)?;
        if signed.negative {
            return Err(Error::NotARoot(format!("`{text}` names a negative root")));
        }
        Ok(signed.label)
    }

    /// Parses root text, allowing a leading `-` or negative coefficients.
    pub fn parse_signed_root(&self, text: &str) -> Result<SignedLabel> {
        let ParsedRoot { syntax, negative } = parse_root_syntax(text)?;
        let signed = match syntax {
            RootSyntax::Label(label) => {
                self.resolve(&label)?;
                SignedLabel { label, negative }
            }
            RootSyntax::PlainPair(i, j) => {
                if !self.algebra.family().unsigned_pairs() {
                    return Err(Error::parse(
                        text.trim().len(),
                        format!("pair roots of {} need a `+` or `-` suffix", self.algebra),
                    ));
                }
                let label = RootLabel::PairMinus(i, j);
                self.resolve(&label)?;
                SignedLabel { label, negative }
            }
            RootSyntax::Coefficients(coeffs) => {
                if coeffs.len() != self.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: self.rank(),
                        found: coeffs.len(),
                    });
                }
                let q: Vec<Q> = coeffs.iter().map(|&c| Q::from_integer(c)).collect();
                let mut v = self.roots.combine(&q);
                if negative {
                    v = -&v;
                }
                self.lookup_label(&v)
                    .ok_or_else(|| Error::NotARoot(format!("c:{coeffs:?}")))?
            }
        };
        Ok(signed)
    }

    /// `α∨ = 2α/(α,α)` for a root `α`.
    pub fn dual_root(&self, alpha: &RationalVector) -> Result<RationalVector> {
        self.require_root(alpha)?;
        Ok(coroot_of(alpha))
    }

    /// `A_ij = (α_i∨, α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_coroots
            .iter()
            .map(|c| {
                self.simple
                    .iter()
                    .map(|a| to_integer(&c.dot(a)).expect("Cartan entries are integers"))
                    .collect()
            })
            .collect()
    }

    /// Integer coefficients of a root on the simple roots.
    pub fn simple_expansion(&self, alpha: &RationalVector) -> Result<Vec<i64>> {
        self.require_root(alpha)?;
        self.roots
            .integer_coordinates(alpha)
            .ok_or_else(|| Error::NotARoot(alpha.to_string()))
    }

    /// Integer coefficients of a coroot on the simple coroots.
    pub fn dual_expansion(&self, coroot: &RationalVector) -> Result<Vec<i64>> {
        self.check_dim(coroot)?;
        if coroot.is_zero() || !self.is_root(&coroot_of(coroot)) {
            return Err(Error::NotARoot(format!("{coroot} is not a dual root")));
        }
        self.coroots
            .integer_coordinates(coroot)
            .ok_or_else(|| Error::NotARoot(coroot.to_string()))
    }

    /// Coordinates of `mu` on the simple coroots, if `mu` is in the coroot
    /// lattice.
    pub fn coroot_lattice_coords(&self, mu: &RationalVector) -> Option<Vec<i64>> {
        if mu.dim() != self.dim() {
            return None;
        }
        self.coroots.integer_coordinates(mu)
    }

    pub fn coroot_from_coords(&self, coeffs: &[i64]) -> RationalVector {
        let q: Vec<Q> = coeffs.iter().map(|&c| Q::from_integer(c)).collect();
        self.coroots.combine(&q)
    }

    pub fn root_from_coords(&self, coeffs: &[i64]) -> RationalVector {
        let q: Vec<Q> = coeffs.iter().map(|&c| Q::from_integer(c)).collect();
        self.roots.combine(&q)
    }

    /// Sum of the simple-root coefficients.
    pub fn height(&self, alpha: &RationalVector) -> Result<i64> {
        Ok(self.simple_expansion(alpha)?.iter().sum())
    }

    /// `(θ∨, α)`.
    pub fn theta_pairing(&self, alpha: &RationalVector) -> Q {
        self.theta_coroot().dot(alpha)
    }

    /// Simple indices `i` with `(α_i, θ∨) = 1`.
    pub fn theta_pairing_simples(&self) -> Vec<usize> {
        let tc = self.theta_coroot();
        (1..=self.rank())
            .filter(|&i| tc.dot(self.simple_root(i)).is_one())
            .collect()
    }

    /// `2k/(θ,θ)`.
    pub fn normalized_level(&self, k: Q) -> Q {
        k * Q::from_integer(2) / self.theta.norm2()
    }

    /// True if `v` is a root with all simple coefficients nonnegative.
    pub fn is_dominated_by_theta(&self, alpha: &RationalVector) -> bool {
        self.roots
            .coordinates(&(&self.theta - alpha))
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    pub fn zero_vector(&self) -> RationalVector {
        RationalVector::zero(self.dim())
    }

    /// Pairing `(β, α∨)` as an integer; both arguments must be roots.
    pub fn pairing(&self, beta: &RationalVector, alpha: &RationalVector) -> i64 {
        let p = beta.dot(&coroot_of(alpha));
        debug_assert!(p.is_integer());
        p.to_integer()
    }
}

/// Every supported algebra with rank at most `max_rank` (exceptional ones
/// included when their rank fits).
pub fn algebras_up_to(max_rank: usize) -> Vec<AlgebraFamily> {
    let mut out = Vec::new();
    for family in [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ] {
        for rank in 1..=max_rank {
            if let Ok(a) = AlgebraFamily::new(family, rank) {
                out.push(a);
            }
        }
    }
    out
}
