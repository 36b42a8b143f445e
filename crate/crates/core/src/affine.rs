//! Affine weights, real affine roots, affine reflections and translation
//! operators, and the decomposition of affine reflections into words over
//! `σ_0, ..., σ_r`.
//!
//! Every element of the affine Weyl group is normalized to `w ∘ t_μ` with `w`
//! a finite Weyl element and `μ` in the coroot lattice. Two words are equal
//! as group elements exactly when their normal forms agree, which is the
//! equality used throughout the tests and the table verifier.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{RationalVector, Q};
use crate::rootsys::{coroot_of, RootLabel, RootSystem, SignedLabel};
use crate::weyl::{decompose_classical, free_cancel, reflect_unchecked, write_word, FiniteElement};

/// `Λ = (λ, k, m)`: finite part, central value and grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::json::WeightJson", into = "crate::json::WeightJson")]
pub struct AffineWeight {
    pub lambda: RationalVector,
    pub k: Q,
    pub m: Q,
}

impl AffineWeight {
    pub fn new(lambda: RationalVector, k: Q, m: Q) -> Self {
        Self { lambda, k, m }
    }

    /// `λ² + 2km`.
    pub fn norm2(&self) -> Q {
        self.lambda.norm2() + Q::from_integer(2) * self.k * self.m
    }
}

/// `(Λ, Λ') = λ·λ' + k m' + k' m`.
pub fn affine_scalar_product(a: &AffineWeight, b: &AffineWeight) -> Result<Q> {
    a.lambda.check_dim(&b.lambda)?;
    Ok(a.lambda.dot(&b.lambda) + a.k * b.m + b.k * a.m)
}

/// An affine root: real `(α, 0, n)` or imaginary `nδ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AffineRoot {
    Real { alpha: RationalVector, n: i64 },
    Imaginary { n: i64 },
}

impl AffineRoot {
    pub fn real(rs: &RootSystem, alpha: RationalVector, n: i64) -> Result<Self> {
        rs.require_root(&alpha)?;
        Ok(AffineRoot::Real { alpha, n })
    }

    pub fn imaginary(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotARoot("0δ is not a root".into()));
        }
        Ok(AffineRoot::Imaginary { n })
    }

    /// `α̂_0 = (-θ, 0, 1)`.
    pub fn simple_zero(rs: &RootSystem) -> Self {
        AffineRoot::Real {
            alpha: -rs.theta(),
            n: 1,
        }
    }

    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        match self {
            AffineRoot::Real { alpha, n } => *n > 0 || (*n == 0 && rs.is_positive_root(alpha)),
            AffineRoot::Imaginary { n } => *n > 0,
        }
    }
}

fn grade_shift(lambda: &RationalVector, k: Q, mu: &RationalVector, n: i64) -> Q {
    // m + (λ² - (λ + nkμ)²)/(2k), expanded so that k = 0 is allowed
    let n = Q::from_integer(n);
    -(n * lambda.dot(mu)) - n * n * k * mu.norm2() / Q::from_integer(2)
}

/// Affine reflection in a real root.
pub fn affine_reflect(rs: &RootSystem, root: &AffineRoot, weight: &AffineWeight) -> Result<AffineWeight> {
    let AffineRoot::Real { alpha, n } = root else {
        return Err(Error::ImaginaryRootReflection);
    };
    rs.require_root(alpha)?;
    rs.check_dim(&weight.lambda)?;
    Ok(reflect_weight(alpha, *n, weight))
}

fn reflect_weight(alpha: &RationalVector, n: i64, w: &AffineWeight) -> AffineWeight {
    let coroot = coroot_of(alpha);
    let shifted = w.lambda.add_scaled(Q::from_integer(n) * w.k, &coroot);
    AffineWeight {
        lambda: reflect_unchecked(alpha, &shifted),
        k: w.k,
        m: w.m + grade_shift(&w.lambda, w.k, &coroot, n),
    }
}

/// `t_μ^power(Λ)` for `μ` in the coroot lattice.
pub fn translate(rs: &RootSystem, mu: &RationalVector, power: i64, weight: &AffineWeight) -> Result<AffineWeight> {
    rs.check_dim(mu)?;
    rs.check_dim(&weight.lambda)?;
    if rs.coroot_lattice_coords(mu).is_none() {
        return Err(Error::NotInCorootLattice(mu.to_string()));
    }
    Ok(translate_weight(mu, power, weight))
}

fn translate_weight(mu: &RationalVector, power: i64, w: &AffineWeight) -> AffineWeight {
    AffineWeight {
        lambda: w.lambda.add_scaled(Q::from_integer(power) * w.k, mu),
        k: w.k,
        m: w.m + grade_shift(&w.lambda, w.k, mu, power),
    }
}

/// One letter of an affine word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    /// `σ_i` for `0 ≤ i ≤ r`; `σ_0` is the reflection in `(-θ, 0, 1)`.
    Simple(usize),
    /// Classical reflection `σ_α` in a named root.
    Named(SignedLabel),
    /// `σ_{(α, 0, n)}`.
    Reflection { alpha: RationalVector, n: i64 },
    /// `t_μ^power`, with `μ` given by its coordinates on the simple coroots.
    Translation { coroot: Vec<i64>, power: i64 },
}

impl Token {
    pub fn named(label: RootLabel) -> Self {
        Token::Named(SignedLabel { label, negative: false })
    }

    pub fn theta() -> Self {
        Self::named(RootLabel::Theta)
    }

    /// Inverse of the token; reflections are involutions.
    pub fn inverse(&self) -> Self {
        match self {
            Token::Translation { coroot, power } => Token::Translation {
                coroot: coroot.clone(),
                power: -power,
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Simple(i) => write!(f, "s{i}"),
            Token::Named(l) => {
                let sign = if l.negative { "-" } else { "" };
                write!(f, "s[{sign}{}]", l.label)
            }
            Token::Reflection { alpha, n } => write!(f, "s({alpha},0,{n})"),
            Token::Translation { coroot, power } => write!(f, "t{coroot:?}^{power}"),
        }
    }
}

/// Inverse of a word: reversed, each token inverted.
pub fn invert_word(tokens: &[Token]) -> Vec<Token> {
    tokens.iter().rev().map(Token::inverse).collect()
}

/// A fully expanded word over `σ_0, ..., σ_r`, rightmost acting first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "crate::json::WordJson", into = "crate::json::WordJson")]
pub struct AffineWord {
    letters: Vec<usize>,
}

impl AffineWord {
    pub fn new(rs: &RootSystem, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l > rs.rank()) {
            return Err(Error::NotARoot(format!(
                "no affine simple root {bad} in {}",
                rs.algebra()
            )));
        }
        Ok(Self { letters })
    }

    pub(crate) fn from_letters(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.letters.iter().map(|&l| Token::Simple(l)).collect()
    }
}

impl fmt::Display for AffineWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters)
    }
}

/// Normal form `w ∘ t_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalAffineElement {
    w: FiniteElement,
    mu: RationalVector,
}

impl CanonicalAffineElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            w: FiniteElement::identity(dim),
            mu: RationalVector::zero(dim),
        }
    }

    pub fn translation(mu: RationalVector) -> Self {
        Self {
            w: FiniteElement::identity(mu.dim()),
            mu,
        }
    }

    /// `σ_{(α,0,n)} = σ_α ∘ t_{α∨}^n`.
    pub fn reflection(alpha: &RationalVector, n: i64) -> Self {
        Self {
            w: FiniteElement::reflection(alpha),
            mu: coroot_of(alpha).scale(Q::from_integer(n)),
        }
    }

    pub fn finite_part(&self) -> &FiniteElement {
        &self.w
    }

    pub fn translation_part(&self) -> &RationalVector {
        &self.mu
    }

    pub fn is_identity(&self) -> bool {
        self.mu.is_zero() && self.w.is_identity()
    }

    /// `(w₁, μ₁)(w₂, μ₂) = (w₁w₂, w₂⁻¹μ₁ + μ₂)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            w: self.w.compose(&other.w),
            mu: &other.w.inverse().apply(&self.mu) + &other.mu,
        }
    }

    /// `self <- self ∘ σ_{(α,0,n)}`, done with rank-one updates.
    pub fn then_reflection(&mut self, alpha: &RationalVector, coroot: &RationalVector, n: i64) {
        self.w.then_reflect(alpha);
        let c = self.mu.dot(coroot);
        self.mu.add_scaled_in_place(-c, alpha);
        self.mu.add_scaled_in_place(Q::from_integer(n), coroot);
    }

    pub fn then_translation(&mut self, mu: &RationalVector) {
        self.mu = &self.mu + mu;
    }

    pub fn inverse(&self) -> Self {
        // (w t_μ)⁻¹ = t_{-μ} w⁻¹ = w⁻¹ t_{-w(μ)}
        Self {
            w: self.w.inverse(),
            mu: -&self.w.apply(&self.mu),
        }
    }
}

impl fmt::Display for CanonicalAffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_identity() {
            return write!(f, "t{}", self.mu);
        }
        let m = self.w.matrix();
        write!(f, "[")?;
        for i in 0..m.size() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", RationalVector::new(m.row(i).to_vec()))?;
        }
        write!(f, "] t{}", self.mu)
    }
}

/// Evaluates `w ∘ t_μ` on a weight.
pub fn canonical_action(rs: &RootSystem, e: &CanonicalAffineElement, weight: &AffineWeight) -> Result<AffineWeight> {
    rs.check_dim(&weight.lambda)?;
    rs.check_dim(&e.mu)?;
    let t = translate_weight(&e.mu, 1, weight);
    Ok(AffineWeight {
        lambda: e.w.apply(&t.lambda),
        k: t.k,
        m: t.m,
    })
}

fn check_simple_index(rs: &RootSystem, i: usize) -> Result<()> {
    if i > rs.rank() {
        Err(Error::NotARoot(format!(
            "no affine simple root {i} in {}",
            rs.algebra()
        )))
    } else {
        Ok(())
    }
}

/// The real root `(α, n)` whose reflection a token is, if it is a reflection.
fn token_root(rs: &RootSystem, token: &Token) -> Result<Option<(RationalVector, i64)>> {
    Ok(match token {
        Token::Simple(0) => Some((-rs.theta(), 1)),
        Token::Simple(i) => {
            check_simple_index(rs, *i)?;
            Some((rs.simple_root(*i).clone(), 0))
        }
        Token::Named(label) => Some((rs.resolve_signed(label)?, 0)),
        Token::Reflection { alpha, n } => {
            rs.require_root(alpha)?;
            Some((alpha.clone(), *n))
        }
        Token::Translation { .. } => None,
    })
}

fn token_translation(rs: &RootSystem, coroot: &[i64], power: i64) -> Result<RationalVector> {
    if coroot.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: coroot.len(),
        });
    }
    Ok(rs.coroot_from_coords(coroot).scale(Q::from_integer(power)))
}

/// Normal form of a word, leftmost token outermost.
pub fn canonical_of_word(rs: &RootSystem, word: &[Token]) -> Result<CanonicalAffineElement> {
    let mut acc = CanonicalAffineElement::identity(rs.dim());
    for token in word {
        match token_root(rs, token)? {
            Some((alpha, n)) => acc.then_reflection(&alpha, &coroot_of(&alpha), n),
            None => {
                let Token::Translation { coroot, power } = token else {
                    unreachable!()
                };
                acc.then_translation(&token_translation(rs, coroot, *power)?);
            }
        }
    }
    Ok(acc)
}

/// Normal form of a fully expanded word.
pub fn canonical_of_letters(rs: &RootSystem, word: &AffineWord) -> Result<CanonicalAffineElement> {
    let zero = -rs.theta();
    let zero_coroot = coroot_of(&zero);
    let mut acc = CanonicalAffineElement::identity(rs.dim());
    for &l in word.letters() {
        if l == 0 {
            acc.then_reflection(&zero, &zero_coroot, 1);
        } else {
            check_simple_index(rs, l)?;
            acc.then_reflection(rs.simple_root(l), rs.simple_coroot(l), 0);
        }
    }
    Ok(acc)
}

/// Applies a word to a weight one token at a time, rightmost first.
pub fn evaluate_word(rs: &RootSystem, word: &[Token], weight: &AffineWeight) -> Result<AffineWeight> {
    rs.check_dim(&weight.lambda)?;
    let mut w = weight.clone();
    for token in word.iter().rev() {
        w = match token_root(rs, token)? {
            Some((alpha, n)) => affine_reflect(rs, &AffineRoot::Real { alpha, n }, &w)?,
            None => {
                let Token::Translation { coroot, power } = token else {
                    unreachable!()
                };
                translate(rs, &token_translation(rs, coroot, 1)?, *power, &w)?
            }
        };
    }
    Ok(w)
}

fn named(rs: &RootSystem, alpha: &RationalVector) -> Token {
    let label = rs
        .canonical_label(alpha)
        .cloned()
        .expect("caller passes a positive root");
    Token::named(label)
}

/// `t_{α∨} = σ_0 ∘ σ_{θ-α} ∘ σ_0 ∘ σ_α` for a positive root with `(θ∨, α) = 1`.
pub fn lemma_word(rs: &RootSystem, alpha: &RationalVector) -> Result<Vec<Token>> {
    rs.check_dim(alpha)?;
    if !rs.is_positive_root(alpha) {
        return Err(Error::NotARoot(format!("{alpha} is not a positive root")));
    }
    let pairing = rs.theta_pairing(alpha);
    if !pairing.is_one() {
        return Err(Error::LemmaConditionFailed(pairing.to_string()));
    }
    let rest = rs.theta() - alpha;
    debug_assert!(rs.is_positive_root(&rest));
    Ok(vec![
        Token::Simple(0),
        named(rs, &rest),
        Token::Simple(0),
        named(rs, alpha),
    ])
}

/// Deepest nesting of `β∨ = θ∨ - γ₁∨ - γ₂∨` rewrites tried before giving up.
pub const MAX_TRANSLATION_DEPTH: usize = 3;

/// `t_{θ∨} = σ_0 ∘ σ_θ`.
fn theta_translation() -> Vec<Token> {
    vec![Token::Simple(0), Token::theta()]
}

/// A word over `σ_0` and named classical reflections equal to `t_{β∨}` for a
/// positive root `β`.
fn coroot_translation_word(rs: &RootSystem, beta: &RationalVector, depth: usize) -> Result<Vec<Token>> {
    if beta == rs.theta() {
        return Ok(theta_translation());
    }
    if rs.theta_pairing(beta).is_one() {
        return lemma_word(rs, beta);
    }
    if depth >= MAX_TRANSLATION_DEPTH {
        return Err(Error::ConstructionFailed(format!(
            "depth limit reached for t of {beta}"
        )));
    }
    // β∨ = θ∨ - γ₁∨ [- γ₂∨]; t_{β∨} = t_{γ₁∨}⁻¹ t_{γ₂∨}⁻¹ t_{θ∨}
    let rest = &rs.theta_coroot() - &coroot_of(beta);
    let roots = rs.positive_roots();
    let mut candidates: Vec<Vec<&RationalVector>> = Vec::new();
    for (_, g1) in roots {
        if coroot_of(g1) == rest {
            candidates.push(vec![g1]);
        }
    }
    for (a, (_, g1)) in roots.iter().enumerate() {
        let remainder = &rest - &coroot_of(g1);
        for (_, g2) in &roots[a..] {
            if coroot_of(g2) == remainder {
                candidates.push(vec![g1, g2]);
            }
        }
    }
    let direct = |g: &&RationalVector| *g == rs.theta() || rs.theta_pairing(g).is_one();
    candidates.sort_by_key(|c| !c.iter().all(direct));
    let mut last_err = None;
    for gammas in candidates {
        let mut word = Vec::new();
        let mut failed = false;
        for g in &gammas {
            match coroot_translation_word(rs, g, depth + 1) {
                Ok(w) => word.extend(invert_word(&w)),
                Err(e) => {
                    last_err = Some(e);
                    failed = true;
                    break;
                }
            }
        }
        if !failed {
            word.extend(theta_translation());
            return Ok(cancel_tokens(word));
        }
    }
    Err(last_err.unwrap_or_else(|| Error::ConstructionFailed(format!("no representation of the coroot of {beta}"))))
}

/// Removes adjacent pairs of equal involutive tokens.
fn cancel_tokens(tokens: Vec<Token>) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    for t in tokens {
        let involutive = !matches!(t, Token::Translation { .. });
        if involutive && out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// A word over `σ_0` and classical reflections equal to `t_{α_i∨}`.
pub fn fundamental_translation_word(rs: &RootSystem, i: usize) -> Result<Vec<Token>> {
    if i == 0 || i > rs.rank() {
        return Err(Error::NotARoot(format!("no simple root {i} in {}", rs.algebra())));
    }
    coroot_translation_word(rs, rs.simple_root(i), 0)
}

/// The fundamental-translation word printed in the tables for `α_i`.
pub fn fixture_translation_word(rs: &RootSystem, i: usize) -> Result<Vec<Token>> {
    crate::tables::fixtures().translation_word(rs, i)
}

/// Expands named reflections and translations into fundamental letters.
///
/// Translation tokens are expanded through the constructed fundamental
/// translations, affine reflection tokens through [`decompose_affine`].
pub fn expand_word(rs: &RootSystem, tokens: &[Token]) -> Result<AffineWord> {
    AffineDecomposer::new(rs)?.expand(tokens)
}

/// Decomposes a real affine reflection into `σ_0, ..., σ_r`.
pub fn decompose_affine(rs: &RootSystem, root: &AffineRoot) -> Result<AffineWord> {
    AffineDecomposer::new(rs)?.decompose(root)
}

/// Holds the expanded fundamental translations of one root system so that
/// many decompositions can share them.
#[derive(Clone, Debug)]
pub struct AffineDecomposer<'a> {
    rs: &'a RootSystem,
    translations: Vec<Vec<usize>>,
}

impl<'a> AffineDecomposer<'a> {
    pub fn new(rs: &'a RootSystem) -> Result<Self> {
        let mut translations = Vec::with_capacity(rs.rank());
        for i in 1..=rs.rank() {
            let tokens = fundamental_translation_word(rs, i)?;
            translations.push(expand_reflections(rs, &tokens)?);
        }
        Ok(Self { rs, translations })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// Expanded word for `t_{α_i∨}`.
    pub fn translation_letters(&self, i: usize) -> &[usize] {
        &self.translations[i - 1]
    }

    fn translation_block(&self, coeffs: &[i64], power: i64) -> Vec<usize> {
        // the t_{α_i∨} commute, so the order inside a block is free
        let mut block = Vec::new();
        for (i, &c) in coeffs.iter().enumerate() {
            let (count, word) = (c.abs(), &self.translations[i]);
            for _ in 0..count {
                if c > 0 {
                    block.extend_from_slice(word);
                } else {
                    block.extend(word.iter().rev());
                }
            }
        }
        if power < 0 {
            block.reverse();
        }
        let mut out = Vec::with_capacity(block.len() * power.unsigned_abs() as usize);
        for _ in 0..power.abs() {
            out.extend_from_slice(&block);
        }
        out
    }

    pub fn decompose(&self, root: &AffineRoot) -> Result<AffineWord> {
        let AffineRoot::Real { alpha, n } = root else {
            return Err(Error::ImaginaryRootReflection);
        };
        self.rs.require_root(alpha)?;
        // σ_{(-α,0,n)} = σ_α ∘ t_{α∨}^{-n}
        let (positive, power) = if self.rs.is_positive_root(alpha) {
            (alpha.clone(), *n)
        } else {
            (-alpha, -*n)
        };
        let coeffs = self.rs.dual_expansion(&coroot_of(&positive))?;
        let mut letters = decompose_classical(self.rs, &positive)?.into_letters();
        letters.extend(self.translation_block(&coeffs, power));
        Ok(AffineWord::from_letters(free_cancel(letters)))
    }

    pub fn expand(&self, tokens: &[Token]) -> Result<AffineWord> {
        let mut letters = Vec::new();
        for token in tokens {
            match token {
                Token::Translation { coroot, power } => {
                    if coroot.len() != self.rs.rank() {
                        return Err(Error::DimensionMismatch {
                            expected: self.rs.rank(),
                            found: coroot.len(),
                        });
                    }
                    letters.extend(self.translation_block(coroot, *power));
                }
                Token::Reflection { alpha, n } => {
                    let root = AffineRoot::real(self.rs, alpha.clone(), *n)?;
                    letters.extend_from_slice(self.decompose(&root)?.letters());
                }
                other => letters.extend(expand_reflections(self.rs, std::slice::from_ref(other))?),
            }
        }
        Ok(AffineWord::from_letters(free_cancel(letters)))
    }
}

/// Expands `σ_i` and named reflections; translations are not allowed here.
fn expand_reflections(rs: &RootSystem, tokens: &[Token]) -> Result<Vec<usize>> {
    let mut letters = Vec::new();
    for token in tokens {
        match token {
            Token::Simple(i) => {
                check_simple_index(rs, *i)?;
                letters.push(*i);
            }
            Token::Named(label) => {
                let v = rs.resolve_signed(label)?;
                letters.extend(decompose_classical(rs, &v)?.into_letters());
            }
            Token::Reflection { alpha, n: 0 } => {
                letters.extend(decompose_classical(rs, alpha)?.into_letters());
            }
            other => {
                return Err(Error::ConstructionFailed(format!(
                    "cannot expand {other} without a decomposer"
                )))
            }
        }
    }
    Ok(free_cancel(letters))
}

/// `κ̃ = 2k/θ²`.
pub fn normalized_level(rs: &RootSystem, k: Q) -> Q {
    rs.normalized_level(k)
}

pub fn theta_pairing_simples(rs: &RootSystem) -> Vec<usize> {
    rs.theta_pairing_simples()
}

/// Decomposes and checks the result against the normal form of `σ_root`;
/// fails instead of returning an unverified word.
pub fn decompose_verified(rs: &RootSystem, root: &AffineRoot) -> Result<AffineWord> {
    let word = decompose_affine(rs, root)?;
    let AffineRoot::Real { alpha, n } = root else {
        unreachable!()
    };
    if canonical_of_letters(rs, &word)? != CanonicalAffineElement::reflection(alpha, *n) {
        return Err(Error::Unverified(word.to_string()));
    }
    Ok(word)
}
