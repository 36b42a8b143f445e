//! Classical Weyl reflections and their decomposition into fundamental
//! reflections.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{RationalMatrix, RationalVector};
use crate::rootsys::{coroot_of, RootLabel, RootSystem};

/// `σ_α(λ) = λ - (λ, α∨) α`.
pub fn reflect(rs: &RootSystem, alpha: &RationalVector, lambda: &RationalVector) -> Result<RationalVector> {
    rs.require_root(alpha)?;
    rs.check_dim(lambda)?;
    Ok(reflect_unchecked(alpha, lambda))
}

pub(crate) fn reflect_unchecked(alpha: &RationalVector, lambda: &RationalVector) -> RationalVector {
    let c = lambda.dot(&coroot_of(alpha));
    lambda.add_scaled(-c, alpha)
}

/// Removes adjacent equal letters until none remain.
pub fn free_cancel(letters: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for x in letters {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// A word in the fundamental reflections `σ_1, ..., σ_r`, rightmost acting
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "crate::json::WordJson", into = "crate::json::WordJson")]
pub struct SimpleWord {
    letters: Vec<usize>,
}

impl SimpleWord {
    pub fn new(rs: &RootSystem, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > rs.rank()) {
            return Err(Error::NotARoot(format!("no simple root {bad} in {}", rs.algebra())));
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

    pub fn into_letters(self) -> Vec<usize> {
        self.letters
    }
}

impl fmt::Display for SimpleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters)
    }
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, letters: &[usize]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("id");
    }
    for (k, l) in letters.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "s{l}")?;
    }
    Ok(())
}

/// An element of the finite Weyl group as an exact orthogonal matrix on the
/// ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteElement {
    matrix: RationalMatrix,
}

impl FiniteElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: RationalMatrix::identity(dim),
        }
    }

    /// The reflection `σ_α`; does not check that `α` is a root.
    pub fn reflection(alpha: &RationalVector) -> Self {
        let mut e = Self::identity(alpha.dim());
        e.then_reflect(alpha);
        e
    }

    pub fn of_root(rs: &RootSystem, alpha: &RationalVector) -> Result<Self> {
        rs.require_root(alpha)?;
        Ok(Self::reflection(alpha))
    }

    /// Product of the fundamental reflections of a word.
    pub fn of_word(rs: &RootSystem, word: &SimpleWord) -> Result<Self> {
        let mut e = Self::identity(rs.dim());
        for &l in word.letters() {
            if l == 0 || l > rs.rank() {
                return Err(Error::NotARoot(format!("simple index {l}")));
            }
            e.then_reflect(rs.simple_root(l));
        }
        Ok(e)
    }

    /// Product of reflections in arbitrary roots, leftmost first as written.
    pub fn of_roots(rs: &RootSystem, roots: &[RationalVector]) -> Result<Self> {
        let mut e = Self::identity(rs.dim());
        for alpha in roots {
            rs.require_root(alpha)?;
            e.then_reflect(alpha);
        }
        Ok(e)
    }

    /// `self <- self ∘ σ_α`.
    pub fn then_reflect(&mut self, alpha: &RationalVector) {
        self.matrix.mul_reflection_right(alpha, &coroot_of(alpha));
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        self.matrix.apply(v)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `Mᵀ M = 1`.
    pub fn is_orthogonal(&self) -> bool {
        self.matrix.transpose().mul(&self.matrix).is_identity()
    }

    pub fn permutes_roots(&self, rs: &RootSystem) -> bool {
        rs.roots().all(|r| rs.is_root(&self.apply(&r)))
    }
}

/// Decomposes `σ_β` into fundamental reflections.
///
/// Repeatedly conjugates by the first simple root with positive pairing,
/// using `σ_β = σ_α σ_{σ_α(β)} σ_α`; the height drops each step.
pub fn decompose_classical(rs: &RootSystem, beta: &RationalVector) -> Result<SimpleWord> {
    rs.require_root(beta)?;
    let mut beta = if rs.is_positive_root(beta) { beta.clone() } else { -beta };
    let mut prefix = Vec::new();
    let middle = loop {
        if let Some(i) = rs.simple_roots().iter().position(|s| *s == beta) {
            break i + 1;
        }
        let i = (1..=rs.rank())
            .find(|&i| beta.dot(rs.simple_coroot(i)).is_positive())
            .expect("a non-simple positive root pairs positively with some simple root");
        prefix.push(i);
        beta = reflect_unchecked(rs.simple_root(i), &beta);
    };
    let letters = prefix
        .iter()
        .copied()
        .chain(std::iter::once(middle))
        .chain(prefix.iter().rev().copied());
    Ok(SimpleWord::from_letters(free_cancel(letters)))
}

/// The word printed in the classical decomposition tables for `label`,
/// with nested named reflections expanded.
pub fn classical_fixture_word(rs: &RootSystem, label: &RootLabel) -> Result<SimpleWord> {
    crate::tables::fixtures().classical_word(rs, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::RationalVector;

    fn rs(name: &str) -> RootSystem {
        RootSystem::parse(name).unwrap()
    }

    fn v(coords: &[i64]) -> RationalVector {
        RationalVector::from_integers(coords)
    }

    #[test]
    fn reflect_examples() {
        let a2 = rs("A2");
        let a1 = a2.simple_root(1).clone();
        let a2v = a2.simple_root(2).clone();
        assert_eq!(reflect(&a2, &a1, &a1).unwrap(), -&a1);
        assert_eq!(reflect(&a2, &a1, &a2v).unwrap(), v(&[1, 0, -1]));
        // orthogonal weights are fixed
        let ortho = v(&[1, 1, 1]);
        assert_eq!(reflect(&a2, &a1, &ortho).unwrap(), ortho);
        assert!(matches!(reflect(&a2, &v(&[1, 1, 0]), &a1), Err(Error::NotARoot(_))));
        assert!(matches!(
            reflect(&a2, &a1, &v(&[1, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn words_to_matrices() {
        let b3 = rs("B3");
        assert!(FiniteElement::of_word(&b3, &SimpleWord::default())
            .unwrap()
            .is_identity());
        for i in 1..=3 {
            let w = SimpleWord::new(&b3, vec![i, i]).unwrap();
            assert!(FiniteElement::of_word(&b3, &w).unwrap().is_identity());
        }
        assert!(SimpleWord::new(&b3, vec![0]).is_err());
        assert!(SimpleWord::new(&b3, vec![4]).is_err());
    }

    #[test]
    fn g2_theta_word() {
        let g2 = rs("G2");
        let w = SimpleWord::new(&g2, vec![2, 1, 2, 1, 2]).unwrap();
        assert_eq!(
            FiniteElement::of_word(&g2, &w).unwrap(),
            FiniteElement::reflection(g2.theta())
        );
    }

    #[test]
    fn classical_decompositions() {
        // A_r: σ_{α_ij} = σ_i … σ_{j-1} … σ_i
        let a5 = rs("A5");
        let word = decompose_classical(&a5, &v(&[0, 1, 0, 0, -1, 0])).unwrap();
        assert_eq!(word.letters(), &[2, 3, 4, 3, 2]);
        assert_eq!(decompose_classical(&a5, a5.simple_root(3)).unwrap().letters(), &[3]);
        let g2 = rs("G2");
        let a13 = v(&[-1, 0, 1]);
        let word = decompose_classical(&g2, &a13).unwrap();
        let table = SimpleWord::new(&g2, vec![2, 1, 2]).unwrap();
        assert_eq!(
            FiniteElement::of_word(&g2, &word).unwrap(),
            FiniteElement::of_word(&g2, &table).unwrap()
        );
        // negative roots give the same reflection
        assert_eq!(decompose_classical(&g2, &-&a13).unwrap(), word);
        assert!(decompose_classical(&g2, &v(&[1, 1, 1])).is_err());
    }

    #[test]
    fn decomposition_matches_reflection_for_all_small_roots() {
        for algebra in crate::rootsys::algebras_up_to(6) {
            let sys = RootSystem::new(algebra);
            for (_, beta) in sys.positive_roots() {
                let word = decompose_classical(&sys, beta).unwrap();
                assert_eq!(word.len() % 2, 1);
                assert_eq!(
                    FiniteElement::of_word(&sys, &word).unwrap(),
                    FiniteElement::reflection(beta),
                    "{algebra} {beta}"
                );
            }
        }
    }

    #[test]
    fn free_cancellation() {
        assert_eq!(free_cancel([1, 2, 2, 1, 3]), vec![3]);
        assert_eq!(free_cancel([1, 2, 1]), vec![1, 2, 1]);
        assert!(free_cancel([4, 4]).is_empty());
    }

    #[test]
    fn reflections_are_orthogonal_and_permute_roots() {
        let f4 = rs("F4");
        for (_, alpha) in f4.positive_roots() {
            let e = FiniteElement::reflection(alpha);
            assert!(e.is_orthogonal());
            assert!(e.permutes_roots(&f4));
        }
    }
}
