//! Explicit embeddings of the nine families in an orthonormal basis.
//!
//! Normalization: short roots have squared length 2, except in `B_r` and
//! `F_4` where the long roots do.

use num_traits::Zero;

use super::label::{RootLabel, Sign};
use super::{AlgebraFamily, Family};
use crate::rational::{frac, q, RationalVector, Q};

pub(super) struct Embedding {
    pub simple: Vec<RationalVector>,
    pub positive: Vec<(RootLabel, RationalVector)>,
    pub theta: RationalVector,
}

fn e(n: usize, i: usize) -> RationalVector {
    RationalVector::unit(n, i)
}

/// `a e_i + b e_j`.
fn pair(n: usize, i: usize, a: i64, j: usize, b: i64) -> RationalVector {
    let mut v = RationalVector::zero(n);
    v[i - 1] += q(a);
    v[j - 1] += q(b);
    v
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

fn minus_count(signs: &[Sign]) -> usize {
    signs.iter().filter(|s| **s == Sign::Minus).count()
}

/// `½(Σ s_j e_j) + ½ tail`, with the sign slots on the leading coordinates.
fn half_signed(n: usize, signs: &[Sign], tail: &[(usize, i64)]) -> RationalVector {
    let mut v = RationalVector::zero(n);
    for (k, s) in signs.iter().enumerate() {
        v[k] = frac(s.value(), 2);
    }
    for &(i, c) in tail {
        v[i - 1] = frac(c, 2);
    }
    v
}

fn classical_pairs(n: usize, upto: usize, minus: (i64, i64), out: &mut Vec<(RootLabel, RationalVector)>) {
    for i in 1..=upto {
        for j in i + 1..=upto {
            out.push((RootLabel::PairMinus(i, j), pair(n, i, minus.0, j, minus.1)));
            out.push((RootLabel::PairPlus(i, j), pair(n, i, 1, j, 1)));
        }
    }
}

pub(super) fn embed(algebra: AlgebraFamily) -> Embedding {
    let r = algebra.rank();
    let n = algebra.ambient_dim();
    let mut positive = Vec::new();
    let (simple, theta) = match algebra.family() {
        Family::A => {
            for i in 1..=r + 1 {
                for j in i + 1..=r + 1 {
                    positive.push((RootLabel::PairMinus(i, j), pair(n, i, 1, j, -1)));
                }
            }
            let simple = (1..=r).map(|i| pair(n, i, 1, i + 1, -1)).collect();
            (simple, pair(n, 1, 1, r + 1, -1))
        }
        Family::B | Family::C => {
            let diag = if algebra.family() == Family::B { 1 } else { 2 };
            classical_pairs(n, r, (1, -1), &mut positive);
            for i in 1..=r {
                positive.push((RootLabel::Diag(i), e(n, i).scale(q(diag))));
            }
            let mut simple: Vec<_> = (1..r).map(|i| pair(n, i, 1, i + 1, -1)).collect();
            simple.push(e(n, r).scale(q(diag)));
            let theta = if diag == 1 {
                pair(n, 1, 1, 2, 1)
            } else {
                e(n, 1).scale(q(2))
            };
            (simple, theta)
        }
        Family::D => {
            classical_pairs(n, r, (1, -1), &mut positive);
            let mut simple: Vec<_> = (1..r).map(|i| pair(n, i, 1, i + 1, -1)).collect();
            simple.push(pair(n, r - 1, 1, r, 1));
            (simple, pair(n, 1, 1, 2, 1))
        }
        Family::E => {
            let (slots, tail, odd): (usize, &[(usize, i64)], bool) = match r {
                6 => (5, &[(6, -1), (7, -1), (8, 1)], false),
                7 => (6, &[(7, -1), (8, 1)], true),
                _ => (7, &[(8, 1)], false),
            };
            let pairs_upto = match r {
                6 => 5,
                7 => 6,
                _ => 8,
            };
            classical_pairs(n, pairs_upto, (-1, 1), &mut positive);
            if r == 7 {
                positive.push((RootLabel::PairMinus(7, 8), pair(n, 7, -1, 8, 1)));
            }
            for signs in all_signs(slots) {
                if (minus_count(&signs) % 2 == 1) == odd {
                    let v = half_signed(n, &signs, tail);
                    positive.push((RootLabel::SignVector(signs), v));
                }
            }
            // α_i = -e_i + e_{i+1} for i ≤ r-2, then the spinor root, then e_1 + e_2
            let mut simple: Vec<_> = (1..=r - 2).map(|i| pair(n, i, -1, i + 1, 1)).collect();
            let mut spinor = RationalVector::zero(n);
            spinor[0] = frac(1, 2);
            for j in 2..=7 {
                spinor[j - 1] = frac(-1, 2);
            }
            spinor[7] = frac(1, 2);
            simple.push(spinor);
            simple.push(pair(n, 1, 1, 2, 1));
            let theta = match r {
                6 => half_signed(n, &[Sign::Plus; 5], tail),
                7 => pair(n, 7, -1, 8, 1),
                _ => pair(n, 7, 1, 8, 1),
            };
            (simple, theta)
        }
        Family::F => {
            for signs in all_signs(3) {
                let mut v = RationalVector::zero(n);
                v[0] = frac(1, 2);
                for (k, s) in signs.iter().enumerate() {
                    v[k + 1] = frac(s.value(), 2);
                }
                positive.push((RootLabel::SignVector(signs), v));
            }
            classical_pairs(n, 4, (1, -1), &mut positive);
            for i in 1..=4 {
                positive.push((RootLabel::Diag(i), e(n, i)));
            }
            let simple = vec![
                RationalVector::new(vec![frac(1, 2), frac(-1, 2), frac(-1, 2), frac(-1, 2)]),
                pair(n, 2, 1, 3, -1),
                pair(n, 3, 1, 4, -1),
                e(n, 4),
            ];
            (simple, pair(n, 1, 1, 2, 1))
        }
        Family::G => {
            let a1 = RationalVector::from_integers(&[1, -1, 0]);
            let a2 = RationalVector::from_integers(&[-2, 1, 1]);
            positive.push((RootLabel::Simple(1), a1.clone()));
            positive.push((RootLabel::Simple(2), a2.clone()));
            positive.push((RootLabel::PairMinus(1, 3), pair(n, 1, -1, 3, 1)));
            positive.push((RootLabel::PairMinus(2, 3), pair(n, 2, -1, 3, 1)));
            positive.push((
                RootLabel::sign_vector("+-+"),
                RationalVector::from_integers(&[1, -2, 1]),
            ));
            let theta = RationalVector::from_integers(&[-1, -1, 2]);
            positive.push((RootLabel::sign_vector("--+"), theta.clone()));
            (vec![a1, a2], theta)
        }
    };
    debug_assert!(positive.iter().all(|(_, v)| !v.is_zero()));
    debug_assert!(!theta.coords().iter().all(Q::is_zero));
    positive.sort_by(|a, b| a.0.cmp(&b.0));
    Embedding {
        simple,
        positive,
        theta,
    }
}
