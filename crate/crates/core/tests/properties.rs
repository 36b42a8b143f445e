use std::sync::OnceLock;

use proptest::prelude::*;

use affine_weyl::affine::{
    affine_reflect, canonical_action, canonical_of_letters, canonical_of_word, decompose_affine, evaluate_word,
    translate,
};
use affine_weyl::rational::{frac, q};
use affine_weyl::rootsys::{algebras_up_to, coroot_of};
use affine_weyl::weyl::{reflect, FiniteElement};
use affine_weyl::{AffineRoot, AffineWeight, CanonicalAffineElement, RationalVector, RootSystem, Token, Q};

const CASES: u32 = 256;

fn systems() -> &'static [RootSystem] {
    static ALL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    ALL.get_or_init(|| algebras_up_to(8).into_iter().map(RootSystem::new).collect())
}

fn small_systems() -> &'static [RootSystem] {
    static SMALL: OnceLock<Vec<RootSystem>> = OnceLock::new();
    SMALL.get_or_init(|| algebras_up_to(4).into_iter().map(RootSystem::new).collect())
}

fn pick(list: &[RootSystem], i: usize) -> &RootSystem {
    &list[i % list.len()]
}

fn root(rs: &RootSystem, i: usize, negative: bool) -> RationalVector {
    let v = rs.positive_roots()[i % rs.positive_roots().len()].1.clone();
    if negative {
        -&v
    } else {
        v
    }
}

fn rational() -> impl Strategy<Value = Q> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn weight(dim: usize) -> impl Strategy<Value = AffineWeight> {
    (
        proptest::collection::vec(rational(), dim),
        prop_oneof![Just(0i64), -4i64..=4],
        rational(),
    )
        .prop_map(|(lambda, k, m)| AffineWeight::new(RationalVector::new(lambda), q(k), m))
}

/// A root system index together with a weight of matching dimension.
fn system_and_weight(list: fn() -> &'static [RootSystem]) -> impl Strategy<Value = (usize, AffineWeight)> {
    (0..list().len()).prop_flat_map(move |i| (Just(i), weight(list()[i].dim())))
}

fn token(rank: usize) -> impl Strategy<Value = (u8, usize, bool, i64, Vec<i64>)> {
    (
        0u8..4,
        0usize..1000,
        any::<bool>(),
        -3i64..=3,
        proptest::collection::vec(-2i64..=2, rank),
    )
}

fn build_token(rs: &RootSystem, raw: &(u8, usize, bool, i64, Vec<i64>)) -> Token {
    let (kind, idx, neg, n, coroot) = raw;
    match kind {
        0 => Token::Simple(idx % (rs.rank() + 1)),
        1 => Token::Named(rs.lookup_label(&root(rs, *idx, *neg)).unwrap()),
        2 => Token::Reflection {
            alpha: root(rs, *idx, *neg),
            n: *n,
        },
        _ => Token::Translation {
            coroot: coroot.clone(),
            power: *n,
        },
    }
}

/// `σ_{(α,0,n)}` applied to the affine root `(β,0,m)`.
fn act_on_root(alpha: &RationalVector, n: i64, beta: &RationalVector, m: i64) -> (RationalVector, i64) {
    let c = beta.dot(&coroot_of(alpha));
    let c = c.to_integer();
    (beta - &alpha.scale(q(c)), m - c * n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn affine_reflection_is_an_involution((s, w) in system_and_weight(systems), i in 0usize..1000, neg: bool, n in -4i64..=4) {
        let rs = pick(systems(), s);
        let r = AffineRoot::real(rs, root(rs, i, neg), n).unwrap();
        let once = affine_reflect(rs, &r, &w).unwrap();
        prop_assert_eq!(affine_reflect(rs, &r, &once).unwrap(), w);
    }

    #[test]
    fn classical_reflection_is_an_involution((s, w) in system_and_weight(systems), i in 0usize..1000) {
        let rs = pick(systems(), s);
        let a = root(rs, i, false);
        let once = reflect(rs, &a, &w.lambda).unwrap();
        prop_assert_eq!(reflect(rs, &a, &once).unwrap(), w.lambda);
    }

    #[test]
    fn level_and_quadratic_form_are_conserved((s, w) in system_and_weight(systems), i in 0usize..1000, neg: bool, n in -4i64..=4) {
        let rs = pick(systems(), s);
        let r = AffineRoot::real(rs, root(rs, i, neg), n).unwrap();
        let out = affine_reflect(rs, &r, &w).unwrap();
        prop_assert_eq!(out.k, w.k);
        prop_assert_eq!(out.norm2(), w.norm2());
    }

    #[test]
    fn classical_conjugation(s in 0usize..64, i in 0usize..1000, j in 0usize..1000) {
        let rs = pick(systems(), s);
        let a = root(rs, i, false);
        let b = root(rs, j, false);
        let sa = FiniteElement::reflection(&a);
        let image = reflect(rs, &a, &b).unwrap();
        let lhs = FiniteElement::reflection(&image);
        let rhs = sa.compose(&FiniteElement::reflection(&b)).compose(&sa);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn affine_conjugation(s in 0usize..64, i in 0usize..1000, j in 0usize..1000, n in -3i64..=3, m in -3i64..=3, neg: bool) {
        let rs = pick(systems(), s);
        let a = root(rs, i, neg);
        let b = root(rs, j, false);
        let (image, p) = act_on_root(&a, n, &b, m);
        prop_assert!(rs.is_root(&image));
        let sa = CanonicalAffineElement::reflection(&a, n);
        let lhs = CanonicalAffineElement::reflection(&image, p);
        let rhs = sa.compose(&CanonicalAffineElement::reflection(&b, m)).compose(&sa);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translations_add_and_commute(
        (s, w) in system_and_weight(systems),
        x in proptest::collection::vec(-3i64..=3, 8),
        y in proptest::collection::vec(-3i64..=3, 8),
        p in -3i64..=3,
    ) {
        let rs = pick(systems(), s);
        let mu = rs.coroot_from_coords(&x[..rs.rank()]);
        let nu = rs.coroot_from_coords(&y[..rs.rank()]);
        let sum = &mu + &nu;
        let mu_then_nu = translate(rs, &nu, p, &translate(rs, &mu, p, &w).unwrap()).unwrap();
        let nu_then_mu = translate(rs, &mu, p, &translate(rs, &nu, p, &w).unwrap()).unwrap();
        prop_assert_eq!(&mu_then_nu, &nu_then_mu);
        prop_assert_eq!(&mu_then_nu, &translate(rs, &sum, p, &w).unwrap());
        // powers add as well
        let twice = translate(rs, &mu, p, &translate(rs, &mu, 1, &w).unwrap()).unwrap();
        prop_assert_eq!(twice, translate(rs, &mu, p + 1, &w).unwrap());
    }

    #[test]
    fn translation_conjugation((s, w) in system_and_weight(small_systems), i in 0usize..1000, j in 0usize..1000) {
        let rs = pick(small_systems(), s);
        let a = root(rs, i, false);
        let b = root(rs, j, false);
        let image = reflect(rs, &a, &coroot_of(&b)).unwrap();
        let lhs = CanonicalAffineElement::translation(image.clone());
        let sa = CanonicalAffineElement::reflection(&a, 0);
        let rhs = sa.compose(&CanonicalAffineElement::translation(coroot_of(&b))).compose(&sa);
        prop_assert_eq!(&lhs, &rhs);
        // and on weights, through the operators themselves
        let direct = translate(rs, &image, 1, &w).unwrap();
        let sa_root = AffineRoot::real(rs, a.clone(), 0).unwrap();
        let conj = affine_reflect(rs, &sa_root, &translate(rs, &coroot_of(&b), 1, &affine_reflect(rs, &sa_root, &w).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(direct, conj);
    }

    #[test]
    fn normal_form_action_matches_step_evaluation(
        (s, w) in system_and_weight(systems),
        raw in proptest::collection::vec(token(8), 0..=12),
    ) {
        let rs = pick(systems(), s);
        let tokens: Vec<Token> = raw
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.4.truncate(rs.rank());
                build_token(rs, &t)
            })
            .collect();
        let e = canonical_of_word(rs, &tokens).unwrap();
        prop_assert_eq!(canonical_action(rs, &e, &w).unwrap(), evaluate_word(rs, &tokens, &w).unwrap());
    }

    #[test]
    fn normal_form_action_at_level_zero(
        s in 0usize..64,
        raw in proptest::collection::vec(token(8), 0..=12),
        lambda in proptest::collection::vec(rational(), 9),
        m in rational(),
    ) {
        let rs = pick(systems(), s);
        let w = AffineWeight::new(RationalVector::new(lambda[..rs.dim()].to_vec()), q(0), m);
        let tokens: Vec<Token> = raw
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.4.truncate(rs.rank());
                build_token(rs, &t)
            })
            .collect();
        let e = canonical_of_word(rs, &tokens).unwrap();
        let out = evaluate_word(rs, &tokens, &w).unwrap();
        // translations act trivially on the finite part at k = 0
        prop_assert_eq!(&out.lambda, &e.finite_part().apply(&w.lambda));
        prop_assert_eq!(canonical_action(rs, &e, &w).unwrap(), out);
    }

    #[test]
    fn decomposition_is_sound(s in 0usize..64, i in 0usize..1000, neg: bool, n in -3i64..=3) {
        let rs = pick(small_systems(), s);
        let a = root(rs, i, neg);
        let word = decompose_affine(rs, &AffineRoot::real(rs, a.clone(), n).unwrap()).unwrap();
        prop_assert_eq!(canonical_of_letters(rs, &word).unwrap(), CanonicalAffineElement::reflection(&a, n));
    }

    #[test]
    fn pairings_are_crystallographic(s in 0usize..64, i in 0usize..1000, j in 0usize..1000) {
        let rs = pick(systems(), s);
        let a = root(rs, i, false);
        let b = root(rs, j, false);
        let two_dot = q(2) * a.dot(&b);
        let (ab, ba) = (two_dot / a.norm2(), two_dot / b.norm2());
        prop_assert!(ab.is_integer() && ba.is_integer());
        prop_assert_eq!(rs.pairing(&b, &a), ab.to_integer());
        let (ab, ba) = (ab.to_integer(), ba.to_integer());
        prop_assert!((-3..=3).contains(&ab));
        prop_assert!((0..=4).contains(&(ab * ba)));
        if a != b {
            prop_assert!(ab * ba <= 3);
        }
    }
}
