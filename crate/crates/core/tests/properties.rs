use bsk::affine::{aff_compose, aff_invert, j_affine, j_affine_word};
use bsk::haagerup::{cocycle_identity_check, cocycle_inverse_check, witness};
use bsk::tree::{distance, vertex_of, Vertex};
use bsk::words::{britton_reduce, nf_invert, nf_multiply, Letter, NormalForm, Sign, Word};
use bsk::{make_bs, make_matrix_group, GroupSpec, IntMatrix, IntVector};
use proptest::prelude::*;

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::T(Sign::Pos)),
        Just(Letter::T(Sign::Neg)),
        prop::collection::vec(-5i64..=5, n).prop_map(|c| Letter::X(IntVector::from_i64(&c))),
    ]
}

fn word(n: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(n), 0..=max).prop_map(Word::new)
}

fn groups() -> Vec<GroupSpec> {
    vec![
        make_bs(2, 3).unwrap(),
        make_bs(1, 2).unwrap(),
        make_bs(-2, 4).unwrap(),
        make_matrix_group(
            IntMatrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap(),
            IntMatrix::identity(2),
        )
        .unwrap(),
    ]
}

fn group_and_words(k: usize) -> impl Strategy<Value = (GroupSpec, Vec<Word>)> {
    (0..groups().len()).prop_flat_map(move |i| {
        let g = groups()[i].clone();
        let n = g.n();
        prop::collection::vec(word(n, 10), k).prop_map(move |ws| (g.clone(), ws))
    })
}

fn relator(g: &GroupSpec, z: &IntVector) -> Word {
    Word::new(vec![
        Letter::T(Sign::Pos),
        Letter::X(g.b().apply(z).unwrap()),
        Letter::T(Sign::Neg),
        Letter::X(-&g.a().apply(z).unwrap()),
    ])
}

fn nf(w: &Word, g: &GroupSpec) -> NormalForm {
    britton_reduce(w, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inserting_a_relator_is_invisible((g, ws) in group_and_words(2), z in prop::collection::vec(-6i64..=6, 2)) {
        let z = IntVector::from_i64(&z[..g.n()]);
        let plain = ws[0].concat(&ws[1]);
        let padded = ws[0].concat(&relator(&g, &z)).concat(&ws[1]);
        prop_assert_eq!(nf(&plain, &g), nf(&padded, &g));
        prop_assert_eq!(j_affine_word(&plain, &g), j_affine_word(&padded, &g));
    }

    #[test]
    fn reduction_is_a_homomorphism((g, ws) in group_and_words(3)) {
        let (a, b, c) = (nf(&ws[0], &g), nf(&ws[1], &g), nf(&ws[2], &g));
        prop_assert_eq!(nf(&ws[0].concat(&ws[1]), &g), nf_multiply(&a, &b, &g));
        let left = nf_multiply(&nf_multiply(&a, &b, &g), &c, &g);
        let right = nf_multiply(&a, &nf_multiply(&b, &c, &g), &g);
        prop_assert_eq!(left, right);
        prop_assert_eq!(nf(&a.to_word(), &g), a);
    }

    #[test]
    fn inversion_is_an_involution((g, ws) in group_and_words(1)) {
        let a = nf(&ws[0], &g);
        let inv = nf_invert(&a, &g);
        prop_assert_eq!(nf_invert(&inv, &g), a.clone());
        prop_assert!(nf_multiply(&a, &inv, &g).is_identity());
        prop_assert_eq!(nf(&ws[0].inverse(), &g), inv.clone());
        prop_assert_eq!(j_affine(&inv, &g), aff_invert(&j_affine(&a, &g), &g));
    }

    #[test]
    fn affine_map_respects_products((g, ws) in group_and_words(2)) {
        let (a, b) = (nf(&ws[0], &g), nf(&ws[1], &g));
        let lhs = j_affine(&nf_multiply(&a, &b, &g), &g);
        prop_assert_eq!(lhs, aff_compose(&j_affine(&a, &g), &j_affine(&b, &g), &g));
    }

    #[test]
    fn cocycle_identities_hold((g, ws) in group_and_words(2)) {
        let (a, b) = (nf(&ws[0], &g), nf(&ws[1], &g));
        prop_assert!(cocycle_identity_check(&a, &b, &g));
        prop_assert!(cocycle_inverse_check(&a, &g));
        let d = distance(&vertex_of(&a), &vertex_of(&nf_multiply(&a, &b, &g)));
        prop_assert_eq!(d, distance(&Vertex::base(), &vertex_of(&b)));
    }

    #[test]
    fn witness_is_bounded(ws in prop::collection::vec(word(1, 12), 1), s in 0.05f64..3.0) {
        let g = make_bs(1, 2).unwrap();
        let a = nf(&ws[0], &g);
        let psi = witness(&a, s, &g).unwrap();
        prop_assert!(psi > 0.0 && psi <= (-s * a.t_length() as f64).exp() + 1e-15);
        let inv = witness(&nf_invert(&a, &g), s, &g).unwrap();
        prop_assert!((psi - inv).abs() <= 1e-12 * psi.max(1e-300) + 1e-15);
    }
}
