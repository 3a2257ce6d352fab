//! Cross-module checks: the abstract word model against the matrix groups,
//! key-level subgroup inclusions, and property tests over random inputs.

use grouplab::certify::{coset_form_to_matrix, table_matches_matrices};
use grouplab::matgroup::{build_g8_generators, close_group, g8_gen_a};
use grouplab::wordgroup::{abstract_order, coset_table, CosetForm, Gen, Presentation, Word};
use proptest::prelude::*;

#[test]
fn word_model_is_the_matrix_group_for_l1_and_l2() {
    for l in [1u32, 2] {
        let k = 4 + 8 * l;
        let gens = build_g8_generators(l).unwrap();
        let group = close_group(&gens).unwrap();
        let r1 = gens.generators[0].mat.clone();
        let a = g8_gen_a(&gens).unwrap().mat;
        let pres = Presentation::new(k).unwrap();

        assert_eq!(abstract_order(&pres), group.order());

        // all normal forms map to distinct group elements
        let mut seen = std::collections::BTreeSet::new();
        for c in 0..8u8 {
            for t in 0..2 * k {
                let m = coset_form_to_matrix(&r1, &a, CosetForm { coset: c, power: t });
                seen.insert(group.find(&m).expect("form maps into the group"));
            }
        }
        assert_eq!(seen.len(), group.order());

        // sampled products respected
        let mut state = 0xabcdef123u64 ^ l as u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let x = CosetForm {
                coset: (next() % 8) as u8,
                power: (next() % (2 * k as u64)) as u32,
            };
            let y = CosetForm {
                coset: (next() % 8) as u8,
                power: (next() % (2 * k as u64)) as u32,
            };
            let lhs = coset_form_to_matrix(&r1, &a, pres.mul(x, y));
            let rhs = coset_form_to_matrix(&r1, &a, x) * coset_form_to_matrix(&r1, &a, y);
            assert!(grouplab::linalg::max_dist(&lhs, &rhs) < 1e-9);
        }

        // every suffix-table row classified identically by both routes
        let agree = table_matches_matrices(&pres, &group, &r1, &a).unwrap();
        let total = coset_table(&pres).unwrap().total_rows;
        assert_eq!(
            agree, total,
            "word/matrix classification disagrees for l = {l}"
        );
    }
}

#[test]
fn smaller_k_groups_embed_with_their_keys() {
    // k = 12 divides k = 36, so G(1) embeds in G(4)
    let small = close_group(&build_g8_generators(1).unwrap()).unwrap();
    let big = close_group(&build_g8_generators(4).unwrap()).unwrap();
    assert_eq!(big.order(), 576);
    for i in 0..small.order() {
        assert!(
            big.find(small.element(i)).is_some(),
            "element {i} of G(1) missing from G(4)"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_unit_quaternion_pairs_give_special_orthogonal_matrices(
        raw in prop::array::uniform8(-1.0f64..1.0),
    ) {
        use grouplab::quaternion::{Quaternion, QuaternionPair, quaternion_pair_to_matrix};
        let ln = (raw[0].powi(2) + raw[1].powi(2) + raw[2].powi(2) + raw[3].powi(2)).sqrt();
        let rn = (raw[4].powi(2) + raw[5].powi(2) + raw[6].powi(2) + raw[7].powi(2)).sqrt();
        prop_assume!(ln > 1e-3 && rn > 1e-3);
        let left = Quaternion::new(raw[0] / ln, raw[1] / ln, raw[2] / ln, raw[3] / ln);
        let right = Quaternion::new(raw[4] / rn, raw[5] / rn, raw[6] / rn, raw[7] / rn);
        let p = QuaternionPair::new(left, right).unwrap();
        let m = quaternion_pair_to_matrix(p).unwrap();
        prop_assert!(grouplab::linalg::orth_deviation(&m.mat) < 1e-12);
        prop_assert!((m.mat.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn word_reduction_is_a_congruence(
        u in prop::collection::vec((prop::bool::ANY, -6i64..7), 1..6),
        v in prop::collection::vec((prop::bool::ANY, -6i64..7), 1..6),
    ) {
        let p = Presentation::new(12).unwrap();
        let to_word = |blocks: &[(bool, i64)]| {
            Word(blocks.iter().map(|&(r, e)| (if r { Gen::R } else { Gen::A }, e)).collect())
        };
        let mut uv = u.clone();
        uv.extend_from_slice(&v);
        let lhs = p.reduce_word(&to_word(&uv));
        let rhs = p.mul(p.reduce_word(&to_word(&u)), p.reduce_word(&to_word(&v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coset_form_multiplication_is_associative(
        xs in prop::array::uniform3((0u8..8, 0u32..24)),
    ) {
        let p = Presentation::new(12).unwrap();
        let [a, b, c] = xs.map(|(coset, power)| CosetForm { coset, power });
        prop_assert_eq!(p.mul(p.mul(a, b), c), p.mul(a, p.mul(b, c)));
    }
}
