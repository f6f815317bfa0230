mod common;

use common::*;
use mcwc::bounds::{bound_2d, johnson_recursive, k4_packing_number};
use mcwc::code::{blocks_to_code, code_to_blocks, distance, verify_generalized_packing, verify_mcwc};
use mcwc::constructions::*;
use mcwc::designs::alpha_resolvable_bibd;
use mcwc::format::{read_code, write_code};
use mcwc::search::{max_code_search, SearchBudget, SearchStatus};
use mcwc::{Code, Codeword, Shape};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(lengths: &[usize]) -> impl Strategy<Value = Codeword> {
    lengths
        .iter()
        .map(|&n| prop::collection::vec(any::<bool>(), n))
        .collect::<Vec<_>>()
        .prop_map(Codeword::from_parts)
}

fn three_words() -> impl Strategy<Value = (Codeword, Codeword, Codeword)> {
    prop::collection::vec(1usize..=8, 1..=3).prop_flat_map(|l| (word(&l), word(&l), word(&l)))
}

/// A small shape with a greedy code over a shuffled word list.
fn random_code() -> impl Strategy<Value = Code> {
    (small_shape(), any::<u64>()).prop_filter_map("too many words", |(shape, seed)| {
        let mut words = all_words(&shape, 3000)?;
        words.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Some(greedy_code(&shape, &words))
    })
}

/// Words of a shape, a random subset of them, and a claimed distance.
fn unchecked_code() -> impl Strategy<Value = Code> {
    (small_shape(), any::<u64>(), 1usize..=6).prop_filter_map("too many words", |(shape, seed, half)| {
        let mut words = all_words(&shape, 3000)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        words.shuffle(&mut rng);
        words.truncate(1 + seed as usize % 12);
        let shape = shape.with_distance(2 * half).ok()?;
        Code::from_words(shape, words).ok()
    })
}

fn k4_params() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    prop_oneof![
        (4usize..=5).prop_map(|n| (vec![n], vec![4])),
        (3usize..=13, 1usize..=9).prop_map(|(a, b)| (vec![a, b], vec![3, 1])),
        (2usize..=9, 2usize..=9).prop_map(|(a, b)| (vec![a, b], vec![2, 2])),
        (2usize..=8, 1usize..=6, 1usize..=6).prop_map(|(a, b, c)| (vec![a, b, c], vec![2, 1, 1])),
        prop::collection::vec(1usize..=6, 4).prop_map(|l| (l, vec![1; 4])),
    ]
    .prop_flat_map(|(l, k)| (Just(l), Just(k), any::<u64>()))
    .prop_map(|(mut l, mut k, seed)| {
        let mut idx: Vec<usize> = (0..l.len()).collect();
        idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        l = idx.iter().map(|&i| l[i]).collect();
        k = idx.iter().map(|&i| k[i]).collect();
        (l, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn distance_is_a_metric((x, y, z) in three_words()) {
        let d = |a: &Codeword, b: &Codeword| distance(a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(d(&x, &y) == 0, x == y);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }

    #[test]
    fn mismatched_profiles_have_no_distance(a in word(&[3, 2]), b in word(&[2, 3])) {
        prop_assert!(distance(&a, &b).is_err());
    }

    #[test]
    fn codes_and_packings_correspond(code in random_code()) {
        let shape = code.shape().clone();
        prop_assert!(verify_mcwc(&code).passed());
        prop_assert_eq!(read_code(&write_code(&code)).unwrap(), code.clone());
        let Some(t) = shape.strength() else { return Ok(()); };
        let packing = code_to_blocks(&code).unwrap();
        prop_assert_eq!(packing.strength, shape.total_weight() - shape.half_distance() + 1);
        prop_assert_eq!(packing.strength, t);
        prop_assert_eq!(packing.lambda, 1);
        prop_assert!(verify_generalized_packing(&packing).passed());
        let back = blocks_to_code(&packing, shape.distance()).unwrap();
        prop_assert_eq!(code_to_blocks(&back).unwrap(), packing);
        prop_assert_eq!(back, code);
    }

    #[test]
    fn violating_pair_iff_below_claim(code in unchecked_code()) {
        let report = verify_mcwc(&code);
        let words: Vec<&Codeword> = code.iter().collect();
        let mut min = None;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let d = distance(words[i], words[j]).unwrap();
                min = Some(min.map_or(d, |m: usize| m.min(d)));
            }
        }
        prop_assert_eq!(report.observed_min_distance, min);
        let below = min.is_some_and(|m| m < code.shape().distance());
        prop_assert_eq!(report.violating_pair.is_some(), below);
        if let Some((a, b)) = report.violating_pair {
            prop_assert_eq!(Some(distance(words[a], words[b]).unwrap()), min);
        }
        prop_assert_eq!(report.passed(), !below);
    }

    #[test]
    fn two_dimensional_bounds_are_ordered((m, n, w, l, lambda) in params_2d()) {
        check_2d_order(m, n, &w, l, lambda)?;
    }

    #[test]
    fn single_part_product_bound((n, w, t) in product_m1()) {
        check_product_m1(n, w, t)?;
    }

    #[test]
    fn k4_constructions_meet_the_packing_number((lengths, composition) in k4_params()) {
        let (p, cert) = construct_k4_packing(&lengths, &composition).unwrap();
        let want = k4_packing_number(&lengths, &composition).unwrap();
        prop_assert_eq!(BigUint::from(p.len()), want.value);
        prop_assert_eq!(cert.size, p.len());
        prop_assert!(verify_generalized_packing(&p).passed());
        prop_assert_eq!(p.lengths, lengths);
        prop_assert_eq!(p.composition, composition);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sizes_never_exceed_bounds(shape in small_shape()) {
        check_bounds_on(&shape)?;
    }

    #[test]
    fn search_ignores_workers_and_seed(shape in small_shape(), seed in any::<u64>()) {
        prop_assume!(shape.candidate_count() <= BigUint::from(120u32));
        let a = max_code_search(&shape, &SearchBudget::nodes(20_000_000).with_workers(1)).unwrap();
        let b = max_code_search(&shape, &SearchBudget::nodes(20_000_000).with_workers(4).with_seed(seed)).unwrap();
        prop_assert_eq!(a.status, SearchStatus::ProvedOptimal);
        prop_assert_eq!(a.size(), b.size());
        prop_assert_eq!(a.status, b.status);
        prop_assert!(verify_mcwc(&b.code).passed());
    }
}

#[test]
fn weight_two_family_meets_the_recursive_bound() {
    for m in 1..=3 {
        for n in 2..=8 {
            let (code, cert) = mcwc_w2_d4(m, n).unwrap();
            let shape = Shape::uniform(m, n, 2, 4).unwrap();
            assert_eq!(code.shape(), &shape);
            assert!(verify_mcwc(&code).passed());
            assert_eq!(BigUint::from(code.len()), johnson_recursive(&shape).value, "m={m} n={n}");
            assert!(cert.optimal);
        }
    }
}

fn drp_round_trip(d: &DrpArray) {
    let code = code_from_drp(d).unwrap();
    let again = drp_from_code(&code, d.column_weight()).unwrap();
    let code2 = code_from_drp(&again).unwrap();
    assert_eq!(code2, code);
    assert_eq!(drp_from_code(&code2, d.column_weight()).unwrap(), again);
}

#[test]
fn drp_and_code_are_inverse() {
    for d in [example_drp_3x3(), example_drp_6x6(), example_drp_9x9()] {
        drp_round_trip(&d);
    }
    for n in 1..=9 {
        let (d, code, _) = latin_drp(n).unwrap();
        drp_round_trip(&d);
        assert_eq!(code_from_drp(&d).unwrap(), code);
    }
    for (m, k, lambda, alpha) in [(4, 2, 1, 1), (5, 2, 1, 2), (6, 2, 2, 2), (7, 3, 1, 3), (9, 3, 1, 1), (9, 3, 2, 2)] {
        let design = alpha_resolvable_bibd(m, k, lambda, alpha).unwrap();
        let r = design.class_count();
        for s in (1..=r).filter(|s| r.is_multiple_of(*s)) {
            let (d, cert) = drp_from_alpha_resolvable(&design, s, r / s).unwrap();
            drp_round_trip(&d);
            let code = code_from_drp(&d).unwrap();
            let n = code.shape().matrix_width().unwrap();
            let lambda2 = code.shape().total_weight() - code.shape().half_distance();
            if cert.optimal {
                let b = bound_2d(code.shape().parts(), n, code.shape().weights(), d.column_weight(), lambda2);
                assert_eq!(b.map(|b| b.value), Some(BigUint::from(code.len())), "({m},{k},{lambda},{alpha}) s={s}");
            }
        }
    }
}

fn proved(shape: &Shape) -> usize {
    let out = max_code_search(shape, &SearchBudget::nodes(500_000_000)).unwrap();
    assert_eq!(out.status, SearchStatus::ProvedOptimal, "{shape}");
    out.size()
}

#[test]
fn search_dominates_constructions() {
    let mut built: Vec<(Code, ConstructionCertificate)> = Vec::new();
    for (m, n) in [(1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (3, 3)] {
        built.push(mcwc_w1_d4(m, n).unwrap());
        built.push(mcwc_w2_d4(m, n).unwrap());
    }
    for n in 2..=5 {
        let (_, code, cert) = latin_drp(n).unwrap();
        built.push((code, cert));
    }
    let (c, cert) = concatenate(&code_from_drp(&example_drp_3x3()).unwrap(), 1, 1).unwrap();
    built.push((c, cert));
    for (lengths, composition) in [(vec![5, 2], vec![3, 1]), (vec![4, 4], vec![2, 2]), (vec![3, 2, 2], vec![2, 1, 1])] {
        let (p, cert) = construct_k4_packing(&lengths, &composition).unwrap();
        let w: usize = composition.iter().sum();
        built.push((blocks_to_code(&p, 2 * (w + 1 - p.strength)).unwrap(), cert));
    }
    for (code, cert) in built {
        let shape = code.shape().clone();
        if shape.candidate_count() > BigUint::from(3000u32) {
            continue;
        }
        let best = proved(&shape);
        assert!(best >= code.len(), "{shape}");
        if cert.optimal {
            assert_eq!(best, code.len(), "{shape}: {}", cert.provenance);
        }
    }
}
