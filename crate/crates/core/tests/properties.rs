mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::subsequence;

use common::{naive_canonical, naive_images, naive_magic, naive_residuum};
use subsquare::catalog::{self, Catalog, CatalogRecord, Fingerprint};
use subsquare::construct::{pre_matrix, skew_wrap, PreMatrix};
use subsquare::format::{parse_json, parse_text, to_json, to_text};
use subsquare::search::{search_randomized, SearchConfig};
use subsquare::transform::{canonical_form, d4_apply, permute_pre, D4Element, IndexPermutation};
use subsquare::{fixtures, residuum, verify, Square};

fn line() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..10_000, 1..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn residuum_laws(values in line(), c in 0u32..1_000, k in 0u32..50) {
        let r = residuum(&values).unwrap();
        let wide: Vec<i64> = values.iter().map(|&v| i64::from(v)).collect();
        prop_assert_eq!(r, naive_residuum(&wide));

        let shifted: Vec<u32> = values.iter().map(|v| v + c).collect();
        let expected = if values.len() % 2 == 0 { r } else { r + i64::from(c) };
        prop_assert_eq!(residuum(&shifted).unwrap(), expected);

        let scaled: Vec<u32> = values.iter().map(|v| v * k).collect();
        prop_assert_eq!(residuum(&scaled).unwrap(), i64::from(k) * r);

        let sum: i64 = wide.iter().sum();
        prop_assert_eq!(r.rem_euclid(2), sum.rem_euclid(2));

        let max = *wide.iter().max().unwrap();
        let min = *wide.iter().min().unwrap();
        prop_assert!(0 <= r && r <= max);
        if values.len() % 2 == 1 {
            prop_assert!(r >= min);
        }
    }

    #[test]
    fn residuum_ignores_order(values in line().prop_shuffle()) {
        let mut sorted = values.clone();
        sorted.sort_unstable();
        prop_assert_eq!(residuum(&values).unwrap(), residuum(&sorted).unwrap());
    }
}

fn search_outputs() -> &'static [Square] {
    static OUT: OnceLock<Vec<Square>> = OnceLock::new();
    OUT.get_or_init(|| {
        let mut out = Vec::new();
        for (n, seed, limit) in [(4, 11, 700), (5, 12, 200), (6, 13, 100)] {
            let mut cfg = SearchConfig::randomized(n, seed);
            cfg.limit = Some(limit);
            search_randomized(&cfg, |sq| out.push(sq.clone())).unwrap();
        }
        out
    })
}

fn all_fixtures() -> Vec<Square> {
    let mut v = fixtures::order4_all();
    v.extend([
        fixtures::order5_e(),
        fixtures::order7(),
        fixtures::order8_composite(),
        fixtures::order9(),
        fixtures::order6_problem_one(),
    ]);
    v.extend(subsquare::transform::variant_squares_order5());
    v
}

#[test]
fn symmetries_preserve_magic() {
    let pool = search_outputs();
    assert_eq!(pool.len(), 1000);
    for sq in all_fixtures().iter().chain(pool) {
        let before = verify(sq);
        assert!(before.is_magic);
        let n = sq.order();
        let mut images: Vec<Vec<u32>> = D4Element::ALL
            .iter()
            .map(|&g| {
                let img = d4_apply(sq, g);
                let after = verify(&img);
                assert_eq!(after.is_magic, before.is_magic);
                assert_eq!(after.residuum, before.residuum);
                assert_eq!(after.is_normal, before.is_normal);
                img.into_cells()
            })
            .collect();
        let mut expected = naive_images(n, sq.cells());
        images.sort();
        expected.sort();
        assert_eq!(images, expected);
        assert_eq!(
            canonical_form(sq).cells(),
            naive_canonical(n, sq.cells()).as_slice()
        );
    }
}

#[test]
fn d4_is_a_group() {
    let probe = Square::new(3, (1..=9).collect()).unwrap();
    for &a in &D4Element::ALL {
        assert_eq!(d4_apply(&d4_apply(&probe, a), a.inverse()), probe);
        for &b in &D4Element::ALL {
            let composed = d4_apply(&d4_apply(&probe, a), b);
            assert_eq!(d4_apply(&probe, a.then(b)), composed, "{a} then {b}");
        }
    }
}

fn middle_fixed(n: usize) -> impl Strategy<Value = IndexPermutation> {
    let m = n.div_ceil(2);
    let others: Vec<usize> = (1..=n).filter(|&i| i != m).collect();
    Just(others).prop_shuffle().prop_map(move |mut rest| {
        rest.insert(m - 1, m);
        IndexPermutation::new(rest).unwrap()
    })
}

fn check_permuted(
    pre: &PreMatrix,
    p: &IndexPermutation,
    q: &IndexPermutation,
) -> Result<(), TestCaseError> {
    let n = pre.order();
    let sq = skew_wrap(&permute_pre(pre, p, q).unwrap());
    prop_assert_eq!(naive_magic(n, sq.cells()), Some((n * n).div_ceil(2) as i64));
    prop_assert!(sq.is_normal());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn middle_fixed_permutations_5(p in middle_fixed(5), q in middle_fixed(5)) {
        check_permuted(&pre_matrix(5).unwrap(), &p, &q)?;
    }

    #[test]
    fn middle_fixed_permutations_7(p in middle_fixed(7), q in middle_fixed(7)) {
        check_permuted(&pre_matrix(7).unwrap(), &p, &q)?;
    }

    #[test]
    fn middle_fixed_permutations_9(p in middle_fixed(9), q in middle_fixed(9)) {
        check_permuted(&pre_matrix(9).unwrap(), &p, &q)?;
    }

    #[test]
    fn moving_the_middle_is_rejected(p in Just((1..=5).collect::<Vec<usize>>()).prop_shuffle()) {
        let perm = IndexPermutation::new(p.clone()).unwrap();
        let id = IndexPermutation::identity(5);
        let pre = pre_matrix(5).unwrap();
        prop_assert_eq!(permute_pre(&pre, &perm, &id).is_ok(), p[2] == 3);
        prop_assert_eq!(permute_pre(&pre, &id, &perm).is_ok(), p[2] == 3);
    }
}

fn any_square() -> impl Strategy<Value = Square> {
    (1usize..=7).prop_flat_map(|n| {
        prop::collection::vec(1u32..=5_000, n * n)
            .prop_map(move |cells| Square::new(n, cells).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn text_and_json_round_trip(sq in any_square()) {
        prop_assert_eq!(&parse_text(&to_text(&sq)).unwrap(), &sq);
        prop_assert_eq!(&parse_json(&to_json(&sq)).unwrap(), &sq);
        prop_assert_eq!(to_text(&sq), sq.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_round_trip(picks in subsequence((0..1000usize).collect::<Vec<_>>(), 0..120)) {
        let pool = search_outputs();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        let mut cat = Catalog::open(&path).unwrap();
        let mut inserted = Vec::new();
        for (k, &i) in picks.iter().enumerate() {
            let fp = Fingerprint { mode: "randomized".into(), seed: Some(k as u64), worker: Some(0) };
            let rec = CatalogRecord::new(pool[i].clone(), fp).unwrap();
            let fresh = !inserted.iter().any(|r: &CatalogRecord| r.canonical_key == rec.canonical_key);
            prop_assert_eq!(cat.append(&rec).unwrap(), fresh);
            if fresh {
                inserted.push(rec);
            }
        }
        drop(cat);
        let loaded = catalog::load(&path).unwrap();
        prop_assert_eq!(loaded.warnings, 0);
        prop_assert_eq!(loaded.stats.total, inserted.len() as u64);
        prop_assert_eq!(loaded.records, inserted);
    }
}
