use proptest::prelude::*;

use vsldpc::codec::{export_alist, parse_alist, spa_decode};
use vsldpc::constructions::{check_theorem1_conditions, construct_gcd_j4, construct_maxfn_j4, maxfn_min_p};
use vsldpc::girth::{count_cycles, has_cycle};
use vsldpc::search::{search_min_p, SearchSpec};
use vsldpc::sequences::{es, is_sidon, td};
use vsldpc::{
    girth_bfs, girth_exponent, is_vs, lift, BlockMask, ExponentMatrix, Girth, GirthReport, MatrixDocument, StructureTag,
};

fn matrix_and_p(max_j: usize, max_l: usize, max_p: i64) -> impl Strategy<Value = (ExponentMatrix, i64)> {
    (1..=max_j, 1..=max_l, 2..=max_p).prop_flat_map(|(j, l, p)| {
        proptest::collection::vec(proptest::collection::vec(0..p, l), j)
            .prop_map(move |rows| (ExponentMatrix::from_rows(rows).unwrap(), p))
    })
}

fn with_mask(max_j: usize, max_l: usize, max_p: i64) -> impl Strategy<Value = (ExponentMatrix, i64, BlockMask)> {
    matrix_and_p(max_j, max_l, max_p).prop_flat_map(|(e, p)| {
        let (j, l) = (e.j(), e.l());
        proptest::collection::vec(proptest::collection::vec(0u8..=1, l), j)
            .prop_map(move |bits| (e.clone(), p, BlockMask::new(bits).unwrap()))
    })
}

// larger girth sorts higher; anything above the cap is largest
fn rank(g: &GirthReport) -> usize {
    match g.girth {
        Girth::Exact(v) => v,
        Girth::AboveCap => usize::MAX,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn engines_agree_and_witnesses_hold((e, p, mask) in with_mask(4, 6, 24)) {
        for m in [None, Some(&mask)] {
            let eq = girth_exponent(&e, p, 12, m).unwrap();
            let bfs = girth_bfs(&lift(&e, p, m).unwrap(), 12);
            prop_assert_eq!(eq.girth, bfs.girth);
            if let Some(w) = &eq.witness {
                prop_assert!(w.validate(&e, m));
                prop_assert_eq!(Girth::Exact(w.length), eq.girth);
            }
        }
    }

    #[test]
    fn masking_never_shortens_cycles((e, p, mask) in with_mask(4, 6, 30)) {
        let full = girth_exponent(&e, p, 12, None).unwrap();
        let masked = girth_exponent(&e, p, 12, Some(&mask)).unwrap();
        prop_assert!(rank(&masked) >= rank(&full));
    }

    #[test]
    fn has_cycle_matches_counts((e, p) in matrix_and_p(4, 6, 30)) {
        for k in [2, 3] {
            let found = has_cycle(&e, p, k, None).unwrap().is_some();
            prop_assert_eq!(found, count_cycles(&e, p, k, None).unwrap() > 0);
        }
    }

    #[test]
    fn girth_is_invariant_mod_p((e, p) in matrix_and_p(4, 5, 30), k in -3i64..=3) {
        let shifted = ExponentMatrix::from_rows(
            e.rows().map(|r| r.iter().map(|&x| x + k * p).collect()).collect(),
        ).unwrap();
        let a = girth_exponent(&e, p, 10, None).unwrap();
        let b = girth_exponent(&shifted, p, 10, None).unwrap();
        prop_assert_eq!(a.girth, b.girth);
        prop_assert_eq!(lift(&e, p, None).unwrap(), lift(&shifted, p, None).unwrap());
    }

    #[test]
    fn vs_completion_is_tagged(upper in proptest::collection::vec(proptest::collection::vec(-50i64..50, 4), 1..4),
                               zero_row in any::<bool>()) {
        let e = ExponentMatrix::vs_completion(&upper, zero_row).unwrap();
        let j = upper.len();
        if zero_row {
            prop_assert_eq!(e.j(), 2 * j + 1);
            prop_assert_eq!(is_vs(&e), StructureTag::VsOdd);
            prop_assert!(e.row(0).iter().all(|&x| x == 0));
        } else {
            prop_assert_eq!(e.j(), 2 * j);
            prop_assert_eq!(is_vs(&e), StructureTag::VsEven);
        }
        let off = usize::from(zero_row);
        for i in 0..j {
            let top = e.row(off + i);
            let bottom = e.row(off + j + i);
            prop_assert!(top.iter().zip(bottom).all(|(a, b)| *a == -*b));
        }
    }

    #[test]
    fn document_round_trip((e, p) in matrix_and_p(5, 6, 50)) {
        let doc = MatrixDocument::new(&e, Some(p));
        let back = MatrixDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_matrix().unwrap(), e);
    }

    #[test]
    fn alist_round_trip((e, p) in matrix_and_p(3, 5, 12)) {
        let code = lift(&e, p, None).unwrap();
        let parsed = parse_alist(&export_alist(&code).unwrap()).unwrap();
        prop_assert_eq!(parsed.to_dense(), code.to_dense());
    }

    #[test]
    fn lifted_weights_follow_mask((e, p, mask) in with_mask(4, 6, 16)) {
        let code = lift(&e, p, Some(&mask)).unwrap();
        prop_assert_eq!(code.ones(), mask.ones() * p as usize);
        for c in 0..code.m() {
            prop_assert_eq!(code.row_weight(c), mask.row_weight(c / p as usize));
        }
        for v in 0..code.n() {
            prop_assert_eq!(code.col_weight(v), mask.col_weight(v / p as usize));
        }
    }

    #[test]
    fn decoder_output_is_consistent((e, p) in matrix_and_p(3, 6, 13),
                                    seed in proptest::collection::vec(-4.0f64..6.0, 78)) {
        let code = lift(&e, p, None).unwrap();
        let llr: Vec<f64> = (0..code.n()).map(|v| seed[v % seed.len()]).collect();
        let r = spa_decode(&llr, &code, 20);
        prop_assert!(r.iterations >= 1 && r.iterations <= 20);
        if r.converged {
            prop_assert!(code.is_codeword(&r.bits));
        } else {
            prop_assert_eq!(r.iterations, 20);
        }
    }

    #[test]
    fn greedy_sidon_meets_theorem1(p in (5i64..200).prop_map(|p| p | 1), order in any::<u64>()) {
        // scan residues in a seeded order and keep each one that leaves the set Sidon
        let mut set: Vec<i64> = Vec::new();
        for k in 0..p {
            let x = (k * (order as i64 % (p - 1) + 1) + (order >> 32) as i64) % p;
            if set.contains(&x) {
                continue;
            }
            set.push(x);
            if !is_sidon(&set, p).unwrap() {
                set.pop();
            }
        }
        prop_assume!(set.len() >= 3);
        prop_assert!(check_theorem1_conditions(&set, p).unwrap());
    }
}

#[test]
fn es_and_td_shapes() {
    for n in 1..300u64 {
        assert!(es(n) > es(n - 1));
        assert!(td(n).abs() > td(n - 1).abs());
        if n >= 2 {
            assert!(td(n).signum() == -td(n - 1).signum());
        }
    }
}

#[test]
fn explicit_families_hold_beyond_the_minimum() {
    for l in [5usize, 9, 13] {
        let sq = (l * l) as i64;
        for p in sq..sq + 30 {
            let c = construct_gcd_j4(l, p).unwrap();
            assert!(c.girth().unwrap().is_exactly(8), "GCD L={l} P={p}");
        }
    }
    for l in [6usize, 11, 17] {
        let p0 = maxfn_min_p(l);
        for p in (p0..p0 + 60).step_by(2) {
            let c = construct_maxfn_j4(l, p).unwrap();
            assert!(c.girth().unwrap().is_exactly(8), "max-function L={l} P={p}");
        }
    }
}

#[test]
fn search_is_independent_of_thread_count() {
    let spec = SearchSpec::new(5, 6, 2, 60);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| search_min_p(&spec)).unwrap()
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.hit, b.hit);
    assert_eq!(a.hits, b.hits);
    let hit = a.hit.expect("published size 49 lies in range");
    assert!(hit.p <= 49);
    assert!(girth_bfs(&lift(&hit.matrix, hit.p, None).unwrap(), 12).is_exactly(8));
}

#[test]
fn search_j6_l9_within_published_size() {
    let hit = search_min_p(&SearchSpec::new(6, 9, 2, 109)).unwrap().hit.expect("hit");
    assert!(hit.p <= 109);
    assert_eq!(hit.alphas[0], 1);
    assert!(girth_exponent(&hit.matrix, hit.p, 12, None).unwrap().is_exactly(8));
}

#[test]
fn search_small_range_is_empty() {
    let out = search_min_p(&SearchSpec::new(4, 8, 2, 10)).unwrap();
    assert!(out.hit.is_none());
    assert_eq!(out.exhausted_up_to, Some(10));
}
