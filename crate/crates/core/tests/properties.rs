use goaltally::engine::{count_bruteforce, count_problem, count_tables, enumerate_tables, CountValue, Limits};
use goaltally::fit::{fit_sn, FitMode, FitReport};
use goaltally::model::{
    reduce_fixed, transpose_problem, validate_problem, Cell, ConcreteMargins, EntryMask, MarginOffsets, TableProblem,
};
use goaltally::poly::RationalPolynomial;
use goaltally::puzzle::{make_book, PuzzleBook, PuzzleParams};
use goaltally::worldcup::{
    derive_board, find_scenarios, match_pairs, points_of, PointsRule, Scenario, ScoreBoard, SolverLimits,
};
use goaltally::Error;
use proptest::prelude::*;

fn cell() -> impl Strategy<Value = Cell> {
    prop_oneof![3 => Just(Cell::Free), 1 => Just(Cell::Fixed(0)), 1 => (1u64..=2).prop_map(Cell::Fixed)]
}

fn problem() -> impl Strategy<Value = TableProblem> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-1i64..=2, n),
                prop::collection::vec(-1i64..=2, n),
                prop::collection::vec(prop::collection::vec(cell(), n), n),
                0i64..=3,
            )
        })
        .prop_map(|(sr, mut sc, rows, r)| {
            sc[0] += sr.iter().sum::<i64>() - sc.iter().sum::<i64>();
            TableProblem::new(MarginOffsets::new(sr, sc), EntryMask::from_rows(rows).unwrap(), r)
        })
}

fn count(p: &TableProblem) -> Option<CountValue> {
    match validate_problem(p) {
        Ok(vp) => Some(count_problem(&vp, &Limits::default()).unwrap()),
        Err(Error::NegativeMargin { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

fn relabel_problem(p: &TableProblem, perm: &[usize]) -> TableProblem {
    let apply = |v: &[i64]| {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[perm[i]] = x;
        }
        out
    };
    TableProblem::new(
        MarginOffsets::new(apply(&p.offsets.sr), apply(&p.offsets.sc)),
        p.mask.relabel(perm),
        p.r,
    )
}

fn scenario(n: usize, max_goal: u64) -> impl Strategy<Value = Scenario> {
    prop::collection::vec((0..=max_goal, 0..=max_goal), n * (n - 1) / 2).prop_map(move |s| Scenario::new(n, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn memoized_matches_bruteforce(p in problem()) {
        if let Ok(vp) = validate_problem(&p) {
            let slow = match reduce_fixed(&vp) {
                Ok(m) => count_bruteforce(&m, &Limits::default()).unwrap(),
                Err(_) => CountValue::zero(),
            };
            prop_assert_eq!(count_problem(&vp, &Limits::default()).unwrap(), slow);
        }
    }

    #[test]
    fn simultaneous_relabel_preserves_count(p in problem(), seed in any::<u64>()) {
        let n = p.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        prop_assert_eq!(count(&p), count(&relabel_problem(&p, &perm)));
    }

    #[test]
    fn transpose_preserves_count(p in problem()) {
        prop_assert_eq!(count(&p), count(&transpose_problem(&p)));
    }

    #[test]
    fn freeing_a_zero_cell_never_decreases(p in problem(), i in 0usize..4, j in 0usize..4) {
        let n = p.n();
        let (i, j) = (i % n, j % n);
        if p.mask.get(i, j) == Cell::Fixed(0) {
            let mut mask = p.mask.clone();
            mask.set(i, j, Cell::Free);
            let looser = TableProblem::new(p.offsets.clone(), mask, p.r);
            if let (Some(a), Some(b)) = (count(&p), count(&looser)) {
                prop_assert!(a.0 <= b.0);
            }
        }
    }

    #[test]
    fn stream_agrees_with_count(p in problem()) {
        if let Ok(vp) = validate_problem(&p) {
            if let Ok(m) = reduce_fixed(&vp) {
                let tables: Vec<_> = enumerate_tables(&m, None, &Limits::default()).map(Result::unwrap).collect();
                for t in &tables {
                    prop_assert_eq!(t.row_sums(), vp.row_targets().to_vec());
                    prop_assert_eq!(t.col_sums(), vp.col_targets().to_vec());
                }
                for w in tables.windows(2) {
                    prop_assert!(w[0].entries() < w[1].entries());
                }
                prop_assert_eq!(CountValue::from(tables.len() as u64), count_tables(&m, &Limits::default()).unwrap());
            }
        }
    }

    #[test]
    fn scenario_board_round_trip(s in scenario(4, 3)) {
        let rule = PointsRule::default();
        let b = derive_board(&s, &rule);
        let found = find_scenarios(&b, &rule, Some(usize::MAX), &SolverLimits::default()).unwrap();
        prop_assert!(found.scenarios.contains(&s));
        prop_assert_eq!(CountValue::from(found.scenarios.len() as u64), found.count.clone());
        for other in &found.scenarios {
            prop_assert_eq!(&derive_board(other, &rule), &b);
        }
    }

    #[test]
    fn points_total_law(s in scenario(5, 4)) {
        let rule = PointsRule::default();
        let draws = s.scores.iter().filter(|(a, b)| a == b).count() as u64;
        let total: u64 = points_of(&s, &rule).iter().sum();
        prop_assert_eq!(total, 3 * match_pairs(5).len() as u64 - draws);
    }

    #[test]
    fn wildcard_partitions_by_points(s in scenario(3, 2)) {
        let rule = PointsRule::default();
        let b = derive_board(&s, &rule);
        let wild = ScoreBoard::with_wildcard(b.gf.clone(), b.ga.clone());
        let all = find_scenarios(&wild, &rule, Some(usize::MAX), &SolverLimits::default()).unwrap();
        let mut total = 0u64;
        let mut seen = std::collections::BTreeSet::new();
        for sc in &all.scenarios {
            seen.insert(points_of(sc, &rule));
        }
        for pts in seen {
            let exact = ScoreBoard::new(b.gf.clone(), b.ga.clone(), pts);
            total += find_scenarios(&exact, &rule, None, &SolverLimits::default()).unwrap().count.to_u64().unwrap();
        }
        prop_assert_eq!(CountValue::from(total), all.count);
    }

    #[test]
    fn board_relabel_equivariance(s in scenario(4, 2), seed in 0usize..24) {
        let rule = PointsRule::default();
        let mut perm: Vec<usize> = (0..4).collect();
        let mut k = seed;
        for i in (1..4).rev() {
            perm.swap(i, k % (i + 1));
            k /= i + 1;
        }
        let b = derive_board(&s, &rule);
        let a = find_scenarios(&b, &rule, Some(usize::MAX), &SolverLimits::default()).unwrap();
        let c = find_scenarios(&b.relabel(&perm), &rule, Some(usize::MAX), &SolverLimits::default()).unwrap();
        let mut moved: Vec<Scenario> = a.scenarios.iter().map(|x| x.relabel(&perm)).collect();
        moved.sort();
        prop_assert_eq!(moved, c.scenarios);
        prop_assert_eq!(derive_board(&s.relabel(&perm), &rule), b.relabel(&perm));
    }

    #[test]
    fn wildcard_count_matches_tables(s in scenario(4, 3)) {
        let b = derive_board(&s, &PointsRule::default());
        let wild = ScoreBoard::with_wildcard(b.gf.clone(), b.ga.clone());
        let scen = find_scenarios(&wild, &PointsRule::default(), None, &SolverLimits::default()).unwrap().count;
        let m = ConcreteMargins::from_targets(b.gf.clone(), b.ga.clone(), EntryMask::zero_diagonal(4)).unwrap();
        prop_assert_eq!(scen, count_tables(&m, &Limits::default()).unwrap());
    }

    #[test]
    fn polynomial_serde_round_trip(coeffs in prop::collection::vec(-50i64..50, 0..8), d in 1i64..20) {
        let p = RationalPolynomial::from_ints(&coeffs).scale(&goaltally::poly::ratio(1, d));
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalPolynomial>(&text).unwrap(), p);
    }

    #[test]
    fn board_serde_round_trip(s in scenario(4, 5), wildcard in any::<bool>()) {
        let mut b = derive_board(&s, &PointsRule::default());
        if wildcard {
            b = ScoreBoard::with_wildcard(b.gf, b.ga);
        }
        let text = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<ScoreBoard>(&text).unwrap(), b);
    }
}

#[test]
fn scenario_round_trip_500() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(500);
    let rule = PointsRule::default();
    for _ in 0..500 {
        let scores = (0..6).map(|_| (rng.gen_range(0..=3), rng.gen_range(0..=3))).collect();
        let s = Scenario::new(4, scores).unwrap();
        let b = derive_board(&s, &rule);
        let found = find_scenarios(&b, &rule, Some(usize::MAX), &SolverLimits::default()).unwrap();
        assert!(found.scenarios.contains(&s), "{s} missing from its own board");
    }
}

#[test]
fn fit_report_serde_round_trip() {
    let mut counter = goaltally::fit::zero_diagonal_counter(4, Limits::default());
    let report = fit_sn(4, FitMode::Economical, &mut counter).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    assert!(text.contains("\"1/15\""), "{text}");
    assert_eq!(serde_json::from_str::<FitReport>(&text).unwrap(), report);
}

#[test]
fn puzzle_book_serde_round_trip() {
    let book = make_book(&PuzzleParams::new(3, 3), 5, 11, true).unwrap();
    let text = serde_json::to_string(&book).unwrap();
    assert_eq!(serde_json::from_str::<PuzzleBook>(&text).unwrap(), book);
}

#[test]
fn big_counts_serialize_as_strings() {
    let vp = validate_problem(&TableProblem::zero_diagonal(5, 15)).unwrap();
    let c = count_problem(&vp, &Limits::default()).unwrap();
    let text = serde_json::to_string(&c).unwrap();
    assert_eq!(text, format!("\"{c}\""));
    assert_eq!(serde_json::from_str::<CountValue>(&text).unwrap(), c);
}

#[test]
fn zero_diagonal_counts_are_nondecreasing() {
    for n in 3..=5 {
        let counts: Vec<CountValue> = (0..=11)
            .map(|r| {
                count_problem(
                    &validate_problem(&TableProblem::zero_diagonal(n, r)).unwrap(),
                    &Limits::default(),
                )
                .unwrap()
            })
            .collect();
        for w in counts.windows(2) {
            assert!(w[0].0 <= w[1].0, "n={n}: {} then {}", w[0], w[1]);
        }
    }
}
