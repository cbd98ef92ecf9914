use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructions::burr_coloring;
use crate::graph::choose2;
use crate::tree::{canonical_tree_representatives, OpStep};

fn random_coloring(n: usize, rng: &mut ChaCha8Rng) -> TwoColoring {
    TwoColoring::from_fn(n, |_, _| if rng.random() { Color::Red } else { Color::Blue })
}

fn biased_coloring(n: usize, p_red: f64, rng: &mut ChaCha8Rng) -> TwoColoring {
    TwoColoring::from_fn(n, |_, _| {
        if rng.random_bool(p_red) {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

fn colorings(n: usize, count: usize, seed: u64) -> Vec<TwoColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => random_coloring(n, &mut rng),
            1 => biased_coloring(n, 0.8, &mut rng),
            _ => biased_coloring(n, 0.25, &mut rng),
        })
        .collect()
}

fn red_ok(w: &Witness, c: &TwoColoring, t: &Tree, h: &CliqueUnion) -> bool {
    w.verify_pattern(c, t.graph(), h)
}

#[test]
fn chvatal_exhaustive_small() {
    for t in [Tree::path(3), Tree::star(4), Tree::path(4)] {
        for m in 2..=3 {
            let n = (t.order() - 1) * (m - 1) + 1;
            if choose2(n) > 15 {
                continue;
            }
            let h = CliqueUnion::clique(m);
            for idx in 0..1u64 << choose2(n) {
                let c = TwoColoring::from_index(n, idx);
                let w = chvatal_extract(&c, &t, m).unwrap();
                assert!(red_ok(&w, &c, &t, &h));
            }
        }
    }
}

#[test]
fn chvatal_random() {
    for n in 3..=6 {
        for t in canonical_tree_representatives(n) {
            for m in 2..=4 {
                let h = CliqueUnion::clique(m);
                for c in colorings((n - 1) * (m - 1) + 1, 30, 7) {
                    let w = chvatal_extract(&c, &t, m).unwrap();
                    assert!(red_ok(&w, &c, &t, &h));
                }
            }
        }
    }
}

#[test]
fn chvatal_single_vertex_clique() {
    let c = TwoColoring::uniform(1, Color::Red);
    let w = chvatal_extract(&c, &Tree::path(4), 1).unwrap();
    assert_eq!((w.side, w.embedding.map.clone()), (Color::Blue, vec![0]));
}

#[test]
fn path_2km_exhaustive_small() {
    let h = CliqueUnion::new(vec![3, 3]).unwrap();
    let n = two_cliques_threshold(3, 3);
    assert_eq!(n, 6);
    for idx in 0..1u64 << choose2(n) {
        let c = TwoColoring::from_index(n, idx);
        let w = path_2km_extract(&c, 3, 3).unwrap();
        assert!(red_ok(&w, &c, &Tree::path(3), &h), "coloring {idx}");
    }
}

#[test]
fn path_2km_random() {
    for n in 3..=7 {
        for m in 3..=4 {
            let h = CliqueUnion::new(vec![m, m]).unwrap();
            for c in colorings(two_cliques_threshold(n, m), 40, 11) {
                let w = path_2km_extract(&c, n, m).unwrap();
                assert!(red_ok(&w, &c, &Tree::path(n), &h));
            }
        }
    }
}

#[test]
fn tree_2km_random() {
    for n in 3..=7 {
        for t in canonical_tree_representatives(n) {
            for m in [3, 4] {
                if m == 4 && n > 6 {
                    continue;
                }
                let h = CliqueUnion::new(vec![m, m]).unwrap();
                for c in colorings(two_cliques_threshold(n, m), 12, 13) {
                    let w = tree_2km_extract(&c, &t, m).unwrap();
                    assert!(red_ok(&w, &c, &t, &h));
                    assert!(!w.trace.is_empty());
                }
            }
        }
    }
}

#[test]
fn steps_random() {
    let spider = Tree::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    let cases = [
        (Tree::star(5), OpStep::stretch(1, 2)),
        (spider.clone(), OpStep::stretch(1, 2)),
        (spider.clone(), OpStep::stretch(4, 1)),
        (Tree::path(5), OpStep::expand(1, 4)),
        (spider.clone(), OpStep::expand(0, 4)),
        (Tree::path(6), OpStep::expand(1, 5)),
    ];
    for (ts, step) in cases {
        let t2 = step.apply(&ts).unwrap();
        for m in [3, 4] {
            let h = CliqueUnion::new(vec![m, m]).unwrap();
            for c in colorings(two_cliques_threshold(ts.order(), m), 25, 17) {
                let w = Extractor::strict().step(&c, &ts, step, m).unwrap();
                assert!(red_ok(&w, &c, &t2, &h), "{step} with m = {m}");
            }
        }
    }
}

#[test]
fn kmkl_random() {
    for n in 3..=6 {
        for t in canonical_tree_representatives(n) {
            for (m, l) in [(3, 2), (4, 2), (4, 3)] {
                let h = CliqueUnion::pair(m, l);
                for c in colorings((n - 1) * (m - 1) + 1, 12, 19) {
                    let w = tree_kmkl_extract(&c, &t, m, l).unwrap();
                    assert!(red_ok(&w, &c, &t, &h));
                }
            }
        }
    }
}

#[test]
fn forest_random() {
    let spider = Tree::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    let forests = [
        ForestSpec::new(vec![Tree::path(3), Tree::star(4)]).unwrap(),
        ForestSpec::new(vec![spider, Tree::path(3), Tree::path(3)]).unwrap(),
    ];
    let targets = [
        CliqueUnion::clique(3),
        CliqueUnion::new(vec![3, 3]).unwrap(),
        CliqueUnion::pair(3, 2),
    ];
    for f in &forests {
        for h in &targets {
            let n = forest_threshold(f, h).unwrap();
            assert_eq!(n, crate::formulas::ramsey_value(f, h).unwrap());
            for c in colorings(n, 10, 23) {
                let w = extract(&c, f, h).unwrap();
                assert!(w.verify(&c, f, h));
            }
        }
    }
}

#[test]
fn strict_refuses_small_hosts() {
    let c = TwoColoring::uniform(4, Color::Blue);
    assert_eq!(
        chvatal_extract(&c, &Tree::path(3), 3),
        Err(ExtractError::BelowThreshold { needed: 5, have: 4 })
    );
    assert!(matches!(
        tree_2km_extract(&c, &Tree::path(2), 2),
        Err(ExtractError::Formula(FormulaError::PreconditionViolated(_)))
    ));
    let f = ForestSpec::single(Tree::path(4));
    assert!(matches!(
        extract(&c, &f, &CliqueUnion::new(vec![3, 3, 3]).unwrap()),
        Err(ExtractError::Formula(FormulaError::UnsupportedTarget(_)))
    ));
}

#[test]
fn best_effort_stuck_on_extremal_coloring() {
    for (t, h) in [
        (Tree::star(4), CliqueUnion::new(vec![3, 3]).unwrap()),
        (Tree::path(4), CliqueUnion::clique(3)),
        (Tree::path(4), CliqueUnion::pair(3, 2)),
    ] {
        let c = burr_coloring(t.order(), &h).unwrap();
        let f = ForestSpec::single(t);
        match Extractor::best_effort().forest(&c, &f, &h) {
            Err(ExtractError::Stuck {
                host,
                red_pattern,
                sizes,
                ..
            }) => {
                assert!(search_in(&c, host, &red_pattern, &sizes).is_none());
            }
            other => panic!("expected a stuck extraction, got {other:?}"),
        }
    }
}

#[test]
fn best_effort_matches_strict_at_threshold() {
    let t = Tree::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
    for c in colorings(two_cliques_threshold(6, 3), 20, 29) {
        let a = Extractor::strict().tree_2km(&c, &t, 3).unwrap();
        let b = Extractor::best_effort().tree_2km(&c, &t, 3).unwrap();
        assert_eq!(a, b);
    }
}
