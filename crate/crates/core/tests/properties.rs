use proptest::prelude::*;

use ramsey_core::campaign::sample_coloring;
use ramsey_core::constructions::{burr_coloring, gj_coloring, verify_extremal};
use ramsey_core::extract::{extract, forest_threshold};
use ramsey_core::formulas::{
    beta, burr_lower, gj_lower_p, ramsey_value, tree_value, union_upper, CliqueUnion, ForestSpec,
};
use ramsey_core::graph::{Color, TwoColoring};
use ramsey_core::notation::{read_coloring, write_coloring};
use ramsey_core::search::search_witness;
use ramsey_core::tree::{
    apply_plan, canonical_form, from_prufer, is_isomorphic, plan_between, Plan, Tree,
};
use ramsey_core::witness::Witness;

fn prufer(n: usize) -> impl Strategy<Value = Tree> {
    prop::collection::vec(0..n, n - 2).prop_map(|s| from_prufer(&s))
}

fn tree(max: usize) -> impl Strategy<Value = Tree> {
    (3..=max).prop_flat_map(prufer)
}

fn tree_pair(max: usize) -> impl Strategy<Value = (Tree, Tree)> {
    (3..=max).prop_flat_map(|n| (prufer(n), prufer(n)))
}

fn target() -> impl Strategy<Value = CliqueUnion> {
    prop_oneof![
        (2..=5usize).prop_map(CliqueUnion::clique),
        (2..=4usize).prop_map(|m| CliqueUnion::new(vec![m, m]).unwrap()),
        (3..=5usize).prop_flat_map(|m| (2..m).prop_map(move |l| CliqueUnion::pair(m, l))),
    ]
}

fn forest(min: usize, max: usize) -> impl Strategy<Value = ForestSpec> {
    prop::collection::vec(min.max(3)..=max, 1..=4)
        .prop_map(|orders| ForestSpec::new(orders.into_iter().map(Tree::path).collect()).unwrap())
}

fn pair() -> impl Strategy<Value = (ForestSpec, CliqueUnion)> {
    target().prop_flat_map(|h| {
        let s = h.chromatic().s;
        (forest(s, 7), Just(h))
    })
}

fn relabel(t: &Tree, perm: &[usize]) -> Tree {
    Tree::from_edges(t.order(), t.edges().into_iter().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

proptest! {
    #[test]
    fn goodness_identity((f, h) in pair()) {
        let upper = union_upper(&f, |j| tree_value(j, &h).ok()).unwrap();
        prop_assert_eq!(upper, gj_lower_p(&f, &h).0);
        prop_assert_eq!(ramsey_value(&f, &h).unwrap(), upper);
    }

    #[test]
    fn components_are_good(n in 3..12usize, h in target()) {
        prop_assume!(n >= h.chromatic().s);
        let r = tree_value(n, &h).unwrap();
        prop_assert_eq!(beta(r, n, &h), 0);
        prop_assert_eq!(burr_lower(n, &h).unwrap(), r);
        prop_assert_eq!(gj_lower_p(&ForestSpec::single(Tree::path(n)), &h).0, r);
    }

    #[test]
    fn adding_a_component_never_lowers_the_value((f, h) in pair(), extra in 3..=7usize) {
        prop_assume!(extra >= h.chromatic().s);
        let mut comps = f.components().to_vec();
        comps.push(Tree::path(extra));
        let bigger = ForestSpec::new(comps).unwrap();
        prop_assert!(ramsey_value(&bigger, &h).unwrap() >= ramsey_value(&f, &h).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels(t in tree(9), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..t.order()).collect();
        let mut x = seed;
        for i in (1..perm.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let u = relabel(&t, &perm);
        prop_assert_eq!(canonical_form(&t), canonical_form(&u));
        prop_assert!(is_isomorphic(&t, &u));
    }

    #[test]
    fn plans_reach_targets_and_round_trip((a, b) in tree_pair(9)) {
        let plan = plan_between(&a, &b).unwrap();
        prop_assert!(is_isomorphic(&apply_plan(&a, &plan).unwrap(), &b));
        prop_assert_eq!(Plan::parse(&plan.to_text()).unwrap(), plan);
    }

    #[test]
    fn coloring_files_round_trip(n in 1..=12usize, seed in any::<u64>(), trial in any::<u64>()) {
        let c = sample_coloring(n, seed, trial);
        prop_assert_eq!(read_coloring(&write_coloring(&c)).unwrap(), c);
    }

    #[test]
    fn oracle_witnesses_verify_and_round_trip(
        (f, h) in pair(),
        seed in any::<u64>(),
    ) {
        let n = (f.order() + 2).min(12);
        let c = sample_coloring(n, seed, 0);
        if let Some(w) = search_witness(&c, &f, &h) {
            prop_assert!(w.verify(&c, &f, &h));
            prop_assert_eq!(Witness::parse(&w.to_text()).unwrap(), w);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_extraction_is_sound(t in tree(6), h in target(), seed in any::<u64>()) {
        prop_assume!(t.order() >= h.chromatic().s);
        let f = ForestSpec::single(t);
        let n = forest_threshold(&f, &h).unwrap();
        prop_assume!(n <= 16);
        let c = sample_coloring(n, seed, 0);
        let w = extract(&c, &f, &h).unwrap();
        prop_assert!(w.verify(&c, &f, &h));
        prop_assert!(Witness::parse(&w.to_text()).unwrap().verify(&c, &f, &h));
    }

    #[test]
    fn strict_forest_extraction_is_sound((f, h) in pair(), seed in any::<u64>()) {
        let n = forest_threshold(&f, &h).unwrap();
        prop_assume!(n <= 20);
        let c = sample_coloring(n, seed, 1);
        let w = extract(&c, &f, &h).unwrap();
        prop_assert!(w.verify(&c, &f, &h));
    }
}

#[test]
fn extremal_colorings_are_witness_free() {
    for h in [CliqueUnion::clique(3), CliqueUnion::new(vec![2, 2]).unwrap(), CliqueUnion::pair(3, 2)] {
        for n in 3..=5 {
            let f = ForestSpec::single(Tree::path(n));
            let c = burr_coloring(n, &h).unwrap();
            assert_eq!(c.order(), tree_value(n, &h).unwrap() - 1);
            assert!(verify_extremal(&c, &f, &h).certified, "P{n} vs {h}");
        }
    }
    let f = ForestSpec::new(vec![Tree::path(3), Tree::star(4)]).unwrap();
    let h = CliqueUnion::new(vec![2, 2]).unwrap();
    assert!(verify_extremal(&gj_coloring(&f, &h).unwrap(), &f, &h).certified);
}

#[test]
fn monochromatic_colorings() {
    let f = ForestSpec::single(Tree::path(4));
    let h = CliqueUnion::clique(3);
    let red = TwoColoring::uniform(7, Color::Red);
    assert_eq!(extract(&red, &f, &h).unwrap().side, Color::Red);
    let blue = TwoColoring::uniform(7, Color::Blue);
    assert_eq!(extract(&blue, &f, &h).unwrap().side, Color::Blue);
}
