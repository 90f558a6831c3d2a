use std::sync::Arc;

use tautilt::field::{Fp, F2147483647};
use tautilt::par::Exec;
use tautilt::samples;
use tautilt::tilting::{is_support_tau_tilting, mutate, mutation_quiver, pairs_isomorphic, StPair};
use tautilt::{Algebra, BoundQuiver, Field, Rational};

fn alg<F: Field>(text: &str) -> Arc<Algebra<F>> {
    Algebra::new(BoundQuiver::parse(text).unwrap()).unwrap()
}

fn catalan(n: u64) -> u64 {
    (1..=n).fold(1, |c, k| c * (n + k) / k) / (n + 1)
}

#[test]
fn linear_a3_has_catalan_many_pairs() {
    let q = mutation_quiver(&StPair::projectives(&alg::<Rational>(samples::A3)), 100, Exec::Parallel).unwrap();
    assert!(!q.truncated);
    assert_eq!(q.nodes.len() as u64, catalan(4));
    for n in &q.nodes {
        assert!(is_support_tau_tilting(n).unwrap(), "{}", n.label());
    }
}

#[test]
fn every_mutation_lands_in_the_quiver() {
    let a = alg::<Rational>(samples::A3);
    let q = mutation_quiver(&StPair::projectives(&a), 100, Exec::Sequential).unwrap();
    for n in &q.nodes {
        for pos in n.positions() {
            let m = mutate(n, pos).unwrap();
            let hits = q.nodes.iter().filter(|o| pairs_isomorphic(o, &m.pair).unwrap()).count();
            assert_eq!(hits, 1, "{} at {pos:?}", n.label());
            // mutating back at the created position returns the start
            let back = mutate(&m.pair, m.created).unwrap();
            assert!(pairs_isomorphic(&back.pair, n).unwrap());
            assert_eq!(back.direction, m.direction.reverse());
        }
    }
}

#[test]
fn fields_and_schedules_agree() {
    for text in [samples::A3, samples::SQUARE, samples::DUAL_NUMBERS] {
        let q = mutation_quiver(&StPair::projectives(&alg::<Rational>(text)), 200, Exec::Sequential).unwrap();
        let p = mutation_quiver(&StPair::projectives(&alg::<F2147483647>(text)), 200, Exec::Parallel).unwrap();
        let small = mutation_quiver(&StPair::projectives(&alg::<Fp<7>>(text)), 200, Exec::Parallel).unwrap();
        assert_eq!(q.nodes.len(), p.nodes.len());
        assert_eq!(q.nodes.len(), small.nodes.len());
        let ql: Vec<String> = q.nodes.iter().map(StPair::label).collect();
        let pl: Vec<String> = p.nodes.iter().map(StPair::label).collect();
        assert_eq!(ql, pl);
    }
}

#[test]
fn shifted_projectives_is_the_sink() {
    let a = alg::<Rational>(samples::A3);
    let q = mutation_quiver(&StPair::projectives(&a), 100, Exec::Sequential).unwrap();
    let sink = StPair::shifted_projectives(&a);
    let i = q
        .nodes
        .iter()
        .position(|n| pairs_isomorphic(n, &sink).unwrap())
        .unwrap();
    assert_eq!(q.left_edges().filter(|e| e.from == i).count(), 0);
    assert_eq!(q.left_edges().filter(|e| e.to == i).count(), 3);
    assert_eq!(q.left_edges().filter(|e| e.from == 0).count(), 3);
}
