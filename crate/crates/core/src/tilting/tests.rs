use std::sync::Arc;

use super::*;
use crate::field::{Fp, Rational};
use crate::par::Exec;
use crate::quiver::BoundQuiver;
use crate::samples;

type Q = Rational;

fn alg<F: Field>(text: &str) -> Arc<Algebra<F>> {
    Algebra::new(BoundQuiver::parse(text).unwrap()).unwrap()
}

fn labels<F: Field>(q: &MutationQuiver<F>) -> Vec<String> {
    let mut l: Vec<String> = q.nodes.iter().map(StPair::label).collect();
    l.sort();
    l
}

#[test]
fn a2_pentagon() {
    let a = alg::<Q>(samples::A2);
    for exec in [Exec::Sequential, Exec::Parallel] {
        let q = mutation_quiver(&StPair::projectives(&a), 100, exec).unwrap();
        assert!(!q.truncated);
        assert_eq!(q.nodes.len(), 5);
        assert_eq!(q.edges.len(), 10);
        assert_eq!(q.left_edges().count(), 5);
        for n in &q.nodes {
            assert!(is_support_tau_tilting(n).unwrap(), "{n:?}");
        }
        assert_eq!(
            labels(&q),
            vec![
                "M: 0 | P: {1,2}",
                "M: [0,1] [1,1] | P: {}",
                "M: [0,1] | P: {1}",
                "M: [1,0] [1,1] | P: {}",
                "M: [1,0] | P: {2}",
            ]
        );
    }
}

#[test]
fn a2_mutations_by_hand() {
    let a = alg::<Q>(samples::A2);
    let top = StPair::projectives(&a);
    // Hom(P1, P2) = 0, so mutating P1 away leaves (P2, {1})
    let gone = mutate(&top, Position::Summand(0)).unwrap();
    assert_eq!((gone.direction, gone.multiplicity), (Direction::Left, 0));
    assert_eq!(gone.pair.label(), "M: [0,1] | P: {1}");
    // P2 embeds in P1 with cokernel S1
    let m = mutate(&top, Position::Summand(1)).unwrap();
    assert_eq!(m.multiplicity, 1);
    assert_eq!(m.direction, Direction::Left);
    assert_eq!(m.pair.label(), "M: [1,0] [1,1] | P: {}");
    // S1 is a quotient of P1, so mutating at S1 goes right
    let s1 = m.pair.summands.iter().position(|x| x.dims() == [1, 0]).unwrap();
    let back = mutate(&m.pair, Position::Summand(s1)).unwrap();
    assert_eq!(back.direction, Direction::Right);
    assert!(pairs_isomorphic(&back.pair, &top).unwrap());
    assert_eq!(classify_direction(&top, &m.pair).unwrap(), Direction::Left);
    assert_eq!(classify_direction(&m.pair, &top).unwrap(), Direction::Right);
    // mutating P1 away from (P1 ⊕ S1) leaves S1 with vertex 2 in P
    let p1 = m.pair.summands.iter().position(|x| x.dims() == [1, 1]).unwrap();
    let down = mutate(&m.pair, Position::Summand(p1)).unwrap();
    assert_eq!(down.direction, Direction::Left);
    assert_eq!(down.multiplicity, 0);
    assert_eq!(down.pair.label(), "M: [1,0] | P: {2}");
    // and from (0, A) every mutation goes right
    let bottom = StPair::shifted_projectives(&a);
    for pos in bottom.positions() {
        assert_eq!(mutate(&bottom, pos).unwrap().direction, Direction::Right);
    }
}

#[test]
fn dual_numbers_have_two_pairs() {
    let a = alg::<Q>(samples::DUAL_NUMBERS);
    assert_eq!(
        is_tau_tilting_finite(&a, 10, Exec::Sequential).unwrap(),
        Finiteness::Finite(2)
    );
    let q = mutation_quiver(&StPair::projectives(&a), 10, Exec::Sequential).unwrap();
    assert_eq!(labels(&q), vec!["M: 0 | P: {v}", "M: [2] | P: {}"]);
}

#[test]
fn almost_complete_pairs_have_two_completions() {
    let a = alg::<Q>(samples::A3);
    let q = mutation_quiver(&StPair::projectives(&a), 100, Exec::Parallel).unwrap();
    assert!(!q.truncated);
    // A3 has 14 support τ-tilting pairs (a Catalan number)
    assert_eq!(q.nodes.len(), 14);
    for (i, n) in q.nodes.iter().enumerate() {
        let out: Vec<&Edge> = q.edges.iter().filter(|e| e.from == i).collect();
        assert_eq!(out.len(), 3);
        for e in out {
            assert_ne!(e.to, i);
            let back = q.edges.iter().filter(|f| f.from == e.to && f.to == i).count();
            assert_eq!(back, 1, "{n:?}");
            assert_eq!(classify_direction(n, &q.nodes[e.to]).unwrap(), e.direction);
        }
    }
}

#[test]
fn dagger_is_an_involution() {
    let a = alg::<Q>(samples::A3);
    let q = mutation_quiver(&StPair::projectives(&a), 100, Exec::Sequential).unwrap();
    for n in &q.nodes {
        let (d, _) = dagger(n);
        assert!(is_support_tau_tilting(&d).unwrap());
        let (dd, _) = dagger(&d);
        let back = StPair::new(
            a.clone(),
            dd.summands.iter().map(|m| m.rehome(&a)).collect(),
            dd.proj.clone(),
        );
        assert!(pairs_isomorphic(&back, n).unwrap(), "{n:?}");
    }
}

#[test]
fn non_tilting_pairs_are_rejected() {
    let a = alg::<Q>(samples::A2);
    let s1 = Rep::simple(a.clone(), 0);
    // Hom(P1, S1) ≠ 0, so (S1, {1}) is not τ-rigid
    let bad = StPair::new(a.clone(), vec![s1.clone()], [0]);
    assert!(!is_tau_rigid_pair(&bad).unwrap());
    let small = StPair::new(a.clone(), vec![s1.clone()], []);
    assert!(is_tau_rigid_pair(&small).unwrap());
    assert!(!is_support_tau_tilting(&small).unwrap());
    // τS1 = S2, and Hom(S2, S2) ≠ 0
    let both = StPair::new(a.clone(), vec![s1, Rep::simple(a.clone(), 1)], []);
    assert!(!is_tau_rigid_pair(&both).unwrap());
}

#[test]
fn kronecker_exceeds_a_small_budget() {
    let a = alg::<Fp<101>>(samples::KRONECKER);
    let q = mutation_quiver(&StPair::projectives(&a), 12, Exec::Parallel).unwrap();
    assert!(q.truncated);
    assert_eq!(q.nodes.len(), 12);
    assert!(q.edges.iter().any(|e| e.multiplicity.is_none()));
    assert!(q.inconclusive.is_empty());
    let dot = q.to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
    assert!(matches!(
        is_tau_tilting_finite(&a, 12, Exec::Sequential).unwrap(),
        Finiteness::UnknownExceeded { explored: 12 }
    ));
}
