//! Breadth-first exploration of the support τ-tilting mutation quiver.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::par::Exec;

use super::{mutate, pairs_isomorphic, Direction, Mutation, Position, StPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub position: Position,
    pub direction: Direction,
    /// Multiplicity of the exchange module; `None` for an edge that was
    /// inferred as the reverse of a computed one.
    pub multiplicity: Option<usize>,
}

/// Nodes in discovery order; both directions of every mutation are stored.
#[derive(Clone, Debug)]
pub struct MutationQuiver<F: Field> {
    pub nodes: Vec<StPair<F>>,
    pub edges: Vec<Edge>,
    /// The node cap was reached with a further pair found; the search stops
    /// there, so edges are complete only when this is false.
    pub truncated: bool,
    /// Nodes admitted after an inconclusive isomorphism test.
    pub inconclusive: Vec<usize>,
}

type Key = (Vec<Vec<usize>>, Vec<usize>);

fn key<F: Field>(p: &StPair<F>) -> Key {
    (p.dim_vectors(), p.proj.iter().copied().collect())
}

/// Explores the mutation quiver from `seed`, level by level. Mutations of a
/// level run through `exec`; deduplication is sequential, first by dimension
/// vectors and `P`, then by isomorphism.
///
/// Mutating a node at the summand it was created with leads back to its
/// parent, so that edge is recorded without recomputing it.
pub fn mutation_quiver<F: Field>(seed: &StPair<F>, budget: usize, exec: Exec) -> Result<MutationQuiver<F>> {
    let mut nodes = vec![seed.clone()];
    let mut buckets: HashMap<Key, Vec<usize>> = HashMap::new();
    buckets.entry(key(seed)).or_default().push(0);
    let mut edges = Vec::new();
    let mut truncated = false;
    let mut inconclusive = Vec::new();
    let mut frontier = vec![0usize];
    let mut known: HashMap<(usize, Position), (usize, Direction)> = HashMap::new();
    'search: while !frontier.is_empty() {
        let jobs: Vec<(usize, Position)> = frontier
            .iter()
            .flat_map(|&n| nodes[n].positions().into_iter().map(move |p| (n, p)))
            .collect();
        let todo: Vec<(usize, Position)> = jobs.iter().copied().filter(|j| !known.contains_key(j)).collect();
        let mut results = {
            let nodes = &nodes;
            exec.map(&todo, |&(n, pos)| mutate(&nodes[n], pos))
        }
        .into_iter();
        let mut next = Vec::new();
        for (from, position) in jobs {
            if let Some(&(to, direction)) = known.get(&(from, position)) {
                edges.push(Edge {
                    from,
                    to,
                    position,
                    direction,
                    multiplicity: None,
                });
                continue;
            }
            let m: Mutation<F> = results.next().expect("one result per job")?;
            let k = key(&m.pair);
            let mut found = None;
            let mut unsure = false;
            for &c in buckets.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                match pairs_isomorphic(&nodes[c], &m.pair) {
                    Ok(true) => {
                        found = Some(c);
                        break;
                    }
                    Ok(false) => {}
                    Err(Error::Inconclusive(_)) | Err(Error::FieldTooSmall) => unsure = true,
                    Err(e) => return Err(e),
                }
            }
            let to = match found {
                Some(c) => c,
                None if nodes.len() >= budget => {
                    truncated = true;
                    break 'search;
                }
                None => {
                    let id = nodes.len();
                    if unsure {
                        inconclusive.push(id);
                    }
                    nodes.push(m.pair);
                    buckets.entry(k).or_default().push(id);
                    next.push(id);
                    known.insert((id, m.created), (from, m.direction.reverse()));
                    id
                }
            };
            edges.push(Edge {
                from,
                to,
                position,
                direction: m.direction,
                multiplicity: Some(m.multiplicity),
            });
        }
        frontier = next;
    }
    Ok(MutationQuiver {
        nodes,
        edges,
        truncated,
        inconclusive,
    })
}

impl<F: Field> MutationQuiver<F> {
    /// Left-mutation arrows only: the Hasse quiver of `Fac` inclusion.
    pub fn left_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.direction == Direction::Left)
    }

    /// Graphviz text; left mutations solid, right mutations dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mutations {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", n.label().replace('"', "'"));
        }
        for e in &self.edges {
            let style = match e.direction {
                Direction::Left => "solid",
                Direction::Right => "dashed",
            };
            let _ = writeln!(out, "  n{} -> n{} [style={style}];", e.from, e.to);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite(usize),
    /// The node budget was exhausted before the search closed.
    UnknownExceeded {
        explored: usize,
    },
}

/// Counts support τ-tilting pairs by exploring from `(A, ∅)`; when the
/// search closes the count is complete, since the mutation quiver of a
/// τ-tilting finite algebra is connected.
pub fn is_tau_tilting_finite<F: Field>(alg: &Arc<Algebra<F>>, budget: usize, exec: Exec) -> Result<Finiteness> {
    let q = mutation_quiver(&StPair::projectives(alg), budget, exec)?;
    Ok(if q.truncated {
        Finiteness::UnknownExceeded {
            explored: q.nodes.len(),
        }
    } else {
        Finiteness::Finite(q.nodes.len())
    })
}
