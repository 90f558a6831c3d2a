//! Support τ-tilting pairs and their mutation.

mod graph;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rep::{decompose, fac_contains, hom_dim, min_left_approx, projective, tau, transpose, Rep, TrialBudget};

pub use graph::{is_tau_tilting_finite, mutation_quiver, Edge, Finiteness, MutationQuiver};

/// A pair `(M, P)`: the indecomposable summands of a basic module `M` and
/// the vertices `x` of `P = ⊕ P_x`.
#[derive(Clone)]
pub struct StPair<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub summands: Vec<Rep<F>>,
    pub proj: BTreeSet<usize>,
}

/// A mutable position of a pair: a summand of `M` or a vertex of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Summand(usize),
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

/// Result of a mutation: the new pair and how the exchange went.
#[derive(Clone, Debug)]
pub struct Mutation<F: Field> {
    pub pair: StPair<F>,
    pub direction: Direction,
    /// Multiplicity `m` in `Y ≅ Z^m` for the exchange module (0 when it
    /// vanished).
    pub multiplicity: usize,
    /// Where the new summand or vertex sits in `pair`.
    pub created: Position,
}

impl<F: Field> StPair<F> {
    pub fn new(algebra: Arc<Algebra<F>>, summands: Vec<Rep<F>>, proj: impl IntoIterator<Item = usize>) -> Self {
        StPair {
            algebra,
            summands,
            proj: proj.into_iter().collect(),
        }
    }

    /// `(A, ∅)`.
    pub fn projectives(alg: &Arc<Algebra<F>>) -> Self {
        let summands = (0..alg.vertex_count()).map(|x| projective(alg, x)).collect();
        Self::new(alg.clone(), summands, [])
    }

    /// `(0, A)`.
    pub fn shifted_projectives(alg: &Arc<Algebra<F>>) -> Self {
        Self::new(alg.clone(), Vec::new(), 0..alg.vertex_count())
    }

    pub fn positions(&self) -> Vec<Position> {
        (0..self.summands.len())
            .map(Position::Summand)
            .chain(self.proj.iter().map(|&x| Position::Vertex(x)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.summands.len() + self.proj.len()
    }

    /// The module `M` as one representation.
    pub fn module(&self) -> Rep<F> {
        Rep::direct_sum(&self.algebra, &self.summands).0
    }

    /// Dimension vectors of the summands, sorted.
    pub fn dim_vectors(&self) -> Vec<Vec<usize>> {
        let mut d: Vec<Vec<usize>> = self.summands.iter().map(|m| m.dims().to_vec()).collect();
        d.sort();
        d
    }

    /// Short text form: `M: [1,1] [1,0] | P: {2}` with vertex names.
    pub fn label(&self) -> String {
        let q = self.algebra.quiver();
        let mods: Vec<String> = self
            .dim_vectors()
            .iter()
            .map(|d| format!("[{}]", d.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let proj: Vec<&str> = self.proj.iter().map(|&x| q.vertex_name(x)).collect();
        let m = if mods.is_empty() {
            "0".to_string()
        } else {
            mods.join(" ")
        };
        format!("M: {m} | P: {{{}}}", proj.join(","))
    }
}

impl<F: Field> fmt::Debug for StPair<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Hom(M, τM) = 0` and `Hom(P, M) = 0`.
pub fn is_tau_rigid_pair<F: Field>(p: &StPair<F>) -> Result<bool> {
    if p.summands.iter().any(|m| p.proj.iter().any(|&x| m.dim_at(x) > 0)) {
        return Ok(false);
    }
    let taus: Vec<Rep<F>> = p.summands.iter().map(tau).collect();
    for m in &p.summands {
        for t in &taus {
            if hom_dim(m, t)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// τ-rigid pair with `|M| + |P| = |A|`, indecomposable pairwise
/// non-isomorphic summands.
pub fn is_support_tau_tilting<F: Field>(p: &StPair<F>) -> Result<bool> {
    if p.size() != p.algebra.vertex_count() || p.summands.iter().any(Rep::is_zero) {
        return Ok(false);
    }
    for (i, m) in p.summands.iter().enumerate() {
        if decompose(m, TrialBudget::default())?.summands.len() != 1 {
            return Ok(false);
        }
        for n in &p.summands[..i] {
            if crate::rep::indecomposable_iso(m, n)?.is_some() {
                return Ok(false);
            }
        }
    }
    is_tau_rigid_pair(p)
}

/// The vertex `x` with `m ≅ P_x`, if `m` is an indecomposable projective.
pub fn projective_vertex<F: Field>(m: &Rep<F>) -> Option<usize> {
    let top = m.top_dims();
    if top.iter().sum::<usize>() != 1 {
        return None;
    }
    let x = top.iter().position(|&t| t == 1)?;
    (m.dims() == projective(m.algebra(), x).dims()).then_some(x)
}

/// Left mutation at a summand `X` of `M`, defined when `X ∉ Fac(M/X)`.
pub fn mutate_left<F: Field>(p: &StPair<F>, k: usize) -> Result<Mutation<F>> {
    let x = p.summands.get(k).ok_or(Error::BadPosition(k))?;
    let rest: Vec<Rep<F>> = p
        .summands
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, m)| m.clone())
        .collect();
    if fac_contains(&rest, x)? {
        return Err(Error::NotLeftMutation(k));
    }
    let approx = min_left_approx(x, &rest)?;
    let y = approx.map.cokernel().module;
    if y.is_zero() {
        let proj: Vec<usize> = (0..p.algebra.vertex_count())
            .filter(|&v| rest.iter().all(|m| m.dim_at(v) == 0))
            .collect();
        let added: Vec<usize> = proj.iter().copied().filter(|x| !p.proj.contains(x)).collect();
        let [x] = added.as_slice() else {
            return Err(Error::NotSupportTilting("recompletion is not a single vertex".into()));
        };
        return Ok(Mutation {
            created: Position::Vertex(*x),
            pair: StPair::new(p.algebra.clone(), rest, proj),
            direction: Direction::Left,
            multiplicity: 0,
        });
    }
    let groups = decompose(&y, TrialBudget::default())?.grouped()?;
    let [(z, mult)] = groups.as_slice() else {
        return Err(Error::NotSupportTilting(format!(
            "exchange module has {} non-isomorphic summands",
            groups.len()
        )));
    };
    let mut summands = p.summands.clone();
    summands[k] = z.clone();
    Ok(Mutation {
        pair: StPair::new(p.algebra.clone(), summands, p.proj.iter().copied()),
        direction: Direction::Left,
        multiplicity: *mult,
        created: Position::Summand(k),
    })
}

/// `(M, P)† = (Tr M_np ⊕ P*, M_pr*)` over the opposite algebra.
///
/// Also returns, for each position of `p`, the matching position of the
/// result.
pub fn dagger<F: Field>(p: &StPair<F>) -> (StPair<F>, Vec<(Position, Position)>) {
    let op = p.algebra.opposite();
    let mut summands = Vec::new();
    let mut proj = BTreeSet::new();
    let mut map = Vec::new();
    for (k, m) in p.summands.iter().enumerate() {
        match projective_vertex(m) {
            Some(x) => {
                proj.insert(x);
                map.push((Position::Summand(k), Position::Vertex(x)));
            }
            None => {
                map.push((Position::Summand(k), Position::Summand(summands.len())));
                summands.push(transpose(m));
            }
        }
    }
    for &x in &p.proj {
        map.push((Position::Vertex(x), Position::Summand(summands.len())));
        summands.push(projective(&op, x));
    }
    (StPair::new(op, summands, proj), map)
}

/// Right mutation: the left mutation of the dagger, taken back.
pub fn mutate_right<F: Field>(p: &StPair<F>, pos: Position) -> Result<Mutation<F>> {
    let (d, map) = dagger(p);
    let target = map
        .iter()
        .find(|(a, _)| *a == pos)
        .map(|(_, b)| *b)
        .ok_or(Error::BadPosition(position_index(pos)))?;
    // projective summands of M never lie in Fac of the rest, so they are
    // only mutated to the left
    let j = match target {
        Position::Summand(j) => j,
        Position::Vertex(_) => return Err(Error::BadPosition(position_index(pos))),
    };
    let left = mutate_left(&d, j)?;
    let alg = &p.algebra;
    let mut summands: Vec<Rep<F>> = Vec::new();
    let mut proj: BTreeSet<usize> = p.proj.clone();
    for (k, m) in p.summands.iter().enumerate() {
        if pos != Position::Summand(k) {
            summands.push(m.clone());
        }
    }
    if let Position::Vertex(x) = pos {
        proj.remove(&x);
    }
    if left.multiplicity == 0 {
        // the exchange vanished upstairs: a new vertex y of P†, i.e. P_y
        let added: Vec<usize> = left.pair.proj.difference(&d.proj).copied().collect();
        let [y] = added.as_slice() else {
            return Err(Error::NotSupportTilting(
                "dagger recompletion is not a single vertex".into(),
            ));
        };
        summands.push(projective(alg, *y));
    } else {
        let z = &left.pair.summands[j];
        match projective_vertex(z) {
            Some(y) => {
                proj.insert(y);
            }
            None => summands.push(transpose(z).rehome(alg)),
        }
    }
    let created = match projective_vertex_added(&proj, &p.proj) {
        Some(y) => Position::Vertex(y),
        None => Position::Summand(summands.len() - 1),
    };
    Ok(Mutation {
        pair: StPair::new(alg.clone(), summands, proj),
        direction: Direction::Right,
        multiplicity: left.multiplicity,
        created,
    })
}

fn projective_vertex_added(new: &BTreeSet<usize>, old: &BTreeSet<usize>) -> Option<usize> {
    new.difference(old).next().copied()
}

fn position_index(pos: Position) -> usize {
    match pos {
        Position::Summand(k) | Position::Vertex(k) => k,
    }
}

/// The unique mutation at a position: left when the summand is not in
/// `Fac` of the rest, right otherwise (always right at a vertex of `P`).
pub fn mutate<F: Field>(p: &StPair<F>, pos: Position) -> Result<Mutation<F>> {
    match pos {
        Position::Summand(k) => match mutate_left(p, k) {
            Err(Error::NotLeftMutation(_)) => mutate_right(p, pos),
            other => other,
        },
        Position::Vertex(x) if p.proj.contains(&x) => mutate_right(p, pos),
        Position::Vertex(x) => Err(Error::BadPosition(x)),
    }
}

/// Left iff every summand of `q` lies in `Fac M_p`; right iff every summand
/// of `p` lies in `Fac M_q`.
pub fn classify_direction<F: Field>(p: &StPair<F>, q: &StPair<F>) -> Result<Direction> {
    let q_in_p = q
        .summands
        .iter()
        .try_fold(true, |acc, m| Ok::<_, Error>(acc && fac_contains(&p.summands, m)?))?;
    let p_in_q = p
        .summands
        .iter()
        .try_fold(true, |acc, m| Ok::<_, Error>(acc && fac_contains(&q.summands, m)?))?;
    match (q_in_p, p_in_q) {
        (true, false) => Ok(Direction::Left),
        (false, true) => Ok(Direction::Right),
        _ => Err(Error::NotMutationPair),
    }
}

/// Same proj vertices and summands matched up to isomorphism.
pub fn pairs_isomorphic<F: Field>(p: &StPair<F>, q: &StPair<F>) -> Result<bool> {
    if p.proj != q.proj || p.summands.len() != q.summands.len() || p.dim_vectors() != q.dim_vectors() {
        return Ok(false);
    }
    let mut used = vec![false; q.summands.len()];
    'outer: for m in &p.summands {
        for (j, n) in q.summands.iter().enumerate() {
            if !used[j] && m.dims() == n.dims() && crate::rep::indecomposable_iso(m, n)?.is_some() {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
