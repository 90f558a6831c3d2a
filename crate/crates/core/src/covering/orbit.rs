//! `(G, τ)`-rigidity, support `(G, τ)`-tilting pairs of orbits, their
//! mutation, and the lockstep check that mutation commutes with push-down.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::GroupElem;
use crate::par::Exec;
use crate::rep::{
    decompose, fac_contains, hom_dim, indecomposable_iso, min_left_approx, tau, transpose, Rep, TrialBudget,
};
use crate::tilting::{mutate, pairs_isomorphic, projective_vertex, Direction, Mutation, Position, StPair};

use super::window::{CoverWindow, Fibering};

/// Outcome of the rigidity test of a window module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    /// `Hom(M, τM) = 0`.
    pub tau_rigid: bool,
    /// `Hom(M^g, τM) = 0` for every `g`.
    pub g_tau_rigid: bool,
    /// The `g` with `Hom(M^g, τM) ≠ 0`.
    pub offending: Vec<GroupElem>,
}

/// Checks `Hom(M^g, τM) = 0` for the finitely many `g` whose translate meets
/// the support of `τM`.
pub fn is_g_tau_rigid<F: Field>(cw: &CoverWindow<F>, m: &Rep<F>) -> Result<RigidityReport> {
    let t = cw.tau(m)?;
    let mut offending = Vec::new();
    for g in cw.overlaps(m, &t)? {
        let mg = cw.translate(m, &g)?;
        if hom_dim(&mg, &t)? > 0 {
            offending.push(g);
        }
    }
    let tau_rigid = !offending.iter().any(GroupElem::is_identity);
    Ok(RigidityReport {
        tau_rigid,
        g_tau_rigid: offending.is_empty(),
        offending,
    })
}

/// Both sides of `Hom_A(F_λM, τ_A F_λN) ≅ ⊕_g Hom_B(M, τ_B N^g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoHomReport {
    pub base_side: usize,
    pub cover_side: usize,
    /// Nonzero summands of the cover side.
    pub terms: Vec<(GroupElem, usize)>,
}

impl NoHomReport {
    pub fn holds(&self) -> bool {
        self.base_side == self.cover_side
    }
}

pub fn nohom_check<F: Field>(cw: &CoverWindow<F>, m: &Rep<F>, n: &Rep<F>) -> Result<NoHomReport> {
    let base_side = hom_dim(&cw.push_down(m)?, &tau(&cw.push_down(n)?))?;
    let tn = cw.tau(n)?;
    let mut terms = Vec::new();
    for g in cw.overlaps(&tn, m)? {
        let d = hom_dim(m, &cw.translate(&tn, &g)?)?;
        if d > 0 {
            terms.push((g, d));
        }
    }
    Ok(NoHomReport {
        base_side,
        cover_side: terms.iter().map(|t| t.1).sum(),
        terms,
    })
}

/// Orbit representatives `T` on a window and base vertices `P`.
#[derive(Clone, Debug)]
pub struct OrbitPair<F: Field> {
    pub reps: Vec<Rep<F>>,
    pub proj: BTreeSet<usize>,
}

impl<F: Field> OrbitPair<F> {
    pub fn new(reps: Vec<Rep<F>>, proj: impl IntoIterator<Item = usize>) -> Self {
        OrbitPair {
            reps,
            proj: proj.into_iter().collect(),
        }
    }

    /// The lift of `(A, ∅)`: one window projective over each base vertex,
    /// taken at the lift nearest the center.
    pub fn projectives(cw: &CoverWindow<F>) -> Result<Self> {
        let reps = (0..cw.base().vertex_count())
            .map(|x| Ok(cw.projective(nearest_lift(cw, x)?)))
            .collect::<Result<_>>()?;
        Ok(OrbitPair::new(reps, []))
    }

    /// The lift of `(0, A)`.
    pub fn shifted_projectives(cw: &CoverWindow<F>) -> Self {
        OrbitPair::new(Vec::new(), 0..cw.base().vertex_count())
    }

    pub fn positions(&self) -> Vec<Position> {
        (0..self.reps.len())
            .map(Position::Summand)
            .chain(self.proj.iter().map(|&x| Position::Vertex(x)))
            .collect()
    }

    /// `(⊕ F_λ T_i, P)` over the base.
    pub fn push_down(&self, cw: &CoverWindow<F>) -> Result<StPair<F>> {
        let summands = self.reps.iter().map(|t| cw.push_down(t)).collect::<Result<_>>()?;
        Ok(StPair::new(cw.base().clone(), summands, self.proj.iter().copied()))
    }

    /// Moves the representatives into another window of the same cover.
    pub fn embed(&self, to: &CoverWindow<F>, from: &CoverWindow<F>) -> Result<Self> {
        let reps = self.reps.iter().map(|t| to.embed(t, from)).collect::<Result<_>>()?;
        Ok(OrbitPair {
            reps,
            proj: self.proj.clone(),
        })
    }

    pub fn label(&self, cw: &CoverWindow<F>) -> String {
        let mods: Vec<String> = self
            .reps
            .iter()
            .map(|t| {
                let parts: Vec<String> = t
                    .support()
                    .into_iter()
                    .map(|v| {
                        let d = t.dim_at(v);
                        if d == 1 {
                            cw.vertex_name(v).to_string()
                        } else {
                            format!("{d}*{}", cw.vertex_name(v))
                        }
                    })
                    .collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        let q = cw.base().quiver();
        let proj: Vec<&str> = self.proj.iter().map(|&x| q.vertex_name(x)).collect();
        let m = if mods.is_empty() {
            "0".to_string()
        } else {
            mods.join(" ")
        };
        format!("T: {m} | P: {{{}}}", proj.join(","))
    }
}

fn nearest_lift<F: Field>(cw: &CoverWindow<F>, x: usize) -> Result<usize> {
    (0..cw.vertex_count())
        .filter(|&v| cw.vertex(v).0 == x)
        .min_by_key(|&v| cw.distance(v))
        .ok_or_else(|| Error::WindowTooSmall(format!("no lift of {}", cw.base().quiver().vertex_name(x))))
}

/// The translate of `m` whose lexicographically least support vertex sits
/// at the lift of its base vertex nearest the center, with the translating
/// element.
pub fn normalize<F: Field>(cw: &CoverWindow<F>, m: &Rep<F>) -> Result<(Rep<F>, GroupElem)> {
    if !matches!(cw.fibering(), Fibering::Group) {
        return Ok((m.clone(), cw.grading().group.identity()));
    }
    let least = m
        .support()
        .into_iter()
        .map(|v| {
            let (x, h) = cw.vertex(v);
            (x, h.clone())
        })
        .min();
    match least {
        None => Ok((m.clone(), cw.grading().group.identity())),
        Some((x, h)) => {
            let target = cw.vertex(nearest_lift(cw, x)?).1;
            let g = h.inv().mul(target)?;
            Ok((cw.translate(m, &g)?, g))
        }
    }
}

/// Some `g` with `a^g ≅ b`, for indecomposable `a`, `b`.
pub fn same_orbit<F: Field>(cw: &CoverWindow<F>, a: &Rep<F>, b: &Rep<F>) -> Result<Option<GroupElem>> {
    for g in cw.overlaps(a, b)? {
        let ag = match cw.translate(a, &g) {
            Ok(t) => t,
            Err(Error::InsufficientMargin(_)) => continue,
            Err(e) => return Err(e),
        };
        if ag.dims() == b.dims() && indecomposable_iso(&ag, b)?.is_some() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Every translate `Y^g` of a module of `others` whose support meets that
/// of `x`; these are the only ones with `Hom(x, Y^g)` or `Hom(Y^g, x)`
/// possibly nonzero.
fn meeting_translates<F: Field>(cw: &CoverWindow<F>, others: &[Rep<F>], x: &Rep<F>) -> Result<Vec<Rep<F>>> {
    let mut out = Vec::new();
    for y in others {
        for g in cw.overlaps(y, x)? {
            out.push(cw.translate(y, &g)?);
        }
    }
    Ok(out)
}

fn check_stable<F: Field>(cw: &CoverWindow<F>, p: &OrbitPair<F>) -> Result<()> {
    for t in &p.reps {
        cw.tau(t)?;
    }
    Ok(())
}

/// Orbit-level τ-rigidity, `Hom(P, T) = 0`, distinct orbits, and
/// `|T|_G + |P|_G = |A|`.
pub fn is_support_g_tilting<F: Field>(cw: &CoverWindow<F>, p: &OrbitPair<F>) -> Result<bool> {
    for (i, a) in p.reps.iter().enumerate() {
        for b in &p.reps[..i] {
            if same_orbit(cw, b, a)?.is_some() {
                return Err(Error::NotSupportTilting(format!(
                    "representatives {} and {} lie in one orbit",
                    i,
                    p.reps.iter().position(|r| r.same_as(b)).unwrap_or(0)
                )));
            }
        }
    }
    if p.reps.iter().any(|t| !cw.base_support(t).is_disjoint(&p.proj)) {
        return Ok(false);
    }
    for y in &p.reps {
        let ty = cw.tau(y)?;
        for x in &p.reps {
            for g in cw.overlaps(&ty, x)? {
                if hom_dim(x, &cw.translate(&ty, &g)?)? > 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(p.reps.len() + p.proj.len() == cw.base().vertex_count())
}

/// Result of an orbit mutation.
#[derive(Clone, Debug)]
pub struct OrbitMutation<F: Field> {
    pub pair: OrbitPair<F>,
    pub direction: Direction,
    /// Number of indecomposable summands of the exchange module (0 when it
    /// vanished).
    pub multiplicity: usize,
    /// The `g_k` with `Y ≅ ⊕ Z^{g_k}` for the new representative `Z`.
    pub translates: Vec<GroupElem>,
    pub created: Position,
}

fn orbit_mutate_left<F: Field>(cw: &CoverWindow<F>, p: &OrbitPair<F>, k: usize) -> Result<OrbitMutation<F>> {
    let x = p.reps.get(k).ok_or(Error::BadPosition(k))?;
    let rest: Vec<Rep<F>> = p
        .reps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, m)| m.clone())
        .collect();
    let us = meeting_translates(cw, &rest, x)?;
    if fac_contains(&us, x)? {
        return Err(Error::NotLeftMutation(k));
    }
    let approx = min_left_approx(x, &us)?;
    let y = approx.map.cokernel().module;
    if y.is_zero() {
        let covered: BTreeSet<usize> = rest.iter().flat_map(|t| cw.base_support(t)).collect();
        let proj: BTreeSet<usize> = (0..cw.base().vertex_count()).filter(|v| !covered.contains(v)).collect();
        let added: Vec<usize> = proj.difference(&p.proj).copied().collect();
        let [v] = added.as_slice() else {
            return Err(Error::NotSupportTilting("recompletion is not a single orbit".into()));
        };
        return Ok(OrbitMutation {
            created: Position::Vertex(*v),
            pair: OrbitPair { reps: rest, proj },
            direction: Direction::Left,
            multiplicity: 0,
            translates: Vec::new(),
        });
    }
    let parts = decompose(&y, TrialBudget::default())?.modules();
    let (z, _) = normalize(cw, &parts[0])?;
    let mut translates = Vec::new();
    for part in &parts {
        let g = same_orbit(cw, &z, part)?
            .ok_or_else(|| Error::NotSupportTilting("exchange module meets several orbits".into()))?;
        translates.push(g);
    }
    let mut reps = p.reps.clone();
    reps[k] = z;
    Ok(OrbitMutation {
        pair: OrbitPair {
            reps,
            proj: p.proj.clone(),
        },
        direction: Direction::Left,
        multiplicity: parts.len(),
        translates,
        created: Position::Summand(k),
    })
}

/// `(T, P)† = (Tr T_np ⊕ P*, T_pr*)` on the opposite window, with the
/// position correspondence.
fn orbit_dagger<F: Field>(
    cw: &CoverWindow<F>,
    op: &CoverWindow<F>,
    p: &OrbitPair<F>,
) -> Result<(OrbitPair<F>, Vec<(Position, Position)>)> {
    let mut reps = Vec::new();
    let mut proj = BTreeSet::new();
    let mut map = Vec::new();
    for (k, m) in p.reps.iter().enumerate() {
        match projective_vertex(m) {
            Some(v) => {
                let x = cw.vertex(v).0;
                proj.insert(x);
                map.push((Position::Summand(k), Position::Vertex(x)));
            }
            None => {
                map.push((Position::Summand(k), Position::Summand(reps.len())));
                let t = transpose(m).rehome(op.algebra());
                reps.push(normalize(op, &t)?.0);
            }
        }
    }
    for &x in &p.proj {
        map.push((Position::Vertex(x), Position::Summand(reps.len())));
        reps.push(op.projective(nearest_lift(op, x)?));
    }
    Ok((OrbitPair { reps, proj }, map))
}

fn orbit_mutate_right<F: Field>(cw: &CoverWindow<F>, p: &OrbitPair<F>, pos: Position) -> Result<OrbitMutation<F>> {
    let op = cw.opposite();
    let (d, map) = orbit_dagger(cw, &op, p)?;
    check_stable(&op, &d)?;
    let bad = || {
        Error::BadPosition(match pos {
            Position::Summand(k) | Position::Vertex(k) => k,
        })
    };
    let j = match map.iter().find(|(a, _)| *a == pos).map(|(_, b)| *b) {
        Some(Position::Summand(j)) => j,
        _ => return Err(bad()),
    };
    let left = orbit_mutate_left(&op, &d, j)?;
    let mut reps: Vec<Rep<F>> = Vec::new();
    let mut proj = p.proj.clone();
    for (k, m) in p.reps.iter().enumerate() {
        if pos != Position::Summand(k) {
            reps.push(m.clone());
        }
    }
    if let Position::Vertex(x) = pos {
        proj.remove(&x);
    }
    if left.multiplicity == 0 {
        let added: Vec<usize> = left.pair.proj.difference(&d.proj).copied().collect();
        let [y] = added.as_slice() else {
            return Err(Error::NotSupportTilting(
                "dagger recompletion is not a single orbit".into(),
            ));
        };
        reps.push(cw.projective(nearest_lift(cw, *y)?));
    } else {
        let z = &left.pair.reps[j];
        match projective_vertex(z) {
            Some(v) => {
                proj.insert(op.vertex(v).0);
            }
            None => {
                let t = transpose(z).rehome(cw.algebra());
                reps.push(normalize(cw, &t)?.0);
            }
        }
    }
    let created = match proj.difference(&p.proj).next() {
        Some(&y) => Position::Vertex(y),
        None => Position::Summand(reps.len() - 1),
    };
    Ok(OrbitMutation {
        pair: OrbitPair { reps, proj },
        direction: Direction::Right,
        multiplicity: left.multiplicity,
        translates: left.translates.iter().map(GroupElem::inv).collect(),
        created,
    })
}

/// Mutation at an orbit or a vertex of `P`: left when possible, otherwise
/// right through the dagger on the opposite window.
pub fn orbit_mutate<F: Field>(cw: &CoverWindow<F>, p: &OrbitPair<F>, pos: Position) -> Result<OrbitMutation<F>> {
    check_stable(cw, p)?;
    match pos {
        Position::Summand(k) => match orbit_mutate_left(cw, p, k) {
            Err(Error::NotLeftMutation(_)) => orbit_mutate_right(cw, p, pos),
            other => other,
        },
        Position::Vertex(x) if p.proj.contains(&x) => orbit_mutate_right(cw, p, pos),
        Position::Vertex(x) => Err(Error::BadPosition(x)),
    }
}

/// Summary of a lockstep exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub nodes: usize,
    pub mutations: usize,
    /// Window radius in use at the end (after any enlargement).
    pub radius: usize,
    pub divergence: Option<String>,
}

impl CommuteReport {
    pub fn ok(&self) -> bool {
        self.divergence.is_none()
    }
}

impl fmt::Display for CommuteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs, {} mutations checked, window radius {}",
            self.nodes, self.mutations, self.radius
        )?;
        match &self.divergence {
            None => write!(f, ", push-down commutes with mutation"),
            Some(d) => write!(f, ", divergence: {d}"),
        }
    }
}

/// Windows are doubled up to this radius when margins run out.
pub const MAX_RADIUS: usize = 64;

fn is_margin_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InsufficientMargin(_) | Error::WindowTooSmall(_) | Error::RadiusTooSmall { .. }
    )
}

struct Lockstep<F: Field> {
    window: CoverWindow<F>,
    nodes: Vec<(StPair<F>, OrbitPair<F>)>,
    buckets: HashMap<(Vec<Vec<usize>>, Vec<usize>), Vec<usize>>,
    mutations: usize,
}

type StepResult<F> = Result<(Mutation<F>, OrbitMutation<F>, bool)>;

impl<F: Field> Lockstep<F> {
    fn new(cw: &CoverWindow<F>, seed: &OrbitPair<F>) -> Result<Self> {
        let base = seed.push_down(cw)?;
        let mut s = Lockstep {
            window: cw.clone(),
            nodes: Vec::new(),
            buckets: HashMap::new(),
            mutations: 0,
        };
        s.insert(base, seed.clone());
        Ok(s)
    }

    fn insert(&mut self, base: StPair<F>, up: OrbitPair<F>) -> usize {
        let id = self.nodes.len();
        self.buckets.entry(key(&base)).or_default().push(id);
        self.nodes.push((base, up));
        id
    }

    fn find(&self, p: &StPair<F>) -> Result<Option<usize>> {
        for &c in self.buckets.get(&key(p)).map(Vec::as_slice).unwrap_or(&[]) {
            if pairs_isomorphic(&self.nodes[c].0, p)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn enlarge(&mut self) -> Result<()> {
        let r = self.window.radius() * 2;
        if r > MAX_RADIUS {
            return Err(Error::WindowTooSmall(format!(
                "margins exhausted at radius {}",
                self.window.radius()
            )));
        }
        let w = self.window.resized(r)?;
        for node in &mut self.nodes {
            node.1 = node.1.embed(&w, &self.window)?;
        }
        self.window = w;
        Ok(())
    }

    fn step(cw: &CoverWindow<F>, base: &StPair<F>, up: &OrbitPair<F>, pos: Position) -> StepResult<F> {
        let down = mutate(base, pos)?;
        let lifted = orbit_mutate(cw, up, pos)?;
        let agrees = pairs_isomorphic(&lifted.pair.push_down(cw)?, &down.pair)?;
        Ok((down, lifted, agrees))
    }

    /// Expands one level; returns the new frontier, or the divergence.
    fn level(
        &mut self,
        frontier: &[usize],
        exec: Exec,
        budget: usize,
    ) -> Result<std::result::Result<Vec<usize>, String>> {
        loop {
            let jobs: Vec<(usize, Position)> = frontier
                .iter()
                .flat_map(|&n| self.nodes[n].1.positions().into_iter().map(move |p| (n, p)))
                .collect();
            let results: Vec<StepResult<F>> = {
                let (cw, nodes) = (&self.window, &self.nodes);
                exec.map(&jobs, |&(n, pos)| Self::step(cw, &nodes[n].0, &nodes[n].1, pos))
            };
            if let Some(Err(_)) = results.iter().find(|r| matches!(r, Err(e) if is_margin_error(e))) {
                self.enlarge()?;
                continue;
            }
            let mut next = Vec::new();
            for (&(n, pos), r) in jobs.iter().zip(results) {
                let (down, lifted, agrees) = r?;
                self.mutations += 1;
                if !agrees {
                    return Ok(Err(format!(
                        "mutating {} at {pos:?}: base gives {}, cover gives {}",
                        self.nodes[n].0.label(),
                        down.pair.label(),
                        lifted.pair.label(&self.window)
                    )));
                }
                if self.find(&down.pair)?.is_none() {
                    if self.nodes.len() >= budget {
                        return Err(Error::BudgetExhausted(budget));
                    }
                    next.push(self.insert(down.pair, lifted.pair));
                }
            }
            return Ok(Ok(next));
        }
    }
}

fn key<F: Field>(p: &StPair<F>) -> (Vec<Vec<usize>>, Vec<usize>) {
    (p.dim_vectors(), p.proj.iter().copied().collect())
}

/// Explores the base mutation quiver breadth-first to `depth` from the
/// push-down of `seed`, mutating the orbit pairs upstairs in lockstep and
/// comparing push-downs at every step. The window is doubled (up to
/// [`MAX_RADIUS`]) whenever margins run out.
pub fn verify_commute<F: Field>(
    cw: &CoverWindow<F>,
    seed: &OrbitPair<F>,
    depth: usize,
    exec: Exec,
) -> Result<CommuteReport> {
    let mut ls = Lockstep::new(cw, seed)?;
    let mut frontier = vec![0];
    let mut divergence = None;
    for _ in 0..depth {
        if frontier.is_empty() {
            break;
        }
        match ls.level(&frontier, exec, usize::MAX)? {
            Ok(next) => frontier = next,
            Err(d) => {
                divergence = Some(d);
                break;
            }
        }
    }
    Ok(CommuteReport {
        nodes: ls.nodes.len(),
        mutations: ls.mutations,
        radius: ls.window.radius(),
        divergence,
    })
}

/// A lift of `target` found by mutating from `(A, ∅)` downstairs and
/// upstairs in lockstep, with the window it lives on and the depth.
pub fn lift_via_mutation_path<F: Field>(
    cw: &CoverWindow<F>,
    target: &StPair<F>,
    budget: usize,
    exec: Exec,
) -> Result<(OrbitPair<F>, CoverWindow<F>, usize)> {
    let seed = OrbitPair::projectives(cw)?;
    let mut ls = Lockstep::new(cw, &seed)?;
    let mut frontier = vec![0];
    let mut depth = 0;
    loop {
        for &n in &frontier {
            if pairs_isomorphic(&ls.nodes[n].0, target)? {
                return Ok((ls.nodes[n].1.clone(), ls.window, depth));
            }
        }
        if frontier.is_empty() {
            return Err(Error::NotSupportTilting("target is not reachable from (A, 0)".into()));
        }
        frontier = match ls.level(&frontier, exec, budget)? {
            Ok(next) => next,
            Err(d) => return Err(Error::LockstepDivergence(d)),
        };
        depth += 1;
    }
}
