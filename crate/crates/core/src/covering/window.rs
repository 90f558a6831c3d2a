//! Finite windows of a covering quiver, push-down, pull-up and
//! translation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fundamental::Orientation;
use crate::group::GroupElem;
use crate::matrix::Matrix;
use crate::quiver::{BoundQuiver, LinComb, Path, Quiver};
use crate::rep::{tau, Rep};
use crate::tower::Tower;

use super::Grading;

/// What the fiber over a base vertex is: the group itself (the Galois
/// cover), or the left cosets `G/G_s` of a tower stage (an intermediate
/// cover).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fibering {
    Group,
    Cosets { tower: Tower, stage: usize },
}

impl Fibering {
    /// Canonical label of the fiber point of `h`.
    pub fn normalize(&self, h: GroupElem) -> GroupElem {
        match self {
            Fibering::Group => h,
            Fibering::Cosets { tower, stage } => match &h {
                GroupElem::Free(w) => GroupElem::Free(tower.coset_rep(&tower.coset_key(w, *stage))),
                GroupElem::Abelian(_) => h,
            },
        }
    }
}

/// The ball of radius `R` around `(center, 1)` in the covering quiver, as a
/// bound quiver with lifted relations and paths of length `N` killed.
#[derive(Clone, Debug)]
pub struct CoverWindow<F: Field> {
    base: Arc<Algebra<F>>,
    grading: Grading,
    fibering: Fibering,
    algebra: Arc<Algebra<F>>,
    vertices: Vec<(usize, GroupElem)>,
    index: HashMap<(usize, GroupElem), usize>,
    arrow_base: Vec<usize>,
    arrow_index: HashMap<(usize, usize), usize>,
    dist: Vec<usize>,
    center: usize,
    radius: usize,
    nilpotency: usize,
    opposite: bool,
}

impl<F: Field> CoverWindow<F> {
    /// The window of the Galois cover given by `grading`.
    pub fn new(base: &Arc<Algebra<F>>, grading: &Grading, center: usize, radius: usize) -> Result<Self> {
        Self::with_fibering(base, grading, Fibering::Group, center, radius)
    }

    pub fn with_fibering(
        base: &Arc<Algebra<F>>,
        grading: &Grading,
        fibering: Fibering,
        center: usize,
        radius: usize,
    ) -> Result<Self> {
        grading.require_homogeneous(base.bound_quiver())?;
        if matches!(fibering, Fibering::Cosets { .. }) && !matches!(grading.group, crate::group::Group::Free { .. }) {
            return Err(Error::Group("coset fibering needs a free group".into()));
        }
        if center >= base.vertex_count() {
            return Err(Error::UnknownVertex(center.to_string()));
        }
        let n = base.nilpotency();
        if radius < n {
            return Err(Error::RadiusTooSmall { radius, bound: n });
        }
        let bq = base.bound_quiver();
        let q = &bq.quiver;
        let start = (center, fibering.normalize(grading.group.identity()));
        let mut vertices = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut dist = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            if dist[v] == radius {
                continue;
            }
            let (x, h) = vertices[v].clone();
            let steps = q
                .arrows_from(x)
                .map(|a| (a, Orientation::Forward, q.arrow_info(a).target))
                .chain(
                    q.arrows_into(x)
                        .map(|a| (a, Orientation::Inverse, q.arrow_info(a).source)),
                );
            for (a, o, y) in steps.collect::<Vec<_>>() {
                let key = (y, fibering.normalize(grading.step(a, o, &h)));
                if !index.contains_key(&key) {
                    index.insert(key.clone(), vertices.len());
                    vertices.push(key);
                    dist.push(dist[v] + 1);
                    queue.push_back(vertices.len() - 1);
                }
            }
        }
        let label = |g: &GroupElem| label_text(grading, &fibering, g);
        let mut wq = Quiver::new();
        for (x, h) in &vertices {
            wq.add_vertex(format!("{}_{}", q.vertex_name(*x), label(h)))?;
        }
        let mut arrow_base = Vec::new();
        let mut arrow_index = HashMap::new();
        for (v, (x, h)) in vertices.iter().enumerate() {
            for a in q.arrows_from(*x) {
                let info = q.arrow_info(a);
                let key = (
                    info.target,
                    fibering.normalize(grading.step(a, Orientation::Forward, h)),
                );
                if let Some(&t) = index.get(&key) {
                    let k = wq.add_arrow(format!("{}_{}", info.name, label(h)), v, t)?;
                    arrow_base.push(a);
                    arrow_index.insert((a, v), k);
                }
            }
        }
        let mut relations = Vec::new();
        for r in &bq.relations {
            for v in (0..vertices.len()).filter(|&v| vertices[v].0 == r.source()) {
                let lifted: Option<Vec<(F, Path)>> = r
                    .terms()
                    .iter()
                    .map(|(c, p)| lift_path(&wq, &arrow_index, p, v).map(|lp| (c.clone(), lp)))
                    .collect();
                if let Some(terms) = lifted {
                    relations.push(LinComb::new(terms, &wq)?);
                }
            }
        }
        let algebra = Algebra::new(BoundQuiver {
            quiver: wq,
            relations,
            truncation: Some(n),
        })?;
        Ok(CoverWindow {
            base: base.clone(),
            grading: grading.clone(),
            fibering,
            algebra,
            vertices,
            index,
            arrow_base,
            arrow_index,
            dist,
            center: 0,
            radius,
            nilpotency: n,
            opposite: false,
        })
    }

    /// The same window with every arrow reversed, over the opposite base.
    pub fn opposite(&self) -> Self {
        CoverWindow {
            base: self.base.opposite(),
            algebra: self.algebra.opposite(),
            opposite: !self.opposite,
            ..self.clone()
        }
    }

    /// The window of radius `radius` around the same center.
    pub fn resized(&self, radius: usize) -> Result<Self> {
        let (base, center) = if self.opposite {
            (self.base.opposite(), self.vertices[self.center].0)
        } else {
            (self.base.clone(), self.vertices[self.center].0)
        };
        let w = Self::with_fibering(&base, &self.grading, self.fibering.clone(), center, radius)?;
        Ok(if self.opposite { w.opposite() } else { w })
    }

    pub fn base(&self) -> &Arc<Algebra<F>> {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn fibering(&self) -> &Fibering {
        &self.fibering
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// `(base vertex, fiber label)` of a window vertex.
    pub fn vertex(&self, v: usize) -> (usize, &GroupElem) {
        (self.vertices[v].0, &self.vertices[v].1)
    }

    /// Window vertex over `x` with label `h` (normalized first).
    pub fn find(&self, x: usize, h: &GroupElem) -> Option<usize> {
        self.index.get(&(x, self.fibering.normalize(h.clone()))).copied()
    }

    /// Parses `x@label`, e.g. `2@u v^-1`, `3@-1` or the coset key `2@0,-1`;
    /// a bare `x` means the identity label.
    pub fn find_by_name(&self, text: &str) -> Result<usize> {
        let (x, h) = text.split_once('@').unwrap_or((text, ""));
        if !h.trim().is_empty() {
            if let Some(v) = self.algebra.quiver().vertex(&format!("{}_{}", x.trim(), h.trim())) {
                return Ok(v);
            }
        }
        let bx = self
            .base
            .quiver()
            .vertex(x.trim())
            .ok_or_else(|| Error::UnknownVertex(x.trim().into()))?;
        let g = self.grading.group.parse_elem(h)?;
        self.find(bx, &g)
            .ok_or_else(|| Error::WindowTooSmall(format!("{text} is outside the window")))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        self.algebra.quiver().vertex_name(v)
    }

    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }

    /// Base arrow lifted by a window arrow.
    pub fn arrow_base(&self, k: usize) -> usize {
        self.arrow_base[k]
    }

    /// The lift of base arrow `a` leaving window vertex `v` (in the
    /// original orientation), if it lies in the window.
    pub fn arrow_lift(&self, a: usize, v: usize) -> Option<usize> {
        self.arrow_index.get(&(a, v)).copied()
    }

    /// All arrows of the base at `x` lift at `v`, and so do the relations
    /// that can touch a module supported at `v`.
    pub fn is_interior(&self, v: usize) -> bool {
        self.dist[v] + self.nilpotency <= self.radius
    }

    /// Far enough inside for τ to be computed on the window.
    pub fn is_tau_stable(&self, v: usize) -> bool {
        self.dist[v] + 2 * self.nilpotency <= self.radius
    }

    pub fn interior(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.is_interior(v)).collect()
    }

    pub fn label(&self, g: &GroupElem) -> String {
        label_text(&self.grading, &self.fibering, g)
    }

    fn check_support(&self, m: &Rep<F>, stable: bool, what: &str) -> Result<()> {
        self.check_algebra(m)?;
        for v in m.support() {
            let ok = if stable {
                self.is_tau_stable(v)
            } else {
                self.is_interior(v)
            };
            if !ok {
                return Err(Error::InsufficientMargin(format!(
                    "{what}: {} is at distance {} in a window of radius {}",
                    self.vertex_name(v),
                    self.dist[v],
                    self.radius
                )));
            }
        }
        Ok(())
    }

    fn check_algebra(&self, m: &Rep<F>) -> Result<()> {
        if m.algebra().same_as(&self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The largest distance from the center of a support vertex.
    pub fn reach(&self, m: &Rep<F>) -> usize {
        m.support().into_iter().map(|v| self.dist[v]).max().unwrap_or(0)
    }

    /// Push-down `F_λ M` to the base: `(F_λM)(x) = ⊕_{x̂ ↦ x} M(x̂)`.
    pub fn push_down(&self, m: &Rep<F>) -> Result<Rep<F>> {
        self.check_support(m, false, "push-down")?;
        push_along(
            m,
            &self.base,
            |v| Some(self.vertices[v].0),
            |k| Some(self.arrow_base[k]),
        )
    }

    /// Push-down along the map of windows `self -> coarser` that forgets
    /// part of the fiber coordinate (for example from the Galois cover to a
    /// tower stage).
    pub fn push_down_to(&self, m: &Rep<F>, coarser: &CoverWindow<F>) -> Result<Rep<F>> {
        self.check_support(m, false, "push-down")?;
        let vmap = |v: usize| {
            let (x, h) = &self.vertices[v];
            coarser.find(*x, h)
        };
        for v in m.support() {
            if vmap(v).is_none() {
                return Err(Error::WindowTooSmall(format!(
                    "{} has no image in the coarser window",
                    self.vertex_name(v)
                )));
            }
        }
        push_along(m, &coarser.algebra, vmap, |k| {
            let s = self.algebra.quiver().arrow_info(k).source;
            let s = if self.opposite {
                self.algebra.quiver().arrow_info(k).target
            } else {
                s
            };
            vmap(s).and_then(|cs| coarser.arrow_lift(self.arrow_base[k], cs))
        })
    }

    /// Pull-up `F•V = V ∘ F` restricted to the window.
    pub fn pull_up(&self, v: &Rep<F>) -> Result<Rep<F>> {
        if !v.algebra().same_as(&self.base) {
            return Err(Error::AlgebraMismatch);
        }
        let dims: Vec<usize> = self.vertices.iter().map(|(x, _)| v.dim_at(*x)).collect();
        let maps = self.arrow_base.iter().map(|&a| v.map(a).clone()).collect();
        Rep::new(self.algebra.clone(), dims, maps)
    }

    /// The translate `M^g`, moving `M(x, h)` to `(x, h·g)`.
    pub fn translate(&self, m: &Rep<F>, g: &GroupElem) -> Result<Rep<F>> {
        if !matches!(self.fibering, Fibering::Group) {
            return Err(Error::Group("translation needs the Galois cover".into()));
        }
        self.check_algebra(m)?;
        if g.is_identity() {
            return Ok(m.clone());
        }
        let moved = |v: usize| -> Result<usize> {
            let (x, h) = &self.vertices[v];
            let t = self
                .index
                .get(&(*x, h.mul(g)?))
                .copied()
                .filter(|&t| self.is_interior(t))
                .ok_or_else(|| {
                    Error::InsufficientMargin(format!(
                        "translate of {} by {} leaves the interior",
                        self.vertex_name(v),
                        self.label(g)
                    ))
                })?;
            Ok(t)
        };
        let mut vmap = HashMap::new();
        for v in m.support() {
            vmap.insert(v, moved(v)?);
        }
        self.relocate(m, |v| vmap.get(&v).copied())
    }

    /// Copies a module from another window with the same grading and
    /// fibering, matching vertices by coordinates.
    pub fn embed(&self, m: &Rep<F>, from: &CoverWindow<F>) -> Result<Rep<F>> {
        if from.algebra.same_as(&self.algebra) && from.vertices == self.vertices {
            return Ok(m.rehome(&self.algebra));
        }
        let mut vmap = HashMap::new();
        for v in m.support() {
            let (x, h) = &from.vertices[v];
            let t = self
                .index
                .get(&(*x, h.clone()))
                .copied()
                .filter(|&t| self.is_interior(t));
            match t {
                Some(t) => vmap.insert(v, t),
                None => {
                    return Err(Error::InsufficientMargin(format!(
                        "{} is not interior to the target window",
                        from.vertex_name(v)
                    )))
                }
            };
        }
        relocate_between(m, from, self, |v| vmap.get(&v).copied())
    }

    fn zero_maps(&self, dims: &[usize]) -> Vec<Matrix<F>> {
        self.algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect()
    }

    /// Moves a module by a vertex map defined on its support; arrows follow
    /// their sources.
    fn relocate(&self, m: &Rep<F>, vmap: impl Fn(usize) -> Option<usize>) -> Result<Rep<F>> {
        relocate_between(m, self, self, vmap)
    }

    /// The window projective `P_v`.
    pub fn projective(&self, v: usize) -> Rep<F> {
        crate::rep::projective(&self.algebra, v)
    }

    pub fn simple(&self, v: usize) -> Rep<F> {
        Rep::simple(self.algebra.clone(), v)
    }

    /// τ computed on the window; needs the support two nilpotency bounds
    /// away from the boundary.
    pub fn tau(&self, m: &Rep<F>) -> Result<Rep<F>> {
        self.check_support(m, true, "tau")?;
        Ok(tau(m))
    }

    /// Base vertices (in order) whose fibers meet the support.
    pub fn base_support(&self, m: &Rep<F>) -> BTreeSet<usize> {
        m.support().into_iter().map(|v| self.vertices[v].0).collect()
    }

    /// Every `g` with `supp(M^g) ∩ supp(N) ≠ ∅`.
    pub fn overlaps(&self, m: &Rep<F>, n: &Rep<F>) -> Result<Vec<GroupElem>> {
        let mut out = BTreeSet::new();
        let ns = n.support();
        for v in m.support() {
            let (x, h) = &self.vertices[v];
            for &w in &ns {
                let (y, k) = &self.vertices[w];
                if x == y {
                    out.insert(h.inv().mul(k)?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn lift_path(wq: &Quiver, arrow_index: &HashMap<(usize, usize), usize>, p: &Path, v: usize) -> Option<Path> {
    let mut at = v;
    let mut arrows = Vec::with_capacity(p.len());
    for &a in &p.arrows {
        let k = *arrow_index.get(&(a, at))?;
        arrows.push(k);
        at = wq.arrow_info(k).target;
    }
    Some(Path {
        source: v,
        target: at,
        arrows,
    })
}

fn label_text(grading: &Grading, fibering: &Fibering, g: &GroupElem) -> String {
    match (fibering, g) {
        (Fibering::Cosets { tower, stage }, GroupElem::Free(w)) => tower
            .coset_key(w, *stage)
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(","),
        _ => grading.format_elem(g),
    }
}

/// Copies `m` from window `from` into window `to` along a vertex map on the
/// support; each arrow of `from` between support vertices goes to the lift
/// of the same base arrow at the image of its (original) source.
fn relocate_between<F: Field>(
    m: &Rep<F>,
    from: &CoverWindow<F>,
    to: &CoverWindow<F>,
    vmap: impl Fn(usize) -> Option<usize>,
) -> Result<Rep<F>> {
    let n = to.vertices.len();
    let mut dims = vec![0; n];
    for v in m.support() {
        let t = vmap(v).ok_or_else(|| Error::WindowTooSmall(format!("{} has no image", from.vertex_name(v))))?;
        dims[t] = m.dim_at(v);
    }
    let mut maps = to.zero_maps(&dims);
    let fq = from.algebra.quiver();
    for (k, mat) in m.maps().iter().enumerate() {
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        let info = fq.arrow_info(k);
        let src = if from.opposite { info.target } else { info.source };
        let a = from.arrow_base[k];
        let t = vmap(src)
            .and_then(|s| to.arrow_lift(a, s))
            .ok_or_else(|| Error::WindowTooSmall(format!("arrow {} has no image", info.name)))?;
        maps[t] = mat.clone();
    }
    Rep::new(to.algebra.clone(), dims, maps)
}

/// Push-down along a vertex map and an arrow map: fibers are stacked in
/// window order and arrow matrices assembled blockwise.
fn push_along<F: Field>(
    m: &Rep<F>,
    target: &Arc<Algebra<F>>,
    vmap: impl Fn(usize) -> Option<usize>,
    amap: impl Fn(usize) -> Option<usize>,
) -> Result<Rep<F>> {
    let n = target.vertex_count();
    let mut dims = vec![0; n];
    let mut offset = vec![0; m.dims().len()];
    for v in m.support() {
        let x = vmap(v).expect("support maps down");
        offset[v] = dims[x];
        dims[x] += m.dim_at(v);
    }
    let tq = target.quiver();
    let mut maps: Vec<Matrix<F>> = tq
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    let wq = m.algebra().quiver();
    for (k, mat) in m.maps().iter().enumerate() {
        if mat.rows() == 0 || mat.cols() == 0 || mat.is_zero() {
            continue;
        }
        let info = wq.arrow_info(k);
        let a = amap(k).ok_or_else(|| Error::WindowTooSmall(format!("arrow {} has no image", info.name)))?;
        maps[a].set_block(offset[info.target], offset[info.source], mat);
    }
    Rep::new(target.clone(), dims, maps)
}

/// Vertices where the lifted algebra fails to cover the base, split into
/// interior and boundary ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoveringReport {
    pub checked: usize,
    pub interior_failures: Vec<String>,
    pub boundary_failures: Vec<String>,
}

impl CoveringReport {
    pub fn ok(&self) -> bool {
        self.interior_failures.is_empty()
    }
}

impl fmt::Display for CoveringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices checked, {} interior failures, {} boundary failures",
            self.checked,
            self.interior_failures.len(),
            self.boundary_failures.len()
        )?;
        for s in self.interior_failures.iter().chain(&self.boundary_failures) {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

/// For every window vertex `x̂` over `x` and base vertex `y`, checks that the
/// paths `x̂ -> ẑ` over all `ẑ` above `y` map bijectively onto a basis of
/// `e_y A e_x`.
pub fn covering_check<F: Field>(cw: &CoverWindow<F>) -> CoveringReport {
    let b = &cw.algebra;
    let a = &cw.base;
    let mut report = CoveringReport::default();
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); a.vertex_count()];
    for (v, (x, _)) in cw.vertices.iter().enumerate() {
        over[*x].push(v);
    }
    for v in 0..cw.vertices.len() {
        report.checked += 1;
        let x = cw.vertices[v].0;
        let mut problems = Vec::new();
        for (y, fiber) in over.iter().enumerate() {
            let want = a.basis_len(x, y);
            let mut rows: Vec<Vec<F>> = Vec::new();
            for &z in fiber {
                for p in b.basis(v, z) {
                    let down = Path {
                        source: x,
                        target: y,
                        arrows: p.arrows.iter().map(|&k| cw.arrow_base[k]).collect(),
                    };
                    rows.push(a.reduce(&down));
                }
            }
            let rank = if rows.is_empty() {
                0
            } else {
                Matrix::from_rows(rows.clone(), want).rank()
            };
            if rows.len() != want || rank != want {
                problems.push(format!(
                    "to {}: {} lifted paths of rank {rank}, base has {want}",
                    a.quiver().vertex_name(y),
                    rows.len()
                ));
            }
        }
        if !problems.is_empty() {
            let line = format!("{}: {}", cw.vertex_name(v), problems.join("; "));
            if cw.is_interior(v) {
                report.interior_failures.push(line);
            } else {
                report.boundary_failures.push(line);
            }
        }
    }
    report
}
