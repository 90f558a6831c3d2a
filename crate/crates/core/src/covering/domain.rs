//! Fundamental domains `F_i` of the tower stages inside a window of the
//! Galois cover, and lifting modules of an intermediate cover through them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fundamental::{spanning_tree, Orientation};
use crate::group::GroupElem;
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::tower::Tower;

use super::window::{CoverWindow, Fibering};

/// `F_i = {(x, t_x · a_1^{k_1} ⋯ a_i^{k_i})}` restricted to a window, where
/// `t_x` is the weight of the tree path from the center to `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub stage: usize,
    /// Window vertices in `F_i`.
    pub members: BTreeSet<usize>,
    /// `t_x` for each base vertex.
    pub tree_labels: Vec<GroupElem>,
}

impl FundamentalDomain {
    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}

fn tree_labels<F: Field>(cw: &CoverWindow<F>) -> Result<Vec<GroupElem>> {
    let q = cw.base().quiver();
    let g = cw.grading();
    let x0 = cw.vertex(0).0;
    let tree = spanning_tree(q, x0)?;
    let mut t: Vec<Option<GroupElem>> = vec![None; q.vertex_count()];
    t[x0] = Some(g.group.identity());
    let mut changed = true;
    while changed {
        changed = false;
        for &a in &tree {
            let info = q.arrow_info(a);
            match (&t[info.source], &t[info.target]) {
                (Some(s), None) => {
                    t[info.target] = Some(g.step(a, Orientation::Forward, s));
                    changed = true;
                }
                (None, Some(h)) => {
                    t[info.source] = Some(g.step(a, Orientation::Inverse, h));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    t.into_iter().map(|x| x.ok_or(Error::Disconnected)).collect()
}

fn in_domain(tower: &Tower, stage: usize, t: &GroupElem, h: &GroupElem) -> Result<bool> {
    let g = t.inv().mul(h)?;
    let w = tower.word_of(&g)?;
    Ok(tower.coset_rep(&tower.coset_key(&w, stage)) == w)
}

/// The members of `F_stage` inside a window of the Galois cover.
pub fn fundamental_domain<F: Field>(cw: &CoverWindow<F>, tower: &Tower, stage: usize) -> Result<FundamentalDomain> {
    if !matches!(cw.fibering(), Fibering::Group) {
        return Err(Error::Group("fundamental domains live in the Galois cover".into()));
    }
    if stage > tower.depth() {
        return Err(Error::InsufficientStage(format!(
            "stage {stage} of a tower of depth {}",
            tower.depth()
        )));
    }
    let labels = tree_labels(cw)?;
    let mut members = BTreeSet::new();
    for v in 0..cw.vertex_count() {
        let (x, h) = cw.vertex(v);
        if in_domain(tower, stage, &labels[x], h)? {
            members.insert(v);
        }
    }
    Ok(FundamentalDomain {
        stage,
        members,
        tree_labels: labels,
    })
}

/// The representative in `F_i` of the intermediate-cover vertex `w`.
fn domain_lift<F: Field>(
    gamma: &CoverWindow<F>,
    omega: &CoverWindow<F>,
    tower: &Tower,
    stage: usize,
    labels: &[GroupElem],
    w: usize,
) -> Result<usize> {
    let (x, c) = omega.vertex(w);
    let t = &labels[x];
    let cw = tower.word_of(&t.inv().mul(c)?)?;
    let rep = GroupElem::Free(tower.coset_rep(&tower.coset_key(&cw, stage)));
    gamma
        .find(x, &t.mul(&rep)?)
        .ok_or_else(|| Error::WindowTooSmall(format!("lift of {} is outside the window", omega.vertex_name(w))))
}

/// `N(z) = M(p z)` for `z ∈ F_i`, zero elsewhere, where `M` lives on a
/// window `omega` of the stage-`i` cover and `N` on the window `gamma` of
/// the Galois cover. The lifted support is grown from the lift of `basepoint`
/// by walks of length at most `r` inside the support of `M`; every vertex
/// reached must lie in `F_i`.
pub fn lift_via_domain<F: Field>(
    m: &Rep<F>,
    omega: &CoverWindow<F>,
    gamma: &CoverWindow<F>,
    basepoint: usize,
    r: usize,
) -> Result<Rep<F>> {
    let Fibering::Cosets { tower, stage } = omega.fibering() else {
        return Err(Error::Group("the module must live on a tower-stage window".into()));
    };
    let stage = *stage;
    if !m.algebra().same_as(omega.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim_at(basepoint) == 0 {
        return Err(Error::InvalidRep("basepoint is not in the support".into()));
    }
    if m.total_dim() > r {
        return Err(Error::InvalidRep(format!(
            "total dimension {} exceeds r = {r}",
            m.total_dim()
        )));
    }
    let grow = |stage: usize| -> Result<Option<(FundamentalDomain, HashMap<usize, usize>)>> {
        let domain = fundamental_domain(gamma, tower, stage)?;
        let start = domain_lift(gamma, omega, tower, stage, &domain.tree_labels, basepoint)?;
        let gq = gamma.algebra().quiver();
        let mut depth: HashMap<usize, usize> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        while let Some(z) = queue.pop_front() {
            if !domain.contains(z) {
                return Ok(None);
            }
            if depth[&z] == r {
                continue;
            }
            let out = gq.arrows_from(z).map(|k| gq.arrow_info(k).target);
            let inn = gq.arrows_into(z).map(|k| gq.arrow_info(k).source);
            for y in out.chain(inn).collect::<Vec<_>>() {
                let inside = omega
                    .find(gamma.vertex(y).0, gamma.vertex(y).1)
                    .is_some_and(|w| m.dim_at(w) > 0);
                if inside && !depth.contains_key(&y) {
                    depth.insert(y, depth[&z] + 1);
                    queue.push_back(y);
                }
            }
        }
        Ok(Some((domain, depth)))
    };
    let Some((_, depth)) = grow(stage)? else {
        let mut needed = tower.depth().max(stage) + 1;
        for s in stage + 1..=tower.depth() {
            if grow(s)?.is_some() {
                needed = s;
                break;
            }
        }
        return Err(Error::DomainTooSmall { required_stage: needed });
    };
    let down = |z: usize| {
        let (x, h) = gamma.vertex(z);
        omega.find(x, h)
    };
    let gq = gamma.algebra().quiver();
    let reached: BTreeSet<usize> = depth.keys().copied().collect();
    let images: BTreeSet<usize> = reached.iter().filter_map(|&z| down(z)).collect();
    if images != m.support().into_iter().collect() {
        return Err(Error::InvalidRep("support is not reached from the basepoint".into()));
    }
    let mut dims = vec![0; gamma.vertex_count()];
    for &z in &reached {
        dims[z] = m.dim_at(down(z).expect("reached vertices map down"));
    }
    let mut maps: Vec<Matrix<F>> = gq
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (k, a) in gq.arrows().iter().enumerate() {
        if reached.contains(&a.source) && reached.contains(&a.target) {
            let w = down(a.source).expect("reached vertices map down");
            let kk = omega
                .arrow_lift(gamma.arrow_base(k), w)
                .ok_or_else(|| Error::WindowTooSmall("arrow image outside the stage window".into()))?;
            maps[k] = m.map(kk).clone();
        }
    }
    Rep::new(gamma.algebra().clone(), dims, maps)
}
