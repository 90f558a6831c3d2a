//! Walks, spanning trees and presentations of the fundamental group of a
//! bound quiver.

use std::collections::VecDeque;

use crate::algebra::{Algebra, RelationKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::Word;
use crate::quiver::{Path, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Inverse,
}

/// A walk: arrows traversed forwards or backwards, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, Orientation)>,
}

impl Walk {
    pub fn trivial(v: usize) -> Self {
        Walk {
            start: v,
            steps: Vec::new(),
        }
    }

    /// Checks that consecutive steps chain and returns the end vertex.
    pub fn end(&self, q: &Quiver) -> Result<usize> {
        let mut at = self.start;
        for &(a, o) in &self.steps {
            let info = q.arrow_info(a);
            let (from, to) = match o {
                Orientation::Forward => (info.source, info.target),
                Orientation::Inverse => (info.target, info.source),
            };
            if from != at {
                return Err(Error::BrokenWalk(format!(
                    "step {} leaves from {} but the walk is at {}",
                    info.name,
                    q.vertex_name(from),
                    q.vertex_name(at)
                )));
            }
            at = to;
        }
        Ok(at)
    }

    /// Vertices visited, starting vertex included.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        for &(a, o) in &self.steps {
            let info = q.arrow_info(a);
            out.push(match o {
                Orientation::Forward => info.target,
                Orientation::Inverse => info.source,
            });
        }
        out
    }

    pub fn from_path(p: &Path) -> Self {
        Walk {
            start: p.source,
            steps: p.arrows.iter().map(|&a| (a, Orientation::Forward)).collect(),
        }
    }

    pub fn inverse(&self, q: &Quiver) -> Result<Self> {
        let end = self.end(q)?;
        Ok(Walk {
            start: end,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(a, o)| {
                    (
                        a,
                        match o {
                            Orientation::Forward => Orientation::Inverse,
                            Orientation::Inverse => Orientation::Forward,
                        },
                    )
                })
                .collect(),
        })
    }

    /// Parses a right-to-left walk such as `a d^-1 b` (here `b` is
    /// traversed first). Trivial walks need an explicit start vertex.
    pub fn parse(q: &Quiver, text: &str, start: Option<usize>) -> Result<Self> {
        let mut steps = Vec::new();
        for tok in text.split_whitespace().rev() {
            let (name, o) = match tok.strip_suffix("^-1") {
                Some(n) => (n, Orientation::Inverse),
                None => (tok.strip_suffix("^1").unwrap_or(tok), Orientation::Forward),
            };
            let a = q.arrow(name).ok_or_else(|| Error::UnknownArrow(name.to_string()))?;
            steps.push((a, o));
        }
        let start = match (steps.first(), start) {
            (_, Some(s)) => s,
            (Some(&(a, Orientation::Forward)), None) => q.arrow_info(a).source,
            (Some(&(a, Orientation::Inverse)), None) => q.arrow_info(a).target,
            (None, None) => return Err(Error::BrokenWalk("empty walk needs a start vertex".into())),
        };
        let w = Walk { start, steps };
        w.end(q)?;
        Ok(w)
    }

    pub fn format(&self, q: &Quiver) -> String {
        if self.steps.is_empty() {
            return format!("e{}", q.vertex_name(self.start));
        }
        self.steps
            .iter()
            .rev()
            .map(|&(a, o)| {
                let n = &q.arrow_info(a).name;
                match o {
                    Orientation::Forward => n.clone(),
                    Orientation::Inverse => format!("{n}^-1"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// How much of the word problem the presentation lets us decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Free on the listed generator indices.
    Free(Vec<usize>),
    /// Free abelian on the listed generator indices.
    FreeAbelian(Vec<usize>),
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundGroupPresentation {
    pub base: usize,
    pub tree_arrows: Vec<usize>,
    /// One free generator per chord; entries are arrow ids.
    pub generators: Vec<usize>,
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
    pub profile: Profile,
}

/// Homotopy class of a closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyClass {
    /// Reduced word over the surviving free generators; equal classes
    /// have equal words.
    Free(Word),
    /// Exponent vector over the surviving generators.
    Abelian(Vec<i64>),
    /// Unreduced word in the chord generators; equality is not decided.
    UndecidedProfile(Word),
}

impl FundGroupPresentation {
    pub fn rank(&self) -> Option<usize> {
        match &self.profile {
            Profile::Free(g) | Profile::FreeAbelian(g) => Some(g.len()),
            Profile::Undecided => None,
        }
    }

    fn chord_index(&self, arrow: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == arrow)
    }

    /// Word of a walk in the chord generators, composed right-to-left.
    pub fn chord_word(&self, w: &Walk) -> Word {
        let mut word = Word::identity();
        for &(a, o) in &w.steps {
            if let Some(g) = self.chord_index(a) {
                let e = match o {
                    Orientation::Forward => 1,
                    Orientation::Inverse => -1,
                };
                word = Word::power(g, e).mul(&word);
            }
        }
        word
    }
}

/// BFS spanning tree from `x0`, arrows explored in name order.
pub fn spanning_tree(q: &Quiver, x0: usize) -> Result<Vec<usize>> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut order: Vec<usize> = (0..q.arrow_count()).collect();
    order.sort_by(|&a, &b| q.arrow_info(a).name.cmp(&q.arrow_info(b).name));
    let mut seen = vec![false; q.vertex_count()];
    seen[x0] = true;
    let mut queue = VecDeque::from([x0]);
    let mut tree = Vec::new();
    while let Some(v) = queue.pop_front() {
        for &a in &order {
            let info = q.arrow_info(a);
            let other = if info.source == v {
                info.target
            } else if info.target == v {
                info.source
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                tree.push(a);
                queue.push_back(other);
            }
        }
    }
    tree.sort_unstable();
    Ok(tree)
}

pub fn fundamental_group<F: Field>(alg: &Algebra<F>, x0: usize) -> Result<FundGroupPresentation> {
    let q = alg.quiver();
    let tree = spanning_tree(q, x0)?;
    let generators: Vec<usize> = (0..q.arrow_count()).filter(|a| !tree.contains(a)).collect();
    let generator_names = generators.iter().map(|&a| q.arrow_info(a).name.clone()).collect();
    let mut pres = FundGroupPresentation {
        base: x0,
        tree_arrows: tree,
        generators,
        generator_names,
        relators: Vec::new(),
        profile: Profile::Undecided,
    };
    for (kind, rel) in alg.minimal_relations()? {
        if kind != RelationKind::Minimal {
            continue;
        }
        let first = pres.chord_word(&Walk::from_path(&rel.terms()[0].1));
        for (_, p) in &rel.terms()[1..] {
            let other = pres.chord_word(&Walk::from_path(p));
            let r = other.inv().mul(&first);
            if !r.is_identity() && !pres.relators.contains(&r) {
                pres.relators.push(r);
            }
        }
    }
    pres.profile = recognize(pres.generators.len(), &pres.relators);
    Ok(pres)
}

/// Recognizes presentations that are free after deleting generators that
/// appear as relators, or free abelian (all commutators present).
fn recognize(n: usize, relators: &[Word]) -> Profile {
    let mut killed = vec![false; n];
    let mut rels: Vec<Word> = relators.to_vec();
    loop {
        let mut changed = false;
        for r in &rels {
            if let [(g, e)] = r.runs() {
                if e.abs() == 1 && !killed[*g] {
                    killed[*g] = true;
                    changed = true;
                }
            }
        }
        rels = rels
            .iter()
            .map(|r| Word::from_runs(r.runs().iter().copied().filter(|(g, _)| !killed[*g])))
            .filter(|r| !r.is_identity())
            .collect();
        if !changed {
            break;
        }
    }
    let alive: Vec<usize> = (0..n).filter(|&g| !killed[g]).collect();
    if rels.is_empty() {
        return Profile::Free(alive);
    }
    let is_commutator = |r: &Word, i: usize, j: usize| {
        let c = Word::from_runs([(i, 1), (j, 1), (i, -1), (j, -1)]);
        *r == c || *r == c.inv()
    };
    let all_pairs = alive.iter().enumerate().all(|(k, &i)| {
        alive[k + 1..]
            .iter()
            .all(|&j| rels.iter().any(|r| is_commutator(r, i, j)))
    });
    let only_commutators = rels.iter().all(|r| {
        alive
            .iter()
            .any(|&i| alive.iter().any(|&j| i != j && is_commutator(r, i, j)))
    });
    if all_pairs && only_commutators {
        Profile::FreeAbelian(alive)
    } else {
        Profile::Undecided
    }
}

/// Homotopy class of a walk closed at the presentation's base vertex.
pub fn walk_homotopy_class(q: &Quiver, pres: &FundGroupPresentation, w: &Walk) -> Result<HomotopyClass> {
    if w.start != pres.base || w.end(q)? != pres.base {
        return Err(Error::OpenWalk);
    }
    let word = pres.chord_word(w);
    Ok(match &pres.profile {
        Profile::Free(alive) => HomotopyClass::Free(Word::from_runs(
            word.runs()
                .iter()
                .filter_map(|&(g, e)| alive.iter().position(|&a| a == g).map(|k| (k, e))),
        )),
        Profile::FreeAbelian(alive) => HomotopyClass::Abelian(alive.iter().map(|&g| word.exponent_sum(g)).collect()),
        Profile::Undecided => HomotopyClass::UndecidedProfile(word),
    })
}
