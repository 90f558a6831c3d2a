//! Galois coverings given by group gradings on the arrows, realized
//! through finite windows of the covering quiver.
//!
//! Conventions: the cover arrow `(α, h)` runs from `(tα, h)` to
//! `(hα, w(α)·h)`, and the group acts on the right, `M^g(x, h·g) = M(x, h)`.

mod domain;
mod orbit;
mod string;
mod window;


use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fundamental::{Orientation, Walk};
use crate::group::{Group, GroupElem, GroupHom};
use crate::quiver::{BoundQuiver, Path, Quiver};

pub use domain::{fundamental_domain, lift_via_domain, FundamentalDomain};
pub use orbit::{
    is_g_tau_rigid, is_support_g_tilting, lift_via_mutation_path, nohom_check, orbit_mutate, verify_commute,
    CommuteReport, NoHomReport, OrbitMutation, OrbitPair, RigidityReport,
};
pub use string::{lift_string, string_module, StringSpec};
pub use window::{covering_check, CoverWindow, CoveringReport, Fibering};

/// Weights `w(α)` in a free or free abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub group: Group,
    pub weights: Vec<GroupElem>,
}

/// A relation whose paths carry different weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub weights: Vec<String>,
}

impl Grading {
    /// Every arrow has identity weight.
    pub fn trivial(group: Group, q: &Quiver) -> Self {
        let weights = vec![group.identity(); q.arrow_count()];
        Grading { group, weights }
    }

    /// Parses a grading file:
    ///
    /// ```text
    /// group free u v
    /// weight d u^-1
    /// ```
    ///
    /// Arrows without a `weight` line get the identity.
    pub fn parse(text: &str, q: &Quiver) -> Result<Self> {
        let mut group = None;
        let mut weights: Vec<Option<GroupElem>> = vec![None; q.arrow_count()];
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let col = line.len() - trimmed.len() + 1;
            let mut fields = trimmed.split_whitespace();
            match fields.next() {
                Some("group") => {
                    if group.is_some() {
                        return Err(Error::parse(line_no, col, "second `group` line"));
                    }
                    let g = match fields.next() {
                        Some("free") => Group::free(fields.map(str::to_string))
                            .map_err(|e| Error::parse(line_no, col, e.to_string()))?,
                        Some("abelian") => {
                            let n = fields
                                .next()
                                .and_then(|s| s.parse::<usize>().ok())
                                .ok_or_else(|| Error::parse(line_no, col, "expected `group abelian <rank>`"))?;
                            Group::abelian(n)
                        }
                        _ => {
                            return Err(Error::parse(
                                line_no,
                                col,
                                "expected `group free ...` or `group abelian n`",
                            ))
                        }
                    };
                    group = Some(g);
                }
                Some("weight") => {
                    let g = group
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, col, "`weight` before `group`"))?;
                    let name = fields
                        .next()
                        .ok_or_else(|| Error::parse(line_no, col, "expected `weight <arrow> <element>`"))?;
                    let a = q
                        .arrow(name)
                        .ok_or_else(|| Error::parse(line_no, col + 7, format!("unknown arrow `{name}`")))?;
                    let body: Vec<&str> = fields.collect();
                    let elem = g
                        .parse_elem(&body.join(" "))
                        .map_err(|e| Error::parse(line_no, col + 8 + name.len(), e.to_string()))?;
                    if weights[a].replace(elem).is_some() {
                        return Err(Error::parse(line_no, col, format!("arrow `{name}` weighted twice")));
                    }
                }
                Some(other) => return Err(Error::parse(line_no, col, format!("unknown keyword `{other}`"))),
                None => {}
            }
        }
        let group = group.ok_or_else(|| Error::parse(1, 1, "missing `group` line"))?;
        let weights = weights
            .into_iter()
            .map(|w| w.unwrap_or_else(|| group.identity()))
            .collect();
        Ok(Grading { group, weights })
    }

    pub fn to_text(&self, q: &Quiver) -> String {
        let mut s = match &self.group {
            Group::Free { names } => format!("group free {}\n", names.join(" ")),
            Group::Abelian { rank } => format!("group abelian {rank}\n"),
        };
        for (a, w) in self.weights.iter().enumerate() {
            if !w.is_identity() {
                s.push_str(&format!("weight {} {}\n", q.arrow_info(a).name, self.format_elem(w)));
            }
        }
        s
    }

    /// `w(α_k) ⋯ w(α_1)` for the path `α_k ⋯ α_1`.
    pub fn path_weight(&self, p: &Path) -> GroupElem {
        p.arrows.iter().fold(self.group.identity(), |acc, &a| {
            self.weights[a].mul(&acc).expect("weights live in one group")
        })
    }

    /// Weight picked up along a walk; inverse steps contribute `w(α)^-1`.
    pub fn walk_weight(&self, w: &Walk) -> GroupElem {
        w.steps
            .iter()
            .fold(self.group.identity(), |acc, &(a, o)| self.step(a, o, &acc))
    }

    /// The fiber coordinate after one walk step from coordinate `h`.
    pub fn step(&self, a: usize, o: Orientation, h: &GroupElem) -> GroupElem {
        let w = match o {
            Orientation::Forward => self.weights[a].clone(),
            Orientation::Inverse => self.weights[a].inv(),
        };
        w.mul(h).expect("weights live in one group")
    }

    /// Lists the relations whose terms carry different weights.
    pub fn check_homogeneous<F: Field>(&self, bq: &BoundQuiver<F>) -> Vec<Violation> {
        let mut out = Vec::new();
        for r in &bq.relations {
            let mut ws: Vec<GroupElem> = r.terms().iter().map(|(_, p)| self.path_weight(p)).collect();
            ws.dedup();
            if ws.iter().any(|w| *w != ws[0]) {
                ws.sort();
                ws.dedup();
                out.push(Violation {
                    relation: r.format(&bq.quiver),
                    weights: ws.iter().map(|w| self.format_elem(w)).collect(),
                });
            }
        }
        out
    }

    pub fn require_homogeneous<F: Field>(&self, bq: &BoundQuiver<F>) -> Result<()> {
        if self.weights.len() != bq.quiver.arrow_count() {
            return Err(Error::NotHomogeneous(format!(
                "{} weights for {} arrows",
                self.weights.len(),
                bq.quiver.arrow_count()
            )));
        }
        match self.check_homogeneous(bq).first() {
            None => Ok(()),
            Some(v) => Err(Error::NotHomogeneous(v.to_string())),
        }
    }

    /// Composes the weights with `phi`.
    pub fn quotient(&self, phi: &GroupHom) -> Result<Grading> {
        let weights = self.weights.iter().map(|w| phi.apply(w)).collect::<Result<_>>()?;
        Ok(Grading {
            group: phi.target.clone(),
            weights,
        })
    }

    /// Compact label: plain integers for `Z`, a word otherwise.
    pub fn format_elem(&self, g: &GroupElem) -> String {
        match g {
            GroupElem::Abelian(v) if v.len() == 1 => v[0].to_string(),
            GroupElem::Abelian(v) => v.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            GroupElem::Free(w) if w.is_identity() => "1".into(),
            GroupElem::Free(_) => self.group.format_elem(g),
        }
    }

    /// The opposite grading on the opposite quiver: every weight inverted.
    pub fn opposite(&self) -> Grading {
        Grading {
            group: self.group.clone(),
            weights: self.weights.iter().map(GroupElem::inv).collect(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation {} has path weights {}",
            self.relation,
            self.weights.join(", ")
        )
    }
}

/// Composes a grading with `phi`, e.g. a map to `Z` giving an intermediate
/// cover.
pub fn quotient_grading(g: &Grading, phi: &GroupHom) -> Result<Grading> {
    g.quotient(phi)
}
