//! String modules over monomial algebras and their lifts to windows.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fundamental::{Orientation, Walk};
use crate::matrix::Matrix;
use crate::quiver::{Path, Quiver};
use crate::rep::Rep;

use super::window::CoverWindow;

/// A string: a reduced walk none of whose direct or inverse runs lies in
/// the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringSpec {
    pub walk: Walk,
}

impl StringSpec {
    /// Parses a right-to-left walk such as `c^-1 e a d^-1 b`.
    pub fn parse(q: &Quiver, text: &str, start: Option<usize>) -> Result<Self> {
        Ok(StringSpec {
            walk: Walk::parse(q, text, start)?,
        })
    }

    pub fn trivial(x: usize) -> Self {
        StringSpec { walk: Walk::trivial(x) }
    }

    pub fn len(&self) -> usize {
        self.walk.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.steps.is_empty()
    }

    /// Checks that the walk is reduced and that its runs avoid the ideal.
    pub fn check<F: Field>(&self, alg: &Algebra<F>) -> Result<()> {
        let q = alg.quiver();
        if !alg.bound_quiver().is_monomial() {
            return Err(Error::IllegalString("string modules need a monomial ideal".into()));
        }
        self.walk.end(q)?;
        for w in self.walk.steps.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(Error::IllegalString(format!(
                    "{} is followed by its inverse",
                    q.arrow_info(w[0].0).name
                )));
            }
        }
        let steps = &self.walk.steps;
        let mut i = 0;
        while i < steps.len() {
            let o = steps[i].1;
            let mut j = i;
            while j < steps.len() && steps[j].1 == o {
                j += 1;
            }
            let mut arrows: Vec<usize> = steps[i..j].iter().map(|s| s.0).collect();
            if o == Orientation::Inverse {
                arrows.reverse();
            }
            let p = Path {
                source: q.arrow_info(arrows[0]).source,
                target: q.arrow_info(*arrows.last().unwrap()).target,
                arrows,
            };
            if alg.path_in_ideal(&p) {
                return Err(Error::IllegalString(format!("{} lies in the ideal", q.format_path(&p))));
            }
            i = j;
        }
        Ok(())
    }

    pub fn format(&self, q: &Quiver) -> String {
        self.walk.format(q)
    }
}

/// `M(s)`: one basis vector per position of the walk, each step acting by
/// 1 between consecutive positions.
pub fn string_module<F: Field>(alg: &Arc<Algebra<F>>, s: &StringSpec) -> Result<Rep<F>> {
    s.check(alg)?;
    let q = alg.quiver();
    let verts = s.walk.vertices(q);
    let mut dims = vec![0; q.vertex_count()];
    let local: Vec<usize> = verts
        .iter()
        .map(|&x| {
            dims[x] += 1;
            dims[x] - 1
        })
        .collect();
    let mut maps: Vec<Matrix<F>> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (i, &(a, o)) in s.walk.steps.iter().enumerate() {
        let (from, to) = match o {
            Orientation::Forward => (i, i + 1),
            Orientation::Inverse => (i + 1, i),
        };
        maps[a].set(local[to], local[from], F::one());
    }
    Rep::new(alg.clone(), dims, maps).map_err(|e| Error::IllegalString(e.to_string()))
}

/// The unique lift of a base string starting at window vertex `start`.
pub fn lift_string<F: Field>(cw: &CoverWindow<F>, s: &StringSpec, start: usize) -> Result<StringSpec> {
    if cw.vertex(start).0 != s.walk.start {
        return Err(Error::BrokenWalk(format!(
            "{} does not lie over the start of the string",
            cw.vertex_name(start)
        )));
    }
    let q = cw.base().quiver();
    let g = cw.grading();
    let wq = cw.algebra().quiver();
    let mut at = start;
    let mut steps = Vec::with_capacity(s.len());
    for &(a, o) in &s.walk.steps {
        let info = q.arrow_info(a);
        let h = cw.vertex(at).1.clone();
        let missing = || {
            Error::WindowTooSmall(format!(
                "lift of {} leaves the window at {}",
                info.name,
                cw.vertex_name(at)
            ))
        };
        let k = match o {
            Orientation::Forward => cw.arrow_lift(a, at).ok_or_else(missing)?,
            Orientation::Inverse => {
                let src = cw.find(info.source, &g.step(a, o, &h)).ok_or_else(missing)?;
                cw.arrow_lift(a, src).ok_or_else(missing)?
            }
        };
        let ki = wq.arrow_info(k);
        at = match o {
            Orientation::Forward => ki.target,
            Orientation::Inverse => ki.source,
        };
        steps.push((k, o));
    }
    Ok(StringSpec {
        walk: Walk { start, steps },
    })
}
