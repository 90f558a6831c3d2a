//! The finite-dimensional algebra `KQ/I` of a bound quiver: admissibility,
//! normal-form bases and path reduction.
//!
//! Ideal membership is decided by length-truncated linear algebra: once
//! every path of length `N` lies in the ideal, `KQ/I` is a quotient of the
//! finite space of paths shorter than `N`, and `I` is spanned there by the
//! products `p * rho * q`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{BoundQuiver, LinComb, Path, Quiver};

/// Default cap on the nilpotency search.
pub const DEFAULT_ADMISSIBILITY_CAP: usize = 32;
const PATH_LIMIT: usize = 200_000;
/// Subset enumeration in `minimal_relations` is exponential in this.
pub const MINIMAL_RELATION_TERM_CAP: usize = 12;

#[derive(Debug)]
struct Block<F: Field> {
    cols: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    reduced: Matrix<F>,
    pivot_row: Vec<Option<usize>>,
    basis_pos: Vec<Option<usize>>,
    basis_cols: Vec<usize>,
}

impl<F: Field> Block<F> {
    fn new(mut cols: Vec<Path>, generators: Vec<Vec<(F, Vec<usize>)>>) -> Self {
        // long paths first so that pivots eliminate them
        cols.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.arrows.cmp(&b.arrows)));
        let index: HashMap<Vec<usize>, usize> = cols.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect();
        let n = cols.len();
        let rows: Vec<Vec<F>> = generators
            .into_iter()
            .map(|g| {
                let mut row = vec![F::zero(); n];
                for (c, arrows) in g {
                    let i = index[&arrows];
                    row[i] = row[i].add(&c);
                }
                row
            })
            .collect();
        let m = Matrix::from_rows(rows, n);
        let (r, pivots) = m.rref();
        let reduced = r.block(0, 0, pivots.len(), n);
        let mut pivot_row = vec![None; n];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        let basis_cols: Vec<usize> = (0..n).filter(|c| pivot_row[*c].is_none()).collect();
        let mut basis_pos = vec![None; n];
        for (k, &c) in basis_cols.iter().enumerate() {
            basis_pos[c] = Some(k);
        }
        Block {
            cols,
            index,
            reduced,
            pivot_row,
            basis_pos,
            basis_cols,
        }
    }

    /// Coordinates of a column path in the quotient basis.
    fn reduce_col(&self, c: usize, coef: &F, out: &mut [F]) {
        match self.pivot_row[c] {
            None => {
                let k = self.basis_pos[c].unwrap();
                out[k] = out[k].add(coef);
            }
            Some(r) => {
                for (k, &bc) in self.basis_cols.iter().enumerate() {
                    let v = self.reduced.get(r, bc);
                    if !v.is_zero() {
                        out[k] = out[k].sub(&coef.mul(v));
                    }
                }
            }
        }
    }

    fn contains_path(&self, arrows: &[usize]) -> bool {
        match self.index.get(arrows) {
            None => true,
            Some(&c) => {
                if self.pivot_row[c].is_none() {
                    return false;
                }
                let r = self.pivot_row[c].unwrap();
                self.basis_cols.iter().all(|&bc| self.reduced.get(r, bc).is_zero())
            }
        }
    }
}

/// `KQ/I` together with a normal-form basis of every `e_y A e_x`.
#[derive(Debug)]
pub struct Algebra<F: Field> {
    bq: BoundQuiver<F>,
    nilpotency: usize,
    blocks: HashMap<(usize, usize), Block<F>>,
    op: OnceLock<Arc<Algebra<F>>>,
}

/// Kind of an input relation, as sorted by [`Algebra::minimal_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Monomial,
    Minimal,
}

impl<F: Field> Algebra<F> {
    pub fn new(bq: BoundQuiver<F>) -> Result<Arc<Self>> {
        Self::with_cap(bq, DEFAULT_ADMISSIBILITY_CAP)
    }

    pub fn with_cap(bq: BoundQuiver<F>, cap: usize) -> Result<Arc<Self>> {
        let nilpotency = check_admissible(&bq, cap)?;
        let blocks = ideal_blocks(&bq, nilpotency.saturating_sub(1))?;
        Ok(Arc::new(Algebra {
            bq,
            nilpotency,
            blocks,
            op: OnceLock::new(),
        }))
    }

    pub fn bound_quiver(&self) -> &BoundQuiver<F> {
        &self.bq
    }

    pub fn quiver(&self) -> &Quiver {
        &self.bq.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.bq.quiver.vertex_count()
    }

    /// Least `N` with every path of length `N` in the ideal.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// Normal-form paths from `x` to `y` spanning `e_y A e_x`.
    pub fn basis(&self, x: usize, y: usize) -> Vec<&Path> {
        match self.blocks.get(&(x, y)) {
            None => Vec::new(),
            Some(b) => b.basis_cols.iter().map(|&c| &b.cols[c]).collect(),
        }
    }

    pub fn basis_len(&self, x: usize, y: usize) -> usize {
        self.blocks.get(&(x, y)).map_or(0, |b| b.basis_cols.len())
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.basis_cols.len()).sum()
    }

    /// Coordinates of a path in the basis of `e_{target} A e_{source}`.
    pub fn reduce(&self, p: &Path) -> Vec<F> {
        let n = self.basis_len(p.source, p.target);
        let mut out = vec![F::zero(); n];
        self.reduce_into(p, &F::one(), &mut out);
        out
    }

    fn reduce_into(&self, p: &Path, coef: &F, out: &mut [F]) {
        if p.len() >= self.nilpotency {
            return;
        }
        if let Some(b) = self.blocks.get(&(p.source, p.target)) {
            if let Some(&c) = b.index.get(&p.arrows) {
                b.reduce_col(c, coef, out);
            }
        }
    }

    pub fn reduce_lincomb(&self, l: &LinComb<F>) -> Vec<F> {
        let n = self.basis_len(l.source(), l.target());
        let mut out = vec![F::zero(); n];
        for (c, p) in l.terms() {
            self.reduce_into(p, c, &mut out);
        }
        out
    }

    pub fn in_ideal(&self, l: &LinComb<F>) -> bool {
        self.reduce_lincomb(l).iter().all(F::is_zero)
    }

    pub fn path_in_ideal(&self, p: &Path) -> bool {
        if p.len() >= self.nilpotency {
            return true;
        }
        self.blocks
            .get(&(p.source, p.target))
            .is_none_or(|b| b.contains_path(&p.arrows))
    }

    /// The algebra of the opposite bound quiver.
    pub fn opposite(&self) -> Arc<Algebra<F>> {
        self.op
            .get_or_init(|| {
                Algebra::with_cap(self.bq.opposite(), self.nilpotency.max(1))
                    .expect("opposite of an admissible bound quiver is admissible")
            })
            .clone()
    }

    /// Same bound quiver (pointer or structural equality).
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.bq == other.bq
    }

    /// Splits each input relation into minimal relations (at least two
    /// terms, no proper sub-sum in the ideal) and monomial ones.
    pub fn minimal_relations(&self) -> Result<Vec<(RelationKind, LinComb<F>)>> {
        let mut out = Vec::new();
        for rel in &self.bq.relations {
            if rel.terms().len() > MINIMAL_RELATION_TERM_CAP {
                return Err(Error::TermCap {
                    terms: rel.terms().len(),
                    cap: MINIMAL_RELATION_TERM_CAP,
                });
            }
            self.split_relation(rel.terms().to_vec(), &mut out);
        }
        Ok(out)
    }

    fn split_relation(&self, terms: Vec<(F, Path)>, out: &mut Vec<(RelationKind, LinComb<F>)>) {
        let q = &self.bq.quiver;
        if terms.len() == 1 {
            let l = LinComb::new(terms, q).expect("nonzero term");
            if !out.iter().any(|(_, r)| *r == l) {
                out.push((RelationKind::Monomial, l));
            }
            return;
        }
        let r = terms.len();
        // smallest proper sub-sum lying in the ideal
        let mut subsets: Vec<u32> = (1..(1u32 << r) - 1).collect();
        subsets.sort_by_key(|s| s.count_ones());
        for s in subsets {
            let part: Vec<(F, Path)> = (0..r).filter(|i| s >> i & 1 == 1).map(|i| terms[i].clone()).collect();
            let l = LinComb::new(part.clone(), q).expect("parallel nonzero terms");
            if self.in_ideal(&l) {
                let rest: Vec<(F, Path)> = (0..r).filter(|i| s >> i & 1 == 0).map(|i| terms[i].clone()).collect();
                self.split_relation(part, out);
                self.split_relation(rest, out);
                return;
            }
        }
        let l = LinComb::new(terms, q).expect("parallel nonzero terms");
        out.push((RelationKind::Minimal, l));
    }
}

/// Least `N <= cap` such that every path of length `N` lies in the ideal.
pub fn check_admissible<F: Field>(bq: &BoundQuiver<F>, cap: usize) -> Result<usize> {
    let q = &bq.quiver;
    for rel in &bq.relations {
        if rel.terms().iter().any(|(_, p)| p.len() < 2) {
            return Err(Error::NotAdmissible(format!(
                "relation {} has a term of length < 2",
                rel.format(q)
            )));
        }
    }
    for len in 1..=cap {
        if let Some(t) = bq.truncation {
            if len >= t {
                return Ok(len);
            }
        }
        let paths = q.paths_of_length(len);
        if paths.is_empty() {
            return Ok(len);
        }
        if bq.relations.is_empty() {
            continue;
        }
        let blocks = ideal_blocks(bq, len)?;
        let all_in = paths.iter().all(|p| {
            blocks
                .get(&(p.source, p.target))
                .is_none_or(|b| b.contains_path(&p.arrows))
        });
        if all_in {
            return Ok(len);
        }
    }
    Err(Error::NotAdmissible(format!(
        "paths of length {cap} survive the relations"
    )))
}

/// Per vertex pair, the ideal inside the span of paths of length `<= max_len`.
fn ideal_blocks<F: Field>(bq: &BoundQuiver<F>, max_len: usize) -> Result<HashMap<(usize, usize), Block<F>>> {
    let q = &bq.quiver;
    let mut by_len: Vec<Vec<Path>> = vec![(0..q.vertex_count()).map(Path::trivial).collect()];
    let mut total = q.vertex_count();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in by_len.last().unwrap() {
            for a in q.arrows_from(p.target) {
                next.push(p.then(a, q));
            }
        }
        total += next.len();
        if total > PATH_LIMIT {
            return Err(Error::NotAdmissible(format!(
                "more than {PATH_LIMIT} paths below length {max_len}"
            )));
        }
        if next.is_empty() {
            break;
        }
        by_len.push(next);
    }
    let keep = |len: usize| len <= max_len && bq.truncation.is_none_or(|t| len < t);

    let mut cols: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
    let mut into: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
    let mut from: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
    for layer in &by_len {
        for p in layer {
            if keep(p.len()) {
                cols.entry((p.source, p.target)).or_default().push(p.clone());
            }
            into[p.target].push(p);
            from[p.source].push(p);
        }
    }

    let mut gens: HashMap<(usize, usize), Vec<Vec<(F, Vec<usize>)>>> = HashMap::new();
    for rel in &bq.relations {
        let min = rel.min_len();
        if min > max_len {
            continue;
        }
        for pre in &into[rel.source()] {
            if pre.len() + min > max_len {
                continue;
            }
            for post in &from[rel.target()] {
                if pre.len() + min + post.len() > max_len {
                    continue;
                }
                let mut g = Vec::new();
                for (c, w) in rel.terms() {
                    let full = pre.concat(w).unwrap().concat(post).unwrap();
                    if keep(full.len()) {
                        g.push((c.clone(), full.arrows));
                    }
                }
                if !g.is_empty() {
                    gens.entry((pre.source, post.target)).or_default().push(g);
                }
            }
        }
    }
    Ok(cols
        .into_iter()
        .map(|(k, c)| {
            let g = gens.remove(&k).unwrap_or_default();
            (k, Block::new(c, g))
        })
        .collect())
}
