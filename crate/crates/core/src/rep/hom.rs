//! Bases of morphism spaces.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Path;
use crate::sparse::{self, SparseRow};

use super::present::columns_to_matrix;
use super::{Rep, RepMap};

/// A basis of `Hom(m, n)`.
///
/// A morphism is determined by the images `n_i ∈ N(x_i)` of the top
/// generators of `m`, subject to the relations of its minimal presentation,
/// so the linear system has `Σ dim N(x_i)` unknowns.
pub fn hom_space<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Vec<RepMap<F>>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let g = m.generators();
    let mut offs = Vec::with_capacity(g.p0.len() + 1);
    offs.push(0);
    for &x in &g.p0 {
        offs.push(offs.last().unwrap() + n.dim_at(x));
    }
    let unknowns = *offs.last().unwrap();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut paths: HashMap<&Path, Vec<(usize, usize, F)>> = HashMap::new();
    let mut rows: Vec<SparseRow<F>> = Vec::new();
    for (j, &y) in g.p1.iter().enumerate() {
        let rel = &g.relations[j];
        let mut block: Vec<Vec<(usize, F)>> = vec![Vec::new(); n.dim_at(y)];
        let mut pos = 0;
        for (i, &x) in g.p0.iter().enumerate() {
            for p in alg.basis(x, y) {
                let c = &rel[pos];
                pos += 1;
                if c.is_zero() {
                    continue;
                }
                let entries = paths.entry(p).or_insert_with(|| {
                    let np = n.path_matrix(p);
                    let mut e = Vec::new();
                    for r in 0..np.rows() {
                        for (k, v) in np.row(r).iter().enumerate() {
                            if !v.is_zero() {
                                e.push((r, k, v.clone()));
                            }
                        }
                    }
                    e
                });
                for (r, k, v) in entries.iter() {
                    block[*r].push((offs[i] + k, c.mul(v)));
                }
            }
        }
        rows.extend(block.into_iter().map(sparse::normalize));
    }
    let sols = sparse::nullspace(rows, unknowns);
    let out = (0..sols.cols())
        .map(|s| {
            let sol = sols.column(s);
            let comps = (0..alg.vertex_count())
                .map(|z| {
                    let mut cols = Vec::new();
                    for (i, &x) in g.p0.iter().enumerate() {
                        let ni = &sol[offs[i]..offs[i + 1]];
                        for p in alg.basis(x, z) {
                            cols.push(n.apply_path(p, ni));
                        }
                    }
                    columns_to_matrix(cols, n.dim_at(z)).mul(&g.sections[z])
                })
                .collect();
            RepMap::new_unchecked(m.clone(), n.clone(), comps)
        })
        .collect();
    Ok(out)
}

pub fn hom_dim<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// A basis of `Hom(m, n)` from the vertexwise intertwining equations
/// `f_y M(a) = N(a) f_x`. Slower; kept as an independent check.
pub fn hom_space_direct<F: Field>(m: &Rep<F>, n: &Rep<F>) -> Result<Vec<RepMap<F>>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let q = alg.quiver();
    let nv = alg.vertex_count();
    let mut offs = vec![0; nv + 1];
    for x in 0..nv {
        offs[x + 1] = offs[x] + n.dim_at(x) * m.dim_at(x);
    }
    let unknowns = offs[nv];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let var = |x: usize, r: usize, c: usize| offs[x] + r * m.dim_at(x) + c;
    let mut rows = Vec::new();
    for (a, info) in q.arrows().iter().enumerate() {
        let (s, t) = (info.source, info.target);
        let (ma, na) = (m.map(a), n.map(a));
        for r in 0..n.dim_at(t) {
            for c in 0..m.dim_at(s) {
                let mut row = vec![F::zero(); unknowns];
                for k in 0..m.dim_at(t) {
                    let v = var(t, r, k);
                    row[v] = row[v].add(ma.get(k, c));
                }
                for k in 0..n.dim_at(s) {
                    let v = var(s, k, c);
                    row[v] = row[v].sub(na.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let sols = Matrix::from_rows(rows, unknowns).nullspace();
    Ok((0..sols.cols())
        .map(|s| {
            let sol = sols.column(s);
            let comps = (0..nv)
                .map(|x| Matrix::from_fn(n.dim_at(x), m.dim_at(x), |r, c| sol[var(x, r, c)].clone()))
                .collect();
            RepMap::new_unchecked(m.clone(), n.clone(), comps)
        })
        .collect())
}
