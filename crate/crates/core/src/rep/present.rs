//! Indecomposable projectives and minimal projective presentations.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::field::Field;
use crate::matrix::Matrix;

use super::{Rep, RepMap};

/// The indecomposable projective `P_x = A e_x`, with basis the normal-form
/// paths starting at `x`.
pub fn projective<F: Field>(alg: &Arc<Algebra<F>>, x: usize) -> Rep<F> {
    let q = alg.quiver();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|y| alg.basis_len(x, y)).collect();
    let maps = (0..q.arrow_count()).map(|a| proj_arrow_matrix(alg, x, a)).collect();
    Rep::new_unchecked(alg.clone(), dims, maps)
}

fn proj_arrow_matrix<F: Field>(alg: &Algebra<F>, x: usize, a: usize) -> Matrix<F> {
    let q = alg.quiver();
    let info = q.arrow_info(a);
    let basis = alg.basis(x, info.source);
    let rows = alg.basis_len(x, info.target);
    let mut m = Matrix::zeros(rows, basis.len());
    for (c, p) in basis.iter().enumerate() {
        for (r, v) in alg.reduce(&p.then(a, q)).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

/// Sum of projectives `⊕ P_{x_i}` in the given order.
pub(crate) fn projective_sum<F: Field>(alg: &Arc<Algebra<F>>, xs: &[usize]) -> Rep<F> {
    let parts: Vec<Rep<F>> = xs.iter().map(|&x| projective(alg, x)).collect();
    Rep::direct_sum(alg, &parts).0
}

/// Map `⊕ P_{src_j} -> ⊕ P_{tgt_i}` sending the generator `e_{src_j}` to
/// `images[j]`, a vector of `(⊕ P_{tgt_i})(src_j)`.
pub(crate) fn projective_map<F: Field>(
    alg: &Arc<Algebra<F>>,
    src: &[usize],
    tgt: &[usize],
    images: &[Vec<F>],
) -> RepMap<F> {
    let s = projective_sum(alg, src);
    let t = projective_sum(alg, tgt);
    let n = alg.vertex_count();
    let comps = (0..n)
        .map(|z| {
            let mut cols: Vec<Vec<F>> = Vec::new();
            for (j, &y) in src.iter().enumerate() {
                for p in alg.basis(y, z) {
                    cols.push(t.apply_path(p, &images[j]));
                }
            }
            columns_to_matrix(cols, t.dim_at(z))
        })
        .collect();
    RepMap::new_unchecked(s, t, comps)
}

pub(crate) fn columns_to_matrix<F: Field>(cols: Vec<Vec<F>>, rows: usize) -> Matrix<F> {
    let n = cols.len();
    Matrix::from_fn(rows, n, |r, c| cols[c][r].clone())
}

/// Top generators of a module together with the relations among them.
///
/// Top vectors `g_i ∈ M(p0[i])` induce a projective cover
/// `π: ⊕ P_{p0[i]} -> M`, and `relations[j]` (an element of `(⊕ P_{p0[i]})(p1[j])`)
/// generate its kernel minimally.
pub(crate) struct Generators<F: Field> {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub relations: Vec<Vec<F>>,
    /// `π_z` as a matrix `P0(z) -> M(z)`.
    pub cover: Vec<Matrix<F>>,
    /// A right inverse of `π_z`.
    pub sections: Vec<Matrix<F>>,
}

impl<F: Field> Generators<F> {
    pub(crate) fn compute(m: &Rep<F>) -> Self {
        let alg = m.algebra();
        let q = alg.quiver();
        let n = alg.vertex_count();
        let mut p0 = Vec::new();
        let mut tops = Vec::new();
        for x in 0..n {
            let d = m.dim_at(x);
            if d == 0 {
                continue;
            }
            let incoming: Vec<&Matrix<F>> = q.arrows_into(x).map(|a| m.map(a)).collect();
            let rad = Matrix::hstack(&incoming, d).column_space();
            for k in crate::matrix::complement_indices(&rad) {
                let mut v = vec![F::zero(); d];
                v[k] = F::one();
                p0.push(x);
                tops.push(v);
            }
        }
        let cover: Vec<Matrix<F>> = (0..n)
            .map(|z| {
                let mut cols = Vec::new();
                for (i, &x) in p0.iter().enumerate() {
                    for p in alg.basis(x, z) {
                        cols.push(m.apply_path(p, &tops[i]));
                    }
                }
                columns_to_matrix(cols, m.dim_at(z))
            })
            .collect();
        let sections = cover
            .iter()
            .map(|c| {
                c.solve(&Matrix::identity(c.rows()))
                    .expect("projective cover is surjective")
            })
            .collect();
        let p0_rep = projective_sum(alg, &p0);
        let kernels: Vec<Matrix<F>> = cover.iter().map(Matrix::nullspace).collect();
        let mut p1 = Vec::new();
        let mut relations = Vec::new();
        for z in 0..n {
            let k = &kernels[z];
            if k.cols() == 0 {
                continue;
            }
            let images: Vec<Matrix<F>> = q
                .arrows_into(z)
                .map(|a| p0_rep.map(a).mul(&kernels[q.arrow_info(a).source]))
                .collect();
            let refs: Vec<&Matrix<F>> = images.iter().collect();
            let rad = Matrix::hstack(&refs, k.rows()).column_space();
            let (_, pivots) = Matrix::hstack(&[&rad, k], k.rows()).rref();
            for piv in pivots.into_iter().filter(|&p| p >= rad.cols()) {
                p1.push(z);
                relations.push(k.column(piv - rad.cols()));
            }
        }
        Generators {
            p0,
            p1,
            relations,
            cover,
            sections,
        }
    }
}

/// A minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    /// Vertices of the summands of `P1`.
    pub p1: Vec<usize>,
    /// Vertices of the summands of `P0`.
    pub p0: Vec<usize>,
    /// `elements[j]` is the image of the generator of the `j`-th summand of
    /// `P1`, as a vector of `P0(p1[j])`.
    pub elements: Vec<Vec<F>>,
    pub map: RepMap<F>,
    pub cover: RepMap<F>,
}

impl<F: Field> Presentation<F> {
    /// Coordinates of `elements[j]` in the copy of `A(p0[i], p1[j])`.
    pub fn element(&self, j: usize, i: usize) -> Vec<F> {
        let alg = self.map.source.algebra();
        let y = self.p1[j];
        let off: usize = self.p0[..i].iter().map(|&x| alg.basis_len(x, y)).sum();
        let len = alg.basis_len(self.p0[i], y);
        self.elements[j][off..off + len].to_vec()
    }
}

/// Minimal projective presentation of `m`.
pub fn min_proj_presentation<F: Field>(m: &Rep<F>) -> Presentation<F> {
    let g = m.generators();
    let alg = m.algebra();
    let map = projective_map(alg, &g.p1, &g.p0, &g.relations);
    let cover = RepMap::new_unchecked(map.target.clone(), m.clone(), g.cover.clone());
    Presentation {
        p1: g.p1.clone(),
        p0: g.p0.clone(),
        elements: g.relations.clone(),
        map,
        cover,
    }
}
