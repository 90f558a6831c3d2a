//! Kernels, images, cokernels, radicals and tops.

use crate::field::Field;
use crate::matrix::{complement_indices, Matrix};

use super::{Rep, RepMap};

/// A module with its structure map: an inclusion for kernels, images and
/// radicals, a projection for cokernels and tops.
#[derive(Clone, Debug)]
pub struct SubQuotient<F: Field> {
    pub module: Rep<F>,
    pub map: RepMap<F>,
}

/// `rad M` with its inclusion and `top M` with its projection.
#[derive(Clone, Debug)]
pub struct RadicalTop<F: Field> {
    pub radical: SubQuotient<F>,
    pub top: SubQuotient<F>,
}

impl<F: Field> Rep<F> {
    /// Submodule spanned at each vertex by the (independent) columns of
    /// `bases[x]`, which must be closed under the arrows.
    pub fn submodule(&self, bases: &[Matrix<F>]) -> SubQuotient<F> {
        let q = self.algebra().quiver();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, info)| {
                let img = self.map(a).mul(&bases[info.source]);
                bases[info.target]
                    .solve(&img)
                    .expect("submodule is closed under the arrows")
            })
            .collect();
        let sub = Rep::new_unchecked(self.algebra().clone(), dims, maps);
        let map = RepMap::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        SubQuotient { module: sub, map }
    }

    /// Quotient by the submodule with the given column bases.
    pub fn quotient(&self, bases: &[Matrix<F>]) -> SubQuotient<F> {
        let q = self.algebra().quiver();
        let n = self.algebra().vertex_count();
        let mut lifts = Vec::with_capacity(n);
        let mut projs = Vec::with_capacity(n);
        for x in 0..n {
            let d = self.dim_at(x);
            let comp = complement_indices(&bases[x]);
            let lift = Matrix::identity(d).select_columns(&comp);
            let full = Matrix::hstack(&[&bases[x], &lift], d);
            let inv = full.inverse().expect("basis plus complement is invertible");
            projs.push(inv.block(bases[x].cols(), 0, comp.len(), d));
            lifts.push(lift);
        }
        let dims: Vec<usize> = lifts.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, info)| projs[info.target].mul(self.map(a)).mul(&lifts[info.source]))
            .collect();
        let quo = Rep::new_unchecked(self.algebra().clone(), dims, maps);
        let map = RepMap::new_unchecked(self.clone(), quo.clone(), projs);
        SubQuotient { module: quo, map }
    }

    /// Column bases of `rad M(x)`, the sum of images of incoming arrows.
    pub(crate) fn radical_bases(&self) -> Vec<Matrix<F>> {
        let q = self.algebra().quiver();
        (0..self.algebra().vertex_count())
            .map(|x| {
                let parts: Vec<&Matrix<F>> = q.arrows_into(x).map(|a| self.map(a)).collect();
                Matrix::hstack(&parts, self.dim_at(x)).column_space()
            })
            .collect()
    }

    pub fn radical_top(&self) -> RadicalTop<F> {
        let bases = self.radical_bases();
        RadicalTop {
            radical: self.submodule(&bases),
            top: self.quotient(&bases),
        }
    }

    /// Top dimension vector: number of copies of each simple in `top M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases()
            .iter()
            .zip(self.dims())
            .map(|(b, &d)| d - b.cols())
            .collect()
    }

    /// Submodule generated by the columns of `gens[x]` at each vertex.
    pub fn generated(&self, gens: &[Matrix<F>]) -> SubQuotient<F> {
        let alg = self.algebra();
        let n = alg.vertex_count();
        let bases: Vec<Matrix<F>> = (0..n)
            .map(|z| {
                let mut parts = Vec::new();
                for x in 0..n {
                    if gens[x].cols() == 0 {
                        continue;
                    }
                    for p in alg.basis(x, z) {
                        parts.push(self.path_matrix(p).mul(&gens[x]));
                    }
                }
                let refs: Vec<&Matrix<F>> = parts.iter().collect();
                Matrix::hstack(&refs, self.dim_at(z)).column_space()
            })
            .collect();
        self.submodule(&bases)
    }
}

impl<F: Field> RepMap<F> {
    pub fn kernel(&self) -> SubQuotient<F> {
        let bases: Vec<Matrix<F>> = self.comps().iter().map(Matrix::nullspace).collect();
        self.source.submodule(&bases)
    }

    pub fn image(&self) -> SubQuotient<F> {
        let bases: Vec<Matrix<F>> = self.comps().iter().map(Matrix::column_space).collect();
        self.target.submodule(&bases)
    }

    pub fn cokernel(&self) -> SubQuotient<F> {
        let bases: Vec<Matrix<F>> = self.comps().iter().map(Matrix::column_space).collect();
        self.target.quotient(&bases)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.comps().iter().map(Matrix::rank).collect()
    }
}
