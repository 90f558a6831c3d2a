//! Finite-dimensional representations of a bound quiver and their
//! morphisms.
//!
//! Representations are covariant: the matrix of an arrow `a: x -> y` maps
//! `M(x)` to `M(y)` and has shape `dim M(y) x dim M(x)`.

mod approx;
mod decompose;
mod exact;
mod hom;
mod io;
mod present;
mod transpose;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Path;

pub use approx::{fac_contains, min_left_approx, Approximation};
pub use decompose::{decompose, is_isomorphic, Decomposition, IsoResult, Summand, TrialBudget};
pub use exact::{RadicalTop, SubQuotient};
pub use hom::{hom_dim, hom_space, hom_space_direct};
pub use io::{format_module, module_header, parse_module};
pub use present::{min_proj_presentation, projective, Presentation};
pub use transpose::{dual, tau, tau_inverse, transpose};

pub(crate) use decompose::indecomposable_iso;
use present::Generators;

struct RepInner<F: Field> {
    alg: Arc<Algebra<F>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
    generators: OnceLock<Generators<F>>,
}

/// A representation: one vector space per vertex, one matrix per arrow.
#[derive(Clone)]
pub struct Rep<F: Field> {
    inner: Arc<RepInner<F>>,
}

impl<F: Field> Rep<F> {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(alg: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::InvalidRep(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if maps.len() != q.arrow_count() {
            return Err(Error::InvalidRep(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrow_count()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let info = q.arrow_info(a);
            if m.shape() != (dims[info.target], dims[info.source]) {
                return Err(Error::InvalidRep(format!(
                    "arrow {} has shape {:?}, expected {:?}",
                    info.name,
                    m.shape(),
                    (dims[info.target], dims[info.source])
                )));
            }
        }
        let rep = Self::new_unchecked(alg, dims, maps);
        rep.check_relations()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra<F>>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Self {
        Rep {
            inner: Arc::new(RepInner {
                alg,
                dims,
                maps,
                generators: OnceLock::new(),
            }),
        }
    }

    pub fn zero(alg: Arc<Algebra<F>>) -> Self {
        let n = alg.vertex_count();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Self::new_unchecked(alg, vec![0; n], maps)
    }

    /// The simple module at vertex `x`.
    pub fn simple(alg: Arc<Algebra<F>>, x: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[x] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Self::new_unchecked(alg, dims, maps)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.inner.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.inner.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Matrix<F> {
        &self.inner.maps[a]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.inner.maps
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.inner.dims.len()).filter(|&x| self.inner.dims[x] > 0).collect()
    }

    /// Matrix by which a path acts.
    pub fn path_matrix(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.dim_at(p.source));
        for &a in &p.arrows {
            m = self.map(a).mul(&m);
        }
        m
    }

    /// Applies a path to a vector of `M(source)`.
    pub fn apply_path(&self, p: &Path, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for &a in &p.arrows {
            v = self.map(a).mul_vec(&v);
        }
        v
    }

    fn check_relations(&self) -> Result<()> {
        let alg = self.algebra();
        let bq = alg.bound_quiver();
        for rel in &bq.relations {
            let (s, t) = (rel.source(), rel.target());
            if self.dim_at(s) == 0 || self.dim_at(t) == 0 {
                continue;
            }
            let mut acc = Matrix::zeros(self.dim_at(t), self.dim_at(s));
            for (c, p) in rel.terms() {
                acc = acc.add(&self.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRep(format!(
                    "relation {} does not vanish",
                    rel.format(&bq.quiver)
                )));
            }
        }
        if bq.truncation.is_some() {
            let q = &bq.quiver;
            let mut layer: Vec<Path> = self.support().into_iter().map(Path::trivial).collect();
            for _ in 0..alg.nilpotency() {
                layer = layer
                    .iter()
                    .flat_map(|p| q.arrows_from(p.target).map(move |a| p.then(a, q)))
                    .filter(|p| self.dim_at(p.target) > 0)
                    .collect();
            }
            for p in layer {
                if self.dim_at(p.source) > 0 && self.dim_at(p.target) > 0 && !self.path_matrix(&p).is_zero() {
                    return Err(Error::InvalidRep(format!(
                        "path {} of length {} does not vanish",
                        bq.quiver.format_path(&p),
                        p.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Structural equality (same algebra, dimensions and matrices).
    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.algebra().same_as(other.algebra())
                && self.inner.dims == other.inner.dims
                && self.inner.maps == other.inner.maps)
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum(alg: &Arc<Algebra<F>>, parts: &[Rep<F>]) -> (Rep<F>, Vec<RepMap<F>>, Vec<RepMap<F>>) {
        let n = alg.vertex_count();
        let q = alg.quiver();
        let dims: Vec<usize> = (0..n).map(|x| parts.iter().map(|p| p.dim_at(x)).sum()).collect();
        let maps: Vec<Matrix<F>> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, info)| {
                let mut m = Matrix::zeros(dims[info.target], dims[info.source]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, p.map(a));
                    r += p.dim_at(info.target);
                    c += p.dim_at(info.source);
                }
                m
            })
            .collect();
        let sum = Rep::new_unchecked(alg.clone(), dims.clone(), maps);
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut offs = vec![0; n];
        for p in parts {
            let i: Vec<Matrix<F>> = (0..n)
                .map(|x| {
                    let mut m = Matrix::zeros(dims[x], p.dim_at(x));
                    m.set_block(offs[x], 0, &Matrix::identity(p.dim_at(x)));
                    m
                })
                .collect();
            let pr: Vec<Matrix<F>> = i.iter().map(Matrix::transpose).collect();
            incl.push(RepMap::new_unchecked(p.clone(), sum.clone(), i));
            proj.push(RepMap::new_unchecked(sum.clone(), p.clone(), pr));
            for x in 0..n {
                offs[x] += p.dim_at(x);
            }
        }
        (sum, incl, proj)
    }

    /// The same matrices viewed over a structurally equal algebra.
    pub fn rehome(&self, alg: &Arc<Algebra<F>>) -> Rep<F> {
        if Arc::ptr_eq(self.algebra(), alg) {
            return self.clone();
        }
        debug_assert!(self.algebra().same_as(alg));
        Rep::new_unchecked(alg.clone(), self.inner.dims.clone(), self.inner.maps.clone())
    }

    /// Transports the representation along an isomorphism given by one
    /// invertible matrix per vertex (`new = g * old * g^-1`).
    pub fn conjugate(&self, change: &[Matrix<F>]) -> Result<Rep<F>> {
        let inv: Vec<Matrix<F>> = change
            .iter()
            .map(|g| {
                g.inverse()
                    .ok_or_else(|| Error::InvalidMap("base change not invertible".into()))
            })
            .collect::<Result<_>>()?;
        let q = self.algebra().quiver();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, info)| change[info.target].mul(self.map(a)).mul(&inv[info.source]))
            .collect();
        Ok(Rep::new_unchecked(
            self.algebra().clone(),
            self.inner.dims.clone(),
            maps,
        ))
    }

    pub(crate) fn generators(&self) -> &Generators<F> {
        self.inner.generators.get_or_init(|| Generators::compute(self))
    }
}

impl<F: Field> fmt::Debug for Rep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.inner.dims)
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone)]
pub struct RepMap<F: Field> {
    pub source: Rep<F>,
    pub target: Rep<F>,
    comps: Vec<Matrix<F>>,
}

impl<F: Field> RepMap<F> {
    /// Checks shapes and the intertwining condition.
    pub fn new(source: Rep<F>, target: Rep<F>, comps: Vec<Matrix<F>>) -> Result<Self> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.algebra().vertex_count();
        if comps.len() != n {
            return Err(Error::InvalidMap("wrong number of components".into()));
        }
        for x in 0..n {
            if comps[x].shape() != (target.dim_at(x), source.dim_at(x)) {
                return Err(Error::InvalidMap(format!(
                    "component at vertex {x} has the wrong shape"
                )));
            }
        }
        let f = Self::new_unchecked(source, target, comps);
        if !f.intertwines() {
            return Err(Error::InvalidMap("components do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Rep<F>, target: Rep<F>, comps: Vec<Matrix<F>>) -> Self {
        RepMap { source, target, comps }
    }

    pub fn zero(source: Rep<F>, target: Rep<F>) -> Self {
        let comps = (0..source.algebra().vertex_count())
            .map(|x| Matrix::zeros(target.dim_at(x), source.dim_at(x)))
            .collect();
        Self::new_unchecked(source, target, comps)
    }

    pub fn identity(m: &Rep<F>) -> Self {
        let comps = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        Self::new_unchecked(m.clone(), m.clone(), comps)
    }

    pub fn comp(&self, x: usize) -> &Matrix<F> {
        &self.comps[x]
    }

    pub fn comps(&self) -> &[Matrix<F>] {
        &self.comps
    }

    pub fn intertwines(&self) -> bool {
        let q = self.source.algebra().quiver();
        q.arrows().iter().enumerate().all(|(a, info)| {
            self.comps[info.target].mul(self.source.map(a)) == self.target.map(a).mul(&self.comps[info.source])
        })
    }

    /// `self` after `first`.
    pub fn after(&self, first: &RepMap<F>) -> RepMap<F> {
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        Self::new_unchecked(first.source.clone(), self.target.clone(), comps)
    }

    pub fn add(&self, other: &RepMap<F>) -> RepMap<F> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, c: &F) -> RepMap<F> {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<RepMap<F>> {
        let comps = self.comps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(self.target.clone(), self.source.clone(), comps))
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    /// All components flattened into one coordinate vector.
    pub fn flatten(&self) -> Vec<F> {
        self.comps.iter().flat_map(|c| c.to_vec()).collect()
    }

    /// Linear combination of parallel maps.
    pub fn combination(maps: &[RepMap<F>], coefs: &[F]) -> RepMap<F> {
        let mut acc = RepMap::zero(maps[0].source.clone(), maps[0].target.clone());
        for (m, c) in maps.iter().zip(coefs) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }
}

impl<F: Field> fmt::Debug for RepMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap({:?} -> {:?}, {:?})", self.source, self.target, self.comps)
    }
}

#[cfg(test)]
mod tests;
