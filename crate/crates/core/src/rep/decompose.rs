//! Krull–Schmidt decomposition and isomorphism tests.
//!
//! An endomorphism algebra counts as local when it has the shape `K·1 ⊕ N`
//! with `N` a nilpotent ideal; otherwise Fitting's lemma is applied to
//! candidate endomorphisms `φ - λ` until one is neither nilpotent nor
//! invertible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

use super::hom::hom_space;
use super::{Rep, RepMap};

/// Seed and number of random trials for the randomized searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialBudget {
    pub seed: u64,
    pub trials: usize,
}

impl Default for TrialBudget {
    fn default() -> Self {
        TrialBudget {
            seed: 0x7a75,
            trials: 64,
        }
    }
}

/// Coefficients of random combinations are drawn from `0..=POOL`.
const POOL: i64 = 16;

/// One indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Rep<F>,
    pub inclusion: RepMap<F>,
    pub projection: RepMap<F>,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub whole: Rep<F>,
    pub summands: Vec<Summand<F>>,
}

impl<F: Field> Decomposition<F> {
    /// Summands grouped into isomorphism classes with multiplicities.
    pub fn grouped(&self) -> Result<Vec<(Rep<F>, usize)>> {
        let mut out: Vec<(Rep<F>, usize)> = Vec::new();
        'next: for s in &self.summands {
            for (rep, mult) in out.iter_mut() {
                if indecomposable_iso(rep, &s.module)?.is_some() {
                    *mult += 1;
                    continue 'next;
                }
            }
            out.push((s.module.clone(), 1));
        }
        Ok(out)
    }

    pub fn modules(&self) -> Vec<Rep<F>> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }

    /// The isomorphism `⊕ X_i -> M` assembled from the inclusions.
    pub fn witness(&self) -> RepMap<F> {
        let alg = self.whole.algebra();
        let (sum, _, projs) = Rep::direct_sum(alg, &self.modules());
        let mut acc = RepMap::zero(sum, self.whole.clone());
        for (s, p) in self.summands.iter().zip(&projs) {
            acc = acc.add(&s.inclusion.after(p));
        }
        acc
    }
}

/// Splits `m` into indecomposable summands.
pub fn decompose<F: Field>(m: &Rep<F>, budget: TrialBudget) -> Result<Decomposition<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut summands = Vec::new();
    split_into(
        m,
        &RepMap::identity(m),
        &RepMap::identity(m),
        budget.trials,
        &mut rng,
        &mut summands,
    )?;
    Ok(Decomposition {
        whole: m.clone(),
        summands,
    })
}

fn split_into<F: Field>(
    m: &Rep<F>,
    incl: &RepMap<F>,
    proj: &RepMap<F>,
    trials: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Summand<F>>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let basis = hom_space(m, m)?;
    if basis.len() == 1 || local_scalars(&basis).is_some() {
        out.push(Summand {
            module: m.clone(),
            inclusion: incl.clone(),
            projection: proj.clone(),
        });
        return Ok(());
    }
    let psi = find_splitter(&basis, trials, rng).ok_or(Error::FieldTooSmall)?;
    let d = m.total_dim();
    let power: Vec<Matrix<F>> = psi.comps().iter().map(|c| c.pow(d)).collect();
    let kb: Vec<Matrix<F>> = power.iter().map(Matrix::nullspace).collect();
    let ib: Vec<Matrix<F>> = power.iter().map(Matrix::column_space).collect();
    let ker = m.submodule(&kb);
    let img = m.submodule(&ib);
    let mut pk = Vec::new();
    let mut pi = Vec::new();
    for x in 0..m.algebra().vertex_count() {
        let full = Matrix::hstack(&[&kb[x], &ib[x]], m.dim_at(x));
        let inv = full.inverse().expect("Fitting decomposition is direct");
        pk.push(inv.block(0, 0, kb[x].cols(), m.dim_at(x)));
        pi.push(inv.block(kb[x].cols(), 0, ib[x].cols(), m.dim_at(x)));
    }
    let pk = RepMap::new_unchecked(m.clone(), ker.module.clone(), pk);
    let pi = RepMap::new_unchecked(m.clone(), img.module.clone(), pi);
    split_into(&ker.module, &incl.after(&ker.map), &pk.after(proj), trials, rng, out)?;
    split_into(&img.module, &incl.after(&img.map), &pi.after(proj), trials, rng, out)
}

pub(crate) fn is_nilpotent<F: Field>(f: &RepMap<F>) -> bool {
    f.comps().iter().all(|c| c.pow(c.rows()).is_zero())
}

fn minus_scalar<F: Field>(f: &RepMap<F>, lambda: &F) -> RepMap<F> {
    f.add(&RepMap::identity(&f.source).scale(&lambda.neg()))
}

/// Roots of the minimal polynomial of the `k`-th standard vector under `c`.
fn krylov_roots<F: Field>(c: &Matrix<F>, k: usize) -> Vec<F> {
    let d = c.rows();
    let mut v = vec![F::zero(); d];
    v[k] = F::one();
    let mut krylov: Vec<Vec<F>> = Vec::new();
    loop {
        let basis = super::present::columns_to_matrix(krylov.clone(), d);
        if let Some(coefs) = basis.solve(&Matrix::column_vector(v.clone())) {
            let mut poly: Vec<F> = coefs.column(0).iter().map(F::neg).collect();
            poly.push(F::one());
            return F::roots(&poly).unwrap_or_default();
        }
        let next = c.mul_vec(&v);
        krylov.push(v);
        v = next;
    }
}

/// Eigenvalues in `F` of an endomorphism, from the minimal polynomials of
/// the standard basis vectors at every vertex. Always contains zero.
fn candidates<F: Field>(f: &RepMap<F>) -> Vec<F> {
    let mut out = vec![F::zero()];
    for c in f.comps() {
        for k in 0..c.rows() {
            for r in krylov_roots(c, k) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// The scalar `λ` with `f - λ` nilpotent, if there is one.
fn unipotent_scalar<F: Field>(f: &RepMap<F>) -> Option<(F, RepMap<F>)> {
    let c = f.comps().iter().find(|c| c.rows() > 0)?;
    let roots = krylov_roots(c, 0);
    let [l] = roots.as_slice() else { return None };
    let n = minus_scalar(f, l);
    is_nilpotent(&n).then(|| (l.clone(), n))
}

/// For a basis of `End M`, returns scalars `λ_i` with every `b_i - λ_i`
/// nilpotent and their span a nilpotent ideal of codimension one, if so.
pub(crate) fn local_scalars<F: Field>(basis: &[RepMap<F>]) -> Option<Vec<F>> {
    let mut lambdas = Vec::new();
    let mut nil = Vec::new();
    for b in basis {
        let (l, n) = unipotent_scalar(b)?;
        lambdas.push(l);
        nil.push(n);
    }
    let rows: Vec<Vec<F>> = nil.iter().map(RepMap::flatten).collect();
    let width = rows.first().map_or(0, Vec::len);
    let span = Matrix::from_rows(rows, width).transpose().column_space();
    if span.cols() + 1 != basis.len() {
        return None;
    }
    for a in &nil {
        for b in &nil {
            let p = Matrix::column_vector(a.after(b).flatten());
            span.solve(&p)?;
        }
    }
    Some(lambdas)
}

fn find_splitter<F: Field>(basis: &[RepMap<F>], trials: usize, rng: &mut ChaCha8Rng) -> Option<RepMap<F>> {
    let splits = |phi: &RepMap<F>| {
        candidates(phi).into_iter().find_map(|l| {
            let psi = minus_scalar(phi, &l);
            (!psi.is_iso() && !is_nilpotent(&psi)).then_some(psi)
        })
    };
    for b in basis {
        if let Some(psi) = splits(b) {
            return Some(psi);
        }
    }
    for _ in 0..trials {
        let coefs: Vec<F> = basis.iter().map(|_| F::from_i64(rng.gen_range(0..=POOL))).collect();
        if let Some(psi) = splits(&RepMap::combination(basis, &coefs)) {
            return Some(psi);
        }
    }
    None
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoResult<F: Field> {
    /// An explicit isomorphism `m -> n`.
    Iso(RepMap<F>),
    /// Why no isomorphism exists.
    NotIso(String),
}

impl<F: Field> IsoResult<F> {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

/// Decides whether `m ≅ n`.
///
/// Dimension vectors and Hom dimensions are compared first, then seeded
/// random elements of `Hom(m, n)` are tried. If none is invertible the
/// modules are decomposed and summands matched: indecomposables `X, Y` are
/// isomorphic iff some `g f` with `f: X -> Y`, `g: Y -> X` is not nilpotent.
pub fn is_isomorphic<F: Field>(m: &Rep<F>, n: &Rep<F>, budget: TrialBudget) -> Result<IsoResult<F>> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(IsoResult::NotIso(format!(
            "dimension vectors {:?} and {:?}",
            m.dims(),
            n.dims()
        )));
    }
    if m.is_zero() {
        return Ok(IsoResult::Iso(RepMap::zero(m.clone(), n.clone())));
    }
    let mn = hom_space(m, n)?;
    let nm_dim = hom_space(n, m)?.len();
    let (mm_dim, nn_dim) = (hom_space(m, m)?.len(), hom_space(n, n)?.len());
    if mn.len() != nm_dim || mn.len() != mm_dim || mn.len() != nn_dim {
        return Ok(IsoResult::NotIso(format!(
            "Hom dimensions (M,M)={mm_dim} (M,N)={} (N,M)={nm_dim} (N,N)={nn_dim}",
            mn.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for f in &mn {
        if f.is_iso() {
            return Ok(IsoResult::Iso(f.clone()));
        }
    }
    for _ in 0..budget.trials {
        let coefs: Vec<F> = mn.iter().map(|_| F::from_i64(rng.gen_range(0..=POOL))).collect();
        let f = RepMap::combination(&mn, &coefs);
        if f.is_iso() {
            return Ok(IsoResult::Iso(f));
        }
    }
    let dm = decompose(m, budget).map_err(|e| Error::Inconclusive(e.to_string()))?;
    let dn = decompose(n, budget).map_err(|e| Error::Inconclusive(e.to_string()))?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(IsoResult::NotIso(format!(
            "{} and {} indecomposable summands",
            dm.summands.len(),
            dn.summands.len()
        )));
    }
    let mut used = vec![false; dn.summands.len()];
    let mut witness = RepMap::zero(m.clone(), n.clone());
    for sx in &dm.summands {
        let mut found = false;
        for (j, sy) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(f) = indecomposable_iso(&sx.module, &sy.module)? {
                used[j] = true;
                found = true;
                witness = witness.add(&sy.inclusion.after(&f).after(&sx.projection));
                break;
            }
        }
        if !found {
            return Ok(IsoResult::NotIso(format!(
                "summand with dimension vector {:?} has no partner",
                sx.module.dims()
            )));
        }
    }
    Ok(IsoResult::Iso(witness))
}

/// An isomorphism between indecomposables, if one exists.
pub(crate) fn indecomposable_iso<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<Option<RepMap<F>>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let fs = hom_space(x, y)?;
    let gs = hom_space(y, x)?;
    for f in &fs {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
        for g in &gs {
            if !is_nilpotent(&g.after(f)) {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}
