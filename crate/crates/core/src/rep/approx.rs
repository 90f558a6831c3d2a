//! Factor modules and minimal left approximations.

use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;

use super::hom::hom_space;
use super::{Rep, RepMap};

/// Whether `x` is a quotient of a finite direct sum of copies of the `us`,
/// i.e. the trace of `add U` in `x` is all of `x`.
pub fn fac_contains<F: Field>(us: &[Rep<F>], x: &Rep<F>) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    let mut maps = Vec::new();
    for u in us {
        maps.extend(hom_space(u, x)?);
    }
    Ok((0..x.algebra().vertex_count()).all(|v| {
        let parts: Vec<&Matrix<F>> = maps.iter().map(|f| f.comp(v)).collect();
        Matrix::hstack(&parts, x.dim_at(v)).rank() == x.dim_at(v)
    }))
}

/// A minimal left `add U`-approximation `f: X -> U'`.
#[derive(Clone, Debug)]
pub struct Approximation<F: Field> {
    pub map: RepMap<F>,
    /// For each summand of `U'`, the index of the module of `U` it copies.
    pub copies: Vec<usize>,
}

impl<F: Field> Approximation<F> {
    pub fn target(&self) -> &Rep<F> {
        &self.map.target
    }

    /// Multiplicity of each module of `U` in the target.
    pub fn multiplicities(&self, count: usize) -> Vec<usize> {
        let mut m = vec![0; count];
        for &c in &self.copies {
            m[c] += 1;
        }
        m
    }
}

/// Minimal left `add U`-approximation of `x`, for `us` pairwise
/// non-isomorphic indecomposables.
///
/// Starts from the universal map into `⊕ U_i^{dim Hom(X, U_i)}` and drops
/// copies (largest first) whose component factors through the others.
pub fn min_left_approx<F: Field>(x: &Rep<F>, us: &[Rep<F>]) -> Result<Approximation<F>> {
    let mut comps: Vec<(usize, RepMap<F>)> = Vec::new();
    for (i, u) in us.iter().enumerate() {
        for f in hom_space(x, u)? {
            comps.push((i, f));
        }
    }
    // maps between the U's, computed once
    let mut between: Vec<Vec<Vec<RepMap<F>>>> = Vec::with_capacity(us.len());
    for a in us {
        let mut row = Vec::with_capacity(us.len());
        for b in us {
            row.push(hom_space(a, b)?);
        }
        between.push(row);
    }
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(us[comps[c].0].total_dim()), c));
    let mut alive = vec![true; comps.len()];
    for c in order {
        let (i, fc) = &comps[c];
        let mut span = Vec::new();
        for (j, (k, fj)) in comps.iter().enumerate() {
            if j == c || !alive[j] {
                continue;
            }
            for g in &between[*k][*i] {
                span.push(g.after(fj).flatten());
            }
        }
        let target = fc.flatten();
        let removable = if span.is_empty() {
            target.iter().all(F::is_zero)
        } else {
            let width = target.len();
            let cols = Matrix::from_rows(span, width).transpose();
            cols.solve(&Matrix::column_vector(target)).is_some()
        };
        if removable {
            alive[c] = false;
        }
    }
    let kept: Vec<&(usize, RepMap<F>)> = comps.iter().zip(&alive).filter(|(_, &a)| a).map(|(c, _)| c).collect();
    let parts: Vec<Rep<F>> = kept.iter().map(|(i, _)| us[*i].clone()).collect();
    let (sum, incl, _) = Rep::direct_sum(x.algebra(), &parts);
    let mut map = RepMap::zero(x.clone(), sum);
    for ((_, f), inc) in kept.iter().zip(&incl) {
        map = map.add(&inc.after(f));
    }
    Ok(Approximation {
        map,
        copies: kept.iter().map(|(i, _)| *i).collect(),
    })
}
