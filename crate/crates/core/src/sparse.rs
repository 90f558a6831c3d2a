//! Sparse row reduction for the large, very sparse systems that define
//! morphism spaces.

use crate::field::Field;
use crate::matrix::Matrix;

/// A row as `(column, value)` pairs, sorted by column, no zero values.
pub(crate) type SparseRow<F> = Vec<(usize, F)>;

/// Sorts by column, merges duplicates and drops zeros.
pub(crate) fn normalize<F: Field>(mut row: Vec<(usize, F)>) -> SparseRow<F> {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow<F> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a - f * b`.
fn sub_scaled<F: Field>(a: &[(usize, F)], f: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, f.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&f.mul(&b[j].1));
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Kernel of the matrix with the given rows, in the same normal form as
/// [`Matrix::nullspace`]: one column per free variable, 1 there and 0 at the
/// other free variables.
pub(crate) fn nullspace<F: Field>(rows: Vec<SparseRow<F>>, cols: usize) -> Matrix<F> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut echelon: Vec<SparseRow<F>> = Vec::new();
    for mut r in rows {
        while let Some((c, v)) = r.first().cloned() {
            match pivot_of[c] {
                Some(p) => r = sub_scaled(&r, &v, &echelon[p]),
                None => {
                    let inv = v.inv().expect("nonzero leading entry");
                    for e in &mut r {
                        e.1 = e.1.mul(&inv);
                    }
                    pivot_of[c] = Some(echelon.len());
                    echelon.push(r);
                    break;
                }
            }
        }
    }
    let free: Vec<usize> = (0..cols).filter(|&c| pivot_of[c].is_none()).collect();
    let pivots: Vec<(usize, usize)> = (0..cols).rev().filter_map(|c| pivot_of[c].map(|p| (c, p))).collect();
    let mut out = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut x = vec![F::zero(); cols];
        x[f] = F::one();
        for &(c, p) in &pivots {
            let mut acc = F::zero();
            for (cc, v) in &echelon[p][1..] {
                if !x[*cc].is_zero() {
                    acc = acc.add(&v.mul(&x[*cc]));
                }
            }
            x[c] = acc.neg();
        }
        for (r, v) in x.into_iter().enumerate() {
            if !v.is_zero() {
                out.set(r, k, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn to_sparse(m: &Matrix<Q>) -> Vec<SparseRow<Q>> {
        (0..m.rows())
            .map(|r| normalize(m.row(r).iter().cloned().enumerate().collect()))
            .collect()
    }

    #[test]
    fn normalize_merges_and_drops() {
        let r = normalize(vec![(3, Q::from_i64(1)), (1, Q::from_i64(2)), (3, Q::from_i64(-1))]);
        assert_eq!(r, vec![(1, Q::from_i64(2))]);
    }

    #[test]
    fn small_kernel() {
        let m = Matrix::<Q>::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(nullspace(to_sparse(&m), 3), m.nullspace());
        assert_eq!(nullspace(Vec::<SparseRow<Q>>::new(), 2), Matrix::identity(2));
    }

    proptest! {
        #[test]
        fn agrees_with_dense(entries in proptest::collection::vec(-2i64..3, 20), rows in 1usize..5) {
            let cols = 20 / rows;
            let m = Matrix::<Q>::from_fn(rows, cols, |r, c| Q::from_i64(entries[r * cols + c]));
            prop_assert_eq!(nullspace(to_sparse(&m), cols), m.nullspace());
        }
    }
}
