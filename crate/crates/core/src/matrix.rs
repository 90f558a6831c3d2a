//! Dense matrices over an exact field.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>, // row-major
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn column_vector(v: Vec<F>) -> Self {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Horizontal concatenation; all parts need the same row count.
    pub fn hstack(parts: &[&Self], rows: usize) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, off, p);
            off += p.cols;
        }
        out
    }

    /// Vertical concatenation; all parts need the same column count.
    pub fn vstack(parts: &[&Self], cols: usize) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(off, 0, p);
            off += p.rows;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// Reduced row-echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        let w = m.cols;
        for c in 0..w {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inv().expect("nonzero pivot");
            for v in &mut m.data[lead * w + c..(lead + 1) * w] {
                *v = v.mul(&inv);
            }
            let (above, rest) = m.data.split_at_mut(lead * w);
            let (pivot_row, below) = rest.split_at_mut(w);
            let pivot_row = &pivot_row[c..];
            for row in above.chunks_mut(w).chain(below.chunks_mut(w)) {
                let factor = row[c].clone();
                if !factor.is_zero() {
                    F::sub_scaled(&mut row[c..], &factor, pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row echelon form with unit pivots, eliminating only below each pivot.
    /// Zero rows are dropped.
    fn echelon(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        let w = m.cols;
        for c in 0..w {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inv().expect("nonzero pivot");
            for v in &mut m.data[lead * w + c..(lead + 1) * w] {
                *v = v.mul(&inv);
            }
            let (upto, below) = m.data.split_at_mut((lead + 1) * w);
            let pivot_row = &upto[lead * w + c..];
            for row in below.chunks_mut(w) {
                let factor = row[c].clone();
                if !factor.is_zero() {
                    F::sub_scaled(&mut row[c..], &factor, pivot_row);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.data.truncate(lead * w);
        m.rows = lead;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Columns form a basis of the kernel: one vector per free column, with
    /// a 1 there and 0 at the other free columns.
    pub fn nullspace(&self) -> Self {
        let (e, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            let mut x = vec![F::zero(); self.cols];
            x[f] = F::one();
            for (i, &p) in pivots.iter().enumerate().rev() {
                let row = e.row(i);
                let mut acc = F::zero();
                for c in p + 1..self.cols {
                    if !x[c].is_zero() && !row[c].is_zero() {
                        acc = acc.add(&row[c].mul(&x[c]));
                    }
                }
                x[p] = acc.neg();
            }
            for (r, v) in x.into_iter().enumerate() {
                out.set(r, k, v);
            }
        }
        out
    }

    /// Rows form a basis of the left kernel `{y : y * self = 0}`.
    pub fn left_nullspace(&self) -> Self {
        self.transpose().nullspace().transpose()
    }

    /// Columns form a basis of the column space.
    pub fn column_space(&self) -> Self {
        let (_, pivots) = self.echelon();
        self.select_columns(&pivots)
    }

    /// A particular solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = Self::hstack(&[self, b], self.rows);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// A particular solution of `x * self = b`.
    pub fn solve_left(&self, b: &Self) -> Option<Self> {
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Self::identity(self.rows))?;
        if self.mul(&x) == Self::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Flattens row-major into a vector.
    pub fn to_vec(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

/// Extends the columns of `basis` (independent) to a basis of `F^n` using
/// standard vectors; returns the indices of the standard vectors added.
pub fn complement_indices<F: Field>(basis: &Matrix<F>) -> Vec<usize> {
    let n = basis.rows();
    let aug = Matrix::hstack(&[basis, &Matrix::identity(n)], n);
    let (_, pivots) = aug.rref();
    pivots
        .into_iter()
        .filter(|&p| p >= basis.cols())
        .map(|p| p - basis.cols())
        .collect()
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}
