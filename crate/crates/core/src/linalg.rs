//! Dense linear algebra over a finite field: row reduction, rank, kernels.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::{Elem, FieldSpec};

#[derive(Clone, Debug)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn from_rows(field: &Arc<FieldSpec>, rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.get(row, col)).unwrap();
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[fc] = Elem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &br) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, br);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// A linear map given by the sparse images of basis vectors, each keyed by an
/// arbitrary coordinate label. Returns `(matrix, labels)` with one row per
/// label that ever occurs.
pub fn matrix_from_images<K: Ord + Clone>(field: &Arc<FieldSpec>, images: &[BTreeMap<K, Elem>]) -> (Matrix, Vec<K>) {
    let mut labels: BTreeMap<K, usize> = BTreeMap::new();
    for img in images {
        for k in img.keys() {
            let n = labels.len();
            labels.entry(k.clone()).or_insert(n);
        }
    }
    let mut m = Matrix::zeros(field, labels.len(), images.len());
    for (col, img) in images.iter().enumerate() {
        for (k, &v) in img {
            m.set(labels[k], col, v);
        }
    }
    let mut order: Vec<(K, usize)> = labels.into_iter().collect();
    order.sort_by_key(|(_, i)| *i);
    (m, order.into_iter().map(|(k, _)| k).collect())
}

/// Kernel of a linear map given by the images of basis vectors.
pub fn kernel_of_images<K: Ord + Clone>(field: &Arc<FieldSpec>, images: &[BTreeMap<K, Elem>]) -> Vec<Vec<Elem>> {
    if images.is_empty() {
        return Vec::new();
    }
    let (m, labels) = matrix_from_images(field, images);
    if labels.is_empty() {
        // the zero map: everything is in the kernel
        return Matrix::identity(field, images.len()).to_rows();
    }
    m.kernel()
}

/// Rank of a linear map given by the images of basis vectors.
pub fn rank_of_images<K: Ord + Clone>(field: &Arc<FieldSpec>, images: &[BTreeMap<K, Elem>]) -> usize {
    let (m, labels) = matrix_from_images(field, images);
    if labels.is_empty() {
        return 0;
    }
    m.rank()
}

/// Incrementally grown row space, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Arc<FieldSpec>,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn new(field: &Arc<FieldSpec>) -> Self {
        EchelonBasis { field: field.clone(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; false if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        let f = self.field.clone();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if !c.is_zero() {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}
