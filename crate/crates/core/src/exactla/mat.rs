use std::fmt;

use crate::error::{Error, Result};

use super::PrimeField;

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        let p = field.p();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Mat {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds an `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Mat::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols + j] = x % field.p();
            }
        }
        m
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        Mat {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.field.p();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let p = f.p() as u64;
        let n = other.cols;
        let lazy = lazy_budget(f);
        let mut out = Mat::zeros(f, self.rows, n);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending == lazy {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out.data[i * n..(i + 1) * n].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector product");
        let p = self.field.p() as u64;
        let lazy = lazy_budget(self.field);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                let mut pending = 0;
                for (&a, &b) in self.row(i).iter().zip(v) {
                    if a != 0 && b != 0 {
                        acc += a as u64 * b as u64;
                        pending += 1;
                        if pending == lazy {
                            acc %= p;
                            pending = 0;
                        }
                    }
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(PrimeField, u32, u32) -> u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(f, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: u32, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = f.mul_add(*a, c, b);
            }
        }
    }

    /// Kronecker product, `(a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l]` with the first factor major.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(field: PrimeField, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack rows");
            for i in 0..rows {
                out.data[i * cols + off..i * cols + off + b.cols].copy_from_slice(b.row(i));
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: PrimeField, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack cols");
            data.extend_from_slice(&b.data);
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(field: PrimeField, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// `diag(self, self, ..., self)` with `copies` blocks.
    pub fn direct_power(&self, copies: usize) -> Mat {
        let blocks = vec![self; copies];
        Mat::block_diag(self.field, &blocks)
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Mat) {
        for i in 0..block.rows {
            let dst = (row + i) * self.cols + col;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            let src = (row + i) * self.cols + col;
            out.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with its pivot columns.
    ///
    /// Pivots are taken as the first nonzero entry in column order, so the
    /// result depends only on the input.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// In-place Gauss-Jordan elimination. With `full == false` only rows
    /// below each pivot are cleared (row echelon form).
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let x = &mut self.data[r * cols + k];
                    *x = f.mul(*x, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let pivot_row = &pivot_row[c..];
            let clear = |row: &mut [u32]| {
                let factor = row[c];
                if factor != 0 {
                    let neg = p - factor as u64;
                    for (x, &y) in row[c..].iter_mut().zip(pivot_row) {
                        if y != 0 {
                            *x = ((*x as u64 + neg * y as u64) % p) as u32;
                        }
                    }
                }
            };
            for row in after.chunks_mut(cols) {
                clear(row);
            }
            if full {
                for row in before.chunks_mut(cols) {
                    clear(row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space, one basis vector per column.
    ///
    /// The basis is indexed by the free columns of the reduced echelon form;
    /// each basis vector has a 1 in its own free position and zeros in the
    /// other free positions.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.data[fc * free.len() + t] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, fc);
                if v != 0 {
                    k.data[pc * free.len() + t] = f.neg(v);
                }
            }
        }
        k
    }

    /// Independent columns of `self` spanning its column space (pivot columns).
    pub fn column_space_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self * x = b`; `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "solve right-hand side",
                expected: self.rows,
                found: b.len(),
            });
        }
        let rhs = Mat::column_vector(self.field, b);
        Ok(self.solve_many(&rhs)?.map(|x| x.into_data()))
    }

    /// Solves `self * X = rhs` column by column; `None` if any column is inconsistent.
    pub fn solve_many(&self, rhs: &Mat) -> Result<Option<Mat>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                context: "solve right-hand side",
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.cols;
        let aug = Mat::hstack(self.field, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.last().is_some_and(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.data[pc * rhs.cols + j] = r.get(row, n + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let x = self
            .solve_many(&Mat::identity(self.field, self.rows))
            .ok()??;
        (self.rank() == self.rows).then_some(x)
    }
}

/// How many products of two reduced entries fit into a `u64` before reducing.
fn lazy_budget(f: PrimeField) -> u64 {
    let q = (f.p() as u64 - 1).max(1);
    (u64::MAX / (q * q)).max(1) - 1
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
