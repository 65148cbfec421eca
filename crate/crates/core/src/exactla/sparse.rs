use super::{Mat, PrimeField};

/// Matrices whose dimension exceeds this are kept in triplet form when built
/// as Kronecker products.
pub const SPARSE_THRESHOLD: usize = 4096;

/// Triplet-form sparse matrix, used for Kronecker-structured operators that
/// would be wasteful to store densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    /// `(row, col, value)`, sorted, no zeros, no duplicates
    entries: Vec<(usize, usize, u32)>,
}

impl SparseMat {
    pub fn from_triplets(
        field: PrimeField,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Self {
        let mut raw: Vec<_> = triplets.into_iter().collect();
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, u32)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            assert!(r < rows && c < cols, "triplet out of bounds");
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(last.2, v % field.p()),
                _ => entries.push((r, c, v % field.p())),
            }
        }
        entries.retain(|e| e.2 != 0);
        SparseMat {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_dense(m: &Mat) -> Self {
        let triplets = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = m.get(i, j);
                (v != 0).then_some((i, j, v))
            });
        SparseMat::from_triplets(m.field(), m.rows(), m.cols(), triplets)
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m.set(r, c, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "sparse matrix-vector product");
        let f = self.field;
        let mut out = vec![0u32; self.rows];
        for &(r, c, a) in &self.entries {
            if v[c] != 0 {
                out[r] = f.mul_add(out[r], a, v[c]);
            }
        }
        out
    }

    pub fn mul_dense(&self, m: &Mat) -> Mat {
        assert_eq!(m.rows(), self.cols, "sparse matrix product");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, m.cols());
        for &(r, c, a) in &self.entries {
            for j in 0..m.cols() {
                let b = m.get(c, j);
                if b != 0 {
                    let cur = out.get(r, j);
                    out.set(r, j, f.mul_add(cur, a, b));
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &SparseMat) -> SparseMat {
        let f = self.field;
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for &(i, j, a) in &self.entries {
            for &(k, l, b) in &other.entries {
                entries.push((i * other.rows + k, j * other.cols + l, f.mul(a, b)));
            }
        }
        SparseMat {
            field: f,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        }
    }
}

/// Either representation of a Kronecker product, chosen by size.
#[derive(Clone, Debug)]
pub enum KronProduct {
    Dense(Mat),
    Sparse(SparseMat),
}

impl KronProduct {
    pub fn of(a: &Mat, b: &Mat) -> Self {
        let dim = (a.rows() * b.rows()).max(a.cols() * b.cols());
        if dim > SPARSE_THRESHOLD {
            KronProduct::Sparse(SparseMat::from_dense(a).kron(&SparseMat::from_dense(b)))
        } else {
            KronProduct::Dense(a.kron(b))
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        match self {
            KronProduct::Dense(m) => m.mul_vec(v),
            KronProduct::Sparse(s) => s.mul_vec(v),
        }
    }

    pub fn to_dense(&self) -> Mat {
        match self {
            KronProduct::Dense(m) => m.clone(),
            KronProduct::Sparse(s) => s.to_dense(),
        }
    }
}
