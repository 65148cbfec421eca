use super::{Mat, PrimeField};

/// A subquotient `T / U` of an ambient space `k^n`, with `U ⊆ T`.
///
/// Representatives of the quotient basis are chosen among the spanning
/// vectors of `T`, scanning in order, so the choice is deterministic.
#[derive(Clone, Debug)]
pub struct Subquotient {
    field: PrimeField,
    sub: Mat,
    reps: Mat,
    /// `left * [U | reps] = I`
    left: Mat,
    /// rows spanning the annihilator of `U + span(reps)`
    annihilator: Mat,
}

impl Subquotient {
    /// `top` and `sub` hold spanning vectors as columns; they need not be independent.
    ///
    /// Returns `None` if `sub` is not contained in the span of `top`.
    pub fn new(top: &Mat, sub: &Mat) -> Option<Self> {
        let field = top.field();
        let n = top.rows();
        assert_eq!(sub.rows(), n, "ambient dimension");
        let u = sub.column_space_basis();
        let joined = Mat::hstack(field, n, &[&u, top]);
        let (_, pivots) = joined.rref();
        let reps_idx: Vec<usize> = pivots
            .iter()
            .filter(|&&c| c >= u.cols())
            .map(|&c| c - u.cols())
            .collect();
        let reps = top.select_columns(&reps_idx);
        let basis = Mat::hstack(field, n, &[&u, &reps]);
        let r = basis.cols();
        let aug = Mat::hstack(field, n, &[&basis, &Mat::identity(field, n)]);
        let (red, _) = aug.rref();
        let left = red.block(0, r, r, n);
        let annihilator = red.block(r, r, n - r, n);
        let sq = Subquotient {
            field,
            sub: u,
            reps,
            left,
            annihilator,
        };
        (top.rank() == r).then_some(sq)
    }

    /// The quotient of the whole ambient space by `sub`.
    pub fn cokernel(sub: &Mat) -> Self {
        let n = sub.rows();
        Subquotient::new(&Mat::identity(sub.field(), n), sub).expect("ambient contains everything")
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub.cols()
    }

    /// Basis of `U`, as columns.
    pub fn sub_basis(&self) -> &Mat {
        &self.sub
    }

    pub fn ambient_dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Representatives of the quotient basis, as columns.
    pub fn reps(&self) -> &Mat {
        &self.reps
    }

    /// Quotient coordinates of each column of `vs`; `None` if some column is outside `T`.
    pub fn coords(&self, vs: &Mat) -> Option<Mat> {
        if !self.annihilator.mul(vs).is_zero() {
            return None;
        }
        let full = self.left.mul(vs);
        Some(full.block(self.sub_dim(), 0, self.dim(), vs.cols()))
    }

    /// True when every column of `vs` lies in `U`.
    pub fn contains_in_sub(&self, vs: &Mat) -> bool {
        self.coords(vs).is_some_and(|c| c.is_zero())
    }

    /// Matrix of the map induced by an ambient operator `op`; `None` unless
    /// `op` preserves both `U` and `T`.
    pub fn induced(&self, op: &Mat) -> Option<Mat> {
        self.induced_to(self, op)
    }

    /// Matrix of the map `self -> target` induced by `op: ambient -> target ambient`;
    /// `None` unless `op(U) ⊆ U'` and `op(T) ⊆ T'`.
    pub fn induced_to(&self, target: &Subquotient, op: &Mat) -> Option<Mat> {
        if !target.contains_in_sub(&op.mul(&self.sub)) {
            return None;
        }
        target.coords(&op.mul(&self.reps))
    }
}
