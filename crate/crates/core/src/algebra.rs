//! Finite-dimensional associative unital algebras given by structure constants.
//!
//! Basis conventions used everywhere downstream:
//! - the tensor product `A ⊗ B` has basis `e_i ⊗ f_j` at index `i * dim(B) + j`
//!   (first factor major);
//! - the enveloping algebra is `A ⊗ A^op` with that ordering;
//! - the center is returned with the echelonized basis of the centrality system.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Mat, PrimeField};

#[derive(Clone)]
pub struct Algebra(Arc<AlgebraData>);

struct AlgebraData {
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`
    table: Vec<u32>,
    unit: Vec<u32>,
    left: Vec<Mat>,
    right: Vec<Mat>,
    enveloping_of: Option<Algebra>,
    generators: OnceLock<Vec<usize>>,
}

impl Algebra {
    /// Builds an algebra from sparse structure constants `(i, j, k, c)`
    /// meaning `e_i e_j += c e_k`. Unlisted products are zero.
    ///
    /// Associativity and the unit law are checked exhaustively.
    pub fn new(
        field: PrimeField,
        labels: Vec<String>,
        mul: &[(usize, usize, usize, u32)],
        unit: Vec<u32>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut table = vec![0u32; d * d * d];
        for &(i, j, k, c) in mul {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidParams(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {d}"
                )));
            }
            let slot = &mut table[(i * d + j) * d + k];
            *slot = field.add(*slot, c % field.p());
        }
        Self::from_table(field, labels, table, unit, None, true)
    }

    /// `check_assoc` may be skipped for constructions that preserve associativity.
    fn from_table(
        field: PrimeField,
        labels: Vec<String>,
        table: Vec<u32>,
        unit: Vec<u32>,
        enveloping_of: Option<Algebra>,
        check_assoc: bool,
    ) -> Result<Self> {
        let d = labels.len();
        if unit.len() != d {
            return Err(Error::DimensionMismatch {
                context: "unit vector",
                expected: d,
                found: unit.len(),
            });
        }
        let unit: Vec<u32> = unit.into_iter().map(|x| x % field.p()).collect();
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for i in 0..d {
            let mut l = Mat::zeros(field, d, d);
            let mut r = Mat::zeros(field, d, d);
            for j in 0..d {
                for k in 0..d {
                    // L_i e_j = e_i e_j ; R_i e_j = e_j e_i
                    l.set(k, j, table[(i * d + j) * d + k]);
                    r.set(k, j, table[(j * d + i) * d + k]);
                }
            }
            left.push(l);
            right.push(r);
        }
        let alg = Algebra(Arc::new(AlgebraData {
            field,
            dim: d,
            labels,
            table,
            unit,
            left,
            right,
            enveloping_of,
            generators: OnceLock::new(),
        }));
        alg.check_unit()?;
        if check_assoc {
            alg.check_associativity()?;
        }
        Ok(alg)
    }

    fn check_unit(&self) -> Result<()> {
        let l1 = self.left_mul_by(&self.0.unit);
        let r1 = self.right_mul_by(&self.0.unit);
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if l1.mul_vec(&e) != e || r1.mul_vec(&e) != e {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let eij = self.product_row(i, j);
                for k in 0..d {
                    // (e_i e_j) e_k = R_k (e_i e_j) ; e_i (e_j e_k) = L_i (e_j e_k)
                    let lhs = self.0.right[k].mul_vec(eij);
                    let rhs = self.0.left[i].mul_vec(self.product_row(j, k));
                    if lhs != rhs {
                        return Err(Error::Associativity { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground field `k` as a 1-dimensional algebra.
    pub fn ground(field: PrimeField) -> Algebra {
        Algebra::new(field, vec!["1".into()], &[(0, 0, 0, 1)], vec![1]).expect("k is an algebra")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn unit(&self) -> &[u32] {
        &self.0.unit
    }

    /// Coefficient of `e_k` in `e_i e_j`.
    #[inline]
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let d = self.dim();
        self.0.table[(i * d + j) * d + k]
    }

    /// Coordinates of `e_i e_j`.
    #[inline]
    pub fn product_row(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim();
        &self.0.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Nonzero structure constants as `(i, j, k, c)`.
    pub fn mul_triplets(&self) -> Vec<(usize, usize, usize, u32)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, &c) in self.product_row(i, j).iter().enumerate() {
                    if c != 0 {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mul(&self, i: usize) -> &Mat {
        &self.0.left[i]
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_mul(&self, i: usize) -> &Mat {
        &self.0.right[i]
    }

    pub fn left_mul_by(&self, a: &[u32]) -> Mat {
        combine(self.field(), self.dim(), &self.0.left, a)
    }

    pub fn right_mul_by(&self, a: &[u32]) -> Mat {
        combine(self.field(), self.dim(), &self.0.right, a)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    context: "algebra element",
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.left_mul_by(x).mul_vec(y))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.product_row(i, j) == self.product_row(j, i)))
    }

    /// For algebras built by [`enveloping`], the algebra `A` with this = `A ⊗ A^op`.
    pub fn enveloping_factor(&self) -> Option<&Algebra> {
        self.0.enveloping_of.as_ref()
    }

    /// Structure-constant equality (labels are ignored).
    pub fn same_structure(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.field() == other.field()
                && self.0.table == other.0.table
                && self.0.unit == other.0.unit)
    }

    /// Basis indices generating the algebra, chosen greedily in basis order.
    ///
    /// Module maps only need to be checked against the action of these.
    pub fn generators(&self) -> &[usize] {
        self.0.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut span = self.subalgebra_span(&gens);
            for i in 0..self.dim() {
                if span.rank() == self.dim() {
                    break;
                }
                let e = Mat::column_vector(self.field(), &self.basis_vector(i));
                let joined = Mat::hstack(self.field(), self.dim(), &[&span, &e]);
                if joined.rank() > span.rank() {
                    gens.push(i);
                    span = self.subalgebra_span(&gens);
                }
            }
            gens
        })
    }

    /// Column basis of the subalgebra generated by the given basis elements.
    fn subalgebra_span(&self, gens: &[usize]) -> Mat {
        let f = self.field();
        let d = self.dim();
        let mut cols = vec![self.unit().to_vec()];
        cols.extend(gens.iter().map(|&g| self.basis_vector(g)));
        let mut basis = Mat::from_columns(f, d, &cols).column_space_basis();
        loop {
            let mut grown = vec![basis.clone()];
            for &g in gens {
                grown.push(self.0.right[g].mul(&basis));
            }
            let refs: Vec<&Mat> = grown.iter().collect();
            let next = Mat::hstack(f, d, &refs).column_space_basis();
            if next.cols() == basis.cols() {
                return basis;
            }
            basis = next;
        }
    }
}

fn combine(field: PrimeField, d: usize, mats: &[Mat], coeffs: &[u32]) -> Mat {
    let mut out = Mat::zeros(field, d, d);
    for (m, &c) in mats.iter().zip(coeffs) {
        out.add_scaled(c, m);
    }
    out
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_structure(other)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {:?}, basis {:?})", self.dim(), self.field(), self.labels())
    }
}

/// A unital algebra homomorphism, stored as a `dim(target) x dim(source)` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    matrix: Mat,
}

impl AlgebraMorphism {
    /// Checks unit preservation and multiplicativity on all basis pairs.
    pub fn new(source: Algebra, target: Algebra, matrix: Mat) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().p(), target.field().p()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::NotMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::NotMorphism("unit is not preserved".into()));
        }
        let images: Vec<Vec<u32>> = matrix.columns();
        for i in 0..source.dim() {
            let li = target.left_mul_by(&images[i]);
            for j in 0..source.dim() {
                let lhs = matrix.mul_vec(source.product_row(i, j));
                let rhs = li.mul_vec(&images[j]);
                if lhs != rhs {
                    return Err(Error::NotMorphism(format!(
                        "f(e_{i} e_{j}) != f(e_{i}) f(e_{j})"
                    )));
                }
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(x)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .matrix
            .inverse()
            .ok_or_else(|| Error::NotMorphism("not invertible".into()))?;
        AlgebraMorphism::new(self.target.clone(), self.source.clone(), inv)
    }

    pub fn compose(&self, after: &AlgebraMorphism) -> Result<Self> {
        if after.source != self.target {
            return Err(Error::AlgebraMismatch("composition of morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: after.matrix.mul(&self.matrix),
        })
    }
}

/// `A^op`: same basis, `e_i * e_j := e_j e_i`.
pub fn opposite(a: &Algebra) -> Algebra {
    let d = a.dim();
    let mut table = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(a.product_row(j, i));
        }
    }
    Algebra::from_table(a.field(), a.labels().to_vec(), table, a.unit().to_vec(), None, false)
        .expect("opposite of an algebra is an algebra")
}

/// `A ⊗_k B` with the first factor major in the basis order.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    tensor_product_tagged(a, b, None)
}

fn tensor_product_tagged(a: &Algebra, b: &Algebra, env: Option<Algebra>) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut table = vec![0u32; d * d * d];
    for i in 0..da {
        for k in 0..da {
            let ac = a.product_row(i, k);
            for j in 0..db {
                for l in 0..db {
                    let bc = b.product_row(j, l);
                    let row = ((i * db + j) * d + (k * db + l)) * d;
                    for (m, &x) in ac.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (n, &y) in bc.iter().enumerate() {
                            if y != 0 {
                                table[row + m * db + n] = f.mul(x, y);
                            }
                        }
                    }
                }
            }
        }
    }
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}⊗{y}")))
        .collect();
    let unit = Mat::column_vector(f, a.unit())
        .kron(&Mat::column_vector(f, b.unit()))
        .into_data();
    Algebra::from_table(f, labels, table, unit, env, false)
}

/// `A^e = A ⊗_k A^op`; bimodules over `A` are left modules over it.
pub fn enveloping(a: &Algebra) -> Algebra {
    tensor_product_tagged(a, &opposite(a), Some(a.clone()))
        .expect("factors share the field")
}

/// `x ↦ x ⊗ 1`, an algebra map `A → A^e`.
pub fn left_inclusion(a: &Algebra) -> AlgebraMorphism {
    inclusion(a, enveloping(a), true)
}

/// `y ↦ 1 ⊗ y`, an algebra map `A^op → A^e`.
pub fn right_inclusion(a: &Algebra) -> AlgebraMorphism {
    inclusion(a, enveloping(a), false)
}

fn inclusion(a: &Algebra, env: Algebra, left: bool) -> AlgebraMorphism {
    let f = a.field();
    let d = a.dim();
    let mut m = Mat::zeros(f, d * d, d);
    for x in 0..d {
        for (u, &c) in a.unit().iter().enumerate() {
            if c != 0 {
                let row = if left { x * d + u } else { u * d + x };
                m.set(row, x, c);
            }
        }
    }
    let source = if left { a.clone() } else { opposite(a) };
    AlgebraMorphism::new(source, env, m).expect("factor inclusions are algebra maps")
}

/// The center `Z(A)` together with its inclusion into `A`.
///
/// Computed as the common kernel of `x ↦ e_i x - x e_i`; the basis of `Z(A)`
/// is the reduced echelon basis of that kernel, so the result is canonical.
/// For finite-dimensional `A` the module-finiteness of `A` over `Z(A)` holds
/// automatically and is not checked.
pub fn center(a: &Algebra) -> (Algebra, AlgebraMorphism) {
    let f = a.field();
    let d = a.dim();
    let blocks: Vec<Mat> = (0..d).map(|i| a.left_mul(i).sub(a.right_mul(i))).collect();
    let refs: Vec<&Mat> = blocks.iter().collect();
    let system = Mat::vstack(f, d, &refs);
    let (rows, _) = system.kernel_basis().transpose().rref();
    let r = system.kernel_basis().cols();
    let basis = rows.block(0, 0, r, d).transpose(); // d x r, columns z_a
    let mut mul = Vec::new();
    let products: Vec<Vec<u32>> = (0..r)
        .flat_map(|x| (0..r).map(move |y| (x, y)))
        .map(|(x, y)| {
            a.mul_vec(&basis.column(x), &basis.column(y))
                .expect("center elements have dimension d")
        })
        .collect();
    let prod_mat = Mat::from_columns(f, d, &products);
    let coords = basis
        .solve_many(&prod_mat)
        .expect("shapes agree")
        .expect("center is closed under multiplication");
    for x in 0..r {
        for y in 0..r {
            for k in 0..r {
                let c = coords.get(k, x * r + y);
                if c != 0 {
                    mul.push((x, y, k, c));
                }
            }
        }
    }
    let unit = basis
        .solve(a.unit())
        .expect("shapes agree")
        .expect("unit is central");
    let labels = (0..r).map(|i| format!("z{i}")).collect();
    let z = Algebra::new(f, labels, &mul, unit).expect("center is an algebra");
    let incl = AlgebraMorphism::new(z.clone(), a.clone(), basis).expect("inclusion of the center");
    (z, incl)
}

/// The involution `x ⊗ y ↦ y ⊗ x` as an isomorphism `A^e → (A^e)^op`.
pub fn swap_involution(env: &Algebra) -> Result<AlgebraMorphism> {
    let a = env.enveloping_factor().ok_or(Error::NotEnveloping)?;
    let f = env.field();
    let d = a.dim();
    let mut m = Mat::zeros(f, d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(j * d + i, i * d + j, 1);
        }
    }
    AlgebraMorphism::new(env.clone(), opposite(env), m)
}

/// Named algebras of the test corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `k`
    Field,
    /// `k × ... × k` with `n` factors; basis: the primitive idempotents.
    ProductOfFields(usize),
    /// `k[x]/(x^n)`; basis `1, x, ..., x^(n-1)`.
    DualNumbers(usize),
    /// `M_n(k)`; basis `E_ij`, row-major.
    Matrix(usize),
    /// Upper triangular `n x n` matrices; basis `E_ij` with `i <= j`, row-major.
    UpperTriangular(usize),
    /// `k[G]` from a Cayley table `table[g][h] = gh`.
    GroupAlgebra(Vec<Vec<usize>>),
    /// Exterior algebra on two generators; basis `1, x, y, xy`.
    Exterior2,
}

impl Builtin {
    /// Parses `name` or `name(params)`, e.g. `matrix(2)`, `group_algebra(C2)`,
    /// `group_algebra(0,1;1,0)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, params) = match spec.find('(') {
            Some(open) => {
                let close = spec
                    .rfind(')')
                    .filter(|&c| c > open && c == spec.len() - 1)
                    .ok_or_else(|| Error::InvalidParams(format!("unbalanced parentheses in `{spec}`")))?;
                (&spec[..open], Some(spec[open + 1..close].trim()))
            }
            None => (spec, None),
        };
        let count = |what: &str| -> Result<usize> {
            params
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::InvalidParams(format!("{what} needs a positive integer parameter")))
        };
        match name {
            "field" => Ok(Builtin::Field),
            "product_of_fields" => Ok(Builtin::ProductOfFields(count(name)?)),
            "dual_numbers" => Ok(Builtin::DualNumbers(count(name)?)),
            "matrix" => Ok(Builtin::Matrix(count(name)?)),
            "upper_triangular" => Ok(Builtin::UpperTriangular(count(name)?)),
            "exterior2" => Ok(Builtin::Exterior2),
            "group_algebra" => {
                let p = params.ok_or_else(|| Error::InvalidParams("group_algebra needs a group".into()))?;
                Ok(Builtin::GroupAlgebra(parse_group(p)?))
            }
            _ => Err(Error::UnknownBuiltin(spec.to_string())),
        }
    }

    pub fn build(&self, p: u64) -> Result<Algebra> {
        let f = PrimeField::new(p)?;
        match self {
            Builtin::Field => Algebra::new(f, vec!["1".into()], &[(0, 0, 0, 1)], vec![1]),
            Builtin::ProductOfFields(n) => {
                let mul: Vec<_> = (0..*n).map(|i| (i, i, i, 1)).collect();
                let labels = (0..*n).map(|i| format!("e{i}")).collect();
                Algebra::new(f, labels, &mul, vec![1; *n])
            }
            Builtin::DualNumbers(n) => {
                let mut mul = Vec::new();
                for i in 0..*n {
                    for j in 0..*n - i {
                        mul.push((i, j, i + j, 1));
                    }
                }
                let labels = (0..*n)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    })
                    .collect();
                let mut unit = vec![0; *n];
                unit[0] = 1;
                Algebra::new(f, labels, &mul, unit)
            }
            Builtin::Matrix(n) => {
                let idx: Vec<(usize, usize)> =
                    (0..*n).flat_map(|i| (0..*n).map(move |j| (i, j))).collect();
                matrix_units(f, &idx)
            }
            Builtin::UpperTriangular(n) => {
                let idx: Vec<(usize, usize)> =
                    (0..*n).flat_map(|i| (i..*n).map(move |j| (i, j))).collect();
                matrix_units(f, &idx)
            }
            Builtin::GroupAlgebra(table) => group_algebra(f, table),
            Builtin::Exterior2 => {
                // 0:1 1:x 2:y 3:xy
                let m1 = f.neg(1);
                let mul = [
                    (0, 0, 0, 1),
                    (0, 1, 1, 1),
                    (0, 2, 2, 1),
                    (0, 3, 3, 1),
                    (1, 0, 1, 1),
                    (2, 0, 2, 1),
                    (3, 0, 3, 1),
                    (1, 2, 3, 1),
                    (2, 1, 3, m1),
                ];
                let labels = ["1", "x", "y", "xy"].map(String::from).to_vec();
                Algebra::new(f, labels, &mul, vec![1, 0, 0, 0])
            }
        }
    }
}

/// Builds a named algebra, e.g. `builtin("dual_numbers(2)", 101)`.
pub fn builtin(spec: &str, p: u64) -> Result<Algebra> {
    Builtin::parse(spec)?.build(p)
}

/// Cayley table of the cyclic group of order `n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

fn parse_group(p: &str) -> Result<Vec<Vec<usize>>> {
    if let Some(n) = p.strip_prefix('C').or_else(|| p.strip_prefix("cyclic:")) {
        let n: usize = n
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidParams(format!("bad cyclic group `{p}`")))?;
        return Ok(cyclic_group_table(n));
    }
    p.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidParams(format!("bad Cayley table entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn matrix_units(f: PrimeField, idx: &[(usize, usize)]) -> Result<Algebra> {
    let pos = |i: usize, j: usize| idx.iter().position(|&e| e == (i, j));
    let mut mul = Vec::new();
    for (a, &(i, j)) in idx.iter().enumerate() {
        for (b, &(k, l)) in idx.iter().enumerate() {
            if j == k {
                if let Some(c) = pos(i, l) {
                    mul.push((a, b, c, 1));
                }
            }
        }
    }
    let labels = idx.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let unit = idx.iter().map(|&(i, j)| u32::from(i == j)).collect();
    Algebra::new(f, labels, &mul, unit)
}

fn group_algebra(f: PrimeField, table: &[Vec<usize>]) -> Result<Algebra> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidParams("Cayley table must be square with entries < order".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::InvalidParams("Cayley table has no identity".into()))?;
    for row in table {
        let mut seen = vec![false; n];
        for &x in row {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParams("Cayley table row is not a permutation".into()));
            }
        }
    }
    let mul: Vec<_> = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| (g, h, table[g][h], 1))
        .collect();
    let labels = (0..n)
        .map(|g| if g == identity { "e".to_string() } else { format!("g{g}") })
        .collect();
    let mut unit = vec![0; n];
    unit[identity] = 1;
    Algebra::new(f, labels, &mul, unit)
}
