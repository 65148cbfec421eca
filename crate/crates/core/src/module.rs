//! Finite-dimensional modules given by action matrices.
//!
//! Everything is a left module over some algebra. Right modules over `B` are
//! left modules over `B^op` ([`RightModule`]); bimodules over `A` are left
//! modules over `A^e = A ⊗ A^op` ([`Bimodule`]), where `a ⊗ b` acts by
//! `v ↦ a v b`.
//!
//! Vectorization of linear maps `F: k^m → k^n` is row-major: entry `F[r][c]`
//! sits at index `r * m + c`. Tensor spaces `V ⊗ W` use index `i * dim W + j`.

use std::fmt;

use crate::algebra::{center, enveloping, left_inclusion, opposite, Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::exactla::{Mat, PrimeField, Subquotient};

#[derive(Clone)]
pub struct LeftModule {
    algebra: Algebra,
    dim: usize,
    action: Vec<Mat>,
}

impl LeftModule {
    /// Checks shapes, that the unit acts as the identity and that the action
    /// is multiplicative. Multiplicativity is tested as
    /// `ρ(g)ρ(e_j) = ρ(g e_j)` for algebra generators `g`, which together with
    /// the unit law implies it for all pairs.
    pub fn new(algebra: Algebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "number of action matrices",
                expected: algebra.dim(),
                found: action.len(),
            });
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: "action matrix size",
                    expected: dim,
                    found: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(m.field().p(), algebra.field().p()));
            }
        }
        let module = LeftModule {
            algebra,
            dim,
            action,
        };
        if !module.act_by(module.algebra.unit()).is_identity() {
            return Err(Error::ActionUnit);
        }
        for &i in module.algebra.generators() {
            for j in 0..module.algebra.dim() {
                let lhs = module.action[i].mul(&module.action[j]);
                let rhs = module.act_by(module.algebra.product_row(i, j));
                if lhs != rhs {
                    return Err(Error::ActionMultiplicativity { i, j });
                }
            }
        }
        Ok(module)
    }

    /// Skips the module axioms; for constructions that preserve them.
    pub(crate) fn new_unchecked(algebra: Algebra, dim: usize, action: Vec<Mat>) -> Self {
        debug_assert_eq!(action.len(), algebra.dim());
        LeftModule {
            algebra,
            dim,
            action,
        }
    }

    /// `k^dim` over the ground field algebra.
    pub fn trivial(field: PrimeField, dim: usize) -> Self {
        LeftModule::new_unchecked(Algebra::ground(field), dim, vec![Mat::identity(field, dim)])
    }

    pub fn zero(algebra: &Algebra) -> Self {
        let f = algebra.field();
        LeftModule::new_unchecked(algebra.clone(), 0, vec![Mat::zeros(f, 0, 0); algebra.dim()])
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Action of the basis element `e_i`.
    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action of an arbitrary algebra element.
    pub fn act_by(&self, x: &[u32]) -> Mat {
        let mut out = Mat::zeros(self.field(), self.dim, self.dim);
        for (m, &c) in self.action.iter().zip(x) {
            out.add_scaled(c, m);
        }
        out
    }

    /// The same action data over an algebra with identical structure constants.
    pub fn reinterpret(&self, algebra: &Algebra) -> Result<Self> {
        if !self.algebra.same_structure(algebra) {
            return Err(Error::AlgebraMismatch(
                "reinterpretation needs identical structure constants".into(),
            ));
        }
        Ok(LeftModule::new_unchecked(
            algebra.clone(),
            self.dim,
            self.action.clone(),
        ))
    }

    /// Whether `op` commutes with the action of every generator.
    pub fn commutes_with(&self, op: &Mat) -> bool {
        self.algebra
            .generators()
            .iter()
            .all(|&g| self.action[g].mul(op) == op.mul(&self.action[g]))
    }

    /// The submodule or subspace action restricted to the column span of
    /// `basis`, in the coordinates of that basis. `None` if not invariant.
    pub fn restrict_to_subspace(&self, basis: &Mat) -> Option<LeftModule> {
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            action.push(basis.solve_many(&m.mul(basis)).ok()??);
        }
        Some(LeftModule::new_unchecked(
            self.algebra.clone(),
            basis.cols(),
            action,
        ))
    }

    /// The induced action on a subquotient of the underlying space.
    pub fn on_subquotient(&self, sq: &Subquotient) -> Result<LeftModule> {
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            action.push(sq.induced(m).ok_or_else(|| {
                Error::NotIntertwiner("residual action does not preserve the relations".into())
            })?);
        }
        Ok(LeftModule::new_unchecked(
            self.algebra.clone(),
            sq.dim(),
            action,
        ))
    }

    /// Same action, matrices conjugated by an invertible change of basis `p`
    /// (new coordinates = `p^{-1}` old).
    pub fn change_basis(&self, p: &Mat) -> Option<LeftModule> {
        let inv = p.inverse()?;
        let action = self.action.iter().map(|m| inv.mul(&m.mul(p))).collect();
        Some(LeftModule::new_unchecked(self.algebra.clone(), self.dim, action))
    }
}

impl PartialEq for LeftModule {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for LeftModule {}

impl fmt::Debug for LeftModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LeftModule(dim {} over algebra of dim {})",
            self.dim,
            self.algebra.dim()
        )
    }
}

/// A right module over `B`, stored as a left module over `B^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule(LeftModule);

impl RightModule {
    /// Wraps a left module over `B^op`.
    pub fn from_opposite(m: LeftModule) -> Self {
        RightModule(m)
    }

    /// `action[i]` is `v ↦ v · e_i`, for `B` = `base`.
    pub fn new(base: &Algebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        Ok(RightModule(LeftModule::new(opposite(base), dim, action)?))
    }

    pub fn as_left(&self) -> &LeftModule {
        &self.0
    }

    pub fn into_left(self) -> LeftModule {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn action(&self, i: usize) -> &Mat {
        self.0.action(i)
    }
}

/// A bimodule over `A`, stored as a left module over `enveloping(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule(LeftModule);

impl Bimodule {
    pub fn from_left(m: LeftModule) -> Result<Self> {
        if m.algebra().enveloping_factor().is_none() {
            return Err(Error::NotEnveloping);
        }
        Ok(Bimodule(m))
    }

    /// Action matrices given per basis element `e_i ⊗ e_j` of `A^e`, index `i * d + j`.
    pub fn new(base: &Algebra, dim: usize, action: Vec<Mat>) -> Result<Self> {
        Ok(Bimodule(LeftModule::new(enveloping(base), dim, action)?))
    }

    /// The algebra `A` (not `A^e`).
    pub fn base(&self) -> &Algebra {
        self.0.algebra().enveloping_factor().expect("checked at construction")
    }

    pub fn as_left(&self) -> &LeftModule {
        &self.0
    }

    pub fn into_left(self) -> LeftModule {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Action of `a ⊗ 1`, i.e. left multiplication by `a`.
    pub fn left_action(&self, a: &[u32]) -> Mat {
        let incl = left_inclusion(self.base());
        self.0.act_by(&incl.apply(a))
    }

    /// Action of `1 ⊗ b`, i.e. right multiplication by `b`.
    pub fn right_action(&self, b: &[u32]) -> Mat {
        let d = self.base().dim();
        let unit = self.base().unit();
        let mut x = vec![0; d * d];
        for (u, &c) in unit.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                x[u * d + j] = self.0.field().mul(c, y);
            }
        }
        self.0.act_by(&x)
    }

    /// Restriction to the left `A`-module structure.
    pub fn left_module(&self) -> LeftModule {
        restrict(&self.0, &left_inclusion(self.base())).expect("inclusion targets A^e")
    }
}

/// A second action on a module's underlying space, commuting with the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingAction {
    action: LeftModule,
}

impl CommutingAction {
    pub fn new(on: &LeftModule, action: LeftModule) -> Result<Self> {
        if action.dim() != on.dim() {
            return Err(Error::DimensionMismatch {
                context: "commuting action",
                expected: on.dim(),
                found: action.dim(),
            });
        }
        for (c, m) in action.actions().iter().enumerate() {
            if !on.commutes_with(m) {
                return Err(Error::NotCommuting(format!("basis element {c}")));
            }
        }
        Ok(CommutingAction { action })
    }

    pub fn algebra(&self) -> &Algebra {
        self.action.algebra()
    }

    pub fn module(&self) -> &LeftModule {
        &self.action
    }

    pub fn into_module(self) -> LeftModule {
        self.action
    }
}

/// A `B`-linear map, stored as a `dim(target) x dim(source)` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMorphism {
    source: LeftModule,
    target: LeftModule,
    matrix: Mat,
}

impl ModuleMorphism {
    pub fn new(source: LeftModule, target: LeftModule, matrix: Mat) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch("morphism between modules over different algebras".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::NotIntertwiner(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for &g in source.algebra().generators() {
            if matrix.mul(source.action(g)) != target.action(g).mul(&matrix) {
                return Err(Error::NotIntertwiner(format!("fails for generator e_{g}")));
            }
        }
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &LeftModule {
        &self.source
    }

    pub fn target(&self) -> &LeftModule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }
}

/// `A` as a left module over itself.
pub fn regular_left(a: &Algebra) -> LeftModule {
    LeftModule::new_unchecked(a.clone(), a.dim(), (0..a.dim()).map(|i| a.left_mul(i).clone()).collect())
}

/// `A` as a right module over itself.
pub fn regular_right(a: &Algebra) -> RightModule {
    RightModule(LeftModule::new_unchecked(
        opposite(a),
        a.dim(),
        (0..a.dim()).map(|i| a.right_mul(i).clone()).collect(),
    ))
}

/// `A` as a bimodule: `x ⊗ y` acts by `v ↦ x v y`.
pub fn regular_bimodule(a: &Algebra) -> Bimodule {
    let d = a.dim();
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            action.push(a.left_mul(i).mul(a.right_mul(j)));
        }
    }
    Bimodule(LeftModule::new_unchecked(enveloping(a), d, action))
}

/// `B^g`, generator `i` spanning coordinates `i*d .. (i+1)*d`.
pub fn free_module(b: &Algebra, g: usize) -> LeftModule {
    let action = (0..b.dim()).map(|i| b.left_mul(i).direct_power(g)).collect();
    LeftModule::new_unchecked(b.clone(), g * b.dim(), action)
}

pub fn direct_sum(ms: &[&LeftModule]) -> Result<LeftModule> {
    let first = ms.first().ok_or_else(|| Error::InvalidParams("empty direct sum".into()))?;
    let a = first.algebra().clone();
    if ms.iter().any(|m| m.algebra() != &a) {
        return Err(Error::AlgebraMismatch("direct sum".into()));
    }
    let action = (0..a.dim())
        .map(|i| {
            let blocks: Vec<&Mat> = ms.iter().map(|m| m.action(i)).collect();
            Mat::block_diag(a.field(), &blocks)
        })
        .collect();
    let dim = ms.iter().map(|m| m.dim()).sum();
    Ok(LeftModule::new_unchecked(a, dim, action))
}

/// The dual space with transposed action, a left module over `B^op`.
pub fn k_dual(m: &LeftModule) -> LeftModule {
    LeftModule::new_unchecked(
        opposite(m.algebra()),
        m.dim(),
        m.actions().iter().map(Mat::transpose).collect(),
    )
}

/// `Hom_k(m, n)` with `((a ⊗ b) f)(v) = a f(b v)`.
pub fn hom_k(m: &LeftModule, n: &LeftModule) -> Result<Bimodule> {
    same_algebra(m.algebra(), n.algebra())?;
    let a = m.algebra();
    let d = a.dim();
    let mt: Vec<Mat> = m.actions().iter().map(Mat::transpose).collect();
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for mtj in &mt {
            action.push(n.action(i).kron(mtj));
        }
    }
    Ok(Bimodule(LeftModule::new_unchecked(
        enveloping(a),
        m.dim() * n.dim(),
        action,
    )))
}

/// `m ⊗_k n` with `(a ⊗ b)(v ⊗ w) = a v ⊗ w b`.
pub fn tensor_k(m: &LeftModule, n: &RightModule) -> Result<Bimodule> {
    let a = m.algebra();
    same_algebra(&opposite(a), n.as_left().algebra())?;
    let d = a.dim();
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            action.push(m.action(i).kron(n.action(j)));
        }
    }
    Ok(Bimodule(LeftModule::new_unchecked(
        enveloping(a),
        m.dim() * n.dim(),
        action,
    )))
}

/// The bimodule over `A^op` with `(a ⊗ b)` acting as `(b ⊗ a)` did on `m`.
pub fn opposite_bimodule(m: &Bimodule) -> Bimodule {
    let a = m.base();
    let d = a.dim();
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            action.push(m.0.action(j * d + i).clone());
        }
    }
    Bimodule(LeftModule::new_unchecked(
        enveloping(&opposite(a)),
        m.dim(),
        action,
    ))
}

/// Restriction of scalars along `f: B → C`.
pub fn restrict(m: &LeftModule, f: &AlgebraMorphism) -> Result<LeftModule> {
    if f.target() != m.algebra() {
        return Err(Error::AlgebraMismatch("restriction target is not the module's algebra".into()));
    }
    let action = f.matrix().columns().iter().map(|x| m.act_by(x)).collect();
    Ok(LeftModule::new_unchecked(f.source().clone(), m.dim(), action))
}

/// The `Z(A)`-action `z ↦ (z ⊗ 1)` on a bimodule.
pub fn central_structure(m: &Bimodule) -> Result<CommutingAction> {
    let (_, incl) = center(m.base());
    let to_env = incl.compose(&left_inclusion(m.base()))?;
    let action = restrict(&m.0, &to_env)?;
    CommutingAction::new(&m.0, action)
}

/// The action on `m` of `Z(A)` through the inclusion `Z(A) ⊆ A`.
pub fn central_action_on_left(m: &LeftModule) -> Result<CommutingAction> {
    let (_, incl) = center(m.algebra());
    CommutingAction::new(m, restrict(m, &incl)?)
}

fn same_algebra(a: &Algebra, b: &Algebra) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    if a != b {
        return Err(Error::AlgebraMismatch("modules over different algebras".into()));
    }
    Ok(())
}

/// Where a residual action lives in a two-factor construction.
#[derive(Clone, Debug)]
pub enum Residual<'a> {
    None,
    /// Commuting action on the first factor.
    First(&'a LeftModule),
    /// Commuting action on the second factor.
    Second(&'a LeftModule),
}

/// A subquotient space carrying the residual action induced on it.
#[derive(Clone, Debug)]
pub struct ResidualSpace {
    pub space: Subquotient,
    pub module: LeftModule,
}

impl ResidualSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `m ⊗_B n` for a right module `m` and a left module `n`, as the cokernel
/// of `(v b) ⊗ w - v ⊗ (b w)` on `m ⊗_k n`.
pub fn tensor_over(m: &RightModule, n: &LeftModule, residual: Residual<'_>) -> Result<ResidualSpace> {
    let b = n.algebra();
    same_algebra(&opposite(b), m.as_left().algebra())?;
    let f = b.field();
    let (p, q) = (m.dim(), n.dim());
    let ip = Mat::identity(f, p);
    let iq = Mat::identity(f, q);
    // relations from generators of B span all relations
    let rels: Vec<Mat> = b
        .generators()
        .iter()
        .map(|&g| m.action(g).kron(&iq).sub(&ip.kron(n.action(g))))
        .collect();
    let refs: Vec<&Mat> = rels.iter().collect();
    let relations = Mat::hstack(f, p * q, &refs);
    let space = Subquotient::cokernel(&relations);
    let module = residual_on_tensor(f, p, q, residual)?;
    let module = module.on_subquotient(&space)?;
    Ok(ResidualSpace { space, module })
}

fn residual_on_tensor(f: PrimeField, p: usize, q: usize, residual: Residual<'_>) -> Result<LeftModule> {
    Ok(match residual {
        Residual::None => LeftModule::trivial(f, p * q),
        Residual::First(r) => {
            check_dim(r, p)?;
            let iq = Mat::identity(f, q);
            let action = r.actions().iter().map(|x| x.kron(&iq)).collect();
            LeftModule::new_unchecked(r.algebra().clone(), p * q, action)
        }
        Residual::Second(r) => {
            check_dim(r, q)?;
            let ip = Mat::identity(f, p);
            let action = r.actions().iter().map(|x| ip.kron(x)).collect();
            LeftModule::new_unchecked(r.algebra().clone(), p * q, action)
        }
    })
}

fn check_dim(r: &LeftModule, expected: usize) -> Result<()> {
    if r.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "residual action",
            expected,
            found: r.dim(),
        });
    }
    Ok(())
}

/// `Hom_B(m, n)` with its basis of row-major vectorized maps (columns of
/// `basis`). A residual on `n` acts by post-composition; a residual over `C`
/// on `m` acts by pre-composition, making the result a module over `C^op`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Mat,
    pub source_dim: usize,
    pub target_dim: usize,
    pub module: LeftModule,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The `i`-th basis map as a `target_dim x source_dim` matrix.
    pub fn map(&self, i: usize) -> Mat {
        Mat::new(
            self.basis.field(),
            self.target_dim,
            self.source_dim,
            self.basis.column(i),
        )
        .expect("basis column has the right length")
    }
}

pub fn hom_over(m: &LeftModule, n: &LeftModule, residual: Residual<'_>) -> Result<HomSpace> {
    same_algebra(m.algebra(), n.algebra())?;
    let b = m.algebra();
    let f = b.field();
    let (p, q) = (m.dim(), n.dim());
    let ip = Mat::identity(f, p);
    let iq = Mat::identity(f, q);
    // vec(N_g F) - vec(F M_g) = (N_g ⊗ I - I ⊗ M_g^T) vec F
    let eqs: Vec<Mat> = b
        .generators()
        .iter()
        .map(|&g| n.action(g).kron(&ip).sub(&iq.kron(&m.action(g).transpose())))
        .collect();
    let refs: Vec<&Mat> = eqs.iter().collect();
    let system = if refs.is_empty() {
        Mat::zeros(f, 0, p * q)
    } else {
        Mat::vstack(f, p * q, &refs)
    };
    let basis = system.kernel_basis();
    let ambient = match residual {
        Residual::None => LeftModule::trivial(f, p * q),
        Residual::First(r) => {
            check_dim(r, p)?;
            let action = r.actions().iter().map(|x| iq.kron(&x.transpose())).collect();
            LeftModule::new_unchecked(opposite(r.algebra()), p * q, action)
        }
        Residual::Second(r) => {
            check_dim(r, q)?;
            let action = r.actions().iter().map(|x| x.kron(&ip)).collect();
            LeftModule::new_unchecked(r.algebra().clone(), p * q, action)
        }
    };
    let module = ambient.restrict_to_subspace(&basis).ok_or_else(|| {
        Error::NotCommuting("residual action does not preserve B-linear maps".into())
    })?;
    Ok(HomSpace {
        basis,
        source_dim: p,
        target_dim: q,
        module,
    })
}
