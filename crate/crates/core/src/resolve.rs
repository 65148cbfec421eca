//! Chain complexes, free resolutions, and Ext/Tor.
//!
//! A free module `B^g` has coordinates `(i, b) ↦ i * dim(B) + b` (generator
//! `i`, basis element `e_b`). Resolutions are stored compactly: the
//! differential `D_n` is a `(g_{n-1} dim B) x g_n` matrix whose column `j`
//! is the image of generator `j` of `P_n`.
//!
//! Sign convention: the Hom differential is plain precomposition,
//! `(δf)(x) = f(d x)`, and the tensor differential is `1 ⊗ d`. Coefficients
//! sit in degree 0, so no Koszul signs arise and `δ∘δ = 0` follows from
//! `d∘d = 0`. Every [`Complex`] checks `d∘d = 0` when built.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{enveloping, left_inclusion, opposite, right_inclusion, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{Mat, PrimeField, Subquotient};
use crate::module::{
    free_module, hom_over, regular_bimodule, LeftModule, ModuleMorphism, Residual, ResidualSpace,
    RightModule,
};

/// Default bound on `dim(A)^(L+2)` for the bar resolution.
pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

/// The bar-resolution size cap, overridable through `HHLAB_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("HHLAB_SIZE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

const COVER_SEED: u64 = 0x6868_6c61_6200_0000;

/// A bounded complex with homological indexing, `d_n: C_n → C_{n-1}`.
///
/// Terms are modules over a residual algebra `C` (the ground field when
/// there is none) and differentials are `C`-linear. Cochain complexes are
/// stored with `C^n` in degree `-n`.
#[derive(Clone, Debug)]
pub struct Complex {
    lo: i64,
    terms: Vec<LeftModule>,
    diffs: Vec<Mat>,
}

impl Complex {
    /// `terms[t]` sits in degree `lo + t`; `diffs[t]` is `d_{lo+t+1}`.
    pub fn new(lo: i64, terms: Vec<LeftModule>, diffs: Vec<Mat>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidParams(
                "a complex needs one differential between consecutive terms".into(),
            ));
        }
        let alg = terms[0].algebra().clone();
        for (t, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&terms[t + 1], &terms[t]);
            if d.rows() != tgt.dim() || d.cols() != src.dim() {
                return Err(Error::DimensionMismatch {
                    context: "differential shape",
                    expected: tgt.dim() * src.dim(),
                    found: d.rows() * d.cols(),
                });
            }
            if src.algebra() != &alg || tgt.algebra() != &alg {
                return Err(Error::AlgebraMismatch("terms over different residual algebras".into()));
            }
            for &g in alg.generators() {
                if d.mul(src.action(g)) != tgt.action(g).mul(d) {
                    return Err(Error::NotIntertwiner(format!(
                        "differential d_{} is not linear over the residual algebra",
                        lo + t as i64 + 1
                    )));
                }
            }
        }
        for t in 1..diffs.len() {
            if !diffs[t - 1].mul(&diffs[t]).is_zero() {
                return Err(Error::NotAComplex(lo + t as i64 + 1));
            }
        }
        Ok(Complex { lo, terms, diffs })
    }

    /// A cochain complex `C^0 → C^1 → ...` with `codiffs[i]: C^i → C^{i+1}`.
    pub fn cochain(terms: Vec<LeftModule>, codiffs: Vec<Mat>) -> Result<Self> {
        let n = terms.len() as i64 - 1;
        let mut terms = terms;
        let mut codiffs = codiffs;
        terms.reverse();
        codiffs.reverse();
        Complex::new(-n, terms, codiffs)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, n: i64) -> Option<&LeftModule> {
        usize::try_from(n - self.lo).ok().and_then(|t| self.terms.get(t))
    }

    /// `d_n: C_n → C_{n-1}`, if both ends lie in the window.
    pub fn differential(&self, n: i64) -> Option<&Mat> {
        if n <= self.lo {
            return None;
        }
        self.diffs.get((n - self.lo - 1) as usize)
    }

    pub fn residual_algebra(&self) -> &Algebra {
        self.terms[0].algebra()
    }

    fn window_error(&self, n: i64) -> Error {
        Error::DegreeOutOfRange {
            degree: n,
            lo: self.lo,
            hi: self.hi(),
        }
    }
}

/// `ker d_n / im d_{n+1}` with the induced residual action.
///
/// At the ends of the window the missing differentials are zero.
pub fn homology(c: &Complex, n: i64) -> Result<ResidualSpace> {
    let term = c.term(n).ok_or_else(|| c.window_error(n))?;
    let f = term.field();
    let dim = term.dim();
    let kernel = match c.differential(n) {
        Some(d) => d.kernel_basis(),
        None => Mat::identity(f, dim),
    };
    let image = match c.differential(n + 1) {
        Some(d) => d.clone(),
        None => Mat::zeros(f, dim, 0),
    };
    let space = Subquotient::new(&kernel, &image).ok_or(Error::NotAComplex(n + 1))?;
    let module = term.on_subquotient(&space)?;
    Ok(ResidualSpace { space, module })
}

/// `H^n` of a cochain complex stored by [`Complex::cochain`].
pub fn cohomology(c: &Complex, n: i64) -> Result<ResidualSpace> {
    homology(c, -n)
}

/// Homology in a range of degrees together with the range in which it is
/// known to compute the intended derived functor.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pieces: Vec<ResidualSpace>,
    validity_bound: usize,
}

impl GradedModule {
    pub fn new(pieces: Vec<ResidualSpace>, validity_bound: usize) -> Self {
        GradedModule {
            pieces,
            validity_bound,
        }
    }

    pub fn validity_bound(&self) -> usize {
        self.validity_bound
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(ResidualSpace::dim).collect()
    }

    pub fn degree(&self, n: usize) -> Result<&ResidualSpace> {
        if n > self.validity_bound || n >= self.pieces.len() {
            return Err(Error::ValidityBound {
                requested: n,
                bound: self.validity_bound.min(self.pieces.len().saturating_sub(1)),
            });
        }
        Ok(&self.pieces[n])
    }

    pub fn pieces(&self) -> &[ResidualSpace] {
        &self.pieces
    }
}

/// A free resolution `... → P_1 → P_0 → M → 0` in compact form.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: LeftModule,
    ranks: Vec<usize>,
    aug: Mat,
    diffs: Vec<Mat>,
    /// Basis of `ker d_L` inside `P_L`; `None` when the resolution cannot be extended.
    frontier: Option<Mat>,
}

impl Resolution {
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn algebra(&self) -> &Algebra {
        self.module.algebra()
    }

    /// Index of the last computed term.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Number of generators of `P_n`.
    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Images in `M` of the generators of `P_0`.
    pub fn augmentation(&self) -> &Mat {
        &self.aug
    }

    /// Compact `D_n` for `n >= 1`.
    pub fn differential(&self, n: usize) -> &Mat {
        &self.diffs[n - 1]
    }

    /// Whether a zero kernel was reached, so all later terms vanish.
    pub fn is_finite(&self) -> bool {
        self.frontier.as_ref().is_some_and(|k| k.cols() == 0)
    }

    /// The augmentation `P_0 → M` as a k-linear matrix.
    pub fn augmentation_full(&self) -> Mat {
        let b = self.algebra();
        let (d, f) = (b.dim(), b.field());
        let g = self.ranks[0];
        let mut full = Mat::zeros(f, self.module.dim(), g * d);
        for j in 0..g {
            let m = self.aug.column(j);
            for e in 0..d {
                let v = self.module.action(e).mul_vec(&m);
                for (r, x) in v.into_iter().enumerate() {
                    full.set(r, j * d + e, x);
                }
            }
        }
        full
    }

    /// `d_n: P_n → P_{n-1}` as a k-linear matrix.
    pub fn differential_full(&self, n: usize) -> Mat {
        expand_compact(self.algebra(), &self.diffs[n - 1], self.ranks[n])
    }

    /// Extends the resolution to length `len` by covering kernels.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        while self.length() < len {
            let frontier = self.frontier.take().ok_or_else(|| {
                Error::InvalidParams("this resolution cannot be extended".into())
            })?;
            let n = self.length() + 1;
            let b = self.algebra().clone();
            let prev = free_module(&b, self.ranks[n - 1]);
            let gens = cover_generators(prev.actions(), &frontier, degree_seed(n));
            let g = gens.cols();
            let full = expand_compact(&b, &gens, g);
            debug_assert!(
                if n == 1 { self.augmentation_full() } else { self.differential_full(n - 1) }
                    .mul(&gens)
                    .is_zero()
            );
            self.frontier = Some(full.kernel_basis());
            self.diffs.push(gens);
            self.ranks.push(g);
        }
        Ok(())
    }

    /// Recomputes exactness of the augmented complex in all computed degrees:
    /// the augmentation is onto, consecutive maps compose to zero, and
    /// `rank d_{n+1} = dim ker d_n`.
    pub fn certify(&self) -> Result<()> {
        let eps = self.augmentation_full();
        if eps.rank() != self.module.dim() {
            return Err(Error::InvalidParams("augmentation is not surjective".into()));
        }
        let mut prev = eps;
        for n in 1..=self.length() {
            let d = self.differential_full(n);
            if !prev.mul(&d).is_zero() {
                return Err(Error::NotAComplex(n as i64));
            }
            let ker = prev.cols() - prev.rank();
            if d.rank() != ker {
                return Err(Error::InvalidParams(format!(
                    "resolution is not exact at P_{}",
                    n - 1
                )));
            }
            prev = d;
        }
        Ok(())
    }
}

fn degree_seed(n: usize) -> u64 {
    COVER_SEED.wrapping_add(n as u64)
}

/// Full k-matrix of a map between free modules given by generator images.
fn expand_compact(b: &Algebra, compact: &Mat, g_src: usize) -> Mat {
    let (d, f) = (b.dim(), b.field());
    let g_tgt = compact.rows() / d;
    let mut full = Mat::zeros(f, g_tgt * d, g_src * d);
    for j in 0..g_src {
        let col = compact.column(j);
        for i in 0..g_tgt {
            let v = &col[i * d..(i + 1) * d];
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            // column e of the block is e_e · v
            full.set_block(i * d, j * d, &b.right_mul_by(v));
        }
    }
    full
}

/// Generators (as ambient vectors) of the submodule spanned by `sub`, for
/// a module given by the action matrices of all basis elements.
///
/// Candidates are random combinations of the subspace basis; a candidate is
/// kept if it enlarges the generated submodule. A pruning pass in order then
/// drops every generator the others can do without.
fn cover_generators(actions: &[Mat], sub: &Mat, seed: u64) -> Mat {
    let f = sub.field();
    let n = sub.rows();
    let target = sub.cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut rank = 0;
    while rank < target {
        let coeffs: Vec<u32> = (0..target).map(|_| rng.gen_range(0..f.p())).collect();
        let v = sub.mul_vec(&coeffs);
        gens.push(v);
        let r = generated_rank(actions, &gens, n, f);
        if r > rank {
            rank = r;
        } else {
            gens.pop();
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let without: Vec<Vec<u32>> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if generated_rank(actions, &without, n, f) == target {
            gens = without;
        } else {
            i += 1;
        }
    }
    Mat::from_columns(f, n, &gens)
}

fn generated_rank(actions: &[Mat], gens: &[Vec<u32>], n: usize, f: PrimeField) -> usize {
    let cols: Vec<Vec<u32>> = gens
        .iter()
        .flat_map(|v| actions.iter().map(move |a| a.mul_vec(v)))
        .collect();
    Mat::from_columns(f, n, &cols).rank()
}

/// A surjection `B^g → m` with a greedily pruned generating set.
pub fn free_cover(m: &LeftModule) -> (LeftModule, ModuleMorphism) {
    let res = Resolution::start(m);
    let free = free_module(m.algebra(), res.ranks[0]);
    let map = ModuleMorphism::new(free.clone(), m.clone(), res.augmentation_full())
        .expect("augmentation is B-linear");
    (free, map)
}

impl Resolution {
    fn start(m: &LeftModule) -> Resolution {
        let f = m.field();
        let gens = cover_generators(m.actions(), &Mat::identity(f, m.dim()), degree_seed(0));
        let mut res = Resolution {
            module: m.clone(),
            ranks: vec![gens.cols()],
            aug: gens,
            diffs: Vec::new(),
            frontier: None,
        };
        res.frontier = Some(res.augmentation_full().kernel_basis());
        res
    }
}

/// Free resolution of `m` up to `P_len`; deterministic given the module data.
pub fn projective_resolution(m: &LeftModule, len: usize) -> Resolution {
    let mut res = Resolution::start(m);
    res.extend_to(len).expect("fresh resolutions extend");
    res
}

/// Whether `m` is projective: the free cover admits a B-linear section.
pub fn is_projective(m: &LeftModule) -> bool {
    let (free, cover) = free_cover(m);
    let Ok(homs) = hom_over(m, &free, Residual::None) else {
        return false;
    };
    let f = m.field();
    let cols: Vec<Vec<u32>> = (0..homs.dim())
        .map(|i| cover.matrix().mul(&homs.map(i)).into_data())
        .collect();
    let system = Mat::from_columns(f, m.dim() * m.dim(), &cols);
    matches!(system.solve(Mat::identity(f, m.dim()).data()), Ok(Some(_)))
}

/// The normalized-free bar resolution of `A` over `A^e`, `B_n = A^{⊗(n+2)}`,
/// free on the generators `1 ⊗ e_{i_1} ⊗ ... ⊗ e_{i_n} ⊗ 1`.
pub fn bar_resolution(a: &Algebra, len: usize) -> Result<Resolution> {
    let d = a.dim();
    let cap = size_cap();
    let required = d.saturating_pow(len as u32 + 2);
    if required > cap {
        return Err(Error::SizeCap { required, cap });
    }
    let f = a.field();
    let env = enveloping(a);
    let dd = env.dim();
    let lincl = left_inclusion(a);
    let rincl = right_inclusion(a);
    let one = lincl.apply(a.unit());
    let module = regular_bimodule(a).into_left();
    let aug = Mat::column_vector(f, a.unit());
    let mut ranks = vec![1];
    let mut diffs = Vec::new();
    for n in 1..=len {
        let g_src = d.pow(n as u32);
        let g_tgt = d.pow(n as u32 - 1);
        let mut dn = Mat::zeros(f, g_tgt * dd, g_src);
        let mut idx = vec![0usize; n];
        for col in 0..g_src {
            // decode base d, first index most significant
            let mut c = col;
            for slot in idx.iter_mut().rev() {
                *slot = c % d;
                c /= d;
            }
            let encode = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc * d + x);
            let mut add = |tgt: usize, coeff: &[u32], scale: u32| {
                for (e, &x) in coeff.iter().enumerate() {
                    if x != 0 {
                        let r = tgt * dd + e;
                        let cur = dn.get(r, col);
                        dn.set(r, col, f.add(cur, f.mul(x, scale)));
                    }
                }
            };
            add(encode(&idx[1..]), &lincl.matrix().column(idx[0]), 1);
            for j in 0..n - 1 {
                let sign = if (j + 1) % 2 == 1 { f.neg(1) } else { 1 };
                for (k, &c) in a.product_row(idx[j], idx[j + 1]).iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut merged: Vec<usize> = idx[..j].to_vec();
                    merged.push(k);
                    merged.extend_from_slice(&idx[j + 2..]);
                    add(encode(&merged), &one, f.mul(sign, c));
                }
            }
            let sign = if n % 2 == 1 { f.neg(1) } else { 1 };
            add(encode(&idx[..n - 1]), &rincl.matrix().column(idx[n - 1]), sign);
        }
        diffs.push(dn);
        ranks.push(g_src);
    }
    Ok(Resolution {
        module,
        ranks,
        aug,
        diffs,
        frontier: None,
    })
}

/// Places `Σ_b compact[(i,b), j] act(e_b)` at block `(i, j)` (or `(j, i)`
/// when `transpose_blocks`).
fn assemble_blocks(compact: &Mat, acts: &[Mat], q: usize, g_src: usize, transpose_blocks: bool) -> Mat {
    let f = compact.field();
    let d = acts.len();
    let g_tgt = compact.rows() / d.max(1);
    let (rows, cols) = if transpose_blocks {
        (g_src * q, g_tgt * q)
    } else {
        (g_tgt * q, g_src * q)
    };
    let mut out = Mat::zeros(f, rows, cols);
    for j in 0..g_src {
        for i in 0..g_tgt {
            let mut block = Mat::zeros(f, q, q);
            let mut any = false;
            for (b, act) in acts.iter().enumerate() {
                let c = compact.get(i * d + b, j);
                if c != 0 {
                    block.add_scaled(c, act);
                    any = true;
                }
            }
            if any {
                if transpose_blocks {
                    out.set_block(j * q, i * q, &block);
                } else {
                    out.set_block(i * q, j * q, &block);
                }
            }
        }
    }
    out
}

fn residual_power(residual: Option<&LeftModule>, f: PrimeField, q: usize, g: usize) -> LeftModule {
    match residual {
        None => LeftModule::trivial(f, q * g),
        Some(r) => LeftModule::new_unchecked(
            r.algebra().clone(),
            q * g,
            r.actions().iter().map(|m| m.direct_power(g)).collect(),
        ),
    }
}

fn check_residual(residual: Option<&LeftModule>, on: &LeftModule) -> Result<()> {
    if let Some(r) = residual {
        if r.dim() != on.dim() {
            return Err(Error::DimensionMismatch {
                context: "residual action",
                expected: on.dim(),
                found: r.dim(),
            });
        }
        for m in r.actions() {
            if !on.commutes_with(m) {
                return Err(Error::NotCommuting("residual action on coefficient".into()));
            }
        }
    }
    Ok(())
}

/// The cochain complex `Hom_B(P_•, n)` in degrees `0..=upto`, with
/// `Hom_B(P_i, n) = n^{g_i}` via values on generators and the residual
/// action (commuting with `B` on `n`) applied by post-composition.
pub fn hom_complex(res: &Resolution, n: &LeftModule, residual: Option<&LeftModule>, upto: usize) -> Result<Complex> {
    if n.algebra() != res.algebra() {
        return Err(Error::AlgebraMismatch("Hom complex over different algebras".into()));
    }
    if upto > res.length() {
        return Err(Error::ValidityBound {
            requested: upto,
            bound: res.length(),
        });
    }
    check_residual(residual, n)?;
    let f = n.field();
    let q = n.dim();
    let terms = (0..=upto)
        .map(|i| residual_power(residual, f, q, res.rank(i)))
        .collect();
    let codiffs = (1..=upto)
        .map(|i| assemble_blocks(res.differential(i), n.actions(), q, res.rank(i), true))
        .collect();
    Complex::cochain(terms, codiffs)
}

/// The chain complex `P_• ⊗_B other` in degrees `0..=upto`, where `other`
/// is a module over `B^op`; `P_i ⊗_B other = other^{g_i}`.
pub fn tensor_complex(res: &Resolution, other: &LeftModule, residual: Option<&LeftModule>, upto: usize) -> Result<Complex> {
    if other.algebra() != &opposite(res.algebra()) {
        return Err(Error::AlgebraMismatch("tensor complex needs a module over the opposite algebra".into()));
    }
    if upto > res.length() {
        return Err(Error::ValidityBound {
            requested: upto,
            bound: res.length(),
        });
    }
    check_residual(residual, other)?;
    let f = other.field();
    let q = other.dim();
    let terms = (0..=upto)
        .map(|i| residual_power(residual, f, q, res.rank(i)))
        .collect();
    let diffs = (1..=upto)
        .map(|i| assemble_blocks(res.differential(i), other.actions(), q, res.rank(i), false))
        .collect();
    Complex::new(0, terms, diffs)
}

/// `Ext^i_B(res.module(), n)` for `0 <= i <= max_degree`, from an existing
/// resolution of length at least `max_degree + 1`.
pub fn ext_with(res: &Resolution, n: &LeftModule, max_degree: usize, residual: Option<&LeftModule>) -> Result<GradedModule> {
    if res.length() < max_degree + 1 && !res.is_finite() {
        return Err(Error::ValidityBound {
            requested: max_degree,
            bound: res.length().saturating_sub(1),
        });
    }
    let c = hom_complex(res, n, residual, (max_degree + 1).min(res.length()))?;
    let pieces = (0..=max_degree)
        .map(|i| {
            if i as i64 <= -c.lo() {
                cohomology(&c, i as i64)
            } else {
                Ok(zero_piece(c.residual_algebra()))
            }
        })
        .collect::<Result<_>>()?;
    Ok(GradedModule::new(pieces, max_degree))
}

/// `Tor_i^B(other, res.module())` for `0 <= i <= max_degree`, `other` a module over `B^op`.
pub fn tor_with(res: &Resolution, other: &LeftModule, max_degree: usize, residual: Option<&LeftModule>) -> Result<GradedModule> {
    if res.length() < max_degree + 1 && !res.is_finite() {
        return Err(Error::ValidityBound {
            requested: max_degree,
            bound: res.length().saturating_sub(1),
        });
    }
    let c = tensor_complex(res, other, residual, (max_degree + 1).min(res.length()))?;
    let pieces = (0..=max_degree)
        .map(|i| {
            if i as i64 <= c.hi() {
                homology(&c, i as i64)
            } else {
                Ok(zero_piece(c.residual_algebra()))
            }
        })
        .collect::<Result<_>>()?;
    Ok(GradedModule::new(pieces, max_degree))
}

fn zero_piece(c: &Algebra) -> ResidualSpace {
    let f = c.field();
    ResidualSpace {
        space: Subquotient::cokernel(&Mat::zeros(f, 0, 0)),
        module: LeftModule::zero(c),
    }
}

/// `Ext^i_B(m, n)` for `i <= max_degree` with an optional residual action on `n`.
pub fn ext(m: &LeftModule, n: &LeftModule, max_degree: usize, residual: Option<&LeftModule>) -> Result<GradedModule> {
    let res = projective_resolution(m, max_degree + 1);
    ext_with(&res, n, max_degree, residual)
}

/// `Tor_i^B(n, m)` for `i <= max_degree`.
///
/// A residual on `m` makes the computation resolve `n` (as a module over
/// `B^op`) instead, so that the residual acts on the unresolved factor.
pub fn tor(n: &RightModule, m: &LeftModule, max_degree: usize, residual: Residual<'_>) -> Result<GradedModule> {
    match residual {
        Residual::Second(r) => tor_resolving_first(n, m, max_degree, Some(r)),
        Residual::First(r) => tor_resolving_second(n, m, max_degree, Some(r)),
        Residual::None => tor_resolving_second(n, m, max_degree, None),
    }
}

/// Tor computed from a resolution of the left module `m`; residual on `n`.
pub fn tor_resolving_second(n: &RightModule, m: &LeftModule, max_degree: usize, residual: Option<&LeftModule>) -> Result<GradedModule> {
    let res = projective_resolution(m, max_degree + 1);
    tor_with(&res, n.as_left(), max_degree, residual)
}

/// Tor computed from a resolution of the right module `n`; residual on `m`.
pub fn tor_resolving_first(n: &RightModule, m: &LeftModule, max_degree: usize, residual: Option<&LeftModule>) -> Result<GradedModule> {
    let res = projective_resolution(n.as_left(), max_degree + 1);
    let other = m.reinterpret(&opposite(n.as_left().algebra()))?;
    let residual = residual.cloned();
    tor_with(&res, &other, max_degree, residual.as_ref())
}

/// Lifts `phi: src.module() → tgt.module()` to a chain map between the
/// resolutions, returned in compact form (`F_n` sends generators of `P_n`
/// into `P'_n`) for degrees `0..=upto`.
pub fn lift_morphism(src: &Resolution, tgt: &Resolution, phi: &Mat, upto: usize) -> Result<Vec<Mat>> {
    if src.algebra() != tgt.algebra() {
        return Err(Error::AlgebraMismatch("lifting between resolutions over different algebras".into()));
    }
    if upto > src.length() || upto > tgt.length() {
        return Err(Error::ValidityBound {
            requested: upto,
            bound: src.length().min(tgt.length()),
        });
    }
    let b = src.algebra();
    let mut out: Vec<Mat> = Vec::with_capacity(upto + 1);
    let rhs0 = phi.mul(src.augmentation());
    let f0 = tgt
        .augmentation_full()
        .solve_many(&rhs0)?
        .ok_or_else(|| Error::NotIntertwiner("morphism does not lift to P_0".into()))?;
    out.push(f0);
    for n in 1..=upto {
        let prev_full = expand_compact(b, &out[n - 1], src.rank(n - 1));
        let rhs = prev_full.mul(src.differential(n));
        let fnn = tgt
            .differential_full(n)
            .solve_many(&rhs)?
            .ok_or_else(|| Error::NotIntertwiner(format!("morphism does not lift to P_{n}")))?;
        out.push(fnn);
    }
    Ok(out)
}

/// The map `P_n ⊗ other → P'_n ⊗ other` induced by a compact chain-map component.
pub fn tensor_chain_map(compact: &Mat, other: &LeftModule, g_src: usize) -> Mat {
    assemble_blocks(compact, other.actions(), other.dim(), g_src, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, center};
    use crate::module::{k_dual, regular_left, regular_right, restrict, tensor_over};
    use crate::random::random_module;
    use proptest::prelude::*;

    fn simple_k(a: &Algebra) -> LeftModule {
        let f = a.field();
        let action = (0..a.dim())
            .map(|i| Mat::new(f, 1, 1, vec![a.unit()[i]]).unwrap())
            .collect();
        LeftModule::new(a.clone(), 1, action).unwrap()
    }

    fn k_right(a: &Algebra) -> RightModule {
        RightModule::from_opposite(simple_k(a).reinterpret(&opposite(a)).unwrap())
    }

    #[test]
    fn free_cover_examples() {
        let a = builtin("matrix(2)", 101).unwrap();
        assert_eq!(free_cover(&regular_left(&a)).0.dim(), 4);
        assert_eq!(free_cover(&LeftModule::zero(&a)).0.dim(), 0);
        let d = builtin("dual_numbers(2)", 101).unwrap();
        let (free, map) = free_cover(&simple_k(&d));
        assert_eq!(free.dim(), 2);
        assert_eq!(map.matrix().rank(), 1);
    }

    #[test]
    fn resolution_of_free_module_stops() {
        let a = builtin("upper_triangular(2)", 101).unwrap();
        let res = projective_resolution(&regular_left(&a), 3);
        assert_eq!(res.ranks(), &[1, 0, 0, 0]);
        assert!(res.is_finite());
        res.certify().unwrap();
    }

    #[test]
    fn dual_numbers_resolution_of_k_is_periodic() {
        let d = builtin("dual_numbers(2)", 101).unwrap();
        let res = projective_resolution(&simple_k(&d), 6);
        assert_eq!(res.ranks(), &[1; 7]);
        res.certify().unwrap();
        // every differential is multiplication by a nonzero multiple of x
        for n in 1..=6 {
            let dn = res.differential(n);
            assert_eq!(dn.get(0, 0), 0);
            assert_ne!(dn.get(1, 0), 0);
        }
    }

    #[test]
    fn regular_bimodule_of_m2_is_projective_but_not_free() {
        let a = builtin("matrix(2)", 101).unwrap();
        let r = regular_bimodule(&a).into_left();
        assert!(is_projective(&r));
        let res = projective_resolution(&r, 2);
        res.certify().unwrap();
        assert_eq!(res.rank(0), 1);
        // A^e ≅ M_4, A is a simple module of dim 4: the kernel never vanishes
        assert!(!res.is_finite());
        let d = builtin("dual_numbers(2)", 101).unwrap();
        assert!(!is_projective(&simple_k(&d)));
        assert!(is_projective(&regular_left(&d)));
    }

    #[test]
    fn bar_resolution_examples() {
        let k = builtin("field", 7).unwrap();
        let bar = bar_resolution(&k, 4).unwrap();
        for n in 1..=4 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(bar.differential(n).data(), &[expect]);
        }
        bar.certify().unwrap();
        let a = builtin("upper_triangular(2)", 7).unwrap();
        let bar = bar_resolution(&a, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(bar.rank(n) * 9, 3usize.pow(n as u32 + 2));
        }
        bar.certify().unwrap();
        let d = builtin("dual_numbers(2)", 7).unwrap();
        bar_resolution(&d, 4).unwrap().certify().unwrap();
        assert!(matches!(bar_resolution(&a, 20), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn hom_complex_of_free_resolution_is_concentrated() {
        let a = builtin("exterior2", 7).unwrap();
        let res = projective_resolution(&regular_left(&a), 2);
        let n = random_module(&a, 4, 3);
        let g = ext_with(&res, &n, 1, None).unwrap();
        assert_eq!(g.dims(), vec![n.dim(), 0]);
    }

    #[test]
    fn ext_and_tor_of_k_over_dual_numbers() {
        let d = builtin("dual_numbers(2)", 101).unwrap();
        let k = simple_k(&d);
        assert_eq!(ext(&k, &k, 5, None).unwrap().dims(), vec![1; 6]);
        let kr = k_right(&d);
        assert_eq!(tor(&kr, &k, 5, Residual::None).unwrap().dims(), vec![1; 6]);
        assert_eq!(tor_resolving_first(&kr, &k, 5, None).unwrap().dims(), vec![1; 6]);
    }

    #[test]
    fn semisimple_ext_vanishes() {
        let a = builtin("matrix(2)", 101).unwrap();
        for seed in 0..3 {
            let m = random_module(&a, 4, seed);
            let n = random_module(&a, 4, seed + 10);
            let e = ext(&m, &n, 3, None).unwrap().dims();
            assert_eq!(e[1..], [0, 0, 0]);
            assert_eq!(e[0], hom_over(&m, &n, Residual::None).unwrap().dim());
            let nr = RightModule::from_opposite(k_dual(&n));
            let t = tor(&nr, &m, 3, Residual::None).unwrap().dims();
            assert_eq!(t[1..], [0, 0, 0]);
            assert_eq!(t[0], tensor_over(&nr, &m, Residual::None).unwrap().dim());
        }
        // A over A^e is projective, so HH^{>=1} vanishes even through a non-finite resolution
        let r = regular_bimodule(&a).into_left();
        assert_eq!(ext(&r, &r, 3, None).unwrap().dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn homology_examples() {
        let f = PrimeField::new(5).unwrap();
        let t = |n| LeftModule::trivial(f, n);
        let exact = Complex::new(0, vec![t(1), t(1)], vec![Mat::identity(f, 1)]).unwrap();
        assert_eq!(homology(&exact, 0).unwrap().dim(), 0);
        assert_eq!(homology(&exact, 1).unwrap().dim(), 0);
        let zero = Complex::new(0, vec![t(2), t(3)], vec![Mat::zeros(f, 2, 3)]).unwrap();
        assert_eq!(homology(&zero, 1).unwrap().dim(), 3);
        assert!(matches!(homology(&zero, 2), Err(Error::DegreeOutOfRange { .. })));
        let bad = Complex::new(
            0,
            vec![t(1), t(1), t(1)],
            vec![Mat::identity(f, 1), Mat::identity(f, 1)],
        );
        assert_eq!(bad.unwrap_err(), Error::NotAComplex(2));
    }

    #[test]
    fn validity_bound_is_enforced() {
        let d = builtin("dual_numbers(2)", 101).unwrap();
        let k = simple_k(&d);
        let g = ext(&k, &k, 2, None).unwrap();
        assert_eq!(g.validity_bound(), 2);
        assert!(matches!(g.degree(3), Err(Error::ValidityBound { .. })));
        let res = projective_resolution(&k, 2);
        assert!(ext_with(&res, &k, 2, None).is_err());
    }

    /// Over the commutative `k[x]/(x^3)` every element is central; acting
    /// through either factor of `Tor` induces the same map.
    #[test]
    fn central_balancing_on_tor() {
        let a = builtin("dual_numbers(3)", 101).unwrap();
        let (_, incl) = center(&a);
        for seed in 0..3 {
            let m = random_module(&a, 3, seed);
            let n = random_module(&opposite(&a), 3, seed + 5);
            let res = projective_resolution(&m, 4);
            for z in 0..3 {
                let zvec = incl.matrix().column(z);
                let on_m = m.act_by(&zvec);
                let lift = lift_morphism(&res, &res, &on_m, 4).unwrap();
                let c = tensor_complex(&res, &n, None, 4).unwrap();
                for deg in 0..3 {
                    let h = homology(&c, deg as i64).unwrap();
                    let via_m = tensor_chain_map(&lift[deg], &n, res.rank(deg));
                    let via_n = n.act_by(&zvec).direct_power(res.rank(deg));
                    let a1 = h.space.induced(&via_m).unwrap();
                    let a2 = h.space.induced(&via_n).unwrap();
                    assert_eq!(a1, a2, "seed {seed} z {z} degree {deg}");
                }
            }
        }
    }

    #[test]
    fn oracle_equivalence_of_bar_and_greedy_resolutions() {
        for spec in ["dual_numbers(2)", "dual_numbers(3)", "upper_triangular(2)", "product_of_fields(2)"] {
            let a = builtin(spec, 101).unwrap();
            let r = regular_bimodule(&a).into_left();
            let bar = bar_resolution(&a, 4).unwrap();
            let greedy = projective_resolution(&r, 4);
            greedy.certify().unwrap();
            let x = ext_with(&bar, &r, 3, None).unwrap().dims();
            let y = ext_with(&greedy, &r, 3, None).unwrap().dims();
            assert_eq!(x, y, "{spec}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// Hom into the cogenerator `(B_B)^*` has no higher cohomology.
        #[test]
        fn injective_target_collapses(seed in 0u64..500, which in 0usize..4) {
            let spec = ["dual_numbers(3)", "upper_triangular(2)", "exterior2", "matrix(2)"][which];
            let a = builtin(spec, 7).unwrap();
            let m = random_module(&a, 4, seed);
            let cogen = k_dual(regular_right(&a).as_left()).reinterpret(&a).unwrap();
            let e = ext(&m, &cogen, 3, None).unwrap();
            prop_assert_eq!(&e.dims()[1..], &[0, 0, 0][..]);
            prop_assert_eq!(e.dims()[0], hom_over(&m, &cogen, Residual::None).unwrap().dim());
        }

        #[test]
        fn tor_is_balanced(seed in 0u64..500, which in 0usize..3) {
            let spec = ["dual_numbers(2)", "upper_triangular(2)", "exterior2"][which];
            let a = builtin(spec, 5).unwrap();
            let m = random_module(&a, 4, seed);
            let n = RightModule::from_opposite(random_module(&opposite(&a), 4, seed + 1));
            let x = tor_resolving_second(&n, &m, 3, None).unwrap().dims();
            let y = tor_resolving_first(&n, &m, 3, None).unwrap().dims();
            prop_assert_eq!(x, y);
        }

        #[test]
        fn resolutions_certify(seed in 0u64..500, which in 0usize..4) {
            let spec = ["dual_numbers(3)", "upper_triangular(2)", "exterior2", "matrix(2)"][which];
            let a = builtin(spec, 3).unwrap();
            let m = random_module(&a, 4, seed);
            let res = projective_resolution(&m, 4);
            prop_assert!(res.certify().is_ok());
            let z = center(&a).1;
            let zm = restrict(&m, &z).unwrap();
            prop_assert_eq!(zm.dim(), m.dim());
        }
    }
}
