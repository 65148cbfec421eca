//! Rigid dualizing data of a finite-dimensional algebra and the duality
//! verifiers.
//!
//! With `Z = Z(A)` we take `R_Z = Z^*` and `R_A = Hom_Z(A, R_Z)`, both in
//! degree 0. The bimodule structure on `R_A` is `((a ⊗ b) F)(x) = F(b x a)`.
//! Adjunction identifies `R_A` with `A^* = Hom_k(A, k)` through
//! `F ↦ (x ↦ F(x)(1_Z))`; this comparison is built and checked, never
//! assumed. Each `RHom(-, R)` is a single Hom because `R_A` is injective on
//! either side, while rigidity itself is tested through a genuine resolution.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::algebra::{center, enveloping, left_inclusion, opposite, right_inclusion, swap_involution, Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subquotient};
use crate::hochschild::{bimodule_resolution, hh_cohomology_with, hh_homology_with};
use crate::isocheck::{is_isomorphic_with_retry, IsoOutcome};
use crate::module::{
    central_action_on_left, hom_k, hom_over, k_dual, regular_bimodule, regular_left, restrict, tensor_k, Bimodule,
    HomSpace, LeftModule, ModuleMorphism, Residual, ResidualSpace, RightModule,
};
use crate::report::{Verdict, VerificationReport};
use crate::resolve::{ext, ext_with, tor, GradedModule, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Unverified,
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub axioms: Flag,
    pub rigidity: Flag,
    pub condition3: Flag,
}

pub struct DualizingData {
    algebra: Algebra,
    center: Algebra,
    center_incl: AlgebraMorphism,
    r_z: LeftModule,
    r_a: Bimodule,
    hom_basis: Mat,
    comparison: Mat,
    notes: Vec<String>,
    flags: Mutex<Flags>,
    resolution: Mutex<Option<Resolution>>,
}

impl std::fmt::Debug for DualizingData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DualizingData")
            .field("algebra", &self.algebra)
            .field("center_dim", &self.center.dim())
            .field("flags", &self.flags())
            .finish()
    }
}

/// `A^*` as a bimodule: `((a ⊗ b) λ)(x) = λ(b x a)`.
///
/// Built as the k-dual of the regular bimodule, a right `A^e`-module, turned
/// into a left one along the swap involution.
pub fn a_star(a: &Algebra) -> Bimodule {
    let env = enveloping(a);
    let swap = swap_involution(&env).expect("built by enveloping");
    let dual = k_dual(regular_bimodule(a).as_left());
    Bimodule::from_left(restrict(&dual, &swap).expect("swap lands in the opposite")).expect("over A^e")
}

pub fn rigid_dualizing(a: &Algebra) -> Result<DualizingData> {
    let f = a.field();
    let d = a.dim();
    let (z, incl) = center(a);
    let r = z.dim();
    let r_z = k_dual(&regular_left(&z)).reinterpret(&z)?;
    let a_over_z = restrict(&regular_left(a), &incl)?;
    let hom = hom_over(&a_over_z, &r_z, Residual::None)?;
    let env = enveloping(a);
    let ir = Mat::identity(f, r);
    let mut action = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            // x ↦ e_j x e_i, acting on F by precomposition
            let x = a.left_mul(j).mul(a.right_mul(i));
            action.push(ir.kron(&x.transpose()));
        }
    }
    let ambient = LeftModule::new_unchecked(env.clone(), r * d, action);
    let on_hom = ambient
        .restrict_to_subspace(&hom.basis)
        .ok_or_else(|| Error::NotIntertwiner("Z-linear maps are not closed under the bimodule action".into()))?;
    let r_a = Bimodule::from_left(LeftModule::new(env, on_hom.dim(), on_hom.actions().to_vec())?)?;

    let comparison = evaluation_at_unit(&hom, z.unit());
    let star = a_star(a);
    ModuleMorphism::new(r_a.as_left().clone(), star.as_left().clone(), comparison.clone())?;
    if comparison.inverse().is_none() {
        return Err(Error::NotIntertwiner("comparison R_A → A^* is not bijective".into()));
    }
    let notes = vec![
        format!("R_Z = Z(A)^*, dim {r}"),
        format!("R_A = Hom_Z(A, R_Z) in degree 0, dim {}", r_a.dim()),
        "R_A ≅ A^* through F ↦ F(-)(1), checked as a bimodule isomorphism".into(),
        "finite injective dimension and finite cohomology hold for finite-dimensional modules".into(),
        "A is finite over Z(A) since dim A is finite".into(),
    ];
    Ok(DualizingData {
        algebra: a.clone(),
        center: z,
        center_incl: incl,
        r_z,
        r_a,
        hom_basis: hom.basis,
        comparison,
        notes,
        flags: Mutex::new(Flags {
            axioms: Flag::Unverified,
            rigidity: Flag::Unverified,
            condition3: Flag::Unverified,
        }),
        resolution: Mutex::new(None),
    })
}

/// `F ↦ unit_Z^T F` for each basis map `F: A → Z^*` (an `r x d` matrix).
fn evaluation_at_unit(hom: &HomSpace, unit_z: &[u32]) -> Mat {
    let f = hom.basis.field();
    let cols: Vec<Vec<u32>> = (0..hom.dim())
        .map(|i| hom.map(i).transpose().mul_vec(unit_z))
        .collect();
    Mat::from_columns(f, hom.source_dim, &cols)
}

/// `R_A ⊗_k R_A^op` with its outside left `A^e`-structure, its inside right
/// `A^e`-structure, and the identification with `(A^e)^*`.
#[derive(Clone, Debug)]
pub struct EnvelopingDualizer {
    pub outside: Bimodule,
    /// Left module over `(A^e)^op`.
    pub inside: LeftModule,
    pub identification: Mat,
}

impl DualizingData {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn center(&self) -> &Algebra {
        &self.center
    }

    pub fn center_inclusion(&self) -> &AlgebraMorphism {
        &self.center_incl
    }

    pub fn r_z(&self) -> &LeftModule {
        &self.r_z
    }

    pub fn r_a(&self) -> &Bimodule {
        &self.r_a
    }

    /// The map `R_A → A^*` in the bases used here.
    pub fn comparison(&self) -> &Mat {
        &self.comparison
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn flags(&self) -> Flags {
        *self.flags.lock().expect("flags lock")
    }

    fn set_flag(&self, which: fn(&mut Flags) -> &mut Flag, pass: bool) {
        let mut flags = self.flags.lock().expect("flags lock");
        *which(&mut flags) = if pass { Flag::Pass } else { Flag::Fail };
    }

    /// `R_A` as a left `A`-module.
    pub fn r_left(&self) -> LeftModule {
        restrict(self.r_a.as_left(), &left_inclusion(&self.algebra)).expect("inclusion into A^e")
    }

    /// `R_A` as a right `A`-module (left over `A^op`).
    pub fn r_right(&self) -> LeftModule {
        restrict(self.r_a.as_left(), &right_inclusion(&self.algebra)).expect("inclusion into A^e")
    }

    /// A resolution of `A` over `A^e` of length at least `len`, shared between calls.
    pub fn bimodule_resolution(&self, len: usize) -> Resolution {
        let mut cache = self.resolution.lock().expect("resolution lock");
        match cache.as_mut() {
            Some(res) => {
                if res.length() < len {
                    res.extend_to(len).expect("greedy resolutions extend");
                }
            }
            None => *cache = Some(bimodule_resolution(&self.algebra, len)),
        }
        cache.as_ref().expect("just filled").clone()
    }

    pub fn enveloping_dualizer(&self) -> Result<EnvelopingDualizer> {
        let a = &self.algebra;
        let d = a.dim();
        let f = a.field();
        let env = enveloping(a);
        let act = |x: usize| self.r_a.as_left().action(x);
        let unit = a.unit();
        // a ⊗ 1 and 1 ⊗ b as A^e coordinates
        let left = |i: usize| -> Mat {
            let mut m = Mat::zeros(f, d, d);
            for (u, &c) in unit.iter().enumerate() {
                m.add_scaled(c, act(i * d + u));
            }
            m
        };
        let right = |j: usize| -> Mat {
            let mut m = Mat::zeros(f, d, d);
            for (u, &c) in unit.iter().enumerate() {
                m.add_scaled(c, act(u * d + j));
            }
            m
        };
        let lefts: Vec<Mat> = (0..d).map(left).collect();
        let rights: Vec<Mat> = (0..d).map(right).collect();
        let mut outside = Vec::with_capacity(d * d);
        let mut inside = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                outside.push(lefts[i].kron(&rights[j]));
                inside.push(rights[i].kron(&lefts[j]));
            }
        }
        let outside = Bimodule::from_left(LeftModule::new(env.clone(), d * d, outside)?)?;
        let inside = LeftModule::new(opposite(&env), d * d, inside)?;
        for m in inside.actions() {
            if !outside.as_left().commutes_with(m) {
                return Err(Error::NotCommuting("inside and outside structures".into()));
            }
        }
        let identification = self.comparison.kron(&self.comparison);
        let env_star = k_dual(&crate::module::regular_right(&env).into_left()).reinterpret(&env)?;
        ModuleMorphism::new(outside.as_left().clone(), env_star, identification.clone())?;
        Ok(EnvelopingDualizer {
            outside,
            inside,
            identification,
        })
    }

    /// `Hom_A(m, R_A)` with the right `A`-action from `R_A`.
    fn dual_space(&self, m: &LeftModule) -> Result<HomSpace> {
        let r_right = self.r_right();
        hom_over(m, &self.r_left(), Residual::Second(&r_right))
    }

    /// `Hom_{A^op}(n, R_A)` with the left `A`-action from `R_A`.
    fn dual_space_op(&self, n: &RightModule) -> Result<HomSpace> {
        let r_left = self.r_left();
        let r_right = self.r_right();
        let n = n.as_left().reinterpret(r_right.algebra())?;
        hom_over(&n, &r_right, Residual::Second(&r_left))
    }

    /// `D(m) = Hom_A(m, R_A)`, a right module.
    pub fn dualize(&self, m: &LeftModule) -> Result<RightModule> {
        Ok(RightModule::from_opposite(self.dual_space(m)?.module))
    }

    /// `D^op(n) = Hom_{A^op}(n, R_A)`, a left module.
    pub fn dualize_op(&self, n: &RightModule) -> Result<LeftModule> {
        Ok(self.dual_space_op(n)?.module)
    }

    /// The isomorphism `D(m) → k_dual(m)`, `F ↦ λ ∘ F` with `λ = ev_1 ∘ comparison`.
    pub fn dual_comparison(&self, m: &LeftModule) -> Result<Mat> {
        let space = self.dual_space(m)?;
        let f = m.field();
        let lambda = Mat::column_vector(f, &self.comparison.transpose().mul_vec(self.algebra.unit()));
        let cols: Vec<Vec<u32>> = (0..space.dim())
            .map(|i| space.map(i).transpose().mul(&lambda).into_data())
            .collect();
        let cmp = Mat::from_columns(f, m.dim(), &cols);
        let target = k_dual(m);
        ModuleMorphism::new(space.module.clone(), target, cmp.clone())?;
        if cmp.inverse().is_none() {
            return Err(Error::NotIntertwiner("D(m) → m^* is not bijective".into()));
        }
        Ok(cmp)
    }

    fn report(&self, check: &str, max_degree: usize) -> VerificationReport {
        VerificationReport::new(check, &self.algebra).with_bound(max_degree)
    }

    /// Homotheties `A → End_A(R_A)` and `A → End_{A^op}(R_A)` are bijective
    /// and `R_A` has no self-extensions on either side in degrees `1..=L`.
    pub fn verify_dualizing_axioms(&self, max_degree: usize) -> Result<VerificationReport> {
        let a = &self.algebra;
        let d = a.dim();
        let mut report = self.report("axioms", max_degree);
        let r_left = self.r_left();
        let r_right = self.r_right();
        let homothety = |on: &LeftModule, by: &LeftModule| -> Result<bool> {
            let end = hom_over(on, on, Residual::None)?;
            if end.dim() != d {
                return Ok(false);
            }
            let images: Vec<Vec<u32>> = by.actions().iter().map(|m| m.data().to_vec()).collect();
            let img = Mat::from_columns(a.field(), on.dim() * on.dim(), &images);
            let inside = img.columns().iter().all(|c| matches!(end.basis.solve(c), Ok(Some(_))));
            Ok(inside && img.rank() == d)
        };
        let left_ok = homothety(&r_left, &r_right)?;
        let right_ok = homothety(&r_right, &r_left)?;
        let lhs = ext(&r_left, &r_left, max_degree, None)?.dims();
        let rhs = ext(&r_right, &r_right, max_degree, None)?.dims();
        for i in 0..=max_degree {
            let verdict = if i == 0 && left_ok && right_ok { Verdict::Yes } else { Verdict::DimsOnly };
            report.compare(i, lhs[i], rhs[i], verdict);
            let expected = if i == 0 { d } else { 0 };
            if lhs[i] != expected || rhs[i] != expected {
                report.fail(format!("Ext^{i}(R_A, R_A) has dims {} / {}, expected {expected}", lhs[i], rhs[i]));
            }
        }
        if !left_ok {
            report.fail("homothety A → End_A(R_A) is not bijective");
        }
        if !right_ok {
            report.fail("homothety A → End_A^op(R_A) is not bijective");
        }
        report.note("finite injective dimension and finitely generated cohomology are automatic in finite dimension");
        let report = report.finish();
        self.set_flag(|f| &mut f.axioms, report.passed());
        Ok(report)
    }

    /// `Ext^i_{A^e}(A, R_A ⊗ R_A^op)` through a free resolution of `A`;
    /// passes iff degree 0 is isomorphic to `R_A` as a bimodule and the
    /// higher groups vanish.
    pub fn verify_rigidity(&self, max_degree: usize, seed: u64, trials: u32) -> Result<VerificationReport> {
        let a = &self.algebra;
        let env = enveloping(a);
        let e = self.enveloping_dualizer()?;
        let swap = swap_involution(&env)?;
        let residual = restrict(&e.inside, &swap)?;
        let res = self.bimodule_resolution(max_degree + 1);
        let g = ext_with(&res, e.outside.as_left(), max_degree, Some(&residual))?;
        let mut report = self.report("rigidity", max_degree).with_search(seed, trials);
        let dims = g.dims();
        let ext0 = &g.degree(0)?.module;
        let iso = is_isomorphic_with_retry(ext0, self.r_a.as_left(), seed, trials)?;
        report.compare(0, dims[0], self.r_a.dim(), iso_verdict(&iso.outcome));
        if let IsoOutcome::No(why) = &iso.outcome {
            report.fail(format!("Ext^0 is not isomorphic to R_A: {why}"));
        }
        for (i, &dim) in dims.iter().enumerate().skip(1) {
            report.compare(i, dim, 0, Verdict::DimsOnly);
        }
        let report = report.finish();
        self.set_flag(|f| &mut f.rigidity, report.passed());
        Ok(report)
    }

    /// Rebuilds `Hom_Z(A, R_Z)` from `A` as a `Z`-module by right
    /// multiplication with its `A^op`-bimodule structure, switches sides and
    /// demands equality with `R_A`.
    pub fn verify_condition3(&self) -> Result<VerificationReport> {
        let a = &self.algebra;
        let f = a.field();
        let d = a.dim();
        let aop = opposite(a);
        let z = &self.center;
        let r = z.dim();
        let incl_op = AlgebraMorphism::new(z.clone(), aop.clone(), self.center_incl.matrix().clone())?;
        let a_right = crate::module::regular_right(a).into_left();
        let a_right_z = restrict(&a_right, &incl_op)?;
        let hom = hom_over(&a_right_z, &self.r_z, Residual::None)?;
        let ir = Mat::identity(f, r);
        let mut action = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                // (a ⊗ b) over A^op ⊗ A acts by F ↦ F(a x b)
                let x = a.left_mul(i).mul(a.right_mul(j));
                action.push(ir.kron(&x.transpose()));
            }
        }
        let ambient = LeftModule::new_unchecked(enveloping(&aop), r * d, action);
        let rebuilt = ambient
            .restrict_to_subspace(&hom.basis)
            .ok_or_else(|| Error::NotIntertwiner("rebuilt Hom is not closed".into()))?;
        let rebuilt = Bimodule::from_left(LeftModule::new(rebuilt.algebra().clone(), rebuilt.dim(), rebuilt.actions().to_vec())?)?;
        let switched = crate::module::opposite_bimodule(&rebuilt);
        let same_space = hom.basis == self.hom_basis;
        let same_action = switched.as_left().actions() == self.r_a.as_left().actions()
            && switched.as_left().algebra() == self.r_a.as_left().algebra();
        let mut report = self.report("condition3", 0);
        let verdict = if same_space && same_action { Verdict::Yes } else { Verdict::DimsOnly };
        report.compare(0, self.r_a.dim(), switched.dim(), verdict);
        if !same_space {
            report.fail("Hom_Z(A, R_Z) differs for left and right Z-structures on A");
        }
        if !same_action {
            report.fail("side-switched structure differs from R_A");
        }
        let report = report.finish();
        self.set_flag(|f| &mut f.condition3, report.passed());
        Ok(report)
    }

    /// The evaluation map `m → D^op(D(m))`, `v ↦ (F ↦ F(v))`, is bijective and `A`-linear.
    pub fn verify_biduality(&self, m: &LeftModule) -> Result<VerificationReport> {
        let f = m.field();
        let dm = self.dual_space(m)?;
        let dmr = RightModule::from_opposite(dm.module.clone());
        let ddm = self.dual_space_op(&dmr)?;
        let cols: Vec<Vec<u32>> = (0..m.dim())
            .map(|v| {
                let e = (0..m.dim()).map(|i| u32::from(i == v)).collect::<Vec<_>>();
                let mut ev = Mat::zeros(f, dm.target_dim, dm.dim());
                for i in 0..dm.dim() {
                    for (r, x) in dm.map(i).mul_vec(&e).into_iter().enumerate() {
                        ev.set(r, i, x);
                    }
                }
                ddm.basis
                    .solve(ev.data())
                    .ok()
                    .flatten()
                    .unwrap_or_default()
            })
            .collect();
        let mut report = self.report("biduality", 0);
        let well_defined = cols.iter().all(|c| c.len() == ddm.dim());
        let bijective = well_defined && {
            let e = Mat::from_columns(f, ddm.dim(), &cols);
            ddm.dim() == m.dim()
                && e.inverse().is_some()
                && ModuleMorphism::new(m.clone(), ddm.module.clone(), e).is_ok()
        };
        let verdict = if bijective { Verdict::Yes } else { Verdict::DimsOnly };
        report.compare(0, m.dim(), ddm.dim(), verdict);
        if !bijective {
            report.fail("evaluation map m → D^op D(m) is not an isomorphism");
        }
        Ok(report.finish())
    }

    /// `Ext^i_A(m, n)` against `Ext^i_{A^op}(D(n), D(m))`, with `Z(A)`
    /// acting through `n` on the left side and through `D(m)` on the right.
    pub fn verify_hom_dual(&self, m: &LeftModule, n: &LeftModule, max_degree: usize, seed: u64, trials: u32) -> Result<VerificationReport> {
        let zn = central_action_on_left(n)?;
        let lhs = ext(m, n, max_degree, Some(zn.module()))?;
        let dm = self.dualize(m)?.into_left();
        let dn = self.dualize(n)?.into_left();
        let zdm = central_action_on_left(&dm)?.into_module().reinterpret(&self.center)?;
        let rhs = ext(&dn, &dm, max_degree, Some(&zdm))?;
        let mut report = self.report("hom-dual", max_degree).with_search(seed, trials);
        compare_graded(&mut report, &lhs, &rhs, seed, trials)?;
        Ok(report.finish())
    }

    /// The map `F ⊗ G ↦ F ⊗ G` from `Hom_A(m, R) ⊗ Hom_{A^op}(n, R)` to
    /// `Hom_{A^e}(m ⊗ n, R ⊗ R^op)` is bijective; higher Ext columns match
    /// the Künneth sums.
    pub fn verify_sep(&self, m: &LeftModule, n: &RightModule, max_degree: usize) -> Result<VerificationReport> {
        let f = m.field();
        let dm = self.dual_space(m)?;
        let dn = self.dual_space_op(n)?;
        let e = self.enveloping_dualizer()?;
        let t = tensor_k(m, n)?;
        let target = hom_over(t.as_left(), e.outside.as_left(), Residual::None)?;
        let mut images = Vec::with_capacity(dm.dim() * dn.dim());
        for i in 0..dm.dim() {
            for j in 0..dn.dim() {
                images.push(dm.map(i).kron(&dn.map(j)).into_data());
            }
        }
        let lands = images
            .iter()
            .all(|v| matches!(target.basis.solve(v), Ok(Some(_))));
        let img = Mat::from_columns(f, e.outside.dim() * t.dim(), &images);
        let bijective = lands && img.rank() == images.len() && images.len() == target.dim();
        let mut report = self.report("sep", max_degree);
        report.compare(0, images.len(), target.dim(), if bijective { Verdict::Yes } else { Verdict::DimsOnly });
        if !bijective {
            report.fail("Hom_A(m,R) ⊗ Hom_A^op(n,R) → Hom_A^e(m⊗n, R⊗R^op) is not bijective");
        }
        if max_degree > 0 {
            let lhs_m = ext(m, &self.r_left(), max_degree, None)?.dims();
            let lhs_n = ext(n.as_left(), &self.r_right(), max_degree, None)?.dims();
            let rhs = ext(t.as_left(), e.outside.as_left(), max_degree, None)?.dims();
            for i in 1..=max_degree {
                let kunneth: usize = (0..=i).map(|p| lhs_m[p] * lhs_n[i - p]).sum();
                report.compare(i, kunneth, rhs[i], Verdict::DimsOnly);
            }
        }
        Ok(report.finish())
    }

    /// `Hom_Z(Tor^A_i(D(m), D^op(n)), R_Z)` as the k-dual with transported
    /// `Z`-action, `Z` acting through `D^op(n)`.
    pub fn main_rhs(&self, m: &LeftModule, n: &RightModule, max_degree: usize) -> Result<GradedModule> {
        let y = self.dualize(m)?;
        let x = self.dualize_op(n)?;
        let zx = central_action_on_left(&x)?;
        let g = tor(&y, &x, max_degree, Residual::Second(zx.module()))?;
        self.z_dual(&g)
    }

    fn z_dual(&self, g: &GradedModule) -> Result<GradedModule> {
        let f = self.algebra.field();
        let pieces = g
            .pieces()
            .iter()
            .map(|p| {
                Ok(ResidualSpace {
                    space: Subquotient::cokernel(&Mat::zeros(f, p.dim(), 0)),
                    module: k_dual(&p.module).reinterpret(&self.center)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(GradedModule::new(pieces, g.validity_bound()))
    }

    /// `HH^i(A; m ⊗ n)` against [`main_rhs`](Self::main_rhs), as `Z(A)`-modules.
    pub fn verify_main(&self, m: &LeftModule, n: &RightModule, max_degree: usize, seed: u64, trials: u32) -> Result<VerificationReport> {
        let res = self.bimodule_resolution(max_degree + 1);
        let lhs = hh_cohomology_with(&res, &tensor_k(m, n)?, max_degree)?;
        let rhs = self.main_rhs(m, n, max_degree)?;
        let mut report = self.report("main", max_degree).with_search(seed, trials);
        compare_graded(&mut report, &lhs, &rhs, seed, trials)?;
        Ok(report.finish())
    }

    /// `HH^i(A; m)` against the `Z`-dual of `HH_i(A^op; Hom_{A^e}(m, (A^e)^*))`,
    /// the coefficient being `m^*` with its structure over `A^op ⊗ A`.
    pub fn verify_hoc_twist(&self, m: &Bimodule, max_degree: usize, seed: u64, trials: u32) -> Result<VerificationReport> {
        let a = &self.algebra;
        let res = self.bimodule_resolution(max_degree + 1);
        let lhs = hh_cohomology_with(&res, m, max_degree)?;
        let aop = opposite(a);
        let coeff = Bimodule::from_left(k_dual(m.as_left()).reinterpret(&enveloping(&aop))?)?;
        let res_op = bimodule_resolution(&aop, max_degree + 1);
        let hom = hh_homology_with(&res_op, &coeff, max_degree)?;
        let rhs = self.z_dual(&hom)?;
        let mut report = self.report("hoc-twist", max_degree).with_search(seed, trials);
        compare_graded(&mut report, &lhs, &rhs, seed, trials)?;
        Ok(report.finish())
    }

    /// `Ext^i_{A^e}(A, A^e)` against `Ext^i_{A^op}(R_A, A)`.
    pub fn verify_vdb(&self, max_degree: usize) -> Result<VerificationReport> {
        let a = &self.algebra;
        let res = self.bimodule_resolution(max_degree + 1);
        let lhs = ext_with(&res, &regular_left(&enveloping(a)), max_degree, None)?.dims();
        let aop = opposite(a);
        let r_right = self.r_right().reinterpret(&aop)?;
        let rhs = ext(&r_right, &regular_left(&aop), max_degree, None)?.dims();
        let mut report = self.report("vdb", max_degree);
        for i in 0..=max_degree {
            report.compare(i, lhs[i], rhs[i], Verdict::DimsOnly);
        }
        Ok(report.finish())
    }

    /// For commutative `A`: `Ext^i_A(D(m), n)` against `HH^i(A; m ⊗ n)`.
    pub fn commutative_crosscheck(&self, m: &LeftModule, n: &LeftModule, max_degree: usize) -> Result<VerificationReport> {
        let a = &self.algebra;
        if !a.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let nr = RightModule::from_opposite(n.reinterpret(&opposite(a))?);
        let res = self.bimodule_resolution(max_degree + 1);
        let lhs = hh_cohomology_with(&res, &tensor_k(m, &nr)?, max_degree)?.dims();
        let dm = self.dualize(m)?.into_left().reinterpret(a)?;
        let rhs = ext(&dm, n, max_degree, None)?.dims();
        let mut report = self.report("commutative", max_degree);
        for i in 0..=max_degree {
            report.compare(i, lhs[i], rhs[i], Verdict::DimsOnly);
        }
        Ok(report.finish())
    }

    /// Records `HH_i(A; Hom_k(m, n))` against `Ext^i_{A^op}(D(m), D(n))^*`.
    /// Experimental: disagreement is reported, never a failure.
    pub fn probe_conjecture(&self, m: &LeftModule, n: &LeftModule, max_degree: usize) -> Result<VerificationReport> {
        let a = &self.algebra;
        let res = self.bimodule_resolution(max_degree + 1);
        let lhs = crate::hochschild::hh_homology_with(&res, &hom_k(m, n)?, max_degree)?.dims();
        let dm = self.dualize(m)?.into_left();
        let dn = self.dualize(n)?.into_left();
        let rhs = ext(&dm, &dn, max_degree, None)?.dims();
        let mut report = self.report("conjecture", max_degree);
        report.experimental = true;
        for i in 0..=max_degree {
            report.compare(i, lhs[i], rhs[i], Verdict::DimsOnly);
        }
        let agree = lhs == rhs;
        report.note(if agree { "agreement" } else { "disagreement" });
        if m == &regular_left(a) && n == &regular_left(a) {
            let expected: Vec<usize> = (0..=max_degree).map(|i| if i == 0 { a.dim() } else { 0 }).collect();
            report.note(if lhs == expected {
                "Tor^{A^e}(A, Hom_k(A,A)) is R_A in degree 0"
            } else {
                "Tor^{A^e}(A, Hom_k(A,A)) differs from R_A in degree 0"
            });
        }
        Ok(report.finish())
    }
}

fn iso_verdict(o: &IsoOutcome) -> Verdict {
    match o {
        IsoOutcome::Yes(_) => Verdict::Yes,
        IsoOutcome::No(_) => Verdict::Mismatch,
        IsoOutcome::Unknown => Verdict::Unknown,
    }
}

/// Degreewise dimension comparison followed by a residual-module isomorphism search.
fn compare_graded(report: &mut VerificationReport, lhs: &GradedModule, rhs: &GradedModule, seed: u64, trials: u32) -> Result<()> {
    for (i, (l, r)) in lhs.pieces().iter().zip(rhs.pieces()).enumerate() {
        if l.dim() != r.dim() {
            report.compare(i, l.dim(), r.dim(), Verdict::Mismatch);
            continue;
        }
        let iso = is_isomorphic_with_retry(&l.module, &r.module, seed.wrapping_add(i as u64), trials)?;
        if let IsoOutcome::No(why) = &iso.outcome {
            report.fail(format!("degree {i}: not isomorphic as Z(A)-modules ({why})"));
            report.compare(i, l.dim(), r.dim(), Verdict::Unknown);
        } else {
            report.compare(i, l.dim(), r.dim(), iso_verdict(&iso.outcome));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::isocheck::is_isomorphic;
    use crate::random::random_module;
    use crate::report::Outcome;

    const CORPUS: [&str; 7] = [
        "field",
        "product_of_fields(2)",
        "dual_numbers(2)",
        "dual_numbers(3)",
        "matrix(2)",
        "upper_triangular(2)",
        "exterior2",
    ];

    fn corpus() -> Vec<Algebra> {
        let mut v: Vec<Algebra> = CORPUS.iter().map(|s| builtin(s, 101).unwrap()).collect();
        v.push(builtin("group_algebra(C2)", 2).unwrap());
        v
    }

    fn simple_k(a: &Algebra) -> LeftModule {
        let f = a.field();
        let action = (0..a.dim())
            .map(|i| Mat::new(f, 1, 1, vec![a.unit()[i]]).unwrap())
            .collect();
        LeftModule::new(a.clone(), 1, action).unwrap()
    }

    #[test]
    fn rigid_dualizing_examples() {
        let k = builtin("field", 101).unwrap();
        let d = rigid_dualizing(&k).unwrap();
        assert_eq!(d.r_a().dim(), 1);
        let c = builtin("dual_numbers(3)", 101).unwrap();
        let d = rigid_dualizing(&c).unwrap();
        // commutative: left and right structures agree
        assert_eq!(d.r_left().actions(), d.r_right().actions());
        let m2 = builtin("matrix(2)", 101).unwrap();
        let d = rigid_dualizing(&m2).unwrap();
        let v = is_isomorphic(d.r_a().as_left(), regular_bimodule(&m2).as_left(), 0, 32).unwrap();
        assert!(v.is_yes());
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            assert_eq!(d.r_a().dim(), a.dim());
            assert_eq!(d.r_z().dim(), d.center().dim());
            assert_eq!(d.flags().rigidity, Flag::Unverified);
        }
    }

    #[test]
    fn enveloping_dualizer_identification() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            let e = d.enveloping_dualizer().unwrap();
            assert_eq!(e.outside.dim(), a.dim() * a.dim());
        }
    }

    #[test]
    fn rigidity_suite_on_corpus() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            let r = d.verify_dualizing_axioms(4).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{a:?}: {r:?}");
            let r = d.verify_rigidity(4, 0, 32).unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{a:?}: {r:?}");
            assert_eq!(r.degrees[0].verdict, Some(Verdict::Yes));
            assert_eq!(r.lhs_column()[1..], [0, 0, 0, 0]);
            let r = d.verify_condition3().unwrap();
            assert_eq!(r.outcome, Outcome::Pass, "{a:?}: {r:?}");
            assert_eq!(
                d.flags(),
                Flags {
                    axioms: Flag::Pass,
                    rigidity: Flag::Pass,
                    condition3: Flag::Pass
                }
            );
        }
    }

    #[test]
    fn dualize_examples() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            let reg = regular_left(&a);
            let dr = d.dualize(&reg).unwrap();
            let v = is_isomorphic(dr.as_left(), &d.r_right(), 0, 32).unwrap();
            assert!(v.is_yes(), "{a:?}");
            for seed in 0..4 {
                let m = random_module(&a, 4, seed);
                assert_eq!(d.dualize(&m).unwrap().dim(), m.dim());
                d.dual_comparison(&m).unwrap();
                let dd = d.dualize_op(&d.dualize(&m).unwrap()).unwrap();
                assert!(is_isomorphic(&dd, &m, seed, 32).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn biduality_and_hom_dual() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            assert!(d.verify_biduality(&LeftModule::zero(&a)).unwrap().passed());
            for seed in 0..5 {
                let m = random_module(&a, 4, seed);
                let r = d.verify_biduality(&m).unwrap();
                assert!(r.passed(), "{a:?} {seed}: {r:?}");
                let n = random_module(&a, 4, seed + 50);
                let r = d.verify_hom_dual(&m, &n, 3, seed, 32).unwrap();
                assert!(r.passed(), "{a:?} {seed}: {r:?}");
            }
        }
        let dn = builtin("dual_numbers(2)", 101).unwrap();
        let d = rigid_dualizing(&dn).unwrap();
        let k = simple_k(&dn);
        let r = d.verify_hom_dual(&k, &k, 4, 0, 32).unwrap();
        assert_eq!(r.lhs_column(), vec![1; 5]);
    }

    #[test]
    fn sep_on_random_pairs() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            for seed in 0..3 {
                let m = random_module(&a, 4, seed);
                let n = RightModule::from_opposite(random_module(&opposite(&a), 4, seed + 9));
                let r = d.verify_sep(&m, &n, 2).unwrap();
                assert!(r.passed(), "{a:?} {seed}: {r:?}");
                assert_eq!(r.lhs_column()[0], m.dim() * n.dim());
            }
        }
    }

    #[test]
    fn main_isomorphism_examples() {
        let dn = builtin("dual_numbers(2)", 101).unwrap();
        let d = rigid_dualizing(&dn).unwrap();
        let k = simple_k(&dn);
        let kr = RightModule::from_opposite(k.reinterpret(&opposite(&dn)).unwrap());
        let r = d.verify_main(&k, &kr, 4, 0, 32).unwrap();
        assert!(r.passed() && r.all_yes(), "{r:?}");
        let bar = crate::hochschild::hh_cohomology_bar(&dn, &tensor_k(&k, &kr).unwrap(), 4).unwrap();
        assert_eq!(r.lhs_column(), bar);
        let m2 = builtin("matrix(2)", 101).unwrap();
        let d = rigid_dualizing(&m2).unwrap();
        let m = random_module(&m2, 4, 1);
        let n = RightModule::from_opposite(random_module(&opposite(&m2), 4, 2));
        let r = d.verify_main(&m, &n, 4, 0, 32).unwrap();
        assert!(r.passed() && r.all_yes(), "{r:?}");
        assert_eq!(r.lhs_column()[1..], [0, 0, 0, 0]);
    }

    #[test]
    fn main_and_twist_on_corpus() {
        for a in corpus() {
            let d = rigid_dualizing(&a).unwrap();
            for seed in 0..2 {
                let m = random_module(&a, 4, seed);
                let n = RightModule::from_opposite(random_module(&opposite(&a), 4, seed + 3));
                let r = d.verify_main(&m, &n, 3, seed, 32).unwrap();
                assert!(r.passed() && r.all_yes(), "{a:?} {seed}: {r:?}");
            }
            let r = d.verify_hoc_twist(&regular_bimodule(&a), 3, 0, 32).unwrap();
            assert!(r.passed() && r.all_yes(), "{a:?}: {r:?}");
            let env = enveloping(&a);
            let b = Bimodule::from_left(random_module(&env, 4, 11)).unwrap();
            let r = d.verify_hoc_twist(&b, 3, 0, 32).unwrap();
            assert!(r.passed() && r.all_yes(), "{a:?}: {r:?}");
        }
    }

    #[test]
    fn vdb_and_commutative_crosscheck() {
        for spec in ["upper_triangular(2)", "dual_numbers(2)", "matrix(2)", "field"] {
            let a = builtin(spec, 101).unwrap();
            let d = rigid_dualizing(&a).unwrap();
            let r = d.verify_vdb(4).unwrap();
            assert!(r.passed(), "{spec}: {r:?}");
        }
        for spec in ["field", "product_of_fields(2)", "dual_numbers(2)", "dual_numbers(3)"] {
            let a = builtin(spec, 101).unwrap();
            let d = rigid_dualizing(&a).unwrap();
            for seed in 0..3 {
                let m = random_module(&a, 4, seed);
                let n = random_module(&a, 4, seed + 1);
                let r = d.commutative_crosscheck(&m, &n, 4).unwrap();
                assert!(r.passed(), "{spec}: {r:?}");
            }
        }
        let m2 = builtin("matrix(2)", 101).unwrap();
        let d = rigid_dualizing(&m2).unwrap();
        let m = regular_left(&m2);
        assert_eq!(d.commutative_crosscheck(&m, &m, 1).unwrap_err(), Error::NotCommutative);
    }

    #[test]
    fn conjecture_probe() {
        for spec in ["field", "product_of_fields(2)", "dual_numbers(2)", "dual_numbers(3)"] {
            let a = builtin(spec, 101).unwrap();
            let d = rigid_dualizing(&a).unwrap();
            let reg = regular_left(&a);
            let r = d.probe_conjecture(&reg, &reg, 3).unwrap();
            assert_eq!(r.outcome, Outcome::Computed);
            assert!(r.experimental);
            let mut expected = vec![0; 4];
            expected[0] = a.dim();
            assert_eq!(r.lhs_column(), expected, "{spec}");
            assert!(r.notes.iter().any(|n| n == "agreement"), "{spec}: {r:?}");
        }
        let e = builtin("exterior2", 101).unwrap();
        let d = rigid_dualizing(&e).unwrap();
        let m = random_module(&e, 3, 1);
        let r = d.probe_conjecture(&m, &m, 3).unwrap();
        assert_eq!(r.degrees.len(), 4);
    }
}
