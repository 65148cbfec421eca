//! Hochschild cohomology and homology with coefficients in a bimodule, and
//! the comparisons with Ext and Tor over `A` itself.
//!
//! `HH^n(A; M) = Ext^n_{A^e}(A, M)` and `HH_n(A; M) = Tor_n^{A^e}(M, A)`,
//! where `M` is a right `A^e`-module through `m · (x ⊗ y) = y m x`. Both are
//! computed from one free resolution of `A` over `A^e`. The center acts
//! through the coefficients, `z ↦ (z ⊗ 1)` on `M`.

use crate::algebra::{opposite, Algebra};
use crate::error::Result;
use crate::exactla::Mat;
use crate::module::{
    central_structure, hom_k, regular_bimodule, tensor_k, tensor_over, Bimodule, LeftModule,
    Residual, RightModule,
};
use crate::report::{VerificationReport, Verdict};
use crate::resolve::{bar_resolution, ext, ext_with, projective_resolution, tor, tor_with, GradedModule, Resolution};

/// A free resolution of `A` over `A^e` of length `len`.
pub fn bimodule_resolution(a: &Algebra, len: usize) -> Resolution {
    projective_resolution(regular_bimodule(a).as_left(), len)
}

/// `m` as a module over `(A^e)^op`, i.e. a right `A^e`-module, via `x ⊗ y ↦ y ⊗ x`.
pub fn swap_sides(m: &Bimodule) -> LeftModule {
    let d = m.base().dim();
    let action = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| m.as_left().action(j * d + i).clone())
        .collect();
    LeftModule::new_unchecked(opposite(m.as_left().algebra()), m.dim(), action)
}

pub fn hh_cohomology(a: &Algebra, m: &Bimodule, max_degree: usize) -> Result<GradedModule> {
    hh_cohomology_with(&bimodule_resolution(a, max_degree + 1), m, max_degree)
}

pub fn hh_cohomology_with(res: &Resolution, m: &Bimodule, max_degree: usize) -> Result<GradedModule> {
    let z = central_structure(m)?;
    ext_with(res, m.as_left(), max_degree, Some(z.module()))
}

pub fn hh_homology(a: &Algebra, m: &Bimodule, max_degree: usize) -> Result<GradedModule> {
    hh_homology_with(&bimodule_resolution(a, max_degree + 1), m, max_degree)
}

pub fn hh_homology_with(res: &Resolution, m: &Bimodule, max_degree: usize) -> Result<GradedModule> {
    let z = central_structure(m)?;
    tor_with(res, &swap_sides(m), max_degree, Some(z.module()))
}

/// HH^n dims through the bar resolution.
pub fn hh_cohomology_bar(a: &Algebra, m: &Bimodule, max_degree: usize) -> Result<Vec<usize>> {
    let bar = bar_resolution(a, max_degree + 1)?;
    Ok(ext_with(&bar, m.as_left(), max_degree, None)?.dims())
}

/// HH_n dims through the bar resolution.
pub fn hh_homology_bar(a: &Algebra, m: &Bimodule, max_degree: usize) -> Result<Vec<usize>> {
    let bar = bar_resolution(a, max_degree + 1)?;
    Ok(tor_with(&bar, &swap_sides(m), max_degree, None)?.dims())
}

/// Compares `HH^n(A; Hom_k(m, n))` with `Ext^n_A(m, n)` degreewise.
pub fn verify_ce_cohomology(a: &Algebra, m: &LeftModule, n: &LeftModule, max_degree: usize) -> Result<VerificationReport> {
    let h = hom_k(m, n)?;
    let lhs = hh_cohomology(a, &h, max_degree)?.dims();
    let rhs = ext(m, n, max_degree, None)?.dims();
    let mut report = VerificationReport::new("ce-cohomology", a).with_bound(max_degree);
    for (i, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        report.compare(i, l, r, Verdict::DimsOnly);
    }
    Ok(report.finish())
}

/// Compares `HH_n(A; m ⊗_k n)` with `Tor_n^A(n, m)` degreewise, and checks
/// the degree-0 map `A ⊗_{A^e} (m ⊗ n) → n ⊗_A m`, `a ⊗ v ⊗ w ↦ w ⊗ a v`,
/// is a well-defined bijection.
pub fn verify_ce_homology(a: &Algebra, m: &LeftModule, n: &RightModule, max_degree: usize) -> Result<VerificationReport> {
    let t = tensor_k(m, n)?;
    let lhs = hh_homology(a, &t, max_degree)?.dims();
    let rhs = tor(n, m, max_degree, Residual::None)?.dims();
    let mut report = VerificationReport::new("ce-homology", a).with_bound(max_degree);
    for (i, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        report.compare(i, l, r, Verdict::DimsOnly);
    }
    match degree_zero_map(a, m, n)? {
        true => report.note("degree-0 map a⊗v⊗w ↦ w⊗av is bijective"),
        false => report.fail("degree-0 map a⊗v⊗w ↦ w⊗av is not a bijection"),
    }
    Ok(report.finish())
}

fn degree_zero_map(a: &Algebra, m: &LeftModule, n: &RightModule) -> Result<bool> {
    let t = tensor_k(m, n)?;
    let a_right = RightModule::from_opposite(swap_sides(&regular_bimodule(a)));
    let lhs = tensor_over(&a_right, t.as_left(), Residual::None)?;
    let rhs = tensor_over(n, m, Residual::None)?;
    let (d, p, q) = (a.dim(), m.dim(), n.dim());
    let f = a.field();
    let mut phi = Mat::zeros(f, q * p, d * p * q);
    for alpha in 0..d {
        let act = m.action(alpha);
        for v in 0..p {
            for w in 0..q {
                let col = alpha * p * q + v * q + w;
                for v2 in 0..p {
                    let c = act.get(v2, v);
                    if c != 0 {
                        phi.set(w * p + v2, col, c);
                    }
                }
            }
        }
    }
    Ok(match lhs.space.induced_to(&rhs.space, &phi) {
        Some(induced) => induced.is_square() && induced.rank() == induced.rows(),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, center};
    use crate::module::{k_dual, regular_left, ModuleMorphism};
    use crate::random::random_module;
    use crate::report::Outcome;

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
    fn hh_of_the_field() {
        let k = builtin("field", 101).unwrap();
        let r = regular_bimodule(&k);
        assert_eq!(hh_cohomology(&k, &r, 4).unwrap().dims(), vec![1, 0, 0, 0, 0]);
        assert_eq!(hh_homology(&k, &r, 4).unwrap().dims(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn hh_of_m2_is_concentrated() {
        let a = builtin("matrix(2)", 101).unwrap();
        let r = regular_bimodule(&a);
        assert_eq!(hh_cohomology(&a, &r, 5).unwrap().dims(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(hh_homology(&a, &r, 4).unwrap().dims(), vec![1, 0, 0, 0, 0]);
    }

    /// `k[x]/(x^2)` in odd characteristic: the bar complex gives
    /// `HH^n = HH_n = k` for `n >= 1` and `A` in degree 0.
    #[test]
    fn hh_of_dual_numbers_matches_bar() {
        let a = builtin("dual_numbers(2)", 101).unwrap();
        let r = regular_bimodule(&a);
        let coh = hh_cohomology(&a, &r, 4).unwrap().dims();
        let hom = hh_homology(&a, &r, 4).unwrap().dims();
        assert_eq!(coh, hh_cohomology_bar(&a, &r, 4).unwrap());
        assert_eq!(hom, hh_homology_bar(&a, &r, 4).unwrap());
        assert_eq!(coh, vec![2, 1, 1, 1, 1]);
        assert_eq!(hom, vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn hh0_is_the_center_on_builtins() {
        for spec in ["field", "product_of_fields(2)", "dual_numbers(3)", "matrix(2)", "upper_triangular(2)", "exterior2"] {
            let a = builtin(spec, 101).unwrap();
            let h = hh_cohomology(&a, &regular_bimodule(&a), 0).unwrap();
            assert_eq!(h.dims()[0], center(&a).0.dim(), "{spec}");
        }
        let g = builtin("group_algebra(C2)", 2).unwrap();
        assert_eq!(hh_cohomology(&g, &regular_bimodule(&g), 0).unwrap().dims(), vec![2]);
    }

    #[test]
    fn z_action_on_hh_is_a_module() {
        let a = builtin("exterior2", 101).unwrap();
        let r = regular_bimodule(&a);
        let g = hh_cohomology(&a, &r, 2).unwrap();
        let (z, _) = center(&a);
        for piece in g.pieces() {
            let m = &piece.module;
            LeftModule::new(z.clone(), m.dim(), m.actions().to_vec()).unwrap();
        }
    }

    #[test]
    fn ce_examples() {
        let d = builtin("dual_numbers(2)", 101).unwrap();
        let k = simple_k(&d);
        let r = verify_ce_cohomology(&d, &k, &k, 5).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.lhs_column(), vec![1; 6]);
        let r = verify_ce_homology(&d, &k, &k_right(&d), 5).unwrap();
        assert_eq!(r.outcome, Outcome::Pass, "{r:?}");
        assert_eq!(r.lhs_column(), vec![1; 6]);
        let m2 = builtin("matrix(2)", 101).unwrap();
        let m = random_module(&m2, 4, 1);
        let n = random_module(&m2, 4, 2);
        let r = verify_ce_cohomology(&m2, &m, &n, 3).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.lhs_column()[1..], [0, 0, 0]);
        let f = builtin("field", 101).unwrap();
        let x = random_module(&f, 3, 0);
        let y = random_module(&f, 3, 1);
        let r = verify_ce_homology(&f, &x, &RightModule::from_opposite(k_dual(&y)), 2).unwrap();
        assert_eq!(r.lhs_column()[0], x.dim() * y.dim());
    }

    #[test]
    fn ce_on_random_pairs() {
        for spec in ["upper_triangular(2)", "exterior2", "dual_numbers(3)"] {
            let a = builtin(spec, 101).unwrap();
            for seed in 0..3 {
                let m = random_module(&a, 4, seed);
                let n = random_module(&a, 4, seed + 100);
                let r = verify_ce_cohomology(&a, &m, &n, 3).unwrap();
                assert_eq!(r.outcome, Outcome::Pass, "{spec} {seed}: {r:?}");
                let nr = RightModule::from_opposite(random_module(&opposite(&a), 4, seed + 200));
                let r = verify_ce_homology(&a, &m, &nr, 3).unwrap();
                assert_eq!(r.outcome, Outcome::Pass, "{spec} {seed}: {r:?}");
            }
        }
    }

    /// A morphism `φ: m → m'` acts on `Hom_A(m', n) → Hom_A(m, n)` and on
    /// `HH^0(A; Hom_k(m', n)) → HH^0(A; Hom_k(m, n))` by precomposition; the
    /// identification of both with invariant maps makes the square commute.
    #[test]
    fn degree_zero_functoriality() {
        let a = builtin("upper_triangular(2)", 101).unwrap();
        let m = random_module(&a, 3, 4);
        let reg = regular_left(&a);
        // φ: A → m, 1 ↦ v, is A-linear for any v
        let v: Vec<u32> = (0..m.dim() as u32).map(|i| i + 1).collect();
        let cols: Vec<Vec<u32>> = (0..3).map(|b| m.action(b).mul_vec(&v)).collect();
        let phi = ModuleMorphism::new(reg.clone(), m.clone(), Mat::from_columns(a.field(), m.dim(), &cols)).unwrap();
        let n = random_module(&a, 3, 9);
        let hom_mn = crate::module::hom_over(&m, &n, Residual::None).unwrap();
        let hom_an = crate::module::hom_over(&reg, &n, Residual::None).unwrap();
        let hh_m = hh_cohomology(&a, &hom_k(&m, &n).unwrap(), 0).unwrap();
        let hh_a = hh_cohomology(&a, &hom_k(&reg, &n).unwrap(), 0).unwrap();
        assert_eq!(hh_m.dims()[0], hom_mn.dim());
        assert_eq!(hh_a.dims()[0], hom_an.dim());
        // precomposition with φ maps every A-linear map m → n to one A → n
        for i in 0..hom_mn.dim() {
            let g = hom_mn.map(i).mul(phi.matrix());
            assert!(hom_an.basis.solve(g.data()).unwrap().is_some());
        }
    }
}
