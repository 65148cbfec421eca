//! Intertwiner spaces and randomized isomorphism search.
//!
//! For isomorphic modules of dimension `m` over GF(p), a uniformly random
//! element of the intertwiner space is invertible with probability at least
//! `1 - m/p` (the determinant is a nonzero polynomial of degree `m` on that
//! space). With `p = 101` and `m <= 16` each trial succeeds with probability
//! above 0.84, so 32 trials essentially never miss. Small fields weaken this
//! bound, hence the warning below `p = 17`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::module::{hom_over, LeftModule, Residual};

/// Basis of `Hom_B(m, n)` as `dim(n) x dim(m)` matrices.
pub fn hom_space(m: &LeftModule, n: &LeftModule) -> Result<Vec<Mat>> {
    let h = hom_over(m, n, Residual::None)?;
    Ok((0..h.dim()).map(|i| h.map(i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// An invertible intertwiner `n ← m`.
    Yes(Mat),
    /// Certified non-isomorphic, with the obstruction.
    No(String),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub outcome: IsoOutcome,
    pub trials_used: u32,
    pub seed: u64,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, IsoOutcome::Yes(_))
    }
}

/// Rank profile of single action matrices and of products of two.
fn rank_profile(m: &LeftModule) -> Vec<usize> {
    let acts = m.actions();
    let mut out: Vec<usize> = acts.iter().map(Mat::rank).collect();
    for x in acts {
        for y in acts {
            out.push(x.mul(y).rank());
        }
    }
    out
}

pub fn is_isomorphic(m: &LeftModule, n: &LeftModule, seed: u64, trials: u32) -> Result<IsoVerdict> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch("isomorphism test across algebras".into()));
    }
    let verdict = |outcome, trials_used| IsoVerdict {
        outcome,
        trials_used,
        seed,
    };
    if m.dim() != n.dim() {
        return Ok(verdict(
            IsoOutcome::No(format!("dimensions {} and {}", m.dim(), n.dim())),
            0,
        ));
    }
    if m.dim() == 0 {
        return Ok(verdict(IsoOutcome::Yes(Mat::zeros(m.field(), 0, 0)), 0));
    }
    if rank_profile(m) != rank_profile(n) {
        return Ok(verdict(IsoOutcome::No("action ranks differ".into()), 0));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(verdict(IsoOutcome::No("no nonzero intertwiners".into()), 0));
    }
    let f = m.field();
    if f.p() < 17 {
        log::warn!(
            "isomorphism search over GF({}) is weakly informative; rerun at a larger prime if the verdict is unknown",
            f.p()
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 1..=trials {
        let mut x = Mat::zeros(f, n.dim(), m.dim());
        for b in &basis {
            x.add_scaled(rng.gen_range(0..f.p()), b);
        }
        if x.rank() == m.dim() && intertwines(m, n, &x) {
            return Ok(verdict(IsoOutcome::Yes(x), t));
        }
    }
    Ok(verdict(IsoOutcome::Unknown, trials))
}

/// [`is_isomorphic`], retried once with four times the trials on `Unknown`.
pub fn is_isomorphic_with_retry(m: &LeftModule, n: &LeftModule, seed: u64, trials: u32) -> Result<IsoVerdict> {
    let first = is_isomorphic(m, n, seed, trials)?;
    if first.outcome != IsoOutcome::Unknown {
        return Ok(first);
    }
    let mut second = is_isomorphic(m, n, seed.wrapping_add(1), trials.saturating_mul(4))?;
    second.trials_used = second.trials_used.saturating_add(first.trials_used);
    Ok(second)
}

fn intertwines(m: &LeftModule, n: &LeftModule, x: &Mat) -> bool {
    m.actions()
        .iter()
        .zip(n.actions())
        .all(|(a, b)| x.mul(a) == b.mul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::module::{direct_sum, regular_left};
    use crate::random::random_module;

    fn simple_k(a: &crate::Algebra) -> LeftModule {
        let f = a.field();
        let action = (0..a.dim())
            .map(|i| Mat::new(f, 1, 1, vec![a.unit()[i]]).unwrap())
            .collect();
        LeftModule::new(a.clone(), 1, action).unwrap()
    }

    #[test]
    fn self_isomorphism_is_found() {
        let a = builtin("exterior2", 101).unwrap();
        let m = random_module(&a, 4, 2);
        let v = is_isomorphic(&m, &m, 0, 32).unwrap();
        assert!(v.is_yes());
        assert_eq!(v.trials_used, 1);
    }

    #[test]
    fn dimension_and_rank_obstructions() {
        let a = builtin("dual_numbers(2)", 101).unwrap();
        let k = simple_k(&a);
        let kk = direct_sum(&[&k, &k]).unwrap();
        let reg = regular_left(&a);
        let v = is_isomorphic(&kk, &reg, 0, 32).unwrap();
        assert_eq!(v.outcome, IsoOutcome::No("action ranks differ".into()));
        let v = is_isomorphic(&k, &reg, 0, 32).unwrap();
        assert!(matches!(v.outcome, IsoOutcome::No(_)));
    }

    #[test]
    fn schur_and_field_cases() {
        let p = builtin("product_of_fields(2)", 101).unwrap();
        let f = p.field();
        let s0 = LeftModule::new(p.clone(), 1, vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)]).unwrap();
        let s1 = LeftModule::new(p, 1, vec![Mat::zeros(f, 1, 1), Mat::identity(f, 1)]).unwrap();
        assert!(hom_space(&s0, &s1).unwrap().is_empty());
        let k = builtin("field", 101).unwrap();
        let m = LeftModule::new(k.clone(), 2, vec![Mat::identity(f, 2)]).unwrap();
        let n = LeftModule::new(k, 3, vec![Mat::identity(f, 3)]).unwrap();
        assert_eq!(hom_space(&m, &n).unwrap().len(), 6);
    }

    #[test]
    fn witnesses_reverify_and_are_deterministic() {
        let a = builtin("upper_triangular(2)", 101).unwrap();
        for seed in 0..10 {
            let m = random_module(&a, 4, seed);
            let p = Mat::from_rows(a.field(), &(0..m.dim())
                .map(|i| (0..m.dim()).map(|j| if i == j { 1 } else if j == i + 1 { seed as i64 + 2 } else { 0 }).collect())
                .collect::<Vec<_>>())
            .unwrap();
            let n = m.change_basis(&p).unwrap();
            let v = is_isomorphic_with_retry(&m, &n, seed, 32).unwrap();
            let IsoOutcome::Yes(x) = &v.outcome else { panic!("seed {seed}: {v:?}") };
            assert_eq!(x.rank(), m.dim());
            assert!(intertwines(&m, &n, x));
            assert_eq!(is_isomorphic(&m, &n, seed, 32).unwrap(), v);
        }
    }
}
