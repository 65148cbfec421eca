//! Seeded random modules for property tests and the `random:<dim>` CLI input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::exactla::{Mat, Subquotient};
use crate::module::{direct_sum, free_module, LeftModule};

/// A random nonzero module of dimension at most `max_dim` when one can be
/// found: a submodule or quotient of a small free module cut out by sparse
/// random vectors, occasionally a direct sum of two such.
pub fn random_module(a: &Algebra, max_dim: usize, seed: u64) -> LeftModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<LeftModule> = None;
    for _ in 0..64 {
        let m = if max_dim >= 2 && rng.gen_bool(0.2) {
            let x = candidate(a, &mut rng);
            let y = candidate(a, &mut rng);
            direct_sum(&[&x, &y]).expect("same algebra")
        } else {
            candidate(a, &mut rng)
        };
        if m.dim() == 0 {
            continue;
        }
        if m.dim() <= max_dim {
            return m;
        }
        if best.as_ref().is_none_or(|b| m.dim() < b.dim()) {
            best = Some(m);
        }
    }
    best.unwrap_or_else(|| LeftModule::zero(a))
}

fn candidate(a: &Algebra, rng: &mut ChaCha8Rng) -> LeftModule {
    let f = a.field();
    let g = rng.gen_range(1..=2);
    let free = free_module(a, g);
    let n = free.dim();
    let count = rng.gen_range(1..=2);
    let mut images = Vec::new();
    for _ in 0..count {
        let mut v: Vec<u32> = (0..n)
            .map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..f.p()) } else { 0 })
            .collect();
        // a generic vector tends to generate a free summand
        if rng.gen_bool(0.5) {
            v = free.action(rng.gen_range(0..a.dim())).mul_vec(&v);
        }
        for act in free.actions() {
            images.push(act.mul_vec(&v));
        }
    }
    let sub = Mat::from_columns(f, n, &images).column_space_basis();
    if rng.gen_bool(0.5) {
        free.restrict_to_subspace(&sub)
            .expect("generated subspaces are submodules")
    } else {
        free.on_subquotient(&Subquotient::cokernel(&sub))
            .expect("quotient by a submodule")
    }
}
