//! Seeded random systems for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::Monomial;
use crate::poly::LaurentPoly;
use crate::scalar::Field;

/// Seed from `TBB_SEED` when set, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("TBB_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exponent vectors of `Ball(r)` in `n` variables: the lattice points of the cross-polytope.
pub fn cross_polytope(n: usize, r: u32) -> Vec<Monomial> {
    crate::monomial::ball(n, r)
}

/// Exponent vectors of the box `[lo, hi]ⁿ`.
pub fn box_support(n: usize, lo: i32, hi: i32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (lo..=hi).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|e| Monomial::new(e)).collect()
}

/// A polynomial with uniformly random nonzero coefficients on `support`.
/// Over ℚ the coefficients are small integers.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, support: &[Monomial], field: Field) -> LaurentPoly {
    let mut p = LaurentPoly::zero(n);
    for m in support {
        let c = match field {
            Field::Prime(q) => field.from_i64(rng.gen_range(1..q) as i64),
            Field::Rational => {
                let v = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                field.from_i64(v)
            }
        };
        p.add_term(m.clone(), &c);
    }
    p
}

/// `n` generic polynomials with the full cross-polytope support of radius `r`.
pub fn generic_system(n: usize, r: u32, field: Field, seed: u64) -> Vec<LaurentPoly> {
    let mut g = rng(seed);
    let support = cross_polytope(n, r);
    (0..n).map(|_| random_poly(&mut g, n, &support, field)).collect()
}

/// `count` polynomials with random sparse supports inside `[-r, r]ⁿ`; each
/// support keeps every point with probability `density` and always contains 1.
pub fn random_sparse_system(n: usize, r: i32, count: usize, density: f64, field: Field, seed: u64) -> Vec<LaurentPoly> {
    let mut g = rng(seed);
    let all = box_support(n, -r, r);
    (0..count)
        .map(|_| {
            let mut support: Vec<Monomial> = all
                .iter()
                .filter(|m| m.is_one() || g.gen_bool(density))
                .cloned()
                .collect();
            if support.len() < 2 {
                support.push(all[g.gen_range(0..all.len())].clone());
            }
            random_poly(&mut g, n, &support, field)
        })
        .collect()
}
