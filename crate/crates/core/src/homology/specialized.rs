use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gauss::rank_gauss;
use super::HomologyError;
use crate::algebra::{AlgebraError, Gf64, LaurentMonomial, UniRational};
use crate::complex::{GradedComplex, SparseMatrix};

pub const MAX_ATTEMPTS: u64 = 32;

/// Exponents `u -> t^k` drawn from `[1, 10 * #vars]` for attempt `attempt`.
pub fn draw_exponents(vars: usize, seed: u64, attempt: u64) -> Vec<i64> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    let hi = (10 * vars).max(1) as i64;
    (0..vars).map(|_| rng.gen_range(1..=hi)).collect()
}

pub fn specialize_complex(
    c: &GradedComplex,
    spec: &[i64],
) -> Result<BTreeMap<i64, SparseMatrix<UniRational>>, AlgebraError> {
    c.differentials
        .iter()
        .map(|(&d, m)| Ok((d, m.try_map(|circ| circ.specialize(spec))?)))
        .collect()
}

/// Differential ranks over GF(2)(t) under the first non-singular draw.
/// Returns the ranks by source degree and the attempt that succeeded.
pub fn specialized_ranks(
    c: &GradedComplex,
    seed: u64,
) -> Result<(BTreeMap<i64, usize>, u64), HomologyError> {
    for attempt in 0..MAX_ATTEMPTS {
        let spec = draw_exponents(c.vars.len(), seed, attempt);
        let mats = match specialize_complex(c, &spec) {
            Ok(m) => m,
            Err(AlgebraError::SpecializationSingular) => continue,
            Err(e) => return Err(e.into()),
        };
        let ranks = mats
            .par_iter()
            .map(|(&d, m)| Ok((d, rank_gauss(m)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        return Ok((ranks, attempt));
    }
    Err(HomologyError::SpecializationFailed(MAX_ATTEMPTS))
}

/// `1/(1 + a^k) + 1/(1 + a^m)` at a point of GF(2^64).
fn psi_at(a: Gf64, k: i64, m: i64) -> Result<Gf64, AlgebraError> {
    let frac = |k: i64| {
        let x = a.powi(k).ok_or(AlgebraError::SpecializationSingular)?;
        x.add(Gf64::ONE)
            .inv()
            .ok_or(AlgebraError::SpecializationSingular)
    };
    Ok(frac(k)?.add(frac(m)?))
}

/// Differential ranks after `u -> t^k` and then `t -> a` for a random
/// nonzero `a` in GF(2^64). Any such rank is at most the rank over
/// GF(2)(t), so the cohomology ranks stay upper bounds.
pub fn evaluated_ranks(
    c: &GradedComplex,
    seed: u64,
) -> Result<(BTreeMap<i64, usize>, u64), HomologyError> {
    for attempt in 0..MAX_ATTEMPTS {
        let spec = draw_exponents(c.vars.len(), seed, attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ attempt.rotate_left(32) ^ 0x6766_3634);
        let a = Gf64(rng.gen_range(2..=u64::MAX));
        let exp = |m: &LaurentMonomial| m.specialize(&spec);
        let mats = c
            .differentials
            .iter()
            .map(|(&d, m)| {
                Ok((
                    d,
                    m.try_map(|circ| psi_at(a, exp(&circ.alpha), exp(&circ.beta)))?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>();
        let mats = match mats {
            Ok(m) => m,
            Err(AlgebraError::SpecializationSingular) => continue,
            Err(e) => return Err(e.into()),
        };
        let ranks = mats
            .par_iter()
            .map(|(&d, m)| Ok((d, rank_gauss(m)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        return Ok((ranks, attempt));
    }
    Err(HomologyError::SpecializationFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_seeded_and_in_range() {
        let a = draw_exponents(5, 7, 0);
        assert_eq!(a, draw_exponents(5, 7, 0));
        assert_ne!(a, draw_exponents(5, 7, 1));
        assert!(a.iter().all(|&k| (1..=50).contains(&k)));
        assert_eq!(draw_exponents(0, 7, 0), Vec::<i64>::new());
    }

    #[test]
    fn point_coefficients() {
        let a = Gf64(0x1234_5678_9abc_def1);
        assert_eq!(psi_at(a, 3, 3).unwrap(), Gf64::ZERO);
        assert_eq!(psi_at(a, 0, 1), Err(AlgebraError::SpecializationSingular));
        // 1/(1+x) + 1/(1+1/x) = 1
        assert_eq!(psi_at(a, 5, -5).unwrap(), Gf64::ONE);
    }
}
