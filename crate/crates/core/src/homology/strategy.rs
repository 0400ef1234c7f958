use std::collections::BTreeMap;

use rayon::prelude::*;

use super::cancel::cancellation_reduce;
use super::gauss::rank_exact;
use super::report::{certify, Certification, Field, HomologyReport, Mode};
use super::specialized::{evaluated_ranks, specialized_ranks};
use super::HomologyError;
use crate::algebra::AlgebraError;
use crate::complex::GradedComplex;

pub const DEFAULT_SEED: u64 = 1729;

/// Total nonzero entries above which `auto` refuses the exact fallback.
pub const DEFAULT_EXACT_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub exact_limit: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

fn state_counts(c: &GradedComplex) -> BTreeMap<i64, usize> {
    c.states.iter().map(|(&d, s)| (d, s.len())).collect()
}

pub trait RankStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(
        &self,
        c: &GradedComplex,
        opts: &RunOptions,
    ) -> Result<HomologyReport, HomologyError>;
}

/// Exact elimination over the rational function field, one matrix per degree.
pub struct ExactStrategy;

impl RankStrategy for ExactStrategy {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn compute(&self, c: &GradedComplex, _: &RunOptions) -> Result<HomologyReport, HomologyError> {
        let mats = c.coefficient_matrices()?;
        let ranks = mats
            .par_iter()
            .map(|(&d, m)| Ok((d, rank_exact(m)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        Ok(HomologyReport::from_ranks(
            state_counts(c),
            &ranks,
            Mode::Exact,
            Certification::Exact,
            None,
        ))
    }
}

/// Ranks over GF(2)(t) after `u -> t^k`; per-degree upper bounds until certified.
pub struct SpecializedStrategy;

impl RankStrategy for SpecializedStrategy {
    fn name(&self) -> &'static str {
        "specialized"
    }

    fn compute(
        &self,
        c: &GradedComplex,
        opts: &RunOptions,
    ) -> Result<HomologyReport, HomologyError> {
        let (ranks, _) = specialized_ranks(c, opts.seed)?;
        let r = HomologyReport::from_ranks(
            state_counts(c),
            &ranks,
            Mode::Specialized,
            Certification::UpperBoundOnly,
            Some(opts.seed),
        );
        Ok(certify(&r, r.euler))
    }
}

/// The specialized complex further evaluated at a random point of GF(2^64).
pub struct EvaluatedStrategy;

impl RankStrategy for EvaluatedStrategy {
    fn name(&self) -> &'static str {
        "evaluated"
    }

    fn compute(
        &self,
        c: &GradedComplex,
        opts: &RunOptions,
    ) -> Result<HomologyReport, HomologyError> {
        let (ranks, _) = evaluated_ranks(c, opts.seed)?;
        let mut r = HomologyReport::from_ranks(
            state_counts(c),
            &ranks,
            Mode::Specialized,
            Certification::UpperBoundOnly,
            Some(opts.seed),
        );
        r.field = Field::Point;
        Ok(certify(&r, r.euler))
    }
}

/// Exact cancellation of invertible entries until the differential vanishes.
pub struct CancelStrategy;

impl RankStrategy for CancelStrategy {
    fn name(&self) -> &'static str {
        "cancel"
    }

    fn compute(&self, c: &GradedComplex, _: &RunOptions) -> Result<HomologyReport, HomologyError> {
        let reduced = cancellation_reduce(&state_counts(c), &c.coefficient_matrices()?)?;
        let states = state_counts(c);
        let euler = super::report::euler_characteristic(&states);
        Ok(HomologyReport {
            ranks: reduced.counts(),
            states,
            mode: Mode::Cancelled,
            field: Field::Rational,
            certification: Certification::Exact,
            euler,
            seed: None,
        })
    }
}

/// A specialization first, over GF(2)(t) when the complex is within the
/// exact limit and at a point otherwise; exact only when certification
/// fails and the complex is small enough.
pub struct AutoStrategy;

impl RankStrategy for AutoStrategy {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn compute(
        &self,
        c: &GradedComplex,
        opts: &RunOptions,
    ) -> Result<HomologyReport, HomologyError> {
        let size: usize = c.differentials.values().map(|m| m.nnz()).sum();
        let spec = if size > opts.exact_limit {
            EvaluatedStrategy.compute(c, opts)?
        } else {
            SpecializedStrategy.compute(c, opts)?
        };
        if spec.certification == Certification::CertifiedEqualToExact {
            return Ok(spec);
        }
        if size > opts.exact_limit {
            return Err(HomologyError::FallbackTooLarge {
                size,
                limit: opts.exact_limit,
            });
        }
        ExactStrategy.compute(c, opts)
    }
}

pub struct StrategyRegistry {
    strategies: Vec<Box<dyn RankStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        StrategyRegistry {
            strategies: vec![
                Box::new(ExactStrategy),
                Box::new(SpecializedStrategy),
                Box::new(EvaluatedStrategy),
                Box::new(CancelStrategy),
                Box::new(AutoStrategy),
            ],
        }
    }
}

impl StrategyRegistry {
    pub fn register(&mut self, s: Box<dyn RankStrategy>) {
        self.strategies.retain(|x| x.name() != s.name());
        self.strategies.push(s);
    }

    pub fn get(&self, name: &str) -> Option<&dyn RankStrategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn run(
        &self,
        name: &str,
        c: &GradedComplex,
        opts: &RunOptions,
    ) -> Result<HomologyReport, HomologyError> {
        self.get(name)
            .ok_or_else(|| HomologyError::UnknownStrategy(name.to_string()))?
            .compute(c, opts)
    }
}

/// Ranks with a named strategy from the default registry.
pub fn cohomology(
    c: &GradedComplex,
    mode: &str,
    opts: &RunOptions,
) -> Result<HomologyReport, HomologyError> {
    StrategyRegistry::default().run(mode, c, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::assemble;
    use crate::diagram::{braid_closure, build_tait, parse_pd, pretzel, ColorSide, LinkDiagram};

    fn complex(d: &LinkDiagram) -> GradedComplex {
        assemble(&build_tait(d, None, ColorSide::Normal).unwrap()).unwrap()
    }

    fn all_modes(d: &LinkDiagram) -> Vec<HomologyReport> {
        let c = complex(d);
        let reg = StrategyRegistry::default();
        reg.names()
            .iter()
            .map(|n| reg.run(n, &c, &RunOptions::default()).unwrap())
            .collect()
    }

    #[test]
    fn round_unknot() {
        for r in all_modes(&parse_pd("UNKNOT").unwrap()) {
            assert_eq!(r.support(), BTreeMap::from([(0, 1)]));
        }
    }

    #[test]
    fn modes_agree_on_small_diagrams() {
        for (s, w) in [
            (2, &[1, 1, 1][..]),
            (3, &[1, -2, 1, -2]),
            (3, &[1, 1, 1, -2, -1, -1, -1, -2]),
            (2, &[1, -1]),
        ] {
            let reports = all_modes(&braid_closure(s, w).unwrap());
            for r in &reports[1..] {
                assert_eq!(r.support(), reports[0].support(), "{w:?}");
            }
            assert_eq!(
                reports[0].total_rank() as i64,
                reports[0].euler.abs(),
                "{w:?}"
            );
        }
    }

    #[test]
    fn pretzel_8_19_is_thin() {
        let c = complex(&pretzel(&[3, 3, -2]).unwrap());
        let opts = RunOptions::default();
        let spec = SpecializedStrategy.compute(&c, &opts).unwrap();
        assert_eq!(spec.certification, Certification::CertifiedEqualToExact);
        let exact = ExactStrategy.compute(&c, &opts).unwrap();
        assert_eq!(exact.total_rank(), 3);
        assert_eq!(exact.support().len(), 1);
        assert!(exact.same_ranks(&spec));
    }

    #[test]
    fn fallback_guard() {
        // split clasp: specialized ranks are zero, euler zero, so it certifies
        let c = complex(&braid_closure(2, &[1, -1]).unwrap());
        let opts = RunOptions {
            seed: 3,
            exact_limit: 0,
        };
        assert_eq!(AutoStrategy.compute(&c, &opts).unwrap().total_rank(), 0);
    }

    #[test]
    fn unknown_strategy() {
        let c = complex(&parse_pd("UNKNOT").unwrap());
        assert!(matches!(
            cohomology(&c, "nope", &RunOptions::default()),
            Err(HomologyError::UnknownStrategy(_))
        ));
    }
}
