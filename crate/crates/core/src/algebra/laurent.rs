use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::AlgebraError;

/// A monomial with signed integer exponents, stored sparsely.
///
/// The empty exponent list is the monomial 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LaurentMonomial {
    exps: Vec<(usize, i32)>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: usize) -> Self {
        LaurentMonomial { exps: vec![(v, 1)] }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut v: Vec<(usize, i32)> = exps.into_iter().collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|e| e.1 != 0);
        LaurentMonomial { exps: out }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, i32)] {
        &self.exps
    }

    pub fn exponent(&self, v: usize) -> i32 {
        self.exps
            .binary_search_by_key(&v, |e| e.0)
            .map_or(0, |i| self.exps[i].1)
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        Self::from_exponents(self.exps.iter().chain(other.exps.iter()).copied())
    }

    pub fn inv(&self) -> LaurentMonomial {
        LaurentMonomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn div(&self, other: &LaurentMonomial) -> LaurentMonomial {
        self.mul(&other.inv())
    }

    /// Per-variable minimum of exponents (treating absent variables as 0).
    pub fn meet(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut vars: Vec<usize> = self
            .exps
            .iter()
            .chain(other.exps.iter())
            .map(|e| e.0)
            .collect();
        vars.sort_unstable();
        vars.dedup();
        Self::from_exponents(
            vars.into_iter()
                .map(|v| (v, self.exponent(v).min(other.exponent(v)))),
        )
    }

    /// Splits into `(numerator, denominator)` packed monomials with disjoint support.
    pub fn split(&self) -> Result<(Monomial, Monomial), AlgebraError> {
        let pos: Vec<(usize, u32)> = self
            .exps
            .iter()
            .filter(|e| e.1 > 0)
            .map(|&(v, e)| (v, e as u32))
            .collect();
        let neg: Vec<(usize, u32)> = self
            .exps
            .iter()
            .filter(|e| e.1 < 0)
            .map(|&(v, e)| (v, (-e) as u32))
            .collect();
        Ok((
            Monomial::from_exponents(&pos)?,
            Monomial::from_exponents(&neg)?,
        ))
    }

    /// Exponent of `t` after substituting each variable `v` by `t^spec[v]`.
    pub fn specialize(&self, spec: &[i64]) -> i64 {
        self.exps.iter().map(|&(v, e)| spec[v] * e as i64).sum()
    }

    pub fn rename(&self, map: &[usize]) -> LaurentMonomial {
        Self::from_exponents(self.exps.iter().map(|&(v, e)| (map[v], e)))
    }

    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    name(v)
                } else {
                    format!("{}^{}", name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl From<&Monomial> for LaurentMonomial {
    fn from(m: &Monomial) -> Self {
        LaurentMonomial {
            exps: m.exponents().map(|(v, e)| (v, e as i32)).collect(),
        }
    }
}

impl fmt::Debug for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LaurentMonomial::from_exponents([(0, 2), (3, -1)]);
        let b = LaurentMonomial::from_exponents([(3, 1), (1, -4)]);
        assert_eq!(
            a.mul(&b),
            LaurentMonomial::from_exponents([(0, 2), (1, -4)])
        );
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(
            a.meet(&b),
            LaurentMonomial::from_exponents([(1, -4), (3, -1)])
        );
        let (p, n) = a.split().unwrap();
        assert_eq!(p, Monomial::from_exponents(&[(0, 2)]).unwrap());
        assert_eq!(n, Monomial::from_exponents(&[(3, 1)]).unwrap());
        assert_eq!(a.specialize(&[2, 0, 0, 5]), -1);
    }
}
