use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use super::monomial::{lanes_fit, max_lanes, Monomial};
use super::AlgebraError;

/// A polynomial over GF(2) with non-negative exponents.
///
/// Every coefficient is 1, so a polynomial is a set of monomials. Terms are
/// stored in strictly decreasing graded-lexicographic order; the first term is
/// the leading term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::from(Monomial::ONE)
    }

    /// Builds a polynomial from arbitrary terms; repeated terms cancel in pairs.
    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            if out.last() == Some(&t) {
                out.pop();
            } else {
                out.push(t);
            }
        }
        Polynomial { terms: out }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |m| m.degree())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_mul(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial { terms })
    }

    /// Sparse product by a heap merge over the rows of the smaller operand.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let (a, b) = if self.len() <= other.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        if a.is_empty() {
            return Ok(Polynomial::zero());
        }
        if a.len() == 1 {
            return self_mul_single(b, &a[0]);
        }
        if !lanes_fit(&max_lanes(a), &max_lanes(b)) {
            return Err(AlgebraError::ExponentOverflow);
        }

        let mut heap: BinaryHeap<(Monomial, u32, u32)> = BinaryHeap::with_capacity(a.len());
        heap.push((a[0].mul_unchecked(&b[0]), 0, 0));
        let mut out: Vec<Monomial> = Vec::new();
        while let Some((m, _, _)) = heap.peek().copied() {
            let mut parity = false;
            while let Some(&(top, i, j)) = heap.peek() {
                if top != m {
                    break;
                }
                heap.pop();
                parity = !parity;
                let (i, j) = (i as usize, j as usize);
                if j + 1 < b.len() {
                    heap.push((a[i].mul_unchecked(&b[j + 1]), i as u32, (j + 1) as u32));
                }
                if j == 0 && i + 1 < a.len() {
                    heap.push((a[i + 1].mul_unchecked(&b[0]), (i + 1) as u32, 0));
                }
            }
            if parity {
                out.push(m);
            }
        }
        Ok(Polynomial { terms: out })
    }

    /// Exact division. Returns `Ok(None)` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, AlgebraError> {
        let g = &divisor.terms;
        let Some(lead) = g.first() else {
            return Err(AlgebraError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Some(Polynomial::zero()));
        }
        if g.len() == 1 {
            let q: Option<Vec<Monomial>> = self.terms.iter().map(|t| t.checked_div(lead)).collect();
            return Ok(q.map(|terms| Polynomial { terms }));
        }
        if self.total_degree() < divisor.total_degree() {
            return Ok(None);
        }

        let f = &self.terms;
        let mut fi = 0usize;
        let mut q: Vec<Monomial> = Vec::new();
        // heap entries: (q[i] * g[j], i, j), j >= 1
        let mut heap: BinaryHeap<(Monomial, u32, u32)> = BinaryHeap::new();
        loop {
            let top = heap.peek().map(|e| e.0);
            let t = match (f.get(fi), top) {
                (None, None) => break,
                (Some(&x), None) => x,
                (None, Some(y)) => y,
                (Some(&x), Some(y)) => x.max(y),
            };
            let mut parity = false;
            if f.get(fi) == Some(&t) {
                parity = true;
                fi += 1;
            }
            while let Some(&(m, i, j)) = heap.peek() {
                if m != t {
                    break;
                }
                heap.pop();
                parity = !parity;
                let (i, j) = (i as usize, j as usize);
                if j + 1 < g.len() {
                    heap.push((q[i].checked_mul(&g[j + 1])?, i as u32, (j + 1) as u32));
                }
            }
            if !parity {
                continue;
            }
            let Some(qt) = t.checked_div(lead) else {
                return Ok(None);
            };
            let idx = q.len();
            q.push(qt);
            heap.push((qt.checked_mul(&g[1])?, idx as u32, 1));
        }
        Ok(Some(Polynomial { terms: q }))
    }

    pub fn pow(&self, mut e: u32) -> Result<Polynomial, AlgebraError> {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Greatest common monomial divisor of all terms (1 for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        let mut g = *first;
        for t in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(t);
        }
        g
    }

    /// Splits off the monomial content: `self = content * rest`.
    pub fn strip_content(&self) -> (Monomial, Polynomial) {
        let c = self.monomial_content();
        if c.is_one() {
            return (c, self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_div(&c).expect("content divides every term"))
            .collect();
        (c, Polynomial { terms })
    }

    pub fn rename(&self, map: &[usize]) -> Result<Polynomial, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.rename(map))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::from_terms(terms))
    }

    /// Renders with caller-supplied variable names; terms in canonical order.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|m| {
                if m.is_one() {
                    return "1".to_string();
                }
                m.exponents()
                    .map(|(v, e)| {
                        if e == 1 {
                            name(v)
                        } else {
                            format!("{}^{}", name(v), e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

fn self_mul_single(b: &[Monomial], m: &Monomial) -> Result<Polynomial, AlgebraError> {
    let terms = b
        .iter()
        .map(|t| t.checked_mul(m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial { terms })
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial { terms: vec![m] }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[(usize, u32)]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn poly(terms: &[&[(usize, u32)]]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|t| mono(t)).collect())
    }

    #[test]
    fn characteristic_two() {
        let p = poly(&[&[(0, 1)], &[]]);
        assert!(p.add(&p).is_zero());
        // (1 + x)^2 = 1 + x^2
        assert_eq!(p.pow(2).unwrap(), poly(&[&[(0, 2)], &[]]));
    }

    #[test]
    fn product_and_exact_quotient() {
        let a = poly(&[&[(0, 1), (1, 1)], &[(2, 1)], &[]]);
        let b = poly(&[&[(1, 2)], &[(0, 1)], &[]]);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p.div_exact(&a).unwrap(), Some(b.clone()));
        assert_eq!(p.div_exact(&b).unwrap(), Some(a.clone()));
        let off = p.add(&Polynomial::one());
        assert_eq!(off.div_exact(&a).unwrap(), None);
    }

    #[test]
    fn content() {
        let p = poly(&[&[(0, 2), (1, 1)], &[(0, 1), (1, 3)]]);
        let (c, rest) = p.strip_content();
        assert_eq!(c, mono(&[(0, 1), (1, 1)]));
        assert_eq!(rest, poly(&[&[(0, 1)], &[(1, 2)]]));
    }

    fn naive_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut terms = Vec::new();
        for x in a.terms() {
            for y in b.terms() {
                terms.push(x.checked_mul(y).unwrap());
            }
        }
        Polynomial::from_terms(terms)
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(prop::collection::vec((0usize..4, 0u32..4), 0..4), 0..7).prop_map(
            |ts| {
                Polynomial::from_terms(
                    ts.iter()
                        .map(|t| Monomial::from_exponents(t).unwrap())
                        .collect(),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn heap_product_matches_schoolbook(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.checked_mul(&b).unwrap(), naive_mul(&a, &b));
        }

        #[test]
        fn division_inverts_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = a.checked_mul(&b).unwrap();
            prop_assert_eq!(p.div_exact(&b).unwrap(), Some(a));
        }

        #[test]
        fn distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let lhs = a.checked_mul(&b.add(&c)).unwrap();
            let rhs = a.checked_mul(&b).unwrap().add(&a.checked_mul(&c).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
