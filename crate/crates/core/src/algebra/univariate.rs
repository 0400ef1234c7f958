use std::fmt;

/// A polynomial in GF(2)[t], stored as a little-endian bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    words: Vec<u64>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::monomial(0)
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        UniPoly { words }
    }

    /// Polynomial with a 1 at each listed exponent (repeats cancel).
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = UniPoly::zero();
        for k in exps {
            p.toggle(k);
        }
        p.trim();
        p
    }

    fn toggle(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = UniPoly { words };
        p.trim();
        p
    }

    pub fn shl(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs > 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        let mut p = UniPoly { words };
        p.trim();
        p
    }

    pub fn shr(&self, k: usize) -> UniPoly {
        let (ws, bs) = (k / 64, k % 64);
        if ws >= self.words.len() {
            return UniPoly::zero();
        }
        let src = &self.words[ws..];
        let mut words = vec![0u64; src.len()];
        for i in 0..src.len() {
            words[i] = src[i] >> bs;
            if bs > 0 && i + 1 < src.len() {
                words[i] |= src[i + 1] << (64 - bs);
            }
        }
        let mut p = UniPoly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let (a, b) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = vec![0u64; a.words.len() + b.words.len() + 1];
        for (i, &aw) in a.words.iter().enumerate() {
            let mut bits = aw;
            while bits != 0 {
                let bit = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (j, &bw) in b.words.iter().enumerate() {
                    words[i + j] ^= bw << bit;
                    if bit > 0 {
                        words[i + j + 1] ^= bw >> (64 - bit);
                    }
                }
            }
        }
        let mut p = UniPoly { words };
        p.trim();
        p
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.toggle(shift);
            rem = rem.add(&divisor.shl(shift));
        }
        quot.trim();
        (quot, rem)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let parts: Vec<String> = (0..=d)
            .rev()
            .filter(|&k| self.coeff(k))
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of GF(2)(t) kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniRational {
    num: UniPoly,
    den: UniPoly,
}

impl UniRational {
    pub fn zero() -> Self {
        UniRational {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        UniRational {
            num: UniPoly::one(),
            den: UniPoly::one(),
        }
    }

    /// `num / den` reduced by the Euclidean gcd. `None` if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(UniRational::zero());
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Some(UniRational { num, den });
        }
        Some(UniRational {
            num: num.div_rem(&g).0,
            den: den.div_rem(&g).0,
        })
    }

    /// `t^k` for any integer `k`.
    pub fn t_power(k: i64) -> Self {
        if k >= 0 {
            UniRational {
                num: UniPoly::monomial(k as usize),
                den: UniPoly::one(),
            }
        } else {
            UniRational {
                num: UniPoly::one(),
                den: UniPoly::monomial((-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &UniRational) -> UniRational {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return UniRational::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&other.den);
        let a_co = self.den.div_rem(&g).0;
        let b_co = other.den.div_rem(&g).0;
        let num = self.num.mul(&b_co).add(&other.num.mul(&a_co));
        UniRational::new(num, a_co.mul(&other.den)).unwrap()
    }

    pub fn mul(&self, other: &UniRational) -> UniRational {
        if self.is_zero() || other.is_zero() {
            return UniRational::zero();
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = other.den.div_rem(&g1).0;
        let n2 = other.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        UniRational {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    pub fn inv(&self) -> Option<UniRational> {
        if self.is_zero() {
            return None;
        }
        Some(UniRational {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

impl fmt::Debug for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> UniPoly {
        UniPoly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn frobenius() {
        // (1 + t)^2 = 1 + t^2 over GF(2)
        assert_eq!(p(&[0, 1]).mul(&p(&[0, 1])), p(&[0, 2]));
        assert_eq!(p(&[0, 1, 70]).pow(2), p(&[0, 2, 140]));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[0, 1, 3]);
        let b = p(&[0, 2, 65]);
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(prod.gcd(&a), a);
        assert_eq!(p(&[0, 1]).gcd(&p(&[0, 1, 2])), UniPoly::one());
    }

    #[test]
    fn shifts() {
        let a = p(&[0, 5, 63]);
        assert_eq!(a.shl(70), p(&[70, 75, 133]));
        assert_eq!(a.shl(70).shr(70), a);
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(a.shl(3).valuation(), Some(3));
    }

    #[test]
    fn rational_reduction() {
        // 1/(1+t) + 1/(1+t^2) = t/(1+t^2)
        let one = UniPoly::one();
        let x = UniRational::new(one.clone(), p(&[0, 1])).unwrap();
        let y = UniRational::new(one, p(&[0, 2])).unwrap();
        let s = x.add(&y);
        assert_eq!(s.num(), &p(&[1]));
        assert_eq!(s.den(), &p(&[0, 2]));
        assert!(UniRational::new(p(&[1]), UniPoly::zero()).is_none());
    }

    fn arb() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(0usize..90, 0..6).prop_map(UniPoly::from_exponents)
    }

    proptest! {
        #[test]
        fn euclid(a in arb(), b in arb()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }

        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = UniRational::new(a, b.clone()).unwrap();
            let y = UniRational::new(c.clone(), b).unwrap();
            prop_assert!(x.add(&x).is_zero());
            let yi = y.inv().unwrap();
            prop_assert_eq!(y.mul(&yi), UniRational::one());
            let lhs = x.mul(&y.add(&yi));
            let rhs = x.mul(&y).add(&x.mul(&yi));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
