use std::fmt;

use super::AlgebraError;

/// Maximum number of variables a packed [`Monomial`] can carry.
pub const MAX_VARS: usize = 15;

/// Largest exponent (per variable, and for the total degree) that fits a lane.
pub const MAX_EXPONENT: u32 = 0x7fff;

const LANES: usize = 16;
const GUARD: u64 = 0x8000_8000_8000_8000;

/// A monomial with non-negative exponents, packed into sixteen 16-bit lanes.
///
/// Lane 0 holds the total degree and lanes `1..=15` the exponents of variables
/// `0..15`. Lanes are laid out most-significant first, so the derived
/// lexicographic order on the words is graded-lexicographic order with
/// variable 0 the most significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([u64; 4]);

#[inline]
fn lane_pos(lane: usize) -> (usize, u32) {
    (lane / 4, ((3 - lane % 4) * 16) as u32)
}

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: usize) -> Result<Self, AlgebraError> {
        Self::from_exponents(&[(v, 1)])
    }

    pub fn from_exponents(exps: &[(usize, u32)]) -> Result<Self, AlgebraError> {
        let mut words = [0u64; 4];
        let mut total = 0u32;
        for &(v, e) in exps {
            if v >= MAX_VARS {
                return Err(AlgebraError::TooManyVariables(v + 1));
            }
            let (w, s) = lane_pos(v + 1);
            let cur = ((words[w] >> s) & 0xffff) as u32 + e;
            total += e;
            if cur > MAX_EXPONENT || total > MAX_EXPONENT {
                return Err(AlgebraError::ExponentOverflow);
            }
            words[w] &= !(0xffffu64 << s);
            words[w] |= (cur as u64) << s;
        }
        let (w, s) = lane_pos(0);
        words[w] |= (total as u64) << s;
        Ok(Monomial(words))
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        (self.0[0] >> 48) as u32
    }

    #[inline]
    pub fn exponent(&self, v: usize) -> u32 {
        debug_assert!(v < MAX_VARS);
        let (w, s) = lane_pos(v + 1);
        ((self.0[w] >> s) & 0xffff) as u32
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Non-zero `(variable, exponent)` pairs in variable order.
    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..MAX_VARS).filter_map(move |v| {
            let e = self.exponent(v);
            (e > 0).then_some((v, e))
        })
    }

    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        let mut out = [0u64; 4];
        let mut guard = 0u64;
        for i in 0..4 {
            out[i] = self.0[i].wrapping_add(other.0[i]);
            guard |= out[i];
        }
        if guard & GUARD != 0 {
            return Err(AlgebraError::ExponentOverflow);
        }
        Ok(Monomial(out))
    }

    /// Product without the overflow check. Callers must have bounded the
    /// exponents beforehand (see [`super::Polynomial::checked_mul`]).
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].wrapping_add(other.0[0]),
            self.0[1].wrapping_add(other.0[1]),
            self.0[2].wrapping_add(other.0[2]),
            self.0[3].wrapping_add(other.0[3]),
        ])
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..4).all(|i| ((other.0[i] | GUARD).wrapping_sub(self.0[i])) & GUARD == GUARD)
    }

    /// `self / other`, if `other` divides `self`.
    #[inline]
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial([
            self.0[0].wrapping_sub(other.0[0]),
            self.0[1].wrapping_sub(other.0[1]),
            self.0[2].wrapping_sub(other.0[2]),
            self.0[3].wrapping_sub(other.0[3]),
        ]))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.lanewise(other, u32::min)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.lanewise(other, u32::max)
    }

    fn lanewise(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut words = [0u64; 4];
        let mut total = 0u64;
        for v in 0..MAX_VARS {
            let e = f(self.exponent(v), other.exponent(v)) as u64;
            let (w, s) = lane_pos(v + 1);
            words[w] |= e << s;
            total += e;
        }
        words[0] |= total << 48;
        Monomial(words)
    }

    /// Renames variables: variable `v` becomes `map[v]`.
    pub fn rename(&self, map: &[usize]) -> Result<Monomial, AlgebraError> {
        let exps: Vec<(usize, u32)> = self.exponents().map(|(v, e)| (map[v], e)).collect();
        Monomial::from_exponents(&exps)
    }

    /// Per-variable exponent vector, used for overflow pre-checks.
    pub(crate) fn lanes(&self) -> [u32; LANES] {
        let mut out = [0u32; LANES];
        for (l, slot) in out.iter_mut().enumerate() {
            let (w, s) = lane_pos(l);
            *slot = ((self.0[w] >> s) & 0xffff) as u32;
        }
        out
    }
}

/// Lane-wise maximum of exponents over a set of monomials.
pub(crate) fn max_lanes<'a>(it: impl IntoIterator<Item = &'a Monomial>) -> [u32; LANES] {
    let mut out = [0u32; LANES];
    for m in it {
        for (o, l) in out.iter_mut().zip(m.lanes()) {
            *o = (*o).max(l);
        }
    }
    out
}

pub(crate) fn lanes_fit(a: &[u32; LANES], b: &[u32; LANES]) -> bool {
    a.iter().zip(b).all(|(x, y)| x + y <= MAX_EXPONENT)
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.exponents() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}
