use std::fmt;

/// GF(2^64) as GF(2)[x] / (x^64 + x^4 + x^3 + x + 1).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf64(pub u64);

const LOW: u128 = 0b1_1011;

fn clmul(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

fn reduce(mut v: u128) -> u64 {
    // two folds: the first leaves at most 4 bits above degree 63
    for _ in 0..2 {
        let hi = v >> 64;
        v = (v & u64::MAX as u128) ^ clmul(hi as u64, LOW as u64);
    }
    v as u64
}

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Gf64) -> Gf64 {
        Gf64(self.0 ^ o.0)
    }

    pub fn mul(self, o: Gf64) -> Gf64 {
        Gf64(reduce(clmul(self.0, o.0)))
    }

    pub fn pow(self, mut e: u64) -> Gf64 {
        let (mut base, mut acc) = (self, Gf64::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Gf64> {
        (!self.is_zero()).then(|| self.pow(u64::MAX - 1))
    }

    /// `self^k` for a signed exponent; `None` for `0^k` with `k < 0`.
    pub fn powi(self, k: i64) -> Option<Gf64> {
        let p = self.pow(k.unsigned_abs());
        if k < 0 {
            p.inv()
        } else {
            Some(p)
        }
    }
}

impl fmt::Debug for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf64({:#x})", self.0)
    }
}
