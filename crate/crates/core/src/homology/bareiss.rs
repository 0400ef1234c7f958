use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, LaurentMonomial, Polynomial, RationalFunction};
use crate::complex::SparseMatrix;

/// Multiplies a row by its common denominator so every entry becomes a
/// polynomial. Row scaling by a nonzero element preserves rank.
pub fn clear_row(
    row: &[(usize, RationalFunction)],
) -> Result<Vec<(usize, Polynomial)>, AlgebraError> {
    let live: Vec<&(usize, RationalFunction)> = row.iter().filter(|(_, v)| !v.is_zero()).collect();
    let Some(first) = live.first() else {
        return Ok(Vec::new());
    };
    let mut lcm: BTreeMap<&Polynomial, u32> = BTreeMap::new();
    let mut low = first.1.shift().clone();
    for (_, v) in &live {
        for (f, k) in v.denominator_factors() {
            let e = lcm.entry(f).or_insert(0);
            *e = (*e).max(k);
        }
        low = LaurentMonomial::meet(&low, v.shift());
    }
    live.iter()
        .map(|(c, v)| {
            let (up, down) = v.shift().div(&low).split()?;
            debug_assert!(down.is_one());
            let mut p = v.numerator().mul_monomial(&up)?;
            for (f, &k) in &lcm {
                let have = v
                    .denominator_factors()
                    .find(|(g, _)| g == f)
                    .map_or(0, |(_, m)| m);
                if k > have {
                    p = p.checked_mul(&f.pow(k - have)?)?;
                }
            }
            Ok((*c, p))
        })
        .collect()
}

struct LazyRow {
    /// Stored entries; the true row is `s * p_current / p_last`.
    s: Vec<(usize, Polynomial)>,
    last: usize,
}

/// Rank over the fraction field: denominators cleared row by row, then
/// fraction-free Bareiss elimination over GF(2)[x] with exact divisions.
///
/// Rows without an entry in the pivot column are not rescaled; each row
/// remembers the pivot index it was last brought up to date with.
/// Minors of the cleared matrix carry every row denominator, so this only
/// scales to small matrices.
pub fn rank_bareiss(m: &SparseMatrix<RationalFunction>) -> Result<usize, AlgebraError> {
    let mut rows: Vec<LazyRow> = Vec::new();
    for r in &m.data {
        let s = clear_row(r)?;
        if !s.is_empty() {
            rows.push(LazyRow { s, last: 0 });
        }
    }
    let mut pivots: Vec<Polynomial> = vec![Polynomial::one()];
    let mut active: Vec<usize> = (0..rows.len()).collect();
    loop {
        let Some((pr, pc)) = cheapest(&rows, &active) else {
            break;
        };
        let k = pivots.len() - 1;
        active.retain(|&r| r != pr);
        let pivot_row = materialize(&rows[pr], &pivots, k)?;
        let p_next = pivot_row
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .expect("pivot entry");
        for &i in &active {
            let row = &rows[i];
            let Some(sic) = row.s.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()) else {
                continue;
            };
            let divisor = &pivots[row.last];
            let mut merged: BTreeMap<usize, Polynomial> = BTreeMap::new();
            for (c, v) in &row.s {
                merged.insert(*c, p_next.checked_mul(v)?);
            }
            for (c, v) in &pivot_row {
                let t = sic.checked_mul(v)?;
                let slot = merged.entry(*c).or_insert_with(Polynomial::zero);
                *slot = slot.add(&t);
            }
            let mut s = Vec::with_capacity(merged.len());
            for (c, v) in merged {
                if v.is_zero() {
                    continue;
                }
                let q = exact_div(&v, divisor)?;
                s.push((c, q));
            }
            rows[i] = LazyRow { s, last: k + 1 };
        }
        pivots.push(p_next);
        active.retain(|&r| !rows[r].s.is_empty());
    }
    Ok(pivots.len() - 1)
}

fn materialize(
    row: &LazyRow,
    pivots: &[Polynomial],
    k: usize,
) -> Result<Vec<(usize, Polynomial)>, AlgebraError> {
    if row.last == k {
        return Ok(row.s.clone());
    }
    row.s
        .iter()
        .map(|(c, v)| {
            Ok((
                *c,
                exact_div(&v.checked_mul(&pivots[k])?, &pivots[row.last])?,
            ))
        })
        .collect()
}

fn exact_div(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, AlgebraError> {
    if b.is_one() {
        return Ok(a.clone());
    }
    a.div_exact(b)?.ok_or(AlgebraError::InexactDivision)
}

fn cheapest(rows: &[LazyRow], active: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for &r in active {
        for (c, v) in &rows[r].s {
            let key = (v.len(), r, *c);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::psi_coeff;
    use crate::homology::rank_exact;

    fn lm(e: &[(usize, i32)]) -> LaurentMonomial {
        LaurentMonomial::from_exponents(e.iter().copied())
    }

    fn psi(a: &[(usize, i32)], b: &[(usize, i32)]) -> RationalFunction {
        psi_coeff(&lm(a), &lm(b)).unwrap()
    }

    #[test]
    fn trivial_ranks() {
        let z: SparseMatrix<RationalFunction> = SparseMatrix::zeros(2, 3);
        assert_eq!(rank_bareiss(&z).unwrap(), 0);
        let mut one = SparseMatrix::zeros(1, 1);
        one.data[0] = vec![(0, psi(&[(0, 1)], &[(1, 1)]))];
        assert_eq!(rank_bareiss(&one).unwrap(), 1);
    }

    #[test]
    fn dependent_rows() {
        // second row = first row times a rational function
        let a = psi(&[(0, 1)], &[(1, 1)]);
        let b = psi(&[(0, 1), (2, 1)], &[(1, -1)]);
        let s = psi(&[(2, 1)], &[(3, 1)]);
        let mut m = SparseMatrix::zeros(3, 2);
        m.data[0] = vec![(0, a.clone()), (1, b.clone())];
        m.data[1] = vec![(0, a.mul(&s).unwrap()), (1, b.mul(&s).unwrap())];
        assert_eq!(rank_bareiss(&m).unwrap(), 1);
        assert_eq!(rank_exact(&m).unwrap(), 1);
        m.data[2] = vec![(1, a.clone())];
        assert_eq!(rank_bareiss(&m).unwrap(), 2);
        assert_eq!(rank_exact(&m).unwrap(), 2);
    }

    #[test]
    fn r3_block_minor_is_invertible() {
        // a, b, c face labels; v the common vertex label; y read as v
        let (a, b, c, v) = (0, 1, 2, 3);
        for y in [v, 4] {
            let f =
                |x: &[(usize, i32)],
                 z: &[(usize, i32)],
                 x2: &[(usize, i32)],
                 z2: &[(usize, i32)]| { psi(x, z).mul(&psi(x2, z2)).unwrap() };
            let mut m = SparseMatrix::zeros(2, 2);
            m.data[0] = vec![
                (0, f(&[(a, 1), (b, 1)], &[(v, 1)], &[(b, -1)], &[(v, 1)])),
                (
                    1,
                    f(
                        &[(a, 1), (b, 1), (c, 1)],
                        &[(v, 1)],
                        &[(a, -1), (b, -1)],
                        &[(v, 1)],
                    ),
                ),
            ];
            m.data[1] = vec![
                (0, f(&[(b, 1)], &[(v, 1)], &[(b, -1), (c, -1)], &[(y, 1)])),
                (
                    1,
                    f(
                        &[(b, 1), (c, 1)],
                        &[(v, 1)],
                        &[(a, -1), (b, -1), (c, -1)],
                        &[(v, 1)],
                    ),
                ),
            ];
            assert_eq!(rank_bareiss(&m).unwrap(), 2);
            assert_eq!(rank_exact(&m).unwrap(), 2);
        }
    }

    #[test]
    fn cleared_rows_are_polynomial_multiples() {
        let row = vec![
            (0, psi(&[(0, 1)], &[(1, 1)])),
            (3, psi(&[(0, -2)], &[(1, 1)])),
        ];
        let cleared = clear_row(&row).unwrap();
        // ratios are preserved
        let r0 = RationalFunction::from_poly(&cleared[0].1)
            .div(&RationalFunction::from_poly(&cleared[1].1))
            .unwrap();
        let r1 = row[0].1.div(&row[1].1).unwrap();
        assert!(r0.equals(&r1).unwrap());
    }
}
