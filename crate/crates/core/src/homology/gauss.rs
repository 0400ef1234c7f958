use std::collections::BTreeMap;

use super::field::FieldElem;
use crate::algebra::{AlgebraError, RationalFunction};
use crate::complex::SparseMatrix;

/// Rank by Gaussian elimination with cheapest-entry pivoting; ties go to the
/// first entry in row-major order.
pub fn rank_gauss<F: FieldElem>(m: &SparseMatrix<F>) -> Result<usize, AlgebraError> {
    let mut rows: Vec<BTreeMap<usize, F>> = m
        .data
        .iter()
        .map(|r| r.iter().filter(|(_, v)| !v.is_zero()).cloned().collect())
        .collect();
    let mut active: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut rank = 0;
    while let Some((pr, pc)) = choose_pivot(&rows, &active) {
        rank += 1;
        active.retain(|&r| r != pr);
        let pivot_row = std::mem::take(&mut rows[pr]);
        let inv = pivot_row[&pc].inv()?;
        for &r in &active {
            let Some(a) = rows[r].get(&pc).cloned() else {
                continue;
            };
            let factor = a.mul(&inv)?;
            for (c, v) in &pivot_row {
                let delta = factor.mul(v)?;
                accumulate(&mut rows[r], *c, delta)?;
            }
            rows[r].remove(&pc);
        }
        active.retain(|&r| !rows[r].is_empty());
    }
    Ok(rank)
}

/// Exact rank over the rational function field. Denominators stay factored,
/// so repeated factors cancel instead of compounding.
pub fn rank_exact(m: &SparseMatrix<RationalFunction>) -> Result<usize, AlgebraError> {
    rank_gauss(m)
}

/// `row[c] += delta`, dropping the entry if it cancels.
pub(crate) fn accumulate<F: FieldElem>(
    row: &mut BTreeMap<usize, F>,
    c: usize,
    delta: F,
) -> Result<(), AlgebraError> {
    match row.get_mut(&c) {
        Some(slot) => {
            let sum = slot.add(&delta)?;
            if sum.is_zero() {
                row.remove(&c);
            } else {
                *slot = sum;
            }
        }
        None => {
            if !delta.is_zero() {
                row.insert(c, delta);
            }
        }
    }
    Ok(())
}

pub(crate) fn choose_pivot<F: FieldElem>(
    rows: &[BTreeMap<usize, F>],
    active: &[usize],
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for &r in active {
        for (&c, v) in &rows[r] {
            let cost = v.cost();
            if best.is_none_or(|b| (cost, r, c) < b) {
                best = Some((cost, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{UniPoly, UniRational};

    fn t(k: usize) -> UniRational {
        UniRational::new(UniPoly::monomial(k), UniPoly::one()).unwrap()
    }

    #[test]
    fn ranks() {
        let zero: SparseMatrix<UniRational> = SparseMatrix::zeros(3, 4);
        assert_eq!(rank_gauss(&zero).unwrap(), 0);
        // [[1, t], [t, t^2]] has rank 1
        let mut m = SparseMatrix::zeros(2, 2);
        m.data[0] = vec![(0, t(0)), (1, t(1))];
        m.data[1] = vec![(0, t(1)), (1, t(2))];
        assert_eq!(rank_gauss(&m).unwrap(), 1);
        m.data[1][1].1 = t(3);
        assert_eq!(rank_gauss(&m).unwrap(), 2);
    }
}
