use std::collections::{BTreeMap, BTreeSet};

use super::field::FieldElem;
use super::gauss::accumulate;
use crate::algebra::AlgebraError;
use crate::complex::SparseMatrix;

/// A based complex under cancellation: surviving generators per degree and
/// the differential between consecutive degrees, keyed by generator ids.
#[derive(Clone, Debug)]
pub struct ReducedComplex<F> {
    pub generators: BTreeMap<i64, BTreeSet<usize>>,
    /// `rows[d][x][y]`: coefficient from generator `x` in degree `d` to `y` in `d + 2`.
    pub rows: BTreeMap<i64, BTreeMap<usize, BTreeMap<usize, F>>>,
    cols: BTreeMap<i64, BTreeMap<usize, BTreeSet<usize>>>,
}

impl<F: FieldElem> ReducedComplex<F> {
    pub fn new(counts: &BTreeMap<i64, usize>, mats: &BTreeMap<i64, SparseMatrix<F>>) -> Self {
        let generators = counts
            .iter()
            .map(|(&d, &n)| (d, (0..n).collect()))
            .collect();
        let mut rows: BTreeMap<i64, BTreeMap<usize, BTreeMap<usize, F>>> = BTreeMap::new();
        let mut cols: BTreeMap<i64, BTreeMap<usize, BTreeSet<usize>>> = BTreeMap::new();
        for (&d, m) in mats {
            let r = rows.entry(d).or_default();
            let c = cols.entry(d).or_default();
            for (x, y, v) in m.entries() {
                if v.is_zero() {
                    continue;
                }
                r.entry(x).or_default().insert(y, v.clone());
                c.entry(y).or_default().insert(x);
            }
        }
        ReducedComplex {
            generators,
            rows,
            cols,
        }
    }

    pub fn counts(&self) -> BTreeMap<i64, usize> {
        self.generators.iter().map(|(&d, g)| (d, g.len())).collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.rows
            .values()
            .all(|r| r.values().all(|row| row.is_empty()))
    }

    /// Cheapest nonzero entry over all degrees; ties by (degree, row, col).
    fn choose(&self) -> Option<(i64, usize, usize)> {
        let mut best: Option<(usize, i64, usize, usize)> = None;
        for (&d, rows) in &self.rows {
            for (&x, row) in rows {
                for (&y, v) in row {
                    let key = (v.cost(), d, x, y);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        best.map(|(_, d, x, y)| (d, x, y))
    }

    /// Cancels the pair `(x, y)` joined by the invertible entry `c_xy`:
    /// `c_zt += c_zy c_xy^-1 c_xt` for the other `z -> y`, `x -> t`.
    fn cancel(&mut self, d: i64, x: usize, y: usize) -> Result<(), AlgebraError> {
        let rows = self.rows.get_mut(&d).expect("degree present");
        let cols = self.cols.get_mut(&d).expect("degree present");
        let row_x = rows.remove(&x).unwrap_or_default();
        let inv = row_x[&y].inv()?;
        let sources: Vec<usize> = cols
            .get(&y)
            .map(|s| s.iter().copied().filter(|&z| z != x).collect())
            .unwrap_or_default();
        for z in sources {
            let row_z = rows.get_mut(&z).expect("column index in sync");
            let c_zy = row_z.remove(&y).expect("column index in sync");
            let scale = c_zy.mul(&inv)?;
            for (&t, c_xt) in &row_x {
                if t == y {
                    continue;
                }
                accumulate(row_z, t, scale.mul(c_xt)?)?;
                if row_z.contains_key(&t) {
                    cols.entry(t).or_default().insert(z);
                } else if let Some(s) = cols.get_mut(&t) {
                    s.remove(&z);
                }
            }
        }
        cols.remove(&y);
        for t in row_x.keys() {
            if let Some(s) = cols.get_mut(t) {
                s.remove(&x);
            }
        }
        // x is also a target of degree d - 2, y a source of degree d + 2
        if let (Some(prev_rows), Some(prev_cols)) =
            (self.rows.get_mut(&(d - 2)), self.cols.get_mut(&(d - 2)))
        {
            if let Some(srcs) = prev_cols.remove(&x) {
                for s in srcs {
                    if let Some(r) = prev_rows.get_mut(&s) {
                        r.remove(&x);
                    }
                }
            }
        }
        if let (Some(next_rows), Some(next_cols)) =
            (self.rows.get_mut(&(d + 2)), self.cols.get_mut(&(d + 2)))
        {
            if let Some(r) = next_rows.remove(&y) {
                for t in r.keys() {
                    if let Some(s) = next_cols.get_mut(t) {
                        s.remove(&y);
                    }
                }
            }
        }
        self.generators.get_mut(&d).expect("degree").remove(&x);
        self.generators
            .get_mut(&(d + 2))
            .expect("degree")
            .remove(&y);
        Ok(())
    }
}

/// Cancels pairs until the differential vanishes; the surviving generator
/// counts are then the cohomology ranks.
pub fn cancellation_reduce<F: FieldElem>(
    counts: &BTreeMap<i64, usize>,
    mats: &BTreeMap<i64, SparseMatrix<F>>,
) -> Result<ReducedComplex<F>, AlgebraError> {
    let mut c = ReducedComplex::new(counts, mats);
    while let Some((d, x, y)) = c.choose() {
        c.cancel(d, x, y)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{UniPoly, UniRational};

    fn t(k: usize) -> UniRational {
        UniRational::new(UniPoly::monomial(k), UniPoly::one()).unwrap()
    }

    #[test]
    fn two_state_complex_cancels_fully() {
        let counts = BTreeMap::from([(0, 1), (2, 1)]);
        let mut m = SparseMatrix::zeros(1, 1);
        m.data[0] = vec![(0, t(1))];
        let r = cancellation_reduce(&counts, &BTreeMap::from([(0, m)])).unwrap();
        assert!(r.is_minimal());
        assert_eq!(r.counts(), BTreeMap::from([(0, 0), (2, 0)]));
    }

    #[test]
    fn zero_differential_is_untouched() {
        let counts = BTreeMap::from([(1, 3)]);
        let r: ReducedComplex<UniRational> =
            cancellation_reduce(&counts, &BTreeMap::new()).unwrap();
        assert_eq!(r.counts(), counts);
    }

    #[test]
    fn update_creates_fill_in() {
        // x0 -> y0, y1 and x1 -> y0: cancelling (x1, y0) leaves x0 -> y1 only
        let counts = BTreeMap::from([(0, 2), (2, 2)]);
        let mut m = SparseMatrix::zeros(2, 2);
        m.data[0] = vec![(0, t(2)), (1, t(3))];
        m.data[1] = vec![(0, t(0))];
        let r = cancellation_reduce(&counts, &BTreeMap::from([(0, m)])).unwrap();
        assert_eq!(r.counts(), BTreeMap::from([(0, 0), (2, 0)]));
    }
}
