//! Kauffman states, circuit monomials and the graded differential.

mod circuits;
mod states;

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

pub use circuits::{
    black_circuit_monomial, state_neighbors, variable_table, white_circuit_monomial, Circuit,
};
pub use states::{
    enumerate_states, spanning_trees, split_tree, tree_height, tree_path, EdgeSet, KauffmanState,
    MAX_CROSSINGS,
};

use crate::algebra::{AlgebraError, RationalFunction, VariableTable};
use crate::diagram::{DiagramError, TaitStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} crossings exceed the supported {MAX_CROSSINGS}")]
    TooManyCrossings(usize),
}

/// Row-sparse matrix; rows are source states, columns target states.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    /// Per row, `(column, value)` sorted by column, no zero values.
    pub data: Vec<Vec<(usize, T)>>,
}

impl<T> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: (0..rows).map(|_| Vec::new()).collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.data[r];
        row.binary_search_by_key(&c, |e| e.0)
            .ok()
            .map(|i| &row[i].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn try_map<U, E>(&self, f: impl Fn(&T) -> Result<U, E> + Sync) -> Result<SparseMatrix<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
    {
        let data = self
            .data
            .par_iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| Ok((*c, f(v)?)))
                    .collect::<Result<Vec<_>, E>>()
            })
            .collect::<Result<Vec<_>, E>>()?;
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// The BOS complex of a diagram: states by doubled degree and the
/// differential from each degree to the next (doubled degree + 2).
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub vars: VariableTable,
    pub n_minus: usize,
    pub states: BTreeMap<i64, Vec<KauffmanState>>,
    pub differentials: BTreeMap<i64, SparseMatrix<Circuit>>,
}

impl GradedComplex {
    pub fn state_count(&self) -> usize {
        self.states.values().map(Vec::len).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.states.keys().copied().collect()
    }

    pub fn count(&self, d: i64) -> usize {
        self.states.get(&d).map_or(0, Vec::len)
    }

    /// Degrees whose outgoing differential has a nonzero entry.
    pub fn nonzero_differentials(&self) -> Vec<i64> {
        self.differentials
            .iter()
            .filter(|(_, m)| m.nnz() > 0)
            .map(|(&d, _)| d)
            .collect()
    }

    pub fn coefficient_matrices(
        &self,
    ) -> Result<BTreeMap<i64, SparseMatrix<RationalFunction>>, AlgebraError> {
        self.differentials
            .iter()
            .map(|(&d, m)| Ok((d, m.try_map(Circuit::coefficient)?)))
            .collect()
    }

    /// Text dump: per degree the states, then `(row, col, coefficient)`.
    pub fn dump(&self) -> Result<String, AlgebraError> {
        let names = |v: usize| self.vars.name(v);
        let mut out = String::new();
        for (&d, states) in &self.states {
            writeln!(out, "degree {}: {} states", degree_label(d), states.len()).unwrap();
            for (i, s) in states.iter().enumerate() {
                writeln!(out, "  [{i}] {:?}", s.edge_list()).unwrap();
            }
            if let Some(m) = self.differentials.get(&d) {
                writeln!(out, "  d: {}x{}", m.rows, m.cols).unwrap();
                for (r, c, circ) in m.entries() {
                    writeln!(out, "  ({r}, {c}, {})", circ.coefficient()?.render(&names)).unwrap();
                }
            }
        }
        Ok(out)
    }
}

/// Degree label for a doubled degree: `3`, `-1/2`, ...
pub fn degree_label(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// States, adjacencies and circuit labels of the differential.
pub fn assemble(t: &TaitStructure) -> Result<GradedComplex, ComplexError> {
    if t.crossing_count() > MAX_CROSSINGS {
        return Err(ComplexError::TooManyCrossings(t.crossing_count()));
    }
    let vars = variable_table(t);
    let all = enumerate_states(t);
    let mut states: BTreeMap<i64, Vec<KauffmanState>> = BTreeMap::new();
    let mut index: HashMap<EdgeSet, usize> = HashMap::new();
    for s in &all {
        let bucket = states.entry(s.doubled_degree).or_default();
        index.insert(s.edges, bucket.len());
        bucket.push(*s);
    }
    let rows: Vec<Vec<(usize, Circuit)>> = all
        .par_iter()
        .map(|s| {
            let mut row = Vec::new();
            for (next, e, f) in state_neighbors(t, s) {
                let alpha = black_circuit_monomial(t, &vars, s, e, f)?;
                let beta = white_circuit_monomial(t, &vars, s, e)?;
                row.push((index[&next.edges], Circuit { alpha, beta }));
            }
            row.sort_by_key(|r| r.0);
            Ok(row)
        })
        .collect::<Result<_, ComplexError>>()?;

    let mut differentials = BTreeMap::new();
    let mut rows = rows.into_iter();
    for (&d, bucket) in &states {
        let cols = states.get(&(d + 2)).map_or(0, Vec::len);
        let mut m = SparseMatrix::zeros(bucket.len(), cols);
        for r in 0..bucket.len() {
            m.data[r] = rows.next().expect("row per state");
        }
        differentials.insert(d, m);
    }
    Ok(GradedComplex {
        vars,
        n_minus: t.n_minus,
        states,
        differentials,
    })
}

/// Product of consecutive differentials, row-vector convention.
pub fn compose(
    a: &SparseMatrix<RationalFunction>,
    b: &SparseMatrix<RationalFunction>,
) -> Result<SparseMatrix<RationalFunction>, AlgebraError> {
    let data = a
        .data
        .par_iter()
        .map(|row| {
            let mut acc: BTreeMap<usize, RationalFunction> = BTreeMap::new();
            for (k, x) in row {
                for (c, y) in &b.data[*k] {
                    let p = x.mul(y)?;
                    let slot = acc.entry(*c).or_insert_with(RationalFunction::zero);
                    *slot = slot.add(&p)?;
                }
            }
            Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(SparseMatrix {
        rows: a.rows,
        cols: b.cols,
        data,
    })
}

/// Whether every composite of consecutive differentials vanishes.
pub fn verify_d_squared(c: &GradedComplex) -> Result<bool, AlgebraError> {
    d_squared_vanishes(&c.coefficient_matrices()?)
}

pub fn d_squared_vanishes(
    mats: &BTreeMap<i64, SparseMatrix<RationalFunction>>,
) -> Result<bool, AlgebraError> {
    for (&d, m) in mats {
        if let Some(next) = mats.get(&(d + 2)) {
            if compose(m, next)?.nnz() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
