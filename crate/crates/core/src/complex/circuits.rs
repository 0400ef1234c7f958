use serde::Serialize;

use super::states::{reachable, split_tree, tree_path, EdgeSet, KauffmanState};
use super::ComplexError;
use crate::algebra::{
    psi_coeff, psi_specialized, AlgebraError, LaurentMonomial, RationalFunction, UniRational,
    VariableTable,
};
use crate::diagram::TaitStructure;

/// Face variables sit on white regions, vertex variables on black regions.
/// The outer region's variable is omitted within its class, otherwise the
/// lowest region id of the class.
pub fn variable_table(t: &TaitStructure) -> VariableTable {
    let pick = |regions: &[usize]| {
        if regions.contains(&t.outer_face) {
            t.outer_face
        } else {
            *regions.iter().min().expect("nonempty color class")
        }
    };
    let faces = &t.white.vertices;
    let vertices = &t.black.vertices;
    VariableTable::new(faces, vertices, pick(faces), pick(vertices))
}

/// The pair of circuit monomials labelling one matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Circuit {
    pub alpha: LaurentMonomial,
    pub beta: LaurentMonomial,
}

impl Circuit {
    /// `1/(1 + alpha) + 1/(1 + beta)`.
    pub fn coefficient(&self) -> Result<RationalFunction, AlgebraError> {
        psi_coeff(&self.alpha, &self.beta)
    }

    pub fn specialize(&self, spec: &[i64]) -> Result<UniRational, AlgebraError> {
        psi_specialized(self.alpha.specialize(spec), self.beta.specialize(spec))
    }
}

/// States reached by dropping a height-0 tree edge `e` and adding a height-1
/// edge `f` across the cut: `(T', e, f)`.
pub fn state_neighbors(t: &TaitStructure, s: &KauffmanState) -> Vec<(KauffmanState, usize, usize)> {
    let g = &t.black;
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        if !s.contains(e) || g.heights[e] != 0 {
            continue;
        }
        let side = reachable(g, s.edges & !(1 << e), t.black_base);
        for f in 0..g.edge_count() {
            if s.contains(f) || g.heights[f] != 1 {
                continue;
            }
            let [a, b] = g.edges[f];
            if side[a] == side[b] {
                continue;
            }
            let edges: EdgeSet = (s.edges & !(1 << e)) | 1 << f;
            let next = KauffmanState {
                edges,
                height: s.height + 2,
                doubled_degree: s.doubled_degree + 2,
            };
            out.push((next, e, f));
        }
    }
    out
}

/// `alpha(T, T')`: product of the face variables on the left of the cycle of
/// `T + f`, oriented so that `f` runs from `C` (the side of `T - e` without
/// the base) to `C'`.
pub fn black_circuit_monomial(
    t: &TaitStructure,
    vars: &VariableTable,
    s: &KauffmanState,
    e: usize,
    f: usize,
) -> Result<LaurentMonomial, ComplexError> {
    let g = &t.black;
    let (c, _) = split_tree(g, s.edges, e, t.black_base);
    let [a, b] = g.edges[f];
    let from = if c.contains(&a) { 0 } else { 1 };
    debug_assert!(c.contains(&g.edges[f][from]) && !c.contains(&g.edges[f][1 - from]));
    let cycle = tree_path(g, s.edges, a, b) | 1 << f;
    let left_region = t.white_left_of(f, from);
    let w = &t.white;
    let start = w.vertex_of(left_region).expect("white region");
    let inside = reachable(w, !cycle & mask(w.edge_count()), start);
    let regions: Vec<usize> = (0..w.vertices.len())
        .filter(|&v| inside[v])
        .map(|v| w.vertices[v])
        .collect();
    let m = vars.face_product(&regions);
    if m.is_one() {
        return Err(ComplexError::Algebra(AlgebraError::UnitCircuit));
    }
    Ok(m)
}

/// `beta(T, T')`: product of the vertex variables of `C`.
pub fn white_circuit_monomial(
    t: &TaitStructure,
    vars: &VariableTable,
    s: &KauffmanState,
    e: usize,
) -> Result<LaurentMonomial, ComplexError> {
    let (c, _) = split_tree(&t.black, s.edges, e, t.black_base);
    let regions: Vec<usize> = c.iter().map(|&v| t.black.vertices[v]).collect();
    let m = vars.vertex_product(&regions);
    if m.is_one() {
        return Err(ComplexError::Algebra(AlgebraError::UnitCircuit));
    }
    Ok(m)
}

fn mask(n: usize) -> EdgeSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}
