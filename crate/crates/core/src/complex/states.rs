use serde::Serialize;

use crate::diagram::{TaitGraph, TaitStructure};

/// Edge subsets of a black graph, bit `k` for the edge through crossing `k`.
pub type EdgeSet = u64;

/// Most crossings a diagram may have for the bitmask state representation.
pub const MAX_CROSSINGS: usize = 64;

/// A spanning tree of the black graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KauffmanState {
    pub edges: EdgeSet,
    pub height: i64,
    /// Twice the degree: `height - n_minus`.
    pub doubled_degree: i64,
}

impl KauffmanState {
    pub fn contains(&self, e: usize) -> bool {
        self.edges >> e & 1 == 1
    }

    pub fn edge_list(&self) -> Vec<usize> {
        (0..64).filter(|&e| self.contains(e)).collect()
    }
}

/// `sum_{e in T} h(e) + sum_{e not in T} (1 - h(e))`.
pub fn tree_height(g: &TaitGraph, edges: EdgeSet) -> i64 {
    g.heights
        .iter()
        .enumerate()
        .map(|(e, &h)| {
            if edges >> e & 1 == 1 {
                h as i64
            } else {
                1 - h as i64
            }
        })
        .sum()
}

/// Every spanning tree of the black graph, sorted by degree then edge set.
pub fn enumerate_states(t: &TaitStructure) -> Vec<KauffmanState> {
    let g = &t.black;
    assert!(
        g.edge_count() <= MAX_CROSSINGS,
        "at most {MAX_CROSSINGS} crossings supported"
    );
    let mut out: Vec<KauffmanState> = spanning_trees(g)
        .into_iter()
        .map(|edges| {
            let height = tree_height(g, edges);
            KauffmanState {
                edges,
                height,
                doubled_degree: height - t.n_minus as i64,
            }
        })
        .collect();
    out.sort_by_key(|s| (s.doubled_degree, s.edges));
    out
}

/// Spanning trees by contraction and deletion over edges in index order.
pub fn spanning_trees(g: &TaitGraph) -> Vec<EdgeSet> {
    let v = g.vertices.len();
    let mut out = Vec::new();
    let label: Vec<usize> = (0..v).collect();
    recurse(g, 0, label, v, 0, &mut out);
    out
}

fn recurse(
    g: &TaitGraph,
    i: usize,
    label: Vec<usize>,
    parts: usize,
    chosen: EdgeSet,
    out: &mut Vec<EdgeSet>,
) {
    if parts == 1 {
        out.push(chosen);
        return;
    }
    if i == g.edges.len() {
        return;
    }
    let [a, b] = g.edges[i];
    let (la, lb) = (label[a], label[b]);
    if la == lb {
        // a loop after contraction never enters a tree
        recurse(g, i + 1, label, parts, chosen, out);
        return;
    }
    let merged: Vec<usize> = label
        .iter()
        .map(|&l| if l == lb { la } else { l })
        .collect();
    recurse(g, i + 1, merged, parts - 1, chosen | 1 << i, out);
    if still_connected(g, i + 1, &label, parts) {
        recurse(g, i + 1, label, parts, chosen, out);
    }
}

/// Whether the edges from `from` onward connect the current parts.
fn still_connected(g: &TaitGraph, from: usize, label: &[usize], parts: usize) -> bool {
    let mut uf: Vec<usize> = (0..label.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut left = parts;
    for &[a, b] in &g.edges[from..] {
        let (ra, rb) = (find(&mut uf, label[a]), find(&mut uf, label[b]));
        if ra != rb {
            uf[ra] = rb;
            left -= 1;
            if left == 1 {
                return true;
            }
        }
    }
    left == 1
}

/// Vertex sets of the two sides of `T - e`: `(side without base, side with base)`.
pub fn split_tree(g: &TaitGraph, tree: EdgeSet, e: usize, base: usize) -> (Vec<usize>, Vec<usize>) {
    let rest = tree & !(1 << e);
    let reach = reachable(g, rest, base);
    let (mut c, mut c_prime) = (Vec::new(), Vec::new());
    for v in 0..g.vertices.len() {
        if reach[v] {
            c_prime.push(v);
        } else {
            c.push(v);
        }
    }
    (c, c_prime)
}

pub(crate) fn reachable(g: &TaitGraph, edges: EdgeSet, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.vertices.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (k, &[a, b]) in g.edges.iter().enumerate() {
            if edges >> k & 1 == 0 {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen
}

/// Edges of the unique path in the tree between two vertices.
pub fn tree_path(g: &TaitGraph, tree: EdgeSet, from: usize, to: usize) -> EdgeSet {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.vertices.len()];
    let mut seen = vec![false; g.vertices.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for (k, &[a, b]) in g.edges.iter().enumerate() {
            if tree >> k & 1 == 0 {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((v, k));
                    stack.push(y);
                }
            }
        }
    }
    let mut path = 0;
    let mut v = to;
    while let Some((p, k)) = parent[v] {
        path |= 1 << k;
        v = p;
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(v: usize, edges: &[[usize; 2]], heights: &[u8]) -> TaitGraph {
        TaitGraph {
            vertices: (0..v).collect(),
            edges: edges.to_vec(),
            first_corner: vec![0; edges.len()],
            heights: heights.to_vec(),
        }
    }

    #[test]
    fn theta_graph_has_three_trees() {
        let g = graph(2, &[[0, 1], [0, 1], [0, 1]], &[0, 1, 1]);
        assert_eq!(spanning_trees(&g), vec![0b001, 0b010, 0b100]);
        assert_eq!(tree_height(&g, 0b001), 0);
        assert_eq!(tree_height(&g, 0b010), 2);
    }

    #[test]
    fn loops_and_single_vertex() {
        let g = graph(1, &[[0, 0]], &[1]);
        assert_eq!(spanning_trees(&g), vec![0]);
        let g = graph(1, &[], &[]);
        assert_eq!(spanning_trees(&g), vec![0]);
    }

    #[test]
    fn k4_has_sixteen_trees() {
        let e = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        let g = graph(4, &e, &[0; 6]);
        let trees = spanning_trees(&g);
        assert_eq!(trees.len(), 16);
        assert!(trees.iter().all(|t| t.count_ones() == 3));
    }

    #[test]
    fn paths_and_splits() {
        // triangle 0-1-2 plus pendant 3 on 2
        let g = graph(4, &[[0, 1], [1, 2], [2, 0], [2, 3]], &[0; 4]);
        let tree = 0b1011;
        assert_eq!(tree_path(&g, tree, 0, 3), 0b1011);
        assert_eq!(tree_path(&g, tree, 1, 0), 0b0001);
        let (c, cp) = split_tree(&g, tree, 3, 0);
        assert_eq!((c, cp), (vec![3], vec![0, 1, 2]));
    }
}
