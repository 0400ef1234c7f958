use crate::diagram::{
    build_tait, Color, ColorSide, DiagramError, LinkDiagram, TaitGraph, TaitStructure,
};

/// Determinant of an integer matrix by fraction-free elimination.
pub fn integer_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return 0;
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Weighted Laplacian of a multigraph with one row and column removed.
fn reduced_laplacian(
    vertices: usize,
    edges: impl Iterator<Item = (usize, usize, i128)>,
) -> Vec<Vec<i128>> {
    let mut l = vec![vec![0i128; vertices]; vertices];
    for (a, b, w) in edges {
        if a == b {
            continue;
        }
        l[a][a] += w;
        l[b][b] += w;
        l[a][b] -= w;
        l[b][a] -= w;
    }
    l.into_iter()
        .skip(1)
        .map(|row| row.into_iter().skip(1).collect())
        .collect()
}

/// Matrix-tree count of a multigraph; loops never contribute.
pub fn spanning_tree_count(g: &TaitGraph) -> u128 {
    let m = reduced_laplacian(g.vertices.len(), g.edges.iter().map(|&[a, b]| (a, b, 1)));
    integer_determinant(m).unsigned_abs()
}

/// Goeritz incidence of a crossing: +1 when turning the over-strand
/// counterclockwise sweeps the shaded corners, else -1. Returns the shaded
/// regions either side of the crossing.
fn goeritz_incidence(t: &TaitStructure, x: usize) -> (usize, usize, i128) {
    // the over-strand occupies positions 1 and 3; turning it sweeps corners 1 and 3
    let shaded = |k: usize| t.faces[t.corner_face(x, k)].color == Color::Black;
    if shaded(1) {
        (t.corner_face(x, 1), t.corner_face(x, 3), 1)
    } else {
        (t.corner_face(x, 0), t.corner_face(x, 2), -1)
    }
}

/// `|det G|` for the Goeritz matrix on the shaded regions.
pub fn determinant_goeritz(d: &LinkDiagram) -> Result<u128, DiagramError> {
    let t = build_tait(d, None, ColorSide::Normal)?;
    let index = |region: usize| t.black.vertex_of(region).expect("shaded region");
    let edges = (0..t.crossing_count()).map(|x| {
        let (a, b, eta) = goeritz_incidence(&t, x);
        (index(a), index(b), eta)
    });
    let m = reduced_laplacian(t.black.vertices.len(), edges);
    Ok(integer_determinant(m).unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd, pretzel};

    #[test]
    fn integer_determinants() {
        assert_eq!(integer_determinant(vec![]), 1);
        assert_eq!(integer_determinant(vec![vec![0, 2], vec![3, 1]]), -6);
        assert_eq!(
            integer_determinant(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]),
            4
        );
        assert_eq!(integer_determinant(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn small_determinants() {
        let det = |d: LinkDiagram| determinant_goeritz(&d).unwrap();
        assert_eq!(det(parse_pd("UNKNOT").unwrap()), 1);
        assert_eq!(det(parse_pd("X(1,1,2,2)").unwrap()), 1);
        assert_eq!(
            det(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()),
            3
        );
        assert_eq!(det(braid_closure(3, &[1, -2, 1, -2]).unwrap()), 5);
        assert_eq!(det(braid_closure(2, &[1, 1]).unwrap()), 2);
        assert_eq!(det(braid_closure(2, &[1, -1]).unwrap()), 0);
        assert_eq!(det(pretzel(&[3, 3, -2]).unwrap()), 3);
    }

    #[test]
    fn tree_counts() {
        let g = |v: usize, e: &[[usize; 2]]| TaitGraph {
            vertices: (0..v).collect(),
            edges: e.to_vec(),
            first_corner: vec![0; e.len()],
            heights: vec![0; e.len()],
        };
        assert_eq!(spanning_tree_count(&g(1, &[])), 1);
        assert_eq!(spanning_tree_count(&g(1, &[[0, 0]])), 1);
        assert_eq!(spanning_tree_count(&g(2, &[[0, 1], [0, 1], [0, 1]])), 3);
        assert_eq!(
            spanning_tree_count(&g(4, &[[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])),
            16
        );
    }
}
