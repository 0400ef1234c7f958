use serde::Serialize;

use super::pd::{LinkDiagram, Sign};
use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// Which checkerboard class plays the black role. `Normal` makes the
/// unbounded face white.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorSide {
    #[default]
    Normal,
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    /// Boundary corners `(crossing, k)` in traversal order; corner `k` lies
    /// between positions `k` and `k+1`.
    pub corners: Vec<(usize, usize)>,
    pub color: Color,
}

/// A Tait graph. Edge `k` passes through crossing `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitGraph {
    /// Region ids of the vertices.
    pub vertices: Vec<usize>,
    /// Endpoints as vertex indices; end `i` sits at corner `first_corner + 2i`.
    pub edges: Vec<[usize; 2]>,
    /// Corner (0 or 1) of the crossing holding end 0 of the edge.
    pub first_corner: Vec<usize>,
    pub heights: Vec<u8>,
}

impl TaitGraph {
    pub fn vertex_of(&self, region: usize) -> Option<usize> {
        self.vertices.iter().position(|&r| r == region)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e][0] == self.edges[e][1]
    }
}

/// Checkerboard data of a connected diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitStructure {
    pub faces: Vec<Face>,
    pub outer_face: usize,
    pub side: ColorSide,
    pub black: TaitGraph,
    pub white: TaitGraph,
    pub signs: Vec<Sign>,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Arc label of the base point; `None` for the crossingless unknot.
    pub base_arc: Option<u32>,
    /// Vertex indices of the black and white faces beside the base arc.
    pub black_base: usize,
    pub white_base: usize,
    #[serde(skip)]
    corner_face: Vec<[usize; 4]>,
}

impl TaitStructure {
    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// Region containing corner `k` of crossing `x`.
    pub fn corner_face(&self, x: usize, k: usize) -> usize {
        self.corner_face[x][k % 4]
    }

    /// Region id of the white face to the left of black edge `e` traversed
    /// from end `from` to the other end.
    pub fn white_left_of(&self, e: usize, from: usize) -> usize {
        let k = self.black.first_corner[e] + 2 * from;
        self.corner_face(e, k + 3)
    }

    /// Deterministic JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Corner orbits of the 4-valent plane graph: `(faces, corner_face)`.
fn trace_faces(d: &LinkDiagram) -> (Vec<Vec<(usize, usize)>>, Vec<[usize; 4]>) {
    let n = d.crossing_count();
    let mut corner_face = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for x in 0..n {
        for k in 0..4 {
            if corner_face[x][k] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let (mut y, mut q) = (x, k);
            while corner_face[y][q] == usize::MAX {
                corner_face[y][q] = id;
                corners.push((y, q));
                let (z, r) = d.across(y, q);
                (y, q) = (z, (r + 3) % 4);
            }
            faces.push(corners);
        }
    }
    (faces, corner_face)
}

/// Per-crossing parity offsets with color(x, k) = (k + off[x]) mod 2.
fn two_color(d: &LinkDiagram, faces: &[Vec<(usize, usize)>]) -> Result<Vec<usize>, DiagramError> {
    let n = d.crossing_count();
    let mut off: Vec<Option<usize>> = vec![None; n];
    // consecutive corners (x, p) -> (y, q - 1) of a face must agree
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        for i in 0..f.len() {
            let (x, p) = f[i];
            let (y, q) = f[(i + 1) % f.len()];
            // p + off_x = q + off_y (mod 2)
            let rel = (p + q) % 2;
            adj[x].push((y, rel));
            adj[y].push((x, rel));
        }
    }
    for s in 0..n {
        if off[s].is_some() {
            continue;
        }
        off[s] = Some(0);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let ox = off[x].expect("assigned");
            for &(y, rel) in &adj[x] {
                let want = (ox + rel) % 2;
                match off[y] {
                    None => {
                        off[y] = Some(want);
                        stack.push(y);
                    }
                    Some(o) if o != want => return Err(DiagramError::ColoringFailure),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(off.into_iter().map(|o| o.expect("assigned")).collect())
}

/// The designated unbounded face: the larger face beside the lowest arc,
/// the one on its right on a tie.
fn pick_outer(d: &LinkDiagram, corner_face: &[[usize; 4]], faces: &[Vec<(usize, usize)>]) -> usize {
    let [e0, e1] = d.arc_ends(0);
    let (x, p) = if d.is_incoming(e0.0, e0.1) { e1 } else { e0 };
    let left = corner_face[x][p];
    let right = corner_face[x][(p + 3) % 4];
    if faces[left].len() > faces[right].len() {
        left
    } else {
        right
    }
}

fn side_faces(d: &LinkDiagram, corner_face: &[[usize; 4]], arc: usize) -> (usize, usize) {
    let [e0, e1] = d.arc_ends(arc);
    let (x, p) = if d.is_incoming(e0.0, e0.1) { e1 } else { e0 };
    (corner_face[x][p], corner_face[x][(p + 3) % 4])
}

/// Faces, checkerboard coloring, Tait graphs, heights and base point.
pub fn build_tait(
    d: &LinkDiagram,
    base_arc: Option<u32>,
    side: ColorSide,
) -> Result<TaitStructure, DiagramError> {
    if !d.is_connected() {
        return Err(DiagramError::Disconnected);
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(round_unknot(side));
    }
    let (face_corners, corner_face) = trace_faces(d);
    if face_corners.len() != n + 2 {
        return Err(DiagramError::ColoringFailure);
    }
    let off = two_color(d, &face_corners)?;
    let outer = pick_outer(d, &corner_face, &face_corners);
    let (ox, ok) = face_corners[outer][0];
    let outer_parity = (ok + off[ox]) % 2;
    let black_parity = match side {
        ColorSide::Normal => 1 - outer_parity,
        ColorSide::Swapped => outer_parity,
    };
    let faces: Vec<Face> = face_corners
        .into_iter()
        .enumerate()
        .map(|(id, corners)| {
            let (x, k) = corners[0];
            let color = if (k + off[x]) % 2 == black_parity {
                Color::Black
            } else {
                Color::White
            };
            Face { id, corners, color }
        })
        .collect();

    let mut black = graph_of(&faces, Color::Black);
    let mut white = graph_of(&faces, Color::White);
    for x in 0..n {
        // black corners are k0 and k0 + 2
        let k0 = (black_parity + 2 - off[x] % 2) % 2;
        let h = if k0 == 0 { 0 } else { 1 };
        let bv = |k: usize| black.vertex_of(corner_face[x][k]).expect("black corner");
        let wv = |k: usize| white.vertex_of(corner_face[x][k]).expect("white corner");
        let be = [bv(k0), bv(k0 + 2)];
        let we = [wv(k0 + 1), wv((k0 + 3) % 4)];
        black.edges.push(be);
        black.first_corner.push(k0);
        black.heights.push(h);
        white.edges.push(we);
        white.first_corner.push(k0 + 1);
        white.heights.push(1 - h);
    }

    let base_index = match base_arc {
        None => 0,
        Some(label) => d.arc_index(label).ok_or(DiagramError::UnknownArc(label))?,
    };
    let (l, r) = side_faces(d, &corner_face, base_index);
    let (bf, wf) = if faces[l].color == Color::Black {
        (l, r)
    } else {
        (r, l)
    };
    debug_assert!(faces[bf].color == Color::Black && faces[wf].color == Color::White);
    let signs: Vec<Sign> = (0..n).map(|x| d.sign(x)).collect();
    Ok(TaitStructure {
        black_base: black.vertex_of(bf).expect("black base"),
        white_base: white.vertex_of(wf).expect("white base"),
        faces,
        outer_face: outer,
        side,
        black,
        white,
        n_plus: d.n_plus(),
        n_minus: d.n_minus(),
        signs,
        base_arc: Some(d.arcs()[base_index]),
        corner_face,
    })
}

fn graph_of(faces: &[Face], color: Color) -> TaitGraph {
    TaitGraph {
        vertices: faces
            .iter()
            .filter(|f| f.color == color)
            .map(|f| f.id)
            .collect(),
        edges: Vec::new(),
        first_corner: Vec::new(),
        heights: Vec::new(),
    }
}

/// Inside (id 0) and outside (id 1) of a round circle.
fn round_unknot(side: ColorSide) -> TaitStructure {
    let (inside, outside) = match side {
        ColorSide::Normal => (Color::Black, Color::White),
        ColorSide::Swapped => (Color::White, Color::Black),
    };
    let faces = vec![
        Face {
            id: 0,
            corners: Vec::new(),
            color: inside,
        },
        Face {
            id: 1,
            corners: Vec::new(),
            color: outside,
        },
    ];
    let black = graph_of(&faces, Color::Black);
    let white = graph_of(&faces, Color::White);
    TaitStructure {
        faces,
        outer_face: 1,
        side,
        black,
        white,
        signs: Vec::new(),
        n_plus: 0,
        n_minus: 0,
        base_arc: None,
        black_base: 0,
        white_base: 0,
        corner_face: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd, pretzel};

    fn check_counts(t: &TaitStructure) {
        let n = t.crossing_count();
        assert_eq!(
            t.black.vertices.len() + t.white.vertices.len(),
            t.faces.len()
        );
        assert_eq!(t.black.edge_count(), n);
        assert_eq!(t.white.edge_count(), n);
        if n > 0 {
            // V - E + F on the 4-valent graph: n - 2n + F = 2
            assert_eq!(t.faces.len(), n + 2);
        }
        assert_eq!(t.n_plus + t.n_minus, n);
        for e in 0..n {
            assert_eq!(t.white.heights[e], 1 - t.black.heights[e]);
        }
        assert_eq!(
            t.faces[t.outer_face].color,
            if t.side == ColorSide::Normal {
                Color::White
            } else {
                Color::Black
            }
        );
    }

    #[test]
    fn round_unknot_graphs() {
        let t = build_tait(&parse_pd("UNKNOT").unwrap(), None, ColorSide::Normal).unwrap();
        assert_eq!((t.black.vertices.len(), t.black.edge_count()), (1, 0));
        assert_eq!(t.white.vertices.len(), 1);
        check_counts(&t);
    }

    #[test]
    fn trefoil_sides() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let mut sizes = Vec::new();
        for side in [ColorSide::Normal, ColorSide::Swapped] {
            let t = build_tait(&d, None, side).unwrap();
            check_counts(&t);
            let h = &t.black.heights;
            assert!(
                h.iter().all(|&x| x == h[0]),
                "alternating diagram has uniform heights"
            );
            sizes.push(t.black.vertices.len());
        }
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn alternating_heights_are_uniform() {
        for (strands, word) in [
            (3, &[1, -2, 1, -2][..]),
            (2, &[1, 1, 1, 1, 1]),
            (3, &[1, 1, 1, -2, 1, -2]),
        ] {
            let d = braid_closure(strands, word).unwrap();
            assert!(d.is_alternating());
            let t = build_tait(&d, None, ColorSide::Normal).unwrap();
            check_counts(&t);
            assert!(t.black.heights.iter().all(|&x| x == t.black.heights[0]));
        }
        // non-alternating: mixed heights
        let t = build_tait(
            &braid_closure(2, &[1, -1, 1]).unwrap(),
            None,
            ColorSide::Normal,
        )
        .unwrap();
        assert!(t.black.heights.iter().any(|&x| x != t.black.heights[0]));
    }

    #[test]
    fn pretzel_8_19_black_graph() {
        let d = pretzel(&[3, 3, -2]).unwrap();
        let t = build_tait(&d, None, ColorSide::Normal).unwrap();
        check_counts(&t);
        assert_eq!(t.black.vertices.len(), 7);
        assert_eq!(t.black.edge_count(), 8);
        let ones = t.black.heights.iter().filter(|&&h| h == 1).count();
        let mut split = [ones, 8 - ones];
        split.sort();
        assert_eq!(split, [2, 6]);
    }

    #[test]
    fn base_faces_touch_base_arc() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for &arc in d.arcs() {
            let t = build_tait(&d, Some(arc), ColorSide::Normal).unwrap();
            assert_eq!(t.faces[t.black.vertices[t.black_base]].color, Color::Black);
            assert_eq!(t.faces[t.white.vertices[t.white_base]].color, Color::White);
        }
        assert!(matches!(
            build_tait(&d, Some(99), ColorSide::Normal),
            Err(DiagramError::UnknownArc(99))
        ));
    }

    #[test]
    fn json_is_stable() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        let t = build_tait(&d, None, ColorSide::Normal).unwrap();
        assert_eq!(
            t.to_json(),
            build_tait(&d, None, ColorSide::Normal).unwrap().to_json()
        );
        assert!(t.to_json().starts_with("{\n  \"faces\""));
    }
}
