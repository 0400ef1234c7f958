use serde::Serialize;

use super::laurent::LaurentMonomial;

/// Face and vertex variables of a black graph.
///
/// Face variables `u_f` live on the faces of the black graph (white regions
/// of the diagram), vertex variables `z_v` on its vertices (black regions).
/// One of each is omitted and recovered from `prod u_f = 1`, `prod z_v = 1`.
/// Variable indices run over faces first, then vertices, each sorted by
/// region id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableTable {
    pub face_vars: Vec<usize>,
    pub vertex_vars: Vec<usize>,
    pub omitted_face: usize,
    pub omitted_vertex: usize,
}

impl VariableTable {
    /// `faces` and `vertices` are region ids; the omitted ones must be members.
    pub fn new(
        faces: &[usize],
        vertices: &[usize],
        omitted_face: usize,
        omitted_vertex: usize,
    ) -> Self {
        let mut face_vars: Vec<usize> = faces
            .iter()
            .copied()
            .filter(|&f| f != omitted_face)
            .collect();
        let mut vertex_vars: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|&v| v != omitted_vertex)
            .collect();
        face_vars.sort_unstable();
        vertex_vars.sort_unstable();
        debug_assert_eq!(face_vars.len() + 1, faces.len());
        debug_assert_eq!(vertex_vars.len() + 1, vertices.len());
        VariableTable {
            face_vars,
            vertex_vars,
            omitted_face,
            omitted_vertex,
        }
    }

    pub fn len(&self) -> usize {
        self.face_vars.len() + self.vertex_vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn face_index(&self, region: usize) -> Option<usize> {
        self.face_vars.binary_search(&region).ok()
    }

    pub fn vertex_index(&self, region: usize) -> Option<usize> {
        self.vertex_vars
            .binary_search(&region)
            .ok()
            .map(|i| i + self.face_vars.len())
    }

    /// Region id carried by variable `var`.
    pub fn region(&self, var: usize) -> usize {
        if var < self.face_vars.len() {
            self.face_vars[var]
        } else {
            self.vertex_vars[var - self.face_vars.len()]
        }
    }

    /// `prod_{f in set} u_f`, rewritten through the relation when the omitted face is in `set`.
    pub fn face_product(&self, set: &[usize]) -> LaurentMonomial {
        product(set, &self.face_vars, self.omitted_face, 0)
    }

    /// `prod_{v in set} z_v`, rewritten likewise.
    pub fn vertex_product(&self, set: &[usize]) -> LaurentMonomial {
        product(
            set,
            &self.vertex_vars,
            self.omitted_vertex,
            self.face_vars.len(),
        )
    }

    pub fn name(&self, var: usize) -> String {
        if var < self.face_vars.len() {
            format!("u{}", self.face_vars[var])
        } else {
            format!("z{}", self.vertex_vars[var - self.face_vars.len()])
        }
    }
}

fn product(set: &[usize], vars: &[usize], omitted: usize, offset: usize) -> LaurentMonomial {
    if set.contains(&omitted) {
        let inside: Vec<usize> = vars
            .iter()
            .enumerate()
            .filter(|(_, r)| !set.contains(r))
            .map(|(i, _)| i + offset)
            .collect();
        LaurentMonomial::from_exponents(inside.into_iter().map(|i| (i, -1)))
    } else {
        LaurentMonomial::from_exponents(set.iter().map(|r| {
            let i = vars.binary_search(r).expect("region carries a variable");
            (i + offset, 1)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_rewriting() {
        let t = VariableTable::new(&[10, 4, 7], &[1, 3, 5, 9], 10, 1);
        assert_eq!(t.face_vars, vec![4, 7]);
        assert_eq!(t.vertex_index(5), Some(3));
        assert_eq!(t.vertex_product(&[5]), LaurentMonomial::var(3));
        // {1, 3, 5}: omitted vertex inside, complement is {9}
        assert_eq!(t.vertex_product(&[1, 3, 5]), LaurentMonomial::var(4).inv());
        assert_eq!(
            t.face_product(&[10]),
            LaurentMonomial::from_exponents([(0, -1), (1, -1)])
        );
        assert_eq!(t.name(2), "z3");
    }
}
