use std::collections::BTreeMap;
use std::fmt;

use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// An oriented link diagram given by a planar diagram code.
///
/// Crossing `X(a, b, c, d)` lists its four arcs counter-clockwise starting
/// from the incoming under-strand, so the under-strand runs `a -> c`. The
/// over-strand runs either `b -> d` or `d -> b`; the latter is a positive
/// crossing. Crossingless components are counted in `free_loops`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    /// `true` if the over-strand of the crossing runs from position 1 to 3.
    over_forward: Vec<bool>,
    free_loops: usize,
    arcs: Vec<u32>,
    /// Per crossing and position, the dense index of the arc there.
    slot_arc: Vec<[usize; 4]>,
    /// Per arc, its two `(crossing, position)` ends.
    arc_ends: Vec<[(usize, usize); 2]>,
    components: usize,
}

/// Parses a planar diagram code and checks that the diagram is connected.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let d = LinkDiagram::parse(text)?;
    if !d.is_connected() {
        return Err(DiagramError::Disconnected);
    }
    Ok(d)
}

impl LinkDiagram {
    /// The crossingless round unknot.
    pub fn unknot() -> Self {
        Self::unknot_with_loops(1)
    }

    /// The crossingless diagram of `loops` round circles.
    pub fn unknot_with_loops(loops: usize) -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            over_forward: Vec::new(),
            free_loops: loops,
            arcs: Vec::new(),
            slot_arc: Vec::new(),
            arc_ends: Vec::new(),
            components: loops,
        }
    }

    /// Parses `X(1,4,2,5) X(3,6,4,1) ...` (brackets, commas and an outer
    /// `PD[...]` wrapper are accepted) or the token `UNKNOT`. Connectivity
    /// is not checked here; see [`parse_pd`].
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let body = text.trim();
        if body.eq_ignore_ascii_case("unknot") {
            return Ok(Self::unknot());
        }
        let body = body
            .strip_prefix("PD")
            .map(|rest| {
                let rest = rest.trim();
                rest.strip_prefix(['[', '('])
                    .and_then(|r| r.strip_suffix([']', ')']))
                    .unwrap_or(rest)
            })
            .unwrap_or(body);

        let mut crossings = Vec::new();
        let mut rest = body.trim_start_matches([' ', ',', '\t', '\n']);
        while !rest.is_empty() {
            let after_x = rest
                .strip_prefix('X')
                .ok_or_else(|| {
                    DiagramError::MalformedCode(format!("expected 'X' at '{}'", clip(rest)))
                })?
                .trim_start();
            let close = match after_x.chars().next() {
                Some('(') => ')',
                Some('[') => ']',
                _ => {
                    return Err(DiagramError::MalformedCode(format!(
                        "expected '(' after X at '{}'",
                        clip(rest)
                    )))
                }
            };
            let end = after_x
                .find(close)
                .ok_or_else(|| DiagramError::MalformedCode("unterminated crossing".into()))?;
            let labels: Vec<u32> = after_x[1..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| DiagramError::MalformedCode(format!("bad arc label '{s}'")))
                })
                .collect::<Result<_, _>>()?;
            let tuple: [u32; 4] = labels.try_into().map_err(|v: Vec<u32>| {
                DiagramError::MalformedCode(format!("crossing with {} arcs", v.len()))
            })?;
            crossings.push(tuple);
            rest = after_x[end + 1..].trim_start_matches([' ', ',', '\t', '\n']);
        }
        if crossings.is_empty() {
            return Err(DiagramError::MalformedCode("no crossings".into()));
        }
        Self::new(crossings)
    }

    /// Builds a diagram from crossing tuples, deriving the orientation.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, DiagramError> {
        let mut d = Self::skeleton(crossings, 0)?;
        d.over_forward = d.derive_orientation()?;
        Ok(d)
    }

    /// Builds a diagram whose over-strand directions are already known.
    pub(crate) fn with_orientation(
        crossings: Vec<[u32; 4]>,
        over_forward: Vec<bool>,
        free_loops: usize,
    ) -> Result<Self, DiagramError> {
        let mut d = Self::skeleton(crossings, free_loops)?;
        d.over_forward = over_forward;
        d.check_orientation()?;
        Ok(d)
    }

    fn skeleton(crossings: Vec<[u32; 4]>, free_loops: usize) -> Result<Self, DiagramError> {
        let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, t) in crossings.iter().enumerate() {
            for (p, &a) in t.iter().enumerate() {
                ends.entry(a).or_default().push((x, p));
            }
        }
        if let Some((&arc, v)) = ends.iter().find(|(_, v)| v.len() != 2) {
            return Err(DiagramError::ArcMultiplicity {
                arc,
                count: v.len(),
            });
        }
        let arcs: Vec<u32> = ends.keys().copied().collect();
        let arc_ends: Vec<[(usize, usize); 2]> = ends.values().map(|v| [v[0], v[1]]).collect();
        let mut slot_arc = vec![[0usize; 4]; crossings.len()];
        for (i, e) in arc_ends.iter().enumerate() {
            for &(x, p) in e {
                slot_arc[x][p] = i;
            }
        }
        let mut d = LinkDiagram {
            over_forward: vec![false; crossings.len()],
            crossings,
            free_loops,
            arcs,
            slot_arc,
            arc_ends,
            components: 0,
        };
        d.components = d.count_components() + free_loops;
        Ok(d)
    }

    /// The other end of the arc leaving `(x, p)`.
    pub fn across(&self, x: usize, p: usize) -> (usize, usize) {
        let e = self.arc_ends[self.slot_arc[x][p]];
        if e[0] == (x, p) {
            e[1]
        } else {
            e[0]
        }
    }

    fn count_components(&self) -> usize {
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut count = 0;
        for x in 0..self.crossings.len() {
            for p in 0..4 {
                if seen[x][p] {
                    continue;
                }
                count += 1;
                let (mut y, mut q) = (x, p);
                while !seen[y][q] {
                    seen[y][q] = true;
                    seen[y][(q + 2) % 4] = true;
                    (y, q) = self.across(y, (q + 2) % 4);
                }
            }
        }
        count
    }

    /// Walks a strand from the incoming slot `(x, p)`; returns the incoming
    /// slots in order.
    fn strand_from(&self, x: usize, p: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let (mut y, mut q) = (x, p);
        loop {
            out.push((y, q));
            (y, q) = self.across(y, (q + 2) % 4);
            if (y, q) == (x, p) {
                return out;
            }
            if out.len() > 4 * self.crossings.len() {
                // a strand must return to its start
                unreachable!("strand walk does not close");
            }
        }
    }

    fn derive_orientation(&self) -> Result<Vec<bool>, DiagramError> {
        let n = self.crossings.len();
        let mut over: Vec<Option<bool>> = vec![None; n];
        let mut seen = vec![[false; 4]; n];
        let mut starts: Vec<(usize, usize)> = (0..n).map(|x| (x, 0)).collect();
        starts.extend((0..n).flat_map(|x| [(x, 1), (x, 3)]));
        for (x, p) in starts {
            if seen[x][p] {
                continue;
            }
            let start = if p == 0 {
                (x, 0)
            } else {
                self.over_only_start(x, p)
            };
            let walk = self.strand_from(start.0, start.1);
            for &(y, q) in &walk {
                if seen[y][q] || seen[y][(q + 2) % 4] {
                    return Err(DiagramError::MalformedCode(format!(
                        "strand through crossing {} is traversed twice",
                        y + 1
                    )));
                }
                seen[y][q] = true;
                seen[y][(q + 2) % 4] = true;
                match q {
                    0 => {}
                    2 => {
                        return Err(DiagramError::MalformedCode(format!(
                            "under-strand orientation of crossing {} contradicts its component",
                            y + 1
                        )))
                    }
                    _ => over[y] = Some(q == 1),
                }
            }
        }
        Ok(over
            .into_iter()
            .map(|o| o.expect("every crossing visited"))
            .collect())
    }

    /// Entry slot for a component that only passes over crossings: follow
    /// increasing arc labels from the smallest label, else enter at `(x, p)`.
    fn over_only_start(&self, x: usize, p: usize) -> (usize, usize) {
        let walk = self.strand_from(x, p);
        let label_in = |&(y, q): &(usize, usize)| self.crossings[y][q];
        let label_out = |&(y, q): &(usize, usize)| self.crossings[y][(q + 2) % 4];
        let (i, _) = walk
            .iter()
            .enumerate()
            .min_by_key(|(_, s)| label_in(s))
            .expect("nonempty walk");
        let forward = label_out(&walk[i]) == label_in(&walk[i]) + 1;
        if forward || walk.len() == 1 {
            return walk[i];
        }
        // reverse direction: enter at the opposite slots
        let (y, q) = walk[i];
        let back = self.across(y, q);
        if self.crossings[back.0][(back.1 + 2) % 4] == label_in(&walk[i]) + 1 {
            (back.0, (back.1 + 2) % 4)
        } else {
            walk[0]
        }
    }

    fn check_orientation(&self) -> Result<(), DiagramError> {
        for x in 0..self.crossings.len() {
            for p in [0, 1, 3] {
                if p != 0 && (p == 1) != self.over_forward[x] {
                    continue;
                }
                let (y, q) = self.across(x, (p + 2) % 4);
                let ok = match q {
                    0 => true,
                    2 => false,
                    _ => (q == 1) == self.over_forward[y],
                };
                if !ok {
                    return Err(DiagramError::MalformedCode(
                        "inconsistent strand orientation".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Arc labels in increasing order.
    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn arc_index(&self, label: u32) -> Option<usize> {
        self.arcs.binary_search(&label).ok()
    }

    pub fn arc_at(&self, x: usize, p: usize) -> usize {
        self.slot_arc[x][p]
    }

    pub fn arc_ends(&self, arc: usize) -> [(usize, usize); 2] {
        self.arc_ends[arc]
    }

    pub fn over_forward(&self, x: usize) -> bool {
        self.over_forward[x]
    }

    /// Whether position `p` of crossing `x` is where a strand enters.
    pub fn is_incoming(&self, x: usize, p: usize) -> bool {
        match p {
            0 => true,
            2 => false,
            1 => self.over_forward[x],
            _ => !self.over_forward[x],
        }
    }

    pub fn sign(&self, x: usize) -> Sign {
        if self.over_forward[x] {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn n_plus(&self) -> usize {
        self.over_forward.iter().filter(|&&f| !f).count()
    }

    pub fn n_minus(&self) -> usize {
        self.over_forward.iter().filter(|&&f| f).count()
    }

    /// Connected as a plane graph (assumption (A) for the complex).
    pub fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return self.free_loops == 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for p in 0..4 {
                let (y, _) = self.across(x, p);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Over- and under-passes alternate along every component.
    pub fn is_alternating(&self) -> bool {
        (0..self.crossings.len()).all(|x| {
            (0..4).all(|p| {
                // over at one end of the arc, under at the other
                let (_, q) = self.across(x, p);
                (p % 2) != (q % 2)
            })
        })
    }

    /// Exchanges over- and under-strands at every crossing.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .zip(&self.over_forward)
            .map(|(&[a, b, c, d], &fwd)| if fwd { [b, c, d, a] } else { [d, a, b, c] })
            .collect();
        let over_forward = self.over_forward.iter().map(|&f| !f).collect();
        Self::with_orientation(crossings, over_forward, self.free_loops)
            .expect("mirror preserves validity")
    }

    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "UNKNOT".to_string();
        }
        self.crossings
            .iter()
            .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn clip(s: &str) -> &str {
    match s.char_indices().nth(16) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!(d.arcs(), &[1, 2, 3, 4, 5, 6]);
        assert!(d.is_alternating());
        // consecutive labels: the over-strand of X(1,4,2,5) runs 4 -> 5
        assert_eq!((d.n_plus(), d.n_minus()), (0, 3));
        assert_eq!(
            parse_pd("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap(),
            d
        );
    }

    #[test]
    fn kink_and_unknot() {
        let k = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!((k.crossing_count(), k.components()), (1, 1));
        let u = parse_pd("UNKNOT").unwrap();
        assert_eq!(
            (u.crossing_count(), u.components(), u.free_loops()),
            (0, 1, 1)
        );
        assert_eq!(u.mirror(), u);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,7,3)"),
            Err(DiagramError::ArcMultiplicity { .. })
        ));
        assert!(matches!(
            parse_pd("X(1,2,3)"),
            Err(DiagramError::MalformedCode(_))
        ));
        assert!(matches!(
            parse_pd("Y(1,2,3,4)"),
            Err(DiagramError::MalformedCode(_))
        ));
        assert!(matches!(parse_pd(""), Err(DiagramError::MalformedCode(_))));
        // two separate kinks
        assert!(matches!(
            parse_pd("X(1,1,2,2) X(3,3,4,4)"),
            Err(DiagramError::Disconnected)
        ));
    }

    #[test]
    fn mirror_swaps_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (d.n_minus(), d.n_plus()));
        assert_eq!(m.mirror(), d);
        assert!(m.is_alternating());
    }

    #[test]
    fn hopf_link_has_two_components() {
        let d = parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert_eq!(d.components(), 2);
    }
}
