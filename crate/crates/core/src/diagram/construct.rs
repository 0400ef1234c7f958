//! Building diagrams from crossings wired port to port.
//!
//! Crossing `k` owns ports `4k..4k+4` in counter-clockwise order; ports
//! `4k` and `4k+2` carry the under-strand. Traversal then assigns arc labels
//! consecutively along each component and writes the planar diagram code.

use super::pd::LinkDiagram;
use super::DiagramError;

#[derive(Clone, Debug)]
pub struct PortGraph {
    link: Vec<Option<usize>>,
    free_loops: usize,
}

/// Compass corners of a crossing drawn with strands running upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    SouthWest,
    SouthEast,
    NorthEast,
    NorthWest,
}

impl Corner {
    fn ccw_index(self) -> usize {
        match self {
            Corner::SouthWest => 0,
            Corner::SouthEast => 1,
            Corner::NorthEast => 2,
            Corner::NorthWest => 3,
        }
    }
}

impl PortGraph {
    pub fn new(crossings: usize) -> Self {
        PortGraph {
            link: vec![None; 4 * crossings],
            free_loops: 0,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.link.len() / 4
    }

    pub fn add_free_loop(&mut self) {
        self.free_loops += 1;
    }

    pub fn connect(&mut self, a: usize, b: usize) {
        assert!(
            self.link[a].is_none() && self.link[b].is_none(),
            "port wired twice"
        );
        self.link[a] = Some(b);
        self.link[b] = Some(a);
    }

    /// Port at compass corner `c` of crossing `k` when the over-strand runs
    /// along the south-west/north-east diagonal iff `sw_ne_over`.
    pub fn corner(k: usize, c: Corner, sw_ne_over: bool) -> usize {
        // the under diagonal occupies ports 0 and 2
        let shift = if sw_ne_over { 3 } else { 0 };
        4 * k + (c.ccw_index() + shift) % 4
    }

    fn other(&self, port: usize) -> usize {
        self.link[port].expect("port left unwired")
    }

    /// Traverses every component, preferring to leave from the ports in
    /// `preferred` (in order) when a component is first met.
    pub fn to_diagram(&self, preferred: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let n = self.crossing_count();
        if self.link.iter().any(|l| l.is_none()) {
            return Err(DiagramError::MalformedCode("port left unwired".into()));
        }
        // label of the arc arriving at each port, and whether the port is an entry
        let mut label = vec![0u32; 4 * n];
        let mut incoming = vec![None::<bool>; 4 * n];
        let mut next = 1u32;
        let order = preferred.iter().copied().chain(0..4 * n);
        for start in order {
            if incoming[start].is_some() {
                continue;
            }
            let mut out = start;
            loop {
                let arrive = self.other(out);
                label[out] = next;
                label[arrive] = next;
                incoming[out] = Some(false);
                incoming[arrive] = Some(true);
                next += 1;
                out = 4 * (arrive / 4) + (arrive % 4 + 2) % 4;
                if out == start {
                    break;
                }
            }
        }
        let mut crossings = Vec::with_capacity(n);
        let mut over_forward = Vec::with_capacity(n);
        for k in 0..n {
            let base = 4 * k;
            let rot = if incoming[base] == Some(true) { 0 } else { 2 };
            let tuple = [0, 1, 2, 3].map(|i| label[base + (i + rot) % 4]);
            crossings.push(tuple);
            over_forward.push(incoming[base + (1 + rot) % 4] == Some(true));
        }
        if n == 0 {
            return Ok(LinkDiagram::unknot_with_loops(self.free_loops));
        }
        LinkDiagram::with_orientation(crossings, over_forward, self.free_loops)
    }
}

/// Closure of a braid on `strands` strands. Letter `i > 0` is the generator
/// crossing strands `i` and `i+1` with the left strand going over (a positive
/// crossing), `-i` its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    #[derive(Clone, Copy)]
    enum End {
        Bottom(usize),
        Port(usize),
    }
    let mut g = PortGraph::new(word.len());
    let mut cur: Vec<End> = (0..strands).map(End::Bottom).collect();
    let mut bottom: Vec<Option<usize>> = vec![None; strands];
    let attach =
        |g: &mut PortGraph, end: End, port: usize, bottom: &mut Vec<Option<usize>>| match end {
            End::Bottom(j) => bottom[j] = Some(port),
            End::Port(p) => g.connect(p, port),
        };
    for (k, &letter) in word.iter().enumerate() {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= strands {
            return Err(DiagramError::MalformedCode(format!(
                "braid letter {letter} on {strands} strands"
            )));
        }
        let over = letter > 0;
        let (l, r) = (i - 1, i);
        attach(
            &mut g,
            cur[l],
            PortGraph::corner(k, Corner::SouthWest, over),
            &mut bottom,
        );
        attach(
            &mut g,
            cur[r],
            PortGraph::corner(k, Corner::SouthEast, over),
            &mut bottom,
        );
        cur[l] = End::Port(PortGraph::corner(k, Corner::NorthWest, over));
        cur[r] = End::Port(PortGraph::corner(k, Corner::NorthEast, over));
    }
    for j in 0..strands {
        match (cur[j], bottom[j]) {
            (End::Bottom(_), _) => g.add_free_loop(),
            (End::Port(top), Some(b)) => g.connect(top, b),
            (End::Port(_), None) => unreachable!("a crossed position has its bottom attached"),
        }
    }
    // leave from the top ends so that strands run upward
    let start: Vec<usize> = cur
        .iter()
        .filter_map(|e| if let End::Port(p) = e { Some(*p) } else { None })
        .collect();
    g.to_diagram(&start)
}

/// Standard pretzel projection: columns of vertical twists with `twists[j]`
/// half-twists each, the sign choosing the twist handedness. The top arc of
/// the first column carries label 1.
pub fn pretzel(twists: &[i32]) -> Result<LinkDiagram, DiagramError> {
    if twists.is_empty() || twists.contains(&0) {
        return Err(DiagramError::MalformedCode(
            "pretzel columns need nonzero twists".into(),
        ));
    }
    let n: usize = twists.iter().map(|t| t.unsigned_abs() as usize).sum();
    let mut g = PortGraph::new(n);
    let mut k = 0;
    // (bottom-left, bottom-right, top-left, top-right) ports of each column
    let mut columns = Vec::new();
    for &t in twists {
        let over = t > 0;
        let first = k;
        for r in 0..t.unsigned_abs() as usize {
            if r > 0 {
                g.connect(
                    PortGraph::corner(k - 1, Corner::NorthWest, over),
                    PortGraph::corner(k, Corner::SouthWest, over),
                );
                g.connect(
                    PortGraph::corner(k - 1, Corner::NorthEast, over),
                    PortGraph::corner(k, Corner::SouthEast, over),
                );
            }
            k += 1;
        }
        let last = k - 1;
        columns.push((
            PortGraph::corner(first, Corner::SouthWest, over),
            PortGraph::corner(first, Corner::SouthEast, over),
            PortGraph::corner(last, Corner::NorthWest, over),
            PortGraph::corner(last, Corner::NorthEast, over),
        ));
    }
    let m = columns.len();
    for j in 0..m - 1 {
        g.connect(columns[j].3, columns[j + 1].2);
        g.connect(columns[j].1, columns[j + 1].0);
    }
    // the two outer arcs
    g.connect(columns[0].2, columns[m - 1].3);
    g.connect(columns[0].0, columns[m - 1].1);
    g.to_diagram(&[columns[0].2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_braid() {
        let d = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
        assert!(d.is_alternating());
        let m = braid_closure(2, &[-1, -1, -1]).unwrap();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
    }

    #[test]
    fn kink_from_braid() {
        let d = braid_closure(1 + 1, &[1]).unwrap();
        assert_eq!((d.crossing_count(), d.components()), (1, 1));
        assert!(d.is_connected());
    }

    #[test]
    fn split_strand_is_a_free_loop() {
        let d = braid_closure(3, &[1, 1]).unwrap();
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.components(), 3);
        assert!(!d.is_connected());
    }

    #[test]
    fn pretzel_shape() {
        let d = pretzel(&[3, 3, -2]).unwrap();
        assert_eq!(d.crossing_count(), 8);
        assert_eq!(d.components(), 1);
        let l = pretzel(&[2, 2]).unwrap();
        assert_eq!(l.components(), 2);
    }
}
