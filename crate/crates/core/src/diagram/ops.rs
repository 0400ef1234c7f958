use super::construct::PortGraph;
use super::pd::LinkDiagram;

/// Smoothing of a crossing. `Zero` joins corners 0 and 2 of the crossing
/// tuple, `One` joins corners 1 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothing {
    Zero,
    One,
}

/// Replaces crossing `c` by a smoothing. Arcs are relabelled `1..` along the
/// components, each component keeping the direction of its lowest old arc
/// that survives. The result may be disconnected.
pub fn resolve_crossing(d: &LinkDiagram, c: usize, r: Smoothing) -> LinkDiagram {
    assert!(c < d.crossing_count(), "crossing {c} out of range");
    let n = d.crossing_count();
    // the two strands of the smoothing, as position pairs of c
    let pairs = match r {
        Smoothing::Zero => [(1, 2), (3, 0)],
        Smoothing::One => [(0, 1), (2, 3)],
    };
    let mut inner = [0usize; 4];
    for (p, q) in pairs {
        inner[p] = q;
        inner[q] = p;
    }
    let new_index = |x: usize| if x < c { x } else { x - 1 };
    let port = |x: usize, p: usize| 4 * new_index(x) + p;

    let mut g = PortGraph::new(n - 1);
    // where the strand leaving (x, p) next meets a surviving crossing
    let follow = |x: usize, p: usize| -> (usize, usize) {
        let (mut y, mut q) = d.across(x, p);
        let mut steps = 0;
        while y == c {
            (y, q) = d.across(c, inner[q]);
            steps += 1;
            assert!(steps <= 4, "smoothing loop escapes the crossing");
        }
        (y, q)
    };
    for x in (0..n).filter(|&x| x != c) {
        for p in 0..4 {
            let (y, q) = follow(x, p);
            if (x, p) < (y, q) {
                g.connect(port(x, p), port(y, q));
            }
        }
    }
    // closed loops that never leave c
    let mut seen = [false; 4];
    for p in 0..4 {
        if seen[p] {
            continue;
        }
        let mut q = p;
        let mut closed = true;
        loop {
            seen[q] = true;
            seen[inner[q]] = true;
            let (y, s) = d.across(c, inner[q]);
            if y != c {
                closed = false;
                break;
            }
            q = s;
            if q == p {
                break;
            }
        }
        if closed {
            g.add_free_loop();
        }
    }
    // a component reached from outside c marks all its c ports seen already,
    // so only genuinely closed loops counted above
    for _ in 0..d.free_loops() {
        g.add_free_loop();
    }

    // preferred exits: the tail of each old arc in label order
    let mut preferred = Vec::new();
    for a in 0..d.arcs().len() {
        let [e0, e1] = d.arc_ends(a);
        let (tail, head) = if d.is_incoming(e0.0, e0.1) {
            (e1, e0)
        } else {
            (e0, e1)
        };
        if tail.0 != c {
            preferred.push(port(tail.0, tail.1));
        } else if head.0 != c {
            // leave from the far surviving end, travelling toward head
            let (y, q) = follow(head.0, head.1);
            preferred.push(port(y, q));
        }
    }
    g.to_diagram(&preferred)
        .expect("smoothing of a valid diagram is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn kink_resolves_to_circles() {
        let k = parse_pd("X(1,1,2,2)").unwrap();
        let a = resolve_crossing(&k, 0, Smoothing::Zero);
        let b = resolve_crossing(&k, 0, Smoothing::One);
        assert_eq!(a.crossing_count(), 0);
        assert_eq!(b.crossing_count(), 0);
        let mut loops = [a.free_loops(), b.free_loops()];
        loops.sort();
        assert_eq!(loops, [1, 2]);
    }

    #[test]
    fn trefoil_smoothings() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for c in 0..3 {
            let mut comps: Vec<usize> = [Smoothing::Zero, Smoothing::One]
                .iter()
                .map(|&r| {
                    let s = resolve_crossing(&d, c, r);
                    assert_eq!(s.crossing_count(), 2);
                    assert!(s.is_connected());
                    s.components()
                })
                .collect();
            comps.sort();
            // one Hopf link, one unknot
            assert_eq!(comps, vec![1, 2]);
        }
    }
}
