//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here goes through `coloring::build_constraints` or the face
//! tracer: regions, shading and crossing signs are rebuilt from the raw PD
//! tuples, and colorings are counted by trying every assignment.

#![allow(dead_code)]

use ternknot::algebra::magma::MagmaTable;
use ternknot::algebra::{FiniteTernaryAlgebra, Kind};
use ternknot::diagram::{Diagram, ShadedDiagram};

/// Raw `[a, b, c, d]` tuples of a diagram.
pub fn tuples(d: &Diagram) -> Vec<[usize; 4]> {
    d.crossings().iter().map(|c| c.edges).collect()
}

fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
        p[i] = p[p[i]];
        i = p[i];
    }
    i
}

/// The two `(crossing, slot)` places an edge is attached to.
fn occurrences(t: &[[usize; 4]]) -> std::collections::BTreeMap<usize, Vec<(usize, usize)>> {
    let mut occ = std::collections::BTreeMap::<usize, Vec<(usize, usize)>>::new();
    for (x, arms) in t.iter().enumerate() {
        for (s, &e) in arms.iter().enumerate() {
            occ.entry(e).or_default().push((x, s));
        }
    }
    occ
}

fn other_end(occ: &std::collections::BTreeMap<usize, Vec<(usize, usize)>>, e: usize, here: (usize, usize)) -> (usize, usize) {
    let v = &occ[&e];
    assert_eq!(v.len(), 2, "edge {e} must appear twice");
    if v[0] == here {
        v[1]
    } else {
        v[0]
    }
}

/// Region of each quadrant `(x, q)` (index `4x + q`), plus the region count.
///
/// Quadrant q sits between arms q and q+1. Walking out along arm q+1 keeps
/// the quadrant on the right, and at the far end (slot j) the right-hand
/// side is quadrant j.
pub fn regions(t: &[[usize; 4]]) -> (Vec<usize>, usize) {
    let occ = occurrences(t);
    let mut p: Vec<usize> = (0..4 * t.len()).collect();
    for (x, arms) in t.iter().enumerate() {
        for q in 0..4 {
            let s = (q + 1) % 4;
            let (y, j) = other_end(&occ, arms[s], (x, s));
            let (a, b) = (find(&mut p, 4 * x + q), find(&mut p, 4 * y + j));
            p[a] = b;
        }
    }
    let mut ids = std::collections::BTreeMap::new();
    let labels: Vec<usize> = (0..p.len())
        .map(|i| {
            let r = find(&mut p, i);
            let n = ids.len();
            *ids.entry(r).or_insert(n)
        })
        .collect();
    let n = ids.len();
    (labels, n)
}

/// Proper two-coloring of regions (true = black), anchored so that `white`
/// is white. Neighbouring quadrants at a crossing always differ.
pub fn shading(t: &[[usize; 4]], labels: &[usize], n: usize, white: usize) -> Vec<bool> {
    let mut shade: Vec<Option<bool>> = vec![None; n];
    shade[white] = Some(false);
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..t.len() {
            for q in 0..4 {
                let (f, g) = (labels[4 * x + q], labels[4 * x + (q + 1) % 4]);
                match (shade[f], shade[g]) {
                    (Some(a), None) => {
                        shade[g] = Some(!a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        shade[f] = Some(!b);
                        changed = true;
                    }
                    (Some(a), Some(b)) => assert_ne!(a, b, "diagram is not checkerboard shadable"),
                    (None, None) => {}
                }
            }
        }
    }
    shade.into_iter().map(|s| s.expect("connected diagram")).collect()
}

/// Crossing signs with strands oriented so that the under-strand runs
/// slot 0 -> slot 2; the over-strand direction is propagated along
/// components. A crossing whose over-strand enters at slot 1 is negative.
pub fn signs(t: &[[usize; 4]]) -> Vec<i8> {
    let occ = occurrences(t);
    // Some(true): strand enters the crossing at this slot.
    let mut entering: Vec<[Option<bool>; 4]> = vec![[None; 4]; t.len()];
    for e in &mut entering {
        e[0] = Some(true);
        e[2] = Some(false);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..t.len() {
            for s in 0..4 {
                let Some(inc) = entering[x][s] else { continue };
                let (y, j) = other_end(&occ, t[x][s], (x, s));
                if entering[y][j].is_none() {
                    entering[y][j] = Some(!inc);
                    changed = true;
                }
                let o = (s + 2) % 4;
                if entering[x][o].is_none() {
                    entering[x][o] = Some(!inc);
                    changed = true;
                }
            }
        }
    }
    entering
        .iter()
        .map(|e| if e[1].expect("orientable over-strand") { -1 } else { 1 })
        .collect()
}

/// Everything the brute-force count needs, derived from the tuples alone.
/// The unbounded region is taken from `sd` (it is an input, not derived).
pub struct Oracle {
    pub labels: Vec<usize>,
    pub regions: usize,
    pub black: Vec<bool>,
    pub signs: Vec<i8>,
}

impl Oracle {
    pub fn new(sd: &ShadedDiagram) -> Self {
        let d = sd.diagram();
        let t = tuples(d);
        if t.is_empty() {
            let regions = 1 + d.circles();
            return Oracle {
                labels: vec![],
                regions,
                black: vec![false; regions],
                signs: vec![],
            };
        }
        let (labels, n) = regions(&t);
        let outer = sd.outer_face();
        let q = (0..4 * t.len())
            .find(|&i| sd.quadrant_faces(i / 4)[i % 4] == outer)
            .expect("outer face touches a crossing");
        let black = shading(&t, &labels, n, labels[q]);
        let signs = if d.is_oriented() { signs(&t) } else { vec![] };
        Oracle {
            labels,
            regions: n + d.circles(),
            black,
            signs,
        }
    }

    fn satisfied(&self, a: &FiniteTernaryAlgebra, v: &[usize]) -> bool {
        let crossings = self.labels.len() / 4;
        for x in 0..crossings {
            let f = |q: usize| v[self.labels[4 * x + q % 4]];
            for h in 0..4 {
                let marker = h % 2 == 1;
                let (i, j, k) = if marker { (h + 1, h + 2, h + 3) } else { (h + 3, h + 2, h + 1) };
                let first = match a.kind {
                    Kind::Unoriented => !self.black[self.labels[4 * x + h]],
                    Kind::Oriented => marker == (self.signs[x] > 0),
                };
                let t = if first { &a.op1 } else { &a.op2 };
                if t.get(f(i), f(j), f(k)) != f(h) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of assignments region -> element satisfying every relation.
    pub fn count(&self, a: &FiniteTernaryAlgebra) -> u64 {
        let n = a.size();
        let mut v = vec![0usize; self.regions];
        let mut total = 0;
        loop {
            if self.satisfied(a, &v) {
                total += 1;
            }
            let mut i = 0;
            loop {
                if i == v.len() {
                    return total;
                }
                v[i] += 1;
                if v[i] < n {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }
}

pub fn oracle_count(sd: &ShadedDiagram, a: &FiniteTernaryAlgebra) -> u64 {
    Oracle::new(sd).count(a)
}

/// Arcs (maximal over-passing strands) of a PD code: edge -> arc id.
pub fn arcs(t: &[[usize; 4]]) -> (std::collections::BTreeMap<usize, usize>, usize) {
    let edges: Vec<usize> = occurrences(t).keys().copied().collect();
    let idx = |e: usize| edges.binary_search(&e).unwrap();
    let mut p: Vec<usize> = (0..edges.len()).collect();
    for arms in t {
        let (a, b) = (find(&mut p, idx(arms[1])), find(&mut p, idx(arms[3])));
        p[a] = b;
    }
    let mut ids = std::collections::BTreeMap::new();
    let map = edges
        .iter()
        .map(|&e| {
            let r = find(&mut p, idx(e));
            let n = ids.len();
            (e, *ids.entry(r).or_insert(n))
        })
        .collect();
    (map, ids.len())
}

/// Core-group colorings into Z/n by brute force: at each crossing the two
/// under-arcs satisfy `u1 + u2 = 2 * over`.
pub fn core_arc_count_cyclic(d: &Diagram, n: usize) -> u64 {
    let t = tuples(d);
    let (arc, k) = arcs(&t);
    let mut v = vec![0usize; k];
    let mut total = 0;
    loop {
        if t
            .iter()
            .all(|x| (v[arc[&x[0]]] + v[arc[&x[2]]]) % n == (2 * v[arc[&x[1]]]) % n)
        {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return total;
            }
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Fox colorings into a group: every `n^arcs` assignment checked against
/// `under_out = over * under_in * over^-1` (or the inverse conjugation at
/// negative crossings).
pub fn wirtinger_count(d: &Diagram, g: &MagmaTable) -> u64 {
    let t = tuples(d);
    let s = signs(&t);
    let (arc, k) = arcs(&t);
    let n = g.size();
    let inv = |x: usize| g.inverse(x).unwrap();
    let mut v = vec![0usize; k];
    let mut total = 0;
    loop {
        let ok = t.iter().zip(&s).all(|(x, &sg)| {
            let (o, i, out) = (v[arc[&x[1]]], v[arc[&x[0]]], v[arc[&x[2]]]);
            let want = if sg > 0 {
                g.mul(g.mul(o, i), inv(o))
            } else {
                g.mul(g.mul(inv(o), i), o)
            };
            want == out
        });
        if ok {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return total;
            }
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

pub fn fixture(name: &str) -> Diagram {
    ternknot::fixtures::diagram(name).expect("fixture exists").expect("fixture parses")
}

/// Shaded fixture, oriented when the algebra needs crossing signs.
pub fn shaded_for(name: &str, kind: Kind) -> ShadedDiagram {
    let d = fixture(name);
    let d = if kind == Kind::Oriented { d.with_oriented(true).unwrap() } else { d };
    ShadedDiagram::new(d).unwrap()
}
