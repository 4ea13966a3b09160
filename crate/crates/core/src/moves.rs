//! Reidemeister moves in the insertion direction.
//!
//! Every move rewrites ports of the PD code, appends any new crossings, and
//! relabels edges consecutively. The unbounded face is carried along: the
//! result records, as its explicit outer face, the face that contains a corner
//! of the input's unbounded face untouched by the move.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    default_outer_face, extract_faces, Crossing, Diagram, DiagramError, DiagramOptions, Face, Port,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("face {0} does not exist")]
    InvalidFace(usize),
    #[error("edges {0} and {1} are not distinct edges on the boundary of face {2}")]
    NotCofacial(usize, usize, usize),
    #[error("face {0} is not a triangle with three distinct crossings")]
    NotTriangle(usize),
    #[error("triangle {0} is cyclic: no strand passes over both of its crossings")]
    CyclicTriangle(usize),
    #[error("a kink on a crossingless circle needs a diagram that is a single circle")]
    NotSingleCircle,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T> = std::result::Result<T, MoveError>;

/// One move and its site.
///
/// `R1.variant` bit 0 puts the kink on the right of the edge (else the left);
/// bit 1 makes the first pass through the new crossing the over-pass.
/// `R2.variant` bit 0 pushes `edge_a` under `edge_b` (else over). R3 has no
/// variant: sliding across a given triangle has a single outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum MoveSpec {
    R1 {
        /// `None` twists a crossingless circle.
        edge: Option<usize>,
        variant: u8,
    },
    R2 {
        face: usize,
        edge_a: usize,
        edge_b: usize,
        variant: u8,
    },
    R3 {
        face: usize,
    },
}

pub fn apply(d: &Diagram, spec: &MoveSpec) -> Result<Diagram> {
    match *spec {
        MoveSpec::R1 { edge, variant } => apply_r1(d, edge, variant),
        MoveSpec::R2 {
            face,
            edge_a,
            edge_b,
            variant,
        } => apply_r2(d, face, edge_a, edge_b, variant),
        MoveSpec::R3 { face } => apply_r3(d, face),
    }
}

pub fn apply_all(d: &Diagram, specs: &[MoveSpec]) -> Result<Diagram> {
    specs.iter().try_fold(d.clone(), |acc, s| apply(&acc, s))
}

/// A crossing from its four arms listed counterclockwise, given which arm
/// carries the incoming under-strand and which the incoming over-strand.
fn crossing_from_arms(arms: [usize; 4], under_in: usize, over_in: usize) -> Crossing {
    debug_assert_eq!((over_in + 4 - under_in) % 2, 1);
    Crossing {
        edges: std::array::from_fn(|k| arms[(under_in + k) % 4]),
        over_forward: over_in == (under_in + 1) % 4,
    }
}

fn max_label(d: &Diagram) -> usize {
    d.edges().max().unwrap_or(0)
}

fn corner_faces(d: &Diagram, faces: &[Face]) -> Vec<[usize; 4]> {
    let mut cf = vec![[0; 4]; d.crossing_count()];
    for f in faces {
        for &(x, q) in &f.corners {
            cf[x][q] = f.id;
        }
    }
    cf
}

/// A corner of the input's unbounded face at a crossing outside `touched`.
fn anchor(d: &Diagram, touched: &[usize]) -> Result<Option<(usize, usize)>> {
    if d.crossing_count() == 0 {
        return Ok(None);
    }
    let faces = extract_faces(d)?;
    let outer = d.outer_face().unwrap_or_else(|| default_outer_face(&faces));
    Ok(faces[outer]
        .corners
        .iter()
        .copied()
        .find(|(x, _)| !touched.contains(x)))
}

fn finish(
    old: &Diagram,
    crossings: Vec<Crossing>,
    circles: usize,
    anchor: Option<(usize, usize)>,
) -> Result<Diagram> {
    let opts = DiagramOptions {
        oriented: false,
        circles,
        outer_face: None,
    };
    let d = Diagram::from_crossings(crossings, opts)?
        .renumbered()
        .with_oriented(old.is_oriented())?;
    let faces = extract_faces(&d)?;
    let outer = match anchor {
        Some((x, q)) => corner_faces(&d, &faces)[x][q],
        None => default_outer_face(&faces),
    };
    Ok(d.with_outer_face(Some(outer))?)
}

pub fn apply_r1(d: &Diagram, edge: Option<usize>, variant: u8) -> Result<Diagram> {
    let right = variant & 1 == 1;
    let first_over = variant & 2 != 0;
    let (mut crossings, e, e2, l, circles) = match edge {
        None => {
            if d.crossing_count() != 0 || d.circles() != 1 {
                return Err(MoveError::NotSingleCircle);
            }
            (Vec::new(), 1, 1, 2, 0)
        }
        Some(e) => {
            let ends = d.ends(e).ok_or(MoveError::InvalidEdge(e))?;
            let (l, e2) = (max_label(d) + 1, max_label(d) + 2);
            let mut cs = d.crossings().to_vec();
            cs[ends.head.crossing].edges[ends.head.slot] = e2;
            (cs, e, e2, l, d.circles())
        }
    };
    // Positions counterclockwise. The first pass enters at 2 and leaves at 0
    // into the loop; the second pass re-enters at 1 (left) or 3 (right).
    let (arms, second_in) = if right {
        ([l, e2, e, l], 3)
    } else {
        ([l, l, e, e2], 1)
    };
    let (under_in, over_in) = if first_over {
        (second_in, 2)
    } else {
        (2, second_in)
    };
    crossings.push(crossing_from_arms(arms, under_in, over_in));
    let anchor = anchor(d, &[])?;
    finish(d, crossings, circles, anchor)
}

pub fn apply_r2(d: &Diagram, face: usize, edge_a: usize, edge_b: usize, variant: u8) -> Result<Diagram> {
    let faces = extract_faces(d)?;
    let f = faces.get(face).ok_or(MoveError::InvalidFace(face))?;
    let on_boundary = |e| f.boundary_edges.contains(&e);
    if edge_a == edge_b || !on_boundary(edge_a) || !on_boundary(edge_b) {
        return Err(MoveError::NotCofacial(edge_a, edge_b, face));
    }
    let cf = corner_faces(d, &faces);
    let left_of = |e: usize| {
        let t = d.ends(e).expect("boundary edge").tail;
        cf[t.crossing][t.slot]
    };
    let ends_a = d.ends(edge_a).expect("boundary edge");
    let ends_b = d.ends(edge_b).expect("boundary edge");

    // Picture the face as a disk with edge_a along the top and edge_b along
    // the bottom; edge_a is pushed down across edge_b, meeting it at an east
    // and a west crossing.
    let a_west = left_of(edge_a) == face;
    let b_east = left_of(edge_b) == face;
    let base = max_label(d);
    let (a1, a2, a3) = (edge_a, base + 1, base + 2);
    let (b1, b2, b3) = (edge_b, base + 3, base + 4);
    let (e, n, w, s) = (0, 1, 2, 3);

    let make = |east: bool| {
        // a descends at its first crossing P and climbs back at Q
        let is_p = east == a_west;
        let mut arms = [0; 4];
        arms[n] = if is_p { a1 } else { a3 };
        arms[s] = a2;
        let a_in = if is_p { n } else { s };
        let b_in = if b_east {
            arms[w] = if east { b2 } else { b1 };
            arms[e] = if east { b3 } else { b2 };
            w
        } else {
            arms[e] = if east { b1 } else { b2 };
            arms[w] = if east { b2 } else { b3 };
            e
        };
        if variant & 1 == 0 {
            crossing_from_arms(arms, b_in, a_in)
        } else {
            crossing_from_arms(arms, a_in, b_in)
        }
    };

    let mut crossings = d.crossings().to_vec();
    crossings[ends_a.head.crossing].edges[ends_a.head.slot] = a3;
    crossings[ends_b.head.crossing].edges[ends_b.head.slot] = b3;
    crossings.push(make(true));
    crossings.push(make(false));
    let anchor = anchor(d, &[])?;
    finish(d, crossings, d.circles(), anchor)
}

struct Side {
    from: Port,
    to: Port,
}

fn triangle_sides(d: &Diagram, f: &Face) -> Option<[Side; 3]> {
    if f.corners.len() != 3 {
        return None;
    }
    let xs: Vec<usize> = f.corners.iter().map(|c| c.0).collect();
    if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
        return None;
    }
    Some(std::array::from_fn(|i| {
        let (x, q) = f.corners[i];
        let from = Port::new(x, (q + 1) % 4);
        Side {
            from,
            to: d.across(from),
        }
    }))
}

fn is_cyclic(sides: &[Side; 3]) -> bool {
    !sides
        .iter()
        .any(|s| Crossing::is_over_slot(s.from.slot) && Crossing::is_over_slot(s.to.slot))
}

/// Faces where a third move applies.
pub fn r3_sites(d: &Diagram) -> Result<Vec<usize>> {
    if d.crossing_count() == 0 {
        return Ok(Vec::new());
    }
    let faces = extract_faces(d)?;
    Ok(faces
        .iter()
        .filter(|f| triangle_sides(d, f).is_some_and(|s| !is_cyclic(&s)))
        .map(|f| f.id)
        .collect())
}

pub fn apply_r3(d: &Diagram, face: usize) -> Result<Diagram> {
    let faces = extract_faces(d)?;
    let f = faces.get(face).ok_or(MoveError::InvalidFace(face))?;
    let sides = triangle_sides(d, f).ok_or(MoveError::NotTriangle(face))?;
    if is_cyclic(&sides) {
        return Err(MoveError::CyclicTriangle(face));
    }
    // Each strand meets the other two in the opposite order afterwards: its
    // triangle side is replaced by a new edge joining the far arms.
    let base = max_label(d);
    let mut writes = Vec::new();
    for (i, s) in sides.iter().enumerate() {
        let fresh = base + 1 + i;
        let o_in = d.edge_at(s.from.opposite());
        let o_out = d.edge_at(s.to.opposite());
        writes.push((s.from.opposite(), fresh));
        writes.push((s.from, o_out));
        writes.push((s.to, o_in));
        writes.push((s.to.opposite(), fresh));
    }
    let mut crossings = d.crossings().to_vec();
    for (p, e) in writes {
        crossings[p.crossing].edges[p.slot] = e;
    }
    let touched: Vec<usize> = f.corners.iter().map(|c| c.0).collect();
    let anchor = anchor(d, &touched)?;
    finish(d, crossings, d.circles(), anchor)
}
