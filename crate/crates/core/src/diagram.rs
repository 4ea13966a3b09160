//! Link diagrams given by planar-diagram (PD) codes.
//!
//! A crossing `X(a,b,c,d)` lists its four incident edges counterclockwise,
//! starting at the incoming under-strand, so the under-strand runs `a -> c`.
//! Arm `i` of a crossing is the edge in slot `i`; quadrant `i` is the corner
//! lying counterclockwise between arm `i` and arm `i + 1` (mod 4).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code near `{0}`")]
    Malformed(String),
    #[error("edge {edge} occurs {count} time(s); every edge must occur exactly twice")]
    EdgeMultiplicity { edge: usize, count: usize },
    #[error("edge numbering is not consecutive along an oriented component (at edge {0})")]
    NonConsecutive(usize),
    #[error("diagram is disconnected; only crossingless circles may be added separately")]
    Disconnected,
    #[error("empty PD code requires an explicit circle count")]
    EmptyWithoutCircles,
    #[error("inconsistent strand orientation at edge {0}")]
    Orientation(usize),
    #[error("diagram is not planar: found {found} faces, expected {expected}")]
    NotPlanar { found: usize, expected: usize },
    #[error("face {0} does not exist")]
    InvalidFace(usize),
    #[error("crossing signs need an oriented diagram")]
    NotOriented,
}

pub type Result<T> = std::result::Result<T, DiagramError>;

/// One end of an edge: the crossing and the slot (arm index) it occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port {
    pub crossing: usize,
    pub slot: usize,
}

impl Port {
    pub fn new(crossing: usize, slot: usize) -> Self {
        Self { crossing, slot }
    }

    /// The port on the opposite side of the same strand pass.
    pub fn opposite(self) -> Self {
        Self::new(self.crossing, (self.slot + 2) % 4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [usize; 4],
    /// The over-strand runs slot 1 -> slot 3 (`b -> d`) when set, else `d -> b`.
    pub over_forward: bool,
}

impl Crossing {
    pub fn is_over_slot(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// Whether the strand enters the crossing through `slot`.
    pub fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.over_forward,
            _ => !self.over_forward,
        }
    }

    /// Sign by the right-hand rule: positive when the over-strand runs `d -> b`.
    pub fn sign(&self) -> i8 {
        if self.over_forward {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEnds {
    pub tail: Port,
    pub head: Port,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiagramOptions {
    pub oriented: bool,
    pub circles: usize,
    pub outer_face: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    oriented: bool,
    circles: usize,
    outer_face: Option<usize>,
    ends: BTreeMap<usize, EdgeEnds>,
    components: Vec<Vec<usize>>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.oriented == other.oriented
            && self.circles == other.circles
            && self.outer_face == other.outer_face
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// Builds a diagram from raw PD tuples, inferring the over-strand directions.
    pub fn new(tuples: Vec<[usize; 4]>, opts: DiagramOptions) -> Result<Self> {
        let ports = collect_ports(&tuples)?;
        let forward = infer_over_directions(&tuples, &ports)?;
        let crossings = tuples
            .into_iter()
            .zip(forward)
            .map(|(edges, over_forward)| Crossing {
                edges,
                over_forward,
            })
            .collect();
        Self::from_crossings(crossings, opts)
    }

    /// Builds a diagram whose over-strand directions are already known.
    pub fn from_crossings(crossings: Vec<Crossing>, opts: DiagramOptions) -> Result<Self> {
        if crossings.is_empty() && opts.circles == 0 {
            return Err(DiagramError::EmptyWithoutCircles);
        }
        let tuples: Vec<[usize; 4]> = crossings.iter().map(|c| c.edges).collect();
        let ports = collect_ports(&tuples)?;
        let mut ends = BTreeMap::new();
        for (&edge, ps) in &ports {
            let inc: Vec<bool> = ps
                .iter()
                .map(|p| crossings[p.crossing].is_incoming(p.slot))
                .collect();
            let (tail, head) = match (inc[0], inc[1]) {
                (false, true) => (ps[0], ps[1]),
                (true, false) => (ps[1], ps[0]),
                _ => return Err(DiagramError::Orientation(edge)),
            };
            ends.insert(edge, EdgeEnds { tail, head });
        }
        check_connected(&crossings, &ports)?;

        let mut components = Vec::new();
        let mut seen = BTreeSet::new();
        for &start in ends.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while seen.insert(e) {
                cycle.push(e);
                let head = ends[&e].head;
                e = crossings[head.crossing].edges[(head.slot + 2) % 4];
            }
            components.push(cycle);
        }

        if opts.oriented {
            for cycle in &components {
                check_consecutive(cycle)?;
            }
        }
        let d = Self {
            crossings,
            oriented: opts.oriented,
            circles: opts.circles,
            outer_face: opts.outer_face,
            ends,
            components,
        };
        if let Some(f) = d.outer_face {
            if f >= d.face_count() {
                return Err(DiagramError::InvalidFace(f));
            }
        }
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.ends.keys().copied()
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer_face
    }

    pub fn options(&self) -> DiagramOptions {
        DiagramOptions {
            oriented: self.oriented,
            circles: self.circles,
            outer_face: self.outer_face,
        }
    }

    /// Number of link components, crossingless circles included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.circles
    }

    /// Edge cycles of the components that meet a crossing, in strand order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn ends(&self, edge: usize) -> Option<EdgeEnds> {
        self.ends.get(&edge).copied()
    }

    pub fn edge_at(&self, port: Port) -> usize {
        self.crossings[port.crossing].edges[port.slot]
    }

    /// The other port of the edge sitting at `port`.
    pub fn across(&self, port: Port) -> Port {
        let ends = self.ends[&self.edge_at(port)];
        if ends.tail == port {
            ends.head
        } else {
            ends.tail
        }
    }

    /// Index of the component (in [`Self::components`]) containing `edge`.
    pub fn component_of(&self, edge: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&edge))
    }

    /// Number of faces of the diagram on the sphere.
    pub fn face_count(&self) -> usize {
        if self.crossings.is_empty() {
            self.circles + 1
        } else {
            self.crossings.len() + 2 + self.circles
        }
    }

    pub fn with_outer_face(mut self, outer: Option<usize>) -> Result<Self> {
        if let Some(f) = outer {
            if f >= self.face_count() {
                return Err(DiagramError::InvalidFace(f));
            }
        }
        self.outer_face = outer;
        Ok(self)
    }

    pub fn with_oriented(self, oriented: bool) -> Result<Self> {
        let opts = DiagramOptions {
            oriented,
            ..self.options()
        };
        Self::from_crossings(self.crossings, opts)
    }

    /// Relabels edges `1..` consecutively along each component, following the
    /// orientation. Components are visited in order of their smallest label.
    pub fn renumbered(&self) -> Self {
        let mut order: Vec<&Vec<usize>> = self.components.iter().collect();
        order.sort_by_key(|c| c.iter().min().copied());
        let mut relabel = BTreeMap::new();
        let mut next = 1;
        for cycle in order {
            let min = *cycle.iter().min().expect("nonempty cycle");
            let start = cycle.iter().position(|&e| e == min).unwrap();
            for k in 0..cycle.len() {
                relabel.insert(cycle[(start + k) % cycle.len()], next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                edges: c.edges.map(|e| relabel[&e]),
                over_forward: c.over_forward,
            })
            .collect();
        Self::from_crossings(crossings, self.options()).expect("relabelling preserves validity")
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> Self {
        self.mirror_keeping_edges().renumbered()
    }

    /// Like [`Diagram::mirror`] but keeps every edge id, so faces and edge
    /// directions correspond one to one with the original.
    pub fn mirror_keeping_edges(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                if c.over_forward {
                    Crossing {
                        edges: [b, cc, d, a],
                        over_forward: false,
                    }
                } else {
                    Crossing {
                        edges: [d, a, b, cc],
                        over_forward: true,
                    }
                }
            })
            .collect();
        Self::from_crossings(crossings, self.options()).expect("mirror preserves validity")
    }

    /// Reverses the orientation of every component.
    pub fn reversed(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                Crossing {
                    edges: [cc, d, a, b],
                    over_forward: c.over_forward,
                }
            })
            .collect();
        Self::from_crossings(
            crossings,
            DiagramOptions {
                oriented: false,
                ..self.options()
            },
        )
        .expect("reversal preserves validity")
        .renumbered()
        .with_oriented(self.oriented)
        .expect("renumbered diagram is consecutive")
    }

    /// FNV-1a (64-bit) hash of the PD text, as 16 hex digits.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_pd().bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("{h:016x}")
    }

    /// PD text; annotations are emitted as `@` directives.
    pub fn to_pd(&self) -> String {
        let mut out = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges;
                format!("X({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(" ");
        let mut directives = Vec::new();
        if self.oriented {
            directives.push("@oriented".to_string());
        }
        if self.circles > 0 {
            directives.push(format!("@circles {}", self.circles));
        }
        if let Some(f) = self.outer_face {
            directives.push(format!("@outer {f}"));
        }
        for d in directives {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&d);
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

fn collect_ports(tuples: &[[usize; 4]]) -> Result<BTreeMap<usize, Vec<Port>>> {
    let mut ports: BTreeMap<usize, Vec<Port>> = BTreeMap::new();
    for (x, t) in tuples.iter().enumerate() {
        for (s, &e) in t.iter().enumerate() {
            ports.entry(e).or_default().push(Port::new(x, s));
        }
    }
    for (&edge, ps) in &ports {
        if ps.len() != 2 {
            return Err(DiagramError::EdgeMultiplicity {
                edge,
                count: ps.len(),
            });
        }
    }
    Ok(ports)
}

fn check_connected(crossings: &[Crossing], ports: &BTreeMap<usize, Vec<Port>>) -> Result<()> {
    if crossings.is_empty() {
        return Ok(());
    }
    let mut seen = vec![false; crossings.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for e in crossings[x].edges {
            for p in &ports[&e] {
                if !seen[p.crossing] {
                    seen[p.crossing] = true;
                    queue.push_back(p.crossing);
                }
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(DiagramError::Disconnected)
    }
}

/// Over-strand directions. Under-strand slots fix the direction of their edges,
/// which propagates along strands; a component with no under-crossing falls back
/// to the numbering rule (`b -> d` iff `d` follows `b`).
fn infer_over_directions(
    tuples: &[[usize; 4]],
    ports: &BTreeMap<usize, Vec<Port>>,
) -> Result<Vec<bool>> {
    // incoming[p] for every port; None while unknown
    let mut incoming: BTreeMap<Port, bool> = BTreeMap::new();
    let mut forward: Vec<Option<bool>> = vec![None; tuples.len()];
    let mut queue = VecDeque::new();

    let assign = |p: Port,
                  inc: bool,
                  incoming: &mut BTreeMap<Port, bool>,
                  queue: &mut VecDeque<Port>|
     -> Result<()> {
        match incoming.get(&p) {
            Some(&v) if v != inc => Err(DiagramError::Orientation(tuples[p.crossing][p.slot])),
            Some(_) => Ok(()),
            None => {
                incoming.insert(p, inc);
                queue.push_back(p);
                Ok(())
            }
        }
    };

    for x in 0..tuples.len() {
        assign(Port::new(x, 0), true, &mut incoming, &mut queue)?;
        assign(Port::new(x, 2), false, &mut incoming, &mut queue)?;
    }

    let successor = numbering_successor(tuples);
    let mut seed = 0;
    loop {
        while let Some(p) = queue.pop_front() {
            let inc = incoming[&p];
            let e = tuples[p.crossing][p.slot];
            let other = if ports[&e][0] == p {
                ports[&e][1]
            } else {
                ports[&e][0]
            };
            assign(other, !inc, &mut incoming, &mut queue)?;
            if Crossing::is_over_slot(p.slot) {
                assign(p.opposite(), !inc, &mut incoming, &mut queue)?;
                forward[p.crossing] = Some(if p.slot == 1 { inc } else { !inc });
            }
        }
        while seed < tuples.len() && forward[seed].is_some() {
            seed += 1;
        }
        if seed == tuples.len() {
            break;
        }
        let [_, b, _, d] = tuples[seed];
        let fwd = successor.get(&b) == Some(&d) || successor.get(&d) != Some(&b);
        assign(Port::new(seed, 1), fwd, &mut incoming, &mut queue)?;
    }
    Ok(forward.into_iter().map(|f| f.unwrap_or(true)).collect())
}

/// `next(e)` under the consecutive-numbering convention: the following label in
/// the sorted edge set of the strand component, wrapping around.
fn numbering_successor(tuples: &[[usize; 4]]) -> BTreeMap<usize, usize> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<usize, usize>, e: usize) -> usize {
        let p = *parent.entry(e).or_insert(e);
        if p == e {
            e
        } else {
            let r = find(parent, p);
            parent.insert(e, r);
            r
        }
    }
    for t in tuples {
        for (u, v) in [(t[0], t[2]), (t[1], t[3])] {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent.insert(ru, rv);
        }
    }
    let labels: Vec<usize> = parent.keys().copied().collect();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in labels {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(e);
    }
    let mut next = BTreeMap::new();
    for g in groups.values() {
        for (i, &e) in g.iter().enumerate() {
            next.insert(e, g[(i + 1) % g.len()]);
        }
    }
    next
}

fn check_consecutive(cycle: &[usize]) -> Result<()> {
    let min = *cycle.iter().min().unwrap();
    let start = cycle.iter().position(|&e| e == min).unwrap();
    for k in 0..cycle.len() {
        let e = cycle[(start + k) % cycle.len()];
        if e != min + k {
            return Err(DiagramError::NonConsecutive(e));
        }
    }
    Ok(())
}

/// Parses PD text: whitespace- or comma-separated `X(a,b,c,d)` tuples. Lines may
/// carry `#` comments and the directives `@oriented`, `@circles N`, `@outer F`.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    parse_pd_with(text, DiagramOptions::default())
}

/// Like [`parse_pd`]; directives in the text override `defaults`.
pub fn parse_pd_with(text: &str, defaults: DiagramOptions) -> Result<Diagram> {
    let mut opts = defaults;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some(directive) = line.strip_prefix('@') {
            let mut words = directive.split_whitespace();
            let key = words.next().unwrap_or("");
            let value = words.next();
            let number = |v: Option<&str>| {
                v.and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| DiagramError::Malformed(line.to_string()))
            };
            match key {
                "oriented" => opts.oriented = true,
                "unoriented" => opts.oriented = false,
                "circles" => opts.circles = number(value)?,
                "outer" => opts.outer_face = Some(number(value)?),
                _ => return Err(DiagramError::Malformed(line.to_string())),
            }
        } else {
            body.push_str(line);
            body.push(' ');
        }
    }
    let tuples = parse_tuples(&body)?;
    Diagram::new(tuples, opts)
}

fn parse_tuples(body: &str) -> Result<Vec<[usize; 4]>> {
    let mut tuples = Vec::new();
    let mut rest = body.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('X')
            .and_then(|r| r.trim_start().strip_prefix('('))
            .ok_or_else(|| DiagramError::Malformed(snippet(rest)))?;
        let close = open
            .find(')')
            .ok_or_else(|| DiagramError::Malformed(snippet(rest)))?;
        let fields: Vec<&str> = open[..close].split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(DiagramError::Malformed(snippet(rest)));
        }
        let mut t = [0; 4];
        for (slot, field) in fields.iter().enumerate() {
            t[slot] = field
                .parse()
                .map_err(|_| DiagramError::Malformed(snippet(rest)))?;
        }
        tuples.push(t);
        rest = open[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(tuples)
}

fn snippet(s: &str) -> String {
    s.chars().take(16).collect()
}

/// A region of the diagram: the corners it occupies and the edges on its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    /// `(crossing, quadrant)` pairs in boundary order.
    pub corners: Vec<(usize, usize)>,
    pub boundary_edges: Vec<usize>,
}

/// Faces by corner traversal: from quadrant `i` of crossing `x`, follow arm
/// `i + 1` to its other end `(y, j)`; the face continues in quadrant `j` of `y`.
/// Crossingless circles contribute their disks after the traversed faces.
pub fn extract_faces(d: &Diagram) -> Result<Vec<Face>> {
    let mut faces = Vec::new();
    if d.crossings.is_empty() {
        for id in 0..=d.circles {
            faces.push(Face {
                id,
                corners: Vec::new(),
                boundary_edges: Vec::new(),
            });
        }
        return Ok(faces);
    }
    let mut seen = vec![[false; 4]; d.crossings.len()];
    for x in 0..d.crossings.len() {
        for q in 0..4 {
            if seen[x][q] {
                continue;
            }
            let mut corners = Vec::new();
            let mut boundary = Vec::new();
            let (mut cx, mut cq) = (x, q);
            while !seen[cx][cq] {
                seen[cx][cq] = true;
                corners.push((cx, cq));
                let arm = Port::new(cx, (cq + 1) % 4);
                boundary.push(d.edge_at(arm));
                let next = d.across(arm);
                cx = next.crossing;
                cq = next.slot;
            }
            faces.push(Face {
                id: faces.len(),
                corners,
                boundary_edges: boundary,
            });
        }
    }
    let expected = d.crossings.len() + 2;
    if faces.len() != expected {
        return Err(DiagramError::NotPlanar {
            found: faces.len(),
            expected,
        });
    }
    for _ in 0..d.circles {
        faces.push(Face {
            id: faces.len(),
            corners: Vec::new(),
            boundary_edges: Vec::new(),
        });
    }
    Ok(faces)
}

/// Default unbounded region: most boundary edges, ties to the smallest id.
pub fn default_outer_face(faces: &[Face]) -> usize {
    faces
        .iter()
        .max_by(|a, b| {
            a.boundary_edges
                .len()
                .cmp(&b.boundary_edges.len())
                .then(b.id.cmp(&a.id))
        })
        .map(|f| f.id)
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shade {
    White,
    Black,
}

impl Shade {
    pub fn flip(self) -> Self {
        match self {
            Shade::White => Shade::Black,
            Shade::Black => Shade::White,
        }
    }
}

/// The proper 2-coloring of faces with `outer` white. Circle disks sit inside
/// the host region (the outer face, or the region around all circles when the
/// diagram has no crossings) and take the opposite shade.
pub fn checkerboard(d: &Diagram, faces: &[Face], outer: usize) -> Result<Vec<Shade>> {
    if outer >= faces.len() {
        return Err(DiagramError::InvalidFace(outer));
    }
    let mut shade: Vec<Option<Shade>> = vec![None; faces.len()];
    if d.crossings.is_empty() {
        let host = if outer == 0 { Shade::White } else { Shade::Black };
        shade[0] = Some(host);
        for s in shade.iter_mut().skip(1) {
            *s = Some(host.flip());
        }
        return Ok(shade.into_iter().map(Option::unwrap).collect());
    }
    if faces[outer].corners.is_empty() {
        return Err(DiagramError::InvalidFace(outer));
    }
    let mut corner_face = vec![[0usize; 4]; d.crossings.len()];
    for f in faces {
        for &(x, q) in &f.corners {
            corner_face[x][q] = f.id;
        }
    }
    shade[outer] = Some(Shade::White);
    let mut queue = VecDeque::from([outer]);
    while let Some(f) = queue.pop_front() {
        let s = shade[f].unwrap();
        for &(x, q) in &faces[f].corners {
            for nq in [(q + 1) % 4, (q + 3) % 4] {
                let g = corner_face[x][nq];
                match shade[g] {
                    None => {
                        shade[g] = Some(s.flip());
                        queue.push_back(g);
                    }
                    Some(t) if t == s => {
                        return Err(DiagramError::NotPlanar {
                            found: faces.len(),
                            expected: d.face_count(),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(shade
        .into_iter()
        .map(|s| s.unwrap_or(Shade::Black))
        .collect())
}

/// Positive-marker quadrants: the quadrants immediately counterclockwise of the
/// two over-strand arms (slots 1 and 3), i.e. quadrants 1 and 3.
pub fn compute_markers(d: &Diagram) -> Vec<[usize; 2]> {
    d.crossings.iter().map(|_| [1, 3]).collect()
}

pub fn is_marker_quadrant(q: usize) -> bool {
    q % 2 == 1
}

pub fn crossing_signs(d: &Diagram) -> Result<Vec<i8>> {
    if !d.oriented {
        return Err(DiagramError::NotOriented);
    }
    Ok(d.crossings.iter().map(Crossing::sign).collect())
}

/// A diagram together with its faces, unbounded face, shading, and markers.
#[derive(Debug, Clone)]
pub struct ShadedDiagram {
    diagram: Diagram,
    faces: Vec<Face>,
    outer_face: usize,
    shading: Vec<Shade>,
    markers: Vec<[usize; 2]>,
    signs: Option<Vec<i8>>,
    /// face id at each `(crossing, quadrant)`
    corner_face: Vec<[usize; 4]>,
}

impl ShadedDiagram {
    /// Uses the outer face recorded in the diagram, else the default heuristic.
    pub fn new(diagram: Diagram) -> Result<Self> {
        let outer = diagram.outer_face;
        Self::with_outer(diagram, outer)
    }

    pub fn with_outer(diagram: Diagram, outer: Option<usize>) -> Result<Self> {
        let faces = extract_faces(&diagram)?;
        let outer_face = outer.unwrap_or_else(|| default_outer_face(&faces));
        let shading = checkerboard(&diagram, &faces, outer_face)?;
        let markers = compute_markers(&diagram);
        let signs = crossing_signs(&diagram).ok();
        let mut corner_face = vec![[0usize; 4]; diagram.crossing_count()];
        for f in &faces {
            for &(x, q) in &f.corners {
                corner_face[x][q] = f.id;
            }
        }
        Ok(Self {
            diagram,
            faces,
            outer_face,
            shading,
            markers,
            signs,
            corner_face,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn shading(&self) -> &[Shade] {
        &self.shading
    }

    pub fn shade(&self, face: usize) -> Shade {
        self.shading[face]
    }

    pub fn markers(&self) -> &[[usize; 2]] {
        &self.markers
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// Faces around crossing `x` in quadrant order.
    pub fn quadrant_faces(&self, x: usize) -> [usize; 4] {
        self.corner_face[x]
    }

    /// Faces to the left and right of `edge`, with respect to its orientation.
    pub fn edge_sides(&self, edge: usize) -> Option<(usize, usize)> {
        let tail = self.diagram.ends(edge)?.tail;
        let faces = self.corner_face[tail.crossing];
        Some((faces[tail.slot], faces[(tail.slot + 3) % 4]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.component_count(), 1);
        assert!(d.crossings().iter().all(|c| c.over_forward));
    }

    #[test]
    fn empty_code_needs_circles() {
        assert_eq!(parse_pd("").unwrap_err(), DiagramError::EmptyWithoutCircles);
        let d = parse_pd("@circles 1").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn unpaired_edges_rejected() {
        // 2, 3, 5 and 6 each occur once; the smallest is reported
        let err = parse_pd("X(1,4,2,5) X(3,6,4,1)").unwrap_err();
        assert_eq!(err, DiagramError::EdgeMultiplicity { edge: 2, count: 1 });
    }

    #[test]
    fn malformed_tuples_rejected() {
        assert!(matches!(parse_pd("X(1,2,3)"), Err(DiagramError::Malformed(_))));
        assert!(matches!(parse_pd("Y(1,2,2,1)"), Err(DiagramError::Malformed(_))));
        assert!(matches!(parse_pd("X(1,2,a,1)"), Err(DiagramError::Malformed(_))));
    }

    #[test]
    fn non_consecutive_numbering_rejected_when_oriented() {
        // trefoil with edges 2 and 5 swapped: still a valid PD, but not consecutive
        let text = "X(1,4,5,2) X(3,6,4,1) X(2,5,6,3)";
        assert!(parse_pd(text).is_ok());
        let err = parse_pd(&format!("{text}\n@oriented")).unwrap_err();
        assert!(matches!(err, DiagramError::NonConsecutive(_)));
    }

    #[test]
    fn disconnected_rejected() {
        let err = parse_pd("X(1,2,2,1) X(3,4,4,3)").unwrap_err();
        assert_eq!(err, DiagramError::Disconnected);
    }

    #[test]
    fn face_counts_follow_euler() {
        let t = parse_pd(TREFOIL).unwrap();
        assert_eq!(extract_faces(&t).unwrap().len(), 5);
        let f8 = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(extract_faces(&f8).unwrap().len(), 6);
        let u = parse_pd("@circles 1").unwrap();
        assert_eq!(extract_faces(&u).unwrap().len(), 2);
    }

    #[test]
    fn faces_partition_corners() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let faces = extract_faces(&d).unwrap();
        let mut all: Vec<(usize, usize)> = faces.iter().flat_map(|f| f.corners.clone()).collect();
        all.sort();
        let expected: Vec<(usize, usize)> = (0..4).flat_map(|x| (0..4).map(move |q| (x, q))).collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn trefoil_shading() {
        let sd = ShadedDiagram::new(parse_pd(TREFOIL).unwrap()).unwrap();
        let outer = sd.outer_face();
        assert_eq!(sd.faces()[outer].boundary_edges.len(), 3);
        let whites: Vec<usize> = (0..5).filter(|&f| sd.shade(f) == Shade::White).collect();
        assert_eq!(whites.len(), 2);
        assert!(whites.iter().all(|&f| sd.faces()[f].boundary_edges.len() == 3));
        assert!((0..5)
            .filter(|&f| sd.shade(f) == Shade::Black)
            .all(|f| sd.faces()[f].boundary_edges.len() == 2));
        let again = ShadedDiagram::with_outer(parse_pd(TREFOIL).unwrap(), Some(outer)).unwrap();
        assert_eq!(again.shading(), sd.shading());
    }

    #[test]
    fn shading_differs_across_every_edge() {
        for text in [TREFOIL, FIGURE_EIGHT, "X(1,2,2,1)", "X(1,3,2,4) X(3,1,4,2)"] {
            let sd = ShadedDiagram::new(parse_pd(text).unwrap()).unwrap();
            for e in sd.diagram().edges().collect::<Vec<_>>() {
                let (l, r) = sd.edge_sides(e).unwrap();
                assert_ne!(l, r);
                assert_ne!(sd.shade(l), sd.shade(r), "edge {e} in {text}");
            }
        }
    }

    #[test]
    fn unknot_shading() {
        let sd = ShadedDiagram::new(parse_pd("@circles 1").unwrap()).unwrap();
        assert_eq!(sd.shading(), &[Shade::White, Shade::Black]);
    }

    #[test]
    fn markers_are_opposite() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        for [p, q] in compute_markers(&d) {
            assert_eq!((p + 2) % 4, q);
        }
        // exactly one of any two adjacent quadrants is a marker quadrant
        for q in 0..4 {
            assert_ne!(is_marker_quadrant(q), is_marker_quadrant((q + 1) % 4));
        }
    }

    #[test]
    fn trefoil_signs() {
        let d = parse_pd(&format!("{TREFOIL}\n@oriented")).unwrap();
        assert_eq!(crossing_signs(&d).unwrap(), vec![-1, -1, -1]);
        assert_eq!(crossing_signs(&d.mirror()).unwrap(), vec![1, 1, 1]);
        assert_eq!(crossing_signs(&d.reversed()).unwrap(), vec![-1, -1, -1]);
        assert_eq!(crossing_signs(&parse_pd(TREFOIL).unwrap()), Err(DiagramError::NotOriented));
    }

    #[test]
    fn figure_eight_is_amphichiral_in_signs() {
        let d = parse_pd(&format!("{FIGURE_EIGHT}\n@oriented")).unwrap();
        let s = crossing_signs(&d).unwrap();
        assert_eq!(s.iter().map(|&x| x as i32).sum::<i32>(), 0);
    }

    #[test]
    fn hopf_link_two_edge_components() {
        let d = parse_pd("X(1,3,2,4) X(3,1,4,2)\n@oriented").unwrap();
        assert_eq!(d.component_count(), 2);
        let s = crossing_signs(&d).unwrap();
        assert_eq!(s[0], s[1]);
    }

    #[test]
    fn pd_round_trip() {
        for text in [TREFOIL, FIGURE_EIGHT, "X(1,2,2,1)\n@circles 2\n@outer 1"] {
            let d = parse_pd(text).unwrap();
            assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
        }
    }
}
