//! Region colorings by a finite ternary algebra, and arc colorings by a group.
//!
//! At a crossing with faces `f0..f3` in counterclockwise quadrant order, the
//! relation with head `fi` reads the other three faces counterclockwise from
//! `f(i+1)` when `i` is a marker quadrant, and clockwise from `f(i-1)`
//! otherwise. Unoriented: `op1` (W) for a white head, `op2` (B) for a black
//! one. Oriented: `op1` (C) when "head is a marker" agrees with "crossing is
//! positive", else `op2` (S).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AxiomReport, FiniteTernaryAlgebra, Kind, MagmaTable, TernaryTable};
use crate::diagram::{is_marker_quadrant, Diagram, Shade, ShadedDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("an oriented algebra needs an oriented diagram (crossing signs)")]
    MissingSigns,
    #[error("algebra `{name}` fails axioms {failed:?}; pass --unchecked to count anyway")]
    AxiomsFailed { name: String, failed: Vec<usize> },
    #[error("assignment has {found} values for {expected} faces")]
    Partial { found: usize, expected: usize },
    #[error("value {value} out of range for an algebra of size {n}")]
    OutOfRange { value: usize, n: usize },
    #[error("arc {arc} gets two different labels")]
    IllDefined { arc: usize },
    #[error("this computation needs an oriented diagram")]
    NotOriented,
    #[error("group table is not a group")]
    NotGroup,
    #[error("thread pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, ColoringError>;

/// Which operator a head relation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OpChoice {
    Op1,
    Op2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeadRelation {
    /// Quadrant whose face is determined.
    pub head: usize,
    pub op: OpChoice,
    /// Quadrants of the three inputs, in argument order.
    pub inputs: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingConstraint {
    pub crossing: usize,
    pub faces: [usize; 4],
    pub markers: [usize; 2],
    pub relations: [HeadRelation; 4],
}

impl CrossingConstraint {
    /// Face value the relation with head quadrant `q` demands.
    pub fn demand(&self, q: usize, tables: [&TernaryTable; 2], value: impl Fn(usize) -> usize) -> usize {
        let r = &self.relations[q];
        let t = match r.op {
            OpChoice::Op1 => tables[0],
            OpChoice::Op2 => tables[1],
        };
        let [i, j, k] = r.inputs.map(|p| value(self.faces[p]));
        t.get(i, j, k)
    }
}

/// Input quadrants for head `h`: counterclockwise for a marker, else clockwise.
pub fn reading_order(h: usize) -> [usize; 3] {
    if is_marker_quadrant(h) {
        [(h + 1) % 4, (h + 2) % 4, (h + 3) % 4]
    } else {
        [(h + 3) % 4, (h + 2) % 4, (h + 1) % 4]
    }
}

pub fn build_constraints(sd: &ShadedDiagram, a: &FiniteTernaryAlgebra) -> Result<Vec<CrossingConstraint>> {
    constraints_for(sd, a.kind)
}

/// Constraints depend on the algebra only through its kind.
pub fn constraints_for(sd: &ShadedDiagram, kind: Kind) -> Result<Vec<CrossingConstraint>> {
    let signs = match kind {
        Kind::Oriented => Some(sd.signs().ok_or(ColoringError::MissingSigns)?),
        Kind::Unoriented => None,
    };
    let d = sd.diagram();
    Ok((0..d.crossing_count())
        .map(|x| {
            let faces = sd.quadrant_faces(x);
            let relations = std::array::from_fn(|h| {
                let op = match signs {
                    None if sd.shade(faces[h]) == Shade::White => OpChoice::Op1,
                    None => OpChoice::Op2,
                    Some(s) if is_marker_quadrant(h) == (s[x] > 0) => OpChoice::Op1,
                    Some(_) => OpChoice::Op2,
                };
                HeadRelation {
                    head: h,
                    op,
                    inputs: reading_order(h),
                }
            });
            CrossingConstraint {
                crossing: x,
                faces,
                markers: sd.markers()[x],
                relations,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringOptions {
    /// Skip the axiom gate; all four relations are still imposed.
    pub unchecked: bool,
    pub jobs: usize,
}

impl Default for ColoringOptions {
    fn default() -> Self {
        Self {
            unchecked: false,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub algebra: String,
    pub diagram: String,
    pub count: u64,
    /// Face values indexed by face id, in lexicographic order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colorings: Option<Vec<Vec<usize>>>,
}

const NONE: usize = usize::MAX;

struct Solver<'a> {
    n: usize,
    tables: [&'a TernaryTable; 2],
    cons: Vec<CrossingConstraint>,
    face_crossings: Vec<Vec<usize>>,
    order: Vec<usize>,
}

struct State {
    val: Vec<usize>,
    trail: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(sd: &ShadedDiagram, a: &'a FiniteTernaryAlgebra) -> Result<Self> {
        let cons = build_constraints(sd, a)?;
        let nf = sd.face_count();
        let mut face_crossings = vec![Vec::new(); nf];
        let mut incidence = vec![0usize; nf];
        for c in &cons {
            for &f in &c.faces {
                incidence[f] += 1;
                if face_crossings[f].last() != Some(&c.crossing) {
                    face_crossings[f].push(c.crossing);
                }
            }
        }
        let mut order: Vec<usize> = (0..nf).collect();
        order.sort_by_key(|&f| (std::cmp::Reverse(incidence[f]), f));
        Ok(Self {
            n: a.size(),
            tables: [&a.op1, &a.op2],
            cons,
            face_crossings,
            order,
        })
    }

    fn fresh(&self) -> State {
        State {
            val: vec![NONE; self.face_crossings.len()],
            trail: Vec::new(),
        }
    }

    fn crossing_ok(&self, c: &CrossingConstraint, val: &[usize]) -> bool {
        (0..4).all(|q| c.demand(q, self.tables, |f| val[f]) == val[c.faces[q]])
    }

    /// Assigns and propagates; false on a contradiction.
    fn assign(&self, st: &mut State, face: usize, v: usize) -> bool {
        st.val[face] = v;
        st.trail.push(face);
        let mut stack = vec![face];
        while let Some(f) = stack.pop() {
            for &x in &self.face_crossings[f] {
                let c = &self.cons[x];
                let open: Vec<usize> = (0..4).filter(|&q| st.val[c.faces[q]] == NONE).collect();
                match open.as_slice() {
                    [] => {
                        if !self.crossing_ok(c, &st.val) {
                            return false;
                        }
                    }
                    &[q] => {
                        let g = c.faces[q];
                        let forced = c.demand(q, self.tables, |f| st.val[f]);
                        st.val[g] = forced;
                        st.trail.push(g);
                        stack.push(g);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&self, st: &mut State, mark: usize) {
        for f in st.trail.drain(mark..) {
            st.val[f] = NONE;
        }
    }

    fn search(&self, st: &mut State, mut i: usize, visit: &mut dyn FnMut(&[usize])) {
        while i < self.order.len() && st.val[self.order[i]] != NONE {
            i += 1;
        }
        if i == self.order.len() {
            visit(&st.val);
            return;
        }
        let f = self.order[i];
        for v in 0..self.n {
            let mark = st.trail.len();
            if self.assign(st, f, v) {
                self.search(st, i + 1, visit);
            }
            self.undo(st, mark);
        }
    }

    /// Runs the search below a fixed prefix of the face order.
    fn run_prefix(&self, prefix: &[usize], visit: &mut dyn FnMut(&[usize])) {
        let mut st = self.fresh();
        for (k, &v) in prefix.iter().enumerate() {
            let f = self.order[k];
            match st.val[f] {
                NONE => {
                    if !self.assign(&mut st, f, v) {
                        return;
                    }
                }
                w if w != v => return,
                _ => {}
            }
        }
        self.search(&mut st, prefix.len(), visit);
    }

    fn prefixes(&self, jobs: usize) -> Vec<Vec<usize>> {
        if jobs <= 1 {
            return vec![Vec::new()];
        }
        let depth = self.order.len().min(2);
        let mut out = vec![Vec::new()];
        for _ in 0..depth {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..self.n).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn collect(&self, jobs: usize, keep: bool) -> Result<(u64, Vec<Vec<usize>>)> {
        let work = |p: &Vec<usize>| {
            let mut count = 0u64;
            let mut list = Vec::new();
            self.run_prefix(p, &mut |val| {
                count += 1;
                if keep {
                    list.push(val.to_vec());
                }
            });
            (count, list)
        };
        let prefixes = self.prefixes(jobs);
        let parts: Vec<(u64, Vec<Vec<usize>>)> = if jobs <= 1 {
            prefixes.iter().map(work).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| ColoringError::Pool(e.to_string()))?;
            pool.install(|| prefixes.par_iter().map(work).collect())
        };
        let count = parts.iter().map(|p| p.0).sum();
        let mut list: Vec<Vec<usize>> = parts.into_iter().flat_map(|p| p.1).collect();
        list.sort();
        Ok((count, list))
    }
}

fn gate(a: &FiniteTernaryAlgebra, opts: &ColoringOptions) -> Result<()> {
    if opts.unchecked {
        return Ok(());
    }
    let report: AxiomReport = a.check_axioms();
    if report.all_pass() {
        Ok(())
    } else {
        Err(ColoringError::AxiomsFailed {
            name: a.name.clone(),
            failed: report.failed(),
        })
    }
}

pub fn count_colorings(sd: &ShadedDiagram, a: &FiniteTernaryAlgebra) -> Result<u64> {
    count_colorings_with(sd, a, &ColoringOptions::default())
}

pub fn count_colorings_with(sd: &ShadedDiagram, a: &FiniteTernaryAlgebra, opts: &ColoringOptions) -> Result<u64> {
    gate(a, opts)?;
    Ok(Solver::new(sd, a)?.collect(opts.jobs, false)?.0)
}

pub fn enumerate_colorings(sd: &ShadedDiagram, a: &FiniteTernaryAlgebra) -> Result<ColoringReport> {
    enumerate_colorings_with(sd, a, &ColoringOptions::default())
}

pub fn enumerate_colorings_with(
    sd: &ShadedDiagram,
    a: &FiniteTernaryAlgebra,
    opts: &ColoringOptions,
) -> Result<ColoringReport> {
    gate(a, opts)?;
    let (count, list) = Solver::new(sd, a)?.collect(opts.jobs, true)?;
    Ok(ColoringReport {
        algebra: a.name.clone(),
        diagram: sd.diagram().fingerprint(),
        count,
        colorings: Some(list),
    })
}

/// A relation broken by an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub crossing: usize,
    pub head: usize,
    pub face: usize,
    pub expected: usize,
    pub found: usize,
}

/// Checks all four relations at every crossing; `Ok(None)` when valid.
pub fn verify_coloring(
    sd: &ShadedDiagram,
    a: &FiniteTernaryAlgebra,
    assignment: &[usize],
) -> Result<Option<Violation>> {
    if assignment.len() != sd.face_count() {
        return Err(ColoringError::Partial {
            found: assignment.len(),
            expected: sd.face_count(),
        });
    }
    if let Some(&value) = assignment.iter().find(|&&v| v >= a.size()) {
        return Err(ColoringError::OutOfRange { value, n: a.size() });
    }
    let tables = [&a.op1, &a.op2];
    for c in build_constraints(sd, a)? {
        for q in 0..4 {
            let expected = c.demand(q, tables, |f| assignment[f]);
            let found = assignment[c.faces[q]];
            if expected != found {
                return Ok(Some(Violation {
                    crossing: c.crossing,
                    head: q,
                    face: c.faces[q],
                    expected,
                    found,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcScheme {
    /// `x = u v^-1`, co-orientation from `u` to `v`; Wirtinger relations.
    KnotGroup,
    /// `x = u v`, `u` white and `v` black; relations `γ = α β^-1 α`.
    Core,
}

impl ArcScheme {
    pub fn default_word(self) -> LabelWord {
        match self {
            ArcScheme::KnotGroup => LabelWord::UVinv,
            ArcScheme::Core => LabelWord::UV,
        }
    }
}

/// The two-letter word turning the pair of regions beside an arc into its
/// label. For the knot-group scheme `u` is the region the co-orientation
/// leaves and `v` the one it enters; for the core scheme `u` is white and `v`
/// black. Argument conventions differ between sources, so the classifier
/// tries all eight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelWord {
    UV,
    VU,
    UVinv,
    UinvV,
    VUinv,
    VinvU,
    UinvVinv,
    VinvUinv,
}

impl LabelWord {
    pub const ALL: [LabelWord; 8] = [
        LabelWord::UV,
        LabelWord::VU,
        LabelWord::UVinv,
        LabelWord::UinvV,
        LabelWord::VUinv,
        LabelWord::VinvU,
        LabelWord::UinvVinv,
        LabelWord::VinvUinv,
    ];

    pub fn eval(self, g: &MagmaTable, u: usize, v: usize) -> usize {
        let i = |x: usize| g.inverse(x).expect("group inverse");
        match self {
            LabelWord::UV => g.mul(u, v),
            LabelWord::VU => g.mul(v, u),
            LabelWord::UVinv => g.mul(u, i(v)),
            LabelWord::UinvV => g.mul(i(u), v),
            LabelWord::VUinv => g.mul(v, i(u)),
            LabelWord::VinvU => g.mul(i(v), u),
            LabelWord::UinvVinv => g.mul(i(u), i(v)),
            LabelWord::VinvUinv => g.mul(i(v), i(u)),
        }
    }
}

impl std::fmt::Display for LabelWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LabelWord::UV => "uv",
            LabelWord::VU => "vu",
            LabelWord::UVinv => "uv^-1",
            LabelWord::UinvV => "u^-1v",
            LabelWord::VUinv => "vu^-1",
            LabelWord::VinvU => "v^-1u",
            LabelWord::UinvVinv => "u^-1v^-1",
            LabelWord::VinvUinv => "v^-1u^-1",
        })
    }
}

impl Serialize for LabelWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcTheory {
    Wirtinger,
    Core,
}

/// Arcs: maximal over-strand segments. Crossingless circles are arcs too,
/// numbered after the others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arcs {
    pub of_edge: BTreeMap<usize, usize>,
    pub count: usize,
}

impl Arcs {
    pub fn of(d: &Diagram) -> Self {
        let mut parent: BTreeMap<usize, usize> = d.edges().map(|e| (e, e)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, e: usize) -> usize {
            let q = p[&e];
            if q == e {
                return e;
            }
            let r = find(p, q);
            p.insert(e, r);
            r
        }
        for c in d.crossings() {
            let (a, b) = (find(&mut parent, c.edges[1]), find(&mut parent, c.edges[3]));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let edges: Vec<usize> = d.edges().collect();
        let mut index = BTreeMap::new();
        let mut of_edge = BTreeMap::new();
        for e in edges {
            let r = find(&mut parent, e);
            let next = index.len();
            let id = *index.entry(r).or_insert(next);
            of_edge.insert(e, id);
        }
        let count = index.len() + d.circles();
        Self { of_edge, count }
    }

    /// `(over, under-in, under-out)` arcs at crossing `x`, in PD orientation.
    pub fn at(&self, d: &Diagram, x: usize) -> (usize, usize, usize) {
        let e = d.crossings()[x].edges;
        (self.of_edge[&e[1]], self.of_edge[&e[0]], self.of_edge[&e[2]])
    }
}

/// Arc labels induced by a region coloring with a group-word algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcLabeling {
    pub scheme: ArcScheme,
    pub word: LabelWord,
    pub labels: Vec<usize>,
    /// Per component (crossing components first, then circles): whether the
    /// PD orientation was reversed to make the co-normal run white to black.
    pub flipped: Vec<bool>,
}

fn require_group(g: &MagmaTable) -> Result<()> {
    if g.is_group() {
        Ok(())
    } else {
        Err(ColoringError::NotGroup)
    }
}

/// Circle disks and their host region.
fn circle_faces(sd: &ShadedDiagram) -> Vec<(usize, usize)> {
    let d = sd.diagram();
    if d.crossing_count() == 0 {
        (1..=d.circles()).map(|k| (0, k)).collect()
    } else {
        let first = d.crossing_count() + 2;
        (0..d.circles())
            .map(|k| (sd.outer_face(), first + k))
            .collect()
    }
}

pub fn arc_labels(
    sd: &ShadedDiagram,
    coloring: &[usize],
    g: &MagmaTable,
    scheme: ArcScheme,
) -> Result<ArcLabeling> {
    arc_labels_with(sd, coloring, g, scheme, scheme.default_word())
}

pub fn arc_labels_with(
    sd: &ShadedDiagram,
    coloring: &[usize],
    g: &MagmaTable,
    scheme: ArcScheme,
    word: LabelWord,
) -> Result<ArcLabeling> {
    require_group(g)?;
    if coloring.len() != sd.face_count() {
        return Err(ColoringError::Partial {
            found: coloring.len(),
            expected: sd.face_count(),
        });
    }
    let d = sd.diagram();
    let arcs = Arcs::of(d);
    let mut labels = vec![NONE; arcs.count];
    let mut flipped = Vec::new();
    let put = |arc: usize, v: usize, labels: &mut Vec<usize>| {
        if labels[arc] != NONE && labels[arc] != v {
            return Err(ColoringError::IllDefined { arc });
        }
        labels[arc] = v;
        Ok(())
    };
    for comp in d.components() {
        let base = *comp.iter().min().expect("nonempty component");
        let (_, right) = sd.edge_sides(base).expect("edge");
        let flip = sd.shade(right) != Shade::Black;
        flipped.push(flip);
        for &e in comp {
            let (l, r) = sd.edge_sides(e).expect("edge");
            let (l, r) = if flip { (r, l) } else { (l, r) };
            let (u, v) = (coloring[l], coloring[r]);
            let label = match scheme {
                ArcScheme::KnotGroup => word.eval(g, u, v),
                ArcScheme::Core => {
                    let (w, b) = if sd.shade(l) == Shade::White { (u, v) } else { (v, u) };
                    word.eval(g, w, b)
                }
            };
            put(arcs.of_edge[&e], label, &mut labels)?;
        }
    }
    let first_circle = arcs.count - d.circles();
    for (k, (host, disk)) in circle_faces(sd).into_iter().enumerate() {
        let (w, b) = if sd.shade(host) == Shade::White {
            (coloring[host], coloring[disk])
        } else {
            (coloring[disk], coloring[host])
        };
        let label = word.eval(g, w, b);
        flipped.push(false);
        put(first_circle + k, label, &mut labels)?;
    }
    Ok(ArcLabeling {
        scheme,
        word,
        labels,
        flipped,
    })
}

/// Wirtinger form: `γ = α β α^-1` at positive crossings, `γ = α^-1 β α` at
/// negative ones (β incoming, γ outgoing under-arc, α over-arc).
fn wirtinger_holds(g: &MagmaTable, sign: i8, alpha: usize, beta: usize, gamma: usize) -> bool {
    let ai = g.inverse(alpha).expect("group inverse");
    let rhs = if sign > 0 {
        g.mul(g.mul(alpha, beta), ai)
    } else {
        g.mul(g.mul(ai, beta), alpha)
    };
    rhs == gamma
}

fn core_holds(g: &MagmaTable, alpha: usize, beta: usize, gamma: usize) -> bool {
    let bi = g.inverse(beta).expect("group inverse");
    g.mul(g.mul(alpha, bi), alpha) == gamma
}

/// First crossing whose arc relation fails, if any.
pub fn first_arc_violation(d: &Diagram, labeling: &ArcLabeling, g: &MagmaTable) -> Option<usize> {
    let arcs = Arcs::of(d);
    let flipped = |e: usize| labeling.flipped[d.component_of(e).expect("edge on a component")];
    (0..d.crossing_count()).find(|&x| {
        let c = d.crossings()[x];
        let (alpha, beta, gamma) = arcs.at(d, x);
        let l = &labeling.labels;
        let ok = match labeling.scheme {
            ArcScheme::Core => core_holds(g, l[alpha], l[beta], l[gamma]),
            ArcScheme::KnotGroup => {
                // relations are read in the orientation the labels were built with
                let (fu, fo) = (flipped(c.edges[0]), flipped(c.edges[1]));
                let (beta, gamma) = if fu { (gamma, beta) } else { (beta, gamma) };
                let sign = if fu != fo { -c.sign() } else { c.sign() };
                wirtinger_holds(g, sign, l[alpha], l[beta], l[gamma])
            }
        };
        !ok
    })
}

pub fn verify_arc_relations(d: &Diagram, labeling: &ArcLabeling, g: &MagmaTable) -> bool {
    first_arc_violation(d, labeling, g).is_none()
}

/// Exhaustive count of arc assignments satisfying every crossing relation.
pub fn count_arc_colorings(d: &Diagram, g: &MagmaTable, theory: ArcTheory) -> Result<u64> {
    require_group(g)?;
    if theory == ArcTheory::Wirtinger && !d.is_oriented() {
        return Err(ColoringError::NotOriented);
    }
    let arcs = Arcs::of(d);
    let n = g.size();
    let rels: Vec<(i8, usize, usize, usize)> = (0..d.crossing_count())
        .map(|x| {
            let (a, b, c) = arcs.at(d, x);
            (d.crossings()[x].sign(), a, b, c)
        })
        .collect();
    let mut labels = vec![0usize; arcs.count];
    let mut count = 0u64;
    loop {
        let ok = rels.iter().all(|&(s, a, b, c)| match theory {
            ArcTheory::Wirtinger => wirtinger_holds(g, s, labels[a], labels[b], labels[c]),
            ArcTheory::Core => core_holds(g, labels[a], labels[b], labels[c]),
        });
        count += u64::from(ok);
        let mut i = 0;
        loop {
            if i == labels.len() {
                return Ok(count);
            }
            labels[i] += 1;
            if labels[i] < n {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}
