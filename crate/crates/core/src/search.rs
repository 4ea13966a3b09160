//! Operator searches: pairs of short words over a battery of groups or loops,
//! raw Latin-cube enumeration on small carriers, and the arc-label
//! classification of group-word pairs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::bank::{from_group_word, formula, GROUP_PAIRS};
use crate::algebra::{axiom_holds, AlgebraError, AxiomFilter, FiniteTernaryAlgebra, Kind, Letter, MagmaTable, TernaryTable, Word};
use crate::coloring::{
    arc_labels_with, count_arc_colorings, enumerate_colorings, verify_arc_relations, ArcScheme, ArcTheory,
    ColoringError, LabelWord,
};
use crate::diagram::{Diagram, DiagramError, Shade, ShadedDiagram};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("battery is empty")]
    EmptyBattery,
    #[error("battery member `{name}`: {reason}")]
    InvalidMember { name: String, reason: String },
    #[error("classification needs a nonabelian group")]
    Abelian,
    #[error("carrier size {0} is out of range (1..=6)")]
    CubeSize(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("thread pool: {0}")]
    Pool(String),
}

pub type Result<T> = std::result::Result<T, SearchError>;

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))
}

/// `((x o y) o' z)` or `(x o (y o' z))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Left,
    Right,
}

/// A depth-two word using each of `a, b, c` once, each optionally inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordTemplate {
    pub shape: Shape,
    pub perm: [usize; 3],
    /// Bit `i` inverts the `i`-th leaf.
    pub mask: u8,
    /// Inner node operator, then outer.
    pub ops: [Letter; 2],
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl WordTemplate {
    pub fn all(letters: &[Letter]) -> Vec<Self> {
        let mut out = Vec::new();
        for shape in [Shape::Left, Shape::Right] {
            for perm in PERMS {
                for mask in 0..8u8 {
                    for &inner in letters {
                        for &outer in letters {
                            out.push(Self {
                                shape,
                                perm,
                                mask,
                                ops: [inner, outer],
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn word(&self) -> Word {
        let leaf = |i: usize| {
            let v = Word::var(self.perm[i]);
            if self.mask >> i & 1 == 1 {
                v.inv()
            } else {
                v
            }
        };
        let [inner, outer] = self.ops;
        match self.shape {
            Shape::Left => Word::op(outer, Word::op(inner, leaf(0), leaf(1)), leaf(2)),
            Shape::Right => Word::op(outer, leaf(0), Word::op(inner, leaf(1), leaf(2))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub op1: String,
    pub op2: String,
    /// Known formula ids with the same operators on the battery.
    pub matches: Vec<String>,
    /// Operators agree on every battery member.
    pub equal: bool,
    /// The role-swapped pair passes as well.
    pub swap_passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub kind: Kind,
    pub battery: Vec<String>,
    pub templates: usize,
    pub distinct_words: usize,
    pub entries: Vec<PairEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSearchOptions {
    pub filter: AxiomFilter,
    pub jobs: usize,
}

impl Default for WordSearchOptions {
    fn default() -> Self {
        Self {
            filter: AxiomFilter::All,
            jobs: 1,
        }
    }
}

/// Axioms that read only op1, and only op2.
fn single_op_axioms(kind: Kind) -> (&'static [usize], &'static [usize]) {
    match kind {
        Kind::Unoriented => (&[2], &[1]),
        Kind::Oriented => (&[1, 5, 6], &[2]),
    }
}

type Key = Vec<TernaryTable>;

fn validate(battery: &[(String, MagmaTable)]) -> Result<bool> {
    if battery.is_empty() {
        return Err(SearchError::EmptyBattery);
    }
    let mut groups = true;
    for (name, m) in battery {
        let bad = |reason: &str| SearchError::InvalidMember {
            name: name.clone(),
            reason: reason.to_string(),
        };
        if !m.is_loop() {
            return Err(bad("not a loop"));
        }
        if (0..m.size()).any(|x| m.inverse(x).is_err()) {
            return Err(bad("some element lacks a two-sided inverse"));
        }
        groups &= m.is_group();
    }
    Ok(groups)
}

/// Distinct word operations on the battery, each with its shortest spelling.
fn materialize(battery: &[(String, MagmaTable)], letters: &[Letter]) -> Result<(usize, Vec<(String, Key)>)> {
    let templates = WordTemplate::all(letters);
    let mut best: BTreeMap<Key, String> = BTreeMap::new();
    for t in &templates {
        let w = t.word();
        let key = battery
            .iter()
            .map(|(_, m)| w.to_table(m))
            .collect::<std::result::Result<Key, _>>()?;
        let s = w.to_string();
        best.entry(key)
            .and_modify(|cur| {
                if (s.len(), &s) < (cur.len(), cur) {
                    *cur = s.clone();
                }
            })
            .or_insert(s);
    }
    let mut words: Vec<(String, Key)> = best.into_iter().map(|(k, s)| (s, k)).collect();
    words.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok((templates.len(), words))
}

fn passes(kind: Kind, idx: &[usize], op1: &Key, op2: &Key) -> bool {
    idx.iter()
        .all(|&i| op1.iter().zip(op2).all(|(p, q)| axiom_holds(kind, i, p, q)))
}

/// Ordered pairs of template words whose tables pass the case's axioms on
/// every battery member, merged up to role swap. `*` is the only letter for
/// a group battery; loops also get `\` and `/`.
pub fn search_words(battery: &[(String, MagmaTable)], kind: Kind, opts: &WordSearchOptions) -> Result<SearchResult> {
    let groups = validate(battery)?;
    let letters: &[Letter] = if groups {
        &[Letter::Mul]
    } else {
        &[Letter::Mul, Letter::LDiv, Letter::RDiv]
    };
    let (templates, words) = materialize(battery, letters)?;
    let all: Vec<usize> = opts.filter.indices(kind).collect();
    let (only1, only2) = single_op_axioms(kind);
    let pre1: Vec<usize> = only1.iter().copied().filter(|i| all.contains(i)).collect();
    let pre2: Vec<usize> = only2.iter().copied().filter(|i| all.contains(i)).collect();
    let rest: Vec<usize> = all
        .iter()
        .copied()
        .filter(|i| !pre1.contains(i) && !pre2.contains(i))
        .collect();
    // a single-operator axiom ignores the other slot, so pass the word twice
    let keep = |pre: &[usize]| -> Vec<usize> {
        (0..words.len())
            .filter(|&i| passes(kind, pre, &words[i].1, &words[i].1))
            .collect()
    };
    let c1 = keep(&pre1);
    let c2 = keep(&pre2);
    let found: Vec<(usize, usize)> = pool(opts.jobs)?.install(|| {
        c1.par_iter()
            .flat_map_iter(|&i| {
                let c2 = &c2;
                let words = &words;
                let rest = &rest;
                c2.iter()
                    .filter(move |&&j| passes(kind, rest, &words[i].1, &words[j].1))
                    .map(move |&j| (i, j))
            })
            .collect()
    });
    let set: std::collections::BTreeSet<(usize, usize)> = found.iter().copied().collect();

    // known formulas on this battery, keyed by their operator pair
    let mut known: BTreeMap<(Key, Key), Vec<String>> = BTreeMap::new();
    let ids = GROUP_PAIRS
        .iter()
        .map(|p| p.0)
        .chain(crate::algebra::bank::LOOP_PAIRS.iter().map(|p| p.0));
    for id in ids {
        let (w, b, _) = formula(id)?;
        let eval = |w: &Word| battery.iter().map(|(_, m)| w.to_table(m)).collect::<std::result::Result<Key, _>>();
        if let (Ok(p), Ok(q)) = (eval(&w), eval(&b)) {
            known.entry((p, q)).or_default().push(id.to_string());
        }
    }

    let mut entries = Vec::new();
    for &(i, j) in &set {
        let swap_passes = set.contains(&(j, i));
        // one representative per role-swap orbit: the smaller index first
        if swap_passes && j < i {
            continue;
        }
        let (ki, kj) = (&words[i].1, &words[j].1);
        let mut matches: Vec<String> = known.get(&(ki.clone(), kj.clone())).cloned().unwrap_or_default();
        if swap_passes {
            matches.extend(known.get(&(kj.clone(), ki.clone())).cloned().unwrap_or_default());
        }
        matches.sort_by_key(|m| id_order(m));
        matches.dedup();
        entries.push(PairEntry {
            op1: words[i].0.clone(),
            op2: words[j].0.clone(),
            matches,
            equal: i == j,
            swap_passes,
        });
    }
    Ok(SearchResult {
        kind,
        battery: battery.iter().map(|(n, _)| n.clone()).collect(),
        templates,
        distinct_words: words.len(),
        entries,
    })
}

/// Sort key putting `g2` before `g10`.
fn id_order(id: &str) -> (String, usize) {
    let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
    (id[..split].to_string(), id[split..].parse().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeSearchResult {
    pub n: usize,
    pub kind: Kind,
    /// Latin cubes visited.
    pub cubes: u64,
    /// False when the node budget ran out first.
    pub complete: bool,
    #[serde(serialize_with = "as_files")]
    pub survivors: Vec<FiniteTernaryAlgebra>,
}

fn as_files<S: serde::Serializer>(v: &[FiniteTernaryAlgebra], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|a| a.to_file()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubeSearchOptions {
    /// Search-tree nodes allowed; `None` is unbounded.
    pub budget: Option<u64>,
    pub jobs: usize,
}

impl Default for CubeSearchOptions {
    fn default() -> Self {
        Self {
            budget: Some(DEFAULT_CUBE_BUDGET),
            jobs: 1,
        }
    }
}

pub const DEFAULT_CUBE_BUDGET: u64 = 50_000_000;

struct CubeWalk<'a> {
    n: usize,
    kind: Kind,
    cells: Vec<usize>,
    // used[line][value]: lines along z, y, x
    along_z: Vec<u32>,
    along_y: Vec<u32>,
    along_x: Vec<u32>,
    nodes: u64,
    budget: u64,
    cubes: u64,
    out: &'a mut Vec<FiniteTernaryAlgebra>,
}

impl CubeWalk<'_> {
    fn go(&mut self, pos: usize) -> bool {
        let n = self.n;
        if pos == n * n * n {
            self.cubes += 1;
            self.emit();
            return true;
        }
        let (x, y, z) = (pos / (n * n), pos / n % n, pos % n);
        let (lz, ly, lx) = (x * n + y, x * n + z, y * n + z);
        for v in 0..n {
            let bit = 1u32 << v;
            if (self.along_z[lz] | self.along_y[ly] | self.along_x[lx]) & bit != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            self.cells[pos] = v;
            self.along_z[lz] |= bit;
            self.along_y[ly] |= bit;
            self.along_x[lx] |= bit;
            let ok = self.go(pos + 1);
            self.along_z[lz] &= !bit;
            self.along_y[ly] &= !bit;
            self.along_x[lx] &= !bit;
            if !ok {
                return false;
            }
        }
        true
    }

    fn emit(&mut self) {
        let op1 = TernaryTable::from_flat(self.n, self.cells.clone()).expect("cube shape");
        let Some(op2) = op1.swapped_third_inverse() else { return };
        let idx = 1..=self.kind.axiom_count();
        if idx.clone().all(|i| axiom_holds(self.kind, i, &op1, &op2)) {
            let name = format!("cube-{}-{}-{}", self.kind, self.n, self.out.len());
            self.out
                .push(FiniteTernaryAlgebra::new(name, self.kind, op1, op2).expect("same sizes"));
        }
    }
}

/// Every Latin cube of order `n` as op1, op2 forced by axiom (3)
/// (`op2(a,b,.)` is the inverse of `op1(b,a,.)`), filtered by the full suite.
/// Work is split on the first cell's value.
pub fn search_cubes(n: usize, kind: Kind, opts: &CubeSearchOptions) -> Result<CubeSearchResult> {
    if !(1..=6).contains(&n) {
        return Err(SearchError::CubeSize(n));
    }
    let budget = opts.budget.unwrap_or(u64::MAX);
    // cell (0,0,0) takes value v; the rest of the tree is independent per v
    let parts: Vec<(u64, bool, Vec<FiniteTernaryAlgebra>)> = pool(opts.jobs)?.install(|| {
        (0..n)
            .into_par_iter()
            .map(|v| {
                let mut out = Vec::new();
                let mut walk = CubeWalk {
                    n,
                    kind,
                    cells: vec![0; n * n * n],
                    along_z: vec![0; n * n],
                    along_y: vec![0; n * n],
                    along_x: vec![0; n * n],
                    nodes: 0,
                    budget: budget / n as u64,
                    cubes: 0,
                    out: &mut out,
                };
                walk.cells[0] = v;
                walk.along_z[0] = 1 << v;
                walk.along_y[0] = 1 << v;
                walk.along_x[0] = 1 << v;
                let done = walk.go(1);
                (walk.cubes, done, out)
            })
            .collect()
    });
    let mut survivors = Vec::new();
    let mut cubes = 0;
    let mut complete = true;
    for (c, done, out) in parts {
        cubes += c;
        complete &= done;
        survivors.extend(out);
    }
    for (i, a) in survivors.iter_mut().enumerate() {
        a.name = format!("cube-{kind}-{n}-{i}");
    }
    Ok(CubeSearchResult {
        n,
        kind,
        cubes,
        complete,
        survivors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairType {
    CoreType,
    KnotType,
    Neither,
}

impl std::fmt::Display for PairType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairType::CoreType => "core-type",
            PairType::KnotType => "knot-type",
            PairType::Neither => "neither",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCounts {
    pub diagram: String,
    pub regions: u64,
    /// `|G|` times the Wirtinger and core arc-coloring counts.
    pub wirtinger_scaled: u64,
    pub core_scaled: u64,
}

/// Which strands carry the arcs: the over-strands of the diagram itself, or
/// the under-strands (the over-strands of its mirror image, same regions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strands {
    Over,
    Under,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchemeFit {
    pub word: LabelWord,
    pub strands: Strands,
    /// Black regions' values are inverted before labelling.
    pub invert_black: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub pair: String,
    pub verdict: PairType,
    /// First label convention making the core scheme work, if any.
    pub core: Option<SchemeFit>,
    pub knot: Option<SchemeFit>,
    /// Which arc theory the region counts match on every fixture, if exactly one.
    pub by_counts: PairType,
    pub fixtures: Vec<FixtureCounts>,
}

/// The mirror image with the same regions, and a coloring of `sd` carried over.
fn mirrored(sd: &ShadedDiagram) -> Result<(ShadedDiagram, Vec<usize>)> {
    let d = sd.diagram();
    let dm = d.mirror_keeping_edges();
    let probe = ShadedDiagram::new(dm.clone())?;
    let mut map: Vec<usize> = (0..sd.face_count()).collect();
    for e in d.edges() {
        let (l, r) = sd.edge_sides(e).expect("edge");
        let (lm, rm) = probe.edge_sides(e).expect("edge");
        map[l] = lm;
        map[r] = rm;
    }
    let sdm = ShadedDiagram::with_outer(dm, Some(map[sd.outer_face()]))?;
    Ok((sdm, map))
}

/// Tries every label convention for each scheme (label word, over- or
/// under-strands, black values inverted or not); a scheme works when its labels are well defined and satisfy
/// its relations for every region coloring on every fixture.
pub fn classify_group_pair(pair_id: &str, g: &MagmaTable, fixtures: &[Diagram]) -> Result<Classification> {
    if !g.is_group() {
        return Err(SearchError::Algebra(AlgebraError::Variety {
            name: pair_id.to_string(),
            required: "group".into(),
            reason: "table is not a group".into(),
        }));
    }
    if g.is_commutative() {
        return Err(SearchError::Abelian);
    }
    let a = from_group_word(g, pair_id, Kind::Unoriented)?;
    let mut shaded = Vec::new();
    let mut under = Vec::new();
    for d in fixtures {
        let d = d.clone().with_oriented(true)?;
        let sd = ShadedDiagram::new(d)?;
        let cols = enumerate_colorings(&sd, &a)?.colorings.unwrap_or_default();
        let (sdm, map) = mirrored(&sd)?;
        let moved: Vec<Vec<usize>> = cols
            .iter()
            .map(|c| {
                let mut m = vec![0; c.len()];
                for (f, &v) in c.iter().enumerate() {
                    m[map[f]] = v;
                }
                m
            })
            .collect();
        under.push((sdm, moved));
        shaded.push((sd, cols));
    }
    let works = |scheme: ArcScheme, fit: SchemeFit| {
        let set = match fit.strands {
            Strands::Over => &shaded,
            Strands::Under => &under,
        };
        set.iter().all(|(sd, cols)| {
            cols.iter().all(|c| {
                let twisted: Vec<usize>;
                let c = if fit.invert_black {
                    twisted = c
                        .iter()
                        .enumerate()
                        .map(|(f, &v)| match sd.shade(f) {
                            Shade::Black => g.inverse(v).expect("group inverse"),
                            Shade::White => v,
                        })
                        .collect();
                    &twisted
                } else {
                    c
                };
                arc_labels_with(sd, c, g, scheme, fit.word)
                    .map(|l| verify_arc_relations(sd.diagram(), &l, g))
                    .unwrap_or(false)
            })
        })
    };
    let mut fits = Vec::new();
    for invert_black in [false, true] {
        for strands in [Strands::Over, Strands::Under] {
            for word in LabelWord::ALL {
                fits.push(SchemeFit {
                    word,
                    strands,
                    invert_black,
                });
            }
        }
    }
    let core = fits.iter().copied().find(|&f| works(ArcScheme::Core, f));
    let knot = fits.iter().copied().find(|&f| works(ArcScheme::KnotGroup, f));

    let mut counts = Vec::new();
    for (sd, cols) in &shaded {
        let d = sd.diagram();
        let size = g.size() as u64;
        counts.push(FixtureCounts {
            diagram: d.fingerprint(),
            regions: cols.len() as u64,
            wirtinger_scaled: size * count_arc_colorings(d, g, ArcTheory::Wirtinger)?,
            core_scaled: size * count_arc_colorings(d, g, ArcTheory::Core)?,
        });
    }
    let knot_counts = counts.iter().all(|c| c.regions == c.wirtinger_scaled);
    let core_counts = counts.iter().all(|c| c.regions == c.core_scaled);
    let by_counts = match (core_counts, knot_counts) {
        (true, false) => PairType::CoreType,
        (false, true) => PairType::KnotType,
        _ => PairType::Neither,
    };
    let verdict = match (core.is_some(), knot.is_some()) {
        (true, false) => PairType::CoreType,
        (false, true) => PairType::KnotType,
        // both schemes work: let the counts decide
        (true, true) => by_counts,
        (false, false) => PairType::Neither,
    };
    Ok(Classification {
        pair: pair_id.to_string(),
        verdict,
        core,
        knot,
        by_counts,
        fixtures: counts,
    })
}
