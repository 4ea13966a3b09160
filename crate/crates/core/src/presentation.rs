//! Finite presentations read off a diagram: the ternary algebra of a shaded
//! diagram, the Dehn presentation, and arc presentations (Wirtinger, core).
//!
//! Text form:
//!
//! ```text
//! gen r0 r1 r2 r3 r4
//! rel r0 = W(r1,r2,r3)
//! rel r2 = r1*r4^-1*r3
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FiniteTernaryAlgebra, Kind, MagmaTable};
use crate::coloring::{constraints_for, Arcs, ArcTheory, OpChoice};
use crate::diagram::{Diagram, ShadedDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("the oriented presentation needs crossing signs")]
    MissingSigns,
    #[error("the Wirtinger presentation needs an oriented diagram")]
    NotOriented,
    #[error("head quadrant {0} out of range")]
    BadHead(usize),
    #[error("a {style} presentation cannot be evaluated in {target}")]
    WrongTarget { style: Style, target: &'static str },
}

pub type Result<T> = std::result::Result<T, PresentationError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    Unoriented,
    Oriented,
    Dehn,
    Wirtinger,
    Core,
}

impl Style {
    pub fn is_ternary(self) -> bool {
        matches!(self, Style::Unoriented | Style::Oriented)
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Unoriented => "unoriented",
            Style::Oriented => "oriented",
            Style::Dehn => "dehn",
            Style::Wirtinger => "wirtinger",
            Style::Core => "core",
        })
    }
}

/// Which of the four equivalent relations a crossing contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeadChoice {
    /// The quadrant holding the lowest face id (first such quadrant on ties).
    #[default]
    Lowest,
    Quadrant(usize),
}

/// A product of generators and their inverses; empty means the identity.
pub type GroupWord = Vec<(usize, i8)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Relation {
    /// `head = op(args)` with generator indices.
    Ternary {
        crossing: usize,
        head: usize,
        op: char,
        args: [usize; 3],
    },
    Group {
        #[serde(skip_serializing_if = "Option::is_none")]
        crossing: Option<usize>,
        lhs: GroupWord,
        rhs: GroupWord,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub style: Style,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Serialize)]
struct MachineRelation<'a> {
    text: String,
    #[serde(flatten)]
    relation: &'a Relation,
}

#[derive(Serialize)]
struct Machine<'a> {
    style: Style,
    generators: &'a [String],
    relations: Vec<MachineRelation<'a>>,
}

impl Presentation {
    pub fn relation_text(&self, r: &Relation) -> String {
        let g = |i: usize| self.generators[i].as_str();
        match r {
            Relation::Ternary { head, op, args, .. } => {
                format!("{} = {op}({},{},{})", g(*head), g(args[0]), g(args[1]), g(args[2]))
            }
            Relation::Group { lhs, rhs, .. } => format!("{} = {}", self.word_text(lhs), self.word_text(rhs)),
        }
    }

    fn word_text(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(i, e)| {
                if e < 0 {
                    format!("{}^-1", self.generators[i])
                } else {
                    self.generators[i].clone()
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m = Machine {
            style: self.style,
            generators: &self.generators,
            relations: self
                .relations
                .iter()
                .map(|r| MachineRelation {
                    text: self.relation_text(r),
                    relation: r,
                })
                .collect(),
        };
        serde_json::to_value(m).expect("presentation serializes")
    }

    /// Relations grouped by their highest generator index.
    fn ready_at(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.generators.len()];
        for (k, r) in self.relations.iter().enumerate() {
            let gens: Vec<usize> = match r {
                Relation::Ternary { head, args, .. } => std::iter::once(*head).chain(args.iter().copied()).collect(),
                Relation::Group { lhs, rhs, .. } => lhs.iter().chain(rhs).map(|&(i, _)| i).collect(),
            };
            // a generator-free relation would read `1 = 1`
            if let Some(m) = gens.into_iter().max() {
                at[m].push(k);
            }
        }
        at
    }

    /// Assignments of generators into the algebra satisfying every relation.
    pub fn count_in_algebra(&self, a: &FiniteTernaryAlgebra) -> Result<u64> {
        if !self.style.is_ternary() {
            return Err(PresentationError::WrongTarget {
                style: self.style,
                target: "a ternary algebra",
            });
        }
        let ops = [a.op1.clone(), a.op2.clone()];
        self.count_with(a.size(), |r, v| match r {
            Relation::Ternary { head, op, args, .. } => {
                let t = if matches!(op, 'W' | 'C') { &ops[0] } else { &ops[1] };
                t.get(v[args[0]], v[args[1]], v[args[2]]) == v[*head]
            }
            Relation::Group { .. } => unreachable!("ternary style"),
        })
    }

    /// Homomorphisms into `g`: assignments satisfying every relation.
    pub fn count_in_group(&self, g: &MagmaTable) -> Result<u64> {
        if self.style.is_ternary() || !g.is_group() {
            return Err(PresentationError::WrongTarget {
                style: self.style,
                target: "a group",
            });
        }
        let eval = |w: &GroupWord, v: &[usize]| {
            w.iter().fold(g.identity().expect("group identity"), |acc, &(i, e)| {
                let x = if e < 0 { g.inverse(v[i]).expect("group") } else { v[i] };
                g.mul(acc, x)
            })
        };
        self.count_with(g.size(), |r, v| match r {
            Relation::Group { lhs, rhs, .. } => eval(lhs, v) == eval(rhs, v),
            Relation::Ternary { .. } => unreachable!("group style"),
        })
    }

    fn count_with(&self, n: usize, holds: impl Fn(&Relation, &[usize]) -> bool) -> Result<u64> {
        let at = self.ready_at();
        let m = self.generators.len();
        if m == 0 {
            return Ok(1);
        }
        let mut v = vec![0usize; m];
        let mut count = 0u64;
        let mut i = 0usize;
        // depth-first over generator values; relations are checked as soon
        // as their last generator is set
        loop {
            if v[i] < n && at[i].iter().all(|&k| holds(&self.relations[k], &v)) {
                if i + 1 == m {
                    count += 1;
                    v[i] += 1;
                } else {
                    i += 1;
                    v[i] = 0;
                }
                continue;
            }
            if v[i] >= n {
                if i == 0 {
                    return Ok(count);
                }
                i -= 1;
            }
            v[i] += 1;
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relations {
            writeln!(f, "rel {}", self.relation_text(r))?;
        }
        Ok(())
    }
}

fn region_names(sd: &ShadedDiagram) -> Vec<String> {
    (0..sd.face_count()).map(|i| format!("r{i}")).collect()
}

fn head_quadrant(faces: [usize; 4], choice: HeadChoice) -> Result<usize> {
    match choice {
        HeadChoice::Lowest => Ok((0..4).min_by_key(|&q| (faces[q], q)).expect("four quadrants")),
        HeadChoice::Quadrant(q) if q < 4 => Ok(q),
        HeadChoice::Quadrant(q) => Err(PresentationError::BadHead(q)),
    }
}

pub fn emit_ternary(sd: &ShadedDiagram, kind: Kind) -> Result<Presentation> {
    emit_ternary_with(sd, kind, HeadChoice::Lowest)
}

pub fn emit_ternary_with(sd: &ShadedDiagram, kind: Kind, choice: HeadChoice) -> Result<Presentation> {
    let cons = constraints_for(sd, kind).map_err(|_| PresentationError::MissingSigns)?;
    let (s1, s2) = kind.symbols();
    let mut relations = Vec::with_capacity(cons.len());
    for c in &cons {
        let q = head_quadrant(c.faces, choice)?;
        let r = &c.relations[q];
        relations.push(Relation::Ternary {
            crossing: c.crossing,
            head: c.faces[q],
            op: if r.op == OpChoice::Op1 { s1 } else { s2 },
            args: r.inputs.map(|p| c.faces[p]),
        });
    }
    Ok(Presentation {
        style: match kind {
            Kind::Unoriented => Style::Unoriented,
            Kind::Oriented => Style::Oriented,
        },
        generators: region_names(sd),
        relations,
    })
}

/// Region generators, `head = x*y^-1*z` per crossing, and `outer = 1`.
pub fn emit_dehn(sd: &ShadedDiagram) -> Presentation {
    emit_dehn_with(sd, HeadChoice::Lowest).expect("lowest head is always valid")
}

pub fn emit_dehn_with(sd: &ShadedDiagram, choice: HeadChoice) -> Result<Presentation> {
    let cons = constraints_for(sd, Kind::Unoriented).expect("unoriented needs no signs");
    let mut relations = Vec::with_capacity(cons.len() + 1);
    for c in &cons {
        let q = head_quadrant(c.faces, choice)?;
        let [x, y, z] = c.relations[q].inputs.map(|p| c.faces[p]);
        relations.push(Relation::Group {
            crossing: Some(c.crossing),
            lhs: vec![(c.faces[q], 1)],
            rhs: vec![(x, 1), (y, -1), (z, 1)],
        });
    }
    relations.push(Relation::Group {
        crossing: None,
        lhs: vec![(sd.outer_face(), 1)],
        rhs: vec![],
    });
    Ok(Presentation {
        style: Style::Dehn,
        generators: region_names(sd),
        relations,
    })
}

/// One generator per arc; at each crossing `γ` (outgoing under-arc) in terms
/// of `α` (over) and `β` (incoming under-arc).
pub fn emit_arc_presentation(d: &Diagram, theory: ArcTheory) -> Result<Presentation> {
    if theory == ArcTheory::Wirtinger && !d.is_oriented() {
        return Err(PresentationError::NotOriented);
    }
    let arcs = Arcs::of(d);
    let relations = (0..d.crossing_count())
        .map(|x| {
            let (a, b, c) = arcs.at(d, x);
            let rhs = match theory {
                ArcTheory::Core => vec![(a, 1), (b, -1), (a, 1)],
                ArcTheory::Wirtinger if d.crossings()[x].sign() > 0 => vec![(a, 1), (b, 1), (a, -1)],
                ArcTheory::Wirtinger => vec![(a, -1), (b, 1), (a, 1)],
            };
            Relation::Group {
                crossing: Some(x),
                lhs: vec![(c, 1)],
                rhs,
            }
        })
        .collect();
    Ok(Presentation {
        style: match theory {
            ArcTheory::Wirtinger => Style::Wirtinger,
            ArcTheory::Core => Style::Core,
        },
        generators: (0..arcs.count).map(|i| format!("x{i}")).collect(),
        relations,
    })
}

/// Abelian group `Z^rank + Z/t1 + ... + Z/tk`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelian {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization of a group presentation via Smith normal form of the
/// exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> Result<Abelian> {
    if p.style.is_ternary() {
        return Err(PresentationError::WrongTarget {
            style: p.style,
            target: "an abelian group",
        });
    }
    let m = p.generators.len();
    let rows: Vec<Vec<i64>> = p
        .relations
        .iter()
        .map(|r| {
            let mut row = vec![0i64; m];
            if let Relation::Group { lhs, rhs, .. } = r {
                for &(i, e) in lhs {
                    row[i] += i64::from(e);
                }
                for &(i, e) in rhs {
                    row[i] -= i64::from(e);
                }
            }
            row
        })
        .collect();
    let diag = smith_diagonal(rows, m);
    let nonzero: Vec<u64> = diag.into_iter().filter(|&d| d != 0).map(|d| d.unsigned_abs()).collect();
    Ok(Abelian {
        rank: m - nonzero.len(),
        torsion: nonzero.into_iter().filter(|&d| d > 1).collect(),
    })
}

/// Diagonal of the Smith normal form (invariant factors, each dividing the next).
pub fn smith_diagonal(mut a: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // divisibility of the rest of the block by the pivot
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let (bi, bj) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("pivot row is nonzero");
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn sd(text: &str) -> ShadedDiagram {
        ShadedDiagram::new(parse_pd(text).unwrap()).unwrap()
    }

    #[test]
    fn ternary_counts() {
        let p = emit_ternary(&sd(TREFOIL), Kind::Unoriented).unwrap();
        assert_eq!((p.generators.len(), p.relations.len()), (5, 3));
        let p = emit_ternary(&sd("X(1,2,2,1)"), Kind::Unoriented).unwrap();
        assert_eq!((p.generators.len(), p.relations.len()), (3, 1));
        let p = emit_ternary(&sd("@circles 1"), Kind::Unoriented).unwrap();
        assert_eq!((p.generators.len(), p.relations.len()), (2, 0));
    }

    #[test]
    fn head_is_lowest_face() {
        let s = sd(TREFOIL);
        let p = emit_ternary(&s, Kind::Unoriented).unwrap();
        for (x, r) in p.relations.iter().enumerate() {
            let Relation::Ternary { head, .. } = r else { panic!() };
            assert_eq!(*head, *s.quadrant_faces(x).iter().min().unwrap());
        }
    }

    #[test]
    fn unknot_dehn_text() {
        let p = emit_dehn(&sd("@circles 1"));
        assert_eq!(p.to_string(), "gen r0 r1\nrel r0 = 1\n");
        assert_eq!(abelianization(&p).unwrap(), Abelian { rank: 1, torsion: vec![] });
    }

    #[test]
    fn dehn_abelianizes_to_z() {
        for text in ["X(1,2,2,1)", TREFOIL, "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"] {
            let a = abelianization(&emit_dehn(&sd(text))).unwrap();
            assert_eq!(a.to_string(), "Z", "{text}");
        }
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]], 2), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(smith_diagonal(vec![vec![0, 0]], 2), Vec::<i64>::new());
    }

    #[test]
    fn core_relation_shape() {
        let d = parse_pd(TREFOIL).unwrap();
        let p = emit_arc_presentation(&d, ArcTheory::Core).unwrap();
        assert_eq!((p.generators.len(), p.relations.len()), (3, 3));
        for r in &p.relations {
            let Relation::Group { rhs, .. } = r else { panic!() };
            assert_eq!(rhs.iter().map(|e| e.1).collect::<Vec<_>>(), vec![1, -1, 1]);
            assert_eq!(rhs[0].0, rhs[2].0);
        }
        let u = parse_pd("@circles 1").unwrap();
        let p = emit_arc_presentation(&u, ArcTheory::Core).unwrap();
        assert_eq!((p.generators.len(), p.relations.len()), (1, 0));
    }

    #[test]
    fn wirtinger_needs_orientation() {
        let d = parse_pd_unoriented(TREFOIL);
        assert_eq!(
            emit_arc_presentation(&d, ArcTheory::Wirtinger),
            Err(PresentationError::NotOriented)
        );
    }

    fn parse_pd_unoriented(text: &str) -> Diagram {
        parse_pd(text).unwrap().with_oriented(false).unwrap()
    }
}
