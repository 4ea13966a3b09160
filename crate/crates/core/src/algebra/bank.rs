//! Named algebras: the two 4-element table examples, the group-word pairs
//! `g1..g9`, and the loop-word pairs `m1..m6`, `e1..e18`, `b1..b4`.
//!
//! Names resolve as `<formula>:<structure>[:oriented]`, e.g. `g2:s3`,
//! `m1:ms3:oriented`, `b3:fixtures/bol8.json`. `core:<group>` is `g8` and
//! `knot:<group>` is `g1`.

use std::path::Path;

use super::magma::{cyclic, dihedral4, m_construction, quaternion8, symmetric3, CayleyFile};
use super::{AlgebraError, FiniteTernaryAlgebra, Kind, MagmaTable, Result, TernaryTable, Word};

// Reference order-4 tables, one 1-based 4x4 slice per third argument z = 4, 3, 2, 1;
// row x, column y. Each slice lists `T(x, y, z)`.
type Slices = [[[usize; 4]; 4]; 4];

const W_SLICES: Slices = [
    [[1, 2, 3, 4], [3, 4, 2, 1], [4, 3, 1, 2], [2, 1, 4, 3]],
    [[4, 3, 1, 2], [1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 2, 1]],
    [[3, 4, 2, 1], [2, 1, 4, 3], [1, 2, 3, 4], [4, 3, 1, 2]],
    [[2, 1, 4, 3], [4, 3, 1, 2], [3, 4, 2, 1], [1, 2, 3, 4]],
];
const B_SLICES: Slices = [
    [[3, 1, 4, 2], [2, 4, 1, 3], [1, 2, 3, 4], [4, 3, 2, 1]],
    [[2, 4, 1, 3], [3, 1, 4, 2], [4, 3, 2, 1], [1, 2, 3, 4]],
    [[1, 2, 3, 4], [4, 3, 2, 1], [2, 4, 1, 3], [3, 1, 4, 2]],
    [[4, 3, 2, 1], [1, 2, 3, 4], [3, 1, 4, 2], [2, 4, 1, 3]],
];
const C_SLICES: Slices = [
    [[2, 3, 4, 1], [1, 4, 3, 2], [4, 1, 2, 3], [3, 2, 1, 4]],
    [[3, 4, 1, 2], [4, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 1]],
    [[4, 1, 2, 3], [3, 2, 1, 4], [2, 3, 4, 1], [1, 4, 3, 2]],
    [[1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3]],
];
const S_SLICES: Slices = [
    [[2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3], [1, 2, 3, 4]],
    [[3, 2, 1, 4], [4, 1, 2, 3], [1, 4, 3, 2], [2, 3, 4, 1]],
    [[4, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2]],
    [[1, 4, 3, 2], [2, 3, 4, 1], [3, 2, 1, 4], [4, 1, 2, 3]],
];

fn from_slices(s: &Slices) -> TernaryTable {
    TernaryTable::from_fn(4, |x, y, z| s[3 - z][x][y] - 1).expect("4-element table")
}

/// The 4-element unoriented example, `op1 = W`, `op2 = B`.
pub fn latin4_unoriented() -> FiniteTernaryAlgebra {
    FiniteTernaryAlgebra::new(
        "latin4-unoriented",
        Kind::Unoriented,
        from_slices(&W_SLICES),
        from_slices(&B_SLICES),
    )
    .expect("order-4 tables")
}

/// The 4-element oriented example with `S != C`, `op1 = C`, `op2 = S`.
pub fn latin4_oriented() -> FiniteTernaryAlgebra {
    FiniteTernaryAlgebra::new(
        "latin4-oriented",
        Kind::Oriented,
        from_slices(&C_SLICES),
        from_slices(&S_SLICES),
    )
    .expect("order-4 tables")
}

/// Group-word pairs as `(W, B)`.
pub const GROUP_PAIRS: [(&str, &str, &str); 9] = [
    ("g1", "a*b^-1*c", "a*b^-1*c"),
    ("g2", "a*c^-1*b", "a*c^-1*b"),
    ("g3", "b*a^-1*c", "b*a^-1*c"),
    ("g4", "b*c^-1*a", "b*c^-1*a"),
    ("g5", "c*a^-1*b", "c*a^-1*b"),
    ("g6", "c*b^-1*a", "c*b^-1*a"),
    ("g7", "b*c*a^-1", "a^-1*c*b"),
    ("g8", "b*a*c^-1", "c^-1*a*b"),
    ("g9", "a^-1*b^-1*c^-1", "c^-1*b^-1*a^-1"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variety {
    Group,
    Moufang,
    Extra,
    LeftBol,
}

impl Variety {
    fn name(self) -> &'static str {
        match self {
            Variety::Group => "group",
            Variety::Moufang => "Moufang loop",
            Variety::Extra => "extra loop",
            Variety::LeftBol => "left Bol loop",
        }
    }

    pub fn admits(self, l: &MagmaTable) -> bool {
        match self {
            Variety::Group => l.is_group(),
            Variety::Moufang => l.is_moufang(),
            Variety::Extra => l.is_extra(),
            Variety::LeftBol => l.is_left_bol(),
        }
    }
}

/// Loop-word pairs `(id, op1, op2, oriented)`; the last flag marks pairs
/// listed for the oriented case as well as the unoriented one.
pub const LOOP_PAIRS: [(&str, &str, &str, bool); 28] = [
    ("m1", "(b*a^-1)*c", "(b*a^-1)*c", true),
    ("m2", "(b*c^-1)*a", "(b*c^-1)*a", true),
    ("m3", "a*(c^-1*b)", "a*(c^-1*b)", true),
    ("m4", "c*(a^-1*b)", "c*(a^-1*b)", true),
    ("m5", "a^-1*(c*b)", "(b*c)*a^-1", false),
    ("m6", "c^-1*(a*b)", "(b*a)*c^-1", false),
    ("e1", "(a*b^-1)*c", "(a*b^-1)*c", true),
    ("e2", "(a*c^-1)*b", "(a*c^-1)*b", true),
    ("e3", "(b*a^-1)*c", "(b*a^-1)*c", true),
    ("e4", "(b*c^-1)*a", "(b*c^-1)*a", true),
    ("e5", "(c*a^-1)*b", "(c*a^-1)*b", true),
    ("e6", "(c*b^-1)*a", "(c*b^-1)*a", true),
    ("e7", "a*(b^-1*c)", "a*(b^-1*c)", true),
    ("e8", "a*(c^-1*b)", "a*(c^-1*b)", true),
    ("e9", "b*(a^-1*c)", "b*(a^-1*c)", true),
    ("e10", "b*(c^-1*a)", "b*(c^-1*a)", true),
    ("e11", "c*(a^-1*b)", "c*(a^-1*b)", true),
    ("e12", "c*(b^-1*a)", "c*(b^-1*a)", true),
    ("e13", "(a^-1*c)*b", "b*(c*a^-1)", false),
    ("e14", "(c^-1*a)*b", "b*(a*c^-1)", false),
    ("e15", "a^-1*(c*b)", "(b*c)*a^-1", false),
    ("e16", "c^-1*(a*b)", "(b*a)*c^-1", false),
    ("e17", "(a^-1*b^-1)*c^-1", "c^-1*(b^-1*a^-1)", false),
    ("e18", "a^-1*(b^-1*c^-1)", "(c^-1*b^-1)*a^-1", false),
    ("b1", "(b/a)*c", "(b/a)*c", true),
    ("b2", "(b/c)*a", "(b/c)*a", true),
    ("b3", "(b/a^-1)*c^-1", "((a/b^-1)\\c)^-1", false),
    ("b4", "(b/c^-1)*a^-1", "((c/b^-1)\\a)^-1", false),
];

/// Formula ids with their `(op1, op2)` words and required variety.
pub fn formula(id: &str) -> Result<(Word, Word, Variety)> {
    if let Some(&(_, w, b)) = GROUP_PAIRS.iter().find(|p| p.0 == id) {
        return Ok((Word::parse(w)?, Word::parse(b)?, Variety::Group));
    }
    if let Some(&(_, p, q, _)) = LOOP_PAIRS.iter().find(|p| p.0 == id) {
        let v = match id.as_bytes()[0] {
            b'm' => Variety::Moufang,
            b'e' => Variety::Extra,
            _ => Variety::LeftBol,
        };
        return Ok((Word::parse(p)?, Word::parse(q)?, v));
    }
    Err(AlgebraError::UnknownFormula(id.to_string()))
}

/// Whether the pair is listed for the oriented case.
pub fn listed_oriented(id: &str) -> bool {
    LOOP_PAIRS.iter().any(|p| p.0 == id && p.3)
}

fn from_words(
    name: String,
    l: &MagmaTable,
    op1: &Word,
    op2: &Word,
    variety: Variety,
    kind: Kind,
) -> Result<FiniteTernaryAlgebra> {
    if !variety.admits(l) {
        return Err(AlgebraError::Variety {
            name: name.clone(),
            required: variety.name().into(),
            reason: "identity check failed on the table".into(),
        });
    }
    FiniteTernaryAlgebra::new(name, kind, op1.to_table(l)?, op2.to_table(l)?)
}

/// `(g1)..(g9)` over a group; `op1 = W`, `op2 = B`.
pub fn from_group_word(g: &MagmaTable, pair_id: &str, kind: Kind) -> Result<FiniteTernaryAlgebra> {
    let (w, b, v) = formula(pair_id)?;
    if v != Variety::Group {
        return Err(AlgebraError::UnknownFormula(pair_id.to_string()));
    }
    from_words(pair_id.to_string(), g, &w, &b, v, kind)
}

/// `(m*)`, `(e*)`, `(b*)` over a loop; the first listed word is `op1`.
pub fn from_loop_word(l: &MagmaTable, formula_id: &str, kind: Kind) -> Result<FiniteTernaryAlgebra> {
    let (p, q, v) = formula(formula_id)?;
    if v == Variety::Group {
        return Err(AlgebraError::UnknownFormula(formula_id.to_string()));
    }
    from_words(formula_id.to_string(), l, &p, &q, v, kind)
}

pub const GROUP_NAMES: [&str; 11] = ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "s3", "d4", "q8"];
pub const LOOP_NAMES: [&str; 2] = ["ms3", "md4"];

/// Built-in groups and loops by name, or a Cayley-table JSON file path.
pub fn structure(name: &str) -> Result<MagmaTable> {
    if let Some(k) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=8).contains(&k) {
            return Ok(cyclic(k));
        }
    }
    match name {
        "s3" => return Ok(symmetric3()),
        "d4" => return Ok(dihedral4()),
        "q8" => return Ok(quaternion8()),
        "ms3" => return m_construction(&symmetric3()),
        "md4" => return m_construction(&dihedral4()),
        _ => {}
    }
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::UnknownBuiltin(format!("{name}: {e}")))?;
        let file: CayleyFile = serde_json::from_str(&text)
            .map_err(|e| AlgebraError::UnknownBuiltin(format!("{name}: {e}")))?;
        return file.into_table();
    }
    Err(AlgebraError::UnknownBuiltin(name.to_string()))
}

/// Resolves a built-in algebra name.
pub fn builtin(name: &str) -> Result<FiniteTernaryAlgebra> {
    match name {
        "latin4-unoriented" => return Ok(latin4_unoriented()),
        "latin4-oriented" => return Ok(latin4_oriented()),
        _ => {}
    }
    let unknown = || AlgebraError::UnknownBuiltin(name.to_string());
    let (base, kind) = match name.strip_suffix(":oriented") {
        Some(b) => (b, Kind::Oriented),
        None => (name.strip_suffix(":unoriented").unwrap_or(name), Kind::Unoriented),
    };
    let (id, target) = base.split_once(':').ok_or_else(unknown)?;
    let id = match id {
        "core" => "g8",
        "knot" => "g1",
        other => other,
    };
    let (_, _, variety) = formula(id).map_err(|_| unknown())?;
    let table = structure(target)?;
    let mut alg = if variety == Variety::Group {
        from_group_word(&table, id, kind)?
    } else {
        from_loop_word(&table, id, kind)?
    };
    alg.name = name.to_string();
    Ok(alg)
}

/// The built-in names exercised by the test suites: every listed pair over
/// every structure in its variety (small carriers only).
pub fn bank_names(max_size: usize) -> Vec<String> {
    let mut out = vec!["latin4-unoriented".to_string(), "latin4-oriented".to_string()];
    for g in GROUP_NAMES {
        if structure(g).map(|t| t.size() <= max_size).unwrap_or(false) {
            for (id, _, _) in GROUP_PAIRS {
                out.push(format!("{id}:{g}"));
            }
            // the symmetric pairs double as oriented operators
            for (id, w, b) in GROUP_PAIRS {
                if w == b {
                    out.push(format!("{id}:{g}:oriented"));
                }
            }
        }
    }
    for l in LOOP_NAMES {
        if structure(l).map(|t| t.size() <= max_size).unwrap_or(false) {
            for (id, _, _, ori) in LOOP_PAIRS {
                if (l == "ms3" && id.starts_with('m')) || (l == "md4" && !id.starts_with('b')) {
                    out.push(format!("{id}:{l}"));
                    if ori {
                        out.push(format!("{id}:{l}:oriented"));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::latin_cube_check;

    #[test]
    fn latin4_tables_spot_values() {
        let c = latin4_oriented();
        // 1-based C(2,1,4) = 1, S(2,1,4) = 3
        assert_eq!(c.op1.get(1, 0, 3), 0);
        assert_eq!(c.op2.get(1, 0, 3), 2);
        let u = latin4_unoriented();
        // slice xy4W row 1 is the identity row
        assert_eq!((0..4).map(|y| u.op1.get(0, y, 3)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(latin_cube_check(&u).all());
        assert!(latin_cube_check(&c).all());
    }

    #[test]
    fn g8_over_c3() {
        // B(a,b,c) = -c + a + b
        let a = builtin("g8:c3").unwrap();
        assert_eq!(a.op2.get(0, 1, 2), 2);
        let g9 = builtin("g9:s3").unwrap();
        let s3 = symmetric3();
        for x in 0..6 {
            let inv = s3.inverse(x).unwrap();
            assert_eq!(g9.op2.get(x, x, x), s3.mul(inv, s3.mul(inv, inv)));
        }
    }

    #[test]
    fn aliases_and_suffixes() {
        assert_eq!(builtin("core:c3").unwrap().op2, builtin("g8:c3").unwrap().op2);
        assert_eq!(builtin("knot:s3").unwrap().op1, builtin("g1:s3").unwrap().op1);
        assert_eq!(builtin("m1:ms3:oriented").unwrap().kind, Kind::Oriented);
        assert!(builtin("g10:s3").is_err());
        assert!(builtin("g1:z9").is_err());
        assert!(builtin("nonsense").is_err());
    }

    #[test]
    fn variety_is_enforced() {
        // S3 doubled is Moufang but not extra
        assert!(matches!(builtin("e1:ms3"), Err(AlgebraError::Variety { .. })));
        assert!(from_group_word(&m_construction(&symmetric3()).unwrap(), "g1", Kind::Unoriented).is_err());
        assert!(from_loop_word(&symmetric3(), "g1", Kind::Unoriented).is_err());
    }

    #[test]
    fn every_bank_name_resolves() {
        for name in bank_names(16) {
            builtin(&name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
