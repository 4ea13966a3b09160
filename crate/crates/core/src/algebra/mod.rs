//! Finite ternary algebras and the axiom systems that make region-coloring
//! counts invariant.
//!
//! An unoriented algebra carries the operators `W` (white regions, `op1`) and
//! `B` (black regions, `op2`); an oriented one carries `C` (`op1`) and `S`
//! (`op2`). Elements are `0..n`; `T(x, y, z)` is written `xyzT` in postfix.

mod axioms;
pub mod bank;
pub mod magma;
pub mod word;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use axioms::{
    axiom_holds, check_axioms, check_oriented_axioms, check_unoriented_axioms, AxiomFilter,
    AxiomReport, AxiomResult,
};
pub use magma::{LoopProperty, MagmaTable, PropertyReport};
pub use word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("table entry {value} out of range for size {n}")]
    OutOfRange { value: usize, n: usize },
    #[error("table has {found} entries, expected {expected}")]
    Shape { found: usize, expected: usize },
    #[error("expected a {expected} algebra, got {found}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("{name} is not a {required}: {reason}")]
    Variety {
        name: String,
        required: String,
        reason: String,
    },
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("division undefined: the table is not a quasigroup")]
    NotQuasigroup,
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),
    #[error("carrier size must be positive")]
    Empty,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Unoriented,
    Oriented,
}

impl Kind {
    pub fn axiom_count(self) -> usize {
        match self {
            Kind::Unoriented => 8,
            Kind::Oriented => 6,
        }
    }

    /// Operator symbols for `op1` and `op2`.
    pub fn symbols(self) -> (char, char) {
        match self {
            Kind::Unoriented => ('W', 'B'),
            Kind::Oriented => ('C', 'S'),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Unoriented => "unoriented",
            Kind::Oriented => "oriented",
        })
    }
}

/// An `n x n x n` operation table, indexed `[x][y][z]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryTable {
    n: usize,
    data: Vec<usize>,
}

impl TernaryTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> usize) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    data.push(f(x, y, z));
                }
            }
        }
        Self::from_flat(n, data)
    }

    pub fn from_flat(n: usize, data: Vec<usize>) -> Result<Self> {
        if data.len() != n * n * n {
            return Err(AlgebraError::Shape {
                found: data.len(),
                expected: n * n * n,
            });
        }
        if let Some(&value) = data.iter().find(|&&v| v >= n) {
            return Err(AlgebraError::OutOfRange { value, n });
        }
        Ok(Self { n, data })
    }

    pub fn from_nested(cube: &[Vec<Vec<usize>>]) -> Result<Self> {
        let n = cube.len();
        let mut data = Vec::with_capacity(n * n * n);
        for plane in cube {
            if plane.len() != n {
                return Err(AlgebraError::Shape {
                    found: plane.len(),
                    expected: n,
                });
            }
            for row in plane {
                if row.len() != n {
                    return Err(AlgebraError::Shape {
                        found: row.len(),
                        expected: n,
                    });
                }
                data.extend_from_slice(row);
            }
        }
        Self::from_flat(n, data)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.n;
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|z| self.get(x, y, z)).collect())
                    .collect()
            })
            .collect()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.data[(x * self.n + y) * self.n + z]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.data
    }

    /// Whether every line along argument `pos` (the other two fixed) is a bijection.
    pub fn slices_bijective(&self, pos: usize) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        for u in 0..n {
            for v in 0..n {
                seen.iter_mut().for_each(|s| *s = false);
                for t in 0..n {
                    let val = match pos {
                        0 => self.get(t, u, v),
                        1 => self.get(u, t, v),
                        _ => self.get(u, v, t),
                    };
                    if std::mem::replace(&mut seen[val], true) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The table `T'(x, y, ·) = T(y, x, ·)^{-1}`; `None` unless every
    /// third-argument slice is a bijection.
    pub fn swapped_third_inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut data = vec![usize::MAX; n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = self.get(y, x, z);
                    let slot = &mut data[(x * n + y) * n + v];
                    if *slot != usize::MAX {
                        return None;
                    }
                    *slot = z;
                }
            }
        }
        Some(Self { n, data })
    }
}

/// A carrier `{0..n}` with two ternary operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTernaryAlgebra {
    pub name: String,
    pub kind: Kind,
    pub op1: TernaryTable,
    pub op2: TernaryTable,
}

impl FiniteTernaryAlgebra {
    pub fn new(
        name: impl Into<String>,
        kind: Kind,
        op1: TernaryTable,
        op2: TernaryTable,
    ) -> Result<Self> {
        if op1.size() != op2.size() {
            return Err(AlgebraError::Shape {
                found: op2.size(),
                expected: op1.size(),
            });
        }
        if op1.size() == 0 {
            return Err(AlgebraError::Empty);
        }
        Ok(Self {
            name: name.into(),
            kind,
            op1,
            op2,
        })
    }

    pub fn size(&self) -> usize {
        self.op1.size()
    }

    /// Exchanges the two operators (`W <-> B` or `C <-> S`).
    pub fn swapped(&self) -> Self {
        Self {
            name: format!("{}~swap", self.name),
            kind: self.kind,
            op1: self.op2.clone(),
            op2: self.op1.clone(),
        }
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn check_axioms(&self) -> AxiomReport {
        check_axioms(self)
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            name: self.name.clone(),
            size: self.size(),
            kind: self.kind,
            op1: self.op1.to_nested(),
            op2: self.op2.to_nested(),
        }
    }
}

/// Per-operator, per-argument bijectivity of slices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatinReport {
    pub op1: [bool; 3],
    pub op2: [bool; 3],
}

impl LatinReport {
    pub fn all(&self) -> bool {
        self.op1.iter().chain(&self.op2).all(|&b| b)
    }
}

pub fn latin_cube_check(a: &FiniteTernaryAlgebra) -> LatinReport {
    let f = |t: &TernaryTable| [0, 1, 2].map(|p| t.slices_bijective(p));
    LatinReport {
        op1: f(&a.op1),
        op2: f(&a.op2),
    }
}

/// On-disk algebra: two cubes indexed `op[x][y][z]`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: String,
    pub size: usize,
    pub kind: Kind,
    pub op1: Vec<Vec<Vec<usize>>>,
    pub op2: Vec<Vec<Vec<usize>>>,
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<FiniteTernaryAlgebra> {
        let op1 = TernaryTable::from_nested(&self.op1)?;
        let op2 = TernaryTable::from_nested(&self.op2)?;
        if op1.size() != self.size {
            return Err(AlgebraError::Shape {
                found: op1.size(),
                expected: self.size,
            });
        }
        let name = if self.name.is_empty() {
            "file".to_string()
        } else {
            self.name
        };
        FiniteTernaryAlgebra::new(name, self.kind, op1, op2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_operator_fails_every_slice() {
        let t = TernaryTable::from_fn(2, |_, _, _| 0).unwrap();
        let a = FiniteTernaryAlgebra::new("zero", Kind::Unoriented, t.clone(), t).unwrap();
        let r = latin_cube_check(&a);
        assert_eq!(r.op1, [false; 3]);
        assert_eq!(r.op2, [false; 3]);
    }

    #[test]
    fn out_of_range_entries_rejected() {
        assert_eq!(
            TernaryTable::from_flat(2, vec![0, 1, 2, 0, 0, 0, 0, 0]),
            Err(AlgebraError::OutOfRange { value: 2, n: 2 })
        );
        assert!(matches!(
            TernaryTable::from_flat(2, vec![0; 7]),
            Err(AlgebraError::Shape { .. })
        ));
    }

    #[test]
    fn nested_round_trip() {
        let t = TernaryTable::from_fn(3, |x, y, z| (x + 2 * y + z) % 3).unwrap();
        assert_eq!(TernaryTable::from_nested(&t.to_nested()).unwrap(), t);
    }

    #[test]
    fn swapped_inverse_undoes_slices() {
        let t = TernaryTable::from_fn(4, |x, y, z| (x + 3 * y + z) % 4).unwrap();
        let s = t.swapped_third_inverse().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                for x in 0..4 {
                    assert_eq!(s.get(b, a, t.get(a, b, x)), x);
                }
            }
        }
        let flat = TernaryTable::from_fn(2, |_, _, _| 1).unwrap();
        assert!(flat.swapped_third_inverse().is_none());
    }
}
