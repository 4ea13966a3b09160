//! Binary Cayley tables: groups, quasigroups, loops and the loop identities
//! used to gate the loop-word operators.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaTable {
    n: usize,
    mul: Vec<usize>,
    identity: Option<usize>,
    // `ldiv[x*n+y]` solves x*z = y, `rdiv[x*n+y]` solves z*y = x.
    ldiv: Option<Vec<usize>>,
    rdiv: Option<Vec<usize>>,
    inverse: Vec<Option<usize>>,
}

impl MagmaTable {
    /// Builds a table from rows; the identity is detected when not given.
    pub fn from_rows(rows: &[Vec<usize>], identity: Option<usize>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(AlgebraError::Shape {
                    found: row.len(),
                    expected: n,
                });
            }
            if let Some(&value) = row.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::OutOfRange { value, n });
            }
            mul.extend_from_slice(row);
        }
        let m = |x: usize, y: usize| mul[x * n + y];
        let is_identity = |e: usize| (0..n).all(|x| m(x, e) == x && m(e, x) == x);
        let identity = match identity {
            Some(e) if e >= n => return Err(AlgebraError::OutOfRange { value: e, n }),
            Some(e) if !is_identity(e) => {
                return Err(AlgebraError::Variety {
                    name: "table".into(),
                    required: "loop".into(),
                    reason: format!("declared identity {e} is not a two-sided identity"),
                })
            }
            Some(e) => Some(e),
            None => (0..n).find(|&e| is_identity(e)),
        };

        let mut ldiv = vec![usize::MAX; n * n];
        let mut rdiv = vec![usize::MAX; n * n];
        let mut latin = true;
        for x in 0..n {
            for z in 0..n {
                let v = m(x, z);
                latin &= std::mem::replace(&mut ldiv[x * n + v], z) == usize::MAX;
                latin &= std::mem::replace(&mut rdiv[v * n + z], x) == usize::MAX;
            }
        }
        let (ldiv, rdiv) = if latin {
            (Some(ldiv), Some(rdiv))
        } else {
            (None, None)
        };

        let inverse = (0..n)
            .map(|x| {
                let e = identity?;
                let y = (0..n).find(|&y| m(x, y) == e)?;
                (m(y, x) == e).then_some(y)
            })
            .collect();
        Ok(Self {
            n,
            mul,
            identity,
            ldiv,
            rdiv,
            inverse,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Self::from_rows(&rows, None)
    }

    /// Cayley table of the subgroup (or submonoid) generated by `gens`, with
    /// elements sorted and the identity moved to index 0.
    pub fn from_generators<T, F>(gens: &[T], identity: T, mul: F) -> Result<Self>
    where
        T: Ord + Clone,
        F: Fn(&T, &T) -> T,
    {
        let mut seen: std::collections::BTreeSet<T> = gens.iter().cloned().collect();
        seen.insert(identity.clone());
        let mut frontier: Vec<T> = seen.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<T> = seen.iter().cloned().collect();
            for g in &current {
                for y in [mul(&x, g), mul(g, &x)] {
                    if seen.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        let mut elems: Vec<T> = seen.into_iter().collect();
        let pos = elems.iter().position(|e| *e == identity).unwrap();
        let id = elems.remove(pos);
        elems.insert(0, id);
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|x| elems.iter().map(|y| index[&mul(x, y)]).collect())
            .collect();
        Self::from_rows(&rows, Some(0))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `x \ y`: the unique z with x*z = y.
    pub fn ldiv(&self, x: usize, y: usize) -> Result<usize> {
        self.ldiv
            .as_ref()
            .map(|t| t[x * self.n + y])
            .ok_or(AlgebraError::NotQuasigroup)
    }

    /// `x / y`: the unique z with z*y = x.
    pub fn rdiv(&self, x: usize, y: usize) -> Result<usize> {
        self.rdiv
            .as_ref()
            .map(|t| t[x * self.n + y])
            .ok_or(AlgebraError::NotQuasigroup)
    }

    /// Two-sided inverse; an error where x*y = e and y*x = e disagree.
    pub fn inverse(&self, x: usize) -> Result<usize> {
        self.inverse[x].ok_or(AlgebraError::NoInverse(x))
    }

    pub fn is_quasigroup(&self) -> bool {
        self.ldiv.is_some()
    }

    pub fn is_loop(&self) -> bool {
        self.is_quasigroup() && self.identity.is_some()
    }

    pub fn is_group(&self) -> bool {
        self.is_loop() && self.check(LoopProperty::Associative).holds
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn satisfies_all(&self, props: &[LoopProperty]) -> bool {
        props.iter().all(|&p| self.check(p).holds)
    }

    pub fn is_moufang(&self) -> bool {
        self.is_loop() && self.satisfies_all(&LoopProperty::MOUFANG)
    }

    pub fn is_extra(&self) -> bool {
        self.is_loop() && self.satisfies_all(&LoopProperty::EXTRA)
    }

    pub fn is_left_bol(&self) -> bool {
        self.is_loop() && self.check(LoopProperty::LeftBol).holds
    }

    /// Checks a single identity exhaustively; variables are `(x, y, z)`
    /// truncated to the identity's arity.
    pub fn check(&self, prop: LoopProperty) -> PropertyReport {
        let n = self.n;
        let k = prop.arity();
        let needs_division = matches!(prop, LoopProperty::ConjugacyClosed1 | LoopProperty::ConjugacyClosed2);
        let needs_inverse = matches!(
            prop,
            LoopProperty::LeftInverse | LoopProperty::RightInverse | LoopProperty::AntiAutomorphicInverse
        );
        if (needs_division && !self.is_quasigroup())
            || (needs_inverse && self.inverse.iter().any(Option::is_none))
        {
            return PropertyReport {
                property: prop,
                holds: false,
                witness: None,
                defined: false,
            };
        }
        let mut t = vec![0usize; k];
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            for slot in t.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            if !self.identity_at(prop, &t) {
                return PropertyReport {
                    property: prop,
                    holds: false,
                    witness: Some(t),
                    defined: true,
                };
            }
        }
        PropertyReport {
            property: prop,
            holds: true,
            witness: None,
            defined: true,
        }
    }

    /// Whether the identity holds at the given variable assignment.
    pub fn identity_at(&self, prop: LoopProperty, t: &[usize]) -> bool {
        use LoopProperty::*;
        let m = |a, b| self.mul(a, b);
        let inv = |a: usize| self.inverse[a].unwrap_or(usize::MAX);
        let x = t[0];
        let y = t.get(1).copied().unwrap_or(0);
        let z = t.get(2).copied().unwrap_or(0);
        match prop {
            Associative => m(m(x, y), z) == m(x, m(y, z)),
            LeftBol => m(x, m(y, m(x, z))) == m(m(x, m(y, x)), z),
            Moufang1 => m(z, m(x, m(z, y))) == m(m(m(z, x), z), y),
            Moufang2 => m(x, m(z, m(y, z))) == m(m(m(x, z), y), z),
            Moufang3 => m(m(z, x), m(y, z)) == m(m(z, m(x, y)), z),
            Moufang4 => m(m(z, x), m(y, z)) == m(z, m(m(x, y), z)),
            ConjugacyClosed1 => {
                let rhs = self.ldiv(z, m(y, z)).map(|w| m(m(x, z), w));
                rhs == Ok(m(m(x, y), z))
            }
            ConjugacyClosed2 => {
                let lhs = self.rdiv(m(z, y), z).map(|w| m(w, m(z, x)));
                lhs == Ok(m(z, m(y, x)))
            }
            Extra1 => m(m(x, m(y, z)), y) == m(m(x, y), m(z, y)),
            Extra2 => m(m(y, z), m(y, x)) == m(y, m(m(z, y), x)),
            Extra3 => m(m(m(x, y), z), x) == m(x, m(y, m(z, x))),
            CLoop => m(x, m(y, m(y, z))) == m(m(m(x, y), y), z),
            LeftC => m(m(x, x), m(y, z)) == m(m(x, m(x, y)), z),
            RightC => m(x, m(m(y, z), z)) == m(m(x, y), m(z, z)),
            Flexible => m(m(x, y), x) == m(x, m(y, x)),
            LeftAlternative => m(x, m(x, y)) == m(m(x, x), y),
            RightAlternative => m(m(y, x), x) == m(y, m(x, x)),
            LeftInverse => m(inv(x), m(x, y)) == y,
            RightInverse => m(m(y, x), inv(x)) == y,
            AntiAutomorphicInverse => inv(m(x, y)) == m(inv(y), inv(x)),
        }
    }

    pub fn to_file(&self) -> CayleyFile {
        CayleyFile {
            size: self.n,
            table: self.rows(),
            identity: self.identity,
        }
    }
}

impl fmt::Display for MagmaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.n.saturating_sub(1).to_string().len();
        for row in self.mul.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopProperty {
    Associative,
    LeftBol,
    Moufang1,
    Moufang2,
    Moufang3,
    Moufang4,
    ConjugacyClosed1,
    ConjugacyClosed2,
    Extra1,
    Extra2,
    Extra3,
    CLoop,
    LeftC,
    RightC,
    Flexible,
    LeftAlternative,
    RightAlternative,
    LeftInverse,
    RightInverse,
    AntiAutomorphicInverse,
}

impl LoopProperty {
    pub const ALL: [LoopProperty; 20] = [
        LoopProperty::Associative,
        LoopProperty::LeftBol,
        LoopProperty::Moufang1,
        LoopProperty::Moufang2,
        LoopProperty::Moufang3,
        LoopProperty::Moufang4,
        LoopProperty::ConjugacyClosed1,
        LoopProperty::ConjugacyClosed2,
        LoopProperty::Extra1,
        LoopProperty::Extra2,
        LoopProperty::Extra3,
        LoopProperty::CLoop,
        LoopProperty::LeftC,
        LoopProperty::RightC,
        LoopProperty::Flexible,
        LoopProperty::LeftAlternative,
        LoopProperty::RightAlternative,
        LoopProperty::LeftInverse,
        LoopProperty::RightInverse,
        LoopProperty::AntiAutomorphicInverse,
    ];
    pub const MOUFANG: [LoopProperty; 4] = [
        LoopProperty::Moufang1,
        LoopProperty::Moufang2,
        LoopProperty::Moufang3,
        LoopProperty::Moufang4,
    ];
    pub const EXTRA: [LoopProperty; 3] = [
        LoopProperty::Extra1,
        LoopProperty::Extra2,
        LoopProperty::Extra3,
    ];
    pub const CONJUGACY_CLOSED: [LoopProperty; 2] = [
        LoopProperty::ConjugacyClosed1,
        LoopProperty::ConjugacyClosed2,
    ];

    pub fn arity(self) -> usize {
        use LoopProperty::*;
        match self {
            Flexible | LeftAlternative | RightAlternative | LeftInverse | RightInverse
            | AntiAutomorphicInverse => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        use LoopProperty::*;
        match self {
            Associative => "associative",
            LeftBol => "left-bol",
            Moufang1 => "moufang-1",
            Moufang2 => "moufang-2",
            Moufang3 => "moufang-3",
            Moufang4 => "moufang-4",
            ConjugacyClosed1 => "cc-1",
            ConjugacyClosed2 => "cc-2",
            Extra1 => "extra-1",
            Extra2 => "extra-2",
            Extra3 => "extra-3",
            CLoop => "c-loop",
            LeftC => "lc",
            RightC => "rc",
            Flexible => "flexible",
            LeftAlternative => "left-alternative",
            RightAlternative => "right-alternative",
            LeftInverse => "left-inverse",
            RightInverse => "right-inverse",
            AntiAutomorphicInverse => "aaip",
        }
    }

    pub fn statement(self) -> &'static str {
        use LoopProperty::*;
        match self {
            Associative => "(x*y)*z = x*(y*z)",
            LeftBol => "x*(y*(x*z)) = (x*(y*x))*z",
            Moufang1 => "z*(x*(z*y)) = ((z*x)*z)*y",
            Moufang2 => "x*(z*(y*z)) = ((x*z)*y)*z",
            Moufang3 => "(z*x)*(y*z) = (z*(x*y))*z",
            Moufang4 => "(z*x)*(y*z) = z*((x*y)*z)",
            ConjugacyClosed1 => "(x*y)*z = (x*z)*(z\\(y*z))",
            ConjugacyClosed2 => "z*(y*x) = ((z*y)/z)*(z*x)",
            Extra1 => "(x*(y*z))*y = (x*y)*(z*y)",
            Extra2 => "(y*z)*(y*x) = y*((z*y)*x)",
            Extra3 => "((x*y)*z)*x = x*(y*(z*x))",
            CLoop => "x*(y*(y*z)) = ((x*y)*y)*z",
            LeftC => "(x*x)*(y*z) = (x*(x*y))*z",
            RightC => "x*((y*z)*z) = (x*y)*(z*z)",
            Flexible => "(x*y)*x = x*(y*x)",
            LeftAlternative => "x*(x*y) = (x*x)*y",
            RightAlternative => "(y*x)*x = y*(x*x)",
            LeftInverse => "x^-1*(x*y) = y",
            RightInverse => "(y*x)*x^-1 = y",
            AntiAutomorphicInverse => "(x*y)^-1 = y^-1*x^-1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for LoopProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: LoopProperty,
    pub holds: bool,
    /// Lexicographically least failing `(x, y[, z])`.
    pub witness: Option<Vec<usize>>,
    /// False when the identity needs divisions or inverses the table lacks.
    pub defined: bool,
}

/// On-disk Cayley table, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: Option<usize>,
}

impl CayleyFile {
    pub fn into_table(self) -> Result<MagmaTable> {
        if self.table.len() != self.size {
            return Err(AlgebraError::Shape {
                found: self.table.len(),
                expected: self.size,
            });
        }
        MagmaTable::from_rows(&self.table, self.identity)
    }
}

pub fn cyclic(n: usize) -> MagmaTable {
    MagmaTable::from_fn(n, |x, y| (x + y) % n).expect("cyclic table")
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Symmetric group on 3 letters; permutations in lexicographic order,
/// product `(pq)(i) = p(q(i))`.
pub fn symmetric3() -> MagmaTable {
    MagmaTable::from_generators(&[vec![1, 0, 2], vec![1, 2, 0]], vec![0, 1, 2], |p, q| compose(p, q))
        .expect("S3 table")
}

/// Dihedral group of order 8 acting on the square's corners.
pub fn dihedral4() -> MagmaTable {
    MagmaTable::from_generators(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]], vec![0, 1, 2, 3], |p, q| compose(p, q))
        .expect("D4 table")
}

/// Quaternion group, as unit quaternions with integer coordinates.
pub fn quaternion8() -> MagmaTable {
    fn qm(p: &[i8; 4], q: &[i8; 4]) -> [i8; 4] {
        let [a1, b1, c1, d1] = *p;
        let [a2, b2, c2, d2] = *q;
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    }
    MagmaTable::from_generators(&[[0, 1, 0, 0], [0, 0, 1, 0]], [1, 0, 0, 0], qm).expect("Q8 table")
}

/// The doubling `M(G, 2)` on `G x {0, 1}`; element `(g, b)` has index `g + |G| b`.
pub fn m_construction(g: &MagmaTable) -> Result<MagmaTable> {
    if !g.is_group() {
        return Err(AlgebraError::Variety {
            name: "input".into(),
            required: "group".into(),
            reason: "not an associative loop".into(),
        });
    }
    let n = g.size();
    let inv = |x| g.inverse(x).expect("group inverse");
    let mut rows = vec![vec![0; 2 * n]; 2 * n];
    for x in 0..n {
        for y in 0..n {
            rows[x][y] = g.mul(x, y);
            rows[x][y + n] = g.mul(y, x) + n;
            rows[x + n][y] = g.mul(x, inv(y)) + n;
            rows[x + n][y + n] = g.mul(inv(y), x);
        }
    }
    MagmaTable::from_rows(&rows, g.identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_have_expected_orders() {
        assert_eq!(symmetric3().size(), 6);
        assert_eq!(dihedral4().size(), 8);
        assert_eq!(quaternion8().size(), 8);
        for g in [symmetric3(), dihedral4(), quaternion8(), cyclic(5)] {
            assert!(g.is_group());
            assert_eq!(g.identity(), Some(0));
        }
        assert!(!symmetric3().is_commutative());
        assert!(cyclic(7).is_commutative());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8();
        let involutions = (1..8).filter(|&x| q.mul(x, x) == 0).count();
        assert_eq!(involutions, 1);
        // dihedral has five
        let d = dihedral4();
        assert_eq!((1..8).filter(|&x| d.mul(x, x) == 0).count(), 5);
    }

    #[test]
    fn divisions_solve_equations() {
        let g = symmetric3();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(g.mul(x, g.ldiv(x, y).unwrap()), y);
                assert_eq!(g.mul(g.rdiv(x, y).unwrap(), y), x);
            }
        }
    }

    #[test]
    fn non_latin_table_has_no_division() {
        let t = MagmaTable::from_rows(&[vec![0, 0], vec![0, 1]], None).unwrap();
        assert!(!t.is_quasigroup());
        assert_eq!(t.ldiv(0, 1), Err(AlgebraError::NotQuasigroup));
        assert_eq!(t.identity(), Some(1));
    }

    #[test]
    fn one_sided_inverse_is_an_error() {
        // identity 0; 1*2 = 0 but 2*1 = 1
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        let t = MagmaTable::from_rows(&rows, Some(0)).unwrap();
        assert_eq!(t.inverse(1), Err(AlgebraError::NoInverse(1)));
    }

    #[test]
    fn bad_declared_identity() {
        assert!(MagmaTable::from_rows(&[vec![0, 1], vec![1, 0]], Some(1)).is_err());
    }

    #[test]
    fn groups_satisfy_every_identity() {
        for g in [symmetric3(), dihedral4(), quaternion8()] {
            for p in LoopProperty::ALL {
                assert!(g.check(p).holds, "{p}");
            }
        }
    }

    #[test]
    fn doubling_of_abelian_group_is_a_group() {
        let m = m_construction(&cyclic(3)).unwrap();
        assert_eq!(m.size(), 6);
        assert!(m.is_group());
    }

    #[test]
    fn property_names_round_trip() {
        for p in LoopProperty::ALL {
            assert_eq!(LoopProperty::parse(p.name()), Some(p));
        }
    }
}
