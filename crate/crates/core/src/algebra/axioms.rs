use serde::Serialize;

use super::{AlgebraError, FiniteTernaryAlgebra, Kind, Result, TernaryTable};

/// Which axioms a check covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxiomFilter {
    #[default]
    All,
    /// Only the four-variable distributivity laws: (5)-(8), or (5)-(6) oriented.
    DistributivityOnly,
}

impl AxiomFilter {
    pub fn indices(self, kind: Kind) -> std::ops::RangeInclusive<usize> {
        match self {
            AxiomFilter::All => 1..=kind.axiom_count(),
            AxiomFilter::DistributivityOnly => 5..=kind.axiom_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub index: usize,
    pub statement: &'static str,
    pub holds: bool,
    /// Lexicographically least violating tuple `(a, b, c[, d])`.
    pub witness: Option<Vec<usize>>,
    /// For two-equation axioms, which equation (0 or 1) the witness breaks.
    pub equation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: Kind,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn pass_count(&self) -> usize {
        self.results.iter().filter(|r| r.holds).count()
    }

    pub fn total(&self) -> usize {
        self.results.len()
    }

    pub fn failed(&self) -> Vec<usize> {
        self.results
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.index)
            .collect()
    }

    pub fn get(&self, index: usize) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.index == index)
    }
}

pub(crate) fn arity(index: usize) -> usize {
    if index <= 4 {
        3
    } else {
        4
    }
}

pub(crate) fn statement(kind: Kind, index: usize) -> &'static str {
    match (kind, index) {
        (Kind::Unoriented, 1) => "B(b,B(a,c,b),a) = c",
        (Kind::Unoriented, 2) => "W(b,W(a,c,b),a) = c",
        (Kind::Unoriented, 3) => "W(b,a,B(a,b,c)) = c = B(b,a,W(a,b,c))",
        (Kind::Unoriented, 4) => "W(B(c,a,b),b,a) = c = B(W(c,a,b),b,a)",
        (Kind::Unoriented, 5) => "B(W(a,b,c),c,d) = B(W(a,b,B(b,c,d)),B(b,c,d),d)",
        (Kind::Unoriented, 6) => "W(a,b,B(b,c,d)) = W(a,W(a,b,c),B(W(a,b,c),c,d))",
        (Kind::Unoriented, 7) => "W(B(a,b,c),c,d) = W(B(a,b,W(b,c,d)),W(b,c,d),d)",
        (Kind::Unoriented, 8) => "B(a,b,W(b,c,d)) = B(a,B(a,b,c),W(B(a,b,c),c,d))",
        (Kind::Oriented, 1) => "C(b,C(a,c,b),a) = c",
        (Kind::Oriented, 2) => "S(b,S(a,c,b),a) = c",
        (Kind::Oriented, 3) => "S(b,a,C(a,b,c)) = c = C(b,a,S(a,b,c))",
        (Kind::Oriented, 4) => "S(C(c,a,b),b,a) = c = C(S(c,a,b),b,a)",
        (Kind::Oriented, 5) => "C(C(a,b,c),c,d) = C(C(a,b,C(b,c,d)),C(b,c,d),d)",
        (Kind::Oriented, 6) => "C(a,b,C(b,c,d)) = C(a,C(a,b,c),C(C(a,b,c),c,d))",
        _ => "",
    }
}

/// Returns the index of the broken equation, or `None` if the axiom holds at `t`.
///
/// `p` is `op1` (W or C), `q` is `op2` (B or S).
pub(crate) fn violation(
    kind: Kind,
    index: usize,
    p: &TernaryTable,
    q: &TernaryTable,
    t: &[usize],
) -> Option<usize> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let d = t.get(3).copied().unwrap_or(0);
    let w = |x, y, z| p.get(x, y, z);
    let s = |x, y, z| q.get(x, y, z);
    let fail0 = |ok: bool| (!ok).then_some(0);
    match (kind, index) {
        (Kind::Unoriented, 1) | (Kind::Oriented, 2) => fail0(s(b, s(a, c, b), a) == c),
        (Kind::Unoriented, 2) | (Kind::Oriented, 1) => fail0(w(b, w(a, c, b), a) == c),
        // (3) and (4) read the same with op1 in the W/C role and op2 in the B/S role.
        (_, 3) => {
            if w(b, a, s(a, b, c)) != c {
                Some(0)
            } else if s(b, a, w(a, b, c)) != c {
                Some(1)
            } else {
                None
            }
        }
        (_, 4) => {
            if w(s(c, a, b), b, a) != c {
                Some(0)
            } else if s(w(c, a, b), b, a) != c {
                Some(1)
            } else {
                None
            }
        }
        (Kind::Unoriented, 5) => {
            let bcd = s(b, c, d);
            fail0(s(w(a, b, c), c, d) == s(w(a, b, bcd), bcd, d))
        }
        (Kind::Unoriented, 6) => {
            let abc = w(a, b, c);
            fail0(w(a, b, s(b, c, d)) == w(a, abc, s(abc, c, d)))
        }
        (Kind::Unoriented, 7) => {
            let bcd = w(b, c, d);
            fail0(w(s(a, b, c), c, d) == w(s(a, b, bcd), bcd, d))
        }
        (Kind::Unoriented, 8) => {
            let abc = s(a, b, c);
            fail0(s(a, b, w(b, c, d)) == s(a, abc, w(abc, c, d)))
        }
        (Kind::Oriented, 5) => {
            let bcd = w(b, c, d);
            fail0(w(w(a, b, c), c, d) == w(w(a, b, bcd), bcd, d))
        }
        (Kind::Oriented, 6) => {
            let abc = w(a, b, c);
            fail0(w(a, b, w(b, c, d)) == w(a, abc, w(abc, c, d)))
        }
        _ => None,
    }
}

fn first_violation(
    kind: Kind,
    index: usize,
    p: &TernaryTable,
    q: &TernaryTable,
) -> Option<(Vec<usize>, usize)> {
    let n = p.size();
    let k = arity(index);
    let mut t = vec![0usize; k];
    loop {
        if let Some(eq) = violation(kind, index, p, q, &t) {
            return Some((t, eq));
        }
        // odometer, last coordinate fastest, so the first hit is lexicographically least
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Fast yes/no check of a single axiom on raw tables.
pub fn axiom_holds(kind: Kind, index: usize, op1: &TernaryTable, op2: &TernaryTable) -> bool {
    first_violation(kind, index, op1, op2).is_none()
}

pub(crate) fn report_for(
    kind: Kind,
    op1: &TernaryTable,
    op2: &TernaryTable,
    filter: AxiomFilter,
) -> AxiomReport {
    let results = filter
        .indices(kind)
        .map(|index| {
            let v = first_violation(kind, index, op1, op2);
            AxiomResult {
                index,
                statement: statement(kind, index),
                holds: v.is_none(),
                equation: v.as_ref().map(|(_, e)| *e),
                witness: v.map(|(t, _)| t),
            }
        })
        .collect();
    AxiomReport { kind, results }
}

pub fn check_unoriented_axioms(a: &FiniteTernaryAlgebra) -> Result<AxiomReport> {
    if a.kind != Kind::Unoriented {
        return Err(AlgebraError::WrongKind {
            expected: Kind::Unoriented,
            found: a.kind,
        });
    }
    Ok(report_for(Kind::Unoriented, &a.op1, &a.op2, AxiomFilter::All))
}

pub fn check_oriented_axioms(a: &FiniteTernaryAlgebra) -> Result<AxiomReport> {
    if a.kind != Kind::Oriented {
        return Err(AlgebraError::WrongKind {
            expected: Kind::Oriented,
            found: a.kind,
        });
    }
    Ok(report_for(Kind::Oriented, &a.op1, &a.op2, AxiomFilter::All))
}

/// Runs the suite matching the algebra's own kind.
pub fn check_axioms(a: &FiniteTernaryAlgebra) -> AxiomReport {
    report_for(a.kind, &a.op1, &a.op2, AxiomFilter::All)
}

impl FiniteTernaryAlgebra {
    pub fn check_axioms_filtered(&self, filter: AxiomFilter) -> AxiomReport {
        report_for(self.kind, &self.op1, &self.op2, filter)
    }

    /// Whether `tuple` violates axiom `index` (used to re-check witnesses).
    pub fn violates(&self, index: usize, tuple: &[usize]) -> bool {
        tuple.len() == arity(index)
            && violation(self.kind, index, &self.op1, &self.op2, tuple).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mal(n: usize) -> TernaryTable {
        TernaryTable::from_fn(n, |a, b, c| (a + n - b + c) % n).unwrap()
    }

    #[test]
    fn abelian_malcev_passes_both_suites() {
        for n in 1..6 {
            for kind in [Kind::Unoriented, Kind::Oriented] {
                let a = FiniteTernaryAlgebra::new("m", kind, mal(n), mal(n)).unwrap();
                let r = check_axioms(&a);
                assert!(r.all_pass(), "n={n} {kind}: {:?}", r.failed());
                assert_eq!(r.total(), kind.axiom_count());
            }
        }
    }

    #[test]
    fn witness_is_least_and_reproduces() {
        let p = TernaryTable::from_fn(3, |a, b, c| (a + b + c) % 3).unwrap();
        let a = FiniteTernaryAlgebra::new("sum", Kind::Unoriented, p.clone(), p).unwrap();
        let r = check_axioms(&a);
        assert!(!r.all_pass());
        for res in r.results.iter().filter(|r| !r.holds) {
            let w = res.witness.as_ref().unwrap();
            assert!(a.violates(res.index, w));
            // nothing lexicographically smaller violates
            let n: usize = 3;
            let k = w.len();
            for code in 0..n.pow(k as u32) {
                let t: Vec<usize> = (0..k).rev().map(|i| code / n.pow(i as u32) % n).collect();
                if t < *w {
                    assert!(!a.violates(res.index, &t));
                }
            }
        }
    }

    #[test]
    fn wrong_kind_rejected() {
        let a = FiniteTernaryAlgebra::new("m", Kind::Oriented, mal(2), mal(2)).unwrap();
        assert!(matches!(
            check_unoriented_axioms(&a),
            Err(AlgebraError::WrongKind { .. })
        ));
        assert!(check_oriented_axioms(&a).is_ok());
    }

    #[test]
    fn distributivity_filter() {
        let a = FiniteTernaryAlgebra::new("m", Kind::Unoriented, mal(3), mal(3)).unwrap();
        let r = a.check_axioms_filtered(AxiomFilter::DistributivityOnly);
        assert_eq!(
            r.results.iter().map(|r| r.index).collect::<Vec<_>>(),
            vec![5, 6, 7, 8]
        );
    }
}
