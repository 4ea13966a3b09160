use ternknot::algebra::bank::{latin4_oriented, latin4_unoriented, structure};
use ternknot::algebra::magma::{dihedral4, quaternion8, symmetric3};
use ternknot::algebra::Kind;
use ternknot::search::{search_cubes, search_words, CubeSearchOptions, SearchResult, WordSearchOptions};

fn battery() -> Vec<(String, ternknot::algebra::magma::MagmaTable)> {
    vec![("s3".into(), symmetric3()), ("d4".into(), dihedral4()), ("q8".into(), quaternion8())]
}

fn pairs(r: &SearchResult) -> Vec<(String, String, Vec<String>)> {
    r.entries
        .iter()
        .map(|e| (e.op1.clone(), e.op2.clone(), e.matches.iter().filter(|m| m.starts_with('g')).cloned().collect()))
        .collect()
}

#[test]
fn unoriented_words_are_exactly_the_group_pairs() {
    let r = search_words(&battery(), Kind::Unoriented, &WordSearchOptions::default()).unwrap();
    assert_eq!((r.templates, r.distinct_words), (96, 48));
    let mut got = pairs(&r);
    assert_eq!(got.len(), 9);
    got.sort_by(|a, b| a.2.cmp(&b.2));
    let ids: Vec<_> = got.iter().map(|p| p.2.join(",")).collect();
    assert_eq!(ids, ["g1", "g2", "g3", "g4", "g5", "g6", "g7", "g8", "g9"]);
    // the asymmetric pairs come out with roles swapped relative to the listing
    assert_eq!((got[6].0.as_str(), got[6].1.as_str()), ("a^-1*c*b", "b*c*a^-1"));
    assert_eq!((got[7].0.as_str(), got[7].1.as_str()), ("b*a*c^-1", "c^-1*a*b"));
    assert_eq!((got[8].0.as_str(), got[8].1.as_str()), ("a^-1*b^-1*c^-1", "c^-1*b^-1*a^-1"));
    assert!(r.entries.iter().all(|e| e.swap_passes));
}

#[test]
fn oriented_words_never_separate_the_operators() {
    let r = search_words(&battery(), Kind::Oriented, &WordSearchOptions::default()).unwrap();
    let mut ids: Vec<_> = pairs(&r).into_iter().map(|p| p.2.join(",")).collect();
    ids.sort();
    assert_eq!(ids, ["g1", "g2", "g3", "g4", "g5", "g6"]);
    assert!(r.entries.iter().all(|e| e.equal && e.op1 == e.op2));
}

#[test]
fn moufang_battery_recovers_loop_pairs() {
    let r = search_words(&[("ms3".into(), structure("ms3").unwrap())], Kind::Oriented, &WordSearchOptions::default())
        .unwrap();
    assert_eq!(r.distinct_words, 96);
    let mut m: Vec<String> = r.entries.iter().flat_map(|e| e.matches.clone()).filter(|x| x.starts_with('m')).collect();
    m.sort();
    assert_eq!(m, ["m1", "m2", "m3", "m4"]);
    assert_eq!(r.entries.len(), 4);
}

#[test]
fn cube_counts_are_frozen() {
    let opts = CubeSearchOptions::default();
    let want = [(1, 1, 1, 1), (2, 2, 2, 2), (3, 24, 8, 8), (4, 55296, 240, 112)];
    for (n, cubes, uno, ori) in want {
        let u = search_cubes(n, Kind::Unoriented, &opts).unwrap();
        let o = search_cubes(n, Kind::Oriented, &opts).unwrap();
        assert!(u.complete && o.complete);
        assert_eq!((u.cubes, o.cubes), (cubes, cubes), "n={n}");
        assert_eq!((u.survivors.len(), o.survivors.len()), (uno, ori), "n={n}");
    }
}

#[test]
fn order_four_search_refinds_both_reference_algebras() {
    let opts = CubeSearchOptions::default();
    for (kind, p) in [(Kind::Unoriented, latin4_unoriented()), (Kind::Oriented, latin4_oriented())] {
        let r = search_cubes(4, kind, &opts).unwrap();
        assert!(r.survivors.iter().any(|a| a.op1 == p.op1 && a.op2 == p.op2), "{kind}");
    }
}

#[test]
fn tiny_budget_reports_partial() {
    let r = search_cubes(4, Kind::Oriented, &CubeSearchOptions { budget: Some(10), jobs: 1 }).unwrap();
    assert!(!r.complete);
}

#[test]
fn cube_search_is_independent_of_jobs() {
    let a = search_cubes(3, Kind::Unoriented, &CubeSearchOptions { jobs: 1, ..Default::default() }).unwrap();
    let b = search_cubes(3, Kind::Unoriented, &CubeSearchOptions { jobs: 4, ..Default::default() }).unwrap();
    assert_eq!(a, b);
}

/// Latin cubes of order 4 counted as ordered 4-tuples of Latin squares
/// that disagree at every cell.
#[test]
fn latin_cube_count_matches_square_stacking() {
    fn perms() -> Vec<[usize; 4]> {
        let mut out = vec![];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).all(|i| (0..i).all(|j| p[i] != p[j])) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
    let rows = perms();
    let mut squares: Vec<[[usize; 4]; 4]> = vec![];
    for r0 in &rows {
        for r1 in &rows {
            for r2 in &rows {
                for r3 in &rows {
                    let s = [*r0, *r1, *r2, *r3];
                    if (0..4).all(|c| (0..4).all(|i| (0..i).all(|j| s[i][c] != s[j][c]))) {
                        squares.push(s);
                    }
                }
            }
        }
    }
    assert_eq!(squares.len(), 576);
    let apart = |a: &[[usize; 4]; 4], b: &[[usize; 4]; 4]| (0..16).all(|k| a[k / 4][k % 4] != b[k / 4][k % 4]);
    let mut total = 0u64;
    for a in &squares {
        let bs: Vec<_> = squares.iter().filter(|b| apart(a, b)).collect();
        for b in &bs {
            for c in bs.iter().filter(|c| apart(b, c)) {
                total += bs.iter().filter(|d| apart(b, d) && apart(c, d)).count() as u64;
            }
        }
    }
    assert_eq!(total, 55296);
}
