mod common;

use common::{fixture, oracle_count, shaded_for};
use ternknot::algebra::bank::builtin;
use ternknot::coloring::count_colorings;
use ternknot::diagram::{extract_faces, Diagram};
use ternknot::moves::{apply, apply_r1, apply_r2, apply_r3, r3_sites, MoveSpec};

#[test]
fn shipped_move_fixtures_are_reproducible() {
    let t = fixture("trefoil");
    assert_eq!(apply_r1(&t, Some(1), 0).unwrap().fingerprint(), fixture("trefoil-r1").fingerprint());
    assert_eq!(apply_r2(&t, 0, 1, 4, 0).unwrap().fingerprint(), fixture("trefoil-r2").fingerprint());
    assert_eq!(apply_r2(&t, 1, 2, 4, 0).unwrap().fingerprint(), fixture("r3-before").fingerprint());
    let before = fixture("r3-before");
    assert!(r3_sites(&before).unwrap().contains(&5));
    assert_eq!(apply_r3(&before, 5).unwrap().fingerprint(), fixture("r3-after").fingerprint());
}

#[test]
fn crossing_numbers_change_as_expected() {
    let t = fixture("trefoil");
    assert_eq!(apply(&t, &MoveSpec::R1 { edge: Some(2), variant: 3 }).unwrap().crossing_count(), 4);
    assert_eq!(
        apply(&t, &MoveSpec::R2 { face: 0, edge_a: 1, edge_b: 4, variant: 1 }).unwrap().crossing_count(),
        5
    );
    assert_eq!(fixture("r3-after").crossing_count(), fixture("r3-before").crossing_count());
}

/// Every R1 and R2 (and the R3 moves they open up) on a base diagram.
fn neighbourhood(d: &Diagram) -> Vec<Diagram> {
    let mut out = vec![];
    for e in d.edges() {
        for v in 0..4 {
            out.push(apply_r1(d, Some(e), v).unwrap());
        }
    }
    for f in extract_faces(d).unwrap() {
        for &a in &f.boundary_edges {
            for &b in f.boundary_edges.iter().filter(|&&b| b != a) {
                for v in 0..2 {
                    let p = apply_r2(d, f.id, a, b, v).unwrap();
                    for s in r3_sites(&p).unwrap() {
                        out.push(apply_r3(&p, s).unwrap());
                    }
                    out.push(p);
                }
            }
        }
    }
    out
}

#[test]
fn counts_survive_every_single_move_on_the_figure_eight() {
    let base = fixture("figure-eight");
    let family = neighbourhood(&base);
    assert!(family.len() > 50);
    for name in ["core:c3", "g1:s3", "latin4-unoriented", "latin4-oriented"] {
        let a = builtin(name).unwrap();
        let want = count_colorings(&shaded_for("figure-eight", a.kind), &a).unwrap();
        for d in &family {
            let d = if a.kind == ternknot::algebra::Kind::Oriented { d.clone().with_oriented(true).unwrap() } else { d.clone() };
            let sd = ternknot::diagram::ShadedDiagram::new(d).unwrap();
            assert_eq!(count_colorings(&sd, &a).unwrap(), want, "{name} on {}", sd.diagram().to_pd());
        }
    }
}

#[test]
fn oracle_agrees_after_moves() {
    let a = builtin("latin4-unoriented").unwrap();
    for name in ["trefoil-r1", "r3-after"] {
        let sd = shaded_for(name, a.kind);
        assert_eq!(count_colorings(&sd, &a).unwrap(), oracle_count(&sd, &a));
    }
}

#[test]
fn bad_sites_are_rejected() {
    let t = fixture("trefoil");
    assert!(apply(&t, &MoveSpec::R1 { edge: Some(99), variant: 0 }).is_err());
    let bigon = extract_faces(&t).unwrap().into_iter().find(|f| f.boundary_edges.len() == 2).unwrap();
    assert!(!r3_sites(&t).unwrap().contains(&bigon.id));
    assert!(apply(&t, &MoveSpec::R3 { face: bigon.id }).is_err());
    assert!(apply(&t, &MoveSpec::R2 { face: 0, edge_a: 1, edge_b: 1, variant: 0 }).is_err());
}
