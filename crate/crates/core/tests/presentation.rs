mod common;

use common::{fixture, shaded_for, wirtinger_count};
use ternknot::algebra::bank::{bank_names, builtin, structure};
use ternknot::algebra::magma::symmetric3;
use ternknot::algebra::Kind;
use ternknot::coloring::{count_arc_colorings, count_colorings, ArcTheory};
use ternknot::diagram::ShadedDiagram;
use ternknot::presentation::{
    abelianization, emit_arc_presentation, emit_dehn_with, emit_ternary_with, HeadChoice,
};

const KNOTS: [&str; 6] = ["kink", "trefoil", "figure-eight", "trefoil-r1", "trefoil-r2", "r3-after"];

fn heads() -> [HeadChoice; 5] {
    [
        HeadChoice::Lowest,
        HeadChoice::Quadrant(0),
        HeadChoice::Quadrant(1),
        HeadChoice::Quadrant(2),
        HeadChoice::Quadrant(3),
    ]
}

/// One relation per crossing already pins down every coloring, whichever
/// quadrant heads it.
#[test]
fn ternary_presentation_counts_colorings() {
    for name in bank_names(4) {
        let a = builtin(&name).unwrap();
        for d in KNOTS {
            let sd = shaded_for(d, a.kind);
            let want = count_colorings(&sd, &a).unwrap();
            for h in heads() {
                let p = emit_ternary_with(&sd, a.kind, h).unwrap();
                assert_eq!(p.count_in_algebra(&a).unwrap(), want, "{name} on {d}, head {h:?}");
            }
        }
    }
}

#[test]
fn dehn_presentation_counts_representations() {
    for g in [symmetric3(), structure("c3").unwrap(), structure("q8").unwrap()] {
        for d in ["trefoil", "figure-eight"] {
            let oriented = fixture(d).with_oriented(true).unwrap();
            let want = wirtinger_count(&oriented, &g);
            for h in heads() {
                let p = emit_dehn_with(&ShadedDiagram::new(fixture(d)).unwrap(), h).unwrap();
                assert_eq!(p.count_in_group(&g).unwrap(), want, "{d} head {h:?}");
            }
            let w = emit_arc_presentation(&oriented, ArcTheory::Wirtinger).unwrap();
            assert_eq!(w.count_in_group(&g).unwrap(), want, "{d} wirtinger");
        }
    }
}

#[test]
fn trefoil_representation_counts() {
    let t = fixture("trefoil").with_oriented(true).unwrap();
    assert_eq!(wirtinger_count(&t, &symmetric3()), 12);
    assert_eq!(count_arc_colorings(&t, &symmetric3(), ArcTheory::Wirtinger).unwrap(), 12);
    let core = emit_arc_presentation(&t, ArcTheory::Core).unwrap();
    assert_eq!(core.count_in_group(&structure("c3").unwrap()).unwrap(), 9);
}

#[test]
fn abelian_invariants() {
    let ab = |d: &str| abelianization(&emit_dehn_with(&ShadedDiagram::new(fixture(d)).unwrap(), HeadChoice::Lowest).unwrap())
        .unwrap()
        .to_string();
    assert_eq!(ab("trefoil"), "Z");
    assert_eq!(ab("figure-eight"), "Z");
    assert_eq!(ab("hopf"), "Z^2");
    let core = |d: &str| abelianization(&emit_arc_presentation(&fixture(d), ArcTheory::Core).unwrap()).unwrap().to_string();
    // Z plus the homology of the double branched cover: Z/det
    assert_eq!(core("trefoil"), "Z + Z/3");
    assert_eq!(core("figure-eight"), "Z + Z/5");
}

#[test]
fn oriented_ternary_needs_signs() {
    let sd = ShadedDiagram::new(fixture("trefoil")).unwrap();
    assert!(emit_ternary_with(&sd, Kind::Oriented, HeadChoice::Lowest).is_err());
}
