mod common;

use common::{fixture, oracle_count, shaded_for, Oracle};
use ternknot::algebra::bank::{bank_names, builtin};
use ternknot::coloring::count_colorings;
use ternknot::fixtures::DIAGRAMS;

#[test]
fn oracle_regions_match_face_tracer() {
    for f in &DIAGRAMS {
        let sd = shaded_for(f.name, ternknot::algebra::Kind::Unoriented);
        assert_eq!(Oracle::new(&sd).regions, sd.face_count(), "{}", f.name);
    }
}

#[test]
fn oracle_signs_match_library() {
    for name in ["trefoil", "figure-eight", "hopf", "trefoil-r1", "r3-after"] {
        let d = fixture(name).with_oriented(true).unwrap();
        let sd = ternknot::diagram::ShadedDiagram::new(d).unwrap();
        assert_eq!(Some(Oracle::new(&sd).signs.as_slice()), sd.signs(), "{name}");
    }
}

#[test]
fn backtracking_equals_brute_force_small() {
    for name in bank_names(3) {
        let a = builtin(&name).unwrap();
        for f in &DIAGRAMS {
            let sd = shaded_for(f.name, a.kind);
            assert_eq!(count_colorings(&sd, &a).unwrap(), oracle_count(&sd, &a), "{name} on {}", f.name);
        }
    }
}
