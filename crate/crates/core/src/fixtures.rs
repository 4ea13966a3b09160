//! Diagrams, algebras and loops shipped with the crate.
//!
//! Files are compiled in; setting `TERNKNOT_FIXTURES` to a directory makes
//! lookups read `<dir>/<file>` first.

use std::borrow::Cow;
use std::path::PathBuf;

use crate::diagram::{parse_pd, Diagram, DiagramError};

pub const ENV_DIR: &str = "TERNKNOT_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $file:literal) => {
        Fixture {
            name: $name,
            file: $file,
            text: include_str!(concat!("../fixtures/", $file)),
        }
    };
}

pub const DIAGRAMS: [Fixture; 9] = [
    fixture!("unknot", "unknot.pd"),
    fixture!("kink", "kink.pd"),
    fixture!("trefoil", "trefoil.pd"),
    fixture!("figure-eight", "figure-eight.pd"),
    fixture!("hopf", "hopf.pd"),
    fixture!("trefoil-r1", "trefoil-r1.pd"),
    fixture!("trefoil-r2", "trefoil-r2.pd"),
    fixture!("r3-before", "r3-before.pd"),
    fixture!("r3-after", "r3-after.pd"),
];

pub const ALGEBRAS: [Fixture; 2] = [
    fixture!("latin4-unoriented", "latin4-unoriented.json"),
    fixture!("latin4-oriented", "latin4-oriented.json"),
];

pub const LOOPS: [Fixture; 1] = [fixture!("bol8", "bol8.json")];

pub fn all() -> impl Iterator<Item = &'static Fixture> {
    DIAGRAMS.iter().chain(&ALGEBRAS).chain(&LOOPS)
}

/// Looks a fixture up by name or file name.
pub fn find(name: &str) -> Option<&'static Fixture> {
    all().find(|f| f.name == name || f.file == name)
}

pub fn override_dir() -> Option<PathBuf> {
    std::env::var_os(ENV_DIR).map(PathBuf::from)
}

/// Fixture contents, preferring the override directory when it has the file.
pub fn text(f: &Fixture) -> Cow<'static, str> {
    if let Some(dir) = override_dir() {
        if let Ok(s) = std::fs::read_to_string(dir.join(f.file)) {
            return Cow::Owned(s);
        }
    }
    Cow::Borrowed(f.text)
}

pub fn diagram(name: &str) -> Option<Result<Diagram, DiagramError>> {
    let f = DIAGRAMS.iter().find(|f| f.name == name || f.file == name)?;
    Some(parse_pd(&text(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::ShadedDiagram;

    #[test]
    fn every_diagram_parses_and_shades() {
        for f in &DIAGRAMS {
            let d = parse_pd(f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            ShadedDiagram::new(d).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn lookup_by_file_name() {
        assert_eq!(find("trefoil.pd").map(|f| f.name), Some("trefoil"));
        assert!(find("nope").is_none());
    }
}
