//! Command-line front end. `run` parses arguments and writes to the given
//! streams; the binary only forwards its exit code.
//!
//! Exit codes: 0 success, 1 domain error (bad file, failed check, invalid
//! coloring), 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::bank::{bank_names, builtin, structure, GROUP_PAIRS};
use crate::algebra::{latin_cube_check, AlgebraFile, AxiomFilter, FiniteTernaryAlgebra, Kind, MagmaTable};
use crate::coloring::{
    count_colorings_with, enumerate_colorings_with, verify_coloring, ArcTheory, ColoringOptions,
};
use crate::diagram::{parse_pd, Diagram, ShadedDiagram};
use crate::fixtures;
use crate::moves::{apply_all, r3_sites, MoveSpec};
use crate::presentation::{
    abelianization, emit_arc_presentation, emit_dehn_with, emit_ternary_with, HeadChoice, Presentation,
};
use crate::search::{
    classify_group_pair, search_cubes, search_words, CubeSearchOptions, WordSearchOptions, DEFAULT_CUBE_BUDGET,
};

type Failure = Box<dyn std::error::Error + Send + Sync>;
type Outcome = std::result::Result<(), Failure>;

#[derive(Debug, Parser)]
#[command(name = "ternknot", version, about = "Ternary region colorings of knot and link diagrams")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads for counting and search; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Unoriented,
    Oriented,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Unoriented => Kind::Unoriented,
            KindArg::Oriented => Kind::Oriented,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxiomsArg {
    All,
    DistributivityOnly,
}

impl From<AxiomsArg> for AxiomFilter {
    fn from(a: AxiomsArg) -> Self {
        match a {
            AxiomsArg::All => AxiomFilter::All,
            AxiomsArg::DistributivityOnly => AxiomFilter::DistributivityOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StyleArg {
    Unoriented,
    Oriented,
    Dehn,
    Wirtinger,
    Core,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an algebra against its axiom suite.
    CheckAlgebra {
        #[command(flatten)]
        source: AlgebraSource,
        #[arg(long, value_enum, default_value_t = AxiomsArg::All)]
        axioms: AxiomsArg,
    },
    /// Count region colorings.
    Count(ColoringArgs),
    /// List region colorings, one per line as face values in face-id order.
    Enumerate(ColoringArgs),
    /// Check a coloring given as comma-separated face values.
    Verify {
        #[command(flatten)]
        target: ColoringArgs,
        #[arg(long)]
        coloring: String,
    },
    /// Print a presentation read off a diagram.
    Emit {
        #[arg(long)]
        diagram: String,
        #[arg(long, value_enum)]
        style: StyleArg,
        /// Head quadrant 0-3 for ternary and Dehn relations (default: lowest face).
        #[arg(long)]
        head: Option<usize>,
        /// Also print the abelianization (group styles).
        #[arg(long)]
        abelianize: bool,
    },
    /// Apply Reidemeister moves: `r1:EDGE[:VARIANT]`, `r1:circle`,
    /// `r2:FACE:A:B[:VARIANT]`, `r3:FACE`, or JSON move objects.
    Move {
        #[arg(long)]
        diagram: String,
        #[arg(long = "spec", required_unless_present = "sites")]
        specs: Vec<String>,
        /// List faces where a type III move applies instead.
        #[arg(long)]
        sites: bool,
    },
    /// Search pairs of short words over a battery of groups or loops.
    SearchWords {
        /// Comma-separated structure names or Cayley-table files.
        #[arg(long, value_delimiter = ',', default_value = "s3,d4,q8")]
        battery: Vec<String>,
        #[arg(long, value_enum, default_value_t = KindArg::Unoriented)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = AxiomsArg::All)]
        axioms: AxiomsArg,
    },
    /// Enumerate Latin cubes of order n that complete to an algebra.
    SearchCubes {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Oriented)]
        kind: KindArg,
        /// Search-tree node budget.
        #[arg(long, default_value_t = DEFAULT_CUBE_BUDGET)]
        budget: u64,
    },
    /// Classify group-word pairs by the arc presentation their colorings induce.
    Classify {
        #[arg(long, default_value = "s3")]
        group: String,
        /// Pair ids (default: all of g1-g9).
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// Diagrams to test on (default: trefoil and figure-eight).
        #[arg(long = "diagram")]
        diagrams: Vec<String>,
    },
    /// List built-in algebras, or print one in the algebra file format.
    Builtin { name: Option<String> },
    /// List shipped fixtures, or print one.
    Fixtures { name: Option<String> },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct AlgebraSource {
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long)]
    file: Option<String>,
}

#[derive(Debug, Args)]
struct ColoringArgs {
    /// Built-in algebra name or algebra file.
    #[arg(long)]
    algebra: String,
    /// PD file, or a fixture name.
    #[arg(long)]
    diagram: String,
    /// Skip the axiom gate.
    #[arg(long)]
    unchecked: bool,
    /// Region treated as unbounded.
    #[arg(long)]
    outer: Option<usize>,
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}").into())
}

/// A path on disk, or else a shipped fixture by name or file name
/// (`trefoil`, `trefoil.pd`, `fixtures/trefoil.pd`).
fn load_diagram(spec: &str) -> Result<Diagram, Failure> {
    if Path::new(spec).exists() {
        return Ok(parse_pd(&read(spec)?)?);
    }
    let base = Path::new(spec).file_name().and_then(|s| s.to_str()).unwrap_or(spec);
    match fixtures::diagram(base) {
        Some(d) => Ok(d?),
        None => read(spec).map(|_| unreachable!("path does not exist")),
    }
}

fn load_algebra(spec: &str) -> Result<FiniteTernaryAlgebra, Failure> {
    if Path::new(spec).exists() {
        let file: AlgebraFile = serde_json::from_str(&read(spec)?)?;
        return Ok(file.into_algebra()?);
    }
    Ok(builtin(spec)?)
}

fn load_structure(spec: &str) -> Result<MagmaTable, Failure> {
    if !Path::new(spec).exists() {
        if let Some(f) = fixtures::LOOPS.iter().find(|f| f.name == spec || f.file == spec) {
            let file: crate::algebra::magma::CayleyFile = serde_json::from_str(&fixtures::text(f))?;
            return Ok(file.into_table()?);
        }
    }
    Ok(structure(spec)?)
}

fn shaded(args: &ColoringArgs, a: &FiniteTernaryAlgebra) -> Result<ShadedDiagram, Failure> {
    let mut d = load_diagram(&args.diagram)?;
    if a.kind == Kind::Oriented && !d.is_oriented() {
        d = d.with_oriented(true)?;
    }
    Ok(ShadedDiagram::with_outer(d, args.outer)?)
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> Outcome {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let machine = cli.format == Format::Machine;
    let copts = |unchecked: bool| ColoringOptions {
        unchecked,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::CheckAlgebra { source, axioms } => {
            let a = match (&source.builtin, &source.file) {
                (Some(name), _) => builtin(name)?,
                (_, Some(path)) => {
                    let file: AlgebraFile = serde_json::from_str(&read(path)?)?;
                    file.into_algebra()?
                }
                _ => unreachable!("clap requires one source"),
            };
            let report = a.check_axioms_filtered((*axioms).into());
            let latin = latin_cube_check(&a);
            if machine {
                return emit_json(out, &json!({ "algebra": a.name, "size": a.size(), "report": report, "latin": latin }));
            }
            writeln!(out, "algebra {} ({}, size {})", a.name, a.kind, a.size())?;
            for r in &report.results {
                match &r.witness {
                    None => writeln!(out, "  ({}) {}  ok", r.index, r.statement)?,
                    Some(w) => writeln!(out, "  ({}) {}  FAILS at {:?}", r.index, r.statement, w)?,
                }
            }
            writeln!(
                out,
                "latin: op1 {}, op2 {}",
                if latin.op1.iter().all(|&b| b) { "yes" } else { "no" },
                if latin.op2.iter().all(|&b| b) { "yes" } else { "no" }
            )?;
            writeln!(out, "{}/{} axioms pass", report.pass_count(), report.total())?;
        }
        Command::Count(args) => {
            let a = load_algebra(&args.algebra)?;
            let sd = shaded(args, &a)?;
            let n = count_colorings_with(&sd, &a, &copts(args.unchecked))?;
            if machine {
                return emit_json(
                    out,
                    &json!({ "algebra": a.name, "diagram": sd.diagram().fingerprint(), "count": n }),
                );
            }
            writeln!(out, "{n}")?;
        }
        Command::Enumerate(args) => {
            let a = load_algebra(&args.algebra)?;
            let sd = shaded(args, &a)?;
            let report = enumerate_colorings_with(&sd, &a, &copts(args.unchecked))?;
            if machine {
                return emit_json(out, &report);
            }
            writeln!(out, "{} colorings", report.count)?;
            for c in report.colorings.iter().flatten() {
                writeln!(out, "{}", join(c, " "))?;
            }
        }
        Command::Verify { target, coloring } => {
            let a = load_algebra(&target.algebra)?;
            let sd = shaded(target, &a)?;
            let values = coloring
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("bad coloring `{coloring}`: {e}"))?;
            let v = verify_coloring(&sd, &a, &values)?;
            if machine {
                emit_json(out, &json!({ "valid": v.is_none(), "violation": v }))?;
            } else if v.is_none() {
                writeln!(out, "valid")?;
            }
            if let Some(v) = v {
                return Err(format!(
                    "crossing {}: region r{} (quadrant {}) should be {} but is {}",
                    v.crossing, v.face, v.head, v.expected, v.found
                )
                .into());
            }
        }
        Command::Emit {
            diagram,
            style,
            head,
            abelianize,
        } => {
            let d = load_diagram(diagram)?;
            let choice = head.map_or(HeadChoice::Lowest, HeadChoice::Quadrant);
            let p: Presentation = match style {
                StyleArg::Unoriented => emit_ternary_with(&ShadedDiagram::new(d)?, Kind::Unoriented, choice)?,
                StyleArg::Oriented => {
                    let d = if d.is_oriented() { d } else { d.with_oriented(true)? };
                    emit_ternary_with(&ShadedDiagram::new(d)?, Kind::Oriented, choice)?
                }
                StyleArg::Dehn => emit_dehn_with(&ShadedDiagram::new(d)?, choice)?,
                StyleArg::Wirtinger => {
                    let d = if d.is_oriented() { d } else { d.with_oriented(true)? };
                    emit_arc_presentation(&d, ArcTheory::Wirtinger)?
                }
                StyleArg::Core => emit_arc_presentation(&d, ArcTheory::Core)?,
            };
            let ab = if *abelianize { Some(abelianization(&p)?) } else { None };
            if machine {
                let mut v = p.to_json();
                if let Some(ab) = &ab {
                    v["abelianization"] = json!({ "rank": ab.rank, "torsion": ab.torsion, "text": ab.to_string() });
                }
                return emit_json(out, &v);
            }
            write!(out, "{p}")?;
            if let Some(ab) = ab {
                writeln!(out, "abelianization: {ab}")?;
            }
        }
        Command::Move { diagram, specs, sites } => {
            let d = load_diagram(diagram)?;
            if *sites {
                let s = r3_sites(&d)?;
                if machine {
                    return emit_json(out, &json!({ "r3_sites": s }));
                }
                writeln!(out, "{}", join(&s, " "))?;
                return Ok(());
            }
            let moves = specs.iter().map(|s| parse_move(s)).collect::<Result<Vec<_>, _>>()?;
            let after = apply_all(&d, &moves)?;
            if machine {
                return emit_json(
                    out,
                    &json!({ "pd": after.to_pd(), "fingerprint": after.fingerprint(), "crossings": after.crossing_count() }),
                );
            }
            writeln!(out, "{}", after.to_pd())?;
        }
        Command::SearchWords { battery, kind, axioms } => {
            let members = battery
                .iter()
                .map(|n| load_structure(n).map(|m| (n.clone(), m)))
                .collect::<Result<Vec<_>, _>>()?;
            let opts = WordSearchOptions {
                filter: (*axioms).into(),
                jobs: cli.jobs,
            };
            let r = search_words(&members, (*kind).into(), &opts)?;
            if machine {
                return emit_json(out, &r);
            }
            writeln!(
                out,
                "{} search over {}: {} templates, {} distinct words, {} pairs",
                r.kind,
                r.battery.join(","),
                r.templates,
                r.distinct_words,
                r.entries.len()
            )?;
            let w = r.entries.iter().map(|e| e.op1.len()).max().unwrap_or(3).max(3);
            let w2 = r.entries.iter().map(|e| e.op2.len()).max().unwrap_or(3).max(3);
            writeln!(out, "{:w$}  {:w2$}  known", "op1", "op2")?;
            for e in &r.entries {
                writeln!(out, "{:w$}  {:w2$}  {}", e.op1, e.op2, e.matches.join(" "))?;
            }
        }
        Command::SearchCubes { n, kind, budget } => {
            let opts = CubeSearchOptions {
                budget: Some(*budget),
                jobs: cli.jobs,
            };
            let r = search_cubes(*n, (*kind).into(), &opts)?;
            if machine {
                return emit_json(out, &r);
            }
            writeln!(
                out,
                "n={} {}: {} Latin cubes, {} survivors{}",
                r.n,
                r.kind,
                r.cubes,
                r.survivors.len(),
                if r.complete { "" } else { " (budget exhausted, partial)" }
            )?;
            for a in &r.survivors {
                writeln!(out, "{}", serde_json::to_string(&a.to_file())?)?;
            }
        }
        Command::Classify { group, pairs, diagrams } => {
            let g = load_structure(group)?;
            let names: Vec<String> = if diagrams.is_empty() {
                vec!["trefoil".into(), "figure-eight".into()]
            } else {
                diagrams.clone()
            };
            let ds = names.iter().map(|n| load_diagram(n)).collect::<Result<Vec<_>, _>>()?;
            let ids: Vec<String> = if pairs.is_empty() {
                GROUP_PAIRS.iter().map(|p| p.0.to_string()).collect()
            } else {
                pairs.clone()
            };
            let cs = ids
                .iter()
                .map(|id| classify_group_pair(id, &g, &ds))
                .collect::<Result<Vec<_>, _>>()?;
            if machine {
                return emit_json(out, &cs);
            }
            writeln!(out, "pair  verdict    labels                         counts")?;
            for c in &cs {
                let fit = c.core.or(c.knot).map_or("-".to_string(), |f| {
                    format!(
                        "x = {}{}{}",
                        f.word,
                        if f.strands == crate::search::Strands::Under { ", under-strands" } else { "" },
                        if f.invert_black { ", black inverted" } else { "" }
                    )
                });
                writeln!(out, "{:5} {:10} {:30} {}", c.pair, c.verdict, fit, c.by_counts)?;
            }
        }
        Command::Builtin { name } => match name {
            None => {
                let names = bank_names(8);
                if machine {
                    return emit_json(out, &names);
                }
                for n in names {
                    writeln!(out, "{n}")?;
                }
            }
            Some(n) => emit_json(out, &builtin(n)?.to_file())?,
        },
        Command::Fixtures { name } => match name {
            None => {
                let list: Vec<_> = fixtures::all().map(|f| json!({ "name": f.name, "file": f.file })).collect();
                if machine {
                    return emit_json(out, &list);
                }
                for f in fixtures::all() {
                    writeln!(out, "{:20} {}", f.name, f.file)?;
                }
            }
            Some(n) => {
                let f = fixtures::find(n).ok_or_else(|| format!("no fixture named `{n}`"))?;
                write!(out, "{}", fixtures::text(f))?;
            }
        },
    }
    Ok(())
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_move(s: &str) -> Result<MoveSpec, Failure> {
    if s.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    let bad = || -> Failure { format!("bad move `{s}`").into() };
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> Result<usize, Failure> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
    let variant = |i: usize| -> Result<u8, Failure> {
        parts.get(i).map_or(Ok(0), |v| v.parse().map_err(|_| bad()))
    };
    match parts[0] {
        "r1" if parts.get(1) == Some(&"circle") => Ok(MoveSpec::R1 {
            edge: None,
            variant: variant(2)?,
        }),
        "r1" if parts.len() <= 3 => Ok(MoveSpec::R1 {
            edge: Some(num(1)?),
            variant: variant(2)?,
        }),
        "r2" if parts.len() <= 5 => Ok(MoveSpec::R2 {
            face: num(1)?,
            edge_a: num(2)?,
            edge_b: num(3)?,
            variant: variant(4)?,
        }),
        "r3" if parts.len() == 2 => Ok(MoveSpec::R3 { face: num(1)? }),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("ternknot").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn move_spec_forms() {
        assert_eq!(parse_move("r1:3").unwrap(), MoveSpec::R1 { edge: Some(3), variant: 0 });
        assert_eq!(parse_move("r1:circle:2").unwrap(), MoveSpec::R1 { edge: None, variant: 2 });
        assert_eq!(
            parse_move("r2:0:1:4:1").unwrap(),
            MoveSpec::R2 { face: 0, edge_a: 1, edge_b: 4, variant: 1 }
        );
        assert_eq!(parse_move(r#"{"move":"r3","face":5}"#).unwrap(), MoveSpec::R3 { face: 5 });
        assert!(parse_move("r4:1").is_err());
        assert!(parse_move("r3").is_err());
    }

    #[test]
    fn usage_error_is_two() {
        assert_eq!(call(&["count"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn fixture_names_resolve() {
        let (code, out, _) = call(&["count", "--algebra", "core:c3", "--diagram", "fixtures/trefoil.pd"]);
        assert_eq!((code, out.as_str()), (0, "27\n"));
    }
}
