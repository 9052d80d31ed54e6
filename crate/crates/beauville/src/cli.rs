//! Command-line front end: parsing, dispatch, rendering and exit codes.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::collections::{
    self, anticanonical_height, certificate, ext_matrix, group_into_helices, quasi_phantom_report,
    Helix, Provenance,
};
use crate::facts;
use crate::render::{markdown_table, text_table, Format};
use crate::surface::{BidegreeRange, LineBundleClass, Surface};
use crate::{Error, Fault};

/// Largest bidegree magnitude accepted from the command line; keeps the
/// section-space triangles small.
const MAX_SINGLE_DEGREE: i64 = 60;
const MAX_RANGE_DEGREE: i64 = 20;

#[derive(Parser)]
#[command(
    name = "beauville",
    about = "Equivariant cohomology and exceptional collections on the Beauville surface",
    version
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = clap::value_parser!(Format))]
    pub format: Format,

    /// Bidegree box imin:imax,jmin:jmax for table and enumeration commands.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub range: Option<String>,

    /// Print intermediate data (e.g. the full Kunneth polynomial).
    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Cohomology ranks of one line bundle, e.g. K(1,3) or O(2,2)[2,0].
    Cohomology { bundle: String },
    /// Rank table of K(i,j) over the bidegree box.
    Table,
    /// Nonempty acyclic sets and the acyclic line bundle classes.
    Acyclic,
    /// Exhaustive search for exceptional collections of four line bundles.
    Search,
    /// Grouping of the collections into helices.
    Helices,
    /// Ext matrices of the helices.
    ExtMatrix {
        /// Restrict to one helix (H1 or H2).
        #[arg(long)]
        helix: Option<String>,
    },
    /// Anticanonical heights of the helices.
    Height {
        #[arg(long)]
        helix: Option<String>,
    },
    /// Hochschild cohomology of the surface.
    Hochschild,
    /// Quasi-phantom invariants of the orthogonal categories.
    Phantom {
        #[arg(long)]
        helix: Option<String>,
    },
    /// Re-compute every embedded reference fact and report pass/fail.
    PaperCheck {
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        /// Corrupt the engine on purpose to confirm the checks can fail.
        #[arg(long, value_parser = clap::value_parser!(Fault))]
        inject_fault: Option<Fault>,
    },
}

impl clap::builder::ValueParserFactory for Fault {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| {
            Fault::by_name(s).ok_or_else(|| {
                format!(
                    "unknown fault '{s}' (expected one of: {})",
                    Fault::ALL_NAMES.join(", ")
                )
            })
        })
    }
}

impl clap::builder::ValueParserFactory for Format {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<Format>())
    }
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: &Cli, out: &mut impl std::io::Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(out, "error: {err}");
            match err {
                Error::ParseBundle { .. }
                | Error::ParseRange(_)
                | Error::UnknownCurve(_)
                | Error::UnknownHelix(_)
                | Error::ParsePoly { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn parse_range(cli: &Cli) -> Result<BidegreeRange, Error> {
    let range = match &cli.range {
        Some(text) => BidegreeRange::parse(text)?,
        None => BidegreeRange::default(),
    };
    for bound in [range.imin, range.imax, range.jmin, range.jmax] {
        if bound.abs() > MAX_RANGE_DEGREE {
            return Err(Error::ParseRange(format!(
                "range bounds are limited to magnitude {MAX_RANGE_DEGREE}"
            )));
        }
    }
    Ok(range)
}

fn parse_bundle(text: &str) -> Result<LineBundleClass, Error> {
    let bundle = LineBundleClass::parse(text)?;
    if bundle.a().abs() > MAX_SINGLE_DEGREE || bundle.b().abs() > MAX_SINGLE_DEGREE {
        return Err(Error::ParseBundle {
            pos: 0,
            msg: format!("bidegrees are limited to magnitude {MAX_SINGLE_DEGREE}"),
        });
    }
    Ok(bundle)
}

fn helices_of(surface: &Surface) -> Result<Vec<Helix>, Error> {
    let outcome = collections::search(surface)?;
    group_into_helices(surface, &outcome.collections)
}

fn selected_helices<'a>(helices: &'a [Helix], selector: &Option<String>) -> Result<Vec<(String, &'a Helix)>, Error> {
    match selector {
        Some(name) => Ok(vec![(name.clone(), Helix::by_name(helices, name)?)]),
        None => Ok(helices
            .iter()
            .enumerate()
            .map(|(k, h)| (format!("H{}", k + 1), h))
            .collect()),
    }
}

fn dispatch(cli: &Cli, out: &mut impl std::io::Write) -> Result<i32, Error> {
    let surface = Surface::beauville();
    let emit = |out: &mut dyn std::io::Write, value: &serde_json::Value| {
        writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
            .expect("write");
    };
    match &cli.command {
        Command::Cohomology { bundle } => {
            let bundle = parse_bundle(bundle)?;
            let ranks = surface.cohomology(&bundle);
            match cli.format {
                Format::Json => {
                    let mut value = json!({
                        "bundle": bundle.to_string(),
                        "h": ranks.as_triple(),
                        "rank_polynomial": ranks.to_string(),
                    });
                    if cli.verbose {
                        value["kunneth"] =
                            serde_json::to_value(surface.kunneth_poly(&bundle)).expect("serializable");
                    }
                    emit(out, &value);
                }
                _ => {
                    writeln!(out, "h({bundle}) = {ranks}").expect("write");
                    if cli.verbose {
                        writeln!(out, "kunneth class: {}", surface.kunneth_poly(&bundle))
                            .expect("write");
                    }
                }
            }
            Ok(0)
        }
        Command::Table => {
            let range = parse_range(cli)?;
            let table = surface.ranks_table(&range);
            match cli.format {
                Format::Json => {
                    let cells: Vec<serde_json::Value> = table
                        .iter()
                        .map(|(i, j, ranks)| {
                            json!({
                                "bundle": format!("K({i},{j})"),
                                "i": i,
                                "j": j,
                                "h": ranks.as_triple(),
                            })
                        })
                        .collect();
                    emit(out, &json!(cells));
                }
                format => {
                    if range.is_empty() {
                        return Ok(0);
                    }
                    let mut rows: Vec<Vec<String>> = Vec::new();
                    let mut header = vec!["j \\ i".to_string()];
                    header.extend((range.imin..=range.imax).map(|i| i.to_string()));
                    rows.push(header);
                    for j in (range.jmin..=range.jmax).rev() {
                        let mut row = vec![j.to_string()];
                        row.extend(table.iter().filter(|&&(_, tj, _)| tj == j).map(
                            |(_, _, ranks)| ranks.to_string(),
                        ));
                        rows.push(row);
                    }
                    let rendered = match format {
                        Format::Markdown => markdown_table(&rows),
                        _ => text_table(&rows),
                    };
                    write!(out, "{rendered}").expect("write");
                }
            }
            Ok(0)
        }
        Command::Acyclic => {
            let range = parse_range(cli)?;
            let sets = collections::nonempty_acyclic_sets(&surface, &range)?;
            let bundles = collections::enumerate_acyclic_bundles(&surface, &range)?;
            match cli.format {
                Format::Json => {
                    let listed: Vec<serde_json::Value> = sets
                        .iter()
                        .map(|((i, j), set)| {
                            json!({
                                "bundle": format!("K({i},{j})"),
                                "characters": set.characters,
                            })
                        })
                        .collect();
                    emit(
                        out,
                        &json!({
                            "nonempty_sets": listed,
                            "acyclic_classes": bundles,
                            "total_classes": bundles.len(),
                        }),
                    );
                }
                _ => {
                    for ((i, j), set) in &sets {
                        let chars: Vec<String> =
                            set.characters.iter().map(|c| c.to_string()).collect();
                        writeln!(out, "A(K({i},{j})) = {{{}}}", chars.join(", ")).expect("write");
                    }
                    writeln!(out, "nonempty acyclic sets: {}", sets.len()).expect("write");
                    writeln!(out, "acyclic line bundle classes: {}", bundles.len())
                        .expect("write");
                }
            }
            Ok(0)
        }
        Command::Search => {
            let outcome = collections::search(&surface)?;
            match cli.format {
                Format::Json => {
                    let certs: Vec<_> = outcome
                        .collections
                        .iter()
                        .map(|c| certificate(&surface, c))
                        .collect();
                    emit(out, &serde_json::to_value(certs).expect("serializable"));
                }
                _ => {
                    for c in &outcome.collections {
                        let label = collections::numerical_type(c)
                            .map(|t| t.to_string())
                            .unwrap_or_else(|| "?".to_string());
                        writeln!(out, "({label})  {}", c.normalized()).expect("write");
                    }
                    if cli.verbose {
                        writeln!(out, "candidate bidegree triples: {}", outcome.candidates.len())
                            .expect("write");
                        for cand in &outcome.candidates {
                            writeln!(
                                out,
                                "  {:?} type {} lifts {}",
                                cand.bidegrees, cand.numerical_type, cand.lifts
                            )
                            .expect("write");
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Helices => {
            let helices = helices_of(&surface)?;
            match cli.format {
                Format::Json => {
                    let listed: Vec<serde_json::Value> = helices
                        .iter()
                        .enumerate()
                        .map(|(k, h)| {
                            json!({
                                "name": format!("H{}", k + 1),
                                "types": h.type_sequence().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                                "spires": h.spires(),
                            })
                        })
                        .collect();
                    emit(out, &json!(listed));
                }
                _ => {
                    for (k, h) in helices.iter().enumerate() {
                        let types: Vec<String> =
                            h.type_sequence().iter().map(|t| t.to_string()).collect();
                        writeln!(
                            out,
                            "H{}: {} -> ({})",
                            k + 1,
                            types.join(" -> "),
                            types[0]
                        )
                        .expect("write");
                        for spire in h.spires() {
                            writeln!(out, "  {spire}").expect("write");
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::ExtMatrix { helix } => {
            let helices = helices_of(&surface)?;
            let chosen = selected_helices(&helices, helix)?;
            match cli.format {
                Format::Json => {
                    let listed: Vec<serde_json::Value> = chosen
                        .iter()
                        .map(|(name, h)| {
                            json!({
                                "name": name,
                                "rows": ext_matrix(&surface, h).rows,
                            })
                        })
                        .collect();
                    emit(out, &json!(listed));
                }
                format => {
                    for (name, h) in &chosen {
                        writeln!(out, "M({name}):").expect("write");
                        let m = ext_matrix(&surface, h);
                        let rows: Vec<Vec<String>> = m
                            .rows
                            .iter()
                            .map(|row| row.iter().map(|r| r.to_string()).collect())
                            .collect();
                        let rendered = match format {
                            Format::Markdown => {
                                let mut with_header =
                                    vec![(0..4).map(|j| format!("j={j}")).collect::<Vec<_>>()];
                                with_header.extend(rows);
                                markdown_table(&with_header)
                            }
                            _ => text_table(&rows),
                        };
                        write!(out, "{rendered}").expect("write");
                    }
                }
            }
            Ok(0)
        }
        Command::Height { helix } => {
            let helices = helices_of(&surface)?;
            let chosen = selected_helices(&helices, helix)?;
            match cli.format {
                Format::Json => {
                    let listed: Vec<serde_json::Value> = chosen
                        .iter()
                        .map(|(name, h)| {
                            json!({ "name": name, "height": anticanonical_height(&surface, h) })
                        })
                        .collect();
                    emit(out, &json!(listed));
                }
                _ => {
                    for (name, h) in &chosen {
                        writeln!(out, "h({name}) = {}", anticanonical_height(&surface, h))
                            .expect("write");
                    }
                }
            }
            Ok(0)
        }
        Command::Hochschild => {
            let hh = surface.hochschild_cohomology();
            match cli.format {
                Format::Json => emit(out, &json!({ "hh": hh })),
                _ => {
                    for (k, dim) in hh.iter().enumerate() {
                        writeln!(out, "HH^{k}(S) = {dim}").expect("write");
                    }
                }
            }
            Ok(0)
        }
        Command::Phantom { helix } => {
            let helices = helices_of(&surface)?;
            let chosen = selected_helices(&helices, helix)?;
            match cli.format {
                Format::Json => {
                    let listed: Vec<serde_json::Value> = chosen
                        .iter()
                        .map(|(name, h)| {
                            let report = quasi_phantom_report(&surface, h);
                            json!({ "name": name, "report": report })
                        })
                        .collect();
                    emit(out, &json!(listed));
                }
                _ => {
                    for (name, h) in &chosen {
                        let report = quasi_phantom_report(&surface, h);
                        writeln!(out, "orthogonal of {name} (height {}):", report.height)
                            .expect("write");
                        for line in &report.lines {
                            let tag = match line.provenance {
                                Provenance::Computed => "computed",
                                Provenance::Cited => "cited",
                            };
                            writeln!(out, "  {} = {}  [{tag}]", line.label, line.value)
                                .expect("write");
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::PaperCheck { json: json_flag, inject_fault } => {
            let fault = inject_fault.unwrap_or(Fault::None);
            let report = facts::paper_check(fault);
            let as_json = *json_flag || cli.format == Format::Json;
            if as_json {
                emit(out, &serde_json::to_value(&report).expect("serializable"));
            } else {
                for r in &report.results {
                    if r.passed {
                        writeln!(out, "PASS {}  {}", r.id, r.description).expect("write");
                    } else {
                        writeln!(
                            out,
                            "FAIL {}  {}\n     expected: {}\n     computed: {}",
                            r.id, r.description, r.expected, r.computed
                        )
                        .expect("write");
                    }
                }
                let failures = report.failures();
                if failures == 0 {
                    writeln!(out, "all {} facts pass", report.results.len()).expect("write");
                } else {
                    writeln!(
                        out,
                        "{failures} of {} facts FAILED",
                        report.results.len()
                    )
                    .expect("write");
                }
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}
