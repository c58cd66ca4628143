//! `allen` — command-line surface for the interval algebra.
//!
//! Exit codes: 0 on success, 1 for negative verdicts (inconsistent network,
//! no scenario, verification mismatch), 2 for usage or parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use allen_core::derivation::{derive_composition, verify_pd, verify_table_by_derivation};
use allen_core::lattice::{conceptual_distance, is_connected, neighbors};
use allen_core::model::{classify, oracle_table, parse_rational, verify_jepd, RatInterval};
use allen_core::network::Network;
use allen_core::relation::{BasicRelation, RelationSet, ALL_RELATIONS};
use allen_core::table::{compose, TableFormat, TABLE};

#[derive(Parser)]
#[command(
    name = "allen",
    version,
    about = "Allen's interval algebra: composition, derivation, and constraint networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compose two basic relations via the verified table.
    Compose { r1: String, r2: String },
    /// Converse of a relation set.
    Converse {
        #[arg(required = true)]
        relations: Vec<String>,
    },
    /// Print the 13x13 composition table, optionally re-verifying it.
    Table(TableArgs),
    /// Classify two rational intervals given as start/end pairs.
    Classify {
        #[arg(allow_hyphen_values = true)]
        s1: String,
        #[arg(allow_hyphen_values = true)]
        e1: String,
        #[arg(allow_hyphen_values = true)]
        s2: String,
        #[arg(allow_hyphen_values = true)]
        e2: String,
    },
    /// Derive a composition entry from the meets axioms.
    Derive {
        r1: String,
        r2: String,
        /// Print the full case-split proof tree instead of the union.
        #[arg(long)]
        tree: bool,
    },
    /// Check that the 13 relations are jointly exhaustive and pairwise
    /// disjoint.
    Jepd,
    /// Algebraic closure of a network file.
    Closure { file: PathBuf },
    /// Find an atomic scenario for a network file.
    Solve {
        file: PathBuf,
        /// Also print rational endpoints realizing the scenario.
        #[arg(long)]
        realize: bool,
    },
    /// Conceptual neighborhood queries.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Recompute the table with the chosen engine(s) and report agreement.
    #[arg(long, value_enum)]
    verify: Option<Verify>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verify {
    Oracle,
    Derivation,
    Both,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Conceptual neighbors of a basic relation.
    Neighbors { relation: String },
    /// Whether a relation set is connected in the neighborhood graph.
    Connected {
        #[arg(required = true)]
        relations: Vec<String>,
    },
    /// Shortest neighborhood path length between two basic relations.
    Distance { r1: String, r2: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Relation(#[from] allen_core::ParseRelationError),
    #[error(transparent)]
    Model(#[from] allen_core::model::ModelError),
    #[error(transparent)]
    Network(#[from] allen_core::network::NetworkError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;
const VERDICT: u8 = 1;

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Compose { r1, r2 } => {
            let (r1, r2) = (BasicRelation::parse(&r1)?, BasicRelation::parse(&r2)?);
            println!("{}", compose(r1, r2));
            Ok(PASS)
        }
        Cmd::Converse { relations } => {
            let set = parse_set(&relations)?;
            println!("{}", set.converse());
            Ok(PASS)
        }
        Cmd::Table(args) => table(args),
        Cmd::Classify { s1, e1, s2, e2 } => {
            let a = RatInterval::new(parse_rational(&s1)?, parse_rational(&e1)?)?;
            let b = RatInterval::new(parse_rational(&s2)?, parse_rational(&e2)?)?;
            println!("{}", classify(&a, &b));
            Ok(PASS)
        }
        Cmd::Derive { r1, r2, tree } => {
            let (r1, r2) = (BasicRelation::parse(&r1)?, BasicRelation::parse(&r2)?);
            match derive_composition(r1, r2) {
                Ok(proof) if tree => {
                    print!("{}", proof.render());
                    Ok(PASS)
                }
                Ok(proof) => {
                    println!("{}", proof.conclusions());
                    Ok(PASS)
                }
                Err(e) => {
                    eprintln!("derivation failed: {e}");
                    Ok(ExitCode::from(VERDICT))
                }
            }
        }
        Cmd::Jepd => jepd(),
        Cmd::Closure { file } => {
            let net = read_network(&file)?;
            match net.path_consistency() {
                Ok(closed) => {
                    print!("{}", closed.serialize());
                    Ok(PASS)
                }
                Err(verdict) => {
                    println!("INCONSISTENT");
                    eprintln!("{verdict}");
                    Ok(ExitCode::from(VERDICT))
                }
            }
        }
        Cmd::Solve { file, realize } => {
            let net = read_network(&file)?;
            match net.solve() {
                Some(scenario) => {
                    print!("{}", scenario.serialize());
                    if realize {
                        let assignment = scenario.realize()?;
                        for (name, interval) in assignment {
                            println!("{name} = {interval}");
                        }
                    }
                    Ok(PASS)
                }
                None => {
                    println!("NO SCENARIO");
                    Ok(ExitCode::from(VERDICT))
                }
            }
        }
        Cmd::Lattice { cmd } => lattice(cmd),
    }
}

fn parse_set(tokens: &[String]) -> Result<RelationSet, allen_core::ParseRelationError> {
    tokens
        .iter()
        .map(|t| BasicRelation::parse(t))
        .collect::<Result<RelationSet, _>>()
}

fn read_network(path: &PathBuf) -> Result<Network, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Network::parse(&text)?)
}

fn table(args: TableArgs) -> Result<ExitCode, CliError> {
    let format = match args.format {
        Format::Csv => TableFormat::Csv,
        Format::Md => TableFormat::Markdown,
    };
    print!("{}", TABLE.export(format));
    let Some(mode) = args.verify else {
        return Ok(PASS);
    };
    let mut reports = Vec::new();
    let mut ok = true;
    if matches!(mode, Verify::Oracle | Verify::Both) {
        let semantic = oracle_table();
        let agreeing = ALL_RELATIONS
            .into_iter()
            .flat_map(|r1| ALL_RELATIONS.into_iter().map(move |r2| (r1, r2)))
            .filter(|&(r1, r2)| semantic.entry(r1, r2) == TABLE.entry(r1, r2))
            .count();
        let verdict = if agreeing == 169 { "OK" } else { "MISMATCH" };
        ok &= agreeing == 169;
        reports.push(format!("{agreeing}/169 oracle {verdict}"));
    }
    if matches!(mode, Verify::Derivation | Verify::Both) {
        let report = verify_table_by_derivation();
        let verdict = if report.all_ok() { "OK" } else { "MISMATCH" };
        ok &= report.all_ok();
        reports.push(format!("{}/169 derivation {verdict}", report.ok));
        for (r1, r2, problem) in &report.failures {
            eprintln!("{r1} ∘ {r2}: {problem}");
        }
    }
    println!("{}", reports.join(", "));
    Ok(if ok { PASS } else { ExitCode::from(VERDICT) })
}

fn jepd() -> Result<ExitCode, CliError> {
    let mut ok = true;

    let je = verify_jepd();
    let je_ok = je.is_bijective();
    ok &= je_ok;
    println!(
        "JE: {} order types cover {} relations: {}",
        je.config_count,
        RelationSet::from_iter(je.covered.iter().copied()).len(),
        if je_ok { "OK" } else { "FAIL" }
    );

    let mut refuted = 0;
    let mut failures = Vec::new();
    for (i, r1) in ALL_RELATIONS.into_iter().enumerate() {
        for r2 in ALL_RELATIONS.into_iter().skip(i + 1) {
            match verify_pd(r1, r2) {
                Ok(_) => refuted += 1,
                Err(e) => failures.push(format!("{r1}/{r2}: {e}")),
            }
        }
    }
    let pd_ok = refuted == 78;
    ok &= pd_ok;
    println!(
        "PD: {refuted}/78 pairs refuted: {}",
        if pd_ok { "OK" } else { "FAIL" }
    );
    for f in failures {
        eprintln!("{f}");
    }
    Ok(if ok { PASS } else { ExitCode::from(VERDICT) })
}

fn lattice(cmd: LatticeCmd) -> Result<ExitCode, CliError> {
    match cmd {
        LatticeCmd::Neighbors { relation } => {
            let r = BasicRelation::parse(&relation)?;
            println!("{}", neighbors(r));
        }
        LatticeCmd::Connected { relations } => {
            let set = parse_set(&relations)?;
            println!("{}", is_connected(set));
        }
        LatticeCmd::Distance { r1, r2 } => {
            let (r1, r2) = (BasicRelation::parse(&r1)?, BasicRelation::parse(&r2)?);
            println!("{}", conceptual_distance(r1, r2));
        }
    }
    Ok(PASS)
}
