//! Command-line workbench for finite semigroup analysis.
//!
//! Exit codes: 0 on success, 1 when a checked property fails to hold
//! (a certify failure, a non-block-group from `check-bg`, an unsatisfied
//! identity from `variety`), 2 on parse or validation errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use blockgroups::certify::certify_semigroup;
use blockgroups::congruence::{self, DEFAULT_ORDER_CAP};
use blockgroups::corpus;
use blockgroups::dfa::parse_dfa_file;
use blockgroups::rep;
use blockgroups::report::analyze;
use blockgroups::semigroup::FiniteSemigroup;
use blockgroups::table_io::{parse_table_file, render_table_file};
use blockgroups::transform;
use blockgroups::variety;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "blockgroups",
    about = "Finite semigroup workbench: Green's relations, block-groups, \
             partial-injection representations, congruence oracles",
    version
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Order cap for congruence-lattice enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    /// Reserved for randomized spot-checks of very large inputs; unused.
    #[arg(long, global = true, hide = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TableInput {
    /// Multiplication-table file.
    #[arg(long)]
    table: PathBuf,
    /// Display name for the report.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full analysis report for one semigroup.
    Analyze(TableInput),
    /// Block-group verdict, with a witness on failure.
    CheckBg(TableInput),
    /// Print the translation family x -> xs.
    Vp(TableInput),
    /// Print the idempotent-action family.
    Munn(TableInput),
    /// Congruence lattice and the two largest-congruence oracles.
    Congruences(TableInput),
    /// Evaluate a pseudoidentity ("lhs = rhs", ^w for the omega power).
    Variety {
        #[command(flatten)]
        input: TableInput,
        #[arg(long)]
        identity: String,
        /// Cap on distinct variables in the identity.
        #[arg(long, default_value_t = variety::DEFAULT_VARIABLE_CAP)]
        max_vars: usize,
    },
    /// Syntactic monoid of a DFA file, as a table file.
    Syn {
        #[arg(long)]
        dfa: PathBuf,
    },
    /// Close transformation generators into a Cayley table.
    Gen {
        #[arg(long)]
        maps: PathBuf,
    },
    /// Run the verification battery.
    Certify {
        /// One table file.
        #[arg(long, conflicts_with_all = ["all_orders", "corpus"])]
        table: Option<PathBuf>,
        /// Every associative table of order <= N.
        #[arg(long, conflicts_with = "corpus")]
        all_orders: Option<usize>,
        /// Every named corpus member.
        #[arg(long)]
        corpus: bool,
    },
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|err| format!("cannot read {}: {err}", path.display()))
}

fn load_table(input: &TableInput) -> Result<(String, FiniteSemigroup), String> {
    let text = read_file(&input.table)?;
    let semigroup = parse_table_file(&text)
        .map_err(|err| format!("{}: {err}", input.table.display()))?;
    let name = input.name.clone().unwrap_or_else(|| {
        input
            .table
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| input.table.display().to_string())
    });
    Ok((name, semigroup))
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze(input) => {
            let (name, s) = load_table(input)?;
            let report =
                analyze(Some(&name), &s, cli.max_order).map_err(|err| err.to_string())?;
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Structured => println!("{}", report.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckBg(input) => {
            let (name, s) = load_table(input)?;
            let check = s.is_block_group().map_err(|err| err.to_string())?;
            match (&check.witness, cli.format) {
                (_, Format::Structured) => {
                    let witness = check.witness.map(|w| {
                        serde_json::json!({
                            "class_kind": w.kind.to_string(),
                            "first": w.first,
                            "second": w.second,
                        })
                    });
                    let verdict = serde_json::json!({
                        "name": name,
                        "block_group": check.holds,
                        "witness": witness,
                    });
                    println!("{verdict}");
                }
                (None, Format::Text) => println!("{name}: block-group"),
                (Some(w), Format::Text) => println!(
                    "{name}: not a block-group (idempotents {} and {} share an {}-class)",
                    w.first, w.second, w.kind
                ),
            }
            Ok(if check.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Vp(input) => {
            let (name, s) = load_table(input)?;
            let rep = rep::vp_representation(&s).map_err(|err| err.to_string())?;
            println!("translation family of {name}, D(s) -> I(s):");
            for e in rep.elements() {
                println!(
                    "  map[{}] : D = {:?} -> I = {:?} : {}",
                    e.source,
                    e.map.domain(),
                    e.map.image(),
                    e.map
                );
            }
            println!("kernel: {}", rep.kernel());
            Ok(ExitCode::SUCCESS)
        }
        Command::Munn(input) => {
            let (name, s) = load_table(input)?;
            let rep = rep::munn_representation(&s).map_err(|err| err.to_string())?;
            println!("idempotent actions of {name}, R(s) -> L(s):");
            for e in rep.elements() {
                println!(
                    "  map[{}] : R = {:?} -> L = {:?} : {}",
                    e.source,
                    e.map.domain(),
                    e.map.image(),
                    e.map
                );
            }
            println!("kernel: {}", rep.kernel());
            Ok(ExitCode::SUCCESS)
        }
        Command::Congruences(input) => {
            let (name, s) = load_table(input)?;
            let all = congruence::all_congruences_with_cap(&s, cli.max_order)
                .map_err(|err| err.to_string())?;
            println!("congruence lattice of {name}: {} members", all.len());
            for c in &all {
                println!("  {c}");
            }
            let regular = congruence::largest_separating_oracle(&s, cli.max_order)
                .map_err(|err| err.to_string())?;
            let idem = congruence::largest_idempotent_separating_oracle(&s, cli.max_order)
                .map_err(|err| err.to_string())?;
            for (title, outcome) in [
                ("largest regular-separating", regular),
                ("largest idempotent-separating", idem),
            ] {
                match outcome {
                    congruence::OracleOutcome::Unique(c) => println!("{title}: {c}"),
                    congruence::OracleOutcome::Ambiguous(cs) => {
                        println!("{title}: {} incomparable maximal candidates", cs.len());
                        for c in cs {
                            println!("  {c}");
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Variety {
            input,
            identity,
            max_vars,
        } => {
            let (name, s) = load_table(input)?;
            let chain =
                variety::parse_identity_chain(identity).map_err(|err| err.to_string())?;
            let mut all_hold = true;
            for id in &chain {
                let verdict = variety::check_identity(&s, id, *max_vars)
                    .map_err(|err| err.to_string())?;
                match &verdict.counterexample {
                    None => println!("{name} satisfies {id}"),
                    Some(assignment) => {
                        let rendered: Vec<String> = assignment
                            .iter()
                            .map(|(v, x)| format!("{v}={x}"))
                            .collect();
                        println!("{name} fails {id} at {}", rendered.join(", "));
                    }
                }
                all_hold &= verdict.holds;
            }
            Ok(if all_hold {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Syn { dfa } => {
            let text = read_file(dfa)?;
            let automaton =
                parse_dfa_file(&text).map_err(|err| format!("{}: {err}", dfa.display()))?;
            let monoid = automaton
                .syntactic_monoid()
                .map_err(|err| err.to_string())?;
            print!("{}", render_table_file(&monoid));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { maps } => {
            let text = read_file(maps)?;
            let (points, generators) = transform::parse_maps_file(&text)
                .map_err(|err| format!("{}: {err}", maps.display()))?;
            let s = transform::generate_from_transformations(points, &generators)
                .map_err(|err| err.to_string())?;
            print!("{}", render_table_file(&s));
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            table,
            all_orders,
            corpus: use_corpus,
        } => {
            let mut subjects: Vec<(String, FiniteSemigroup)> = Vec::new();
            if let Some(path) = table {
                let input = TableInput {
                    table: path.clone(),
                    name: None,
                };
                subjects.push(load_table(&input)?);
            } else if let Some(max) = all_orders {
                if *max == 0 || *max > 3 {
                    return Err("--all-orders supports 1..=3".to_string());
                }
                for order in 1..=*max {
                    let tables =
                        corpus::all_associative_tables(order).map_err(|err| err.to_string())?;
                    for (i, s) in tables.into_iter().enumerate() {
                        subjects.push((format!("order{order}_table{i}"), s));
                    }
                }
            } else if *use_corpus {
                for member in corpus::corpus() {
                    subjects.push((member.name, member.semigroup));
                }
            } else {
                return Err(
                    "certify needs one of --table, --all-orders or --corpus".to_string()
                );
            }

            let mut failures = 0usize;
            let total = subjects.len();
            for (name, s) in &subjects {
                let report = certify_semigroup(name, s, cli.max_order);
                if !report.passed() {
                    failures += 1;
                }
                match cli.format {
                    Format::Structured => println!(
                        "{}",
                        serde_json::to_string(&report).map_err(|err| err.to_string())?
                    ),
                    Format::Text => {
                        if report.passed() {
                            println!("certify {name} (order {}): PASS", s.order());
                        } else {
                            print!("{}", report.render_text());
                        }
                    }
                }
            }
            if cli.format == Format::Text {
                println!("certified {total} semigroups, {failures} failures");
            }
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
