use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use clutters::{
    check_admissible_instance, check_linear_quotients, exists_linear_quotients_ordering,
    find_grid_structure, gen_counterexample, gen_random_admissible, is_cohen_macaulay, order_g4,
    recover_structure_g2, satisfies_condition_star, search_not_cm_witness, sort_by_named_ordering,
    Clutter, CmStatus, Error, GridStructure, Limits, NamedOrdering, PrimeField, SquareFreeIdeal,
    VertexSet,
};
use clutters_cli::document::{document_from, parse_document, serialize_document, ParsedDocument};
use clutters_cli::report::{digest, Budgets, Report};
use clutters_cli::verify;

/// Clutters, covers, Alexander duality, linear quotients, and
/// Cohen-Macaulayness checks.
///
/// Input documents are JSON objects with `vertices` and `edges` (label
/// arrays), plus optional `colors` and `matching` partitions forming a grid
/// structure. Input comes from a file path argument or standard input.
/// Reports go to standard output, diagnostics to standard error.
///
/// Exit codes: 0 = definitive positive, 1 = definitive negative verdict,
/// 2 = inconclusive or a resource budget ran out, 3 = input error.
#[derive(Parser)]
#[command(name = "clutters", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Repair non-antichain edge families by dropping supersets (the repair
    /// is reported as a warning).
    #[arg(long, global = true)]
    minimalize: bool,

    /// Byte-stable output: omit timing from the report and pin search
    /// schedules (all algorithms run sequentially, so results are already
    /// schedule-independent).
    #[arg(long, global = true)]
    deterministic: bool,

    /// Maximum worker threads (reserved; the current implementation runs
    /// single-threaded and its results do not depend on this value).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Cover enumeration budget.
    #[arg(long, global = true)]
    max_covers: Option<usize>,

    /// Search-node budget for branch-and-bound and backtracking.
    #[arg(long, global = true)]
    max_nodes: Option<usize>,

    /// Face enumeration budget for homology computations.
    #[arg(long, global = true)]
    max_faces: Option<usize>,

    /// Candidate-face budget for witness searches.
    #[arg(long, global = true)]
    max_witness_faces: Option<usize>,

    /// Generator-count budget for the linear-quotient ordering search.
    #[arg(long, global = true)]
    max_search_generators: Option<usize>,

    /// Ambient-size budget for full Betti table scans.
    #[arg(long, global = true)]
    max_betti_vertices: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the minimal vertex covers.
    Covers { input: Option<PathBuf> },
    /// The covering number (minimum size of a minimal vertex cover).
    Height { input: Option<PathBuf> },
    /// Do all minimal vertex covers share one cardinality?
    Unmixed { input: Option<PathBuf> },
    /// The Alexander dual clutter (edges = minimal vertex covers).
    Dual { input: Option<PathBuf> },
    /// Check admissibility against the document's grid, or search for one.
    Admissible {
        input: Option<PathBuf>,
        /// Search for a grid structure instead of requiring one in the input.
        #[arg(long)]
        find_grid: bool,
    },
    /// Certify or refute linear quotients of the Alexander dual under an
    /// ordering of its generators.
    Linquot {
        #[arg(long, value_enum)]
        order: OrderArg,
        input: Option<PathBuf>,
    },
    /// Scan a height-4 instance for a bad vertex cover pair.
    ConditionStar { input: Option<PathBuf> },
    /// Decide Cohen-Macaulayness by the Reisner criterion.
    Cm {
        /// Field characteristic (a prime below 2^31).
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        /// Only search for a negative witness; never claim a positive.
        #[arg(long)]
        witness_only: bool,
        input: Option<PathBuf>,
    },
    /// Graded Betti numbers of the edge ideal via the Hochster formula.
    Betti {
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        input: Option<PathBuf>,
    },
    /// Chordality of a graph, with a perfect elimination ordering.
    Chordal { input: Option<PathBuf> },
    /// Is the complement graph chordal (equivalently: does the edge ideal
    /// have a linear resolution)?
    Froberg { input: Option<PathBuf> },
    /// Recover color classes and a two-block matching for a uniform,
    /// height-2, Cohen-Macaulay clutter.
    RecoverG2 {
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u64,
        input: Option<PathBuf>,
    },
    /// Emit instance documents.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run the full verification suite and report one line per criterion.
    VerifyPaper {
        /// Run a single criterion (1-12) instead of the whole suite.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// The height-g member of the non-Cohen-Macaulay family (g >= 4).
    Counterexample {
        #[arg(long)]
        g: usize,
    },
    /// A random admissible instance: matching blocks plus `extra` distinct
    /// admissible edges; deterministic in the seed.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        extra: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    /// Explicit height-2 ordering.
    #[value(name = "paper-g2")]
    PaperG2,
    /// Explicit height-3 ordering.
    #[value(name = "paper-g3")]
    PaperG3,
    /// Alternative height-3 ordering (three color classes only).
    #[value(name = "paper-g3-alt")]
    PaperG3Alt,
    /// Explicit height-4 ordering (requires condition (*) to be absent).
    #[value(name = "paper-g4")]
    PaperG4,
    /// Lexicographic baseline.
    #[value(name = "lex")]
    Lex,
    /// Reverse lexicographic baseline.
    #[value(name = "revlex")]
    RevLex,
    /// Backtracking search over all orderings.
    #[value(name = "search")]
    Search,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_covers: cli.max_covers.unwrap_or(Limits::default().max_covers),
        max_nodes: cli.max_nodes.unwrap_or(Limits::default().max_nodes),
        max_faces: cli.max_faces.unwrap_or(Limits::default().max_faces),
        max_witness_faces: cli
            .max_witness_faces
            .unwrap_or(Limits::default().max_witness_faces),
        max_search_generators: cli
            .max_search_generators
            .unwrap_or(Limits::default().max_search_generators),
        max_betti_vertices: cli
            .max_betti_vertices
            .unwrap_or(Limits::default().max_betti_vertices),
        ..Limits::default()
    };
    let start = Instant::now();
    match run(&cli, &limits) {
        Ok(Outcome::Report {
            command,
            input_digest,
            field_char,
            result,
            exit,
        }) => {
            let report = Report {
                command,
                input_digest,
                field_char,
                budgets: Budgets::from(&limits),
                deterministic: cli.deterministic,
                timing_ms: (!cli.deterministic).then(|| start.elapsed().as_millis()),
                result,
            };
            print!("{}", report.render());
            ExitCode::from(exit)
        }
        Ok(Outcome::Document(text)) => {
            print!("{text}");
            ExitCode::from(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

enum Outcome {
    Report {
        command: String,
        input_digest: Option<String>,
        field_char: Option<u64>,
        result: Value,
        exit: u8,
    },
    Document(String),
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn load(path: &Option<PathBuf>, minimalize: bool) -> Result<(ParsedDocument, String), Error> {
    let text = read_input(path)?;
    let parsed = parse_document(&text, minimalize)?;
    if parsed.dropped_edges > 0 {
        eprintln!(
            "warning: dropped {} non-minimal edge(s) during antichain repair",
            parsed.dropped_edges
        );
    }
    Ok((parsed, digest(text.as_bytes())))
}

fn labels_of(clutter: &Clutter, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| clutter.label(v).to_string()).collect()
}

fn grid_json(clutter: &Clutter, grid: &GridStructure) -> Value {
    json!({
        "colors": grid.colors().iter().map(|x| labels_of(clutter, *x)).collect::<Vec<_>>(),
        "matching": grid.matching().iter().map(|e| labels_of(clutter, *e)).collect::<Vec<_>>(),
    })
}

fn require_grid(parsed: &ParsedDocument) -> Result<GridStructure, Error> {
    parsed.grid.clone().ok_or_else(|| {
        Error::InvalidInput(
            "this operation needs a grid structure (`colors` and `matching` in the document)"
                .into(),
        )
    })
}

fn run(cli: &Cli, limits: &Limits) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Covers { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let covers = parsed.clutter.minimal_vertex_covers(limits)?;
            let result = json!({
                "count": covers.len(),
                "covers": covers.iter().map(|c| labels_of(&parsed.clutter, *c)).collect::<Vec<_>>(),
                "sizes": { "min": covers.min_size(), "max": covers.max_size() },
            });
            Ok(Outcome::Report {
                command: "covers".into(),
                input_digest: Some(dig),
                field_char: None,
                result,
                exit: 0,
            })
        }
        Command::Height { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let height = parsed.clutter.height(limits)?;
            Ok(Outcome::Report {
                command: "height".into(),
                input_digest: Some(dig),
                field_char: None,
                result: json!({ "height": height }),
                exit: 0,
            })
        }
        Command::Unmixed { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let unmixed = parsed.clutter.is_unmixed(limits)?;
            Ok(Outcome::Report {
                command: "unmixed".into(),
                input_digest: Some(dig),
                field_char: None,
                result: json!({ "unmixed": unmixed }),
                exit: if unmixed { 0 } else { 1 },
            })
        }
        Command::Dual { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let dual = parsed.clutter.alexander_dual(limits)?;
            let doc = document_from(&dual, None);
            Ok(Outcome::Report {
                command: "dual".into(),
                input_digest: Some(dig),
                field_char: None,
                result: json!({
                    "edge_count": dual.edge_count(),
                    "document": serde_json::to_value(&doc).expect("documents serialize"),
                }),
                exit: 0,
            })
        }
        Command::Admissible { input, find_grid } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let grid = if *find_grid {
                match find_grid_structure(&parsed.clutter, limits)? {
                    Some(g) => g,
                    None => {
                        return Ok(Outcome::Report {
                            command: "admissible".into(),
                            input_digest: Some(dig),
                            field_char: None,
                            result: json!({ "admissible": false, "reason": "no grid structure exists" }),
                            exit: 1,
                        })
                    }
                }
            } else {
                require_grid(&parsed)?
            };
            let report = check_admissible_instance(&parsed.clutter, &grid)?;
            let admissible = report.is_admissible();
            let result = json!({
                "admissible": admissible,
                "grid": grid_json(&parsed.clutter, &grid),
                "missing_matching_blocks": report.missing_matching_edges,
                "offending_edges": report
                    .offending_edges
                    .iter()
                    .map(|e| labels_of(&parsed.clutter, *e))
                    .collect::<Vec<_>>(),
            });
            Ok(Outcome::Report {
                command: "admissible".into(),
                input_digest: Some(dig),
                field_char: None,
                result,
                exit: if admissible { 0 } else { 1 },
            })
        }
        Command::Linquot { order, input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            run_linquot(&parsed, *order, dig, limits)
        }
        Command::ConditionStar { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let grid = require_grid(&parsed)?;
            let instance = clutters::AdmissibleInstance::new(parsed.clutter.clone(), grid)?;
            let pair = satisfies_condition_star(&instance, limits)?;
            let (result, exit) = match pair {
                None => (json!({ "condition_star": false }), 0u8),
                Some(p) => (
                    json!({
                        "condition_star": true,
                        "bad_pair": {
                            "first": p.first.entries(),
                            "second": p.second.entries(),
                            "first_cover": labels_of(&parsed.clutter, instance.grid().vertex_set(&p.first)?),
                            "second_cover": labels_of(&parsed.clutter, instance.grid().vertex_set(&p.second)?),
                        }
                    }),
                    1u8,
                ),
            };
            Ok(Outcome::Report {
                command: "condition-star".into(),
                input_digest: Some(dig),
                field_char: None,
                result,
                exit,
            })
        }
        Command::Cm {
            characteristic,
            witness_only,
            input,
        } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let field = PrimeField::new(*characteristic)?;
            let verdict = if *witness_only {
                search_not_cm_witness(&parsed.clutter, field, limits)?
            } else {
                is_cohen_macaulay(&parsed.clutter, field, limits)?
            };
            let (result, exit) = match &verdict.status {
                CmStatus::CohenMacaulay => (json!({ "status": "cohen-macaulay" }), 0u8),
                CmStatus::NotCohenMacaulay { witness, degree } => (
                    json!({
                        "status": "not-cohen-macaulay",
                        "witness_face": labels_of(&parsed.clutter, *witness),
                        "homology_degree": degree,
                    }),
                    1u8,
                ),
                CmStatus::Inconclusive { note } => {
                    (json!({ "status": "inconclusive", "note": note }), 2u8)
                }
            };
            Ok(Outcome::Report {
                command: "cm".into(),
                input_digest: Some(dig),
                field_char: Some(*characteristic),
                result,
                exit,
            })
        }
        Command::Betti {
            characteristic,
            input,
        } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let field = PrimeField::new(*characteristic)?;
            let ideal = SquareFreeIdeal::edge_ideal(&parsed.clutter);
            let table = clutters::betti_numbers(&ideal, field, None, limits)?;
            let fine: Vec<Value> = table
                .fine
                .iter()
                .map(|(&(i, sigma), &v)| {
                    json!({ "i": i, "sigma": labels_of(&parsed.clutter, sigma), "value": v })
                })
                .collect();
            let coarse: Vec<Value> = table
                .coarse
                .iter()
                .map(|(&(i, j), &v)| json!({ "i": i, "j": j, "value": v }))
                .collect();
            Ok(Outcome::Report {
                command: "betti".into(),
                input_digest: Some(dig),
                field_char: Some(*characteristic),
                result: json!({ "fine": fine, "coarse": coarse }),
                exit: 0,
            })
        }
        Command::Chordal { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let order = clutters::is_chordal(&parsed.clutter)?;
            let (result, exit) = match order {
                Some(order) => (
                    json!({
                        "chordal": true,
                        "elimination_order": order
                            .iter()
                            .map(|&v| parsed.clutter.label(v).to_string())
                            .collect::<Vec<_>>(),
                    }),
                    0u8,
                ),
                None => (json!({ "chordal": false }), 1u8),
            };
            Ok(Outcome::Report {
                command: "chordal".into(),
                input_digest: Some(dig),
                field_char: None,
                result,
                exit,
            })
        }
        Command::Froberg { input } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let linear = clutters::froberg_check(&parsed.clutter)?;
            Ok(Outcome::Report {
                command: "froberg".into(),
                input_digest: Some(dig),
                field_char: None,
                result: json!({ "complement_chordal": linear, "edge_ideal_linear_resolution": linear }),
                exit: if linear { 0 } else { 1 },
            })
        }
        Command::RecoverG2 {
            characteristic,
            input,
        } => {
            let (parsed, dig) = load(input, cli.minimalize)?;
            let field = PrimeField::new(*characteristic)?;
            let report = recover_structure_g2(&parsed.clutter, field, limits)?;
            let (result, exit) = match &report.structure {
                Some(grid) => (
                    json!({
                        "recovered": true,
                        "grid": grid_json(&parsed.clutter, grid),
                        "log": report.log,
                    }),
                    0u8,
                ),
                None => (json!({ "recovered": false, "log": report.log }), 1u8),
            };
            Ok(Outcome::Report {
                command: "recover-g2".into(),
                input_digest: Some(dig),
                field_char: Some(*characteristic),
                result,
                exit,
            })
        }
        Command::Gen { what } => {
            let instance = match what {
                GenCommand::Counterexample { g } => gen_counterexample(*g)?,
                GenCommand::Random { d, g, extra, seed } => {
                    gen_random_admissible(*d, *g, *extra, *seed)?
                }
            };
            let doc = document_from(instance.clutter(), Some(instance.grid()));
            Ok(Outcome::Document(serialize_document(&doc)))
        }
        Command::VerifyPaper { only } => {
            let outcomes = match only {
                Some(id) => {
                    if *id == 0 || *id > verify::criterion_count() {
                        return Err(Error::InvalidInput(format!(
                            "criterion {id} out of range 1..={}",
                            verify::criterion_count()
                        )));
                    }
                    vec![verify::run_criterion(*id, limits)]
                }
                None => verify::run_all(limits),
            };
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let all_passed = outcomes.iter().all(|o| o.passed);
            let result = json!({
                "passed": all_passed,
                "criteria": outcomes
                    .iter()
                    .map(|o| {
                        let mut entry = json!({
                            "id": o.id,
                            "title": o.title,
                            "passed": o.passed,
                            "detail": o.detail,
                            "budget_ms": o.budget_ms,
                        });
                        if !cli.deterministic {
                            entry["millis"] = json!(o.millis);
                        }
                        entry
                    })
                    .collect::<Vec<_>>(),
            });
            Ok(Outcome::Report {
                command: "verify-paper".into(),
                input_digest: None,
                field_char: Some(2),
                result,
                exit: if all_passed { 0 } else { 1 },
            })
        }
    }
}

fn run_linquot(
    parsed: &ParsedDocument,
    order: OrderArg,
    dig: String,
    limits: &Limits,
) -> Result<Outcome, Error> {
    let clutter = &parsed.clutter;
    let dual = SquareFreeIdeal::cover_ideal(clutter, limits)?;
    let order_name = match order {
        OrderArg::PaperG2 => "paper-g2",
        OrderArg::PaperG3 => "paper-g3",
        OrderArg::PaperG3Alt => "paper-g3-alt",
        OrderArg::PaperG4 => "paper-g4",
        OrderArg::Lex => "lex",
        OrderArg::RevLex => "revlex",
        OrderArg::Search => "search",
    };
    let permutation: Vec<usize> = match order {
        OrderArg::Search => match exists_linear_quotients_ordering(&dual, limits)? {
            Some(p) => p,
            None => {
                return Ok(Outcome::Report {
                    command: "linquot".into(),
                    input_digest: Some(dig),
                    field_char: None,
                    result: json!({
                        "order": order_name,
                        "success": false,
                        "reason": "no generator ordering admits linear quotients",
                    }),
                    exit: 1,
                })
            }
        },
        OrderArg::PaperG4 => {
            let grid = require_grid(parsed)?;
            let instance = clutters::AdmissibleInstance::new(clutter.clone(), grid)?;
            match order_g4(&instance, limits) {
                Ok(g4) => g4.permutation().to_vec(),
                Err(Error::ConditionStar(pair)) => {
                    return Ok(Outcome::Report {
                        command: "linquot".into(),
                        input_digest: Some(dig),
                        field_char: None,
                        result: json!({
                            "order": order_name,
                            "success": false,
                            "reason": "condition (*) holds; no ordering admits linear quotients",
                            "bad_pair": {
                                "first": pair.first.entries(),
                                "second": pair.second.entries(),
                            },
                        }),
                        exit: 1,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        OrderArg::PaperG2
        | OrderArg::PaperG3
        | OrderArg::PaperG3Alt
        | OrderArg::Lex
        | OrderArg::RevLex => {
            let grid = require_grid(parsed)?;
            let named = match order {
                OrderArg::PaperG2 => NamedOrdering::PaperG2,
                OrderArg::PaperG3 => NamedOrdering::PaperG3,
                OrderArg::PaperG3Alt => NamedOrdering::PaperG3Alt,
                OrderArg::Lex => NamedOrdering::Lex,
                OrderArg::RevLex => NamedOrdering::RevLex,
                _ => unreachable!(),
            };
            sort_by_named_ordering(&grid, &dual, named)?
        }
    };
    let report = check_linear_quotients(&dual, &permutation)?;
    let ordered: Vec<Vec<String>> = report
        .ordering
        .iter()
        .map(|&i| labels_of(clutter, dual.generators()[i]))
        .collect();
    let result = match &report.failure {
        None => json!({
            "order": order_name,
            "success": true,
            "generator_count": dual.generator_count(),
            "ordering": ordered,
            "colon_steps": report
                .steps
                .iter()
                .map(|step| step.iter().map(|s| labels_of(clutter, *s)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
        Some(w) => json!({
            "order": order_name,
            "success": false,
            "generator_count": dual.generator_count(),
            "ordering": ordered,
            "failure": {
                "position": w.position,
                "failing_cover": labels_of(clutter, dual.generators()[report.ordering[w.position]]),
                "earlier_position": w.earlier,
                "earlier_cover": labels_of(clutter, dual.generators()[report.ordering[w.earlier]]),
                "quotient": labels_of(clutter, w.quotient),
            },
        }),
    };
    let exit = if report.success { 0 } else { 1 };
    Ok(Outcome::Report {
        command: "linquot".into(),
        input_digest: Some(dig),
        field_char: None,
        result,
        exit,
    })
}
