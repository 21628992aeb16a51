mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcover_core::par::Exec;
use qcover_core::suite::{properties, run_property, OutputMode, RunConfig, SuiteReport};
use qcover_core::{Result, DEFAULT_CLOSURE_CAP};

use report::{error_exit, Format, Report};

/// Finite racks and quandles: validation, path groups, coverings and
/// centralization.
///
/// RACK, HOM and GROUP arguments are JSON file paths, or `@name` for a
/// bundled example (@qabs, @rack6, @r3, @s3, @t1, @t2; maps @eta_qabs,
/// @r3_to_1, @rack6_to_2; group @s3).
#[derive(Parser)]
#[command(name = "qcover", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print a single JSON document.
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    /// Print Graphviz DOT where the command supports it.
    #[arg(long, global = true)]
    dot: bool,
    /// Read rack tables with the row as the acting element.
    #[arg(long, global = true)]
    row_acts: bool,
    /// Maximum size of materialized permutation groups.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    cap: usize,
    /// Relator insertions tried by `word-eq`.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the rack axioms.
    Validate { rack: String },
    /// Quandle / involutive / trivial.
    Classify { rack: String },
    /// Conjugation quandle of a group.
    Conj { group: String },
    /// Connected components.
    Pi0 { rack: String },
    /// The connected component of an element, as a subrack.
    Component { rack: String, element: String },
    /// Order and generators of the inner automorphism group.
    Inn { rack: String },
    /// Presentation of the path group.
    Pth { rack: String },
    /// Abelianization of the path group.
    Abelianize { rack: String },
    /// Is the map a covering?
    Covering { hom: String },
    /// Is the map a trivial extension?
    Trivial { hom: String },
    /// Is the map a normal extension?
    Normal { hom: String },
    /// Centralization of a surjection.
    Centralize { hom: String },
    /// Quandle reflection.
    Frq { rack: String },
    /// Pullback of two maps with a common codomain.
    Pullback { f: String, g: String },
    /// The covering by (element, inner automorphism) pairs.
    EndpointCover { rack: String },
    /// Components with the images of their loop groups in Inn.
    Skeleton {
        rack: String,
        /// One element per component, comma separated.
        #[arg(long, value_delimiter = ',')]
        pointing: Option<Vec<String>>,
    },
    /// Endpoints of a horn over a map.
    Horn {
        hom: String,
        #[arg(long)]
        base: String,
        /// Steps `a,b` or `a,b,-`, separated by `;`.
        #[arg(long, default_value = "")]
        steps: String,
    },
    /// Compare two words in the path group.
    WordEq { rack: String, u: String, v: String },
    /// Run the seeded property batteries.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, env = "QCOVER_SEED", value_parser = parse_seed)]
    seed: Option<u64>,
    /// Samples per rack or surjection battery.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    horn_samples: Option<usize>,
    #[arg(long)]
    free_samples: Option<usize>,
    #[arg(long)]
    kernel_words: Option<usize>,
    /// Only properties of this module.
    #[arg(long)]
    module: Option<String>,
    /// Only the named property.
    #[arg(long)]
    property: Option<String>,
    /// Corrupt every generated table, to check that failures are caught.
    #[arg(long)]
    mutate_table: bool,
    #[arg(long)]
    sequential: bool,
    /// List the properties and exit.
    #[arg(long)]
    list: bool,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn format_of(g: &Global) -> Format {
    if g.json {
        Format::Json
    } else if g.dot {
        Format::Dot
    } else {
        Format::Text
    }
}

fn run(cmd: &Command, g: &Global) -> Result<Report> {
    use commands::*;
    let rack = |s: &str| input::rack(s, g.row_acts);
    match cmd {
        Command::Validate { rack: r } => validate(rack(r)),
        Command::Classify { rack: r } => Ok(classify(&rack(r)?)),
        Command::Conj { group } => {
            let (labels, cayley) = input::group(group)?;
            conj(labels, &cayley)
        }
        Command::Pi0 { rack: r } => pi0_report(&rack(r)?),
        Command::Component { rack: r, element } => {
            let r = rack(r)?;
            let a = input::element(&r, element)?;
            component(&r, a)
        }
        Command::Inn { rack: r } => inn(&rack(r)?, g.cap),
        Command::Pth { rack: r } => Ok(pth(&rack(r)?)),
        Command::Abelianize { rack: r } => abelianize(&rack(r)?),
        Command::Covering { hom } => covering(&input::hom(hom)?, g.cap),
        Command::Trivial { hom } => trivial(&input::hom(hom)?),
        Command::Normal { hom } => normal(&input::hom(hom)?),
        Command::Centralize { hom } => centralize_report(&input::hom(hom)?, g.cap),
        Command::Frq { rack: r } => frq_report(&rack(r)?, g.cap),
        Command::Pullback { f, g: h } => pullback_report(&input::hom(f)?, &input::hom(h)?, g.cap),
        Command::EndpointCover { rack: r } => endpoint_cover_report(&rack(r)?, g.cap),
        Command::Skeleton { rack: r, pointing } => {
            let r = rack(r)?;
            let pointing = pointing
                .as_ref()
                .map(|ps| ps.iter().map(|p| input::element(&r, p)).collect::<Result<Vec<_>>>())
                .transpose()?;
            skeleton(&r, pointing.as_deref(), g.cap)
        }
        Command::Horn { hom, base, steps } => {
            let f = input::hom(hom)?;
            let base = input::element(f.dom(), base)?;
            let steps = parse_steps(&f, steps)?;
            horn(&f, base, steps)
        }
        Command::WordEq { rack: r, u, v } => word_eq(&rack(r)?, u, v, g.depth),
        Command::Suite(_) => unreachable!("handled separately"),
    }
}

fn suite(args: &SuiteArgs, g: &Global) -> ExitCode {
    let defaults = RunConfig::default();
    let cfg = RunConfig {
        seed: args.seed.unwrap_or(defaults.seed),
        closure_cap: g.cap,
        rewrite_depth: g.depth,
        horn_samples: args.horn_samples.unwrap_or(defaults.horn_samples),
        samples: args.samples.unwrap_or(defaults.samples),
        free_samples: args.free_samples.unwrap_or(defaults.free_samples),
        kernel_words: args.kernel_words.unwrap_or(defaults.kernel_words),
        output: if g.json { OutputMode::Json } else { OutputMode::Text },
        mutate: args.mutate_table,
        exec: if args.sequential { Exec::Sequential } else { Exec::Parallel },
        ..defaults
    };
    let all = properties();
    if args.list {
        for p in &all {
            println!("{:<14} {}", p.module, p.name);
        }
        return ExitCode::SUCCESS;
    }
    let selected: Vec<usize> = (0..all.len())
        .filter(|&i| args.module.as_deref().is_none_or(|m| all[i].module == m))
        .filter(|&i| args.property.as_deref().is_none_or(|n| all[i].name == n))
        .collect();
    if selected.is_empty() {
        eprintln!("error: no property matches the selection");
        return ExitCode::from(2);
    }
    let report = SuiteReport {
        seed: cfg.seed,
        mutate: cfg.mutate,
        properties: selected.iter().map(|&i| run_property(i, &all[i], &cfg)).collect(),
    };
    if g.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{report}");
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = format_of(&cli.global);
    if let Command::Suite(args) = &cli.command {
        return suite(args, &cli.global);
    }
    match run(&cli.command, &cli.global) {
        Ok(rep) => {
            println!("{}", rep.render(format));
            ExitCode::from(rep.exit_code())
        }
        Err(e) => {
            let (code, msg) = error_exit(op_name(&cli.command), &e, format);
            if format == Format::Json {
                println!("{msg}");
            } else {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn op_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Classify { .. } => "classify",
        Command::Conj { .. } => "conj",
        Command::Pi0 { .. } => "pi0",
        Command::Component { .. } => "component",
        Command::Inn { .. } => "inn",
        Command::Pth { .. } => "pth",
        Command::Abelianize { .. } => "abelianize",
        Command::Covering { .. } => "covering",
        Command::Trivial { .. } => "trivial",
        Command::Normal { .. } => "normal",
        Command::Centralize { .. } => "centralize",
        Command::Frq { .. } => "frq",
        Command::Pullback { .. } => "pullback",
        Command::EndpointCover { .. } => "endpoint-cover",
        Command::Skeleton { .. } => "skeleton",
        Command::Horn { .. } => "horn",
        Command::WordEq { .. } => "word-eq",
        Command::Suite(_) => "suite",
    }
}
