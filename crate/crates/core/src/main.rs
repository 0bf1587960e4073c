//! Command-line front end. Exit codes: 0 when every requested check passes,
//! 1 when a check or invariant fails, 2 when the input is malformed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use paraorbit::format;
use paraorbit::instances;
use paraorbit::orbit::{OrbitError, OrbitInstance};
use paraorbit::para::{enumerate, ParaError, ParaMorphism};
use paraorbit::report::Report;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_MALFORMED: u8 = 2;

#[derive(Parser)]
#[command(name = "paraorbit", version, about = "exact engine for paracyclic duality and orbit 2-categories", disable_help_subcommand = true)]
struct Cli {
    /// Output format for results and reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Paracyclic morphism calculus
    #[command(subcommand)]
    Para(ParaCommand),
    /// Orbit-category checks on an instance file
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// The built-in instance catalog
    #[command(subcommand)]
    Instances(InstancesCommand),
}

#[derive(Subcommand)]
enum ParaCommand {
    /// Cyclic dual of a morphism literal `n m : v0 ... vn`
    Dual { morphism: String },
    /// Composite `G ∘ F` of two literals (apply F first)
    Compose { g: String, f: String },
    /// Validate a literal and classify it
    Check { morphism: String },
    /// List all morphisms n -> m with the window start within `window`
    /// periods of the fundamental domain
    Enumerate(EnumerateArgs),
    /// Count an enumeration, filtered by subcategory or up to cyclic shift
    Count(CountArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    window: usize,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    window: usize,
    /// delta / k: count members; lambda: count classes modulo full turns
    #[arg(long = "in", value_enum)]
    filter: CountFilter,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CountFilter {
    Delta,
    K,
    Lambda,
}

#[derive(Subcommand)]
enum OrbitCommand {
    /// Run all structural validators on an instance file
    Validate { file: PathBuf },
    /// List the coset morphisms between two labelled objects
    Hom(HomArgs),
    /// List the homotopy classes between two labelled objects
    Ho(HomArgs),
    /// Dual of one homotopy class, by index
    Dual(DualArgs),
    /// Run the full theorem suite
    Theorem { file: PathBuf },
}

#[derive(Args)]
struct HomArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    file: PathBuf,
}

#[derive(Args)]
struct DualArgs {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// Index of the class in `orbit ho` order
    #[arg(long)]
    class: usize,
    file: PathBuf,
}

#[derive(Subcommand)]
enum InstancesCommand {
    /// List the catalog with provenance notes
    List,
    /// Write the named instance file
    Emit {
        name: String,
        /// Output path; `-` writes to stdout (default: `<name>.json`)
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the entry's expected-check list
    Check { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command, format) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

enum CliError {
    Malformed(String),
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Invariant(_) => EXIT_CHECK_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Malformed(msg) | CliError::Invariant(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ParaError> for CliError {
    fn from(err: ParaError) -> Self {
        match err {
            // the literal tokenizes but breaks a morphism invariant
            ParaError::NotMonotone { .. }
            | ParaError::PeriodExceeded { .. }
            | ParaError::RankMismatch { .. }
            | ParaError::IndexOutOfRange { .. } => CliError::Invariant(err.to_string()),
            ParaError::BadLiteral { .. } | ParaError::WrongValueCount { .. } => {
                CliError::Malformed(err.to_string())
            }
        }
    }
}

impl From<format::FormatError> for CliError {
    fn from(err: format::FormatError) -> Self {
        CliError::Malformed(err.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(err: OrbitError) -> Self {
        match err {
            OrbitError::UnknownObject(_) | OrbitError::ClassOutOfRange { .. } => {
                CliError::Malformed(err.to_string())
            }
            _ => CliError::Invariant(err.to_string()),
        }
    }
}

fn run(command: Command, format: Format) -> Result<ExitCode, CliError> {
    match command {
        Command::Para(cmd) => run_para(cmd, format),
        Command::Orbit(cmd) => run_orbit(cmd, format),
        Command::Instances(cmd) => run_instances(cmd, format),
    }
}

fn morphism_json(f: &ParaMorphism) -> serde_json::Value {
    serde_json::json!({
        "n": f.source_rank(),
        "m": f.target_rank(),
        "values": f.values(),
    })
}

fn print_morphism(f: &ParaMorphism, format: Format) {
    match format {
        Format::Text => println!("{f}"),
        Format::Structured => println!("{}", morphism_json(f)),
    }
}

fn run_para(cmd: ParaCommand, format: Format) -> Result<ExitCode, CliError> {
    match cmd {
        ParaCommand::Dual { morphism } => {
            let f = ParaMorphism::parse(&morphism)?;
            print_morphism(&f.cyclic_dual(), format);
            Ok(ExitCode::SUCCESS)
        }
        ParaCommand::Compose { g, f } => {
            let outer = ParaMorphism::parse(&g)?;
            let inner = ParaMorphism::parse(&f)?;
            print_morphism(&outer.compose(&inner)?, format);
            Ok(ExitCode::SUCCESS)
        }
        ParaCommand::Check { morphism } => {
            let f = ParaMorphism::parse(&morphism)?;
            match format {
                Format::Text => println!(
                    "valid n={} m={} class={} in_k={} in_delta={}",
                    f.source_rank(),
                    f.target_rank(),
                    f.classify(),
                    f.in_k(),
                    f.in_delta()
                ),
                Format::Structured => println!(
                    "{}",
                    serde_json::json!({
                        "morphism": morphism_json(&f),
                        "class": f.classify().to_string(),
                        "in_k": f.in_k(),
                        "in_delta": f.in_delta(),
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        ParaCommand::Enumerate(args) => {
            let all = enumerate(args.n, args.m, args.window);
            match format {
                Format::Text => {
                    for f in &all {
                        println!("{f}");
                    }
                }
                Format::Structured => {
                    let items: Vec<_> = all.iter().map(morphism_json).collect();
                    println!("{}", serde_json::Value::Array(items));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        ParaCommand::Count(args) => {
            let all = enumerate(args.n, args.m, args.window);
            let count = match args.filter {
                CountFilter::Delta => all.iter().filter(|f| f.in_delta()).count(),
                CountFilter::K => all.iter().filter(|f| f.in_k()).count(),
                CountFilter::Lambda => {
                    let classes: std::collections::BTreeSet<ParaMorphism> =
                        all.iter().map(|f| f.lambda_canonical()).collect();
                    classes.len()
                }
            };
            match format {
                Format::Text => println!("{count}"),
                Format::Structured => println!("{}", serde_json::json!({ "count": count })),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_instance(path: &PathBuf) -> Result<OrbitInstance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(format::parse_instance(&text)?)
}

/// Hom-level verbs only make sense on instances whose axioms hold.
fn load_valid_instance(path: &PathBuf) -> Result<OrbitInstance, CliError> {
    let inst = load_instance(path)?;
    if !inst.validate().passed() {
        return Err(CliError::Invariant(format!(
            "{} fails validation; run `orbit validate` for the report",
            path.display()
        )));
    }
    Ok(inst)
}

fn print_report(report: &Report, format: Format) -> ExitCode {
    print_report_with(report, &[], format)
}

fn print_report_with(report: &Report, extra: &[String], format: Format) -> ExitCode {
    match format {
        Format::Text => {
            print!("{}", report.render_text());
            for line in extra {
                println!("{line}");
            }
            let failures = report.failures().count();
            if failures == 0 {
                println!("result: all checks pass");
            } else {
                println!("result: {failures} check(s) failed");
            }
        }
        Format::Structured => println!(
            "{}",
            serde_json::json!({
                "checks": report.to_json(),
                "summary": extra,
                "passed": report.passed(),
            })
        ),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn run_orbit(cmd: OrbitCommand, format: Format) -> Result<ExitCode, CliError> {
    match cmd {
        OrbitCommand::Validate { file } => {
            let inst = load_instance(&file)?;
            Ok(print_report(&inst.validate(), format))
        }
        OrbitCommand::Hom(args) => {
            let inst = load_valid_instance(&args.file)?;
            let x = inst.object_index(&args.from)?;
            let y = inst.object_index(&args.to)?;
            let morphisms = inst.hom(x, y);
            let grp = inst.cm.source();
            match format {
                Format::Text => {
                    println!(
                        "hom({}, {}): {} morphisms",
                        args.from,
                        args.to,
                        morphisms.len()
                    );
                    for m in &morphisms {
                        println!("  {}*G[{}]", grp.label(m.rep), args.from);
                    }
                }
                Format::Structured => {
                    let items: Vec<_> = morphisms
                        .iter()
                        .map(|m| {
                            let coset: Vec<&str> = inst
                                .presheaf
                                .at(x)
                                .iter()
                                .map(|&h| grp.label(grp.mul(m.rep, h)))
                                .collect();
                            serde_json::json!({ "rep": grp.label(m.rep), "coset": coset })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "from": args.from,
                            "to": args.to,
                            "morphisms": items,
                        })
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        OrbitCommand::Ho(args) => {
            let inst = load_valid_instance(&args.file)?;
            let x = inst.object_index(&args.from)?;
            let y = inst.object_index(&args.to)?;
            let classes = inst.ho_hom(x, y)?;
            print_classes(&inst, &args.from, &args.to, &classes, format);
            Ok(ExitCode::SUCCESS)
        }
        OrbitCommand::Dual(args) => {
            let inst = load_valid_instance(&args.file)?;
            let x = inst.object_index(&args.from)?;
            let y = inst.object_index(&args.to)?;
            let classes = inst.ho_hom(x, y)?;
            let class = classes.get(args.class).ok_or(OrbitError::ClassOutOfRange {
                index: args.class,
                count: classes.len(),
            })?;
            let dual = inst.dual_morphism(class)?;
            let grp = inst.cm.source();
            let reps = |c: &paraorbit::HoMorphism| {
                c.reps
                    .iter()
                    .map(|&r| grp.label(r).to_string())
                    .collect::<Vec<_>>()
            };
            match format {
                Format::Text => {
                    println!(
                        "class {}: ho-hom({}, {}) reps {}",
                        args.class,
                        args.from,
                        args.to,
                        reps(class).join(" ")
                    );
                    println!(
                        "dual: ho-hom({}, {}) reps {}",
                        inst.preorder.label(dual.source),
                        inst.preorder.label(dual.target),
                        reps(&dual).join(" ")
                    );
                }
                Format::Structured => println!(
                    "{}",
                    serde_json::json!({
                        "class": { "from": args.from, "to": args.to, "reps": reps(class) },
                        "dual": {
                            "from": inst.preorder.label(dual.source),
                            "to": inst.preorder.label(dual.target),
                            "reps": reps(&dual),
                        },
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        OrbitCommand::Theorem { file } => {
            let inst = load_instance(&file)?;
            let report = inst.theorem_report();
            let summary: Vec<String> = inst
                .ho_class_summary()
                .unwrap_or_default()
                .into_iter()
                .map(|(from, to, count)| format!("ho-hom({from}, {to}): {count} classes"))
                .collect();
            Ok(print_report_with(&report, &summary, format))
        }
    }
}

fn print_classes(
    inst: &OrbitInstance,
    from: &str,
    to: &str,
    classes: &[paraorbit::HoMorphism],
    format: Format,
) {
    let grp = inst.cm.source();
    match format {
        Format::Text => {
            println!("ho-hom({}, {}): {} classes", from, to, classes.len());
            for (i, class) in classes.iter().enumerate() {
                let reps: Vec<&str> = class.reps.iter().map(|&r| grp.label(r)).collect();
                println!("  class {i}: reps {}", reps.join(" "));
            }
        }
        Format::Structured => {
            let items: Vec<_> = classes
                .iter()
                .map(|class| {
                    let reps: Vec<&str> = class.reps.iter().map(|&r| grp.label(r)).collect();
                    serde_json::json!({ "reps": reps })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({ "from": from, "to": to, "classes": items })
            );
        }
    }
}

fn run_instances(cmd: InstancesCommand, format: Format) -> Result<ExitCode, CliError> {
    match cmd {
        InstancesCommand::List => {
            match format {
                Format::Text => {
                    for entry in instances::catalog() {
                        println!("{}: {}", entry.name, entry.provenance);
                    }
                }
                Format::Structured => {
                    let items: Vec<_> = instances::catalog()
                        .iter()
                        .map(|e| serde_json::json!({ "name": e.name, "provenance": e.provenance }))
                        .collect();
                    println!("{}", serde_json::Value::Array(items));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        InstancesCommand::Emit { name, out } => {
            let inst =
                instances::build(&name).map_err(|e| CliError::Invariant(e.to_string()))?;
            let text = format::emit_instance(&inst);
            match out.as_deref() {
                Some("-") => print!("{text}"),
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| CliError::Malformed(format!("cannot write {path}: {e}")))?;
                    println!("wrote {path}");
                }
                None => {
                    let path = format!("{name}.json");
                    fs::write(&path, &text)
                        .map_err(|e| CliError::Malformed(format!("cannot write {path}: {e}")))?;
                    println!("wrote {path}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        InstancesCommand::Check { name } => {
            let report = instances::run_expected_checks(&name)
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            Ok(print_report(&report, format))
        }
    }
}
