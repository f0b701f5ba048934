//! `mcs`: build, check and search for magic Cayley-sudoku tables.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a checked property or
//! hypothesis fails, 3 the search was inconclusive.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mcs_core::construct::{
    abelian_reps, build_embedding_group, build_extraspecial_instance, check_mcs_hypotheses, construction1_canonical,
    magic_table, ConstructionError,
};
use mcs_core::fixtures::{fixture_text, FIXTURE_NAMES};
use mcs_core::search::OutcomeKind;
use mcs_core::spec_lang::build_group;
use mcs_core::table_file::{read_table, render_ascii, render_csv, write_table};
use mcs_core::verify::{modular_magic_report, verify};
use mcs_core::{
    decide_magic_existence, replay_certificate, AnyGrid, CellGrid, Certificate, Checks, ElementId, ExtraSpecialKind,
    FiniteGroup, MagicInstance, SearchConfig, SearchMode, Side, Subgroup, SudokuTable,
};

// Write errors (a closed pipe, typically) are ignored rather than panicking.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

macro_rules! put {
    ($($t:tt)*) => {{
        let _ = write!(io::stdout(), $($t)*);
    }};
}

const EXIT_USAGE: u8 = 1;
const EXIT_PROPERTY: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "mcs", version, about = "Magic Cayley-sudoku tables: construction, verification and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print basic invariants of a group
    Group {
        /// Group spec, e.g. "C3 x C3", "S3", "Heis(5)", "M(3)"
        spec: String,
    },
    /// Build a table
    #[command(subcommand)]
    Construct(Construct),
    /// Check a table file
    Verify {
        /// Table file, or - for standard input
        file: PathBuf,
        /// Require magic blocks (rows, columns, main diagonals)
        #[arg(long)]
        magic: bool,
        /// Require pandiagonal magic blocks
        #[arg(long)]
        pandiagonal: bool,
        /// Also report left-to-right broken diagonal products
        #[arg(long)]
        left_to_right: bool,
        /// Treat the file as a modular magic sudoku grid over Z_(k^2)
        #[arg(long)]
        modular: bool,
    },
    /// Decide whether a magic table exists by exhaustive search
    Search {
        spec: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Magic)]
        mode: ModeArg,
        /// Worker threads for the pruning phase
        #[arg(long)]
        threads: Option<usize>,
        /// Re-check the certificate with the independent enumerator
        #[arg(long)]
        replay: bool,
        /// Disable the rotation symmetry reduction in pandiagonal mode
        #[arg(long)]
        unreduced: bool,
        /// Write the certificate to a file as well
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Write a witness table file, if one is found
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Re-check a search certificate
    Replay { spec: String, certificate: PathBuf },
    /// Render a table file
    Render {
        file: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Print a bundled example table
    Fixture {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
        name: String,
        #[arg(long)]
        ascii: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Cayley-sudoku table from the cosets of a subgroup
    Sudoku {
        spec: String,
        /// Generators of the subgroup, by element name
        #[arg(long, num_args = 1.., required = true)]
        subgroup: Vec<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Magic table from a central subgroup and coset representatives
    Magic {
        spec: String,
        /// Generators of the central subgroup N, by element name
        #[arg(long = "center-subgroup", num_args = 1.., required = true)]
        center_subgroup: Vec<String>,
        /// Left coset representatives of N, in order
        #[arg(long, num_args = 1..)]
        reps: Option<Vec<String>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// H x H x Z_|H| x Z_|H| for a group H, built and verified
    Embed {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extra-special group of order p^3 times Z_p, built and verified
    Extraspecial {
        p: usize,
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Write the table file here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print an ASCII rendering instead of the table file
    #[arg(long)]
    ascii: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Magic,
    Pandiagonal,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    #[value(name = "expP")]
    ExpP,
    #[value(name = "expP2")]
    ExpP2,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Group { spec } => cmd_group(&spec),
        Command::Construct(c) => match c {
            Construct::Sudoku { spec, subgroup, out } => cmd_sudoku(&spec, &subgroup, &out),
            Construct::Magic { spec, center_subgroup, reps, out } => {
                cmd_magic(&spec, &center_subgroup, reps.as_deref(), &out)
            }
            Construct::Embed { spec, output } => {
                let h = group(&spec)?;
                let inst = build_embedding_group(&h).map_err(|e| Failure::usage(e.to_string()))?;
                say!("H: {} (order {})", h.spec(), h.order());
                finish_instance(&inst, output.as_deref())
            }
            Construct::Extraspecial { p, kind, output } => {
                let kind = match kind {
                    KindArg::ExpP => ExtraSpecialKind::ExponentP,
                    KindArg::ExpP2 => ExtraSpecialKind::ExponentP2,
                };
                let (e, inst) = build_extraspecial_instance(p, kind).map_err(|e| Failure::usage(e.to_string()))?;
                say!("E: {} ({kind}, order {})", e.group.spec(), e.group.order());
                let pu = p as u64;
                let double = (0..pu).all(|i| (0..pu).all(|j| e.double_product(i, j) == e.group.identity()));
                say!("double products trivial: {}", yes_no(double));
                finish_instance(&inst, output.as_deref())
            }
        },
        Command::Verify { file, magic, pandiagonal, left_to_right, modular } => {
            cmd_verify(&file, magic, pandiagonal, left_to_right, modular)
        }
        Command::Search { spec, mode, threads, replay, unreduced, certificate, witness } => {
            cmd_search(&spec, mode, threads, replay, unreduced, certificate.as_deref(), witness.as_deref())
        }
        Command::Replay { spec, certificate } => {
            let g = group(&spec)?;
            let cert = Certificate::parse(&read_input(&certificate)?).map_err(|e| Failure::usage(e.to_string()))?;
            match replay_certificate(&g, &cert) {
                Ok(()) => {
                    say!("replay: ok");
                    Ok(0)
                }
                Err(e) => {
                    say!("replay: {e}");
                    Ok(EXIT_PROPERTY)
                }
            }
        }
        Command::Render { file, csv } => {
            let grid = load(&file)?;
            let g = grid.as_grid();
            put!("{}", if csv { render_csv(g) } else { render_ascii(g) });
            Ok(0)
        }
        Command::Fixture { name, ascii } => {
            let text = fixture_text(&name).ok_or_else(|| Failure::usage(format!("unknown fixture {name}")))?;
            if ascii {
                let grid = read_table(text).map_err(|e| Failure::usage(e.to_string()))?;
                put!("{}", render_ascii(grid.as_grid()));
            } else {
                put!("{}", write_table(read_table(text).map_err(|e| Failure::usage(e.to_string()))?.as_grid()));
            }
            Ok(0)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn group(spec: &str) -> Result<FiniteGroup, Failure> {
    build_group(spec).map_err(|e| Failure::usage(format!("group spec {spec:?}: {e}")))
}

fn elements(g: &FiniteGroup, names: &[String]) -> Result<Vec<ElementId>, Failure> {
    names
        .iter()
        .flat_map(|n| n.split(',').filter(|s| !s.is_empty()))
        .map(|n| g.element(n.trim()).map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<AnyGrid, Failure> {
    read_table(&read_input(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(table: &SudokuTable, out: &OutputArgs) -> Result<(), Failure> {
    let text = if out.ascii { render_ascii(table) } else { write_table(table) };
    match &out.output {
        Some(path) => {
            write_file(path, &text)?;
            say!("wrote {}", path.display());
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string()))?;
        }
    }
    Ok(())
}

fn cmd_group(spec: &str) -> CmdResult {
    let g = group(spec)?;
    say!("group: {}", g.spec());
    say!("order: {}", g.order());
    say!("exponent: {}", g.exponent());
    say!("abelian: {}", yes_no(g.is_abelian()));
    say!("center size: {}", g.center().order());
    say!("involutions: {}", g.involution_count());
    if g.is_abelian() {
        say!("product of all elements: {}", g.name(g.product_of(g.elements())));
    }
    Ok(0)
}

fn cmd_sudoku(spec: &str, gens: &[String], out: &OutputArgs) -> CmdResult {
    let g = group(spec)?;
    let h = g.subgroup_generated(&elements(&g, gens)?).map_err(|e| Failure::usage(e.to_string()))?;
    let table = construction1_canonical(&h).map_err(|e| Failure::usage(e.to_string()))?;
    emit(&table, out)?;
    Ok(0)
}

fn cmd_magic(spec: &str, n_gens: &[String], reps: Option<&[String]>, out: &OutputArgs) -> CmdResult {
    let g = group(spec)?;
    let n = g.subgroup_generated(&elements(&g, n_gens)?).map_err(|e| Failure::usage(e.to_string()))?;
    let t = match reps {
        Some(names) => {
            mcs_core::CosetReps::new(&n, elements(&g, names)?, Side::Left).map_err(|e| Failure::usage(e.to_string()))?
        }
        None if g.is_abelian() => match abelian_reps(&g, &n) {
            Ok(t) => t,
            Err(ConstructionError::NotPerfectSquare(order)) => {
                return Err(Failure {
                    code: EXIT_PROPERTY,
                    message: format!("group order {order} is not a perfect square"),
                })
            }
            Err(err) => {
                // report the hypotheses against the canonical representatives
                eprintln!("no suitable representatives: {err}");
                print_hypotheses(&g, &n, n.coset_reps(Side::Left))?;
                return Ok(EXIT_PROPERTY);
            }
        },
        None => return Err(Failure::usage("--reps is required for nonabelian groups")),
    };
    let inst = match MagicInstance::new(&g, n, t) {
        Ok(inst) => inst,
        Err(ConstructionError::NotPerfectSquare(order)) => {
            return Err(Failure {
                code: EXIT_PROPERTY,
                message: format!("group order {order} is not a perfect square"),
            })
        }
        Err(e) => return Err(Failure::usage(e.to_string())),
    };
    let report = check_mcs_hypotheses(&inst).map_err(|e| Failure::usage(e.to_string()))?;
    if !report.overall {
        put!("{report}");
        return Ok(EXIT_PROPERTY);
    }
    let table = magic_table(&inst).map_err(|e| Failure::usage(e.to_string()))?;
    emit(&table, out)?;
    Ok(0)
}

fn print_hypotheses(g: &FiniteGroup, n: &Subgroup, t: mcs_core::CosetReps) -> Result<(), Failure> {
    match MagicInstance::new(g, n.clone(), t) {
        Ok(inst) => {
            let report = check_mcs_hypotheses(&inst).map_err(|e| Failure::usage(e.to_string()))?;
            put!("{report}");
        }
        Err(e) => say!("{e}"),
    }
    Ok(())
}

fn finish_instance(inst: &MagicInstance, output: Option<&Path>) -> CmdResult {
    let g = inst.group();
    say!("G: {} (order {})", g.spec(), g.order());
    say!("k: {}", inst.k());
    let report = check_mcs_hypotheses(inst).map_err(|e| Failure::usage(e.to_string()))?;
    put!("{report}");
    if !report.overall {
        return Ok(EXIT_PROPERTY);
    }
    let table = magic_table(inst).map_err(|e| Failure::usage(e.to_string()))?;
    let v = verify(&table, &table.layout(), Checks::pandiagonal()).map_err(|e| Failure::usage(e.to_string()))?;
    put!("{}", v.render(g));
    if let Some(path) = output {
        write_file(path, &write_table(&table))?;
        say!("wrote {}", path.display());
    }
    Ok(if v.passed() { 0 } else { EXIT_PROPERTY })
}

fn cmd_verify(file: &Path, magic: bool, pandiagonal: bool, left_to_right: bool, modular: bool) -> CmdResult {
    let grid = load(file)?;
    let g = grid.as_grid();
    let layout = g.layout();
    let report = if modular {
        modular_magic_report(g, &layout)
    } else {
        let checks =
            Checks { cayley: matches!(grid, AnyGrid::Labeled(_)), sudoku: true, magic, pandiagonal, left_to_right };
        verify(g, &layout, checks)
    }
    .map_err(|e| Failure { code: EXIT_PROPERTY, message: e.to_string() })?;
    put!("{}", report.render(g.group()));
    Ok(if report.passed() { 0 } else { EXIT_PROPERTY })
}

fn cmd_search(
    spec: &str,
    mode: ModeArg,
    threads: Option<usize>,
    replay: bool,
    unreduced: bool,
    cert_path: Option<&Path>,
    witness_path: Option<&Path>,
) -> CmdResult {
    let g = group(spec)?;
    let mode = match mode {
        ModeArg::Magic => SearchMode::Magic,
        ModeArg::Pandiagonal => SearchMode::Pandiagonal,
    };
    if threads == Some(0) {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let config = SearchConfig { threads, unreduced, ..SearchConfig::default() };
    let out = decide_magic_existence(&g, mode, &config).map_err(|e| Failure::usage(e.to_string()))?;
    let text = out.certificate.to_text();
    put!("{text}");
    eprintln!("elapsed: {:.3} s", out.elapsed.as_secs_f64());
    if let Some(path) = cert_path {
        write_file(path, &text)?;
    }
    if let Some(w) = &out.witness {
        say!("witness:");
        put!("{}", render_ascii(w));
        if let Some(path) = witness_path {
            write_file(path, &write_table(w))?;
        }
    }
    if replay && out.kind() != OutcomeKind::Inconclusive {
        match replay_certificate(&g, &out.certificate) {
            Ok(()) => say!("replay: ok"),
            Err(e) => {
                say!("replay: {e}");
                return Ok(EXIT_PROPERTY);
            }
        }
    }
    Ok(match out.kind() {
        OutcomeKind::Witness | OutcomeKind::Nonexistence => 0,
        OutcomeKind::Inconclusive => EXIT_INCONCLUSIVE,
    })
}
