//! The `koszul` executable: loads corpus files, computes bar, cobar and
//! Koszul dual complexes, and runs the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use koszul::bar::{
    cobar, external_relative_tensor, koszul_dual_algebra, koszul_dual_module, relative_tensor, BarComplex, Window,
};
use koszul::chains::ChainComplex;
use koszul::dgalg::{DgAlgebra, DgBimodule};
use koszul::field::SUPPORTED_PRIMES;
use koszul::report::Report;
use koszul::twarr::twarr_check;
use koszul::{corpus, io, verify, Error, Field, Fp, Result, Q};

#[derive(Parser, Debug)]
#[command(name = "koszul", version, about = "Exact bar/cobar constructions and Koszul duals of dg algebras")]
struct Cli {
    /// Coefficient field: `Q` or `Fp:P` for a supported prime `P`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Seed for randomized verification samples.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The bar complex `M ⊗ T(sĀ) ⊗ N`, by default with `M = N = 𝟙`.
    Bar {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArg,
    },
    /// `M ⊗_A N` for an `A`-right module `M` and an `A`-left module `N`.
    Reltensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Defaults to the right algebra of `--left`.
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArg,
    },
    /// `N ⊗_A M` for an algebra-sector bimodule `N` and a module-sector left module `M`.
    ExtReltensor {
        #[arg(long)]
        bimodule: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// The Koszul dual coalgebra `𝟙 ⊗_A 𝟙`.
    Dual {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// The Koszul dual comodule `𝟙 ⊗_A X` of a left module.
    DualModule {
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// The cobar construction on the Koszul dual, `ΩB(A)`.
    Cobar {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Law checks; the exit code is 0 iff there are no failures.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct WindowArg {
    /// Degrees `LO:HI` to report.
    #[arg(long, default_value = "0:8")]
    window: String,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Colors, composition, φ functoriality, bar index and slice terminality.
    Operads {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
    },
    /// The Segal condition on a generated sample of bimodules.
    Segal {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Pairing, universal objects, adjunction and colimits of a twisted arrow category.
    Twarr {
        #[arg(long)]
        category: PathBuf,
    },
    /// Tensor compatibility of the relative tensor product on random instances.
    Compat {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value = "0:4")]
        window: String,
    },
    /// Both bracketings of the shipped 3-module.
    Assoc {
        #[arg(long, default_value = "0:6")]
        window: String,
    },
}

#[derive(Serialize)]
struct Row {
    degree: i64,
    rank: usize,
    edge: bool,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct Table {
    command: &'static str,
    field: String,
    object: String,
    window: [i64; 2],
    rows: Vec<Row>,
}

/// What a command prints, and whether it counts as a verification failure.
struct Output {
    text: String,
    failed: bool,
}

fn table<F: Field>(command: &'static str, object: &str, c: &ChainComplex<F>, w: Window) -> Table {
    let rows = c
        .homology_ranks(w.lo, w.hi)
        .into_iter()
        .map(|h| Row { degree: h.degree, rank: h.rank, edge: h.edge, dim: c.dim(h.degree), weights: None })
        .collect();
    Table { command, field: F::name(), object: object.to_string(), window: [w.lo, w.hi], rows }
}

fn bar_table<F: Field>(command: &'static str, bar: &BarComplex<F>, w: Window) -> Table {
    let mut t = table(command, bar.module().name(), bar.complex(), w);
    let c = bar.complex();
    for row in &mut t.rows {
        if c.degrees().contains(&row.degree) {
            row.weights = Some(bar.weight_dims(row.degree));
        }
    }
    t
}

fn render(t: &Table, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(t).expect("table serializes") + "\n",
        Format::Tsv => {
            let weights = t.rows.iter().any(|r| r.weights.is_some());
            let mut s = String::from("degree\trank\tedge\tdim");
            if weights {
                s.push_str("\tweights");
            }
            s.push('\n');
            for r in &t.rows {
                s.push_str(&format!("{}\t{}\t{}\t{}", r.degree, r.rank, r.edge, r.dim));
                if weights {
                    let w: Vec<String> = r.weights.iter().flatten().map(usize::to_string).collect();
                    s.push('\t');
                    s.push_str(&w.join(","));
                }
                s.push('\n');
            }
            s
        }
    }
}

fn render_reports(reports: &[Report], format: Format) -> Output {
    let failed = reports.iter().any(|r| !r.passed());
    let text = match format {
        Format::Json => {
            let parts: Vec<String> = reports.iter().map(Report::to_json).collect();
            if parts.len() == 1 {
                parts[0].clone() + "\n"
            } else {
                format!("[\n{}\n]\n", parts.join(",\n"))
            }
        }
        Format::Tsv => {
            let mut s = String::from("law\tcases_checked\tfailures\n");
            for r in reports {
                s.push_str(&format!("{}\t{}\t{}\n", r.law, r.cases_checked, r.failure_count()));
                for f in &r.failures {
                    s.push_str(&format!("#\t{f}\n"));
                }
            }
            s
        }
    };
    Output { text, failed }
}

fn run<F: Field>(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    let done = |t: Table| Ok(Output { text: render(&t, format), failed: false });
    match &cli.command {
        Command::Bar { algebra, left, right, window } => {
            let w = Window::parse(&window.window)?;
            let a = Arc::new(io::load_algebra::<F>(algebra)?);
            let k = Arc::new(DgAlgebra::unit_algebra());
            let (m, n) = match (left, right) {
                (Some(l), Some(r)) => (io::load_bimodule(l)?, io::load_bimodule(r)?),
                _ => (DgBimodule::trivial(k.clone(), a.clone()), DgBimodule::trivial(a.clone(), k)),
            };
            done(bar_table("bar", &relative_tensor(&m, &a, &n, w)?, w))
        }
        Command::Reltensor { left, right, algebra, window } => {
            let w = Window::parse(&window.window)?;
            let m = io::load_bimodule::<F>(left)?;
            let n = io::load_bimodule(right)?;
            let a = match algebra {
                Some(p) => Arc::new(io::load_algebra(p)?),
                None => m.right().clone(),
            };
            done(bar_table("reltensor", &relative_tensor(&m, &a, &n, w)?, w))
        }
        Command::ExtReltensor { bimodule, module, window } => {
            let w = Window::parse(&window.window)?;
            let n = io::load_bimodule::<F>(bimodule)?;
            let m = io::load_left_module(module)?;
            let x = external_relative_tensor(&n, &m, w)?;
            done(table("ext-reltensor", x.name(), x.complex(), w))
        }
        Command::Dual { algebra, window } => {
            let w = Window::parse(&window.window)?;
            let a = Arc::new(io::load_algebra::<F>(algebra)?);
            let c = koszul_dual_algebra(&a, w)?;
            done(table("dual", c.name(), c.complex(), w))
        }
        Command::DualModule { module, window } => {
            let w = Window::parse(&window.window)?;
            let x = io::load_left_module::<F>(module)?;
            let c = koszul_dual_module(x.algebra(), &x, w)?;
            done(table("dual-module", c.name(), c.complex(), w))
        }
        Command::Cobar { algebra, window } => {
            let w = Window::parse(&window.window)?;
            let a = Arc::new(io::load_algebra::<F>(algebra)?);
            let b = koszul_dual_algebra(&a, Window::new(0, w.hi + 1))?;
            let omega = cobar(&b, w)?;
            done(table("cobar", omega.name(), omega.complex(), w))
        }
        Command::Verify { suite } => {
            let reports = match suite {
                Suite::Operads { max_n, max_k } => vec![verify::operads_check(*max_n, *max_k)],
                Suite::Segal { n } => vec![verify::segal_report::<F>(*n, cli.seed)?],
                Suite::Twarr { category } => vec![twarr_check(&io::load_category(category)?)],
                Suite::Compat { instances, window } => {
                    vec![verify::compat_check::<F>(*instances, cli.seed, Window::parse(window)?)?]
                }
                Suite::Assoc { window } => {
                    vec![verify::assoc_check(&corpus::three_module::<F>()?, Window::parse(window)?)?]
                }
            };
            Ok(render_reports(&reports, format))
        }
    }
}

fn parse_field(s: &str) -> Result<Option<u64>> {
    if s == "Q" {
        return Ok(None);
    }
    let bad = |message: String| Error::Parse { pointer: String::new(), message };
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| bad(format!("field `{s}` is neither `Q` nor `Fp:P`")))?;
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(bad(format!("unsupported prime {p}; supported: {SUPPORTED_PRIMES:?}")));
    }
    Ok(Some(p))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    macro_rules! primes {
        ($($p:literal),*) => {
            match parse_field(&cli.field)? {
                None => run::<Q>(cli),
                $(Some($p) => run::<Fp<$p>>(cli),)*
                Some(p) => unreachable!("prime {p} is listed but not dispatched"),
            }
        };
    }
    primes!(2, 3, 5, 7, 11, 13, 65521, 2147483647)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                eprintln!("error: verification reported failures");
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
