use clap::{Parser, Subcommand, ValueEnum};
use exela_cli::{CliError, Globals, Output};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "exela",
    version,
    about = "Harmonic decomposition, symmetry classes and exotic structures of 3D elasticity tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative symmetry-detection tolerance.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,

    /// Seed for randomised searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write output to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a tensor into its harmonic parts.
    Decompose {
        /// Explicit decomposition: cghd or swhd.
        #[arg(long, default_value = "cghd")]
        scheme: String,
        /// Tensor document ("-" for stdin).
        input: Option<PathBuf>,
    },
    /// Full report: structures, catalog match, residuals, spectrum.
    Classify { input: Option<PathBuf> },
    /// Geometric structure (the seven class labels).
    Structure {
        #[arg(long, default_value = "cghd")]
        scheme: String,
        input: Option<PathBuf>,
    },
    /// Clips product of two symmetry classes.
    Clips { a: String, b: String },
    /// Structure signatures realising a class above orthotropy.
    Enumerate { class: String },
    /// Build a normal form: ti, uti, idti, iyti, cubic, isotropic.
    #[command(name = "normal-form")]
    NormalForm {
        kind: String,
        #[arg(required = true, allow_negative_numbers = true)]
        params: Vec<f64>,
    },
    /// Nearest tensor within a structure's orbit closure.
    Project {
        /// Catalog label (e.g. "O(2)^e_2") or material name (UTI, IDTI, IYTI).
        #[arg(long)]
        target: String,
        #[arg(long, default_value = "cghd")]
        scheme: String,
        input: Option<PathBuf>,
    },
    /// Directional Young's modulus over an equiangular grid.
    Young {
        /// Grid sizes THETA,PHI.
        #[arg(long)]
        grid: String,
        input: Option<PathBuf>,
    },
    /// Invert a tensor (stiffness <-> compliance).
    Invert { input: Option<PathBuf> },
    /// Eigenvalues of the Kelvin matrix.
    Eig { input: Option<PathBuf> },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Validation(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let globals = Globals {
        tol: cli.tol,
        seed: cli.seed,
    };
    let csv = cli.format == Format::Csv;
    let output = match &cli.command {
        Command::Decompose { scheme, input } => {
            exela_cli::cmd_decompose(&read_input(input)?, scheme, &globals)?
        }
        Command::Classify { input } => exela_cli::cmd_classify(&read_input(input)?, &globals)?,
        Command::Structure { scheme, input } => {
            exela_cli::cmd_structure(&read_input(input)?, scheme, &globals)?
        }
        Command::Clips { a, b } => exela_cli::cmd_clips(a, b, csv)?,
        Command::Enumerate { class } => exela_cli::cmd_enumerate(class, csv)?,
        Command::NormalForm { kind, params } => exela_cli::cmd_normal_form(kind, params)?,
        Command::Project {
            target,
            scheme,
            input,
        } => exela_cli::cmd_project(&read_input(input)?, target, scheme, &globals)?,
        Command::Young { grid, input } => exela_cli::cmd_young(&read_input(input)?, grid, csv)?,
        Command::Invert { input } => exela_cli::cmd_invert(&read_input(input)?)?,
        Command::Eig { input } => exela_cli::cmd_eig(&read_input(input)?)?,
    };
    if csv && matches!(output, Output::Json(_)) {
        return Err(CliError::Validation(
            "csv output is only available for clips, enumerate and young".into(),
        ));
    }
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rendered = match run(&cli) {
        Ok(Output::Csv(text)) => text,
        Ok(out @ Output::Json(_)) => match out.render_json() {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
        },
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(match e {
                CliError::Validation(_) => 2,
                CliError::Numerical(_) => 3,
            });
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::SUCCESS
}
