use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pgn_core::cli::{
    construct, parse_eta_rule, parse_mu_rule, parse_quad, render_svg, run_sweep, verify, CliError, ConstructSpec, Kind,
    OutputFormat, RenderOptions, SweepSpec,
};
use pgn_core::template::Template;

/// Construct, verify, sweep and draw self-similar n-templates with exact
/// arithmetic.
#[derive(Parser)]
#[command(name = "pgn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a template and print it as JSON.
    Construct {
        #[command(flatten)]
        params: BuildArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the verification battery on a template file or on builder flags.
    Verify {
        /// Template JSON; `-` reads stdin. Omit to build from flags.
        input: Option<PathBuf>,
        #[command(flatten)]
        params: BuildArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Tabulate a parameter grid described by a JSON spec.
    Sweep {
        /// Sweep spec JSON; `-` reads stdin.
        spec: PathBuf,
        /// Overrides the format in the spec.
        #[arg(long, value_parser = ["json", "csv"])]
        format: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a template as SVG.
    Render {
        /// Template JSON; `-` reads stdin. Omit to build from flags.
        input: Option<PathBuf>,
        #[command(flatten)]
        params: BuildArgs,
        #[arg(long, default_value_t = 2)]
        periods: usize,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long, default_value_t = 500.0)]
        height: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// sim, dual or trivial.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// A rational, `mu0`, `-t/n` or `interp:k/m`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// A rational, `nu0`, `-s/n` or `interp:k/m`.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// A rational, `sigma`/`gamma` or `frac:p/q`; selects the extended builder.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

impl BuildArgs {
    fn is_empty(&self) -> bool {
        self.kind.is_none() && self.n.is_none()
    }

    fn spec(&self) -> Result<ConstructSpec, CliError> {
        let kind: Kind = self.kind.as_deref().ok_or_else(|| CliError::Parse("missing --kind".into()))?.parse()?;
        let n = self.n.ok_or_else(|| CliError::Parse("missing --n".into()))?;
        let (x, mu) = match kind {
            Kind::Dual => (&self.s, &self.nu),
            _ => (&self.t, &self.mu),
        };
        Ok(ConstructSpec {
            kind,
            n,
            x: x.as_deref().map(parse_quad).transpose()?,
            mu: mu.as_deref().map(parse_mu_rule).transpose()?,
            eta: self.eta.as_deref().map(parse_eta_rule).transpose()?,
        })
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn load(input: &Option<PathBuf>, params: &BuildArgs) -> Result<Template, CliError> {
    match input {
        Some(path) => {
            if !params.is_empty() {
                return Err(CliError::Parse("give either a template file or builder flags, not both".into()));
            }
            Ok(Template::from_json(&read_input(path)?)?)
        }
        None => construct(&params.spec()?),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Construct { params, output } => {
            let t = construct(&params.spec()?)?;
            write_output(&output, &(t.to_json() + "\n"))
        }
        Command::Verify { input, params, output } => {
            let t = load(&input, &params)?;
            let report = verify(&t);
            write_output(&output, &(report.to_json() + "\n"))?;
            if report.ok {
                Ok(())
            } else {
                Err(CliError::Verification(report.failure_summary()))
            }
        }
        Command::Sweep { spec, format, output } => {
            let mut spec: SweepSpec =
                serde_json::from_str(&read_input(&spec)?).map_err(|e| CliError::Parse(format!("sweep spec: {e}")))?;
            match format.as_deref() {
                Some("csv") => spec.format = OutputFormat::Csv,
                Some("json") => spec.format = OutputFormat::Json,
                _ => {}
            }
            write_output(&output, &run_sweep(&spec)?.render()?)
        }
        Command::Render { input, params, periods, width, height, output } => {
            let t = load(&input, &params)?;
            write_output(&output, &render_svg(&t, &RenderOptions { periods, width, height })?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pgn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
