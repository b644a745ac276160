use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinor_squeeze::cli::{self, FigureOutput, OutputFormat, DEFAULT_RESOLUTION, DEFAULT_STEPS, DEFAULT_TOL};

#[derive(Parser)]
#[command(name = "spinor-squeeze", version, about = "Squeezing and spin-spin correlations of two-spinor pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Gnuplot,
}

#[derive(Args)]
struct Common {
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: usize,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Closed-form vs pipeline tolerance; exceeding it exits with status 2.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Q_x, Q_y of the canonical family against theta.
    Fig1(Common),
    /// Canonical-family correlations D_xx, D_yy, D_zz with Q_x, Q_y.
    Fig2(Common),
    /// Time-dependent Q_x, Q_y against theta at fixed tau.
    Fig3 {
        /// tau = xi t in degrees.
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Time-dependent Lakin-frame correlations against theta at fixed tau.
    Fig4 {
        /// tau = xi t in degrees.
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Full report for a user-supplied state.
    Eval {
        /// Eight whitespace-separated reals: re im of the (++, +-, -+, --)
        /// amplitudes in that order. Normalized before evaluation.
        #[arg(long, allow_hyphen_values = true)]
        amps: String,
        /// Emit JSON instead of the text report.
        #[arg(long)]
        json: bool,
        /// Precision of the typed amplitudes, used for classification and
        /// the squeezing verdict.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time series of the evolved tilted product state.
    Evolve {
        /// Initial tilt in degrees.
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        /// Coupling strength (inverse time).
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
        /// Final time.
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn finish(res: spinor_squeeze::Result<FigureOutput>, common: &Common) -> ExitCode {
    let fig = match res {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let format = match common.format {
        Format::Csv => OutputFormat::Csv,
        Format::Gnuplot => OutputFormat::Gnuplot,
    };
    if let Err(e) = emit(&common.out, &fig.table.render(format)) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if !fig.within(common.tol) {
        eprintln!(
            "cross-check failed: max deviation {:e} exceeds tolerance {:e}",
            fig.max_deviation, common.tol
        );
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    // Usage errors share status 1 with bad input; 2 is kept for cross-check breaches.
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match args.command {
        Command::Fig1(c) => finish(cli::cmd_fig1(c.steps), &c),
        Command::Fig2(c) => finish(cli::cmd_fig2(c.steps), &c),
        Command::Fig3 { tau, common } => finish(cli::cmd_fig3(tau, common.steps), &common),
        Command::Fig4 { tau, common } => finish(cli::cmd_fig4(tau, common.steps), &common),
        Command::Evolve { theta, xi, t, common } => finish(cli::cmd_evolve(theta, xi, t, common.steps), &common),
        Command::Eval { amps, json, resolution, out } => {
            let report = match cli::parse_amps(&amps).and_then(|a| cli::cmd_eval(a, resolution)) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let text = if json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.render_text()
            };
            match emit(&out, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
