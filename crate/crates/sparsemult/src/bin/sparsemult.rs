use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sparsemult::cli::{self, AtPoint, JobSpec};
use sparsemult::error::Error;
use sparsemult::io::{
    parse_inline_coeffs, parse_inline_points, parse_polytopes_str, parse_system_str, SystemInput,
};
use sparsemult::rat::parse_rat;
use sparsemult::report::Format;
use sparsemult::support::{SparseSystem, SupportConfig};

/// Exact local intersection multiplicities of sparse polynomial systems,
/// their Gale and H duals, Newton diagrams, covolumes and bounds.
#[derive(Parser)]
#[command(name = "sparsemult", version, about)]
struct Cli {
    /// Output format
    #[arg(long, global = true, default_value = "table")]
    format: String,
    /// Seed for randomized repair and search subroutines
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// JSON input file ("-" reads stdin)
    #[arg(long)]
    file: Option<String>,
    /// Inline points: `;`-separated points of `,`-separated coordinates
    /// (a flat `,`-list is read as one-dimensional points)
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Inline coefficient rows: `;`-separated rows of `,`-separated rationals
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Base torus point (comma-separated rationals; defaults to all ones)
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
}

impl SystemArgs {
    fn load(&self) -> Result<SystemInput, Error> {
        if let Some(path) = &self.file {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::ParseError(e.to_string()))?;
                buf
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Error::ParseError(format!("{path}: {e}")))?
            };
            return parse_system_str(&text);
        }
        let (Some(points), Some(coeffs)) = (&self.points, &self.coeffs) else {
            return Err(Error::InvalidInput(
                "provide --file or both --points and --coeffs".into(),
            ));
        };
        let config = SupportConfig::new(parse_inline_points(points)?)?;
        let coeffs = parse_inline_coeffs(coeffs)?;
        let system = match &self.base {
            Some(b) => {
                let base = b
                    .split(',')
                    .map(|s| parse_rat(s.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                SparseSystem::with_base_point(config, coeffs, base)?
            }
            None => SparseSystem::new(config, coeffs)?,
        };
        Ok(SystemInput {
            system,
            b: None,
            d: None,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Local multiplicity at the all-ones point or the origin
    Mult {
        #[command(flatten)]
        system: SystemArgs,
        /// Where to take the multiplicity
        #[arg(long, default_value = "one")]
        at: String,
        /// Ladder ceiling (default 64)
        #[arg(long)]
        ceiling: Option<u64>,
        /// Also search for an integer coefficient representative
        #[arg(long)]
        integerize: bool,
    },
    /// Gale dual matrices and the Gale system
    Gale {
        #[command(flatten)]
        system: SystemArgs,
        /// Repair convenience by a random action: rows, b or d
        #[arg(long)]
        repair: Option<String>,
    },
    /// H-dual series
    Hdual {
        #[command(flatten)]
        system: SystemArgs,
        /// Series truncation order
        #[arg(long)]
        order: Option<u64>,
    },
    /// The four-system duality square
    Square {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Staircases and Newton diagrams of the shifted system
    Diagram {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Covolume of one convenient polytope or the mixed covolume of n
    Covolume {
        /// JSON file with {"polytopes": [...]} ("-" reads stdin)
        #[arg(long)]
        file: Option<String>,
        /// Inline vertices of a single polytope
        #[arg(long)]
        points: Option<String>,
    },
    /// Every applicable multiplicity bound, with certificates
    Bounds {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// The explicit witness system for (n, m)
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Cyclic configurations and the sharp codimension-one construction
    Cyclic {
        /// Comma-separated distinct integer parameters
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Ambient dimension (defaults to len(d) - 2, the circuit case)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Hypersurface multiplicity bounds sigma(n,m) and b(n,m)
    Hyper {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Regenerate a reference output (triangle, walkthrough, planar-grid,
    /// table1, high-multiplicity, witness-grid, all)
    Reproduce {
        target: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("SPARSEMULT_THREADS") {
        if v.parse::<usize>().is_err() {
            eprintln!("warning: ignoring invalid SPARSEMULT_THREADS={v:?}");
        }
        // computations are single-threaded; any positive cap is honored
    }
    let format = match cli.format.parse::<Format>() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match dispatch(cli) {
        Ok(Output::Report(report)) => {
            print!("{}", report.emit(format));
            ExitCode::SUCCESS
        }
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

enum Output {
    Report(sparsemult::report::Report),
    Raw(String),
}

fn dispatch(cli: Cli) -> Result<Output, Error> {
    let started = std::time::Instant::now();
    let seed = cli.seed;
    let job = match cli.command {
        Command::Mult {
            system,
            at,
            ceiling,
            integerize,
        } => {
            let at = match at.as_str() {
                "one" => AtPoint::One,
                "origin" => AtPoint::Origin,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown point {other:?} (use one or origin)"
                    )))
                }
            };
            JobSpec::Mult {
                input: system.load()?,
                at,
                ceiling,
                integerize,
                seed,
            }
        }
        Command::Gale { system, repair } => JobSpec::Gale {
            input: system.load()?,
            repair,
            seed,
        },
        Command::Hdual { system, order } => JobSpec::Hdual {
            input: system.load()?,
            order,
        },
        Command::Square { system } => JobSpec::Square {
            input: system.load()?,
        },
        Command::Diagram { system } => JobSpec::Diagram {
            input: system.load()?,
        },
        Command::Covolume { file, points } => {
            let polytopes = match (file, points) {
                (Some(path), _) => {
                    let text = if path == "-" {
                        let mut buf = String::new();
                        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
                            .map_err(|e| Error::ParseError(e.to_string()))?;
                        buf
                    } else {
                        std::fs::read_to_string(&path)
                            .map_err(|e| Error::ParseError(format!("{path}: {e}")))?
                    };
                    parse_polytopes_str(&text)?
                }
                (None, Some(points)) => {
                    let pts = parse_inline_points(&points)?;
                    vec![pts
                        .iter()
                        .map(|p| p.iter().map(|&v| sparsemult::rat::rat(v)).collect())
                        .collect()]
                }
                (None, None) => {
                    return Err(Error::InvalidInput(
                        "provide --file or --points".into(),
                    ))
                }
            };
            JobSpec::Covolume { polytopes }
        }
        Command::Bounds { system, ceiling } => JobSpec::Bounds {
            input: system.load()?,
            ceiling,
        },
        Command::Witness { n, m, ceiling } => JobSpec::Witness { n, m, ceiling },
        Command::Cyclic { d, n } => {
            let d = d
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::ParseError(format!("bad integer {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            JobSpec::Cyclic { d, n }
        }
        Command::Hyper { n, m } => JobSpec::Hyper { n, m },
        Command::Reproduce { target } => {
            return Ok(Output::Raw(cli::reproduce(&target)?));
        }
    };
    let mut report = cli::run(&job)?;
    report.timing_ms = started.elapsed().as_millis();
    eprintln!("# {} finished in {} ms", report.command, report.timing_ms);
    Ok(Output::Report(report))
}
