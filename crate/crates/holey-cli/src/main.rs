//! Command-line entry point: counting, claim verification, evenness
//! certificates, spanning webs and mod-4 scans, with stable machine-readable
//! output.
//!
//! Exit codes: 0 success (including report-only verdicts), 1 verification
//! failure or no certificate found, 2 usage errors and guard violations.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use holey_core::claims::{self, VerificationReport};
use holey_core::grid::{Cell, GridSpec};
use holey_core::linalg;
use holey_core::matchgen::{enumerate_near_perfect, Matching};
use holey_core::profile;
use holey_core::web;

use output::Format;

/// Enumerate-mode materialization bound for the `web` command.
const WEB_ENUMERATE_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "holey",
    version,
    about = "Exact one-hole domino tiling counts for odd-by-odd grids, with a claim-verification harness"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads for whole-grid scans; results are identical for any
    /// value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count perfect matchings of a rectangle, or near-perfect matchings of
    /// an odd-by-odd grid with one hole.
    Count {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Hole cell as "row,col".
        #[arg(long, conflicts_with = "all_holes")]
        hole: Option<String>,
        /// Count every white hole and the total.
        #[arg(long)]
        all_holes: bool,
    },
    /// Run one verification claim over a parameter range.
    Verify {
        #[arg(long, value_enum)]
        claim: Claim,
        /// Largest k for square-grid claims (side 2k+1).
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        /// Largest odd row count for rectangle-parity.
        #[arg(long, default_value_t = 9)]
        r_max: usize,
        /// Largest odd column count for rectangle-parity.
        #[arg(long, default_value_t = 9)]
        c_max: usize,
        /// Largest dimension for barkley-liu.
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
    },
    /// Emit an evenness certificate: a nonempty cell set in which every
    /// vertex has an even number of neighbors.
    Certificate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_enum)]
        mode: CertMode,
        /// Block parameter for mode b: odd f > 1 dividing gcd(r+1, c+1).
        #[arg(long)]
        f: Option<usize>,
        /// Removed cell the certificate is verified against.
        #[arg(long)]
        hole: Option<String>,
    },
    /// Spanning web of one matching (from a file), or the full
    /// pairing/bijection census over every matching with a hole.
    Web {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        hole: Option<String>,
        /// Matching file in the text or JSON format.
        #[arg(long, conflicts_with = "enumerate")]
        input: Option<PathBuf>,
        /// Enumerate all matchings with the hole instead of reading one.
        #[arg(long)]
        enumerate: bool,
    },
    /// Per-hole counts mod 4 for an odd-by-odd grid (report-only scan).
    ScanMod4 {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// The sequence a(2k+1) with its 2-adic valuation, odd cofactor, and the
    /// cofactor mod 8.
    Sequence {
        #[arg(long, default_value_t = 6)]
        k_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    HoleyTwos,
    Main,
    KongMod8,
    AxisReduction,
    DiagonalReduction,
    Tenner,
    TemperleyBoundary,
    RectangleParity,
    BarkleyLiu,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertMode {
    A,
    B,
    Search,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: &str) -> holey_core::Result<ExitCode> {
    eprintln!("error: {msg}");
    Ok(ExitCode::from(2))
}

fn parse_hole(hole: &Option<String>) -> holey_core::Result<Option<Cell>> {
    hole.as_deref().map(str::parse).transpose()
}

fn run(cli: &Cli) -> holey_core::Result<ExitCode> {
    match &cli.command {
        Command::Count {
            rows,
            cols,
            hole,
            all_holes,
        } => cmd_count(cli, *rows, *cols, parse_hole(hole)?, *all_holes),
        Command::Verify {
            claim,
            k_max,
            r_max,
            c_max,
            max_dim,
        } => cmd_verify(cli, *claim, *k_max, *r_max, *c_max, *max_dim),
        Command::Certificate {
            rows,
            cols,
            mode,
            f,
            hole,
        } => cmd_certificate(cli, *rows, *cols, *mode, *f, parse_hole(hole)?),
        Command::Web {
            rows,
            cols,
            hole,
            input,
            enumerate,
        } => cmd_web(
            cli,
            *rows,
            *cols,
            parse_hole(hole)?,
            input.as_deref(),
            *enumerate,
        ),
        Command::ScanMod4 { rows, cols } => cmd_scan_mod4(cli, *rows, *cols),
        Command::Sequence { k_max } => cmd_sequence(cli, *k_max),
    }
}

fn cmd_count(
    cli: &Cli,
    rows: usize,
    cols: usize,
    hole: Option<Cell>,
    all_holes: bool,
) -> holey_core::Result<ExitCode> {
    let spec = GridSpec::new(rows, cols)?;
    if all_holes {
        let census = profile::count_all_holes_jobs(spec, cli.jobs.max(1))?;
        print!("{}", output::census(cli.format, spec, &census));
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(h) = hole {
        let count = profile::count_with_hole(spec, h)?;
        print!(
            "{}",
            output::single_count(cli.format, spec, Some(h), &count)
        );
        return Ok(ExitCode::SUCCESS);
    }
    if spec.area() % 2 == 1 {
        return usage("odd-area grid: pass --hole ROW,COL or --all-holes");
    }
    let count = profile::count_perfect(rows, cols)?;
    print!("{}", output::single_count(cli.format, spec, None, &count));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    cli: &Cli,
    claim: Claim,
    k_max: usize,
    r_max: usize,
    c_max: usize,
    max_dim: usize,
) -> holey_core::Result<ExitCode> {
    let over_k = |f: fn(usize) -> holey_core::Result<VerificationReport>| {
        let mut reports = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            reports.push(f(k)?);
        }
        Ok(VerificationReport::merge(format!("k<={k_max}"), reports).expect("at least one report"))
    };
    let report = match claim {
        Claim::HoleyTwos => over_k(claims::verify_holey_twos)?,
        Claim::Main => over_k(claims::verify_main)?,
        Claim::KongMod8 => over_k(claims::verify_kong_mod8)?,
        Claim::AxisReduction => over_k(claims::verify_axis_reduction)?,
        Claim::DiagonalReduction => over_k(claims::verify_diagonal_reduction)?,
        Claim::Tenner => over_k(claims::verify_tenner)?,
        Claim::TemperleyBoundary => over_k(claims::verify_temperley_boundary)?,
        Claim::RectangleParity => claims::verify_rectangle_parity(r_max, c_max)?,
        Claim::BarkleyLiu => claims::verify_barkley_liu(max_dim)?,
    };
    print!("{}", output::report(cli.format, &report));
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_certificate(
    cli: &Cli,
    rows: usize,
    cols: usize,
    mode: CertMode,
    f: Option<usize>,
    hole: Option<Cell>,
) -> holey_core::Result<ExitCode> {
    let spec = GridSpec::new(rows, cols)?;
    if let Some(h) = hole {
        spec.check_contains(h)?;
    }
    let cert = match mode {
        CertMode::A => linalg::construct_certificate_case_a(rows, cols)?,
        CertMode::B => {
            let Some(f) = f else {
                return usage("--f is required for mode b");
            };
            linalg::construct_certificate_case_b(rows, cols, f)?
        }
        CertMode::Search => match linalg::find_certificate(spec, hole)? {
            Some(cert) => cert,
            None => {
                print!("{}", output::certificate_none(cli.format));
                return Ok(ExitCode::from(1));
            }
        },
    };
    let verified = linalg::verify_certificate(spec, hole, &cert);
    print!("{}", output::certificate(cli.format, &cert, verified));
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_web(
    cli: &Cli,
    rows: usize,
    cols: usize,
    hole: Option<Cell>,
    input: Option<&std::path::Path>,
    enumerate: bool,
) -> holey_core::Result<ExitCode> {
    let spec = GridSpec::new(rows, cols)?;
    if enumerate {
        let Some(h) = hole else {
            return usage("--hole is required with --enumerate");
        };
        let mut matchings = Vec::new();
        for m in enumerate_near_perfect(spec, h)? {
            matchings.push(m);
            if matchings.len() as u64 > WEB_ENUMERATE_CAP {
                return Err(holey_core::Error::EnumerationCap(WEB_ENUMERATE_CAP));
            }
        }
        let index: std::collections::BTreeMap<&Matching, usize> =
            matchings.iter().zip(0..).collect();
        let mut pairs = Vec::new();
        let mut trees = Vec::new();
        for (i, m) in matchings.iter().enumerate() {
            let graph = web::web_from_matching(spec, m)?;
            if graph.is_acyclic() {
                trees.push(i);
            } else {
                let partner = web::reverse_canonical_cycle(spec, m)?;
                let j = *index
                    .get(&partner)
                    .expect("reversal stays within the enumeration");
                if i < j {
                    pairs.push((i, j));
                }
            }
        }
        print!(
            "{}",
            output::web_census(cli.format, matchings.len(), &pairs, &trees)
        );
        return Ok(ExitCode::SUCCESS);
    }

    let Some(path) = input else {
        return usage("pass --input FILE or --enumerate");
    };
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Ok(ExitCode::from(2));
        }
    };
    let matching = Matching::parse(&text)?;
    if let (Some(expected), Some(found)) = (hole, matching.hole()) {
        if expected != found {
            return Err(holey_core::Error::HoleMismatch { expected, found });
        }
    }
    let graph = web::web_from_matching(spec, &matching)?;
    let cycles = web::find_cycles(&graph);
    print!("{}", output::web_graph(cli.format, &graph, &cycles));
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan_mod4(cli: &Cli, rows: usize, cols: usize) -> holey_core::Result<ExitCode> {
    let spec = GridSpec::new(rows, cols)?;
    let scan = web::scan_mod4_jobs(spec, cli.jobs.max(1))?;
    print!("{}", output::mod4(cli.format, &scan));
    Ok(ExitCode::SUCCESS)
}

fn cmd_sequence(cli: &Cli, k_max: usize) -> holey_core::Result<ExitCode> {
    let mut entries = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let spec = GridSpec::square(2 * k + 1)?;
        let total = profile::count_all_holes_jobs(spec, cli.jobs.max(1))?.total;
        entries.push((k, total));
    }
    print!("{}", output::sequence(cli.format, &entries));
    Ok(ExitCode::SUCCESS)
}
