use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mckay::{
    build_normalizer, character_table, diagonal_hook_structure, eps_global_direct,
    eps_global_oracle, eps_global_structural, eps_local, eps_local_oracle, eps_local_value,
    fixed_counts, local_label, parse_aut, reconstruct, scan, Abacus, Error, LocalSign, NavarroAut,
    Partition, PartitionSequence, Result, ScanOptions, SignClass,
};

#[derive(Parser)]
#[command(
    name = "mckay",
    version,
    about = "Exact partition, abacus, and character-count calculations \
             for alternating groups at odd primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the p-core of a partition.
    Core {
        /// Partition as comma-separated parts; empty string for the
        /// empty partition.
        lambda: String,
        #[arg(long)]
        p: u64,
    },
    /// Print the p-quotient, components separated by ';'.
    Quotient {
        lambda: String,
        #[arg(long)]
        p: u64,
    },
    /// Print the tower of cores with its level weights.
    Tower {
        lambda: String,
        #[arg(long)]
        p: u64,
    },
    /// Print the diagonal hook lengths, and with -p their mirror
    /// pairing, one line per level of the middle-runner chain.
    Hooks {
        lambda: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Print the canonical bead sequence.
    Sequence { lambda: String },
    /// Draw the p-abacus.
    Render {
        lambda: String,
        #[arg(long)]
        p: u64,
    },
    /// Rebuild a partition from a core and a quotient.
    Reconstruct {
        #[arg(long)]
        core: String,
        /// Quotient components separated by ';'.
        #[arg(long)]
        quotient: String,
        #[arg(long)]
        p: u64,
    },
    /// Sign of a symmetric partition's split characters under an
    /// automorphism, by all global routes.
    EpsGlobal {
        lambda: String,
        #[arg(long)]
        p: u64,
        /// One of id, sigma, kappa, kappa-sigma, or e=<int>,s=<int>.
        #[arg(long)]
        aut: String,
    },
    /// Sign of a symmetric label under an automorphism, by all local
    /// routes.
    EpsLocal {
        lambda: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        aut: String,
    },
    /// Fixed-point counts for one n and p, one JSON report per sign
    /// class (or only the class given by --aut).
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        aut: Option<String>,
    },
    /// Batch verification over n, primes, and sign classes, one JSON
    /// report per line.
    Scan {
        #[arg(long, default_value_t = 24)]
        n_max: u64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![3u64, 5, 7])]
        primes: Vec<u64>,
        /// Write reports to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort with an error once this much time has elapsed.
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Degrees and class data of the Sylow normalizer in the symmetric
    /// group (or its even part) at tiny scale.
    GroupTable {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        even: bool,
    },
}

fn parse_partition(text: &str) -> Result<Partition> {
    text.parse()
}

fn parse_quotient(text: &str) -> Result<Vec<Partition>> {
    text.split(';').map(|c| c.trim().parse()).collect()
}

fn sign_text(sign: i8) -> &'static str {
    if sign > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Runs one command; `Ok(false)` means the run finished but found a
/// verification failure.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Core { lambda, p } => {
            let abacus = Abacus::new(&parse_partition(&lambda)?, p)?;
            println!("{}", abacus.core());
        }
        Command::Quotient { lambda, p } => {
            let abacus = Abacus::new(&parse_partition(&lambda)?, p)?;
            println!("{}", join(abacus.quotient(), ";"));
        }
        Command::Tower { lambda, p } => {
            let label_tower = mckay::core_tower(&parse_partition(&lambda)?, p)?;
            for k in 0..label_tower.depth() {
                let entries = label_tower.entries(k);
                let line = if entries.is_empty() {
                    "-".to_string()
                } else {
                    join(entries.iter().map(|(pi, mu)| format!("{pi} -> {mu}")), "; ")
                };
                println!("level {k}: {line}");
            }
            println!("weights: {}", join(label_tower.weights(), ","));
        }
        Command::Hooks { lambda, p } => {
            let lambda = parse_partition(&lambda)?;
            println!("{}", join(lambda.diagonal_hooks(), ","));
            if let Some(p) = p {
                for (k, pairs) in diagonal_hook_structure(&lambda, p)?.iter().enumerate() {
                    let line = if pairs.is_empty() {
                        "-".to_string()
                    } else {
                        join(pairs.iter().map(|(a, b)| format!("({a},{b})")), " ")
                    };
                    println!("level {k}: {line}");
                }
            }
        }
        Command::Sequence { lambda } => {
            println!(
                "{}",
                PartitionSequence::from_partition(&parse_partition(&lambda)?)
            );
        }
        Command::Render { lambda, p } => {
            let abacus = Abacus::new(&parse_partition(&lambda)?, p)?;
            print!("{}", abacus.render());
        }
        Command::Reconstruct { core, quotient, p } => {
            let core = parse_partition(&core)?;
            let quotient = parse_quotient(&quotient)?;
            println!("{}", reconstruct(&core, &quotient, p)?);
        }
        Command::EpsGlobal { lambda, p, aut } => {
            let lambda = parse_partition(&lambda)?;
            let f = parse_aut(&aut, p)?;
            println!("direct: {}", sign_text(eps_global_direct(&lambda, &f)?));
            println!("oracle: {}", sign_text(eps_global_oracle(&lambda, &f)?));
            println!(
                "structural: {}",
                sign_text(eps_global_structural(&lambda, &f)?)
            );
        }
        Command::EpsLocal { lambda, p, aut } => {
            let label = local_label(&parse_partition(&lambda)?, p)?;
            let f = parse_aut(&aut, p)?;
            println!("literal: {}", sign_text(eps_local(&label, &f)?));
            println!("value: {}", sign_text(eps_local_value(&label, &f)?));
            let oracle = match eps_local_oracle(&label, &f)? {
                LocalSign::Pinned(sign) => sign_text(sign).to_string(),
                LocalSign::Indeterminate => "indeterminate".to_string(),
            };
            println!("oracle: {oracle}");
        }
        Command::Verify { n, p, aut } => {
            let auts: Vec<NavarroAut> = match aut {
                Some(spec) => vec![parse_aut(&spec, p)?],
                None => SignClass::ALL
                    .into_iter()
                    .map(|class| NavarroAut::from_class(p, class))
                    .collect::<Result<_>>()?,
            };
            let mut out = io::stdout().lock();
            let mut clean = true;
            for f in auts {
                let report = fixed_counts(n, p, &f)?;
                clean &= report.equal && report.defects.iter().all(|d| !d.is_fatal());
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            }
            return Ok(clean);
        }
        Command::Scan {
            n_max,
            primes,
            out,
            budget_ms,
        } => {
            let options = ScanOptions {
                n_max,
                primes,
                budget_ms,
            };
            let summary = match out {
                Some(path) => scan(&mut File::create(path)?, &options)?,
                None => scan(&mut io::stdout().lock(), &options)?,
            };
            eprintln!(
                "scan: {} reports, {} unequal, {} fatal defects, {} informational defects",
                summary.reports,
                summary.unequal,
                summary.fatal_defects,
                summary.informational_defects
            );
            return Ok(summary.is_clean());
        }
        Command::GroupTable { n, p, even } => {
            let table = character_table(&build_normalizer(n, p, even)?)?;
            println!("order: {}", table.order());
            println!("classes: {}", table.class_count());
            println!("class sizes: {}", join(table.class_sizes().iter(), ","));
            println!("class orders: {}", join(table.class_orders().iter(), ","));
            println!("degrees: {}", join(table.degrees().iter(), ","));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed pipe means the consumer has everything it wants.
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
