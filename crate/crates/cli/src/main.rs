use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use exceptional_cli::commands::{self, CacheOptions, CliError, MethodArg};

/// Default directory for table caches when `--cache` is not given.
const CACHE_DIR_VAR: &str = "EXCEPTIONAL_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "exceptional",
    version,
    about = "Classify (-1)-curve classes on blowups of the plane at general points"
)]
struct Cli {
    /// Emit one JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CacheArgs {
    /// Table cache file to read, extend and write
    #[arg(long, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Re-certify every cached class by descent on load
    #[arg(long)]
    verify_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a class is a (-1)-class, with a certificate
    Check {
        /// Class literal, e.g. "5; 3,3,1^8"
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Descent)]
        method: MethodArg,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Print the Cremona descent of a class with C.C = -1 and genus 0
    Reduce {
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// List every (-1)-class on n points up to a degree
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: i64,
        /// List every member of each permutation orbit
        #[arg(long)]
        expand_permutations: bool,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Expected dimension and (-1)-curve obstructions of a linear system
    Interpolate {
        /// System literal "d; m1,...,mn" with nonnegative entries
        #[arg(allow_hyphen_values = true)]
        system: String,
        /// Largest obstruction degree to scan (default: the system degree)
        #[arg(long)]
        degree_bound: Option<i64>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Print the JSON schema of the machine-readable output
    Schema,
}

fn cache_path(args: &CacheArgs, n: usize) -> Option<PathBuf> {
    args.cache.clone().or_else(|| {
        std::env::var_os(CACHE_DIR_VAR)
            .map(|dir| PathBuf::from(dir).join(format!("table-n{n}.cache")))
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Check {
            class,
            method,
            cache,
        } => {
            let n = exceptional_cli::literal::parse_class(&class)?.len();
            let path = cache_path(&cache, n);
            let opts = CacheOptions {
                path: path.as_deref(),
                verify: cache.verify_cache,
            };
            commands::check(&class, method, cli.json, opts)
        }
        Command::Reduce { class } => commands::reduce(&class, cli.json),
        Command::Enumerate {
            n,
            max_degree,
            expand_permutations,
            cache,
        } => {
            let path = cache_path(&cache, n);
            let opts = CacheOptions {
                path: path.as_deref(),
                verify: cache.verify_cache,
            };
            commands::enumerate(n, max_degree, expand_permutations, cli.json, opts)
        }
        Command::Interpolate {
            system,
            degree_bound,
            cache,
        } => {
            let n = exceptional_cli::literal::parse_class(&system)?.len();
            let path = cache_path(&cache, n);
            let opts = CacheOptions {
                path: path.as_deref(),
                verify: cache.verify_cache,
            };
            commands::interpolate(&system, degree_bound, cli.json, opts)
        }
        Command::Schema => Ok(commands::SCHEMA.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
