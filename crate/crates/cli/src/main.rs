use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use linkage_cli::ast::{Script, Stmt};
use linkage_cli::exec::{self, RunConfig, EXIT_USAGE};
use linkage_cli::parse::{self, ParseError, Scope};
use linkage_cli::DiskCache;
use linkage_core::harness::TheoremId;
use linkage_core::ResolutionCache;

#[derive(Parser)]
#[command(
    name = "linkage-lab",
    version,
    about = "Linkage and homological invariants of graded modules"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every statement of a script.
    Run {
        file: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run one theorem check against the declarations of a script.
    Check {
        /// Theorem id, e.g. THM_MS.
        id: String,
        file: PathBuf,
        /// Binding such as M=L, C=W, n=2 or I=[x, y]; repeatable.
        #[arg(long = "bind", value_name = "KEY=VALUE")]
        binds: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print a script in canonical form.
    Fmt { file: PathBuf },
}

#[derive(Args)]
struct Opts {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Ext/Tor vanishing bound (default 2(n+1) for n variables).
    #[arg(long)]
    bound: Option<usize>,
    /// Probe primes to use: `all`, `height<=K` or `K`.
    #[arg(long, value_name = "SPEC", value_parser = parse_probe_spec)]
    probe_primes: Option<ProbeSpec>,
    /// Resolution cache directory; overrides LINKAGE_LAB_CACHE.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Stop at the first failed or undecided result.
    #[arg(long)]
    fail_fast: bool,
    /// Exit 4 when a check is inapplicable.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Degree cap for Groebner bases and resolutions.
    #[arg(long)]
    max_degree: Option<i32>,
    /// Rank cap for linear algebra in a single degree.
    #[arg(long)]
    max_rank: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
struct ProbeSpec(Option<usize>);

fn parse_probe_spec(s: &str) -> Result<ProbeSpec, String> {
    let s = s.trim();
    if s == "all" {
        return Ok(ProbeSpec(None));
    }
    let k = s.strip_prefix("height<=").unwrap_or(s);
    k.trim()
        .parse()
        .map(|k| ProbeSpec(Some(k)))
        .map_err(|_| format!("expected `all`, `height<=K` or `K`, got `{s}`"))
}

impl Opts {
    fn config(&self) -> RunConfig {
        let mut c = RunConfig {
            bound: self.bound,
            fail_fast: self.fail_fast,
            strict: self.strict,
            ..RunConfig::default()
        };
        if let Some(ProbeSpec(h)) = self.probe_primes {
            c.max_probe_height = h;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(d) = self.max_degree {
            c.budget.max_degree = d;
        }
        if let Some(r) = self.max_rank {
            c.budget.max_rank = r;
        }
        c
    }

    fn cache(&self) -> Result<Option<Arc<dyn ResolutionCache>>, String> {
        let Some(dir) = DiskCache::resolve_dir(self.cache_dir.as_deref()) else {
            return Ok(None);
        };
        let cache =
            DiskCache::open(&dir).map_err(|e| format!("cache directory {}: {e}", dir.display()))?;
        Ok(Some(Arc::new(cache)))
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_error(path: &Path, e: &ParseError) -> String {
    format!(
        "{}:{}:{}: {}",
        path.display(),
        e.pos.line,
        e.pos.col,
        e.brief()
    )
}

fn execute(script: &Script, opts: &Opts) -> Result<i32, String> {
    let report = exec::run(script, &opts.config(), opts.cache()?);
    let out = if opts.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(report.exit_code)
}

/// The file's declarations followed by a single check built from `--bind` pairs.
fn check_script(id: &str, path: &Path, binds: &[String]) -> Result<Script, String> {
    let id = TheoremId::parse(id).ok_or_else(|| format!("unknown theorem id '{id}'"))?;
    let src = read(path)?;
    let mut scope = Scope::default();
    let full = parse::parse_in(&src, &mut scope).map_err(|e| parse_error(path, &e))?;
    let mut script = Script::default();
    for (s, p) in full.stmts.into_iter().zip(full.positions) {
        if s.is_declaration() {
            script.stmts.push(s);
            script.positions.push(p);
        }
    }
    let snippet = format!("check {id}({});", binds.join(", "));
    let extra =
        parse::parse_in(&snippet, &mut scope).map_err(|e| format!("--bind: {e} in `{snippet}`"))?;
    for (s, p) in extra.stmts.into_iter().zip(extra.positions) {
        debug_assert!(matches!(s, Stmt::Check { .. }));
        script.stmts.push(s);
        script.positions.push(p);
    }
    Ok(script)
}

fn main_inner(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Run { file, opts } => {
            let src = read(&file)?;
            let script = parse::parse(&src).map_err(|e| parse_error(&file, &e))?;
            execute(&script, &opts)
        }
        Cmd::Check {
            id,
            file,
            binds,
            opts,
        } => {
            let script = check_script(&id, &file, &binds)?;
            execute(&script, &opts)
        }
        Cmd::Fmt { file } => {
            let src = read(&file)?;
            let script = parse::parse(&src).map_err(|e| parse_error(&file, &e))?;
            let _ = std::io::stdout()
                .lock()
                .write_all(script.to_string().as_bytes());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = main_inner(cli).unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        EXIT_USAGE
    });
    ExitCode::from(code as u8)
}
