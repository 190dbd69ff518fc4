use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli::{build_context, emit_report, flow_config, flow_point, hamiltonian, parse_model, run_suite, CliError, Format, RunOptions};
use dbracket::{certify, dump_json, fuse};
use kontsevich::{flow, KSystem};

#[derive(Parser)]
#[command(name = "dqp", version, about = "Double quasi-Poisson brackets: build, certify and flow")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Replace the model's seed list with this one seed.
    #[arg(long, global = true)]
    seed_override: Option<u64>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Record wall-clock time per check (reports stop being byte-stable).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the suites listed under [verify].
    Verify { spec: PathBuf },
    /// Fuse two vertices, print the fused table and certify it.
    Fuse {
        spec: PathBuf,
        /// Vertex labels `s,t`; `t` is fused into `s`.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<String>,
    },
    /// Integrate the Kontsevich flow from the first seed.
    Flow { spec: PathBuf },
    /// Print the bracket table as JSON.
    DumpBracket { spec: PathBuf },
}

/// Errors before any check ran: unreadable or invalid input.
const EXIT_INPUT: u8 = 2;

fn load(path: &PathBuf) -> Result<cli::ModelSpec, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_model(&text)?)
}

fn write_out(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn json_bytes(v: &serde_json::Value) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(v)?;
    out.push(b'\n');
    Ok(out)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    match &cli.cmd {
        Cmd::Verify { spec } => {
            let spec = load(spec)?;
            let opts = RunOptions {
                tolerance: cli.tolerance,
                seed_override: cli.seed_override,
                timings: cli.timings,
                threads: RunOptions::threads_from_env(),
            };
            let report = run_suite(&spec, &opts)?;
            write_out(&emit_report(&report, cli.format)?)?;
            Ok(report.passed())
        }
        Cmd::Fuse { spec, at } => {
            if at.len() != 2 {
                return Err(CliError::Spec(format!("--at takes two vertex labels `s,t`, got {}", at.len())));
            }
            let spec = load(spec)?;
            let ctx = build_context(cli::algebra(&spec)?)?;
            let base = ctx.alg().base();
            let (s, t) = (base.index_of(&at[0])?, base.index_of(&at[1])?);
            let fused = fuse(&ctx, s, t)?;
            let cert = certify(&fused.ctx.db);
            let kinds: Vec<String> = fused.kinds.iter().map(|k| format!("{k:?}")).collect();
            let failures: Vec<String> = cert
                .failures
                .iter()
                .map(|f| format!("({}, {}, {}): {} vs {}", f.a, f.b, f.c, f.jacobiator, f.expected))
                .collect();
            let out = serde_json::json!({
                "fused_at": [at[0], at[1]],
                "arrow_kinds": kinds,
                "bracket": dump_json(&fused.ctx.db),
                "certify": {
                    "claim": cert.claim.name(),
                    "triples_checked": cert.triples_checked,
                    "passed": cert.passed(),
                    "failures": failures,
                },
            });
            write_out(&json_bytes(&out)?)?;
            Ok(cert.passed())
        }
        Cmd::Flow { spec } => {
            let spec = load(spec)?;
            let k = spec.kontsevich.as_ref().ok_or_else(|| CliError::Spec("flow needs a [kontsevich] section".into()))?;
            let r = cli::rep(&spec)?;
            let seed = cli.seed_override.unwrap_or(r.seeds[0]);
            let sys = KSystem::new()?;
            let p = flow_point(&sys, r, k, seed)?;
            let tr = flow(&sys, &p, &hamiltonian(&sys, k), &flow_config(k, seed))?;
            let bytes = match cli.format {
                Format::Json => json_bytes(&serde_json::from_str(&tr.to_json()?)?)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    tr.write_csv(&mut buf)?;
                    buf
                }
                Format::Text => {
                    let rep = &tr.report;
                    format!(
                        "{} dt={} steps={}\nmax trace drift {:?}\nmax Φ drift {:e}\nmax drift {:e} (tolerance {:e})\n",
                        rep.hamiltonian,
                        rep.dt,
                        rep.steps,
                        rep.max_trace_drift,
                        rep.max_phi_drift,
                        rep.max_drift(),
                        k.drift_tol
                    )
                    .into_bytes()
                }
            };
            write_out(&bytes)?;
            Ok(tr.report.max_drift() <= k.drift_tol)
        }
        Cmd::DumpBracket { spec } => {
            let spec = load(spec)?;
            let ctx = build_context(cli::algebra(&spec)?)?;
            write_out(&json_bytes(&dump_json(&ctx.db))?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("dqp: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
