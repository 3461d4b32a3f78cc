//! Command-line front end: single-shot analytic queries, Monte Carlo runs,
//! figure-reproduction sweeps, tradeoff optimization, and the end-to-end
//! codec demo. All heavy lifting lives in the library; this binary parses
//! flags, merges config files, and formats output.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use covertwalk::params::{DelayModel, SystemParams, WalkModel};
use covertwalk::sim::{self, TrialLog};
use covertwalk::sweep::{self, SweepRow, SweepSpec};
use covertwalk::{codec, optimizer, Error};

#[derive(Parser)]
#[command(name = "covertwalk", version, about = "Covert chunked message passing: analysis, simulation, and tradeoff exploration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print closed-form detection/covertness probabilities and delay expectations
    Analytic(CommonArgs),
    /// Run a seeded Monte Carlo batch and print one theory/simulation row
    Simulate(SimulateArgs),
    /// Evaluate a parameter grid (or a figure preset) and emit CSV
    Sweep(SweepArgs),
    /// Explore the covertness-delay tradeoff: grid, Pareto frontier, optimal redundancy
    Optimize(OptimizeArgs),
    /// End-to-end demo: encode a message, simulate the transfer, decode it back
    Demo(DemoArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Number of graph vertices
    #[arg(long)]
    s: Option<u64>,
    /// Number of relays
    #[arg(long)]
    r: Option<u64>,
    /// Message length in bits
    #[arg(long)]
    m: Option<f64>,
    /// Number of message (data) chunks
    #[arg(long)]
    k: Option<u64>,
    /// Number of encoded chunks
    #[arg(long)]
    n: Option<u64>,
    /// Tail parameter of the shifted-exponential transmission time
    #[arg(long)]
    lambda: Option<f64>,
    /// Upper bound of the warden's uniform monitoring window
    #[arg(long)]
    w: Option<f64>,
    /// Delay model: 1 or 2
    #[arg(long)]
    model: Option<String>,
    /// Walk model: iid or noselfloop
    #[arg(long)]
    walk: Option<String>,
    /// Flat key = value config file; explicit flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit a machine-readable JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of independent trials
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed for the per-trial random streams
    #[arg(long)]
    seed: Option<u64>,
    /// Size of the rayon worker pool (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Built-in grid: fig1, fig2, fig3, or fig4
    #[arg(long)]
    preset: Option<String>,
    /// Values of r, e.g. "5,10,15" or "3..10" (overrides --r)
    #[arg(long)]
    r_list: Option<String>,
    /// Values of k (overrides --k)
    #[arg(long)]
    k_list: Option<String>,
    /// Values of n (overrides --n)
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Values of k to scan (default "1..5")
    #[arg(long)]
    k_list: Option<String>,
    /// Values of n to scan (default "1..r")
    #[arg(long)]
    n_list: Option<String>,
    /// Under Model 2, verify the closed-form optimal n up to this r
    #[arg(long, default_value_t = 60)]
    r_max: u64,
    /// Write the frontier as CSV here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Message literal to transfer
    #[arg(long, conflicts_with = "message_file")]
    message: Option<String>,
    /// Read the message from this file instead
    #[arg(long)]
    message_file: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the per-trial event transcript (JSON lines) here
    #[arg(long)]
    transcript: Option<PathBuf>,
}

/// Flag > config-file > built-in default.
struct Resolver {
    config: BTreeMap<String, String>,
}

impl Resolver {
    fn load(path: &Option<PathBuf>) -> Result<Self, Error> {
        let config = match path {
            Some(p) => sweep::parse_config(&fs::read_to_string(p)?)?,
            None => BTreeMap::new(),
        };
        Ok(Self { config })
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Error> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.config.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| Error::Config(format!("config key '{key}': cannot parse '{raw}'"))),
            None => Ok(default),
        }
    }
}

struct Resolved {
    params: SystemParams,
    model: DelayModel,
    walk: WalkModel,
    resolver: Resolver,
}

fn resolve(common: &CommonArgs) -> Result<Resolved, Error> {
    let r = Resolver::load(&common.config)?;
    let params = SystemParams::new(
        r.get(common.s, "s", 50)?,
        r.get(common.r, "r", 10)?,
        r.get(common.m, "m", 10.0)?,
        r.get(common.k, "k", 3)?,
        r.get(common.n, "n", 5)?,
        r.get(common.lambda, "lambda", 1.0)?,
        r.get(common.w, "w", 50.0)?,
    )?;
    let model: DelayModel =
        r.get(common.model.clone(), "model", "1".to_string())?.parse()?;
    let walk: WalkModel = r.get(common.walk.clone(), "walk", "iid".to_string())?.parse()?;
    Ok(Resolved { params, model, walk, resolver: r })
}

/// "1,3,5..8" -> [1, 3, 5, 6, 7, 8]
fn parse_list(text: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad_list(text))?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad_list(text))?;
            if lo > hi {
                return Err(bad_list(text));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad_list(text))?);
        }
    }
    if out.is_empty() {
        return Err(bad_list(text));
    }
    Ok(out)
}

fn bad_list(text: &str) -> Error {
    Error::InvalidParams(format!("cannot parse value list '{text}'"))
}

fn init_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

fn print_row_text(row: &SweepRow) {
    println!(
        "model={} s={} r={} m={} k={} n={} lambda={} w={}",
        row.model, row.s, row.r, row.m, row.k, row.n, row.lambda, row.w
    );
    println!("P_d              = {}", row.p_d);
    println!("P_c              = {}", row.p_c);
    println!("E[T_dis]         = {}", row.theory_dis);
    println!("E[T_col]         = {}", row.theory_col);
    println!("E[T_tot]         = {}", row.theory_tot);
    if let (Some(dis), Some(col), Some(tot), Some(se), Some(pc)) = (
        row.sim_dis_mean,
        row.sim_col_mean,
        row.sim_tot_mean,
        row.sim_tot_stderr,
        row.empirical_p_c,
    ) {
        println!("trials={} seed={}", row.trials, row.seed);
        println!("sim mean T_dis   = {dis}");
        println!("sim mean T_col   = {col}");
        println!("sim mean T_tot   = {tot} (stderr {se})");
        println!("empirical P_c    = {pc}");
    }
}

fn emit_row(row: &SweepRow, json: bool) -> Result<(), Error> {
    if json {
        println!("{}", serde_json::to_string_pretty(row).expect("row serializes"));
    } else {
        print_row_text(row);
    }
    Ok(())
}

fn cmd_analytic(args: &CommonArgs) -> Result<(), Error> {
    let resolved = resolve(args)?;
    let row = SweepRow::evaluate(&resolved.params, resolved.model, resolved.walk, 0, 0)?;
    emit_row(&row, args.json)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Error> {
    init_threads(args.threads);
    let resolved = resolve(&args.common)?;
    let trials = resolved.resolver.get(args.trials, "trials", 100_000)?;
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let seed = resolved.resolver.get(args.seed, "seed", 0)?;
    let row = SweepRow::evaluate(&resolved.params, resolved.model, resolved.walk, trials, seed)?;
    emit_row(&row, args.common.json)
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Error> {
    init_threads(args.threads);
    let resolved = resolve(&args.common)?;
    let r = &resolved.resolver;
    let trials = r.get(args.trials, "trials", 100_000)?;
    let seed = r.get(args.seed, "seed", 0)?;
    let preset_name = r.get(args.preset.clone(), "preset", String::new())?;
    let spec = if !preset_name.is_empty() {
        sweep::preset(&preset_name, trials, seed)?
    } else {
        let list = |flag: &Option<String>, key: &str, single: u64| -> Result<Vec<u64>, Error> {
            match r.get(flag.clone(), key, String::new())? {
                text if text.is_empty() => Ok(vec![single]),
                text => parse_list(&text),
            }
        };
        SweepSpec {
            s: resolved.params.s,
            m: resolved.params.m,
            lambda: resolved.params.lambda,
            w: resolved.params.w,
            model: resolved.model,
            walk: resolved.walk,
            r_values: list(&args.r_list, "r_list", resolved.params.r)?,
            k_values: list(&args.k_list, "k_list", resolved.params.k)?,
            n_values: list(&args.n_list, "n_list", resolved.params.n)?,
            trials,
            seed,
        }
    };
    let rows = spec.run()?;
    match &args.out {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            sweep::write_csv(&mut file, &rows)?;
            file.flush()?;
        }
        None => sweep::write_csv(std::io::stdout().lock(), &rows)?,
    }
    Ok(())
}

fn cmd_optimize(args: &OptimizeArgs) -> Result<(), Error> {
    let resolved = resolve(&args.common)?;
    let r = &resolved.resolver;
    let k_text = r.get(args.k_list.clone(), "k_list", "1..5".to_string())?;
    let n_text =
        r.get(args.n_list.clone(), "n_list", format!("1..{}", resolved.params.r))?;
    let k_values = parse_list(&k_text)?;
    let n_values = parse_list(&n_text)?;
    let mut points = Vec::new();
    for &k in &k_values {
        for &n in &n_values {
            if k <= n && n <= resolved.params.r {
                points.push(
                    optimizer::grid_evaluate(&resolved.params, [k], [n], resolved.model)?
                        .remove(0),
                );
            }
        }
    }
    if points.is_empty() {
        return Err(Error::InvalidParams("optimization grid contains no valid (k, n) pair".into()));
    }
    let frontier = optimizer::pareto_frontier(&points)?;
    let report = match resolved.model {
        DelayModel::Model2 => Some(optimizer::verify_optimal_n(args.r_max)),
        DelayModel::Model1 => None,
    };

    if args.common.json {
        let payload = serde_json::json!({
            "model": resolved.model,
            "points": points,
            "frontier": frontier,
            "optimal_n_check": report,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
    } else {
        println!("{} grid points, {} on the Pareto frontier", points.len(), frontier.len());
        println!("{:>4} {:>4} {:>14} {:>14}", "k", "n", "P_c", "E[T_tot]");
        for p in &frontier {
            println!("{:>4} {:>4} {:>14.8} {:>14.6}", p.k, p.n, p.covertness, p.expected_total);
        }
        if let Some(rep) = &report {
            println!(
                "optimal-n closed form vs exhaustive search (r <= {}): {} mismatches over {} cases",
                args.r_max,
                rep.mismatches.len(),
                rep.checked
            );
        }
    }
    if let Some(path) = &args.out {
        let mut file = fs::File::create(path)?;
        writeln!(file, "k,n,p_c,theory_tot")?;
        for p in &frontier {
            writeln!(file, "{},{},{},{}", p.k, p.n, p.covertness, p.expected_total)?;
        }
    }
    Ok(())
}

fn cmd_demo(args: &DemoArgs) -> Result<(), Error> {
    let resolved = resolve(&args.common)?;
    let params = resolved.params;
    let message: Vec<u8> = match (&args.message, &args.message_file) {
        (Some(text), _) => text.clone().into_bytes(),
        (None, Some(path)) => fs::read(path)?,
        (None, None) => b"attack at dawn".to_vec(),
    };
    if message.is_empty() {
        return Err(Error::InvalidParams("demo message must be non-empty".into()));
    }
    let seed = resolved.resolver.get(args.seed, "seed", 0)?;

    let encoded = codec::encode(&message, params.k as usize, params.n as usize)?;
    let mut rng = sim::trial_rng(seed, 0);
    let mut log = TrialLog::new(0);
    let (outcome, collected) = sim::run_trial_detailed(
        &mut rng,
        &params,
        resolved.model,
        resolved.walk,
        Some(&mut log),
    );
    // The i-th deposited chunk carries encoded chunk i; the collector hands
    // back the indices it harvested.
    let chunks: Vec<(u8, Vec<u8>)> =
        collected.iter().map(|&i| encoded.chunks[i as usize].clone()).collect();
    let recovered =
        codec::decode(&chunks, params.k as usize, params.n as usize, message.len())?;
    if recovered != message {
        return Err(Error::Codec("internal error: decoded message differs from input".into()));
    }

    if let Some(path) = &args.transcript {
        let mut file = fs::File::create(path)?;
        sim::write_transcript(&mut file, &log.events)?;
    }

    if args.common.json {
        let payload = serde_json::json!({
            "message_bytes": message.len(),
            "k": params.k,
            "n": params.n,
            "collected_chunks": collected,
            "outcome": outcome,
            "recovered": recovered == message,
            "detected": outcome.detected,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
    } else {
        println!(
            "encoded {} bytes into {} chunks ({} data + {} parity), chunk size {} bytes",
            message.len(),
            params.n,
            params.k,
            params.n - params.k,
            encoded.chunks[0].1.len()
        );
        println!(
            "dissemination: {} vertices visited, {:.3} time units",
            outcome.dissemination_steps, outcome.dissemination_time
        );
        println!(
            "collection:    {} vertices visited, {:.3} time units, harvested chunks {:?}",
            outcome.collection_steps, outcome.collection_time, collected
        );
        println!(
            "total time {:.3} over {} transmissions; verdict: {}",
            outcome.total_time,
            outcome.transmissions,
            if outcome.detected { "detected" } else { "covert" }
        );
        match String::from_utf8(recovered) {
            Ok(text) => println!("recovered message: {text:?}"),
            Err(_) => println!("recovered message: {} bytes (binary), matches input", message.len()),
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analytic(args) => cmd_analytic(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Demo(args) => cmd_demo(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
