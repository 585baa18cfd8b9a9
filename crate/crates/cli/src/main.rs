//! `subseq` — one binary exposing every oracle, protocol simulation,
//! reduction, matrix computation, and shattering search as a subcommand,
//! with optional machine-readable output (`--format structured`).

mod fmt;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fmt::{Format, Record};
use subseq_core::matrix::{
    bounds_report, build_comm_matrix_budgeted, exact_rank, leading_triangular_witness_budgeted,
    BoundsReport, DEFAULT_MATRIX_BUDGET,
};
use subseq_core::protocols::{cost_bound, IterativeProtocol, ProtocolKind, TrivialProtocol};
use subseq_core::reductions::{
    disj_to_ssd, ind_to_ssd, verify_disj_reduction, verify_ind_reduction, DisjInstance,
    IndInstance, ReductionOutput, ReductionReport,
};
use subseq_core::seq::{is_subsequence, is_substring};
use subseq_core::sim::{
    run_deterministic, verify_protocol_exhaustive_budgeted, Bipartition, Protocol, SweepReport,
    DEFAULT_CASE_BUDGET,
};
use subseq_core::vc::{
    construct_shattered, full_class, is_shattered, max_shattered, Hypothesis, SearchBudget,
    DEFAULT_NODE_BUDGET, DEFAULT_TABLE_BUDGET,
};
use subseq_core::{Alphabet, Sequence, SsdParams};

#[derive(Parser)]
#[command(
    name = "subseq",
    version,
    about = "Subsequence-containment lab: oracles, two-party protocols, matrix rank, reductions, shattering"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps; outputs are deterministic regardless.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether Y is contained in X (in order, gaps allowed).
    Check {
        x: String,
        y: String,
        /// Alphabet max symbol; inferred from the inputs when omitted.
        #[arg(long)]
        m: Option<u32>,
        /// Require a contiguous occurrence instead.
        #[arg(long)]
        contiguous: bool,
    },
    /// Simulate a protocol on one input, or sweep it exhaustively.
    Protocol(ProtocolArgs),
    /// Print the instance a reduction constructs.
    Reduce {
        #[command(subcommand)]
        kind: ReduceKind,
    },
    /// Exhaustively check a reduction's equivalence at desk scale.
    #[command(name = "verify-reduction")]
    VerifyReduction {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Communication matrix: dump, exact rank, triangular witness, bounds.
    Matrix(MatrixArgs),
    /// Shattering lab for containment classifiers.
    Vcdim {
        #[command(subcommand)]
        mode: VcdimMode,
    },
}

#[derive(Args)]
struct ProtocolArgs {
    /// "trivial" or "iterative".
    name: String,
    /// Text input for a single run.
    x: Option<String>,
    /// Pattern input for a single run.
    y: Option<String>,
    /// "natural" or an A/B string of length n+k.
    #[arg(default_value = "natural")]
    partition: String,
    /// Alphabet max symbol; inferred (single run) or 1 (sweep) when omitted.
    #[arg(long)]
    m: Option<u32>,
    /// Answer contiguous containment (trivial protocol only).
    #[arg(long)]
    contiguous: bool,
    /// Run on every input pair and every selected partition.
    #[arg(long)]
    sweep: bool,
    /// Text length for a sweep.
    #[arg(long)]
    n: Option<usize>,
    /// Pattern length for a sweep.
    #[arg(long)]
    k: Option<usize>,
    /// Sweep partition set: "natural", "all", or "random:COUNT".
    #[arg(long, default_value = "natural")]
    partitions: String,
    /// Seed for "random:COUNT" partition sets.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum ReduceKind {
    /// Indexing: bit string X and 1-based index I.
    Ind { x: String, i: usize },
    /// Set disjointness: equal-weight characteristic vectors A and B.
    Disj { a: String, b: String },
}

#[derive(Subcommand)]
enum VerifyKind {
    /// All 2^k * k indexing instances.
    Ind {
        #[arg(long)]
        k: usize,
    },
    /// All C(n,k)^2 disjointness instances.
    Disj {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Write the matrix (header "n k m rows cols", one 0/1 row per line).
    /// Default when no other flag is given.
    #[arg(long)]
    dump: bool,
    /// Exact rank over the rationals.
    #[arg(long)]
    rank: bool,
    /// Check and report the leading triangular block.
    #[arg(long)]
    triangular: bool,
    /// Closed-form lower/upper bound report.
    #[arg(long)]
    bounds: bool,
}

#[derive(Subcommand)]
enum VcdimMode {
    /// Exhaustive maximum-shattered-set search over {0,1}^n.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Node budget; exceeding it downgrades the report to truncated.
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Also write the witness set to a file, one string per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The explicit construction shattering floor(log2(k-1)) strings.
    Construct {
        #[arg(long)]
        k: usize,
    },
    /// Verify a witness file (one binary string per line) against the
    /// full class of length-k classifiers.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        set: PathBuf,
    },
}

fn main() -> ExitCode {
    // dumps are routinely piped into `head`; die quietly on a closed pipe
    // instead of panicking in println!
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.max(1))
        .build_global()
        .ok();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Command::Check {
            x,
            y,
            m,
            contiguous,
        } => cmd_check(&x, &y, m, contiguous, format),
        Command::Protocol(args) => cmd_protocol(args, format),
        Command::Reduce { kind } => cmd_reduce(kind, format),
        Command::VerifyReduction { kind } => cmd_verify_reduction(kind, format),
        Command::Matrix(args) => cmd_matrix(args, format),
        Command::Vcdim { mode } => cmd_vcdim(mode, format),
    }
}

fn env_budget(name: &str, default: u64) -> u64 {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

/// Alphabet max: the given one (validated against the inputs) or the
/// largest symbol observed, floored at 1.
fn resolve_m(given: Option<u32>, seqs: &[&Sequence]) -> Result<u32> {
    let observed = seqs
        .iter()
        .filter_map(|s| s.max_symbol())
        .max()
        .unwrap_or(0);
    match given {
        Some(m) => {
            let alphabet = Alphabet::new(m)?;
            for s in seqs {
                alphabet.validate(s)?;
            }
            Ok(m)
        }
        None => Ok(observed.max(1)),
    }
}

/// Larger-than-binary alphabets only make sense when they fit the text:
/// a length-n string carries at most n distinct symbols, so re-labeling
/// caps the useful alphabet at n. The binary default is always allowed.
fn require_alphabet_fits(n: usize, m: u32) -> Result<()> {
    if m > 1 && m as usize >= n {
        bail!("alphabet max m={m} must be smaller than n={n} (re-label to at most n symbols)");
    }
    Ok(())
}

fn build_protocol(
    kind: ProtocolKind,
    params: SsdParams,
    contiguous: bool,
) -> Result<Box<dyn Protocol>> {
    match (kind, contiguous) {
        (ProtocolKind::Trivial, false) => Ok(Box::new(TrivialProtocol::new(params))),
        (ProtocolKind::Trivial, true) => Ok(Box::new(TrivialProtocol::contiguous(params))),
        (ProtocolKind::Iterative, false) => Ok(Box::new(IterativeProtocol::new(params))),
        (ProtocolKind::Iterative, true) => {
            bail!("contiguous matching is only wired through the trivial protocol")
        }
    }
}

fn cmd_check(
    x: &str,
    y: &str,
    m: Option<u32>,
    contiguous: bool,
    format: Format,
) -> Result<ExitCode> {
    let x = Sequence::parse(x)?;
    let y = Sequence::parse(y)?;
    let m = resolve_m(m, &[&x, &y])?;
    let verdict = if contiguous {
        is_substring(&x, &y)
    } else {
        is_subsequence(&x, &y)
    };
    match format {
        Format::Text => println!("{}", u8::from(verdict)),
        Format::Structured => Record::new("check")
            .field("x", &x)
            .field("y", &y)
            .field("m", m)
            .field("contiguous", u8::from(contiguous))
            .field("verdict", u8::from(verdict))
            .emit(),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_protocol(args: ProtocolArgs, format: Format) -> Result<ExitCode> {
    let kind: ProtocolKind = args.name.parse()?;
    if args.sweep {
        return sweep_protocol(kind, args, format);
    }

    let x = Sequence::parse(&args.x.context("a single run needs the X input")?)?;
    let y = Sequence::parse(&args.y.context("a single run needs the Y input")?)?;
    let m = resolve_m(args.m, &[&x, &y])?;
    let params = SsdParams::new(x.len(), y.len(), m)?;
    require_alphabet_fits(params.n, m)?;
    let protocol = build_protocol(kind, params, args.contiguous)?;
    let partition = Bipartition::parse(&args.partition, params.n, params.k)?;
    let run = run_deterministic(protocol.as_ref(), &x, &y, &partition)?;

    // the transcript serialization is the same in both formats
    for msg in run.transcript.iter() {
        Record::new("msg")
            .field("sender", msg.sender)
            .field("bit", u8::from(msg.bit))
            .emit();
    }
    Record::new("summary")
        .field("protocol", kind.ident())
        .field("n", params.n)
        .field("k", params.k)
        .field("m", params.m)
        .field("partition", &partition)
        .field("output", u8::from(run.output))
        .field("cost", run.cost)
        .emit();
    Ok(ExitCode::SUCCESS)
}

fn sweep_protocol(kind: ProtocolKind, args: ProtocolArgs, format: Format) -> Result<ExitCode> {
    let n = args.n.context("--sweep needs --n")?;
    let k = args.k.context("--sweep needs --k")?;
    let m = args.m.unwrap_or(1);
    let params = SsdParams::new(n, k, m)?;
    require_alphabet_fits(n, m)?;
    let protocol = build_protocol(kind, params, args.contiguous)?;

    let partitions = match args.partitions.as_str() {
        "natural" => vec![Bipartition::natural(n, k)],
        "all" => Bipartition::all(n, k)?,
        spec => match spec.strip_prefix("random:") {
            Some(count) => {
                let count: usize = count
                    .parse()
                    .with_context(|| format!("bad partition count in {spec:?}"))?;
                Bipartition::random_set(n, k, count, args.seed)
            }
            None => bail!("unknown partition set {spec:?}: use natural, all, or random:COUNT"),
        },
    };

    let oracle = if args.contiguous {
        is_substring
    } else {
        is_subsequence
    };
    let budget = env_budget("SUBSEQ_CASE_BUDGET", DEFAULT_CASE_BUDGET);
    let report =
        verify_protocol_exhaustive_budgeted(protocol.as_ref(), &partitions, oracle, budget)?;
    emit_sweep(&report, kind, format);
    Ok(exit_when(report.passed()))
}

fn emit_sweep(report: &SweepReport, kind: ProtocolKind, format: Format) {
    let bound = cost_bound(kind, report.params).bits;
    match format {
        Format::Text => {
            println!(
                "{} sweep at n={} k={} m={}: {} cases over {} partitions, {} mismatches, cost in [{}, {}] (bound {})",
                report.protocol,
                report.params.n,
                report.params.k,
                report.params.m,
                report.cases,
                report.partition_count,
                report.mismatch_count,
                report.min_cost,
                report.max_cost,
                bound,
            );
            for w in &report.mismatches {
                println!(
                    "mismatch: x={} y={} partition={} expected={} got={}",
                    w.x, w.y, w.partition, w.expected as u8, w.got as u8
                );
            }
        }
        Format::Structured => {
            Record::new("sweep")
                .field("protocol", &report.protocol)
                .field("n", report.params.n)
                .field("k", report.params.k)
                .field("m", report.params.m)
                .field("partitions", report.partition_count)
                .field("cases", report.cases)
                .field("mismatches", report.mismatch_count)
                .field("min_cost", report.min_cost)
                .field("max_cost", report.max_cost)
                .field("bound", bound)
                .emit();
            for w in &report.mismatches {
                Record::new("mismatch")
                    .field("x", &w.x)
                    .field("y", &w.y)
                    .field("partition", &w.partition)
                    .field("expected", u8::from(w.expected))
                    .field("got", u8::from(w.got))
                    .emit();
            }
        }
    }
}

fn cmd_reduce(kind: ReduceKind, format: Format) -> Result<ExitCode> {
    let (label, out) = match kind {
        ReduceKind::Ind { x, i } => {
            let inst = IndInstance::new(Sequence::parse(&x)?, i)?;
            ("ind", ind_to_ssd(&inst))
        }
        ReduceKind::Disj { a, b } => {
            let a = Sequence::parse(&a)?;
            let b = Sequence::parse(&b)?;
            let weight = a.weight();
            let inst = DisjInstance::new(a, b, weight)?;
            ("disj", disj_to_ssd(&inst))
        }
    };
    emit_reduction(label, &out, format);
    Ok(ExitCode::SUCCESS)
}

fn emit_reduction(label: &str, out: &ReductionOutput, format: Format) {
    match format {
        Format::Text => {
            println!("x' = {}", out.x);
            println!("y' = {}", out.y);
            println!("partition = {}", out.partition);
            println!(
                "target: n={} k={} m={}",
                out.params.n, out.params.k, out.params.m
            );
        }
        Format::Structured => Record::new("reduction")
            .field("kind", label)
            .field("x", &out.x)
            .field("y", &out.y)
            .field("partition", &out.partition)
            .field("n", out.params.n)
            .field("k", out.params.k)
            .field("m", out.params.m)
            .emit(),
    }
}

fn cmd_verify_reduction(kind: VerifyKind, format: Format) -> Result<ExitCode> {
    let (report, scope) = match kind {
        VerifyKind::Ind { k } => (verify_ind_reduction(k)?, format!("k={k}")),
        VerifyKind::Disj { n, k } => (verify_disj_reduction(n, k)?, format!("n={n} k={k}")),
    };
    emit_reduction_report(&report, &scope, format);
    Ok(exit_when(report.passed()))
}

fn emit_reduction_report(report: &ReductionReport, scope: &str, format: Format) {
    match format {
        Format::Text => {
            println!(
                "{} {}: {}/{} cases pass, {} mismatches",
                report.name,
                scope,
                report.cases - report.mismatch_count,
                report.cases,
                report.mismatch_count
            );
            for w in &report.witnesses {
                println!(
                    "mismatch: {} expected={} got={}",
                    w.description, w.expected as u8, w.got as u8
                );
            }
        }
        Format::Structured => {
            let mut rec = Record::new("report").field("kind", report.name);
            for part in scope.split(' ') {
                let (key, value) = part.split_once('=').expect("scope is key=value pairs");
                rec = rec.field(key, value);
            }
            rec.field("cases", report.cases)
                .field("mismatches", report.mismatch_count)
                .emit();
            for w in &report.witnesses {
                // the description is itself a run of key=value tokens
                println!(
                    "witness {} expected={} got={}",
                    w.description, w.expected as u8, w.got as u8
                );
            }
        }
    }
}

fn cmd_matrix(args: MatrixArgs, format: Format) -> Result<ExitCode> {
    let params = SsdParams::new(args.n, args.k, args.m)?;
    require_alphabet_fits(args.n, args.m)?;
    let budget = env_budget("SUBSEQ_MATRIX_BUDGET", DEFAULT_MATRIX_BUDGET);
    let dump = args.dump || !(args.rank || args.triangular || args.bounds);

    if dump || args.rank {
        let matrix = build_comm_matrix_budgeted(params, budget)?;
        if dump {
            let stdout = std::io::stdout();
            matrix.export(&mut stdout.lock())?;
        }
        if args.rank {
            let rank = exact_rank(&matrix);
            match format {
                Format::Text => println!("rank = {rank}"),
                Format::Structured => Record::new("rank")
                    .field("n", params.n)
                    .field("k", params.k)
                    .field("m", params.m)
                    .field("value", rank)
                    .emit(),
            }
        }
    }
    if args.triangular {
        let witness = leading_triangular_witness_budgeted(params, budget)?;
        match format {
            Format::Text => println!(
                "leading {0}x{0} block is lower-triangular with unit diagonal",
                witness.size
            ),
            Format::Structured => Record::new("triangular")
                .field("n", params.n)
                .field("k", params.k)
                .field("m", params.m)
                .field("size", witness.size)
                .field("ok", 1)
                .emit(),
        }
    }
    if args.bounds {
        emit_bounds(&bounds_report(params), format);
    }
    Ok(ExitCode::SUCCESS)
}

fn dec(v: f64) -> String {
    if (v - v.round()).abs() < 1e-12 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.6}")
    }
}

fn emit_bounds(b: &BoundsReport, format: Format) {
    match format {
        Format::Text => {
            println!("rank = {}", b.rank);
            println!("logrank_lb_bits = {}", dec(b.logrank_lb_bits));
            println!("trivial_ub_bits = {}", b.trivial_ub_bits);
            println!("iterative_ub_bits = {}", b.iterative_ub_bits);
            println!("disj_binomial = {}", b.disj_binomial);
            println!("disj_det_lb_log2 = {}", dec(b.disj_det_lb_log2));
            println!("disj_rand_lb_bits = {}", b.disj_rand_lb_bits);
            println!(
                "disj_regime = {}",
                if b.disj_regime.applicable() {
                    "applicable"
                } else if !b.disj_regime.weight_ok {
                    "out-of-regime(k>n/2)"
                } else {
                    "out-of-regime(non-binary)"
                }
            );
        }
        Format::Structured => Record::new("bounds")
            .field("n", b.params.n)
            .field("k", b.params.k)
            .field("m", b.params.m)
            .field("rank", &b.rank)
            .field("logrank_lb", dec(b.logrank_lb_bits))
            .field("trivial_ub", b.trivial_ub_bits)
            .field("iterative_ub", b.iterative_ub_bits)
            .field("binomial", &b.disj_binomial)
            .field("det_lb_log2", dec(b.disj_det_lb_log2))
            .field("rand_lb", b.disj_rand_lb_bits)
            .field("weight_regime", u8::from(b.disj_regime.weight_ok))
            .field("binary", u8::from(b.disj_regime.binary_alphabet))
            .emit(),
    }
}

fn cmd_vcdim(mode: VcdimMode, format: Format) -> Result<ExitCode> {
    match mode {
        VcdimMode::Search {
            k,
            n,
            max_nodes,
            out,
        } => {
            let budget = SearchBudget {
                max_table_cells: env_budget("SUBSEQ_TABLE_BUDGET", DEFAULT_TABLE_BUDGET),
                max_nodes: max_nodes
                    .unwrap_or_else(|| env_budget("SUBSEQ_NODE_BUDGET", DEFAULT_NODE_BUDGET)),
            };
            let report = max_shattered(k, n, &budget)?;
            match format {
                Format::Text => {
                    println!(
                        "max shattered size = {} ({})",
                        report.max_size,
                        if report.exhaustive {
                            "proved maximal"
                        } else {
                            "budget-truncated"
                        }
                    );
                    println!("nodes = {}", report.nodes_visited);
                    for s in &report.witness {
                        println!("{s}");
                    }
                }
                Format::Structured => {
                    Record::new("shatter")
                        .field("k", report.k)
                        .field("n", report.n)
                        .field("max", report.max_size)
                        .field("exhaustive", u8::from(report.exhaustive))
                        .field("nodes", report.nodes_visited)
                        .emit();
                    for s in &report.witness {
                        Record::new("witness").field("string", s).emit();
                    }
                    for (mask, pattern) in &report.realizers {
                        Record::new("realizer")
                            .field("mask", mask)
                            .field("pattern", pattern)
                            .emit();
                    }
                }
            }
            if let Some(path) = out {
                let mut file = std::fs::File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                for s in &report.witness {
                    writeln!(file, "{s}")?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        VcdimMode::Construct { k } => {
            let c = construct_shattered(k)?;
            let hypotheses: Vec<Hypothesis> = c
                .patterns
                .iter()
                .map(|p| Hypothesis::new(p.clone()))
                .collect::<subseq_core::Result<_>>()?;
            let verdict = is_shattered(&c.strings, &hypotheses)?;
            match format {
                Format::Text => {
                    println!("d = {}", c.d);
                    println!("strings ({}):", c.strings.len());
                    for s in &c.strings {
                        println!("{s}");
                    }
                    println!("patterns ({}):", c.patterns.len());
                    for p in &c.patterns {
                        println!("{p}");
                    }
                    println!(
                        "shattering verified: {}",
                        if verdict.shattered { "yes" } else { "NO" }
                    );
                }
                Format::Structured => {
                    Record::new("construction")
                        .field("k", k)
                        .field("d", c.d)
                        .field("strings", c.strings.len())
                        .field("patterns", c.patterns.len())
                        .field("verified", u8::from(verdict.shattered))
                        .emit();
                    for s in &c.strings {
                        Record::new("string").field("value", s).emit();
                    }
                    for p in &c.patterns {
                        Record::new("pattern").field("value", p).emit();
                    }
                }
            }
            Ok(exit_when(verdict.shattered))
        }
        VcdimMode::Verify { k, set } => {
            let text = std::fs::read_to_string(&set)
                .with_context(|| format!("cannot read {}", set.display()))?;
            let strings: Vec<Sequence> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(Sequence::parse)
                .collect::<subseq_core::Result<_>>()?;
            let verdict = is_shattered(&strings, &full_class(k)?)?;
            match format {
                Format::Text => {
                    if verdict.shattered {
                        println!("shattered: {} strings, all subsets realized", strings.len());
                    } else {
                        println!(
                            "not shattered: first missing subset mask = {}",
                            verdict.missing_subset.unwrap_or(0)
                        );
                    }
                }
                Format::Structured => {
                    let mut rec = Record::new("shatter-verify")
                        .field("k", k)
                        .field("size", strings.len())
                        .field("shattered", u8::from(verdict.shattered));
                    if let Some(missing) = verdict.missing_subset {
                        rec = rec.field("missing", missing);
                    }
                    rec.emit();
                }
            }
            Ok(exit_when(verdict.shattered))
        }
    }
}

fn exit_when(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
