//! Command-line front end: tables, per-point verification, parameter
//! sweeps, determinant evaluation, and bad-prime reports.
//!
//! Exit codes are a stable contract for CI: 0 on success, 1 when a
//! mathematical check fails, 2 on usage or parameter errors. Results go to
//! stdout, progress to stderr, and every run is deterministic for fixed
//! flags (the scan report's timestamp and timing are suppressible with
//! `--no-timestamp`).

use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use cyclotome::binomial::{
    adc_det, bareiss_det, build_binom_matrix, block_det_spec, BinomMatrixSpec, DetVariant,
};
use cyclotome::bounds::{bad_prime_certificate, check_asymptotic_00, Certificate};
use cyclotome::cyclotomy::{require_odd_prime_power, CycloParams, TableMethod};
use cyclotome::field::FieldContext;
use cyclotome::sweep::{sweep, Parity, ScanRange};
use cyclotome::{Error, Limits};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "cyclotome",
    version,
    about = "Exact cyclotomic numbers over finite fields: tables, identity checks, bound sweeps, and binomial determinants",
    after_help = "Exit codes: 0 = success, 1 = a mathematical check failed, 2 = usage or parameter error."
)]
struct Cli {
    /// Seed for the deterministic irreducible-modulus search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Field-order / enumeration limit override.
    #[arg(long, global = true, env = "CYCLOTOME_Q_LIMIT")]
    q_limit: Option<u64>,
    /// Matrix-method coset-size limit override.
    #[arg(long, global = true, env = "CYCLOTOME_K_LIMIT")]
    k_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(q) = self.q_limit {
            limits.q_limit = q;
        }
        if let Some(k) = self.k_limit {
            limits.k_matrix_limit = k;
        }
        limits
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the e×e cyclotomic-number table for one parameter point.
    Table(TableArgs),
    /// Run every identity and cross-method check at one parameter point.
    Verify(VerifyArgs),
    /// Sweep all odd prime powers q ≤ q-max and write a JSON report.
    Scan(ScanArgs),
    /// Evaluate a binomial determinant by formula and by elimination.
    Det(DetArgs),
    /// Report characteristics where (0,0) deviates from its large-p value.
    Badprimes(BadprimesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    /// Field order, an odd prime power.
    #[arg(long)]
    q: u64,
    /// Order of the cyclotomy (number of cosets); exactly one of --e, --k.
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    e: Option<u64>,
    /// Coset size; exactly one of --e, --k.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field order, an odd prime power.
    #[arg(long)]
    q: u64,
    /// Coset size; e = (q − 1)/k.
    #[arg(long)]
    k: u64,
    /// Methods to cross-check: `all` or a comma list of
    /// enum,rank,gcd.
    #[arg(long, default_value = "all")]
    methods: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest field order visited.
    #[arg(long)]
    q_max: u64,
    /// Worker threads for the sweep.
    #[arg(short = 'j', long, default_value_t = 1)]
    parallelism: usize,
    /// Report file; `-` writes the JSON to stdout.
    #[arg(long, default_value = "scan-report.json")]
    out: String,
    /// Strip the timestamp and timing fields for byte-reproducible output.
    #[arg(long)]
    no_timestamp: bool,
    /// Restrict to odd or even coset sizes k.
    #[arg(long, value_enum)]
    k_parity: Option<ParityArg>,
    /// Restrict to a single coset size k.
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Args)]
struct DetArgs {
    /// Row offset r of the binomial matrix (binom(r+s, r−i+j)).
    #[arg(long, requires = "m", conflicts_with_all = ["k", "variant"])]
    r: Option<u64>,
    /// Column offset s of the binomial matrix.
    #[arg(long, requires = "m", conflicts_with_all = ["k", "variant"])]
    s: Option<u64>,
    /// Matrix size m.
    #[arg(long, conflicts_with_all = ["k", "variant"], required_unless_present = "k")]
    m: Option<u64>,
    /// Coset size selecting one of the named determinants.
    #[arg(long, requires = "variant")]
    k: Option<u64>,
    /// Which named determinant: the m×m parity block (even/odd) or the
    /// (m+1)×(m+1) extended block.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BadprimesArgs {
    /// Coset size k.
    #[arg(long)]
    k: u64,
    /// Largest characteristic scanned (prime fields, p ≡ 1 mod k).
    #[arg(long, default_value_t = 1000)]
    p_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.limits();
    let seed = cli.seed;
    let result = match &cli.command {
        Command::Table(args) => cmd_table(args, seed, &limits),
        Command::Verify(args) => cmd_verify(args, seed, &limits),
        Command::Scan(args) => cmd_scan(args, seed, &limits),
        Command::Det(args) => cmd_det(args, &limits),
        Command::Badprimes(args) => cmd_badprimes(args, seed, &limits),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Builds the parameter point, treating every construction failure as a
/// usage error (exit 2).
fn point(q: u64, e: Option<u64>, k: Option<u64>, seed: u64, limits: &Limits) -> Result<CycloParams, Error> {
    let (p, n) = require_odd_prime_power(q)?;
    let ctx = FieldContext::with_limits(p, n as usize, seed, *limits)?;
    match (e, k) {
        (Some(e), None) => CycloParams::from_order(ctx, e),
        (None, Some(k)) => CycloParams::from_coset_size(ctx, k),
        _ => unreachable!("clap enforces exactly one of --e, --k"),
    }
}

fn cmd_table(args: &TableArgs, seed: u64, limits: &Limits) -> Result<ExitCode, Error> {
    let params = point(args.q, args.e, args.k, seed, limits)?;
    let table = params.table(TableMethod::Enumeration)?;
    match args.format {
        Format::Csv => println!("{}", table.to_csv()),
        Format::Json => println!("{}", table.to_json()),
        Format::Text => {
            println!(
                "cyclotomic numbers for q = {}, e = {}, k = {} (rows a, columns b)",
                table.q, table.e, table.k
            );
            let width = table
                .entries
                .iter()
                .flatten()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1);
            for row in &table.entries {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
                println!("{}", cells.join(" "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn cmd_verify(args: &VerifyArgs, seed: u64, limits: &Limits) -> Result<ExitCode, Error> {
    let methods: Vec<&str> = if args.methods == "all" {
        vec!["enum", "rank", "gcd"]
    } else {
        args.methods.split(',').map(str::trim).collect()
    };
    for m in &methods {
        if !["enum", "rank", "gcd"].contains(m) {
            return Err(Error::WitnessCheck(format!(
                "unknown method `{m}`; expected enum, rank, gcd, or all"
            )));
        }
    }
    let params = point(args.q, None, Some(args.k), seed, limits)?;
    let table = params.table(TableMethod::Enumeration)?;
    let mut checks: Vec<Check> = Vec::new();

    let mut agree = true;
    let mut agree_detail = String::from("enumeration");
    for m in &methods {
        let method = match *m {
            "rank" => TableMethod::MatrixRank,
            "gcd" => TableMethod::PolyGcd,
            _ => continue,
        };
        let other = params.table(method)?;
        agree_detail.push_str(&format!(", {}", method.as_str()));
        if other.entries != table.entries {
            agree = false;
            agree_detail.push_str(" (disagrees)");
        }
    }
    checks.push(Check {
        name: "tri-method-agreement",
        pass: agree,
        detail: agree_detail,
    });

    let q = table.q as u128;
    let k = table.k as u128;
    checks.push(Check {
        name: "sum",
        pass: table.sum() == q - 2,
        detail: format!("Σ(a,b) = {} , q − 2 = {}", table.sum(), q - 2),
    });
    let pairs = (k - 1) * k.saturating_sub(2);
    checks.push(Check {
        name: "sum-of-squares",
        pass: table.sum_of_squares() == pairs + q - 2,
        detail: format!(
            "Σ(a,b)² = {} , (k−1)(k−2) + q − 2 = {}",
            table.sum_of_squares(),
            pairs + q - 2
        ),
    });
    let (lhs, rhs) = cyclotome::cyclotomy::variance_sides(&table);
    checks.push(Check {
        name: "variance",
        pass: lhs == rhs,
        detail: format!("LHS = {lhs}, RHS = {rhs}"),
    });
    checks.push(Check {
        name: "entrywise-bound",
        pass: table.remark_bound_holds(),
        detail: "(e²(a,b) − (q−2))² < e⁵k for every cell".into(),
    });
    checks.push(Check {
        name: "row-sums",
        pass: table.row_sums_match(&params)?,
        detail: "Σ_b (a,b) = k − [−1 ∈ C_a]".into(),
    });
    let bij = params.wilson_bijection_check()?;
    checks.push(Check {
        name: "bijection",
        pass: bij.holds(),
        detail: format!(
            "|X| = {}, |Y| = {}, (k−1)(k−2) = {}",
            bij.x_count, bij.y_count, bij.expected
        ),
    });

    let first_fail = checks.iter().find(|c| !c.pass);
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "q": table.q,
                "k": table.k,
                "e": table.e,
                "pass": first_fail.is_none(),
                "checks": checks.iter().map(|c| serde_json::json!({
                    "name": c.name, "pass": c.pass, "detail": c.detail,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            for c in &checks {
                println!(
                    "check {:<22} {}  ({})",
                    c.name,
                    if c.pass { "ok" } else { "FAILED" },
                    c.detail
                );
            }
        }
    }
    if let Some(fail) = first_fail {
        // Machine-readable diagnostic naming the first failing identity.
        if args.format != Format::Json {
            let diag = serde_json::json!({
                "failed": fail.name,
                "q": table.q,
                "k": table.k,
                "detail": fail.detail,
            });
            println!("{diag}");
        }
        return Ok(ExitCode::from(EXIT_CHECK_FAILED));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(args: &ScanArgs, seed: u64, limits: &Limits) -> Result<ExitCode, Error> {
    if args.q_max > limits.q_limit {
        return Err(Error::EnumerationLimit {
            q: args.q_max,
            limit: limits.q_limit,
        });
    }
    let range = ScanRange {
        q_max: args.q_max,
        k_parity: args.k_parity.map(|p| match p {
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }),
        k_only: args.k,
    };
    eprintln!(
        "scanning odd prime powers q <= {} with {} worker(s)...",
        args.q_max, args.parallelism
    );
    let mut report = sweep(&range, args.parallelism, seed, limits)?;
    if args.no_timestamp {
        report = report.deterministic_body();
    } else {
        let epoch = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default();
        report.generated_at = Some(epoch);
    }
    let json = report.to_json();
    if args.out == "-" {
        println!("{json}");
    } else {
        let mut file = std::fs::File::create(&args.out)
            .map_err(|e| Error::WitnessCheck(format!("cannot write {}: {e}", args.out)))?;
        file.write_all(json.as_bytes())
            .and_then(|_| file.write_all(b"\n"))
            .map_err(|e| Error::WitnessCheck(format!("cannot write {}: {e}", args.out)))?;
        eprintln!("report written to {}", args.out);
    }
    print!("{}", report.to_text());
    let failed = report.summary.violations > 0 || report.summary.identity_failures > 0;
    Ok(if failed {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_det(args: &DetArgs, limits: &Limits) -> Result<ExitCode, Error> {
    let (spec, formula): (BinomMatrixSpec, BigInt) = match (args.k, &args.variant) {
        (Some(k), Some(variant)) => {
            let variant: DetVariant = variant
                .parse()
                .map_err(Error::WitnessCheck)?;
            let spec = block_det_spec(k, variant)?;
            (spec, adc_det(&spec, limits)?)
        }
        _ => {
            let spec = BinomMatrixSpec {
                r: args.r.unwrap_or(0),
                s: args.s.unwrap_or(0),
                m: args.m.expect("clap requires --m without --k"),
            };
            (spec, adc_det(&spec, limits)?)
        }
    };
    let oracle = bareiss_det(&build_binom_matrix(&spec, limits)?);
    let matches = formula == oracle;
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "r": spec.r, "s": spec.s, "m": spec.m,
                "formula": formula.to_string(),
                "oracle": oracle.to_string(),
                "match": matches,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            println!("formula = {formula}");
            println!("oracle  = {oracle}");
            println!("match: {matches}");
        }
    }
    Ok(if matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_badprimes(args: &BadprimesArgs, seed: u64, limits: &Limits) -> Result<ExitCode, Error> {
    if args.k == 0 {
        return Err(Error::ZeroK);
    }
    let records = check_asymptotic_00(args.k, args.p_max, seed)?;
    let deviations: Vec<_> = records.iter().filter(|r| r.deviates).collect();
    let certificate = bad_prime_certificate(args.k, limits);
    match args.format {
        Format::Json => {
            let cert_json = match &certificate {
                Ok(Certificate::RankDeficient) => serde_json::json!({"kind": "rank-deficient"}),
                Ok(Certificate::Determinant { value, factors, unfactored }) => serde_json::json!({
                    "kind": "determinant",
                    "value": value.to_string(),
                    "factors": factors.iter().map(|(p, m)| (p.to_string(), m)).collect::<Vec<_>>(),
                    "unfactored": unfactored.as_ref().map(|u| u.to_string()),
                }),
                Err(e) => serde_json::json!({"kind": "unavailable", "reason": e.to_string()}),
            };
            let value = serde_json::json!({
                "k": args.k,
                "p_max": args.p_max,
                "expected": if args.k.is_multiple_of(6) { 2 } else { 0 },
                "primes_scanned": records.len(),
                "deviations": deviations.iter().map(|r| serde_json::json!({
                    "p": r.p, "lambda": r.lambda, "expected": r.expected,
                })).collect::<Vec<_>>(),
                "certificate": cert_json,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            println!(
                "k = {}: scanned {} primes p ≡ 1 (mod k), p <= {}; expected (0,0) = {}",
                args.k,
                records.len(),
                args.p_max,
                if args.k.is_multiple_of(6) { 2 } else { 0 }
            );
            if deviations.is_empty() {
                println!("no deviating primes");
            }
            for r in &deviations {
                println!("p = {}: (0,0) = {} (expected {})", r.p, r.lambda, r.expected);
            }
            match &certificate {
                Ok(Certificate::RankDeficient) => {
                    println!("certificate: rank-deficient (det C^(0,0) = 0 over the integers)");
                }
                Ok(Certificate::Determinant { value, factors, unfactored }) => {
                    let mut parts: Vec<String> = factors
                        .iter()
                        .map(|(p, m)| {
                            if *m == 1 {
                                p.to_string()
                            } else {
                                format!("{p}^{m}")
                            }
                        })
                        .collect();
                    if let Some(u) = unfactored {
                        parts.push(format!("C{}", u.to_string().len()));
                    }
                    if parts.is_empty() {
                        println!("certificate: |det C^(0,0)| = {value}");
                    } else {
                        println!(
                            "certificate: |det C^(0,0)| = {} = {}",
                            value,
                            parts.join(" * ")
                        );
                    }
                }
                Err(_) => {}
            }
        }
    }
    if let Err(e) = certificate {
        eprintln!("error: certificate unavailable: {e}");
        return Ok(ExitCode::from(EXIT_USAGE));
    }
    Ok(ExitCode::SUCCESS)
}
