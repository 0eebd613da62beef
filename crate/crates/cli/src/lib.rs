//! Command-line surface for `hecke-eta`. [`run`] parses arguments, writes
//! the command output and returns the process exit code, so the commands
//! can be driven from tests without spawning a process.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hecke_eta::analytic::{self, EnvelopeConstants, GridSpec, GroupWord, HalfPlanePoint};
use hecke_eta::characters::{is_fundamental, CharTable};
use hecke_eta::cyclotomic::period_polynomials;
use hecke_eta::golden;
use hecke_eta::highprec::{self, Precision, DEFAULT_DIGITS};
use hecke_eta::lseries::{l_minus_one, l_prime_zero, LValueRecord};
use hecke_eta::oracle::OracleCheck;
use hecke_eta::partitions::PartitionTables;
use hecke_eta::qseries::{delta5_series, eta_series};
use hecke_eta::quad_ring::{RingCtx, RingElemJson};
use hecke_eta::records::{self, CoeffRecord, CSV_HEADER};
use hecke_eta::reports::{growth_report, sign_report, GROWTH_CSV_HEADER};
use hecke_eta::Error;

/// Environment variable holding the default number of significant digits.
pub const DIGITS_ENV: &str = "HECKE_ETA_DIGITS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hecke-eta", version, about = "Coefficients and checks for the eta analogues eta_D")]
pub struct Cli {
    /// Significant decimal digits for high-precision values.
    #[arg(long, global = true, env = DIGITS_ENV, default_value_t = DEFAULT_DIGITS)]
    pub digits: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact coefficients a_D(0..=N).
    Coeffs {
        #[command(flatten)]
        d: Disc,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// tau_5(1..=N), the coefficients of eta_5^5.
    Delta5 {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Recompute every reference coefficient and compare exactly.
    VerifyTable,
    /// Inversion and translation residuals at sample points, and for D = 5
    /// the root-of-unity law on random words.
    VerifyModularity {
        #[command(flatten)]
        d: Disc,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random words to check (D = 5 only).
        #[arg(long, default_value_t = 0)]
        words: usize,
    },
    /// Compare the product expansion with the partition convolution.
    OracleCheck {
        #[command(flatten)]
        d: Disc,
        #[arg(long = "N")]
        n: usize,
    },
    /// p(k), partitions into non-residues, and length counts mod D.
    Partitions {
        #[command(flatten)]
        d: Disc,
        #[arg(long = "N")]
        n: usize,
    },
    /// L(-1, chi_D), the valuation m and L'(0, chi_D).
    Lvalues {
        #[command(flatten)]
        d: Disc,
    },
    /// The period polynomials f_plus and f_minus.
    Periods {
        #[command(flatten)]
        d: Disc,
    },
    /// The character table and residue classes.
    Chars {
        #[command(flatten)]
        d: Disc,
    },
    /// Signs of the real embeddings of a_D(1..=N).
    Signs {
        #[command(flatten)]
        d: Disc,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// log |a_D(N)| against sqrt N with a least-squares fit.
    Growth {
        #[command(flatten)]
        d: Disc,
        #[arg(long = "N")]
        n: usize,
        /// Fit window `lo,hi`.
        #[arg(long, value_parser = parse_window)]
        window: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// eta_D(z) and eta_D(-1/z) on a rectangular grid, as CSV.
    Grid {
        #[command(flatten)]
        d: Disc,
        #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
        re_min: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        re_max: f64,
        #[arg(long, default_value_t = 0.5)]
        im_min: f64,
        #[arg(long, default_value_t = 1.5)]
        im_max: f64,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Disc {
    /// Fundamental discriminant D = 1 mod 4, D >= 5, squarefree.
    #[arg(long = "D", value_parser = parse_discriminant)]
    pub d: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn parse_discriminant(s: &str) -> Result<u64, String> {
    let d: u64 = s.parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if !is_fundamental(d as i64) {
        return Err(format!(
            "{d} is not a fundamental discriminant: need D = 1 mod 4, D >= 5 and D squarefree"
        ));
    }
    Ok(d)
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    Ok((lo, hi))
}

/// Failure of a command, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not pass.
    Verification(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Library(
                Error::InvalidDiscriminant(_)
                | Error::Capacity(_)
                | Error::Parse(_)
                | Error::Unsupported(_)
                | Error::NotInUpperHalfPlane(_),
            ) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Verification(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
            Failure::Io(e) => e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Command output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let precision = Precision::digits(cli.digits);
    match &cli.command {
        Command::Coeffs { d, n, format } => coeffs(d.d, *n, *format, precision, out),
        Command::Delta5 { n, format } => delta5(*n, *format, precision, out),
        Command::VerifyTable => verify_table(out),
        Command::VerifyModularity {
            d,
            samples,
            nmax,
            tol,
            seed,
            words,
        } => verify_modularity(d.d, *samples, *nmax, *tol, *seed, *words, out),
        Command::OracleCheck { d, n } => oracle_check(d.d, *n, out),
        Command::Partitions { d, n } => partitions(d.d, *n, out),
        Command::Lvalues { d } => lvalues(d.d, precision, out),
        Command::Periods { d } => periods(d.d, out),
        Command::Chars { d } => chars(d.d, out),
        Command::Signs { d, n, format } => signs(d.d, *n, *format, out),
        Command::Growth { d, n, window, format } => growth(d.d, *n, *window, *format, out),
        Command::Grid {
            d,
            re_min,
            re_max,
            im_min,
            im_max,
            steps,
            nmax,
        } => grid(
            d.d,
            GridSpec {
                re_min: *re_min,
                re_max: *re_max,
                im_min: *im_min,
                im_max: *im_max,
                steps: *steps,
                n_max: *nmax,
            },
            out,
        ),
    }
}

fn emit_records(records: &[CoeffRecord], format: Format, out: &mut dyn Write) -> CmdResult {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                writeln!(out, "{}", r.to_csv_row())?;
            }
        }
        Format::Json => writeln!(out, "{}", records::records_to_json(records))?,
    }
    Ok(())
}

fn coeffs(d: u64, n: usize, format: Format, precision: Precision, out: &mut dyn Write) -> CmdResult {
    let s = eta_series(d, n)?;
    let ctx = RingCtx::with_precision(d, precision)?;
    let records: Vec<CoeffRecord> = s
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| CoeffRecord::new(&ctx, k as u64, c))
        .collect();
    emit_records(&records, format, out)
}

fn delta5(n: usize, format: Format, precision: Precision, out: &mut dyn Write) -> CmdResult {
    let s = delta5_series(n)?;
    let ctx = RingCtx::with_precision(5, precision)?;
    let records: Vec<CoeffRecord> = s
        .coeffs()
        .iter()
        .take(n)
        .enumerate()
        .map(|(k, c)| CoeffRecord::new(&ctx, k as u64 + 1, c))
        .collect();
    emit_records(&records, format, out)
}

fn verify_table(out: &mut dyn Write) -> CmdResult {
    let mut checks = golden::check_table(&golden::table_entries())?;
    checks.extend(golden::check_tau5(&golden::tau5_entries())?);
    for c in &checks {
        writeln!(out, "{}", c.line())?;
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    writeln!(out, "{passed}/{} PASS", checks.len())?;
    if passed != checks.len() {
        return Err(Failure::Verification(format!(
            "{} reference values differ",
            checks.len() - passed
        )));
    }
    Ok(())
}

fn verify_modularity(
    d: u64,
    samples: usize,
    nmax: usize,
    tol: f64,
    seed: u64,
    words: usize,
    out: &mut dyn Write,
) -> CmdResult {
    if nmax == 0 {
        return Err(Error::Unsupported("--nmax must be at least 1".into()).into());
    }
    let points = analytic::sample_points(d, samples, seed);
    let residuals = analytic::verify_modularity(d, &points, nmax)?;
    let mut failures = 0;
    for r in &residuals {
        let ok = r.within(tol);
        failures += usize::from(!ok);
        writeln!(
            out,
            "{} D={} z={}+{}i inversion={} translation={}",
            if ok { "PASS" } else { "FAIL" },
            d,
            highprec::format_f64(r.z.re),
            highprec::format_f64(r.z.im),
            highprec::format_f64(r.inversion),
            highprec::format_f64(r.translation)
        )?;
    }
    if words > 0 {
        if d != 5 {
            return Err(Error::Unsupported("--words needs D = 5".into()).into());
        }
        for ks in random_words(words, seed) {
            let w = GroupWord::new(&ks, 5)?;
            let r = w.check_u_gamma(None, None)?;
            let ok = r.passed(1e-4);
            failures += usize::from(!ok);
            writeln!(
                out,
                "{} word={} u={} sum_mod5={} residual={}",
                if ok { "PASS" } else { "FAIL" },
                w,
                r.predicted_u,
                r.exponent_sum_mod5,
                highprec::format_f64(r.residual)
            )?;
        }
    }
    if failures > 0 {
        return Err(Failure::Verification(format!("{failures} checks exceeded tolerance")));
    }
    Ok(())
}

/// Deterministic words of length 1..=6 with exponents in `-2..=2`.
pub fn random_words(count: usize, seed: u64) -> Vec<Vec<i64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=6);
            (0..len).map(|_| rng.gen_range(-2..=2)).collect()
        })
        .collect()
}

fn oracle_check(d: u64, n: usize, out: &mut dyn Write) -> CmdResult {
    let check = OracleCheck::run(d, n)?;
    for (k, (p, c)) in check.product.iter().zip(&check.convolution).enumerate() {
        let status = if p == c { "PASS" } else { "FAIL" };
        let mut line = format!("{status} D={d} N={k} {}", hecke_eta::quad_ring::format_canonical(p, d));
        if p != c {
            line.push_str(&format!(" convolution {}", hecke_eta::quad_ring::format_canonical(c, d)));
        }
        writeln!(out, "{line}")?;
    }
    match check.first_divergence() {
        None => {
            writeln!(out, "{}/{} PASS", n + 1, n + 1)?;
            Ok(())
        }
        Some(k) => {
            writeln!(out, "first divergence at N={k}")?;
            Err(Failure::Verification(format!("coefficients differ from N = {k}")))
        }
    }
}

fn partitions(d: u64, n: usize, out: &mut dyn Write) -> CmdResult {
    if n > hecke_eta::qseries::MAX_ORDER {
        return Err(Error::Capacity(format!("N = {n} exceeds {}", hecke_eta::qseries::MAX_ORDER)).into());
    }
    let tables = PartitionTables::new(&CharTable::new(d)?, n);
    writeln!(out, "{}", serde_json::to_string(&tables).expect("tables serialize"))?;
    Ok(())
}

#[derive(Serialize)]
struct LValuesOutput<'a> {
    #[serde(flatten)]
    record: &'a LValueRecord,
    #[serde(rename = "L_prime_0")]
    l_prime_zero: String,
}

fn lvalues(d: u64, precision: Precision, out: &mut dyn Write) -> CmdResult {
    let ct = CharTable::new(d)?;
    let rec = l_minus_one(&ct)?;
    let lp = l_prime_zero(&ct, precision);
    let value = LValuesOutput {
        record: &rec,
        l_prime_zero: highprec::to_digits_string(&lp, precision.decimal_digits()),
    };
    writeln!(out, "{}", serde_json::to_string(&value).expect("value serializes"))?;
    Ok(())
}

fn periods(d: u64, out: &mut dyn Write) -> CmdResult {
    let ct = CharTable::new(d)?;
    let pair = period_polynomials(&ct)?;
    let render = |poly: &[hecke_eta::RingElem]| -> Vec<serde_json::Value> {
        poly.iter()
            .map(|c| {
                json!({
                    "text": hecke_eta::quad_ring::format_canonical(c, d),
                    "value": RingElemJson::from(c),
                })
            })
            .collect()
    };
    let value = json!({
        "D": d,
        "f_plus": render(&pair.f_plus),
        "f_minus": render(&pair.f_minus),
    });
    writeln!(out, "{}", serde_json::to_string(&value).expect("value serializes"))?;
    Ok(())
}

fn chars(d: u64, out: &mut dyn Write) -> CmdResult {
    let ct = CharTable::new(d)?;
    writeln!(out, "{}", serde_json::to_string(&ct).expect("table serializes"))?;
    Ok(())
}

fn signs(d: u64, n: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let r = sign_report(d, n)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&r).expect("report serializes"))?,
        Format::Csv => {
            writeln!(out, "N,sign")?;
            for (i, s) in r.signs.iter().enumerate() {
                writeln!(out, "{},{}", i + 1, s)?;
            }
        }
    }
    Ok(())
}

fn growth(d: u64, n: usize, window: Option<(usize, usize)>, format: Format, out: &mut dyn Write) -> CmdResult {
    let r = growth_report(d, n, window)?;
    let constants = EnvelopeConstants::new(d)?;
    match format {
        Format::Json => {
            let value = json!({ "report": r, "envelope_constants": constants });
            writeln!(out, "{}", serde_json::to_string(&value).expect("report serializes"))?;
        }
        Format::Csv => {
            writeln!(out, "{GROWTH_CSV_HEADER}")?;
            for row in r.csv_rows() {
                writeln!(out, "{row}")?;
            }
            writeln!(
                out,
                "# slope={} intercept={} window={},{}",
                highprec::format_f64(r.slope),
                highprec::format_f64(r.intercept),
                r.window.0,
                r.window.1
            )?;
        }
    }
    Ok(())
}

fn grid(d: u64, spec: GridSpec, out: &mut dyn Write) -> CmdResult {
    if spec.steps == 0 || spec.n_max == 0 {
        return Err(Error::Unsupported("--steps and --nmax must be positive".into()).into());
    }
    HalfPlanePoint::new(spec.re_min, spec.im_min)?;
    let rows = analytic::grid(d, spec)?;
    writeln!(out, "{}", analytic::GRID_CSV_HEADER)?;
    for r in rows {
        writeln!(out, "{}", r.to_csv_row())?;
    }
    Ok(())
}
