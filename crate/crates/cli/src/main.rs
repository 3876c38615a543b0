//! Command-line front end: configuration, dispatch and report emission.
//!
//! Every subcommand builds a [`Report`] and renders it as JSON, CSV or text.
//! Numeric inputs are parsed exactly — `a/b` fractions or finite decimals —
//! never through floating point, and identical configurations (including the
//! seed) produce byte-identical reports.

use clap::{ArgAction, Parser, Subcommand};
use liouville_core::exact::rational::{int, parse_rational, rat, to_f64, Rational};
use liouville_core::report::{Enclosure, Entry, Outcome, Report};
use liouville_core::{claims, coeffs, jets, shooter, thresholds, young};
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::process::ExitCode;

const USAGE_ERROR: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "liouville",
    version,
    about = "Certified verification toolkit for the Liouville problem \
             Δv + N v^p + M |∇v|^q = 0 at the critical gradient exponent"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_parser = ["json", "csv", "text"])]
    format: Option<String>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,

    /// Flat key-value configuration file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<String>,

    /// Working precision in bits (default 96, or $LIOUVILLE_PRECISION).
    #[arg(long, global = true)]
    precision: Option<String>,

    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true)]
    seed: Option<String>,

    /// Worker threads (results never depend on this).
    #[arg(long, global = true)]
    jobs: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the ten supporting inequality claims.
    Claims {
        /// Check every dimension up to this bound.
        #[arg(long)]
        n_max: Option<String>,
    },
    /// Thresholds M_C, M₁, M₂, U₀ and the discriminant Δ at one (n, p).
    Thresholds {
        #[arg(long)]
        n: Option<String>,
        /// Exponent p as a fraction "a/b" or exact decimal.
        #[arg(long)]
        p: Option<String>,
    },
    /// Run the jet identity suite.
    Identities {
        #[arg(long)]
        trials: Option<String>,
        /// Relative residual tolerance (exact decimal).
        #[arg(long)]
        tolerance: Option<String>,
    },
    /// Young-exponent feasibility across a dimension range.
    Young {
        #[arg(long)]
        n_min: Option<String>,
        #[arg(long)]
        n_max: Option<String>,
    },
    /// Integrate one radial shot and classify it.
    Shoot {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: Option<String>,
        /// Gradient coefficient M.
        #[arg(short, long)]
        m: Option<String>,
        /// Initial height v(0).
        #[arg(short, long)]
        a: Option<String>,
        #[arg(long)]
        r_max: Option<String>,
        /// Also check the scaling symmetry at this factor k.
        #[arg(long, action = ArgAction::SetTrue)]
        scaling: bool,
    },
    /// Classify a sweep of initial heights.
    Sweep {
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(short, long)]
        m: Option<String>,
        #[arg(long)]
        heights: Option<String>,
        #[arg(long)]
        height_min: Option<String>,
        #[arg(long)]
        height_max: Option<String>,
        #[arg(long)]
        r_max: Option<String>,
    },
    /// Aggregate every module into one document.
    Report {
        #[arg(long)]
        n_max: Option<String>,
        #[arg(long)]
        trials: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE_ERROR),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

/// Values from the configuration file, consulted when a flag is absent.
struct Settings {
    file: BTreeMap<String, String>,
}

impl Settings {
    fn load(path: Option<&str>) -> Result<Self, String> {
        let mut file = BTreeMap::new();
        if let Some(path) = path {
            let body = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config file {path}: {e}"))?;
            for (idx, line) in body.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or(format!("{path}:{}: expected `key = value`", idx + 1))?;
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Settings { file })
    }

    /// Flag value if given, else config-file value, else default.
    fn get<'a>(&'a self, flag: &'a Option<String>, key: &str, default: &'a str) -> &'a str {
        flag.as_deref()
            .or_else(|| self.file.get(key).map(|s| s.as_str()))
            .unwrap_or(default)
    }
}

fn parse_exact(name: &str, s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("--{name} {s:?}: {e}"))
}

fn parse_int(name: &str, s: &str) -> Result<i64, String> {
    let r = parse_exact(name, s)?;
    if !r.is_integer() {
        return Err(format!("--{name} {s:?}: expected an integer"));
    }
    r.to_i64()
        .ok_or_else(|| format!("--{name} {s:?}: out of range"))
}

fn parse_u64(name: &str, s: &str) -> Result<u64, String> {
    let v = parse_int(name, s)?;
    u64::try_from(v).map_err(|_| format!("--{name} {s:?}: expected a nonnegative integer"))
}

fn parse_f64_exact(name: &str, s: &str) -> Result<f64, String> {
    Ok(to_f64(&parse_exact(name, s)?))
}

fn run(cli: Cli) -> Result<u8, String> {
    let settings = Settings::load(cli.config.as_deref())?;
    let format = settings.get(&cli.format, "format", "text").to_string();
    if !["json", "csv", "text"].contains(&format.as_str()) {
        return Err(format!("unknown format {format:?}"));
    }
    let env_precision = std::env::var("LIOUVILLE_PRECISION").ok();
    let precision_str = cli
        .precision
        .as_deref()
        .or_else(|| settings.file.get("precision").map(|s| s.as_str()))
        .or(env_precision.as_deref())
        .unwrap_or("96")
        .to_string();
    let precision = u32::try_from(parse_int("precision", &precision_str)?)
        .map_err(|_| "precision must be positive".to_string())?;
    let seed = parse_u64("seed", settings.get(&cli.seed, "seed", "2024"))?;
    if let Some(jobs) = &cli.jobs {
        let jobs = parse_u64("jobs", jobs)? as usize;
        // results are pure; thread count only affects wall time
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }

    let mut report = match &cli.command {
        Command::Claims { n_max } => {
            let n_max = parse_int("n-max", settings.get(n_max, "n-max", "500"))?;
            cmd_claims(n_max, seed)
        }
        Command::Thresholds { n, p } => {
            let n = parse_int("n", settings.get(n, "n", "7"))?;
            let p = parse_exact("p", settings.get(p, "p", "9/5"))?;
            cmd_thresholds(n, &p, precision, seed)?
        }
        Command::Identities { trials, tolerance } => {
            let trials = parse_u64("trials", settings.get(trials, "trials", "250"))?;
            let tol = parse_f64_exact(
                "tolerance",
                settings.get(tolerance, "tolerance", "1/1000000000"),
            )?;
            cmd_identities(trials, tol, seed)
        }
        Command::Young { n_min, n_max } => {
            let lo = parse_int("n-min", settings.get(n_min, "n-min", "3"))?;
            let hi = parse_int("n-max", settings.get(n_max, "n-max", "50"))?;
            cmd_young(lo, hi, seed)?
        }
        Command::Shoot {
            n,
            p,
            m,
            a,
            r_max,
            scaling,
        } => {
            let n = parse_int("n", settings.get(n, "n", "5"))?;
            let p = parse_f64_exact("p", settings.get(p, "p", "2"))?;
            let m = parse_f64_exact("m", settings.get(m, "m", "1"))?;
            let a = parse_f64_exact("a", settings.get(a, "a", "1"))?;
            let r_max = parse_f64_exact("r-max", settings.get(r_max, "r-max", "100"))?;
            cmd_shoot(n, p, m, a, r_max, *scaling, seed)?
        }
        Command::Sweep {
            n,
            p,
            m,
            heights,
            height_min,
            height_max,
            r_max,
        } => {
            let n = parse_int("n", settings.get(n, "n", "5"))?;
            let p = parse_f64_exact("p", settings.get(p, "p", "2"))?;
            let m = parse_f64_exact("m", settings.get(m, "m", "1"))?;
            let count = parse_u64("heights", settings.get(heights, "heights", "10"))? as usize;
            let h_lo = parse_f64_exact("height-min", settings.get(height_min, "height-min", "1/10"))?;
            let h_hi = parse_f64_exact("height-max", settings.get(height_max, "height-max", "10"))?;
            let r_max = parse_f64_exact("r-max", settings.get(r_max, "r-max", "200"))?;
            cmd_sweep(n, p, m, count, h_lo, h_hi, r_max, seed)?
        }
        Command::Report { n_max, trials } => {
            let n_max = parse_int("n-max", settings.get(n_max, "n-max", "120"))?;
            let trials = parse_u64("trials", settings.get(trials, "trials", "100"))?;
            cmd_report(n_max, trials, precision, seed)?
        }
    };
    report.set_config("format", &format);
    report.set_config("precision", precision.to_string());

    let body = match format.as_str() {
        "json" => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| format!("serialization failed: {e}"))?;
            s.push('\n');
            s
        }
        "csv" => report.to_csv(),
        _ => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| format!("cannot write {path}: {e}"))?
        }
        None => print!("{body}"),
    }
    Ok(u8::try_from(report.exit_code()).unwrap_or(1))
}

fn claim_outcome(v: &claims::Verdict) -> Outcome {
    match v {
        claims::Verdict::CertifiedAllN { .. } => Outcome::Certified,
        claims::Verdict::VerifiedUpTo(_) => Outcome::Verified,
        claims::Verdict::Failed { .. } => Outcome::Failed,
    }
}

fn cmd_claims(n_max: i64, seed: u64) -> Report {
    let mut report = Report::new("claims", seed);
    report.set_config("n-max", n_max.to_string());
    for r in claims::verify_all(n_max) {
        let detail = match &r.verdict {
            claims::Verdict::CertifiedAllN { certificate_from } => format!(
                "certificate on [{certificate_from}, ∞), checked per-n to {}, min margin {:.3e}",
                r.checked_to, r.min_margin
            ),
            claims::Verdict::VerifiedUpTo(n) => format!("verified per-n up to {n}"),
            claims::Verdict::Failed { n } => format!("first failure at n = {n}"),
        };
        report.push(Entry::new(format!("claim-{}", r.claim), claim_outcome(&r.verdict)).with_detail(detail));
    }
    let reductions: [(&str, bool); 4] = [
        ("claim-1-cubic-reduction", claims::claim1_cubic_route()),
        ("claim-10-quartic-certificate", claims::verify_claim(10, 7).certified()),
        ("d1d2-identity", (7..=n_max.max(7)).all(claims::d1d2_identity)),
        (
            "closing-polynomial",
            thresholds::closing_polynomial_positive(),
        ),
    ];
    for (name, ok) in reductions {
        report.push(Entry::new(
            name,
            if ok { Outcome::Certified } else { Outcome::Failed },
        ));
    }
    report
}

fn cmd_thresholds(n: i64, p: &Rational, precision: u32, seed: u64) -> Result<Report, String> {
    let mut report = Report::new("thresholds", seed);
    report.set_config("n", n.to_string());
    report.set_config("p", p.to_string());

    let mc = thresholds::classical_bound(n, p, precision).map_err(|e| e.to_string())?;
    report.push(
        Entry::new("M_C", Outcome::Certified)
            .with_enclosure(Enclosure::from_interval(&mc))
            .with_detail("classical upper threshold"),
    );

    match thresholds::m1(n, p, precision).map_err(|e| e.to_string())? {
        thresholds::M1::Infinite => report.push(
            Entry::new("M1", Outcome::Certified)
                .with_detail("no finite upper restriction for 3 ≤ n ≤ 6"),
        ),
        thresholds::M1::Finite(iv) => report.push(
            Entry::new("M1", Outcome::Certified).with_enclosure(Enclosure::from_interval(&iv)),
        ),
    }

    if n >= 7 {
        match thresholds::m2(n, p, precision).map_err(|e| e.to_string())? {
            thresholds::M2::Zero => report.push(
                Entry::new("M2", Outcome::Certified)
                    .with_detail("zero below the window edge (n+2)/(n−2) − 1/n²"),
            ),
            thresholds::M2::Finite(iv) => report.push(
                Entry::new("M2", Outcome::Certified).with_enclosure(Enclosure::from_interval(&iv)),
            ),
        }

        let delta = thresholds::discriminant_delta(n, p).map_err(|e| e.to_string())?;
        let outcome = if delta.sign() > 0 {
            Outcome::Certified
        } else {
            Outcome::Failed
        };
        report.push(
            Entry::new("delta", outcome)
                .with_enclosure(Enclosure::from_interval(&delta.enclosure(precision)))
                .with_detail("discriminant of K₃ in U; positivity is exact in ℚ(√Δ')"),
        );

        let u0 = thresholds::u0_report(n, p, precision).map_err(|e| e.to_string())?;
        report.push(
            Entry::new(
                "U0-between-roots",
                if u0.between_roots {
                    Outcome::Certified
                } else {
                    Outcome::Inconclusive
                },
            )
            .with_enclosure(Enclosure::from_interval(&u0.u0)),
        );

        match thresholds::m2_lt_m1(n, 20, precision) {
            Ok(gap) => report.push(
                Entry::new("M2-lt-M1", Outcome::Certified)
                    .with_enclosure(Enclosure::from_point(&gap))
                    .with_detail("smallest M₁ − M₂ gap over a 20-point p-grid in the window"),
            ),
            Err(e) => report
                .push(Entry::new("M2-lt-M1", Outcome::Inconclusive).with_detail(e.to_string())),
        }
    } else {
        let eps0 = rat(1, 10_000);
        let q = coeffs::critical_q(p);
        let u = thresholds::small_n_default_u(n, &q);
        let small = thresholds::small_n_verify(n, p, &eps0, &u);
        report.push(
            Entry::new(
                "small-n-multipliers",
                if small.both_hold() {
                    Outcome::Certified
                } else {
                    Outcome::Failed
                },
            )
            .with_detail(format!(
                "K₃ ≥ ε₀ {} and K₅ ≥ √ε₀ {} at ε₀ = 10⁻⁴ (exact rational check)",
                small.k3_ok, small.k5_ok
            )),
        );
    }
    Ok(report)
}

fn cmd_identities(trials: u64, tolerance: f64, seed: u64) -> Report {
    let mut report = Report::new("identities", seed);
    report.set_config("trials", trials.to_string());
    report.set_config("tolerance", format!("{tolerance:e}"));
    let dims = [3i64, 5, 7, 10];
    let summary = jets::run_suite(trials, seed, &dims, tolerance);
    for id in jets::ALL_IDENTITIES {
        let r = summary.max_residuals[id.index()];
        let ok = r < tolerance;
        report.push(
            Entry::new(
                format!("identity-{id:?}"),
                if ok { Outcome::Verified } else { Outcome::Failed },
            )
            .with_detail(format!("max relative residual {r:.3e}")),
        );
    }
    report.push(Entry::new(
        "pointwise-inequality",
        if summary.inequality_ok {
            Outcome::Verified
        } else {
            Outcome::Failed
        },
    ));
    report.push(Entry::new(
        "frame-invariants",
        if summary.invariants_ok {
            Outcome::Verified
        } else {
            Outcome::Failed
        },
    ));
    report
}

fn cmd_young(n_min: i64, n_max: i64, seed: u64) -> Result<Report, String> {
    if n_min < 3 || n_max < n_min {
        return Err("young requires 3 ≤ n-min ≤ n-max".into());
    }
    let mut report = Report::new("young", seed);
    report.set_config("n-min", n_min.to_string());
    report.set_config("n-max", n_max.to_string());
    for n in n_min..=n_max {
        let p = thresholds::critical_p(n);
        // γ = 0 frame with the standard small positive exponent shift
        let alpha0 = -(&p - rat(1, 100)) * rat(2, n + 2);
        let mut ok = feasible(n, &int(0), &alpha0, &p);
        if n >= 7 {
            let gamma = int(n - 4);
            let alpha = -rat((n - 2) * (n - 2), n);
            ok = ok && feasible(n, &gamma, &alpha, &p) && feasible(n, &gamma, &alpha, &thresholds::window_edge(n));
        }
        report.push(Entry::new(
            format!("n-{n}"),
            if ok { Outcome::Certified } else { Outcome::Failed },
        ));
    }
    Ok(report)
}

fn feasible(n: i64, gamma: &Rational, alpha: &Rational, p: &Rational) -> bool {
    match young::young_exponents(n, gamma, alpha, p) {
        Ok(y) => {
            y.g < Rational::one()
                && y.g > Rational::one() - rat(2, n)
                && y.p1.is_positive()
                && y.q1.is_positive()
                && y.sigma1.is_positive()
                && int(n) - int(2) * &y.sigma1 < int(0)
        }
        Err(_) => false,
    }
}

fn classification_entry(name: &str, c: &shooter::Classification) -> Entry {
    match c {
        shooter::Classification::Crossed { r0 } => {
            Entry::new(name, Outcome::Verified).with_detail(format!("crossed zero at r ≈ {r0:.6}"))
        }
        shooter::Classification::Decayed { v_end } => {
            Entry::new(name, Outcome::Verified).with_detail(format!("decayed, v(r_max) ≈ {v_end:.3e}"))
        }
        shooter::Classification::Inconclusive { reason } => {
            Entry::new(name, Outcome::Inconclusive).with_detail(reason.clone())
        }
    }
}

fn cmd_shoot(
    n: i64,
    p: f64,
    m: f64,
    a: f64,
    r_max: f64,
    scaling: bool,
    seed: u64,
) -> Result<Report, String> {
    if n < 3 || p <= 1.0 || a <= 0.0 || r_max <= 0.0 {
        return Err("shoot requires n ≥ 3, p > 1, a > 0, r-max > 0".into());
    }
    let mut report = Report::new("shoot", seed);
    report.set_config("n", n.to_string());
    report.set_config("p", format!("{p}"));
    report.set_config("m", format!("{m}"));
    report.set_config("a", format!("{a}"));
    report.set_config("r-max", format!("{r_max}"));
    let mut cfg = shooter::ShotConfig::critical(n as usize, p, m, a);
    cfg.r_max = r_max;
    let traj = shooter::shoot(&cfg);
    report.push(classification_entry("classification", &traj.classification));
    report.push(Entry::new(
        "monotone-while-positive",
        if traj.monotone_while_positive() {
            Outcome::Verified
        } else {
            Outcome::Failed
        },
    ));
    if scaling {
        for k in [0.5, 2.0, 5.0] {
            let res = shooter::scaling_check(&cfg, k);
            report.push(
                Entry::new(
                    format!("scaling-k-{k}"),
                    if res < 1e-6 {
                        Outcome::Verified
                    } else {
                        Outcome::Failed
                    },
                )
                .with_detail(format!("sup relative residual {res:.3e}")),
            );
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    n: i64,
    p: f64,
    m: f64,
    count: usize,
    h_lo: f64,
    h_hi: f64,
    r_max: f64,
    seed: u64,
) -> Result<Report, String> {
    if count < 2 || h_lo <= 0.0 || h_hi <= h_lo {
        return Err("sweep requires heights ≥ 2 and 0 < height-min < height-max".into());
    }
    let mut report = Report::new("sweep", seed);
    report.set_config("n", n.to_string());
    report.set_config("p", format!("{p}"));
    report.set_config("m", format!("{m}"));
    report.set_config("heights", count.to_string());
    let heights: Vec<f64> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            h_lo * (h_hi / h_lo).powf(t)
        })
        .collect();
    let result = shooter::sweep(n as usize, p, m, &heights, r_max);
    for (h, c) in &result.rows {
        report.push(classification_entry(&format!("height-{h:.4}"), c));
    }
    report.push(
        Entry::new(
            "height-uniform",
            if result.uniform {
                Outcome::Verified
            } else {
                Outcome::Failed
            },
        )
        .with_detail("classification must be height-independent at critical q"),
    );
    Ok(report)
}

fn cmd_report(n_max: i64, trials: u64, precision: u32, seed: u64) -> Result<Report, String> {
    let mut report = Report::new("report", seed);
    report.set_config("n-max", n_max.to_string());
    report.set_config("trials", trials.to_string());
    let sections: Vec<Report> = vec![
        cmd_claims(n_max, seed),
        cmd_thresholds(7, &rat(9, 5), precision, seed)?,
        cmd_identities(trials, 1e-9, seed),
        cmd_young(3, 50, seed)?,
        cmd_shoot(5, 2.0, 1.0, 1.0, 100.0, true, seed)?,
        cmd_sweep(5, 2.0, 1.0, 6, 0.1, 10.0, 200.0, seed)?,
    ];
    for section in sections {
        for mut e in section.entries {
            e.name = format!("{}/{}", section.command, e.name);
            report.push(e);
        }
    }
    Ok(report)
}
