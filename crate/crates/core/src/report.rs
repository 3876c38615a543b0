//! Serializable run reports.
//!
//! Every command produces a [`Report`]: the command name, an echo of the
//! effective configuration, the seed, and a list of named verdict entries.
//! Numeric results that feed a verdict are carried as decimal-string
//! enclosures `[lo, hi]`, rounded outward so the printed interval still
//! contains the true value. All maps are ordered, so serializing the same
//! report twice yields byte-identical output.

use crate::exact::rational::Rational;
use crate::exact::RatInterval;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Digits after the decimal point in rendered enclosures.
const ENCLOSURE_DIGITS: u32 = 30;

/// Renders a rational as an exact-or-outward-rounded decimal string.
/// `round_up` chooses the rounding direction when the decimal expansion
/// does not terminate within [`ENCLOSURE_DIGITS`].
pub fn decimal_string(r: &Rational, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(ENCLOSURE_DIGITS);
    let scaled_num = r.numer() * &scale;
    let den = r.denom();
    let (mut quot, rem) = (scaled_num.clone() / den, scaled_num % den);
    if !rem.is_zero() {
        // integer division truncates toward zero; fix to floor/ceil
        let negative = r.is_negative();
        if round_up && !negative {
            quot += 1;
        }
        if !round_up && negative {
            quot -= 1;
        }
    }
    let neg = quot.is_negative();
    let digits = quot.magnitude().to_string();
    let digits = if digits.len() <= ENCLOSURE_DIGITS as usize {
        format!("{:0>width$}", digits, width = ENCLOSURE_DIGITS as usize + 1)
    } else {
        digits
    };
    let split = digits.len() - ENCLOSURE_DIGITS as usize;
    let (int_part, frac_part) = digits.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// A numeric enclosure rendered as decimal strings `[lo, hi]`; lo is rounded
/// down and hi up, so the printed interval contains the exact one.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
}

impl Enclosure {
    pub fn from_interval(iv: &RatInterval) -> Self {
        Enclosure {
            lo: decimal_string(&iv.lo, false),
            hi: decimal_string(&iv.hi, true),
        }
    }

    pub fn from_point(r: &Rational) -> Self {
        Enclosure::from_interval(&RatInterval::point(r.clone()))
    }
}

/// Outcome of one checked statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Holds for the whole quantified range, by an exact certificate.
    Certified,
    /// Holds at every point actually checked.
    Verified,
    /// A certified counterexample exists.
    Failed,
    /// Neither certified nor refuted at the requested precision.
    Inconclusive,
}

/// One named verdict with optional numeric evidence.
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<Enclosure>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Entry {
    pub fn new(name: impl Into<String>, outcome: Outcome) -> Self {
        Entry {
            name: name.into(),
            outcome,
            enclosure: None,
            detail: String::new(),
        }
    }

    pub fn with_enclosure(mut self, enclosure: Enclosure) -> Self {
        self.enclosure = Some(enclosure);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// A complete, reproducible run report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            version: TOOL_VERSION.to_string(),
            seed,
            config: BTreeMap::new(),
            entries: Vec::new(),
        }
    }

    pub fn set_config(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn push(&mut self, entry: Entry) {
        self.entries.push(entry);
    }

    /// Process exit code: 1 if anything failed, else 2 if anything is
    /// inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.outcome == Outcome::Failed) {
            1
        } else if self
            .entries
            .iter()
            .any(|e| e.outcome == Outcome::Inconclusive)
        {
            2
        } else {
            0
        }
    }

    /// One row per entry: `name,outcome,lo,hi,detail`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,outcome,lo,hi,detail\n");
        for e in &self.entries {
            let (lo, hi) = match &e.enclosure {
                Some(enc) => (enc.lo.as_str(), enc.hi.as_str()),
                None => ("", ""),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&e.name),
                outcome_str(e.outcome),
                lo,
                hi,
                csv_field(&e.detail)
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} (v{}, seed {})", self.command, self.version, self.seed);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for e in &self.entries {
            let _ = write!(out, "{:<12} {}", outcome_str(e.outcome), e.name);
            if let Some(enc) = &e.enclosure {
                let _ = write!(out, "  in [{}, {}]", enc.lo, enc.hi);
            }
            if !e.detail.is_empty() {
                let _ = write!(out, "  — {}", e.detail);
            }
            out.push('\n');
        }
        out
    }
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Certified => "certified",
        Outcome::Verified => "verified",
        Outcome::Failed => "FAILED",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn decimal_rendering_is_exact_or_outward() {
        assert_eq!(decimal_string(&rat(1, 4), false), "0.25");
        assert_eq!(decimal_string(&rat(1, 4), true), "0.25");
        assert_eq!(decimal_string(&int(-3), true), "-3");
        // 1/3 has no finite decimal: directions must differ
        let down = decimal_string(&rat(1, 3), false);
        let up = decimal_string(&rat(1, 3), true);
        assert!(down < up);
        assert!(down.starts_with("0.3333333333"));
        // negative non-terminating value rounds outward too
        let ndown = decimal_string(&rat(-1, 3), false);
        let nup = decimal_string(&rat(-1, 3), true);
        assert!(ndown.starts_with("-0.3333333333"));
        // down is the more negative endpoint, so its last digit rounds away
        assert!(ndown.ends_with('4') && nup.ends_with('3'));
    }

    #[test]
    fn enclosure_contains_true_interval() {
        let iv = RatInterval::new(rat(1, 3), rat(2, 3));
        let enc = Enclosure::from_interval(&iv);
        // printed lo ≤ true lo, printed hi ≥ true hi
        assert!(enc.lo.starts_with("0.33"));
        assert!(enc.hi.starts_with("0.66"));
    }

    #[test]
    fn exit_codes_rank_failure_over_inconclusive() {
        let mut r = Report::new("demo", 1);
        r.push(Entry::new("a", Outcome::Certified));
        assert_eq!(r.exit_code(), 0);
        r.push(Entry::new("b", Outcome::Inconclusive));
        assert_eq!(r.exit_code(), 2);
        r.push(Entry::new("c", Outcome::Failed));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn csv_quotes_embedded_commas() {
        let mut r = Report::new("demo", 1);
        r.push(Entry::new("n=7, p=9/5", Outcome::Verified).with_detail("a \"note\""));
        let csv = r.to_csv();
        assert!(csv.contains("\"n=7, p=9/5\""));
        assert!(csv.contains("\"a \"\"note\"\"\""));
    }

    #[test]
    fn serialization_is_deterministic() {
        let build = || {
            let mut r = Report::new("claims", 42);
            r.set_config("n-max", "500");
            r.set_config("format", "json");
            r.push(
                Entry::new("claim-1", Outcome::Certified)
                    .with_enclosure(Enclosure::from_point(&rat(18, 10000))),
            );
            r
        };
        let a = build();
        let b = build();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_csv(), b.to_csv());
    }
}
