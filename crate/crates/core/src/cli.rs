//! The `carlitz` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::carlitz_basics::{CarlitzCache, DEFAULT_TOWER_CAP};
use crate::carlitz_numbers::{CarlitzKind, CarlitzNumbers};
use crate::classical::{ClassicalKind, ClassicalNumbers};
use crate::error::{Error, Result};
use crate::exact_arith::{
    make_field, parse_modulus, parse_rational, rational_to_latex, render_rational, BigRational, FieldParams, Poly,
    RatFunc,
};
use crate::identities::{run_all, IdentityReport, SuiteConfig};
use crate::series::{carlitz_exp_series, carlitz_log_over_z, carlitz_log_series, Series};

pub const MAX_N_CAP: u64 = 64;
pub const PREC_CAP: usize = 200;
pub const CACHE_CAP_ENV: &str = "CARLITZ_CACHE_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "carlitz",
    version,
    about = "Carlitz-module special numbers and their classical counterparts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "CC")]
    Cc,
    #[value(name = "BC")]
    Bc,
    #[value(name = "CCm")]
    Ccm,
    #[value(name = "stf_C")]
    StfC,
    #[value(name = "sts_C")]
    StsC,
    #[value(name = "cauchy")]
    Cauchy,
    #[value(name = "cauchy_m")]
    CauchyM,
    #[value(name = "poly_cauchy")]
    PolyCauchy,
    #[value(name = "stirling1")]
    Stirling1,
    #[value(name = "stirling2")]
    Stirling2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    #[value(name = "eC")]
    Exp,
    #[value(name = "logC")]
    Log,
    #[value(name = "zOverLogC")]
    ZOverLog,
    #[value(name = "zOverEC")]
    ZOverExp,
    #[value(name = "logCPow")]
    LogPow,
}

#[derive(Debug, clap::Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree, `r = p^e`.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Defining polynomial of `F_r` over `F_p`, in `a` or `x`, e.g. "x^2 + x + 1".
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a family of numbers for n = 0..=max-n.
    Compute {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Order m for CCm and cauchy_m; index k for poly_cauchy.
        #[arg(long, default_value_t = 1)]
        order: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Accepted for symmetry with the other subcommands; tables size their own series.
        #[arg(long)]
        prec: Option<usize>,
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Run the identity suite. Exit 0 if everything passes, 1 on any failure.
    Verify {
        /// Single field to check; both r = 2 and r = 3 when omitted.
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 16)]
        max_n: u64,
        #[arg(long, default_value_t = 33)]
        prec: usize,
        /// Run only this identity.
        #[arg(long)]
        identity: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        unsafe_large: bool,
    },
    /// Print a truncated generating series, one nonzero term per line.
    Series {
        #[arg(long, value_enum)]
        name: SeriesName,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 10)]
        prec: usize,
        /// Power for logCPow.
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        unsafe_large: bool,
    },
}

/// Validated settings shared by the subcommands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub field: Option<Arc<FieldParams>>,
    pub max_n: u64,
    pub order: u64,
    pub prec: usize,
    pub format: Format,
    pub output: Option<String>,
    pub tower_cap: usize,
}

impl CliConfig {
    fn cache(&self) -> Result<Arc<CarlitzCache>> {
        let field = self
            .field
            .clone()
            .ok_or_else(|| Error::Config("--p is required for Carlitz kinds".into()))?;
        Ok(Arc::new(CarlitzCache::with_cap(field, self.tower_cap)))
    }
}

fn tower_cap() -> Result<usize> {
    match std::env::var(CACHE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{CACHE_CAP_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_TOWER_CAP),
    }
}

fn build_field(args: &FieldArgs) -> Result<Option<Arc<FieldParams>>> {
    let Some(p) = args.p else {
        if args.modulus.is_some() {
            return Err(Error::Config("--modulus needs --p".into()));
        }
        return Ok(None);
    };
    let modulus = args.modulus.as_deref().map(|m| parse_modulus(m, p)).transpose()?;
    let field = make_field(p, args.e, modulus.as_deref()).map_err(|e| match e {
        Error::NotPrime(p) => Error::Config(format!("{p} is not prime; give r = p^e as --p <prime> --e <degree>")),
        other => other,
    })?;
    Ok(Some(field))
}

fn check_caps(max_n: u64, prec: usize, unsafe_large: bool) -> Result<()> {
    if unsafe_large {
        return Ok(());
    }
    if max_n > MAX_N_CAP {
        return Err(Error::Config(format!(
            "max-n {max_n} exceeds {MAX_N_CAP}; pass --unsafe-large to override"
        )));
    }
    if prec > PREC_CAP {
        return Err(Error::Config(format!(
            "precision {prec} exceeds {PREC_CAP}; pass --unsafe-large to override"
        )));
    }
    Ok(())
}

/// One row of a JSON table dump. Values are canonical strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEntry {
    pub n: u64,
    pub k: Option<u64>,
    pub num: String,
    pub den: String,
}

/// The JSON form of a computed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDump {
    pub p: Option<u64>,
    pub e: Option<u32>,
    pub r: Option<u64>,
    pub kind: String,
    pub order: u64,
    pub values: Vec<DumpEntry>,
}

fn is_carlitz_kind(kind: &str) -> bool {
    matches!(kind, "CC" | "BC" | "CCm" | "stf_C" | "sts_C")
}

impl TableDump {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table dumps always serialize");
        s.push('\n');
        s
    }

    /// Parses a dump and re-canonicalizes every value, so malformed or
    /// non-reduced entries are rejected or normalized.
    pub fn from_json(s: &str) -> Result<TableDump> {
        let mut dump: TableDump = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if is_carlitz_kind(&dump.kind) {
            let (p, e) = match (dump.p, dump.e) {
                (Some(p), Some(e)) => (p, e),
                _ => return Err(Error::Parse("Carlitz tables need p and e".into())),
            };
            let field = make_field(p, e, None)?;
            for v in &mut dump.values {
                let q = RatFunc::new(Poly::parse(&field, &v.num)?, Poly::parse(&field, &v.den)?)?;
                *v = rat_func_entry(v.n, v.k, &q);
            }
        } else {
            for v in &mut dump.values {
                let q = parse_rational(&format!("{}/{}", v.num, v.den))?;
                *v = rational_entry(v.n, v.k, &q);
            }
        }
        Ok(dump)
    }
}

fn rat_func_entry(n: u64, k: Option<u64>, q: &RatFunc) -> DumpEntry {
    DumpEntry {
        n,
        k,
        num: q.num().to_string(),
        den: q.den().to_string(),
    }
}

fn rational_entry(n: u64, k: Option<u64>, q: &BigRational) -> DumpEntry {
    DumpEntry {
        n,
        k,
        num: q.numer().to_string(),
        den: q.denom().to_string(),
    }
}

fn latex_label(kind: &str, n: u64, k: Option<u64>, order: u64) -> String {
    let k = k.unwrap_or(0);
    match kind {
        "CC" => format!("CC_{{{n}}}"),
        "BC" => format!("BC_{{{n}}}"),
        "CCm" => format!("CC_{{{n}}}^{{({order})}}"),
        "stf_C" => format!("\\left[{{{n} \\atop {k}}}\\right]_C"),
        "sts_C" => format!("\\left\\{{{{{n} \\atop {k}}}\\right\\}}_C"),
        "cauchy" => format!("c_{{{n}}}"),
        "cauchy_m" => format!("c_{{{n}}}^{{({order})}}"),
        "poly_cauchy" => format!("\\mathfrak{{c}}_{{{n}}}^{{({order})}}"),
        "stirling1" => format!("\\left[{{{n} \\atop {k}}}\\right]"),
        _ => format!("\\left\\{{{{{n} \\atop {k}}}\\right\\}}"),
    }
}

/// A table with both its canonical strings and LaTeX forms.
struct Rendered {
    dump: TableDump,
    latex: Vec<String>,
    text: Vec<String>,
}

fn render(rendered: &Rendered, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => out = rendered.dump.to_json(),
        Format::Text => {
            for (e, t) in rendered.dump.values.iter().zip(&rendered.text) {
                match e.k {
                    Some(k) => out.push_str(&format!("n={} k={k}: {t}\n", e.n)),
                    None => out.push_str(&format!("n={}: {t}\n", e.n)),
                }
            }
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            let d = &rendered.dump;
            for (e, l) in d.values.iter().zip(&rendered.latex) {
                out.push_str(&format!("{} &= {l} \\\\\n", latex_label(&d.kind, e.n, e.k, d.order)));
            }
            out.push_str("\\end{align*}\n");
        }
    }
    out
}

fn compute(kind: Kind, cfg: &CliConfig) -> Result<Rendered> {
    let carlitz = match kind {
        Kind::Cc => Some(CarlitzKind::Cauchy),
        Kind::Bc => Some(CarlitzKind::Bernoulli),
        Kind::Ccm => Some(CarlitzKind::CauchyOrder),
        Kind::StfC => Some(CarlitzKind::StirlingFirst),
        Kind::StsC => Some(CarlitzKind::StirlingSecond),
        _ => None,
    };
    if let Some(ck) = carlitz {
        let cache = cfg.cache()?;
        let field = cache.field().clone();
        let numbers = CarlitzNumbers::new(cache);
        let table = numbers.table(ck, cfg.max_n, cfg.order)?;
        let mut values = Vec::new();
        let mut latex = Vec::new();
        let mut text = Vec::new();
        for (&(n, k), q) in &table.values {
            values.push(rat_func_entry(n, k, q));
            latex.push(q.to_latex());
            text.push(q.to_string());
        }
        return Ok(Rendered {
            dump: TableDump {
                p: Some(field.p()),
                e: Some(field.e()),
                r: Some(field.r()),
                kind: ck.name().to_string(),
                order: table.order,
                values,
            },
            latex,
            text,
        });
    }
    let ck = match kind {
        Kind::Cauchy => ClassicalKind::Cauchy,
        Kind::CauchyM => ClassicalKind::CauchyOrder,
        Kind::PolyCauchy => ClassicalKind::PolyCauchy,
        Kind::Stirling1 => ClassicalKind::Stirling1,
        _ => ClassicalKind::Stirling2,
    };
    let table = ClassicalNumbers::new().table(ck, cfg.max_n, cfg.order)?;
    let mut values = Vec::new();
    let mut latex = Vec::new();
    let mut text = Vec::new();
    for (&(n, k), q) in &table.values {
        values.push(rational_entry(n, k, q));
        latex.push(rational_to_latex(q));
        text.push(render_rational(q));
    }
    Ok(Rendered {
        dump: TableDump {
            p: None,
            e: None,
            r: None,
            kind: ck.name().to_string(),
            order: table.order,
            values,
        },
        latex,
        text,
    })
}

#[derive(Serialize)]
struct SeriesTerm {
    exp: usize,
    num: String,
    den: String,
}

#[derive(Serialize)]
struct SeriesDump {
    p: u64,
    e: u32,
    r: u64,
    name: String,
    prec: usize,
    terms: Vec<SeriesTerm>,
}

fn series(name: SeriesName, k: u64, cfg: &CliConfig) -> Result<String> {
    let cache = cfg.cache()?;
    let prec = cfg.prec;
    let s: Series<RatFunc> = match name {
        SeriesName::Exp => carlitz_exp_series(&cache, prec)?,
        SeriesName::Log => carlitz_log_series(&cache, prec)?,
        SeriesName::ZOverLog => carlitz_log_over_z(&cache, prec)?.reciprocal()?,
        SeriesName::ZOverExp => crate::series::carlitz_exp_over_z(&cache, prec)?.reciprocal()?,
        SeriesName::LogPow => carlitz_log_series(&cache, prec)?.pow(k),
    };
    let terms = s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero());
    Ok(match cfg.format {
        Format::Text => terms.map(|(n, c)| format!("z^{n}: {c}\n")).collect(),
        Format::Latex => {
            let body: Vec<String> = terms
                .map(|(n, c)| format!("\\left({}\\right) z^{{{n}}}", c.to_latex()))
                .collect();
            format!("{} + O(z^{{{prec}}})\n", body.join(" + "))
        }
        Format::Json => {
            let f = cache.field();
            let dump = SeriesDump {
                p: f.p(),
                e: f.e(),
                r: f.r(),
                name: name.to_possible_value().unwrap().get_name().to_string(),
                prec,
                terms: terms
                    .map(|(exp, c)| SeriesTerm {
                        exp,
                        num: c.num().to_string(),
                        den: c.den().to_string(),
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&dump).expect("series dumps always serialize");
            s.push('\n');
            s
        }
    })
}

fn report_line(r: &IdentityReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut field = match r.params.r {
        Some(q) => format!(" r={q}"),
        None => String::new(),
    };
    if let Some(s) = &r.params.subject {
        field.push_str(&format!(" on {s}"));
    }
    let mut line = format!(
        "{status} {}{field} cases={} time={:.3}s\n",
        r.identity_id, r.cases_checked, r.elapsed_secs
    );
    for f in &r.failures {
        line.push_str(&format!(
            "  at {}: expected {}, got {}\n",
            f.indices, f.expected, f.actual
        ));
    }
    line
}

fn emit(output: &Option<String>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {path}: {e}"))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Config(format!("cannot write output: {e}")))
        }
    }
}

fn run_command(cmd: Command) -> Result<i32> {
    let cap = tower_cap()?;
    match cmd {
        Command::Compute {
            kind,
            field,
            max_n,
            order,
            format,
            prec,
            output,
            unsafe_large,
        } => {
            check_caps(max_n, prec.unwrap_or(0), unsafe_large)?;
            if order < 1 {
                return Err(Error::Config("--order must be at least 1".into()));
            }
            let cfg = CliConfig {
                field: build_field(&field)?,
                max_n,
                order,
                prec: prec.unwrap_or(max_n as usize + 1),
                format,
                output,
                tower_cap: cap,
            };
            let rendered = compute(kind, &cfg)?;
            emit(&cfg.output, &render(&rendered, cfg.format))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            field,
            max_n,
            prec,
            identity,
            format,
            output,
            unsafe_large,
        } => {
            check_caps(max_n, prec, unsafe_large)?;
            let mut suite = SuiteConfig {
                max_n,
                prec,
                only: identity,
                tower_cap: Some(cap),
                ..SuiteConfig::default()
            };
            if let Some(f) = build_field(&field)? {
                suite.fields = vec![(f.p(), f.e())];
            }
            let reports = run_all(&suite)?;
            let mut out = String::new();
            for r in &reports {
                match format {
                    Format::Json => {
                        out.push_str(&serde_json::to_string(r).expect("reports always serialize"));
                        out.push('\n');
                    }
                    _ => out.push_str(&report_line(r)),
                }
            }
            emit(&output, &out)?;
            if format == Format::Json {
                for r in &reports {
                    eprint!("{}", report_line(r));
                }
            }
            Ok(if reports.iter().all(IdentityReport::passed) {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
        Command::Series {
            name,
            field,
            prec,
            k,
            format,
            output,
            unsafe_large,
        } => {
            check_caps(0, prec, unsafe_large)?;
            let cfg = CliConfig {
                field: build_field(&field)?,
                max_n: 0,
                order: 1,
                prec,
                format,
                output,
                tower_cap: cap,
            };
            let text = series(name, k, &cfg)?;
            emit(&cfg.output, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_stable() {
        let cfg = CliConfig {
            field: Some(make_field(3, 1, None).unwrap()),
            max_n: 8,
            order: 1,
            prec: 9,
            format: Format::Json,
            output: None,
            tower_cap: DEFAULT_TOWER_CAP,
        };
        for kind in [Kind::Cc, Kind::StsC, Kind::Cauchy, Kind::Stirling1] {
            let json = render(&compute(kind, &cfg).unwrap(), Format::Json);
            assert_eq!(TableDump::from_json(&json).unwrap().to_json(), json);
        }
    }

    #[test]
    fn latex_labels() {
        assert_eq!(latex_label("CC", 8, None, 1), "CC_{8}");
        assert_eq!(latex_label("sts_C", 4, Some(2), 1), "\\left\\{{4 \\atop 2}\\right\\}_C");
        assert_eq!(latex_label("stf_C", 4, Some(2), 1), "\\left[{4 \\atop 2}\\right]_C");
    }

    #[test]
    fn caps() {
        assert!(check_caps(65, 0, false).is_err());
        assert!(check_caps(65, 0, true).is_ok());
        assert!(check_caps(10, 201, false).is_err());
    }
}
