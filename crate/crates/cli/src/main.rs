//! `qlam`: run identity suites and emit cohomology, Cartier and lattice
//! reports.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qlam_core::cartier::cartier_quasi_iso_check;
use qlam_core::qdrham::{graded_cohomology, Coeff, ComplexKind};
use qlam_core::qdrw::build_lattice;
use qlam_core::ring_core::{q_binomial, QuotientSpec, SparsePoly};
use qlam_core::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use qlam_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoeffName {
    #[value(name = "Qq")]
    Qq,
    #[value(name = "Fq")]
    Fq,
    #[value(name = "Z-q1")]
    ZQ1,
    #[value(name = "Zzeta")]
    Zzeta,
    #[value(name = "Zpa")]
    Zpa,
    #[value(name = "Zq")]
    Zq,
}

impl CoeffName {
    fn as_str(&self) -> &'static str {
        match self {
            Self::Qq => "Qq",
            Self::Fq => "Fq",
            Self::ZQ1 => "Z-q1",
            Self::Zzeta => "Zzeta",
            Self::Zpa => "Zpa",
            Self::Zq => "Zq",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qlam", version, about = "Exact q-de Rham, λ-ring and Witt vector computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (default: text for qbinom and reduce, json otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Gaussian binomial coefficient binom(n, k)_q
    Qbinom {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
    },
    /// Run an identity suite
    Verify {
        /// lambda, basis, taylor, witt, decalage, cartier, qdrw or all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[arg(long, default_value_t = 6)]
        max_k: u32,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        /// Truncation, e.g. "2^4,(q^(1/4)-1)^16"
        #[arg(long)]
        trunc: Option<String>,
    },
    /// Cohomology of every weight summand of a q-de Rham complex
    Cohomology {
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[arg(long, value_enum, default_value = "Qq")]
        coeff: CoeffName,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Exponent for `--coeff Zpa`
        #[arg(long, default_value_t = 1)]
        a: u32,
        /// qOmega or twisted
        #[arg(long, default_value = "qOmega")]
        kind: String,
    },
    /// Cartier bijection report over ℤ[ζ_p]
    Cartier {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// Integral lattice of the fractional-weight q-de Rham complex
    Lattice {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
    },
    /// Reduce a polynomial literal modulo a truncation
    Reduce {
        poly: String,
        #[arg(long)]
        trunc: String,
    },
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDivisible(_) | Error::NotIntegral(_) | Error::Witt(_) | Error::NotAChainMap { .. } => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Rendered command output and the exit code it carries.
struct Output {
    text: String,
    code: u8,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_table(headers: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn text_table(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    rows.into_iter()
        .map(|r| {
            let cells: Vec<&str> = r.iter().map(|c| if c.is_empty() { "-" } else { c.as_str() }).collect();
            cells.join("  ") + "\n"
        })
        .collect()
}

fn render_suites(reports: &[SuiteReport], format: Format) -> String {
    let rows = || {
        reports.iter().flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.suite.clone(),
                    if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    c.name.clone(),
                    c.anchor.clone(),
                    c.detail.clone(),
                ]
            })
        })
    };
    match format {
        Format::Json => json(&reports),
        Format::Csv => csv_table(&["suite", "status", "check", "anchor", "detail"], rows()),
        Format::Text => rows()
            .map(|r| format!("{} {}/{} [{}]: {}\n", r[1], r[0], r[2], r[3], r[4]))
            .collect(),
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let ok = |text| Ok(Output { text, code: 0 });
    match cli.command {
        Command::Qbinom { n, k } => {
            if n < 0 || k < 0 || k > n {
                return Err(usage(format!("qbinom needs 0 ≤ k ≤ n, got n = {n}, k = {k}")));
            }
            let b = q_binomial(n, k)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => ok(json(&serde_json::json!({ "n": n, "k": k, "binomial": b.to_string() }))),
                Format::Csv => ok(csv_table(&["n", "k", "binomial"], [vec![n.to_string(), k.to_string(), b.to_string()]])),
                Format::Text => ok(format!("{b}\n")),
            }
        }
        Command::Verify { suite, p, vars, max_weight, max_k, depth, trunc } => {
            let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
            let trunc = trunc.as_deref().map(QuotientSpec::parse).transpose()?;
            let cfg = SuiteConfig { p, vars, max_weight, max_k, depth, trunc };
            let reports = run_suite(suite, &cfg)?;
            let text = render_suites(&reports, cli.format.unwrap_or(Format::Json));
            let failed = reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite.clone(), c.clone())));
            if let Some((s, c)) = failed {
                eprintln!("first failure: {s}/{}: {}", c.name, c.detail);
                return Ok(Output { text, code: 1 });
            }
            ok(text)
        }
        Command::Cohomology { vars, max_weight, coeff, p, a, kind } => {
            if vars == 0 {
                return Err(usage("--vars must be at least 1"));
            }
            let kind: ComplexKind = kind.parse()?;
            let coeff = Coeff::parse(coeff.as_str(), p, a)?;
            let rep = graded_cohomology(kind, vars, max_weight, coeff)?;
            let rows = || {
                rep.rows.iter().map(|r| {
                    vec![r.weight.join(","), r.degree.to_string(), r.divisors.join(","), r.coeff_ring.clone()]
                })
            };
            ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&rep),
                Format::Csv => csv_table(&["weight", "degree", "divisors", "coeff_ring"], rows()),
                Format::Text => text_table(rows()),
            })
        }
        Command::Cartier { p, vars, max_weight } => {
            if vars == 0 {
                return Err(usage("--vars must be at least 1"));
            }
            let rep = cartier_quasi_iso_check(p, vars, max_weight)?;
            let rows = || {
                rep.rows.iter().map(|r| {
                    vec![
                        r.weight.join(","),
                        r.degree.to_string(),
                        r.h_rank.to_string(),
                        r.hit_by_cartier.to_string(),
                    ]
                })
            };
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&rep),
                Format::Csv => csv_table(&["weight", "degree", "H_rank", "hit_by_cartier"], rows()),
                Format::Text => text_table(rows()),
            };
            let code = if rep.bijective && rep.frobenius_chain_law { 0 } else { 1 };
            Ok(Output { text, code })
        }
        Command::Lattice { p, depth, max_weight } => {
            let l = build_lattice(p, depth, max_weight)?;
            let dump = l.dump();
            let rows = || {
                dump.iter().map(|r| {
                    vec![r.p.to_string(), r.depth.to_string(), r.weight.clone(), r.level.to_string(), r.basis.join(",")]
                })
            };
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&dump),
                Format::Csv => csv_table(&["p", "N", "weight", "level", "basis"], rows()),
                Format::Text => text_table(rows()),
            };
            Ok(Output { text, code: if l.all_maximal() { 0 } else { 1 } })
        }
        Command::Reduce { poly, trunc } => {
            let f: SparsePoly = poly.parse()?;
            let spec = QuotientSpec::parse(&trunc)?;
            let r = spec.reduce(&f);
            ok(match cli.format.unwrap_or(Format::Text) {
                Format::Json => json(&serde_json::json!({ "input": f.to_string(), "trunc": trunc, "reduced": r.to_string() })),
                Format::Csv => csv_table(&["input", "trunc", "reduced"], [vec![f.to_string(), trunc, r.to_string()]]),
                Format::Text => format!("{r}\n"),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(Output { text, code }) => {
            let written = match &out_path {
                Some(path) => fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("qlam: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(Failure { code, message }) => {
            eprintln!("qlam: {message}");
            ExitCode::from(code)
        }
    }
}
