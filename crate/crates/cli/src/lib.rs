//! Command-line front end: `check`, `exists`, `invert`, `table`, `verify` and
//! `sweep`. Every command produces one [`ResultDocument`].

pub mod document;
pub mod tablefile;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpp_core::oracle::{sweep, OracleConfig};
use qpp_core::qppinv::inverts_at_three_points;
use qpp_core::{
    exists_quadratic_inverse, is_inverse_pair, is_permutation_polynomial, is_self_inverse,
    quadratic_inverse, Error, PolynomialModN, QuadraticPP,
};

pub use document::{exit, ResultDocument};
use document::{Inputs, ShiftedInverse, Status, TableInfo, VerifyInfo};

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_number(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("not a decimal or 0x-hex integer: {s:?}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "qppinv",
    version,
    about = "Quadratic permutation polynomial inverses and interleaver tables"
)]
pub struct Cli {
    /// Emit the JSON result document (default).
    #[arg(long, global = true, conflicts_with = "human")]
    pub json: bool,
    /// Emit a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct PolyArgs {
    /// Modulus N.
    #[arg(value_parser = parse_number)]
    pub n: u64,
    /// Linear coefficient f1.
    #[arg(value_parser = parse_number)]
    pub f1: u64,
    /// Quadratic coefficient f2.
    #[arg(value_parser = parse_number)]
    pub f2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Interleave,
    Deinterleave,
}

impl Direction {
    fn name(self) -> &'static str {
        match self {
            Direction::Interleave => "interleave",
            Direction::Deinterleave => "deinterleave",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate h0 + f1*x + f2*x^2 as a permutation polynomial.
    Check {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_parser = parse_number)]
        h0: Option<u64>,
    },
    /// Report whether a quadratic inverse exists, prime by prime.
    Exists {
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Compute the quadratic inverse(s).
    Invert {
        #[command(flatten)]
        poly: PolyArgs,
        /// Also invert h0 + F(x).
        #[arg(long, value_parser = parse_number)]
        h0: Option<u64>,
        /// Re-check each inverse at every residue.
        #[arg(long)]
        verify: bool,
    },
    /// Write the interleaver or deinterleaver table.
    Table {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "interleave")]
        direction: Direction,
    },
    /// Check whether g1*x + g2*x^2 inverts F.
    Verify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(value_parser = parse_number)]
        g1: u64,
        #[arg(value_parser = parse_number)]
        g2: u64,
        /// Also compare at every residue.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive oracle cross-check over a modulus range.
    Sweep {
        #[arg(value_parser = parse_number)]
        n_lo: u64,
        #[arg(value_parser = parse_number)]
        n_hi: u64,
        /// Budget on (g1, g2) pairs per instance.
        #[arg(long, value_parser = parse_number)]
        budget: Option<u64>,
        /// Confirm brute-force candidates pointwise.
        #[arg(long)]
        verify: bool,
        /// Search the first no-inverse instance for an inverse of degree <= D.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4))]
        dmax: Option<u32>,
        /// Number of no-inverse instances to list.
        #[arg(long, default_value_t = 32)]
        records: usize,
        #[arg(long)]
        sequential: bool,
    },
}

impl PolyArgs {
    fn inputs(&self) -> Inputs {
        Inputs {
            n: Some(self.n),
            f1: Some(self.f1),
            f2: Some(self.f2),
            ..Default::default()
        }
    }

    fn qpp(&self) -> Result<QuadraticPP, Error> {
        QuadraticPP::new(self.n, self.f1, self.f2)
    }
}

fn failed(mut doc: ResultDocument, e: &Error) -> ResultDocument {
    if let Error::NotPermutation { certificate, .. } = e {
        doc.outputs.certificate = Some((**certificate).clone());
    }
    doc.status = Status::from_error(e);
    doc
}

pub fn cmd_check(poly: PolyArgs, h0: Option<u64>) -> ResultDocument {
    let mut doc = ResultDocument::new(
        "check",
        Inputs {
            h0,
            ..poly.inputs()
        },
    );
    let full = match PolynomialModN::new(poly.n, &[h0.unwrap_or(0), poly.f1, poly.f2]) {
        Ok(p) => p,
        Err(e) => return failed(doc, &e),
    };
    let (normalized, _) = full.normalize_shift();
    match QuadraticPP::from_polynomial(&normalized) {
        Ok(f) => {
            doc.outputs.certificate = Some(f.certificate().clone());
            doc.outputs.self_inverse = Some(is_self_inverse(&f));
        }
        Err(e) => {
            if let Error::NoQuadraticPp { .. } = e {
                doc.outputs.certificate = Some(is_permutation_polynomial(&normalized));
            }
            return failed(doc, &e);
        }
    }
    doc
}

pub fn cmd_exists(poly: PolyArgs) -> ResultDocument {
    let mut doc = ResultDocument::new("exists", poly.inputs());
    let f = match poly.qpp() {
        Ok(f) => f,
        Err(e) => return failed(doc, &e),
    };
    let report = exists_quadratic_inverse(&f);
    if !report.exists {
        doc.status = Status::new("no-inverse", exit::NO_INVERSE, "no quadratic inverse");
    }
    doc.outputs.existence = Some(report);
    doc
}

pub fn cmd_invert(poly: PolyArgs, h0: Option<u64>, verify: bool) -> ResultDocument {
    let mut doc = ResultDocument::new(
        "invert",
        Inputs {
            h0,
            ..poly.inputs()
        },
    );
    let f = match poly.qpp() {
        Ok(f) => f,
        Err(e) => return failed(doc, &e),
    };
    let n = f.modulus();
    doc.outputs.existence = Some(exists_quadratic_inverse(&f));
    let outcome = match quadratic_inverse(&f) {
        Ok(o) => o,
        Err(e) => return failed(doc, &e),
    };
    if let Some(h0) = h0 {
        doc.outputs.shifted_inverses = Some(
            outcome
                .candidates()
                .iter()
                .map(|c| ShiftedInverse {
                    coeffs: c.polynomial(n).shift_inverse(h0 % n).coeffs().to_vec(),
                })
                .collect(),
        );
    }
    if verify {
        let ok = outcome.candidates().iter().all(|c| {
            let g = c.polynomial(n);
            (0..n).all(|x| g.evaluate(f.eval_reduced(x)).ok() == Some(x))
        });
        doc.outputs.pointwise_verified = Some(ok);
        if !ok {
            doc.status = Status::new(
                "disagreement",
                exit::DISAGREEMENT,
                "computed inverse fails pointwise verification",
            );
        }
    }
    if outcome.is_none() {
        doc.status = Status::new("no-inverse", exit::NO_INVERSE, "no quadratic inverse");
    }
    doc.outputs.inverse = Some(outcome);
    doc
}

pub fn cmd_table(poly: PolyArgs, out: &std::path::Path, direction: Direction) -> ResultDocument {
    let mut doc = ResultDocument::new("table", poly.inputs());
    let f = match poly.qpp() {
        Ok(f) => f,
        Err(e) => return failed(doc, &e),
    };
    let table = match direction {
        Direction::Interleave => f.table(),
        Direction::Deinterleave => f.table().inverse(),
    };
    if let Err(e) = tablefile::write(out, &table) {
        doc.status = Status::new("io", exit::IO, e.to_string());
        return doc;
    }
    doc.outputs.table = Some(TableInfo {
        path: out.display().to_string(),
        direction: direction.name(),
        modulus: f.modulus(),
    });
    doc
}

pub fn cmd_verify(poly: PolyArgs, g1: u64, g2: u64, pointwise: bool) -> ResultDocument {
    let mut doc = ResultDocument::new(
        "verify",
        Inputs {
            g1: Some(g1),
            g2: Some(g2),
            ..poly.inputs()
        },
    );
    let f = match poly.qpp() {
        Ok(f) => f,
        Err(e) => return failed(doc, &e),
    };
    let n = f.modulus();
    let g = match PolynomialModN::quadratic(n, g1, g2) {
        Ok(g) => g,
        Err(e) => return failed(doc, &e),
    };
    let inverse_pair = match is_inverse_pair(&f, &g) {
        Ok(b) => b,
        Err(e) => return failed(doc, &e),
    };
    let info = VerifyInfo {
        three_point: inverts_at_three_points(&f, &g),
        twelve_f2_g2_zero: (12 % n) * f.f2() % n * (g2 % n) % n == 0,
        inverse_pair,
        pointwise: pointwise.then(|| (0..n).all(|x| g.evaluate(f.eval_reduced(x)).ok() == Some(x))),
    };
    if info.pointwise.is_some_and(|p| p != inverse_pair) {
        doc.status = Status::new(
            "disagreement",
            exit::DISAGREEMENT,
            "fast and pointwise verdicts differ",
        );
    } else if !inverse_pair {
        doc.status = Status::new(
            "not-inverse-pair",
            exit::NOT_INVERSE_PAIR,
            "G does not invert F",
        );
    }
    doc.outputs.verification = Some(info);
    doc
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    n_lo: u64,
    n_hi: u64,
    budget: Option<u64>,
    pointwise: bool,
    dmax: Option<u32>,
    records: usize,
    sequential: bool,
) -> ResultDocument {
    let mut doc = ResultDocument::new(
        "sweep",
        Inputs {
            n_lo: Some(n_lo),
            n_hi: Some(n_hi),
            ..Default::default()
        },
    );
    let defaults = OracleConfig::default();
    let cfg = OracleConfig {
        max_pairs: budget.map_or(defaults.max_pairs, u128::from),
        pointwise,
        parallel: !sequential,
        record_limit: records,
        counterexample_dmax: dmax.unwrap_or(0),
        ..defaults
    };
    match sweep(n_lo, n_hi, &cfg) {
        Ok(report) => {
            if !report.is_clean() {
                doc.status = Status::new(
                    "disagreement",
                    exit::DISAGREEMENT,
                    format!("{} flagged instances", report.disagreements.len()),
                );
            }
            doc.outputs.sweep = Some(report);
            doc
        }
        Err(e) => failed(doc, &e),
    }
}

pub fn run(cli: &Cli) -> ResultDocument {
    match &cli.command {
        Command::Check { poly, h0 } => cmd_check(*poly, *h0),
        Command::Exists { poly } => cmd_exists(*poly),
        Command::Invert { poly, h0, verify } => cmd_invert(*poly, *h0, *verify),
        Command::Table {
            poly,
            out,
            direction,
        } => cmd_table(*poly, out, *direction),
        Command::Verify {
            poly,
            g1,
            g2,
            verify,
        } => cmd_verify(*poly, *g1, *g2, *verify),
        Command::Sweep {
            n_lo,
            n_hi,
            budget,
            verify,
            dmax,
            records,
            sequential,
        } => cmd_sweep(*n_lo, *n_hi, *budget, *verify, *dmax, *records, *sequential),
    }
}
