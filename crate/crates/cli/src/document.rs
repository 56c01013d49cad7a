use std::fmt::Write as _;

use qpp_core::oracle::SweepReport;
use qpp_core::{Error, ExistenceReport, InverseOutcome, PermutationCertificate};
use serde::Serialize;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 2;
    pub const NOT_PERMUTATION: i32 = 3;
    pub const NO_INVERSE: i32 = 4;
    pub const RESOURCE_LIMIT: i32 = 5;
    pub const NOT_INVERSE_PAIR: i32 = 6;
    pub const DISAGREEMENT: i32 = 7;
    pub const IO: i32 = 8;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Status {
    pub code: &'static str,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Status {
    pub fn ok() -> Self {
        Status {
            code: "ok",
            exit_code: exit::OK,
            message: None,
        }
    }

    pub fn new(code: &'static str, exit_code: i32, message: impl Into<String>) -> Self {
        Status {
            code,
            exit_code,
            message: Some(message.into()),
        }
    }

    pub fn from_error(e: &Error) -> Self {
        let (code, exit_code) = match e {
            Error::InvalidInput(_) | Error::NonVanishingPoint { .. } => {
                ("invalid-input", exit::INVALID_INPUT)
            }
            Error::NoInverse { .. } | Error::NoSolution { .. } => {
                ("invalid-input", exit::INVALID_INPUT)
            }
            Error::NoQuadraticPp { .. } => ("no-quadratic-pp", exit::NOT_PERMUTATION),
            Error::NotPermutation { .. } => ("not-a-permutation", exit::NOT_PERMUTATION),
            Error::ResourceLimit { .. } => ("resource-limit", exit::RESOURCE_LIMIT),
            Error::VerificationFailed { .. } => ("disagreement", exit::DISAGREEMENT),
        };
        Status::new(code, exit_code, e.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_lo: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_hi: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableInfo {
    pub path: String,
    pub direction: &'static str,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyInfo {
    pub three_point: bool,
    pub twelve_f2_g2_zero: bool,
    pub inverse_pair: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<bool>,
}

/// Inverse of the shifted polynomial `h0 + F(x)`, as a full coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedInverse {
    pub coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Outputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PermutationCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_inverse: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub existence: Option<ExistenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<InverseOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted_inverses: Option<Vec<ShiftedInverse>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepReport>,
}

/// One command's result; serialized as a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: &'static str,
    pub inputs: Inputs,
    pub outputs: Outputs,
    pub status: Status,
}

impl ResultDocument {
    pub fn new(command: &'static str, inputs: Inputs) -> Self {
        ResultDocument {
            command,
            inputs,
            outputs: Outputs::default(),
            status: Status::ok(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let i = &self.inputs;
        let _ = write!(s, "{}", self.command);
        for (k, v) in [
            ("N", i.n),
            ("f1", i.f1),
            ("f2", i.f2),
            ("h0", i.h0),
            ("g1", i.g1),
            ("g2", i.g2),
            ("N_lo", i.n_lo),
            ("N_hi", i.n_hi),
        ] {
            if let Some(v) = v {
                let _ = write!(s, " {k}={v}");
            }
        }
        s.push('\n');
        let o = &self.outputs;
        if let Some(c) = &o.certificate {
            let _ = writeln!(
                s,
                "permutation polynomial: {}{}",
                c.is_permutation,
                if c.degenerate_linear {
                    " (linear, f2 = 0)"
                } else {
                    ""
                }
            );
        }
        if let Some(b) = o.self_inverse {
            let _ = writeln!(s, "self-inverse: {b}");
        }
        if let Some(r) = &o.existence {
            let _ = writeln!(s, "quadratic inverse exists: {}", r.exists);
            for row in &r.rows {
                let _ = writeln!(
                    s,
                    "  p={} n_N={} n_F={} needs >= {}: {}",
                    row.prime, row.n_n, row.n_f, row.threshold, row.satisfied
                );
            }
        }
        if let Some(inv) = &o.inverse {
            for (k, c) in inv.candidates().iter().enumerate() {
                let _ = writeln!(s, "G{}(x) = {}x + {}x^2", k + 1, c.g1, c.g2);
            }
        }
        if let Some(shifted) = &o.shifted_inverses {
            for (k, c) in shifted.iter().enumerate() {
                let _ = writeln!(s, "J{}(x) coefficients: {:?}", k + 1, c.coeffs);
            }
        }
        if let Some(b) = o.pointwise_verified {
            let _ = writeln!(s, "pointwise verified: {b}");
        }
        if let Some(t) = &o.table {
            let _ = writeln!(
                s,
                "{} table (N={}) written to {}",
                t.direction, t.modulus, t.path
            );
        }
        if let Some(v) = &o.verification {
            let _ = writeln!(
                s,
                "three-point: {}, 12*f2*g2 = 0: {}, inverse pair: {}",
                v.three_point, v.twelve_f2_g2_zero, v.inverse_pair
            );
            if let Some(p) = v.pointwise {
                let _ = writeln!(s, "pointwise: {p}");
            }
        }
        if let Some(r) = &o.sweep {
            let _ = writeln!(
                s,
                "N in [{}, {}]: {} quadratic PPs ({} degenerate), {} with inverse, {} without",
                r.n_lo,
                r.n_hi,
                r.quadratic_pps_tested,
                r.degenerate_pps_tested,
                r.with_inverse,
                r.without_inverse
            );
            let _ = writeln!(
                s,
                "disagreements: {}, verification failures: {}",
                r.existence_disagreements + r.value_disagreements,
                r.inverse_verification_failures
            );
            if let Some(ce) = &r.counterexample {
                let inverse = match &ce.min_degree_inverse {
                    Some(c) => format!("{c:?}"),
                    None => format!("none of degree <= {}", ce.dmax),
                };
                let _ = writeln!(
                    s,
                    "no quadratic inverse: N={} f1={} f2={}, min-degree inverse {inverse}",
                    ce.instance.n, ce.instance.f1, ce.instance.f2
                );
            }
        }
        let _ = write!(s, "status: {}", self.status.code);
        if let Some(m) = &self.status.message {
            let _ = write!(s, " ({m})");
        }
        s.push('\n');
        s
    }
}
