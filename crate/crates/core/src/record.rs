//! Verification records: one outcome per `(p, m, a, check)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Name of an individual check. Declaration order is the report sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Gi,
    GiPlus,
    ThmMainExact,
    ThmMainNumeric,
    Lemma21,
    Lemma31,
    Criterion,
    Cor11,
    Cor12,
    PmdLemma,
    PmdThm14,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Gi,
        Check::GiPlus,
        Check::ThmMainExact,
        Check::ThmMainNumeric,
        Check::Lemma21,
        Check::Lemma31,
        Check::Criterion,
        Check::Cor11,
        Check::Cor12,
        Check::PmdLemma,
        Check::PmdThm14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Gi => "gi",
            Check::GiPlus => "gi_plus",
            Check::ThmMainExact => "thm_main_exact",
            Check::ThmMainNumeric => "thm_main_numeric",
            Check::Lemma21 => "lemma21",
            Check::Lemma31 => "lemma31",
            Check::Criterion => "criterion",
            Check::Cor11 => "cor11",
            Check::Cor12 => "cor12",
            Check::PmdLemma => "pmd_lemma",
            Check::PmdThm14 => "pmd_thm14",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The statement's hypotheses do not hold for this input.
    Skipped,
    Error(String),
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::Fail | Status::Error(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
            Status::Skipped => f.write_str("skipped(hypothesis)"),
            Status::Error(msg) => write!(f, "error({msg})"),
        }
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pass" => Ok(Status::Pass),
            "fail" => Ok(Status::Fail),
            "skipped(hypothesis)" => Ok(Status::Skipped),
            _ => s
                .strip_prefix("error(")
                .and_then(|rest| rest.strip_suffix(')'))
                .map(|msg| Status::Error(msg.to_string()))
                .ok_or_else(|| Error::InvalidInput(format!("unknown status {s:?}"))),
        }
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Check);
string_serde!(Status);

/// One verification outcome. Field order is the report column order.
///
/// For exact checks `status == Pass` exactly when `expected == actual`; numeric
/// checks echo their tolerance inside `expected`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub p: u64,
    pub m: u64,
    pub a: i64,
    pub check: Check,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: f64,
}

impl VerificationRecord {
    /// Record for an exact comparison: passes iff the renderings match.
    pub fn exact(p: u64, m: u64, a: i64, check: Check, expected: String, actual: String) -> Self {
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            p,
            m,
            a,
            check,
            status,
            expected,
            actual,
            elapsed_ms: 0.0,
        }
    }

    pub fn with_status(
        p: u64,
        m: u64,
        a: i64,
        check: Check,
        status: Status,
        expected: String,
        actual: String,
    ) -> Self {
        Self {
            p,
            m,
            a,
            check,
            status,
            expected,
            actual,
            elapsed_ms: 0.0,
        }
    }

    /// Converts an error into a record: hypothesis failures become
    /// `skipped(hypothesis)`, anything else `error(..)`.
    pub fn from_error(p: u64, m: u64, a: i64, check: Check, err: &Error) -> Self {
        let status = if err.is_hypothesis() {
            Status::Skipped
        } else {
            Status::Error(err.to_string())
        };
        Self::with_status(p, m, a, check, status, String::new(), err.to_string())
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} m={} a={} {} {} expected={} actual={}",
            self.p, self.m, self.a, self.check, self.status, self.expected, self.actual
        )
    }
}
