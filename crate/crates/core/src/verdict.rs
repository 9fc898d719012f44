//! Tagged results with re-checkable witnesses.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictTag {
    NotQuasiFree,
    Inconclusive,
    Smooth,
    NotSmooth,
    Unramified,
    Ramified,
    Etale,
    NotEtale,
    Accepted,
    Rejected,
    CannotCertify,
    Verified,
    Failed,
}

impl VerdictTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::NotQuasiFree => "NotQuasiFree",
            VerdictTag::Inconclusive => "Inconclusive",
            VerdictTag::Smooth => "Smooth",
            VerdictTag::NotSmooth => "NotSmooth",
            VerdictTag::Unramified => "Unramified",
            VerdictTag::Ramified => "Ramified",
            VerdictTag::Etale => "Etale",
            VerdictTag::NotEtale => "NotEtale",
            VerdictTag::Accepted => "Accepted",
            VerdictTag::Rejected => "Rejected",
            VerdictTag::CannotCertify => "CannotCertify",
            VerdictTag::Verified => "Verified",
            VerdictTag::Failed => "Failed",
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for VerdictTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A verdict plus the data needed to replay it and the chain of facts that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub witness: Value,
    pub provenance: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn new(tag: VerdictTag, witness: Value) -> Self {
        Verdict { tag, witness, provenance: Vec::new(), warnings: Vec::new() }
    }

    pub fn because(mut self, step: impl Into<String>) -> Self {
        self.provenance.push(step.into());
        self
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn is(&self, tag: VerdictTag) -> bool {
        self.tag == tag
    }
}
