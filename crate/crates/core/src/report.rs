use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named check inside a [`Report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Value>,
}

impl Certificate {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<Value>) -> Self {
        Certificate {
            name: name.into(),
            pass,
            witness,
        }
    }
}

/// Machine-readable verdict: a claim plus the certificates backing it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub certificates: Vec<Certificate>,
    pub mult_dimension: Option<usize>,
}

impl Report {
    /// Certificates are kept sorted by name.
    pub fn new(claim: impl Into<String>, mut certificates: Vec<Certificate>, mult_dimension: Option<usize>) -> Self {
        certificates.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            claim: claim.into(),
            certificates,
            mult_dimension,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }
}
