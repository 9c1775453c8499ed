//! Machine-readable result documents.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub budget: Option<u64>,
    pub prunes: Vec<String>,
    pub complete: bool,
}

impl Default for Provenance {
    fn default() -> Provenance {
        Provenance {
            budget: None,
            prunes: Vec::new(),
            complete: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub operation: String,
    pub inputs: Value,
    pub outputs: Value,
    pub provenance: Provenance,
    pub version: String,
}

impl ReportDocument {
    pub fn new(operation: &str, inputs: impl Serialize, outputs: impl Serialize) -> Result<ReportDocument> {
        Ok(ReportDocument {
            operation: operation.into(),
            inputs: to_value(inputs)?,
            outputs: to_value(outputs)?,
            provenance: Provenance::default(),
            version: VERSION.into(),
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> ReportDocument {
        self.provenance = p;
        self
    }

    /// Pretty JSON with keys in sorted order, ending in a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&to_value(self).expect("report serialises")).expect("value serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ReportDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Precondition(format!("cannot serialise report: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{find_extremal, SearchSpec};
    use crate::TupleClass;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let spec = SearchSpec::new(5, TupleClass::Merged3Regular, 2);
        let rep = find_extremal(&spec);
        let doc = ReportDocument::new("search", &spec, &rep).unwrap();
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }
}
