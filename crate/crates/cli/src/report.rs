//! JSON report records. Field order is fixed by the struct layout and
//! parameter maps are sorted, so identical runs serialise identically.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub schema: u32,
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    pub runtime_ms: u64,
}

impl Record {
    pub fn new(check: &str, params: Value, pass: bool) -> Record {
        let params = match params {
            Value::Object(m) => m,
            Value::Null => Map::new(),
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Record {
            schema: SCHEMA,
            check: check.to_string(),
            params,
            status: if pass { Status::Pass } else { Status::Fail },
            residual_terms: None,
            matrix_size: None,
            rank: None,
            detail: None,
            runtime_ms: 0,
        }
    }

    pub fn residual(mut self, terms: usize) -> Self {
        self.residual_terms = Some(terms);
        self
    }

    pub fn matrix(mut self, size: usize, rank: usize) -> Self {
        self.matrix_size = Some(size);
        self.rank = Some(rank);
        self
    }

    pub fn detail(mut self, v: Value) -> Self {
        self.detail = Some(v);
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{status} {} {}", self.check, params.join(" "));
        if let Some(r) = self.residual_terms {
            line.push_str(&format!(" residual_terms={r}"));
        }
        if let (Some(s), Some(r)) = (self.matrix_size, self.rank) {
            line.push_str(&format!(" matrix={s} rank={r}"));
        }
        if let Some(d) = &self.detail {
            line.push_str(&format!(" detail={d}"));
        }
        line.trim_end().to_string()
    }
}
