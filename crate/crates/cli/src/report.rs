use crate::CliError;
use logroll_core::{Committee, Rational};
use serde_json::{json, Value};

/// A command's result: a JSON document plus a flat table for CSV output.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            header: vec!["field".into(), "value".into()],
            rows: Vec::new(),
        }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    /// Key/value rows built from the top-level scalar fields.
    pub fn with_scalar_rows(mut self) -> Self {
        if let Value::Object(map) = &self.json {
            self.rows = map
                .iter()
                .filter(|(_, v)| !v.is_object() && !v.is_array())
                .map(|(k, v)| vec![k.clone(), scalar(v)])
                .collect();
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("values are plain JSON")
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        out.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            out.write_record(row).map_err(io)?;
        }
        let bytes = out.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of UTF-8 input"))
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn rat(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// Sorted-order values listed in the user's order.
pub fn user_values(committee: &Committee, sorted: &[Rational]) -> Value {
    let user = committee.to_user(sorted).expect("committee-sized vector");
    Value::Array(user.iter().map(rat).collect())
}

/// 1-based user index of a sorted position.
pub fn user_member(committee: &Committee, position: usize) -> usize {
    committee.permutation()[position] + 1
}

pub fn user_members(committee: &Committee, positions: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = positions.iter().map(|&p| user_member(committee, p)).collect();
    out.sort_unstable();
    out
}

/// How the committee looks after sorting: `order[k]` is the user index at
/// sorted position `k + 1`.
pub fn sorted_view(committee: &Committee, labels: Option<&[String]>) -> Value {
    let order: Vec<usize> = committee.permutation().iter().map(|k| k + 1).collect();
    let mut view = json!({
        "order": order,
        "intensities": committee.intensities().iter().map(rat).collect::<Vec<_>>(),
    });
    if let Some(labels) = labels {
        view["labels"] = json!(committee
            .permutation()
            .iter()
            .map(|&k| labels[k].clone())
            .collect::<Vec<_>>());
    }
    view
}
