use crate::CliError;
use logroll_core::{parse_rational, Committee, PromiseProfile, Rational};
use serde_json::Value;
use std::path::Path;

/// A committee as the user wrote it, before sorting.
#[derive(Debug, Clone)]
pub struct CommitteeDocument {
    pub intensities: Vec<Rational>,
    pub kappa: i64,
    pub labels: Option<Vec<String>>,
}

impl CommitteeDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("committee document: {e}")))?;
        let object = doc
            .as_object()
            .ok_or_else(|| CliError::Parse("committee document must be a JSON object".into()))?;
        let intensities = object
            .get("intensities")
            .ok_or_else(|| CliError::Parse("missing \"intensities\"".into()))?;
        let intensities = rationals(intensities, "intensities")?;
        let kappa = object
            .get("kappa")
            .ok_or_else(|| CliError::Parse("missing \"kappa\"".into()))?
            .as_i64()
            .ok_or_else(|| CliError::Parse("\"kappa\" must be an integer".into()))?;
        let labels = match object.get("labels") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => {
                let labels: Option<Vec<String>> =
                    items.iter().map(|x| x.as_str().map(String::from)).collect();
                let labels =
                    labels.ok_or_else(|| CliError::Parse("labels must be strings".into()))?;
                if labels.len() != intensities.len() {
                    return Err(CliError::Parse(format!(
                        "{} labels for {} members",
                        labels.len(),
                        intensities.len()
                    )));
                }
                Some(labels)
            }
            Some(_) => return Err(CliError::Parse("\"labels\" must be an array".into())),
        };
        Ok(CommitteeDocument {
            intensities,
            kappa,
            labels,
        })
    }

    pub fn committee(&self) -> Result<Committee, CliError> {
        Ok(Committee::new(self.intensities.clone(), self.kappa)?)
    }
}

fn rational_value(value: &Value, field: &str) -> Result<Rational, CliError> {
    match value {
        Value::Number(n) => n
            .as_i64()
            .map(logroll_core::rational::int)
            .ok_or_else(|| CliError::Parse(format!("{field}: {n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => parse_rational(s).map_err(|e| CliError::Parse(format!("{field}: {e}"))),
        other => Err(CliError::Parse(format!("{field}: unexpected {other}"))),
    }
}

fn rationals(value: &Value, field: &str) -> Result<Vec<Rational>, CliError> {
    value
        .as_array()
        .ok_or_else(|| CliError::Parse(format!("\"{field}\" must be an array")))?
        .iter()
        .map(|x| rational_value(x, field))
        .collect()
}

/// Reads a profile given as a file path or inline text, in user order.
///
/// Accepted forms: a JSON array, a JSON object with a `"promises"` array,
/// or comma-separated values such as `3,0,-3` or `1/2,-1/2`.
pub fn parse_profile(arg: &str) -> Result<Vec<Rational>, CliError> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let trimmed = text.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed)
            .map_err(|e| CliError::Parse(format!("profile: {e}")))?;
        let array = match &value {
            Value::Object(o) => o
                .get("promises")
                .ok_or_else(|| CliError::Parse("profile object needs \"promises\"".into()))?,
            _ => &value,
        };
        return rationals(array, "profile");
    }
    trimmed
        .split(',')
        .map(|s| parse_rational(s).map_err(|e| CliError::Parse(format!("profile: {e}"))))
        .collect()
}

/// Sorts a user-order profile into the committee's order and checks it.
pub fn sorted_profile(committee: &Committee, user: Vec<Rational>) -> Result<PromiseProfile, CliError> {
    let sorted = committee.to_sorted(&user)?;
    Ok(PromiseProfile::new(sorted)?)
}
