use serde::Serialize;

use crate::error::CliError;

/// Pretty JSON with keys sorted at every level.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let tree = serde_json::to_value(value).map_err(|e| CliError::Invariant(e.to_string()))?;
    let mut text =
        serde_json::to_string_pretty(&tree).map_err(|e| CliError::Invariant(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let invariant = |e: csv::Error| CliError::Invariant(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(invariant)?;
    for row in rows {
        w.write_record(row).map_err(invariant)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))
}

pub fn cell<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}
