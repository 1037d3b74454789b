use std::path::Path;

use serde::Deserialize;
use wordmaps_core::group::{parse_builtin, parse_cycles, FiniteGroup, GroupOptions};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Table,
    Permutations,
    Builtin,
}

/// A group file: JSON with `name`, `kind` and the field matching `kind`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: Option<String>,
    pub kind: GroupKind,
    pub table: Option<Vec<Vec<usize>>>,
    pub generators: Option<Vec<String>>,
    pub builtin: Option<String>,
}

impl GroupFile {
    pub fn build(&self, options: &GroupOptions) -> Result<FiniteGroup, CliError> {
        let missing =
            |field: &str| CliError::Usage(format!("group file of this kind needs `{field}`"));
        let g = match self.kind {
            GroupKind::Table => {
                let table = self.table.as_ref().ok_or_else(|| missing("table"))?;
                FiniteGroup::from_multiplication_table(table, options)?
            }
            GroupKind::Permutations => {
                let gens = self
                    .generators
                    .as_ref()
                    .ok_or_else(|| missing("generators"))?;
                let perms = gens
                    .iter()
                    .map(|s| parse_cycles(s))
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_permutation_generators(&perms, options)?
            }
            GroupKind::Builtin => {
                let spec = self.builtin.as_ref().ok_or_else(|| missing("builtin"))?;
                parse_builtin(spec, options)?
            }
        };
        Ok(match &self.name {
            Some(name) => g.with_label(name.clone()),
            None => g,
        })
    }
}

/// Resolves `--group`: a builtin spec (optionally prefixed `builtin:`) or a
/// path to a group file.
pub fn load_group(source: &str, options: &GroupOptions) -> Result<FiniteGroup, CliError> {
    if source.starts_with("builtin:") {
        return Ok(parse_builtin(source, options)?);
    }
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let file: GroupFile = serde_json::from_str(&text)?;
        let g = file.build(options)?;
        if g.label().is_some() {
            return Ok(g);
        }
        let stem = path
            .file_stem()
            .map_or("group".into(), |s| s.to_string_lossy());
        return Ok(g.with_label(stem.into_owned()));
    }
    parse_builtin(source, options).map_err(|e| {
        CliError::Usage(format!(
            "{source:?} is neither a readable group file nor a builtin spec ({e})"
        ))
    })
}
