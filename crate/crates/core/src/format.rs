//! Reading and writing Cayley tables as JSON or plain text.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{validate_table, CayleyTable};

/// On-disk form of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TableFile {
    pub fn from_table(name: Option<&str>, t: &CayleyTable) -> Self {
        TableFile {
            name: name.map(str::to_string),
            order: t.order(),
            table: t.rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect(),
            labels: t.labels().map(<[String]>::to_vec),
        }
    }

    /// Validates the grid (shape, range, associativity).
    pub fn to_table(&self) -> Result<CayleyTable> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        let t = validate_table(&self.table)?;
        match &self.labels {
            Some(labels) => t.with_labels(labels.clone()),
            None => Ok(t),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table files always serialize")
    }
}

/// Parses JSON (if the first non-blank character is `{`) or plain text: the
/// order on the first line followed by that many whitespace-separated rows.
pub fn parse_table_file(text: &str) -> Result<TableFile> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
    }
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let order: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad order: {e}")))?;
    let table = lines
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<i64>().map_err(|e| Error::Parse(format!("bad entry {x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableFile { name: None, order, table, labels: None })
}

/// Parses and validates in one step.
pub fn read_table(text: &str) -> Result<(Option<String>, CayleyTable)> {
    let file = parse_table_file(text)?;
    let table = file.to_table()?;
    Ok((file.name, table))
}

/// Plain-text rendering accepted by [`parse_table_file`].
pub fn to_plain_text(t: &CayleyTable) -> String {
    let mut out = format!("{}\n", t.order());
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
