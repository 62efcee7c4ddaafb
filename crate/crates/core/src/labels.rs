//! Mode labels and the `"BC->A"` partition notation.

use crate::error::{Error, Result};
use crate::symplectic::ModePartition;

/// `A, B, C, ...` for the first 26 modes, then `M27, M28, ...`.
pub fn default_labels(n_modes: usize) -> Vec<String> {
    (0..n_modes)
        .map(|i| {
            if i < 26 {
                char::from(b'A' + i as u8).to_string()
            } else {
                format!("M{}", i + 1)
            }
        })
        .collect()
}

/// Label of a single mode, falling back to the default scheme.
pub fn label_of(labels: &[String], mode: usize) -> String {
    labels
        .get(mode)
        .cloned()
        .unwrap_or_else(|| default_labels(mode + 1).pop().unwrap())
}

/// Concatenated labels of a party; comma-separated if any label is longer
/// than one character.
pub fn format_party(labels: &[String], modes: &[usize]) -> String {
    let names: Vec<String> = modes.iter().map(|&m| label_of(labels, m)).collect();
    if names.iter().all(|n| n.chars().count() == 1) {
        names.concat()
    } else {
        names.join(",")
    }
}

pub fn format_partition(labels: &[String], part: &ModePartition) -> String {
    format!(
        "{}->{}",
        format_party(labels, part.steering()),
        format_party(labels, part.steered())
    )
}

fn lookup(labels: &[String], name: &str, context: &str) -> Result<usize> {
    let name = name.trim().trim_end_matches(['\'', '′']);
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| Error::Parse(format!("unknown mode label {name:?} in {context:?}")))
}

/// Parses a party such as `"BC"`, `"A'"` or `"M27,M28"`.
pub fn parse_party(labels: &[String], text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty party".into()));
    }
    let single_char = labels.iter().all(|l| l.chars().count() == 1);
    let modes = if text.contains(',') {
        text.split(',')
            .map(|t| lookup(labels, t, text))
            .collect::<Result<Vec<_>>>()?
    } else if single_char {
        text.chars()
            .filter(|c| !matches!(c, '\'' | '′' | ' '))
            .map(|c| lookup(labels, &c.to_string(), text))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![lookup(labels, text, text)?]
    };
    let mut dedup = modes.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != modes.len() {
        return Err(Error::Parse(format!("repeated mode in party {text:?}")));
    }
    Ok(modes)
}

/// Parses `"BC->A"` into a partition over the given labels.
pub fn parse_partition(labels: &[String], text: &str) -> Result<ModePartition> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| Error::Parse(format!("partition {text:?} has no \"->\" separator")))?;
    let steering = parse_party(labels, lhs)?;
    let steered = parse_party(labels, rhs)?;
    ModePartition::new(steering, steered)
        .map_err(|e| Error::Parse(format!("invalid partition {text:?}: {e}")))
}
