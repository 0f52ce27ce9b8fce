//! Parser for vertex-state snapshot files.
//!
//! One line per vertex, `label state`, with the state one of `-1`, `0`,
//! `1` (a leading `+` is accepted). Lines starting with `#` or `%` and
//! blank lines are skipped. Every graph vertex must be assigned exactly
//! once.

use std::collections::HashMap;

use anyhow::{anyhow, Result};
use polarnet::dynamics::StateVector;
use polarnet::graph::LabeledGraph;

pub fn parse_state_file(text: &str, graph: &LabeledGraph) -> Result<StateVector> {
    let n = graph.labels.len();
    let ids: HashMap<&str, u32> = graph
        .labels
        .iter()
        .enumerate()
        .map(|(id, label)| (label.as_str(), id as u32))
        .collect();
    let mut values = vec![0i8; n];
    let mut seen = vec![false; n];

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(anyhow!(
                "state file line {line_no}: expected `label state`, found {} tokens",
                tokens.len()
            ));
        }
        let label = tokens[0];
        let state = match tokens[1] {
            "-1" => -1,
            "0" => 0,
            "1" | "+1" => 1,
            other => {
                return Err(anyhow!(
                    "state file line {line_no}: state `{other}` is not one of -1, 0, 1"
                ))
            }
        };
        let id = *ids
            .get(label)
            .ok_or_else(|| anyhow!("state file line {line_no}: label `{label}` is not in the graph"))?;
        if seen[id as usize] {
            return Err(anyhow!("duplicate state for label `{label}`"));
        }
        seen[id as usize] = true;
        values[id as usize] = state;
    }

    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(anyhow!(
            "missing state for vertex `{}`",
            graph.labels[missing]
        ));
    }
    Ok(StateVector::from_values(values).expect("states validated above"))
}
