use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::OutputError;

pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunSummary {
    pub final_time: f64,
    pub events_executed: u64,
    pub agents_alive: u64,
    pub agents_absorbed: u64,
}

impl RunSummary {
    pub fn agents_created(&self) -> u64 {
        self.agents_alive + self.agents_absorbed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Human-readable lines followed by the JSON object.
pub fn write_summary(summary: &RunSummary, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "final time:      {}", summary.final_time)?;
    writeln!(out, "events executed: {}", summary.events_executed)?;
    writeln!(out, "agents alive:    {}", summary.agents_alive)?;
    writeln!(out, "agents absorbed: {}", summary.agents_absorbed)?;
    writeln!(out, "{}", summary.to_json())
}

pub fn write_summary_json(summary: &RunSummary, dir: &Path) -> Result<PathBuf, OutputError> {
    let path = dir.join(SUMMARY_FILE);
    fs::write(&path, summary.to_json() + "\n").map_err(|e| OutputError::io(&path, e))?;
    Ok(path)
}
