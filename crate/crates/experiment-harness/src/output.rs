//! Result assembly and atomic persistence.
//!
//! Every payload file (config echo, tables, summary, plot data) is written
//! via a temp file in the target directory followed by a rename, so an
//! interrupted run never leaves a partial file at its final path.
//! `summary.json` is written last and marks a completed run. Wall-clock
//! metadata lives in `run_meta.json`, which is the one file excluded from
//! the byte-identical reproducibility contract.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub build: String,
    pub duration: Duration,
    /// (file name, file content) payload tables.
    pub tables: Vec<(String, String)>,
    pub summary: serde_json::Value,
}

impl ExperimentResult {
    pub fn table(&self, name: &str) -> Option<&str> {
        self.tables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }

    /// Write all files; returns the paths written, `summary.json` last.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();

        let mut persist = |name: &str, content: &str| -> Result<PathBuf> {
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(content.as_bytes())?;
            let path = dir.join(name);
            tmp.persist(&path)
                .map_err(|e| HarnessError::Io(e.error))?;
            Ok(path)
        };

        written.push(persist("config.json", &self.config.to_json())?);
        for (name, content) in &self.tables {
            written.push(persist(name, content)?);
        }
        written.push(persist("plot.csv", &emit_plot_data(self)?)?);
        let meta = json!({
            "build": self.build,
            "duration_seconds": self.duration.as_secs_f64(),
        });
        written.push(persist(
            "run_meta.json",
            &serde_json::to_string_pretty(&meta).expect("meta serializes"),
        )?);
        written.push(persist(
            "summary.json",
            &serde_json::to_string_pretty(&self.summary).expect("summary serializes"),
        )?);
        Ok(written)
    }
}

/// Reshape the primary payload into a tidy long-form CSV, one observation
/// per row, for external plotting.
pub fn emit_plot_data(result: &ExperimentResult) -> Result<String> {
    let kind = result.config.kind_name();
    let take = |name: &str| {
        result
            .table(name)
            .ok_or_else(|| HarnessError::NotFound(format!("payload table {name} missing")))
    };
    let reshape = |content: &str, columns: &[usize], header: &str| {
        let mut out = String::from(header);
        out.push('\n');
        for line in content.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let row: Vec<&str> = columns.iter().map(|&c| fields[c]).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    };

    match kind {
        "boson-exact" | "fermion-exact" | "fourier" => {
            Ok(reshape(take("distribution.csv")?, &[0, 1], "outcome,prob"))
        }
        "noise-sweep" => Ok(reshape(
            take("sweep.csv")?,
            &[0, 2, 3, 5],
            "n,epsilon,correlation,stderr",
        )),
        "hermite-check" => Ok(reshape(
            take("damping.csv")?,
            &[0, 2, 4],
            "degree,damping,stderr",
        )),
        "circuit-run" => Ok(reshape(
            take("histogram.csv")?,
            &[0, 1],
            "corrupted_count,occurrences",
        )),
        "noisy-cat" => Ok(reshape(
            take("noisy_cat.csv")?,
            &[3, 4, 5],
            "correlation,bound,margin",
        )),
        "smoothing" => Ok(reshape(
            take("smoothing.csv")?,
            &[0, 2],
            "step,completeness_error",
        )),
        "fluctuation" => Ok(reshape(
            take("fluctuation.csv")?,
            &[0, 2, 3],
            "n,std,fitted_exponent",
        )),
        other => Err(HarnessError::NotFound(format!(
            "no plot reshaping for kind {other}"
        ))),
    }
}
