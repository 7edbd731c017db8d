//! Journals for resumable sweeps and CSV report files.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{PointResult, SweepReport};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Header {
    family: String,
    grid: String,
}

/// Append-only JSON-lines journal: one header line, then one line per point.
pub struct Journal {
    file: File,
}

impl Journal {
    pub fn open(path: &Path, family: &str, grid: &str, fresh: bool) -> Result<Journal> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .truncate(false)
            .open(path)?;
        if fresh {
            file.set_len(0)?;
            let header = Header {
                family: family.into(),
                grid: grid.into(),
            };
            writeln!(file, "{}", serde_json::to_string(&header).map_err(|e| Error::Io(e.to_string()))?)?;
            file.flush()?;
        }
        Ok(Journal { file })
    }

    pub fn append(&mut self, point: &PointResult) -> Result<()> {
        let line = serde_json::to_string(point).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        Ok(())
    }
}

/// Points already recorded in the journal at `path`. A missing or empty file
/// yields nothing; a journal written for another sweep is an error. A torn
/// final line (interrupted write) is ignored.
pub fn read_journal(path: &Path, family: &str, grid: &str) -> Result<Vec<PointResult>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut lines = BufReader::new(file).lines();
    let Some(first) = lines.next().transpose()? else {
        return Ok(Vec::new());
    };
    let header: Header = match serde_json::from_str(&first) {
        Ok(h) => h,
        Err(_) => return Ok(Vec::new()),
    };
    if header.family != family || header.grid != grid {
        return Err(Error::Io(format!(
            "journal {} belongs to sweep '{}' over '{}', not '{family}' over '{grid}'",
            path.display(),
            header.family,
            header.grid
        )));
    }
    let mut out = Vec::new();
    for line in lines {
        let line = line?;
        match serde_json::from_str::<PointResult>(&line) {
            Ok(p) => out.push(p),
            Err(_) => break,
        }
    }
    Ok(out)
}

/// `report.csv` → `report.counterexamples.csv`.
pub fn counterexample_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.counterexamples.csv"))
}

/// Writes the point table to `path` and the counterexamples beside it.
pub fn write_report_csv(report: &SweepReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = report.param_names.clone();
    header.extend(report.columns.iter().cloned());
    header.extend(["exact", "branch", "supported"].map(String::from));
    w.write_record(&header)?;
    for p in &report.points {
        let mut row: Vec<String> = p.params.iter().map(ToString::to_string).collect();
        row.extend(p.values.iter().map(ToString::to_string));
        row.push(p.exact.to_string());
        row.push(p.branch.clone().unwrap_or_default());
        row.push(p.supported().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(counterexample_path(path))?;
    let mut header: Vec<String> = report.param_names.clone();
    header.extend(["element", "claim", "expected", "actual"].map(String::from));
    w.write_record(&header)?;
    for c in &report.counterexamples {
        let mut row: Vec<String> = c.params.iter().map(ToString::to_string).collect();
        row.push(c.element.map(|e| e.to_string()).unwrap_or_default());
        row.push(c.claim.clone());
        row.push(c.expected.clone());
        row.push(c.actual.clone());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
