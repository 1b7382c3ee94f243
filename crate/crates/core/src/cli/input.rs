use std::fs;
use std::path::Path;

use super::CliError;
use crate::coding::{parse_generator, spectrum_from_generator, DistanceSpectrum};

/// Expands `start:stop:step` into `start, start+step, …` up to `stop`
/// (inclusive when `stop` lies on the grid).
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("--eps-grid `{text}`: {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let mut nums = [0.0f64; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| bad(&format!("`{part}` is not a number")))?;
    }
    let [start, stop, step] = nums;
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
        return Err(bad("step must be positive and bounds finite"));
    }
    if stop < start {
        return Err(bad("stop is below start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(bad("too many grid points"));
    }
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read `{}`: {e}", path.display())))
}

/// Reads a `l,count` CSV with a header row. Weights not listed count zero;
/// a missing `l = 0` row stands for the all-zero codeword. The largest
/// listed weight is the block length.
pub fn read_spectrum_csv(path: &Path) -> Result<DistanceSpectrum, CliError> {
    let text = read(path)?;
    let name = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("`{name}`: {e}")))?
        .clone();
    if headers.len() != 2 || &headers[0] != "l" || &headers[1] != "count" {
        return Err(CliError::Input(format!(
            "`{name}`: header must be `l,count`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut pairs = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| CliError::Input(format!("`{name}`: {e}")))?;
        let line = row.position().map_or(0, |p| p.line());
        let l: usize = row[0].parse().map_err(|_| {
            CliError::Input(format!("`{name}` line {line}: weight `{}` is not an integer", &row[0]))
        })?;
        let count: f64 = row[1].parse().map_err(|_| {
            CliError::Input(format!("`{name}` line {line}: count `{}` is not a number", &row[1]))
        })?;
        pairs.push((l, count));
    }
    let n = pairs.iter().map(|p| p.0).max().unwrap_or(0);
    DistanceSpectrum::from_pairs(n, &pairs).map_err(|e| CliError::Input(format!("`{name}`: {e}")))
}

pub fn read_generator(path: &Path) -> Result<DistanceSpectrum, CliError> {
    let name = path.display();
    let rows = parse_generator(&read(path)?)
        .map_err(|e| CliError::Input(format!("`{name}`: {e}")))?;
    spectrum_from_generator(&rows).map_err(|e| CliError::Input(format!("`{name}`: {e}")))
}
