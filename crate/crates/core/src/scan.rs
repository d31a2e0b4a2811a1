use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A table of scan points: one abscissa and a fixed set of observables per row.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub name: String,
    pub abscissa_label: String,
    pub column_labels: Vec<String>,
    rows: Vec<(f64, Vec<f64>)>,
    pub metadata: BTreeMap<String, String>,
}

impl ScanResult {
    pub fn new(name: &str, abscissa_label: &str, column_labels: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            abscissa_label: abscissa_label.to_string(),
            column_labels: column_labels.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Appends a row; rows must share the column count and keep the
    /// abscissa strictly monotone in one direction.
    pub fn push_row(&mut self, abscissa: f64, values: Vec<f64>) -> Result<()> {
        if values.len() != self.column_labels.len() {
            return Err(Error::InvalidScan(format!(
                "row has {} values, expected {}",
                values.len(),
                self.column_labels.len()
            )));
        }
        if let Some((last, _)) = self.rows.last() {
            let step = abscissa - last;
            let ok = match self.direction() {
                Some(d) => step * d > 0.0,
                None => step != 0.0 && step.is_finite(),
            };
            if !ok {
                return Err(Error::InvalidScan(format!(
                    "abscissa {abscissa} breaks strict monotonicity"
                )));
            }
        }
        self.rows.push((abscissa, values));
        Ok(())
    }

    fn direction(&self) -> Option<f64> {
        if self.rows.len() < 2 {
            return None;
        }
        Some((self.rows[1].0 - self.rows[0].0).signum())
    }

    pub fn rows(&self) -> &[(f64, Vec<f64>)] {
        &self.rows
    }

    pub fn abscissae(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let k = self.column_labels.iter().position(|c| c == label)?;
        Some(self.rows.iter().map(|r| r.1[k]).collect())
    }

    /// CSV text: sorted `# key=value` metadata lines, a header, then one
    /// line per row with shortest round-trip decimal floats, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.abscissa_label);
        for c in &self.column_labels {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for (x, values) in &self.rows {
            let _ = write!(out, "{x}");
            for v in values {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Largest absolute difference between two results of the same shape.
    pub fn max_abs_diff(&self, other: &ScanResult) -> Option<f64> {
        if self.rows.len() != other.rows.len() || self.column_labels != other.column_labels {
            return None;
        }
        let mut worst = 0.0f64;
        for ((xa, va), (xb, vb)) in self.rows.iter().zip(&other.rows) {
            worst = worst.max((xa - xb).abs());
            for (a, b) in va.iter().zip(vb) {
                worst = worst.max((a - b).abs());
            }
        }
        Some(worst)
    }
}

pub fn write_csv(result: &ScanResult, path: &Path) -> Result<()> {
    std::fs::write(path, result.to_csv()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_when_empty() {
        let r = ScanResult::new("x", "t", &["a", "b"]);
        assert_eq!(r.to_csv(), "t,a,b\n");
    }

    #[test]
    fn metadata_sorted_first() {
        let r = ScanResult::new("x", "t", &["a"])
            .with_meta("cutoff", 20)
            .with_meta("backend", "fock");
        assert_eq!(r.to_csv(), "# backend=fock\n# cutoff=20\nt,a\n");
    }

    #[test]
    fn rows_round_trip() {
        let mut r = ScanResult::new("lin", "T", &["y"]);
        let vals = [(1.0, 0.1 + 0.2), (0.1, 1.0 / 3.0), (0.01, 1e-300)];
        for (x, y) in vals {
            r.push_row(x, vec![y]).unwrap();
        }
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().skip(1).collect();
        assert_eq!(lines.len(), 3);
        for (line, (x, y)) in lines.iter().zip(vals) {
            let mut it = line.split(',').map(|s| s.parse::<f64>().unwrap());
            assert_eq!(it.next().unwrap().to_bits(), x.to_bits());
            assert_eq!(it.next().unwrap().to_bits(), y.to_bits());
        }
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn invariants_enforced() {
        let mut r = ScanResult::new("x", "t", &["a"]);
        assert!(r.push_row(0.0, vec![]).is_err());
        r.push_row(0.0, vec![1.0]).unwrap();
        r.push_row(1.0, vec![1.0]).unwrap();
        assert!(r.push_row(0.5, vec![1.0]).is_err());
        assert!(r.push_row(1.0, vec![1.0]).is_err());
        let mut d = ScanResult::new("x", "t", &["a"]);
        d.push_row(1.0, vec![1.0]).unwrap();
        d.push_row(0.1, vec![1.0]).unwrap();
        assert!(d.push_row(0.2, vec![1.0]).is_err());
    }

    #[test]
    fn io_error_names_path() {
        let r = ScanResult::new("x", "t", &["a"]);
        let err = write_csv(&r, Path::new("/nonexistent-dir/out.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
    }
}
