//! Lifetime datasets: the built-in guinea-pig survival times, CSV ingestion
//! and the empirical distribution function.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reserved `--data` name for [`guinea_pig_data`].
pub const BUILTIN_GUINEA_PIGS: &str = "builtin:guinea-pigs";

/// Survival times in days of 72 guinea pigs infected with virulent tubercle
/// bacilli, regimen 6.6 (Bjerkedal, 1960).
const GUINEA_PIGS: [f64; 72] = [
    12.0, 15.0, 22.0, 24.0, 24.0, 32.0, 32.0, 33.0, 34.0, 38.0, 38.0, 43.0, 44.0, 48.0, 52.0, 53.0, 54.0, 54.0, 55.0,
    56.0, 57.0, 58.0, 58.0, 59.0, 60.0, 60.0, 60.0, 60.0, 61.0, 62.0, 63.0, 65.0, 65.0, 67.0, 68.0, 70.0, 70.0, 72.0,
    73.0, 75.0, 76.0, 76.0, 81.0, 83.0, 84.0, 85.0, 87.0, 91.0, 95.0, 96.0, 98.0, 99.0, 109.0, 110.0, 121.0, 127.0,
    129.0, 131.0, 143.0, 146.0, 146.0, 175.0, 175.0, 211.0, 233.0, 258.0, 258.0, 263.0, 297.0, 341.0, 341.0, 376.0,
];

/// Positive, finite lifetime observations in their original order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    values: Vec<f64>,
    label: String,
}

impl Dataset {
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::domain(format!("observation {} must be finite and > 0, got {v}", i + 1)));
        }
        Ok(Self { values, label: label.into() })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ascending copy; ties keep their original relative order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample variance with divisor `n`.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.len() as f64
    }

    /// `#{x_i ≤ x} / n`.
    pub fn empirical_cdf(&self, x: f64) -> f64 {
        self.values.iter().filter(|&&v| v <= x).count() as f64 / self.len() as f64
    }

    /// Writes one value per line under a `value` header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value"])?;
        for v in &self.values {
            w.write_record([v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn guinea_pig_data() -> Dataset {
    Dataset { values: GUINEA_PIGS.to_vec(), label: "guinea pig survival times (days), regimen 6.6".to_string() }
}

/// Loads one positive real per record.
///
/// A header row is detected when the first record has a non-numeric field.
/// Without `column`, the first column whose first data value is numeric is
/// used; with `column`, the header must name it. Row numbers in errors are
/// 1-based file lines.
pub fn load_csv(path: impl AsRef<Path>, column: Option<&str>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_path(path)?;
    let records = rdr.records().collect::<std::result::Result<Vec<_>, _>>()?;
    let mut rows = records
        .iter()
        .enumerate()
        .map(|(i, r)| (i + 1, r))
        .filter(|(_, r)| !(r.is_empty() || (r.len() == 1 && r[0].is_empty())));
    let Some((first_row, first)) = rows.next() else {
        return Err(Error::EmptyData);
    };
    let has_header = first.iter().any(|f| f.parse::<f64>().is_err());
    let idx = match column {
        Some(name) => {
            if !has_header {
                return Err(Error::Row {
                    row: first_row,
                    message: format!("no header row to look up column `{name}`"),
                });
            }
            first
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::Row { row: first_row, message: format!("no column named `{name}`") })?
        }
        None => {
            let probe = if has_header { rows.clone().next().map(|(_, r)| r) } else { Some(first) };
            match probe {
                Some(r) => r.iter().position(|f| f.parse::<f64>().is_ok()).unwrap_or(0),
                None => return Err(Error::EmptyData),
            }
        }
    };
    let data_rows: Vec<(usize, &csv::StringRecord)> =
        if has_header { rows.collect() } else { std::iter::once((first_row, first)).chain(rows).collect() };
    let mut values = Vec::with_capacity(data_rows.len());
    for (row, rec) in data_rows {
        let field = rec.get(idx).ok_or_else(|| Error::Row { row, message: format!("missing column {}", idx + 1) })?;
        let v: f64 = field.parse().map_err(|_| Error::Row { row, message: format!("`{field}` is not a number") })?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Row { row, message: format!("value {v} must be finite and > 0") });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    Dataset::new(values, path.display().to_string())
}

/// Resolves `builtin:guinea-pigs` or a CSV path.
pub fn resolve(source: &str) -> Result<Dataset> {
    if source == BUILTIN_GUINEA_PIGS {
        Ok(guinea_pig_data())
    } else {
        load_csv(source, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn builtin_transcription() {
        let d = guinea_pig_data();
        assert_eq!(d.len(), 72);
        assert_eq!(d.values()[0], 12.0);
        assert_eq!(d.values()[71], 376.0);
        let sorted = d.sorted();
        assert_eq!(sorted[0], 12.0);
        assert_eq!(sorted[71], 376.0);
        // hand sum of the listing
        assert_eq!(d.values().iter().sum::<f64>(), 7187.0);
        assert_eq!(sorted, d.values(), "listed in ascending order");
        assert_eq!(guinea_pig_data(), d);
    }

    #[test]
    fn ecdf_values() {
        let d = guinea_pig_data();
        assert_eq!(d.empirical_cdf(11.9), 0.0);
        assert_eq!(d.empirical_cdf(376.0), 1.0);
        assert_eq!(d.empirical_cdf(60.0), 28.0 / 72.0);
        // four tied 60s: jump of 4/72
        assert_eq!(d.empirical_cdf(59.999), 24.0 / 72.0);
        let mut prev = 0.0;
        for i in 0..500 {
            let e = d.empirical_cdf(i as f64);
            assert!(e >= prev);
            prev = e;
        }
    }

    #[test]
    fn dataset_validation() {
        assert!(matches!(Dataset::new(vec![], "x"), Err(Error::EmptyData)));
        assert!(Dataset::new(vec![1.0, 0.0], "x").is_err());
        assert!(Dataset::new(vec![1.0, f64::NAN], "x").is_err());
    }

    #[test]
    fn load_plain_column() {
        let f = write("1.5\n2.0\n3.5\n");
        let d = load_csv(f.path(), None).unwrap();
        assert_eq!(d.values(), &[1.5, 2.0, 3.5]);
    }

    #[test]
    fn load_rejects_negative_with_row() {
        let f = write("1.5\n-1\n3.5\n");
        match load_csv(f.path(), None) {
            Err(Error::Row { row, .. }) => assert_eq!(row, 2),
            other => panic!("unexpected {other:?}"),
        }
        let f = write("value\n1.5\nabc\n");
        match load_csv(f.path(), None) {
            Err(Error::Row { row, message }) => {
                assert_eq!(row, 3);
                assert!(message.contains("abc"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn load_with_header_and_named_column() {
        let f = write("id,days\na,10\nb,20\n");
        assert_eq!(load_csv(f.path(), None).unwrap().values(), &[10.0, 20.0]);
        assert_eq!(load_csv(f.path(), Some("days")).unwrap().values(), &[10.0, 20.0]);
        assert!(load_csv(f.path(), Some("weight")).is_err());
    }

    #[test]
    fn load_errors() {
        assert!(matches!(load_csv("/definitely/not/here.csv", None), Err(Error::Csv(_))));
        let f = write("value\n");
        assert!(matches!(load_csv(f.path(), None), Err(Error::EmptyData)));
    }

    #[test]
    fn csv_roundtrip() {
        let d = guinea_pig_data();
        let f = tempfile::NamedTempFile::new().unwrap();
        d.write_csv(std::fs::File::create(f.path()).unwrap()).unwrap();
        let back = load_csv(f.path(), None).unwrap();
        assert_eq!(back.values(), d.values());
    }
}
