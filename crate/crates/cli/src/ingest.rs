use std::collections::BTreeMap;
use std::path::Path;

use chrono::NaiveDate;
use nigar::TimeSeries;
use serde::Serialize;

use crate::error::IngestError;

const PRICE_COLUMNS: [&str; 5] = ["open", "high", "low", "close", "adj close"];

/// The selected column plus what was discarded on the way in.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub series: TimeSeries,
    pub warnings: IngestWarnings,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestWarnings {
    /// Rows whose selected cell was blank, non-numeric or non-finite.
    pub dropped_rows: usize,
    /// Earlier rows overwritten by a later row with the same date.
    pub duplicate_dates: usize,
    /// Price cells at or below zero (kept).
    pub nonpositive_prices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Date(NaiveDate),
    Index(u64),
    Position(usize),
}

fn find(headers: &[String], name: &str) -> Option<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .or_else(|| headers.iter().position(|h| h.eq_ignore_ascii_case(name)))
}

/// Reads one column of a daily price CSV (Yahoo export layout) or of an
/// `index,value` file. Rows are ordered by `Date` when present, else by
/// `index`, else kept in file order; for repeated dates the last row wins.
pub fn ingest_csv(path: &Path, column: &str) -> Result<Ingested, IngestError> {
    if !path.is_file() {
        return Err(IngestError::MissingFile(path.to_path_buf()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let col = find(&headers, column).ok_or_else(|| IngestError::MissingColumn {
        column: column.to_owned(),
        available: headers.clone(),
    })?;
    let date_col = find(&headers, "Date");
    let index_col = find(&headers, "index");
    let is_price = PRICE_COLUMNS.contains(&headers[col].to_ascii_lowercase().as_str());

    let mut warnings = IngestWarnings::default();
    let mut bad_dates = Vec::new();
    let mut rows: BTreeMap<Key, f64> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let key = if let Some(d) = date_col {
            let raw = record.get(d).unwrap_or("");
            match NaiveDate::parse_from_str(raw, "%Y-%m-%d") {
                Ok(date) => Key::Date(date),
                Err(_) => {
                    bad_dates.push((line, raw.to_owned()));
                    continue;
                }
            }
        } else if let Some(c) = index_col {
            match record.get(c).and_then(|v| v.parse::<u64>().ok()) {
                Some(ix) => Key::Index(ix),
                None => {
                    warnings.dropped_rows += 1;
                    continue;
                }
            }
        } else {
            Key::Position(i)
        };
        let value = match record.get(col).and_then(|v| v.parse::<f64>().ok()) {
            Some(v) if v.is_finite() => v,
            _ => {
                warnings.dropped_rows += 1;
                continue;
            }
        };
        if is_price && value <= 0.0 {
            warnings.nonpositive_prices += 1;
        }
        if rows.insert(key, value).is_some() {
            warnings.duplicate_dates += 1;
        }
    }
    if !bad_dates.is_empty() {
        return Err(IngestError::UnparseableDate { rows: bad_dates });
    }
    if rows.is_empty() {
        return Err(IngestError::EmptyAfterCleaning {
            column: headers[col].clone(),
            dropped: warnings.dropped_rows,
        });
    }
    if warnings.dropped_rows > 0 {
        log::warn!("dropped {} rows with unusable `{}` values", warnings.dropped_rows, headers[col]);
    }
    if warnings.duplicate_dates > 0 {
        log::warn!("{} duplicate dates; kept the last row of each", warnings.duplicate_dates);
    }
    if warnings.nonpositive_prices > 0 {
        log::warn!("{} non-positive prices in `{}`", warnings.nonpositive_prices, headers[col]);
    }

    let labels: Option<Vec<String>> = date_col.map(|_| {
        rows.keys()
            .map(|k| match k {
                Key::Date(d) => d.format("%Y-%m-%d").to_string(),
                _ => unreachable!("date-keyed file"),
            })
            .collect()
    });
    let values: Vec<f64> = rows.into_values().collect();
    let series = match labels {
        Some(l) => TimeSeries::with_labels(values, l)?,
        None => TimeSeries::new(values)?,
    };
    Ok(Ingested { series, warnings })
}
