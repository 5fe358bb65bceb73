//! Synthetic daily price files for testing the real-data workflow without
//! the original vendor data.

use std::io::Write;

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use nigar::model::{simulate_path, NigArModel};
use nigar::{NigParams, RngStream};

pub const FIXTURE_ROWS: usize = 1594;
pub const FIXTURE_SEED: u64 = 2021;

/// Fitted closing-price model: `ρ = 0.9941`, `μ = 0.226`, `δ = 9.365`,
/// `γ = 0.0201`, `β = 0.0013`.
pub fn fitted_price_model() -> NigArModel {
    let innov = NigParams::from_gamma(0.0201, 0.0013, 0.226, 9.365).expect("valid parameters");
    NigArModel::new(0.9941, innov).expect("valid parameters")
}

pub fn first_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2014, 12, 31).expect("valid date")
}

/// `n` weekdays starting at `start` (or the next weekday after it).
pub fn business_days(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(n);
    let mut d = start;
    while out.len() < n {
        if !matches!(d.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(d);
        }
        d += Duration::days(1);
    }
    out
}

/// Writes `closes` as a Date,Open,High,Low,Close,Adj Close,Volume file. Open
/// is the previous close, High/Low bracket Open and Close, Volume is fixed.
pub fn write_ohlcv<W: Write>(out: W, dates: &[NaiveDate], closes: &[f64]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"])?;
    let mut prev = closes[0];
    for (d, &c) in dates.iter().zip(closes) {
        let (hi, lo) = (prev.max(c), prev.min(c));
        w.write_record([
            d.format("%Y-%m-%d").to_string(),
            prev.to_string(),
            hi.to_string(),
            lo.to_string(),
            c.to_string(),
            c.to_string(),
            "1000000".to_string(),
        ])?;
        prev = c;
    }
    w.flush()?;
    Ok(())
}

/// Closing prices of the bundled fixture for `seed`.
pub fn fixture_closes(seed: u64) -> Vec<f64> {
    let y = simulate_path(&fitted_price_model(), FIXTURE_ROWS, &mut RngStream::new(seed, 0))
        .expect("positive length");
    y.into_values()
}

pub fn write_fixture<W: Write>(out: W, seed: u64) -> csv::Result<()> {
    let closes = fixture_closes(seed);
    write_ohlcv(out, &business_days(first_date(), closes.len()), &closes)
}
