//! Per-step diagnostics and their CSV encoding.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::real::Real;

pub const SERIES_HEADER: &str = "t,a,b,lambda,theta_a,theta_b,volume,energy";
pub const PROFILE_HEADER: &str = "t,x,h,w";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow<T> {
    pub t: T,
    pub a: T,
    pub b: T,
    pub lambda: T,
    pub theta_a: T,
    pub theta_b: T,
    pub volume: T,
    pub energy: T,
}

impl<T: Real> SeriesRow<T> {
    fn fields(&self) -> [T; 8] {
        [self.t, self.a, self.b, self.lambda, self.theta_a, self.theta_b, self.volume, self.energy]
    }
}

/// Full height profile at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot<T> {
    pub t: T,
    pub x: Vec<T>,
    pub h: Vec<T>,
    pub w: Vec<T>,
}

/// Ordered record of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    rows: Vec<SeriesRow<T>>,
    snapshots: Vec<Snapshot<T>>,
}

impl<T> Default for TimeSeries<T> {
    fn default() -> Self {
        Self { rows: Vec::new(), snapshots: Vec::new() }
    }
}

impl<T: Real> TimeSeries<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a row; times must increase strictly.
    pub fn push(&mut self, row: SeriesRow<T>) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if !(row.t > last.t) {
                return Err(Error::Invariant(format!("time {} does not follow {}", row.t, last.t)));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn push_snapshot(&mut self, snap: Snapshot<T>) {
        self.snapshots.push(snap);
    }

    pub fn rows(&self) -> &[SeriesRow<T>] {
        &self.rows
    }

    pub fn snapshots(&self) -> &[Snapshot<T>] {
        &self.snapshots
    }

    pub fn last(&self) -> Option<&SeriesRow<T>> {
        self.rows.last()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_rows<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{SERIES_HEADER}")?;
        for row in &self.rows {
            write_record(&mut out, &row.fields())?;
        }
        Ok(())
    }

    pub fn write_profiles<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{PROFILE_HEADER}")?;
        for s in &self.snapshots {
            for j in 0..s.x.len() {
                write_record(&mut out, &[s.t, s.x[j], s.h[j], s.w[j]])?;
            }
        }
        Ok(())
    }
}

/// Formats a value with 17 significant digits.
pub fn format_value<T: Real>(v: T) -> String {
    format!("{:.16e}", v.as_f64())
}

/// Writes one comma-separated record with 17 significant digits per field.
pub fn write_record<W: Write, T: Real>(out: &mut W, values: &[T]) -> io::Result<()> {
    let mut first = true;
    for v in values {
        if !first {
            out.write_all(b",")?;
        }
        first = false;
        write!(out, "{}", format_value(*v))?;
    }
    out.write_all(b"\n")
}

/// Parses a CSV body written by [`write_record`], skipping the header line.
pub fn parse_records(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, line)| {
            line.split(',')
                .map(|f| {
                    f.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::InvalidInput(format!("row {}: {e}", i + 2)))
                })
                .collect()
        })
        .collect()
}
