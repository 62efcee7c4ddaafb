//! Measurement files: `combo,variance,samples`, one record per row, with
//! `samples` either a count or `exact`.

use std::io::{Read, Write};

use super::{Combo, MeasurementRecord, SampleCount};
use crate::error::{Error, Result};

pub fn write_records<W: Write>(
    writer: W,
    records: &[MeasurementRecord],
    labels: &[String],
) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["combo", "variance", "samples"])?;
    for r in records {
        let samples = match r.sample_count {
            SampleCount::Exact => "exact".to_string(),
            SampleCount::Samples(n) => n.to_string(),
        };
        out.write_record([r.combo.format_with(labels), r.variance.to_string(), samples])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(reader: R, labels: &[String]) -> Result<Vec<MeasurementRecord>> {
    let mut input = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = input.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("measurement file has no {name:?} column")))
    };
    let (c_combo, c_var, c_samples) = (column("combo")?, column("variance")?, column("samples")?);

    let mut records = Vec::new();
    for (line, row) in input.records().enumerate() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("");
        let combo = Combo::parse_with(labels, field(c_combo))?;
        let variance: f64 = field(c_var).parse().map_err(|_| {
            Error::Parse(format!("row {}: bad variance {:?}", line + 2, field(c_var)))
        })?;
        let sample_count =
            match field(c_samples) {
                s if s.eq_ignore_ascii_case("exact") => SampleCount::Exact,
                s => SampleCount::Samples(s.parse().map_err(|_| {
                    Error::Parse(format!("row {}: bad sample count {s:?}", line + 2))
                })?),
            };
        records.push(MeasurementRecord::new(combo, variance, sample_count)?);
    }
    Ok(records)
}
