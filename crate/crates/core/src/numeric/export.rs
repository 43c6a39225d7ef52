use std::io::Write;

use super::domain::SampleDomain;
use crate::algebra::{BoundField, ParamValues};
use crate::error::{Error, Result};
use crate::mhd::{bundle_to_cartesian, Frame, SolutionBundle};

pub const CSV_HEADER: [&str; 11] = [
    "x1", "x2", "x3", "t", "v1", "v2", "v3", "H1", "H2", "H3", "P",
];

/// One exported sample: `(x1, x2, x3, t, v1, v2, v3, H1, H2, H3, P)`.
pub type SampleRow = [f64; 11];

/// Evaluates `(v, H, P)` in Cartesian components at the domain's samples.
pub fn sample_fields(
    b: &SolutionBundle,
    d: &SampleDomain,
    params: &ParamValues,
) -> Result<Vec<SampleRow>> {
    b.check_values(params)?;
    let cart = match b.frame() {
        Frame::Cartesian => b.clone(),
        Frame::CylAxisym => bundle_to_cartesian(b)?,
    };
    let tstar = b.tstar_value(params)?;
    let bound: Vec<BoundField> = cart
        .scalars()
        .iter()
        .map(|f| f.bind(params))
        .collect::<Result<_>>()?;
    d.samples(tstar)?
        .into_iter()
        .map(|(x, t)| {
            let mut row = [0.0; 11];
            row[..3].copy_from_slice(&x);
            row[3] = t;
            for (i, f) in bound.iter().enumerate() {
                row[4 + i] = f.eval(&x, tstar - t)?;
            }
            Ok(row)
        })
        .collect()
}

/// Writes rows as CSV with the fixed header.
pub fn write_csv<W: Write>(out: W, rows: &[SampleRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.iter().map(|v| format!("{v:e}")))
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{family_one, Family, FamilyParams};

    #[test]
    fn csv_round_trip() {
        let b = family_one(&FamilyParams::unit(Family::One)).unwrap();
        let p = b.values(0.0).unwrap();
        let d = SampleDomain::default().at_time(0.0).with_n(10);
        let rows = sample_fields(&b, &d, &p).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x1,x2,x3,t,v1,v2,v3,H1,H2,H3,P");
        let parsed: Vec<Vec<f64>> = lines
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(parsed.len(), 10);
        for (row, want) in parsed.iter().zip(&rows) {
            assert_eq!(row.as_slice(), want.as_slice());
        }
    }
}
