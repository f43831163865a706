//! Trajectory tables and their CSV / JSON serialization.

use std::io::Write;
use std::path::Path;

use isospec_core::ComplexMatrix;
use serde::Serialize;

use crate::config::{matrix_doc, Format, MatrixDoc};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub t: f64,
    pub values: Vec<f64>,
    pub matrix: Option<ComplexMatrix>,
}

/// One row per sample time: scalar columns followed by an optional matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTable {
    pub columns: Vec<String>,
    pub matrix_name: Option<String>,
    pub rows: Vec<Row>,
}

impl TrajectoryTable {
    pub fn new(columns: &[&str], matrix_name: Option<&str>) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            matrix_name: matrix_name.map(str::to_string),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, values: Vec<f64>, matrix: Option<ComplexMatrix>) {
        debug_assert_eq!(values.len(), self.columns.len());
        debug_assert_eq!(matrix.is_some(), self.matrix_name.is_some());
        self.rows.push(Row { t, values, matrix });
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `t`, the scalar columns, then `M_re_i_j`, `M_im_i_j` column-major.
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["t".to_string()];
        h.extend(self.columns.iter().cloned());
        if let (Some(name), Some(first)) = (&self.matrix_name, self.rows.first()) {
            let m = first.matrix.as_ref().expect("matrix column");
            for (i, j, _) in m.column_major() {
                h.push(format!("{name}_re_{i}_{j}"));
                h.push(format!("{name}_im_{i}_{j}"));
            }
        }
        h
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CliError> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(self.header()).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec = vec![fmt_f64(row.t)];
            rec.extend(row.values.iter().map(|v| fmt_f64(*v)));
            if let Some(m) = &row.matrix {
                for (_, _, z) in m.column_major() {
                    rec.push(fmt_f64(z.re));
                    rec.push(fmt_f64(z.im));
                }
            }
            wr.write_record(&rec).map_err(csv_err)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, kind: &str, mut w: W) -> Result<(), CliError> {
        let doc = JsonTrajectory {
            kind,
            columns: &self.columns,
            matrix: self.matrix_name.as_deref(),
            samples: self
                .rows
                .iter()
                .map(|r| JsonSample { t: r.t, values: &r.values, matrix: r.matrix.as_ref().map(matrix_doc) })
                .collect(),
        };
        serde_json::to_writer(&mut w, &doc).map_err(|e| CliError::Numerical(format!("json: {e}")))?;
        writeln!(w)?;
        Ok(())
    }

    /// Writes `<dir>/trajectory.<ext>` and returns its path.
    pub fn write(&self, dir: &Path, kind: &str, format: Format) -> Result<std::path::PathBuf, CliError> {
        let path = dir.join(format!("trajectory.{}", format.extension()));
        let f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        match format {
            Format::Csv => self.write_csv(f)?,
            Format::Json => self.write_json(kind, f)?,
        }
        Ok(path)
    }
}

#[derive(Serialize)]
struct JsonTrajectory<'a> {
    kind: &'a str,
    columns: &'a [String],
    matrix: Option<&'a str>,
    samples: Vec<JsonSample<'a>>,
}

#[derive(Serialize)]
struct JsonSample<'a> {
    t: f64,
    values: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixDoc>,
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Numerical(format!("csv: {e}"))
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn table() -> TrajectoryTable {
        let mut t = TrajectoryTable::new(&["x"], Some("A"));
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(1.5, -2.0);
        t.push(0.0, vec![1e-20], Some(m.clone()));
        t.push(0.5, vec![0.25], Some(m));
        t
    }

    #[test]
    fn csv_header_is_column_major() {
        let mut buf = Vec::new();
        table().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,x,A_re_0_0,A_im_0_0,A_re_1_0,A_im_1_0,A_re_0_1,A_im_0_1,A_re_1_1,A_im_1_1"
        );
        assert_eq!(lines.next().unwrap(), "0,1e-20,0,0,0,0,1.5,-2,0,0");
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn json_shape() {
        let mut buf = Vec::new();
        table().write_json("heisenberg", &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["kind"], "heisenberg");
        assert_eq!(v["matrix"], "A");
        assert_eq!(v["samples"][1]["t"], 0.5);
        assert_eq!(v["samples"][0]["matrix"][0][1][0], 1.5);
        assert_eq!(v["samples"][0]["matrix"][0][1][1], -2.0);
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.0, 1.0, -0.1, 1e-20, 3.25e17, 0.1 + 0.2, -7.5e-5] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
