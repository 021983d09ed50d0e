use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use ustlab_core::Estimate;

use crate::error::Result;

/// Prefix of the statistic name of a pass/fail row.
pub const CHECK_PREFIX: &str = "check:";

/// One CSV row. Summary rows leave `replica` empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub replica: Option<usize>,
    pub statistic: String,
    pub value: f64,
    pub stderr: Option<f64>,
}

impl Row {
    pub fn is_check(&self) -> bool {
        self.statistic.starts_with(CHECK_PREFIX)
    }

    pub fn check_failed(&self) -> bool {
        self.is_check() && self.value == 0.0
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<Row>,
}

impl ExperimentResult {
    pub fn extend(&mut self, rows: impl IntoIterator<Item = Row>) {
        self.rows.extend(rows);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.check_failed())
    }

    pub fn checks(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.is_check())
    }

    pub fn passed(&self) -> bool {
        self.failed_checks().next().is_none()
    }

    /// First summary row of `family`/`n` named `statistic`.
    pub fn summary(&self, family: &str, n: usize, statistic: &str) -> Option<&Row> {
        self.rows.iter().find(|r| {
            r.replica.is_none() && r.family == family && r.n == n && r.statistic == statistic
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(buf)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let rows = r
            .deserialize()
            .collect::<std::result::Result<Vec<Row>, _>>()?;
        Ok(ExperimentResult { rows })
    }
}

/// Row builder for one `(family, n)` cell.
#[derive(Clone, Debug)]
pub struct CellRows {
    family: String,
    n: usize,
    seed: u64,
    pub rows: Vec<Row>,
}

impl CellRows {
    pub fn new(family: &str, n: usize, seed: u64) -> Self {
        CellRows {
            family: family.to_owned(),
            n,
            seed,
            rows: Vec::new(),
        }
    }

    fn row(
        &mut self,
        seed: u64,
        replica: Option<usize>,
        statistic: String,
        value: f64,
        stderr: Option<f64>,
    ) {
        self.rows.push(Row {
            family: self.family.clone(),
            n: self.n,
            seed,
            replica,
            statistic,
            value,
            stderr,
        });
    }

    pub fn replica(&mut self, i: usize, seed: u64, statistic: impl Into<String>, value: f64) {
        self.row(seed, Some(i), statistic.into(), value, None);
    }

    pub fn replica_estimate(
        &mut self,
        i: usize,
        seed: u64,
        statistic: impl Into<String>,
        e: Estimate,
    ) {
        self.row(seed, Some(i), statistic.into(), e.value, Some(e.stderr));
    }

    pub fn value(&mut self, statistic: impl Into<String>, value: f64) {
        self.row(self.seed, None, statistic.into(), value, None);
    }

    pub fn estimate(&mut self, statistic: impl Into<String>, e: Estimate) {
        self.row(self.seed, None, statistic.into(), e.value, Some(e.stderr));
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.row(
            self.seed,
            None,
            format!("{CHECK_PREFIX}{name}"),
            if passed { 1.0 } else { 0.0 },
            None,
        );
    }

    pub fn replica_check(&mut self, i: usize, seed: u64, name: &str, passed: bool) {
        self.row(
            seed,
            Some(i),
            format!("{CHECK_PREFIX}{name}"),
            if passed { 1.0 } else { 0.0 },
            None,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_lossless() {
        let mut c = CellRows::new("torus5", 243, u64::MAX);
        c.replica(0, 17, "x", 0.1 + 0.2);
        c.replica(1, 18, "x", 1e-300);
        c.estimate(
            "mean",
            Estimate {
                value: std::f64::consts::PI,
                stderr: 1.0 / 3.0,
                samples: 9,
            },
        );
        c.check("ok", true);
        c.check("bad", false);
        let res = ExperimentResult { rows: c.rows };
        let bytes = res.to_csv_bytes().unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("family,n,seed,replica,statistic,value,stderr\n"));
        let back = ExperimentResult::read_csv(&bytes[..]).unwrap();
        assert_eq!(back, res);
        assert_eq!(back.to_csv_bytes().unwrap(), bytes);
        assert_eq!(res.failed_checks().count(), 1);
        assert!(!res.passed());
        assert_eq!(
            res.summary("torus5", 243, "mean").unwrap().stderr,
            Some(1.0 / 3.0)
        );
    }
}
