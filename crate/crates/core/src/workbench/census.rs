use std::io::Write;

use serde::Serialize;

use super::{Cache, RunConfig};
use crate::error::{Error, Result};
use crate::gf_tower::arith;
use crate::params::SqrtQ;
use crate::plane_curves::{degree3_quotient_model, hermitian_canonical};
use crate::quotient::quotient_genus;
use crate::semigroup::dim_d;

/// Largest q − √q + 1 that is factored by trial division.
pub const FACTOR_CAP: u64 = 1 << 40;

/// CSV and table column order.
pub const CENSUS_COLUMNS: [&str; 9] = [
    "sqrt_q",
    "d",
    "genus",
    "expected_count",
    "measured_count",
    "dim_d",
    "method",
    "verdict",
    "note",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Burnside,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Burnside => "burnside",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowVerdict {
    Pass,
    Fail,
    Skipped,
}

impl RowVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub sqrt_q: u64,
    pub d: u64,
    pub genus: u64,
    /// q + 1 + 2g√q.
    pub expected_count: u64,
    pub measured_count: Option<u64>,
    pub dim_d: Option<u64>,
    pub method: Method,
    pub verdict: RowVerdict,
    pub note: Option<String>,
}

impl CensusRow {
    /// Table cells in [`CENSUS_COLUMNS`] order.
    pub fn cells(&self) -> Vec<String> {
        let opt = |x: Option<u64>| x.map_or(String::new(), |v| v.to_string());
        vec![
            self.sqrt_q.to_string(),
            self.d.to_string(),
            self.genus.to_string(),
            self.expected_count.to_string(),
            opt(self.measured_count),
            opt(self.dim_d),
            self.method.as_str().into(),
            self.verdict.as_str().into(),
            self.note.clone().unwrap_or_default(),
        ]
    }
}

/// Positive divisors of n, ascending, within the trial-division cap.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 || n > FACTOR_CAP {
        return Err(Error::CapExceeded(format!("{n} is outside the trial-division range 1..={FACTOR_CAP}")));
    }
    Ok(arith::divisors(n))
}

fn row(s: SqrtQ, d: u64, method: Method, measured: Result<u64>) -> Result<CensusRow> {
    let genus = quotient_genus(s, d)?;
    let expected_count = s.q() + 1 + 2 * genus * s.value();
    let (measured_count, verdict, note) = match measured {
        Ok(m) if m == expected_count => (Some(m), RowVerdict::Pass, None),
        Ok(m) => (Some(m), RowVerdict::Fail, None),
        Err(e @ Error::CapExceeded(_)) => (None, RowVerdict::Skipped, Some(e.to_string())),
        Err(e) => (None, RowVerdict::Fail, Some(e.to_string())),
    };
    Ok(CensusRow {
        sqrt_q: s.value(),
        d,
        genus,
        expected_count,
        measured_count,
        dim_d: dim_d(s, d).ok(),
        method,
        verdict,
        note,
    })
}

/// One row per divisor d of q − √q + 1. d = 1 is counted directly on the
/// Hermitian curve; d = 3 is counted both directly on the degree-(√q+1)
/// model and by Burnside; every other d by Burnside.
pub fn census(s: SqrtQ, cfg: &RunConfig, cache: &Cache) -> Result<Vec<CensusRow>> {
    let mut rows = Vec::new();
    for d in divisors(s.cyclic_order())? {
        if d == 1 {
            let measured = s
                .field_q()
                .and_then(|f| hermitian_canonical(s, &f))
                .and_then(|h| cache.count(&h, 1, cfg.enumeration_cap))
                .map(|r| r.total);
            rows.push(row(s, d, Method::Direct, measured)?);
            continue;
        }
        if d == 3 {
            let measured = degree3_quotient_model(s)
                .and_then(|m| cache.nonsingular(&m.model, 1, cfg.enumeration_cap))
                .and_then(|n| {
                    n.total
                        .ok_or_else(|| Error::IdentityFailed("plane model has a non-ordinary singularity".into()))
                });
            rows.push(row(s, d, Method::Direct, measured)?);
        }
        let measured = cache.burnside(s, d, cfg.lift_cap).and_then(|r| {
            r.quotient_count
                .ok_or_else(|| Error::IdentityFailed(format!("Σ N_j = {} is not divisible by {d}", r.orbit_total)))
        });
        rows.push(row(s, d, Method::Burnside, measured)?);
    }
    Ok(rows)
}

pub fn write_census_csv<W: Write>(rows: &[CensusRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CENSUS_COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record(r.cells()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_division() {
        assert_eq!(divisors(21).unwrap(), vec![1, 3, 7, 21]);
        assert_eq!(divisors(57).unwrap(), vec![1, 3, 19, 57]);
        assert_eq!(divisors(49).unwrap(), vec![1, 7, 49]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn census_sqrt_q_5() {
        let rows = census(SqrtQ::new(5).unwrap(), &RunConfig::default(), &Cache::disabled()).unwrap();
        let got: Vec<(u64, u64, Option<u64>, Method)> =
            rows.iter().map(|r| (r.d, r.genus, r.measured_count, r.method)).collect();
        assert_eq!(
            got,
            vec![
                (1, 10, Some(126), Method::Direct),
                (3, 3, Some(56), Method::Direct),
                (3, 3, Some(56), Method::Burnside),
                (7, 1, Some(36), Method::Burnside),
                (21, 0, Some(26), Method::Burnside),
            ]
        );
        assert!(rows.iter().all(|r| r.verdict == RowVerdict::Pass));
        let mut buf = Vec::new();
        write_census_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("sqrt_q,d,genus,expected_count,measured_count,dim_d,method,verdict,note\n"));
        assert!(text.contains("5,7,1,36,36,"));
    }

    #[test]
    fn lift_cap_skips() {
        let cfg = RunConfig {
            lift_cap: 1,
            ..RunConfig::default()
        };
        let rows = census(SqrtQ::new(3).unwrap(), &cfg, &Cache::disabled()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].verdict, RowVerdict::Pass);
        assert_eq!(rows[1].verdict, RowVerdict::Skipped);
        assert_eq!(rows[1].genus, 0);
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
