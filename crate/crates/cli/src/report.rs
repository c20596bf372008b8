//! Row computation and the JSON / CSV report. JSON is authoritative; CSV
//! carries the same rows flattened.

use std::io::Write;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use subsetsum::bounds::{bound_rows, judge_table, main_term, BoundReport, Theorem};
use subsetsum::counting::{count_all, CountError, CountTable, TableResult};

use crate::config::{Format, JobConfig};
use crate::error::{CliError, EXIT_BUDGET, EXIT_OK, EXIT_VERIFICATION};
use crate::plan::{Cell, Job, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// Over budget; not a failure.
    Skipped,
    /// Numerically unsafe, non-integral or a cross-check mismatch.
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub structure: String,
    pub domain: String,
    pub poly: Option<String>,
    /// `|D|`.
    pub m: usize,
    pub k: usize,
    pub b: String,
    pub status: Status,
    /// Decimal string; counts outgrow every JSON number type.
    pub n: Option<String>,
    /// `C(|D|, k) / |R|` as `p/q`.
    pub main_term: String,
    /// `|N − main_term|` as `p/q`.
    pub deviation: Option<String>,
    pub theorem: Option<&'static str>,
    pub constant: Option<&'static str>,
    /// Rounded up.
    pub bound: Option<f64>,
    pub applicable: Option<bool>,
    pub reason: Option<String>,
    pub holds: Option<bool>,
    pub ratio: Option<f64>,
    pub method: Option<&'static str>,
    pub checked_against: Option<&'static str>,
    pub residual: Option<f64>,
    pub error: Option<String>,
    /// Wall time of the whole instance, repeated on each of its rows.
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub rows: usize,
    pub skipped: usize,
    pub failed: usize,
    pub applicable: usize,
    pub holds: usize,
    pub violations: usize,
    /// Largest `deviation / bound` over applicable rows.
    pub max_ratio: Option<f64>,
}

impl Summary {
    pub fn of(instances: usize, rows: &[ReportRow]) -> Self {
        let mut s = Summary { instances, rows: rows.len(), ..Default::default() };
        for r in rows {
            match r.status {
                Status::Ok => {}
                Status::Skipped => s.skipped += 1,
                Status::Failed => s.failed += 1,
            }
            if r.applicable == Some(true) {
                s.applicable += 1;
            }
            match r.holds {
                Some(true) => s.holds += 1,
                Some(false) => s.violations += 1,
                None => {}
            }
            if r.applicable == Some(true) {
                if let Some(x) = r.ratio {
                    s.max_ratio = Some(s.max_ratio.map_or(x, |m: f64| m.max(x)));
                }
            }
        }
        s
    }

    /// 1 on any violation or failed row, 3 when every row was over budget.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 || self.failed > 0 {
            EXIT_VERIFICATION
        } else if self.rows > 0 && self.skipped == self.rows {
            EXIT_BUDGET
        } else {
            EXIT_OK
        }
    }
}

/// The `Z_n` constant in force for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantNote {
    pub structure: String,
    pub poly: Option<String>,
    pub constant: &'static str,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: JobConfig,
    pub constants: Vec<ConstantNote>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// The counted table extended with zero rows up to `k_hi`.
fn padded(table: &CountTable, k_hi: usize) -> CountTable {
    let size = table.group_size();
    let rows = (0..=k_hi)
        .map(|k| if k <= table.k_max() { table.row(k).to_vec() } else { vec![BigInt::from(0); size] })
        .collect();
    CountTable::from_rows(size, rows)
}

fn run_cell(job: &Job, cell: &Cell, timed: bool) -> Vec<ReportRow> {
    let start = Instant::now();
    let inst = &cell.instance;
    let s = inst.structure();
    let m = inst.domain().size();
    let ks: Vec<usize> = (job.k.lo..=job.k.hi).collect();
    let top = job.k.hi.min(m);

    let counted: Option<Result<(TableResult, CountTable), CountError>> = (job.mode != Mode::Bound)
        .then(|| count_all(inst, top, job.method, &job.budget).map(|t| {
            let p = padded(&t.table, job.k.hi);
            (t, p)
        }));
    let reports: Option<Vec<BoundReport>> = cell.setup.as_ref().map(|setup| match &counted {
        Some(Ok((_, table))) => judge_table(setup, inst, table, &ks, &cell.targets),
        _ => bound_rows(setup, inst, &ks, &cell.targets),
    });
    let wall_ms = timed.then(|| start.elapsed().as_secs_f64() * 1e3);

    let structure = s.describe();
    let domain = inst.domain().describe(s);
    let poly = inst.poly().map(|f| f.describe(s));
    let constant = cell.setup.as_ref().and_then(|x| x.constant).map(|c| c.name());
    let theorem = cell.setup.as_ref().map(|x| x.theorem.name());
    let mut rows = Vec::with_capacity(ks.len() * cell.targets.len());
    let mut idx = 0;
    for &k in &ks {
        let main = main_term(inst, k);
        for &b in &cell.targets {
            let report = reports.as_ref().map(|r| &r[idx]);
            idx += 1;
            let mut row = ReportRow {
                structure: structure.clone(),
                domain: domain.clone(),
                poly: poly.clone(),
                m,
                k,
                b: s.format_element(b),
                status: Status::Ok,
                n: None,
                main_term: rational(&main),
                deviation: None,
                theorem,
                constant,
                bound: report.map(|r| r.bound.value),
                applicable: report.map(|r| r.applicability.applicable),
                reason: report.and_then(|r| r.applicability.reason.clone()),
                holds: report.and_then(|r| r.holds),
                ratio: report.and_then(BoundReport::ratio),
                method: None,
                checked_against: None,
                residual: None,
                error: None,
                wall_ms,
            };
            match &counted {
                None => {}
                Some(Ok((t, table))) => {
                    let n = table.get(k, b);
                    let dev = (BigRational::from_integer(n.clone()) - &main).abs();
                    row.n = Some(n.to_string());
                    row.deviation = Some(rational(&dev));
                    row.method = Some(t.method.name());
                    row.checked_against = t.checked_against.map(|x| x.name());
                    row.residual = if k <= top { t.residual(k, b) } else { None };
                }
                Some(Err(e)) => {
                    row.status = if e.is_budget() { Status::Skipped } else { Status::Failed };
                    row.error = Some(e.to_string());
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Every cell in parallel; rows come back in grid order.
pub fn run(job: &Job, config: &JobConfig) -> Report {
    let timed = !job.no_meta;
    let per_cell: Vec<Vec<ReportRow>> = job.cells.par_iter().map(|c| run_cell(job, c, timed)).collect();
    let rows: Vec<ReportRow> = per_cell.into_iter().flatten().collect();
    let constants = job
        .cells
        .iter()
        .filter_map(|c| {
            let setup = c.setup.as_ref()?;
            let constant = setup.constant.filter(|_| setup.theorem == Theorem::Zn)?;
            let s = c.instance.structure();
            let d = c.instance.poly().map_or(1, |f| f.degree() as u64);
            Some(ConstantNote {
                structure: s.describe(),
                poly: c.instance.poly().map(|f| f.describe(s)),
                constant: constant.name(),
                value: constant.describe(d),
            })
        })
        .collect();
    let summary = Summary::of(job.cells.len(), &rows);
    let meta = Meta {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: job.mode.name(),
        // the thread count never changes the rows
        config: JobConfig { jobs: config.jobs.filter(|_| timed), ..config.clone() },
        constants,
        generated_unix: timed.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())),
        threads: timed.then(rayon::current_num_threads),
    };
    Report { meta, rows, summary }
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(self).expect("report serializes");
                text.push('\n');
                Ok(text)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.serialize(row).map_err(|e| CliError::Io(e.into()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

/// Write to `path` through a temporary sibling and a rename, so an
/// interrupted run leaves no partial file; `out` without a path.
pub fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let Some(path) = path else {
        out.write_all(text.as_bytes())?;
        return Ok(out.flush()?);
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{KRange, StructureConfig};
    use crate::plan::plan;

    fn job(mode: Mode, cfg: &JobConfig) -> Report {
        run(&plan(mode, cfg).unwrap(), cfg)
    }

    #[test]
    fn z12_mass() {
        let cfg = JobConfig {
            structures: Some(vec![StructureConfig::Zn { n: 12 }]),
            k: Some(KRange { lo: 3, hi: 3 }),
            no_meta: Some(true),
            ..Default::default()
        };
        let r = job(Mode::Count, &cfg);
        assert_eq!(r.rows.len(), 12);
        let total: u64 = r.rows.iter().map(|x| x.n.as_ref().unwrap().parse::<u64>().unwrap()).sum();
        assert_eq!(total, 220);
        assert_eq!(r.rows[0].method, Some("closedform"));
        assert_eq!(r.summary.exit_code(), EXIT_OK);
    }

    #[test]
    fn sizes_beyond_the_domain_count_zero() {
        let cfg = JobConfig {
            structures: Some(vec![StructureConfig::Zn { n: 5 }]),
            domains: vec!["list:1;2".into()],
            k: Some(KRange { lo: 2, hi: 4 }),
            no_meta: Some(true),
            ..Default::default()
        };
        let r = job(Mode::Count, &cfg);
        assert_eq!(r.rows.len(), 15);
        assert_eq!(r.rows.iter().filter(|x| x.n.as_deref() == Some("1")).count(), 1);
        assert!(r.rows[5..].iter().all(|x| x.n.as_deref() == Some("0") && x.residual.is_none()));
    }

    #[test]
    fn budget_only_skips() {
        let mut cfg = JobConfig {
            structures: Some(vec![StructureConfig::Zn { n: 30 }]),
            domains: vec!["complement:1".into()],
            k: Some(KRange { lo: 10, hi: 10 }),
            b: Some("0".parse().unwrap()),
            method: Some("bruteforce".parse().unwrap()),
            no_meta: Some(true),
            ..Default::default()
        };
        cfg.budget.enumeration = Some(1000);
        let r = job(Mode::Count, &cfg);
        assert_eq!(r.rows[0].status, Status::Skipped);
        assert_eq!(r.summary.exit_code(), EXIT_BUDGET);
    }

    #[test]
    fn bound_rows_carry_no_count() {
        let cfg = JobConfig {
            structures: Some(vec![StructureConfig::Zn { n: 9 }]),
            k: Some(KRange { lo: 0, hi: 1 }),
            b: Some("0".parse().unwrap()),
            no_meta: Some(true),
            ..Default::default()
        };
        let r = job(Mode::Bound, &cfg);
        assert_eq!(r.rows[0].bound, Some(1.0));
        assert!(r.rows.iter().all(|x| x.n.is_none() && x.holds.is_none()));
        assert_eq!(r.meta.constants[0].value, "4.41");
    }

    #[test]
    fn csv_is_a_projection_of_json() {
        let cfg = JobConfig {
            structures: Some(vec![StructureConfig::Abelian { moduli: vec![2, 2] }]),
            k: Some(KRange { lo: 2, hi: 2 }),
            no_meta: Some(true),
            ..Default::default()
        };
        let r = job(Mode::Verify, &cfg);
        let csv = r.render(Format::Csv).unwrap();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("structure,domain,poly,m,k,b,status,n,main_term"));
        assert_eq!(lines.count(), 4);
        assert!(csv.contains("abelian:2,2") || csv.contains("\"abelian:2,2\""));
    }
}
