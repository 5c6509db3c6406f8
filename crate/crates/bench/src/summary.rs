use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use pickroute::formulation::FormulationKind;

use crate::run::RunRecord;
use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKey {
    Overall,
    Alpha,
    Aisles,
    Articles,
}

impl GroupKey {
    pub const ALL: [GroupKey; 4] = [GroupKey::Overall, GroupKey::Alpha, GroupKey::Aisles, GroupKey::Articles];

    pub fn name(self) -> &'static str {
        match self {
            GroupKey::Overall => "overall",
            GroupKey::Alpha => "alpha",
            GroupKey::Aisles => "aisles",
            GroupKey::Articles => "articles",
        }
    }

    fn value(self, r: &RunRecord) -> usize {
        match self {
            GroupKey::Overall => 0,
            GroupKey::Alpha => r.alpha as usize,
            GroupKey::Aisles => r.aisles,
            GroupKey::Articles => r.articles,
        }
    }
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runtime statistics of one formulation over one group, in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub runs: usize,
    pub solved: usize,
    pub mean: f64,
    pub median: f64,
    /// Over strictly positive times only.
    pub geomean: f64,
}

impl Stats {
    pub fn of(times: &[f64], solved: usize) -> Stats {
        let n = times.len();
        let mut sorted = times.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = match n {
            0 => f64::NAN,
            _ if n % 2 == 1 => sorted[n / 2],
            _ => (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0,
        };
        let positive: Vec<f64> = times.iter().copied().filter(|&t| t > 0.0).collect();
        let geomean = if positive.is_empty() {
            f64::NAN
        } else {
            (positive.iter().map(|t| t.ln()).sum::<f64>() / positive.len() as f64).exp()
        };
        Stats {
            runs: n,
            solved,
            mean: if n == 0 { f64::NAN } else { times.iter().sum::<f64>() / n as f64 },
            median,
            geomean,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub value: usize,
    pub stats: BTreeMap<FormulationKind, Stats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub key: GroupKey,
    pub formulations: Vec<FormulationKind>,
    pub rows: Vec<SummaryRow>,
}

/// Groups the records by each key and computes per-formulation statistics of
/// the solve times. Every record lands in exactly one row of every table.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<SummaryTable>, BenchError> {
    let first = records
        .first()
        .ok_or_else(|| BenchError::Grouping("no records to summarize".into()))?;
    if let Some(r) = records.iter().find(|r| r.blocks != first.blocks || r.problem != first.problem) {
        return Err(BenchError::Grouping(format!(
            "records mix {} {}-block and {} {}-block runs",
            first.problem, first.blocks, r.problem, r.blocks
        )));
    }
    let mut kinds = Vec::new();
    let mut parsed = Vec::with_capacity(records.len());
    for r in records {
        let k: FormulationKind = r
            .formulation
            .parse()
            .map_err(|_| BenchError::Grouping(format!("unknown formulation `{}`", r.formulation)))?;
        if !kinds.contains(&k) {
            kinds.push(k);
        }
        parsed.push((k, r));
    }
    kinds.sort();

    Ok(GroupKey::ALL
        .iter()
        .map(|&key| {
            let mut groups: BTreeMap<usize, BTreeMap<FormulationKind, (Vec<f64>, usize)>> = BTreeMap::new();
            for &(k, r) in &parsed {
                let slot = groups.entry(key.value(r)).or_default().entry(k).or_default();
                slot.0.push(r.solve_ms);
                slot.1 += usize::from(r.is_optimal());
            }
            SummaryTable {
                key,
                formulations: kinds.clone(),
                rows: groups
                    .into_iter()
                    .map(|(value, per)| SummaryRow {
                        value,
                        stats: per.into_iter().map(|(k, (t, s))| (k, Stats::of(&t, s))).collect(),
                    })
                    .collect(),
            }
        })
        .collect())
}

const METRICS: [&str; 5] = ["mean_ms", "median_ms", "geomean_ms", "solved", "runs"];

fn metric(s: &Stats, name: &str) -> String {
    match name {
        "mean_ms" => format!("{:.3}", s.mean),
        "median_ms" => format!("{:.3}", s.median),
        "geomean_ms" => format!("{:.3}", s.geomean),
        "solved" => s.solved.to_string(),
        _ => s.runs.to_string(),
    }
}

/// Writes `summary_overall.csv` (one row per metric) and one
/// `summary_by_<key>.csv` per parameter (one row per value, mean solve time
/// per formulation). Returns the written paths.
pub fn write_summaries(tables: &[SummaryTable], dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for t in tables {
        let mut header = vec![if t.key == GroupKey::Overall { "metric".to_string() } else { t.key.to_string() }];
        header.extend(t.formulations.iter().map(|k| k.label().to_string()));
        let name = match t.key {
            GroupKey::Overall => "summary_overall.csv".to_string(),
            k => format!("summary_by_{k}.csv"),
        };
        let path = dir.join(name);
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&header)?;
        let cell = |row: &SummaryRow, k: &FormulationKind, m: &str| row.stats.get(k).map_or(String::new(), |s| metric(s, m));
        if t.key == GroupKey::Overall {
            for m in METRICS {
                let mut rec = vec![m.to_string()];
                rec.extend(t.formulations.iter().map(|k| cell(&t.rows[0], k, m)));
                w.write_record(&rec)?;
            }
        } else {
            for row in &t.rows {
                let mut rec = vec![row.value.to_string()];
                rec.extend(t.formulations.iter().map(|k| cell(row, k, "mean_ms")));
                w.write_record(&rec)?;
            }
        }
        w.flush()?;
        written.push(path);
    }
    Ok(written)
}
