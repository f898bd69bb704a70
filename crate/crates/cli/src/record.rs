use std::io::Write;
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// One CSV row. Column order is field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub suite: String,
    pub precision: String,
    pub variant: String,
    pub simd: String,
    pub scheme: String,
    pub threads: usize,
    pub n: usize,
    /// Timed repeats behind the median.
    pub repeat: usize,
    /// Median wall time of one run; for `polyeval`, of one evaluation.
    pub wall_seconds: f64,
    pub digits_min: Option<f64>,
    pub digits_max: Option<f64>,
    pub hardware: String,
    pub timestamp: String,
    /// `cmatmul` only: complex time over real time for the same plan.
    pub real_ratio: Option<f64>,
}

pub const COLUMNS: [&str; 14] = [
    "suite",
    "precision",
    "variant",
    "simd",
    "scheme",
    "threads",
    "n",
    "repeat",
    "wall_seconds",
    "digits_min",
    "digits_max",
    "hardware",
    "timestamp",
    "real_ratio",
];

/// CPU model string, falling back to the architecture name.
pub fn hardware_tag() -> &'static str {
    static TAG: OnceLock<String> = OnceLock::new();
    TAG.get_or_init(|| {
        std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|info| {
                info.lines()
                    .find(|l| l.starts_with("model name") || l.starts_with("Model") || l.starts_with("Hardware"))
                    .and_then(|l| l.split_once(':'))
                    .map(|(_, v)| v.trim().to_string())
            })
            .filter(|s| !s.is_empty())
            .unwrap_or_else(|| std::env::consts::ARCH.to_string())
    })
}

pub fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// One warm-up call, then the median of `repeats` timed calls.
pub fn median_seconds(repeats: usize, mut f: impl FnMut()) -> f64 {
    f();
    let mut t: Vec<f64> = (0..repeats)
        .map(|_| {
            let s = Instant::now();
            f();
            s.elapsed().as_secs_f64()
        })
        .collect();
    t.sort_by(f64::total_cmp);
    let m = t.len() / 2;
    let med = if t.len() % 2 == 1 { t[m] } else { 0.5 * (t[m - 1] + t[m]) };
    med.max(1e-9)
}

pub fn write_records(records: &[BenchRecord], csv_path: Option<&Path>, json: bool) -> std::io::Result<()> {
    if let Some(p) = csv_path {
        write_csv(records, std::fs::File::create(p)?)?;
    }
    let stdout = std::io::stdout();
    if json {
        let mut out = stdout.lock();
        serde_json::to_writer_pretty(&mut out, records)?;
        writeln!(out)?;
    } else if csv_path.is_none() {
        write_csv(records, stdout.lock())?;
    }
    Ok(())
}

pub fn write_csv(records: &[BenchRecord], out: impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(COLUMNS)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
}
