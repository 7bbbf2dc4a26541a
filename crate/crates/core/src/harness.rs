//! Exhaustive scans over odd `t`, with CSV/JSON-lines output and resumable
//! checkpoints.
//!
//! Each scan compares a value `c` with a bound for every odd `t` in
//! `1..=t_max`. Work is split into contiguous chunks; the `t` inside a
//! chunk are evaluated in parallel and written in increasing order, so the
//! output does not depend on the thread count.

use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::expansion::{append_zero_ones, reverse_binary, to_blocks};
use crate::special::c_tn_closed;
use crate::tails::{breve_c, cusick, cusick_t};

pub const MAX_SCAN_T: u64 = 1 << 24;

/// Environment variable holding the default thread count.
pub const THREADS_ENV: &str = "CUSICK_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Greater,
    Equal,
    Less,
}

impl Relation {
    pub fn of(c: &Rational, bound: &Rational) -> Self {
        match c.cmp(bound) {
            std::cmp::Ordering::Greater => Relation::Greater,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Less => Relation::Less,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Greater => "greater",
            Relation::Equal => "equal",
            Relation::Less => "less",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    /// `c_t > 1/2`
    Cusick,
    /// `c_t >= c_{t_N}`
    ExtremeLowerBound,
    /// `breve_c_t >= 0`, i.e. `c_t >= lim_K c_{2^K t - 1}`
    AppendOnes,
    /// `c_t > c_{(inf,1) t}`
    AppendZeroOnes,
    /// `c_t = c_{t'}` with `t'` the binary reversal
    Reversal,
}

impl ScanKind {
    pub const ALL: [ScanKind; 5] = [
        ScanKind::Cusick,
        ScanKind::ExtremeLowerBound,
        ScanKind::AppendOnes,
        ScanKind::AppendZeroOnes,
        ScanKind::Reversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Cusick => "cusick",
            ScanKind::ExtremeLowerBound => "conj-extreme",
            ScanKind::AppendOnes => "append-ones",
            ScanKind::AppendZeroOnes => "append-zero-ones",
            ScanKind::Reversal => "reversal",
        }
    }

    /// Whether `relation` contradicts the statement being scanned.
    pub fn is_violation(self, relation: Relation) -> bool {
        match self {
            ScanKind::Cusick | ScanKind::AppendZeroOnes => relation != Relation::Greater,
            ScanKind::ExtremeLowerBound | ScanKind::AppendOnes => relation == Relation::Less,
            ScanKind::Reversal => relation != Relation::Equal,
        }
    }

    /// `(N, c, bound)` for one odd `t`.
    pub fn evaluate(self, t: u64) -> Result<(usize, Rational, Rational)> {
        let blocks = to_blocks(t)?;
        let n = blocks.n_pairs();
        let (c, bound) = match self {
            ScanKind::Cusick => (cusick(&blocks), rat(1, 2)),
            ScanKind::ExtremeLowerBound => (cusick(&blocks), c_tn_closed(n as u32)),
            ScanKind::AppendOnes => (breve_c(t)?, rat(0, 1)),
            ScanKind::AppendZeroOnes => (cusick(&blocks), cusick(&append_zero_ones(&blocks))),
            ScanKind::Reversal => (cusick(&blocks), cusick_t(reverse_binary(t)?)),
        };
        Ok((n, c, bound))
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scan {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub t: u64,
    pub n: usize,
    pub c: Rational,
    pub bound: Rational,
    pub relation: Relation,
}

impl ScanRecord {
    pub fn compute(kind: ScanKind, t: u64) -> Result<Self> {
        let (n, c, bound) = kind.evaluate(t)?;
        let relation = Relation::of(&c, &bound);
        Ok(Self {
            t,
            n,
            c,
            bound,
            relation,
        })
    }
}

/// One CSV row: `t,N,c_num,c_den,bound_num,bound_den,relation`.
#[derive(Debug, Serialize, Deserialize)]
struct Row {
    t: u64,
    #[serde(rename = "N")]
    n: usize,
    c_num: String,
    c_den: String,
    bound_num: String,
    bound_den: String,
    relation: Relation,
}

impl From<&ScanRecord> for Row {
    fn from(r: &ScanRecord) -> Self {
        Row {
            t: r.t,
            n: r.n,
            c_num: r.c.numer().to_string(),
            c_den: r.c.denom().to_string(),
            bound_num: r.bound.numer().to_string(),
            bound_den: r.bound.denom().to_string(),
            relation: r.relation,
        }
    }
}

impl TryFrom<Row> for ScanRecord {
    type Error = Error;

    fn try_from(row: Row) -> Result<Self> {
        let int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let frac = |n: &str, d: &str| -> Result<Rational> {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(int(n)?, d))
        };
        Ok(ScanRecord {
            t: row.t,
            n: row.n,
            c: frac(&row.c_num, &row.c_den)?,
            bound: frac(&row.bound_num, &row.bound_den)?,
            relation: row.relation,
        })
    }
}

pub const CSV_HEADER: &str = "t,N,c_num,c_den,bound_num,bound_den,relation";

#[derive(Serialize)]
struct JsonRecord {
    t: u64,
    #[serde(rename = "N")]
    n: usize,
    c: String,
    bound: String,
    relation: Relation,
}

impl ScanRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&JsonRecord {
            t: self.t,
            n: self.n,
            c: crate::exact::wire(&self.c),
            bound: crate::exact::wire(&self.bound),
            relation: self.relation,
        })
        .expect("plain record serializes")
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub kind: ScanKind,
    /// Inclusive range of `t` covered, including resumed work.
    pub range: (u64, u64),
    pub checked: u64,
    pub violations: Vec<ScanRecord>,
    pub equalities: Vec<ScanRecord>,
    pub wall_time: f64,
    /// First `t` computed in this run, when resumed from a checkpoint.
    pub resumed_from: Option<u64>,
}

impl ScanReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn equality_ts(&self) -> Vec<u64> {
        self.equalities.iter().map(|r| r.t).collect()
    }

    fn absorb(&mut self, record: &ScanRecord) {
        self.checked += 1;
        if self.kind.is_violation(record.relation) {
            self.violations.push(record.clone());
        }
        if record.relation == Relation::Equal {
            self.equalities.push(record.clone());
        }
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: odd t in {}..={}, checked {}, violations {}, equalities {}",
            self.kind,
            self.range.0,
            self.range.1,
            self.checked,
            self.violations.len(),
            self.equalities.len()
        )?;
        if !self.equalities.is_empty() && self.equalities.len() <= 20 {
            write!(f, " {:?}", self.equality_ts())?;
        }
        write!(f, " ({:.2}s)", self.wall_time)
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// `None` uses the rayon default (or [`THREADS_ENV`] via the CLI).
    pub threads: Option<usize>,
    /// CSV path; a `.jsonl` mirror and a `.checkpoint.json` sit beside it.
    pub out: Option<PathBuf>,
    pub resume: bool,
    /// Number of odd `t` per chunk.
    pub chunk: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            threads: None,
            out: None,
            resume: false,
            chunk: 4096,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Checkpoint {
    scan: ScanKind,
    t_max: u64,
    /// Next odd `t` to compute.
    next_t: u64,
    csv_len: u64,
    jsonl_len: u64,
}

pub fn jsonl_path(csv: &Path) -> PathBuf {
    csv.with_extension("jsonl")
}

pub fn checkpoint_path(csv: &Path) -> PathBuf {
    csv.with_extension("checkpoint.json")
}

struct Sink {
    csv_path: PathBuf,
    csv: BufWriter<File>,
    jsonl: BufWriter<File>,
}

impl Sink {
    fn create(path: &Path) -> Result<Self> {
        let mut csv = BufWriter::new(File::create(path)?);
        csv.write_all(CSV_HEADER.as_bytes())?;
        csv.write_all(b"\n")?;
        let jsonl = BufWriter::new(File::create(jsonl_path(path))?);
        Ok(Self {
            csv_path: path.to_owned(),
            csv,
            jsonl,
        })
    }

    fn reopen(path: &Path, cp: &Checkpoint) -> Result<Self> {
        let open = |p: &Path, len: u64| -> Result<BufWriter<File>> {
            OpenOptions::new().write(true).open(p)?.set_len(len)?;
            Ok(BufWriter::new(OpenOptions::new().append(true).open(p)?))
        };
        Ok(Self {
            csv_path: path.to_owned(),
            csv: open(path, cp.csv_len)?,
            jsonl: open(&jsonl_path(path), cp.jsonl_len)?,
        })
    }

    fn write(&mut self, records: &[ScanRecord]) -> Result<()> {
        {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut self.csv);
            for r in records {
                w.serialize(Row::from(r))?;
            }
            w.flush()?;
        }
        for r in records {
            self.jsonl.write_all(r.to_json_line().as_bytes())?;
            self.jsonl.write_all(b"\n")?;
        }
        Ok(())
    }

    fn commit(&mut self, scan: ScanKind, t_max: u64, next_t: u64) -> Result<()> {
        self.csv.flush()?;
        self.jsonl.flush()?;
        let cp = Checkpoint {
            scan,
            t_max,
            next_t,
            csv_len: self.csv.get_ref().metadata()?.len(),
            jsonl_len: self.jsonl.get_ref().metadata()?.len(),
        };
        let path = checkpoint_path(&self.csv_path);
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec_pretty(&cp)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Reads back the records of a scan CSV.
pub fn read_csv(path: &Path) -> Result<Vec<ScanRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize::<Row>()
        .map(|row| ScanRecord::try_from(row?))
        .collect()
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Precondition(e.to_string()))
}

/// Runs a scan over odd `t <= t_max`.
pub fn run_scan(kind: ScanKind, t_max: u64, opts: &ScanOptions) -> Result<ScanReport> {
    if t_max > MAX_SCAN_T {
        return Err(Error::TooLarge {
            what: "scan range",
            max: MAX_SCAN_T,
            got: t_max,
        });
    }
    if opts.resume && opts.out.is_none() {
        return Err(Error::Resume("--resume needs an output path".into()));
    }
    let start = Instant::now();
    let mut report = ScanReport {
        kind,
        range: (1, t_max),
        checked: 0,
        violations: Vec::new(),
        equalities: Vec::new(),
        wall_time: 0.0,
        resumed_from: None,
    };
    let mut next_t = 1u64;
    let mut sink = match &opts.out {
        None => None,
        Some(path) if opts.resume && checkpoint_path(path).exists() => {
            let cp: Checkpoint = serde_json::from_slice(&std::fs::read(checkpoint_path(path))?)?;
            if cp.scan != kind || cp.t_max != t_max {
                return Err(Error::Resume(format!(
                    "checkpoint is for {} up to {}, not {} up to {}",
                    cp.scan, cp.t_max, kind, t_max
                )));
            }
            let sink = Sink::reopen(path, &cp)?;
            for r in read_csv(path)? {
                report.absorb(&r);
            }
            next_t = cp.next_t;
            report.resumed_from = Some(next_t);
            Some(sink)
        }
        Some(path) => Some(Sink::create(path)?),
    };
    let pool = pool(opts.threads)?;
    let chunk = opts.chunk.max(1);
    while next_t <= t_max {
        let ts: Vec<u64> = (next_t..=t_max).step_by(2).take(chunk as usize).collect();
        let last = *ts.last().expect("nonempty chunk");
        let records: Vec<ScanRecord> = pool.install(|| {
            ts.par_iter()
                .map(|&t| ScanRecord::compute(kind, t))
                .collect::<Result<_>>()
        })?;
        for r in &records {
            report.absorb(r);
        }
        next_t = last + 2;
        if let Some(s) = sink.as_mut() {
            s.write(&records)?;
            s.commit(kind, t_max, next_t)?;
        }
    }
    if let Some(s) = sink.as_mut() {
        s.commit(kind, t_max, next_t)?;
    }
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn scan_cusick(t_max: u64) -> Result<ScanReport> {
    run_scan(ScanKind::Cusick, t_max, &ScanOptions::default())
}

pub fn scan_extreme_lower_bound(t_max: u64) -> Result<ScanReport> {
    run_scan(ScanKind::ExtremeLowerBound, t_max, &ScanOptions::default())
}

pub fn scan_append_ones(t_max: u64) -> Result<ScanReport> {
    run_scan(ScanKind::AppendOnes, t_max, &ScanOptions::default())
}

pub fn scan_append_zero_ones(t_max: u64) -> Result<ScanReport> {
    run_scan(ScanKind::AppendZeroOnes, t_max, &ScanOptions::default())
}

pub fn scan_reversal(t_max: u64) -> Result<ScanReport> {
    run_scan(ScanKind::Reversal, t_max, &ScanOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scans() {
        let r = scan_append_ones(255).unwrap();
        assert!(r.holds());
        assert_eq!(r.equality_ts(), vec![5, 107]);
        assert_eq!(r.checked, 128);
        for kind in [
            ScanKind::ExtremeLowerBound,
            ScanKind::AppendZeroOnes,
            ScanKind::Reversal,
            ScanKind::Cusick,
        ] {
            let r = run_scan(kind, 127, &ScanOptions::default()).unwrap();
            assert!(r.holds(), "{kind}");
        }
    }

    #[test]
    fn records() {
        let r = ScanRecord::compute(ScanKind::Reversal, 19).unwrap();
        assert_eq!(r.relation, Relation::Equal);
        assert_eq!(r.c, cusick_t(25));
        let r = ScanRecord::compute(ScanKind::AppendOnes, 1).unwrap();
        assert_eq!(r.c, rat(1, 12));
        let r = ScanRecord::compute(ScanKind::ExtremeLowerBound, 3).unwrap();
        assert_eq!((r.n, r.relation), (1, Relation::Greater));
        assert!(ScanRecord::compute(ScanKind::Cusick, 4).is_err());
    }

    #[test]
    fn violation_rules() {
        assert!(ScanKind::AppendZeroOnes.is_violation(Relation::Equal));
        assert!(!ScanKind::AppendOnes.is_violation(Relation::Equal));
        assert!(ScanKind::Reversal.is_violation(Relation::Greater));
        assert!(ScanKind::ExtremeLowerBound.is_violation(Relation::Less));
        for k in ScanKind::ALL {
            assert_eq!(k.name().parse::<ScanKind>().unwrap(), k);
        }
    }

    #[test]
    fn too_large() {
        assert!(scan_cusick(MAX_SCAN_T + 1).is_err());
    }
}
