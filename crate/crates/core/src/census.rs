//! Exhaustive sweeps over all parameter triples up to a winding bound.
//!
//! A triple is counted as a knot when its closure is connected. Fillings are
//! counted as `(braid, slope)` incidences. Canonical representatives are
//! selected by [`is_canonical`], one per mirror pair.

use std::fmt;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braids::{is_canonical, is_knot, mirror, mirror_slope, Braid, MirrorImage, Slope};
use crate::classify::filling_slopes;
use crate::error::{guard, Result};

pub const MIN_CENSUS_W: i64 = 3;
pub const MAX_CENSUS_W: i64 = 1000;

/// The published list of canonical knots with `w ≤ 10` and their fillings.
pub const GOLDEN_TABLE1: &str = include_str!("../data/table1.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    #[serde(flatten)]
    pub braid: Braid,
    pub knot: bool,
    pub canonical: bool,
    /// Present only for knots.
    pub fillings: Option<Vec<Slope>>,
}

impl CensusRecord {
    pub fn for_braid(braid: Braid) -> Self {
        let knot = is_knot(&braid);
        CensusRecord {
            braid,
            knot,
            canonical: is_canonical(&braid),
            fillings: knot.then(|| filling_slopes(&braid)),
        }
    }

    /// Number of solid torus fillings counted for this record (zero for links).
    pub fn filling_count(&self) -> usize {
        match &self.fillings {
            Some(f) if self.knot => f.len(),
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CensusSummary {
    pub max_w: i64,
    pub triple_count: usize,
    pub knot_count: usize,
    pub admitting_count: usize,
    pub filling_count: usize,
    pub canonical_knot_count: usize,
    pub canonical_admitting_count: usize,
    pub canonical_filling_count: usize,
}

impl CensusSummary {
    pub fn from_records(max_w: i64, records: &[CensusRecord]) -> Self {
        let mut s = CensusSummary {
            max_w,
            ..Default::default()
        };
        for r in records {
            s.triple_count += 1;
            if !r.knot {
                continue;
            }
            let n = r.filling_count();
            s.knot_count += 1;
            s.admitting_count += usize::from(n > 0);
            s.filling_count += n;
            if r.canonical {
                s.canonical_knot_count += 1;
                s.canonical_admitting_count += usize::from(n > 0);
                s.canonical_filling_count += n;
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

impl Census {
    fn from_records(max_w: i64, records: Vec<CensusRecord>) -> Self {
        let summary = CensusSummary::from_records(max_w, &records);
        Census { records, summary }
    }

    /// Records for canonical knots only.
    pub fn canonical_knots(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| r.knot && r.canonical)
    }
}

pub fn run_census(max_w: i64) -> Result<Census> {
    guard(max_w, MIN_CENSUS_W, MAX_CENSUS_W)?;
    let records = Braid::all_up_to(max_w)
        .map(CensusRecord::for_braid)
        .collect();
    Ok(Census::from_records(max_w, records))
}

/// [`run_census`] with the sweep over `w` spread across the rayon pool.
/// Record order is the same lexicographic order.
pub fn run_census_parallel(max_w: i64) -> Result<Census> {
    guard(max_w, MIN_CENSUS_W, MAX_CENSUS_W)?;
    let per_w: Vec<Vec<CensusRecord>> = (3..=max_w)
        .into_par_iter()
        .map(|w| {
            Braid::all_with_winding(w)
                .map(CensusRecord::for_braid)
                .collect()
        })
        .collect();
    Ok(Census::from_records(max_w, per_w.concat()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub braid: Braid,
    pub slopes: Vec<Slope>,
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.braid;
        write!(f, "({}, {}, {}; ", b.w(), b.b(), b.t())?;
        if self.slopes.is_empty() {
            f.write_str("-")?;
        } else {
            let parts: Vec<String> = self.slopes.iter().map(Slope::to_string).collect();
            f.write_str(&parts.join(", "))?;
        }
        f.write_str(")")
    }
}

/// Canonical knots with `w ≤ max_w` and their filling slopes.
pub fn table1(max_w: i64) -> Result<Vec<Table1Row>> {
    guard(max_w, 4, MAX_CENSUS_W)?;
    Ok(Braid::all_up_to(max_w)
        .filter(|b| is_canonical(b) && is_knot(b))
        .map(|braid| Table1Row {
            braid,
            slopes: filling_slopes(&braid),
        })
        .collect())
}

/// One row per line, each line newline-terminated.
pub fn render_table1(rows: &[Table1Row]) -> String {
    rows.iter().map(|r| format!("{r}\n")).collect()
}

/// A line where the computed table and the golden copy disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenDiff {
    pub line: usize,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl fmt::Display for GoldenDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "line {}:", self.line)?;
        writeln!(f, "- {}", self.expected.as_deref().unwrap_or("<missing>"))?;
        write!(f, "+ {}", self.actual.as_deref().unwrap_or("<missing>"))
    }
}

/// Line-by-line comparison of rendered text against [`GOLDEN_TABLE1`].
pub fn diff_against_golden(rendered: &str) -> Vec<GoldenDiff> {
    let expected: Vec<&str> = GOLDEN_TABLE1.lines().collect();
    let actual: Vec<&str> = rendered.lines().collect();
    (0..expected.len().max(actual.len()))
        .filter_map(|i| {
            let e = expected.get(i).copied();
            let a = actual.get(i).copied();
            (e != a).then(|| GoldenDiff {
                line: i + 1,
                expected: e.map(str::to_owned),
                actual: a.map(str::to_owned),
            })
        })
        .collect()
}

/// Recomputes the `w ≤ 10` table and compares it with the golden copy.
pub fn check_table1_golden() -> Vec<GoldenDiff> {
    let rows = table1(10).expect("10 is within the table guard");
    diff_against_golden(&render_table1(&rows))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorMismatch {
    pub braid: Braid,
    pub mirror: Braid,
    /// Fillings of `braid` sent through `(p, q) ↦ (p, p-q)`.
    pub expected: Vec<Slope>,
    /// Fillings computed directly on `mirror`.
    pub actual: Vec<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MirrorReport {
    pub max_w: i64,
    pub pairs_checked: usize,
    /// Knots whose mirrored twist reduces to zero.
    pub out_of_range: Vec<Braid>,
    /// Knots whose mirror is in range but is not connected.
    pub non_knot_mirrors: Vec<Braid>,
    pub mismatches: Vec<MirrorMismatch>,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.non_knot_mirrors.is_empty()
    }
}

pub fn verify_mirror_pairs(max_w: i64) -> Result<MirrorReport> {
    guard(max_w, MIN_CENSUS_W, MAX_CENSUS_W)?;
    let mut report = MirrorReport {
        max_w,
        pairs_checked: 0,
        out_of_range: Vec::new(),
        non_knot_mirrors: Vec::new(),
        mismatches: Vec::new(),
    };
    for braid in Braid::all_up_to(max_w).filter(is_knot) {
        let image = match mirror(&braid) {
            MirrorImage::InRange { braid } => braid,
            MirrorImage::OutOfRange { .. } => {
                report.out_of_range.push(braid);
                continue;
            }
        };
        if !is_knot(&image) {
            report.non_knot_mirrors.push(braid);
            continue;
        }
        report.pairs_checked += 1;
        let mut expected: Vec<Slope> = filling_slopes(&braid).iter().map(mirror_slope).collect();
        expected.sort();
        let actual = filling_slopes(&image);
        if expected != actual {
            report.mismatches.push(MirrorMismatch {
                braid,
                mirror: image,
                expected,
                actual,
            });
        }
    }
    Ok(report)
}

/// CSV with columns `w,b,t,is_knot,is_canonical,fillings`; fillings are
/// `p/q` joined by `;`.
pub fn write_csv<W: Write>(records: &[CensusRecord], writer: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["w", "b", "t", "is_knot", "is_canonical", "fillings"])?;
    for r in records {
        let fillings = r
            .fillings
            .iter()
            .flatten()
            .map(Slope::to_string)
            .collect::<Vec<_>>()
            .join(";");
        out.write_record([
            r.braid.w().to_string(),
            r.braid.b().to_string(),
            r.braid.t().to_string(),
            r.knot.to_string(),
            r.canonical.to_string(),
            fillings,
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const PERMUTATION_CONVENTION: &str = "gamma_after_rho";

/// First line of a census cache file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub format_version: u32,
    pub max_w: i64,
    pub convention: String,
}

impl CacheHeader {
    pub fn current(max_w: i64) -> Self {
        CacheHeader {
            format_version: CACHE_FORMAT_VERSION,
            max_w,
            convention: PERMUTATION_CONVENTION.to_owned(),
        }
    }
}

#[derive(Debug)]
pub enum CacheLookup {
    Hit(Census),
    Missing,
    /// The file exists but was written for different parameters.
    HeaderMismatch(CacheHeader),
    Corrupt(String),
}

/// Writes the census as JSON Lines, header first, via a temporary file that
/// is renamed into place.
pub fn write_cache(path: &Path, census: &Census) -> io::Result<()> {
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        serde_json::to_writer(&mut out, &CacheHeader::current(census.summary.max_w))?;
        out.write_all(b"\n")?;
        for r in &census.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn read_cache(path: &Path, max_w: i64) -> CacheLookup {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return CacheLookup::Missing,
        Err(e) => return CacheLookup::Corrupt(e.to_string()),
    };
    let mut lines = BufReader::new(file).lines();
    let header: CacheHeader = match lines.next() {
        Some(Ok(line)) => match serde_json::from_str(&line) {
            Ok(h) => h,
            Err(e) => return CacheLookup::Corrupt(format!("header: {e}")),
        },
        Some(Err(e)) => return CacheLookup::Corrupt(e.to_string()),
        None => return CacheLookup::Corrupt("empty cache file".to_owned()),
    };
    if header != CacheHeader::current(max_w) {
        return CacheLookup::HeaderMismatch(header);
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let parsed = line
            .map_err(|e| e.to_string())
            .and_then(|l| serde_json::from_str(&l).map_err(|e| e.to_string()));
        match parsed {
            Ok(r) => records.push(r),
            Err(e) => return CacheLookup::Corrupt(format!("record {}: {e}", i + 1)),
        }
    }
    CacheLookup::Hit(Census::from_records(max_w, records))
}
