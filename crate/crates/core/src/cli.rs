//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification or golden-table failure, `2`
//! usage or validation error. Output is deterministic; `--timing` only adds a
//! line on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braids::{braid_word, components, AllowableTuple, Braid, Slope};
use crate::census::{
    self, read_cache, render_table1, run_census, run_census_parallel, write_cache, write_csv,
    CacheLookup, Census, CensusRecord,
};
use crate::classify::{fillings_of, knots_for_slope, tuple_to_braid, Filling, TupleImage};
use crate::error::Error;
use crate::oracle::{
    check_equivalence, check_equivalence_parallel, check_phi_closed_forms, check_transits,
    tuples_by_w, MAX_ORACLE_W, MIN_ORACLE_W,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming the census cache directory.
pub const CACHE_DIR_ENV: &str = "ONEBRIDGE_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Dedup {
    #[default]
    None,
    Canonical,
}

#[derive(Debug, Parser)]
#[command(
    name = "onebridge",
    version,
    about = "Solid torus Dehn fillings on the outer torus of 1-bridge braid exteriors"
)]
pub struct Cli {
    /// Worker threads for census and oracle sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slopes p/q for which filling K(w, b, t) gives a solid torus.
    #[command(allow_negative_numbers = true)]
    Fillings {
        w: i64,
        b: i64,
        t: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Braids with w ≤ max-w admitting a solid torus filling along p/q.
    #[command(allow_negative_numbers = true)]
    Knots {
        p: i64,
        q: i64,
        #[arg(long)]
        max_w: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// The braid K(w, b, t) produced by an allowable 5-tuple (p, q, k, x, eps).
    #[command(allow_negative_numbers = true)]
    Tuple {
        p: i64,
        q: i64,
        k: i64,
        x: i64,
        eps: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Sweep every triple with w ≤ max-w and summarize.
    Census {
        #[arg(long)]
        max_w: i64,
        #[arg(long, value_enum, default_value_t)]
        dedup: Dedup,
        /// Emit every record, not just the summary.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Directory for the JSON Lines census cache.
        #[arg(long, env = CACHE_DIR_ENV)]
        cache_dir: Option<PathBuf>,
    },
    /// Canonical knots and their fillings, one row per knot.
    Table1 {
        #[arg(long, default_value_t = 10)]
        max_w: i64,
        /// Compare against the checked-in golden table.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run every independent check up to max-w.
    Verify {
        #[arg(long)]
        max_w: i64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// The braid word of K(w, b, t) as a JSON array of generator indices.
    #[command(allow_negative_numbers = true)]
    Word { w: i64, b: i64, t: i64 },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let started = Instant::now();
    let result = if cli.jobs > 1 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs as usize)
            .build()
        {
            Ok(pool) => {
                let (result, out_buf, err_buf) = pool.install(|| {
                    let (mut o, mut e) = (Vec::new(), Vec::new());
                    let result = dispatch(&cli, &mut o, &mut e);
                    (result, o, e)
                });
                let _ = out.write_all(&out_buf);
                let _ = err.write_all(&err_buf);
                result
            }
            Err(e) => Err(CliError::Usage(format!("cannot start worker pool: {e}"))),
        }
    } else {
        dispatch(&cli, out, err)
    };
    if cli.timing {
        let _ = writeln!(err, "elapsed: {} ms", started.elapsed().as_millis());
    }
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

type CliResult = Result<i32, CliError>;

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let parallel = cli.jobs > 1;
    match &cli.command {
        Command::Fillings { w, b, t, format } => cmd_fillings(*w, *b, *t, *format, out),
        Command::Knots {
            p,
            q,
            max_w,
            format,
        } => cmd_knots(*p, *q, *max_w, *format, out),
        Command::Tuple {
            p,
            q,
            k,
            x,
            eps,
            format,
        } => cmd_tuple(*p, *q, *k, *x, *eps, *format, out),
        Command::Census {
            max_w,
            dedup,
            list,
            format,
            cache_dir,
        } => cmd_census(
            *max_w,
            *dedup,
            *list,
            *format,
            cache_dir.as_deref(),
            parallel,
            out,
            err,
        ),
        Command::Table1 {
            max_w,
            check,
            format,
        } => cmd_table1(*max_w, *check, *format, out, err),
        Command::Verify { max_w, format } => cmd_verify(*max_w, *format, parallel, out),
        Command::Word { w, b, t } => {
            let braid = Braid::new(*w, *b, *t)?;
            writeln!(out, "{}", serde_json::to_string(&braid_word(&braid))?)?;
            Ok(EXIT_OK)
        }
    }
}

fn witness_text(filling: &Filling) -> String {
    filling
        .witnesses
        .iter()
        .map(|wit| format!("{} (eps {}, tuple {})", wit.case, wit.eps, wit.tuple))
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_fillings(w: i64, b: i64, t: i64, format: OutputFormat, out: &mut dyn Write) -> CliResult {
    let braid = Braid::new(w, b, t)?;
    let fillings = fillings_of(&braid);
    let n_components = components(&braid);
    match format {
        OutputFormat::Text => {
            if n_components == 1 {
                writeln!(out, "{braid}: knot")?;
            } else {
                writeln!(
                    out,
                    "{braid}: closure is a link ({n_components} components)"
                )?;
            }
            if fillings.is_empty() {
                writeln!(out, "(none)")?;
            }
            for f in &fillings {
                writeln!(out, "{}  {}", f.slope, witness_text(f))?;
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "braid": braid,
                "knot": n_components == 1,
                "components": n_components,
                "fillings": fillings,
            });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            csv.write_record(["p", "q", "case", "eps", "k", "x"])?;
            for f in &fillings {
                for wit in &f.witnesses {
                    csv.write_record([
                        f.slope.p().to_string(),
                        f.slope.q().to_string(),
                        wit.case.number().to_string(),
                        wit.eps.to_string(),
                        wit.tuple.k().to_string(),
                        wit.tuple.x().to_string(),
                    ])?;
                }
            }
            csv.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_knots(p: i64, q: i64, max_w: i64, format: OutputFormat, out: &mut dyn Write) -> CliResult {
    let slope = Slope::new(p, q)?;
    let braids = knots_for_slope(slope, max_w)?;
    match format {
        OutputFormat::Text => {
            writeln!(out, "{slope}, w ≤ {max_w}: {} braids", braids.len())?;
            for (braid, tuple) in &braids {
                writeln!(out, "{braid}  tuple {tuple}")?;
            }
        }
        OutputFormat::Json => {
            let list: Vec<_> = braids
                .iter()
                .map(|(braid, tuple)| json!({ "braid": braid, "tuple": tuple }))
                .collect();
            let doc = json!({ "slope": slope, "max_w": max_w, "braids": list });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            csv.write_record(["w", "b", "t", "p", "q", "k", "x", "eps"])?;
            for (braid, tuple) in &braids {
                csv.write_record(
                    [
                        braid.w(),
                        braid.b(),
                        braid.t(),
                        tuple.p(),
                        tuple.q(),
                        tuple.k(),
                        tuple.x(),
                        tuple.eps(),
                    ]
                    .map(|v| v.to_string()),
                )?;
            }
            csv.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_tuple(
    p: i64,
    q: i64,
    k: i64,
    x: i64,
    eps: i64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CliResult {
    let tuple = AllowableTuple::new(p, q, k, x, eps)?;
    let image = tuple_to_braid(&tuple);
    match format {
        OutputFormat::Text => match image {
            TupleImage::Braid { braid } => writeln!(out, "{tuple} -> {braid}")?,
            TupleImage::Degenerate { w, b, t, bound } => writeln!(
                out,
                "{tuple} -> degenerate (w, b, t) = ({w}, {b}, {t}): violates {bound}"
            )?,
        },
        OutputFormat::Json => {
            let doc = json!({ "tuple": tuple, "image": image });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            return Err(CliError::Usage(
                "csv output is not available for `tuple`".into(),
            ))
        }
    }
    Ok(EXIT_OK)
}

fn census_cache_path(dir: &Path, max_w: i64) -> PathBuf {
    dir.join(format!("census-w{max_w}.jsonl"))
}

fn compute_census(max_w: i64, parallel: bool) -> Result<Census, Error> {
    if parallel {
        run_census_parallel(max_w)
    } else {
        run_census(max_w)
    }
}

fn load_census(
    max_w: i64,
    cache_dir: Option<&Path>,
    parallel: bool,
    err: &mut dyn Write,
) -> Result<Census, CliError> {
    let Some(dir) = cache_dir else {
        return Ok(compute_census(max_w, parallel)?);
    };
    // Validate before touching the filesystem.
    crate::error::guard(max_w, census::MIN_CENSUS_W, census::MAX_CENSUS_W)?;
    let path = census_cache_path(dir, max_w);
    match read_cache(&path, max_w) {
        CacheLookup::Hit(census) => return Ok(census),
        CacheLookup::Missing => {}
        CacheLookup::HeaderMismatch(found) => writeln!(
            err,
            "warning: cache {} has header {}; recomputing",
            path.display(),
            serde_json::to_string(&found)?
        )?,
        CacheLookup::Corrupt(why) => writeln!(
            err,
            "warning: cache {} is unreadable ({why}); recomputing",
            path.display()
        )?,
    }
    let census = compute_census(max_w, parallel)?;
    let written = std::fs::create_dir_all(dir).and_then(|_| write_cache(&path, &census));
    if let Err(e) = written {
        writeln!(
            err,
            "warning: could not write cache {}: {e}",
            path.display()
        )?;
    }
    Ok(census)
}

fn record_text(r: &CensusRecord) -> String {
    let kind = if r.knot { "knot" } else { "link" };
    let canon = if r.canonical { " canonical" } else { "" };
    match &r.fillings {
        Some(f) if r.knot => {
            let slopes = if f.is_empty() {
                "-".to_owned()
            } else {
                f.iter()
                    .map(Slope::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            format!("{} {kind}{canon}: {slopes}", r.braid)
        }
        _ => format!("{} {kind}{canon}", r.braid),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_census(
    max_w: i64,
    dedup: Dedup,
    list: bool,
    format: OutputFormat,
    cache_dir: Option<&Path>,
    parallel: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let census = load_census(max_w, cache_dir, parallel, err)?;
    let s = &census.summary;
    let (knots, admitting, fillings) = match dedup {
        Dedup::None => (s.knot_count, s.admitting_count, s.filling_count),
        Dedup::Canonical => (
            s.canonical_knot_count,
            s.canonical_admitting_count,
            s.canonical_filling_count,
        ),
    };
    let records: Vec<&CensusRecord> = census
        .records
        .iter()
        .filter(|r| dedup == Dedup::None || r.canonical)
        .collect();
    match format {
        OutputFormat::Text => {
            writeln!(out, "max_w: {max_w}")?;
            writeln!(out, "dedup: {}", dedup_name(dedup))?;
            writeln!(out, "triples: {}", records.len())?;
            writeln!(
                out,
                "knots: {knots}, admitting: {admitting}, fillings: {fillings}"
            )?;
            if list {
                for r in &records {
                    writeln!(out, "{}", record_text(r))?;
                }
            }
        }
        OutputFormat::Json => {
            let mut doc = json!({
                "max_w": max_w,
                "dedup": dedup_name(dedup),
                "triples": records.len(),
                "knots": knots,
                "admitting": admitting,
                "fillings": fillings,
                "summary": s,
            });
            if list {
                doc["records"] = serde_json::to_value(&records)?;
            }
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            let owned: Vec<CensusRecord> = records.into_iter().cloned().collect();
            write_csv(&owned, &mut *out)?;
        }
    }
    Ok(EXIT_OK)
}

fn dedup_name(dedup: Dedup) -> &'static str {
    match dedup {
        Dedup::None => "none",
        Dedup::Canonical => "canonical",
    }
}

fn cmd_table1(
    max_w: i64,
    check: bool,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let rows = census::table1(max_w)?;
    let rendered = render_table1(&rows);
    match format {
        OutputFormat::Text => out.write_all(rendered.as_bytes())?,
        OutputFormat::Json => {
            let doc = json!({ "max_w": max_w, "rows": rows });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            csv.write_record(["w", "b", "t", "fillings"])?;
            for row in &rows {
                let slopes: Vec<String> = row.slopes.iter().map(Slope::to_string).collect();
                csv.write_record([
                    row.braid.w().to_string(),
                    row.braid.b().to_string(),
                    row.braid.t().to_string(),
                    slopes.join(";"),
                ])?;
            }
            csv.flush()?;
        }
    }
    if check {
        let diffs = census::diff_against_golden(&rendered);
        if !diffs.is_empty() {
            writeln!(
                err,
                "table differs from golden copy in {} lines:",
                diffs.len()
            )?;
            for d in &diffs {
                writeln!(err, "{d}")?;
            }
            return Ok(EXIT_FAILED);
        }
        writeln!(err, "golden table: match ({} rows)", rows.len())?;
    }
    Ok(EXIT_OK)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_verify(max_w: i64, format: OutputFormat, parallel: bool, out: &mut dyn Write) -> CliResult {
    crate::error::guard(max_w, MIN_ORACLE_W, MAX_ORACLE_W)?;
    let equivalence = if parallel {
        check_equivalence_parallel(max_w)?
    } else {
        check_equivalence(max_w)?
    };
    let diagram = check_transits(tuples_by_w(max_w));
    let phi = check_phi_closed_forms(max_w + 1);
    let mirror = census::verify_mirror_pairs(max_w)?;
    let passed = equivalence.passed() && diagram.passed() && phi.passed() && mirror.passed();
    match format {
        OutputFormat::Text => {
            writeln!(
                out,
                "equivalence: {} ({} triples, {} mismatches)",
                status(equivalence.passed()),
                equivalence.triples_checked,
                equivalence.mismatches.len()
            )?;
            writeln!(
                out,
                "diagram: {} ({} tuples, {} mismatches)",
                status(diagram.passed()),
                diagram.tuples_checked,
                diagram.mismatches.len()
            )?;
            writeln!(
                out,
                "phi closed forms: {} ({} pairs, {} mismatches)",
                status(phi.passed()),
                phi.pairs_checked,
                phi.mismatches.len()
            )?;
            writeln!(
                out,
                "mirror pairs: {} ({} pairs, {} out of range, {} mismatches)",
                status(mirror.passed()),
                mirror.pairs_checked,
                mirror.out_of_range.len(),
                mirror.mismatches.len() + mirror.non_knot_mirrors.len()
            )?;
            for m in &equivalence.mismatches {
                writeln!(
                    out,
                    "  equivalence mismatch K({}, {}, {}): closed form {:?}, oracle {:?}",
                    m.w, m.b, m.t, m.closed_form, m.oracle
                )?;
            }
            for m in &diagram.mismatches {
                writeln!(
                    out,
                    "  diagram mismatch {}: formula {:?}, measured {:?}",
                    m.tuple, m.formula, m.measured
                )?;
            }
            for m in &phi.mismatches {
                writeln!(
                    out,
                    "  phi mismatch p={} q={} {:?}: closed {}, direct {}",
                    m.p, m.q, m.shape, m.closed, m.direct
                )?;
            }
            for m in &mirror.mismatches {
                writeln!(
                    out,
                    "  mirror mismatch {} -> {}: expected {:?}, got {:?}",
                    m.braid, m.mirror, m.expected, m.actual
                )?;
            }
            for b in &mirror.non_knot_mirrors {
                writeln!(out, "  mirror of {b} is not a knot")?;
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "max_w": max_w,
                "passed": passed,
                "equivalence": equivalence,
                "diagram": diagram,
                "phi": phi,
                "mirror": mirror,
            });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
        OutputFormat::Csv => {
            return Err(CliError::Usage(
                "csv output is not available for `verify`".into(),
            ))
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}
