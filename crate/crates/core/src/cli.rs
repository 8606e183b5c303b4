//! The `ringwing` command line: generate, layout, count, verify, bounds.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{self, bound_new, lemma_sum, recursion_step};
use crate::crossing_counter::{
    census_diff, count_crossings_with, validate_good_drawing, CensusError, CrossingCensus,
    PredictedCensus, GROUP_KEYS,
};
use crate::drawing::Drawing;
use crate::ring_layout::{
    layout_rb, layout_rb_with, layout_ring, quarter_diagram, LayoutError, RingGeometry, SectorPlan,
};
use crate::topology::{build_wrapped_butterfly, WrappedButterfly};

pub const THREADS_ENV: &str = "RINGWING_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "ringwing",
    version,
    about = "Wrapped butterfly ring drawings and crossing counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write WB(r) as an edge list or DOT graph.
    Generate {
        /// Dimension, 2..=12.
        #[arg(short)]
        r: u32,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
        format: GraphFormat,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Allow r above 12.
        #[arg(long)]
        force: bool,
    },
    /// Write the ring drawing RB(r) as JSON, optionally also as SVG.
    Layout {
        /// Dimension, 4..=7.
        #[arg(short)]
        r: u32,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write SVG, to PATH or next to the JSON output.
        #[arg(long, value_name = "PATH", num_args = 0..=1)]
        svg: Option<Option<PathBuf>>,
        /// Routing table to use instead of the bundled one.
        #[arg(long, value_name = "FILE")]
        plan: Option<PathBuf>,
        /// Allow r above 7.
        #[arg(long)]
        force: bool,
    },
    /// Count crossings in a drawing file and print the census as JSON.
    Count {
        /// Drawing JSON as written by `layout`.
        drawing: PathBuf,
        /// Worker threads (default: RINGWING_THREADS, else all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run the consistency battery for RB(r).
    Verify {
        /// Dimension, 4..=6.
        #[arg(short)]
        r: u32,
        /// Worker threads (default: RINGWING_THREADS, else all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Allow r above 6.
        #[arg(long)]
        force: bool,
    },
    /// Print the bound comparison table for r_min..=r_max.
    Bounds {
        r_min: u32,
        r_max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Allow r_max above 20 (up to 40).
        #[arg(long)]
        force: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Edgelist,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Md,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failed(e: impl fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// Parses arguments, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("ringwing: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns what it prints on stdout.
pub fn execute(cmd: &Command) -> Result<String, CliError> {
    match cmd {
        Command::Generate {
            r,
            format,
            out,
            force,
        } => cmd_generate(*r, *format, out.as_deref(), *force),
        Command::Layout {
            r,
            out,
            svg,
            plan,
            force,
        } => cmd_layout(
            *r,
            out.as_deref(),
            svg.as_ref().map(|p| p.as_deref()),
            plan.as_deref(),
            *force,
        ),
        Command::Count { drawing, threads } => cmd_count(drawing, resolve_threads(*threads)?),
        Command::Verify { r, threads, force } => {
            if !(4..=6).contains(r) && !(*force && *r >= 4) {
                return Err(usage(format!(
                    "verify supports 4 <= r <= 6 (use --force above 6), got {r}"
                )));
            }
            let report = verify(*r, resolve_threads(*threads)?);
            let text = report.to_string();
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(failed("a mandatory check failed"))
            }
        }
        Command::Bounds {
            r_min,
            r_max,
            format,
            out,
            force,
        } => cmd_bounds(*r_min, *r_max, *format, out.as_deref(), *force),
    }
}

/// `--threads`, else `RINGWING_THREADS`, else 0 (the default pool).
pub fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        _ => Ok(0),
    }
}

fn write_or_return(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| failed(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn cmd_generate(
    r: u32,
    format: GraphFormat,
    out: Option<&Path>,
    force: bool,
) -> Result<String, CliError> {
    if r < 2 || (r > 12 && !force) {
        return Err(usage(format!(
            "generate supports 2 <= r <= 12 (use --force above 12), got {r}"
        )));
    }
    let g = build_wrapped_butterfly(r).map_err(usage)?;
    let text = match format {
        GraphFormat::Edgelist => g.to_edge_list(),
        GraphFormat::Dot => g.to_dot(),
    };
    write_or_return(out, text)
}

pub fn cmd_layout(
    r: u32,
    out: Option<&Path>,
    svg: Option<Option<&Path>>,
    plan: Option<&Path>,
    force: bool,
) -> Result<String, CliError> {
    if r < 4 || (r > 7 && !force) {
        return Err(usage(format!(
            "layout supports 4 <= r <= 7 (use --force above 7), got {r}"
        )));
    }
    let as_cli = |e: LayoutError| match e {
        LayoutError::Unsupported(_) | LayoutError::Plan(_) => usage(e),
        _ => failed(e),
    };
    let d = match plan {
        None => layout_rb(r).map_err(as_cli)?,
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let plan =
                SectorPlan::parse(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            if plan.r != r {
                return Err(usage(format!(
                    "{} is a table for r = {}, not {r}",
                    p.display(),
                    plan.r
                )));
            }
            layout_rb_with(&RingGeometry::from_plan(plan).map_err(as_cli)?).map_err(as_cli)?
        }
    };
    if let Some(p) = svg {
        let path = if let Some(p) = p {
            p.to_path_buf()
        } else if let Some(o) = out {
            o.with_extension("svg")
        } else {
            PathBuf::from(format!("rb{r}.svg"))
        };
        fs::write(&path, d.to_svg()).map_err(|e| failed(format!("{}: {e}", path.display())))?;
    }
    write_or_return(out, d.to_json())
}

pub fn cmd_count(path: &Path, threads: usize) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let d = Drawing::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    match count_crossings_with(&d, threads) {
        Ok(c) if c.violations.is_empty() => Ok(c.to_json(&d)),
        Ok(c) => {
            print!("{}", c.to_json(&d));
            Err(failed(format!(
                "{} good-drawing violations",
                c.violations.len()
            )))
        }
        Err(CensusError::Degenerate(v)) => Err(failed(format!(
            "drawing is degenerate: {} violations, first {:?}",
            v.len(),
            v.first().map(|v| v.kind)
        ))),
        Err(e) => Err(usage(e)),
    }
}

pub fn cmd_bounds(
    r_min: u32,
    r_max: u32,
    format: TableFormat,
    out: Option<&Path>,
    force: bool,
) -> Result<String, CliError> {
    if r_min < 4 || r_min > r_max || (r_max > 20 && !force) {
        return Err(usage(format!(
            "bounds needs 4 <= r_min <= r_max <= 20 (use --force above 20), got {r_min}..{r_max}"
        )));
    }
    let rows = if r_max <= bounds::TABLE_MAX_R {
        bounds::comparison_table(r_min, r_max)
    } else {
        (r_min..=r_max).map(bounds::BoundsRow::new).collect()
    }
    .map_err(usage)?;
    let text = match format {
        TableFormat::Csv => bounds::to_csv(&rows),
        TableFormat::Md => bounds::to_markdown(&rows),
    };
    write_or_return(out, text)
}

/// One line of the verification report.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub mandatory: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub r: u32,
    pub checks: Vec<Check>,
    pub census: Option<CrossingCensus>,
}

impl VerifyReport {
    /// True when every mandatory check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.mandatory)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        writeln!(f, "verify r = {}", self.r)?;
        for c in &self.checks {
            let status = match (c.passed, c.mandatory) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "WARN",
            };
            writeln!(f, "  {:<w$}  {status}  {}", c.name, c.detail)?;
        }
        if let Some(c) = &self.census {
            let parts: Vec<String> = GROUP_KEYS
                .iter()
                .map(|k| format!("{k}={}", c.get(k)))
                .collect();
            writeln!(f, "  census  total={}  {}", c.total, parts.join(" "))?;
        }
        writeln!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// The full consistency battery for RB(r).
pub fn verify(r: u32, threads: usize) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, mandatory: bool, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            mandatory,
            passed,
            detail,
        })
    };
    let wb = match WrappedButterfly::new(r) {
        Ok(g) => g,
        Err(e) => {
            push("topology", true, false, e.to_string());
            return VerifyReport {
                r,
                checks,
                census: None,
            };
        }
    };

    let iso: Result<(), String> = (2..=wb.blocks()).try_for_each(|k| {
        wb.verify_block_isomorphism(1, k)
            .map(|_| ())
            .map_err(|e| e.to_string())
    });
    push(
        "block isomorphism",
        false,
        iso.is_ok(),
        iso.err()
            .unwrap_or_else(|| format!("{} blocks", wb.blocks())),
    );

    let geom = match RingGeometry::new(r) {
        Ok(g) => g,
        Err(e) => {
            push("layout", true, false, e.to_string());
            return VerifyReport {
                r,
                checks,
                census: None,
            };
        }
    };
    let mut planar = Ok(0u64);
    for k in 1..=wb.blocks() {
        let frag = wb
            .block_subgraph(k)
            .map_err(|e| e.to_string())
            .and_then(|b| layout_ring(&b, &geom).map_err(|e| e.to_string()));
        let n = frag.and_then(|d| {
            count_crossings_with(&d, threads)
                .map(|c| c.total)
                .map_err(|e| e.to_string())
        });
        match n {
            Ok(0) => {}
            Ok(n) => planar = Err(format!("ring {k} has {n} internal crossings")),
            Err(e) => planar = Err(format!("ring {k}: {e}")),
        }
        if planar.is_err() {
            break;
        }
    }
    push(
        "ring planarity",
        false,
        planar.is_ok(),
        planar
            .err()
            .unwrap_or_else(|| "0 internal crossings".into()),
    );

    let d = match layout_rb(r) {
        Ok(d) => d,
        Err(e) => {
            push("layout", true, false, e.to_string());
            return VerifyReport {
                r,
                checks,
                census: None,
            };
        }
    };
    let violations = validate_good_drawing(&d);
    push(
        "good drawing",
        true,
        violations.is_empty(),
        match violations.first() {
            None => "no violations".into(),
            Some(v) => format!("{} violations, first {:?}", violations.len(), v.kind),
        },
    );
    let census = match count_crossings_with(&d, threads) {
        Ok(c) => c,
        Err(e) => {
            push("census", true, false, e.to_string());
            return VerifyReport {
                r,
                checks,
                census: None,
            };
        }
    };

    let exact_total = r <= 5;
    if let (Ok(bound), Ok(sum)) = (bound_new(r), lemma_sum(r)) {
        let total = census.total as i128;
        if exact_total {
            push(
                "total = closed form",
                true,
                total == bound,
                format!("measured {total}, closed form {bound}"),
            );
        } else {
            push(
                "total <= closed form",
                true,
                total <= bound,
                format!("measured {total}, closed form {bound}, lemma sum {sum}, measured - lemma sum = {}", total - sum),
            );
        }
    }
    if let Ok(pred) = PredictedCensus::from_lemmas(r) {
        if let Ok(diff) = census_diff(&census, &pred) {
            let off: Vec<String> = diff
                .deltas
                .iter()
                .filter(|(_, v)| **v != 0)
                .map(|(k, v)| format!("{k} {v:+}"))
                .collect();
            let ring = ["IExRE", "WIExRE"].iter().all(|k| diff.deltas[*k] == 0);
            push(
                "edge-ring classes = lemmas",
                exact_total,
                ring,
                lemma_detail(&off),
            );
            push(
                "census = lemmas",
                exact_total,
                diff.is_zero(),
                lemma_detail(&off),
            );
        }
    }
    if r >= 5 {
        let ok = bound_new(r - 1).and_then(|p| recursion_step(p, r)).ok() == bound_new(r).ok();
        push(
            "recursion identity",
            false,
            ok,
            format!(
                "step from r = {} reproduces {}",
                r - 1,
                bound_new(r).unwrap_or(0)
            ),
        );
    }
    match count_crossings_with(&quarter_diagram(&d), threads) {
        Ok(q) => push(
            "quarter symmetry",
            false,
            4 * q.total == census.total,
            format!("quarter {} vs total {}", q.total, census.total),
        ),
        Err(e) => push("quarter symmetry", false, false, e.to_string()),
    }
    VerifyReport {
        r,
        checks,
        census: Some(census),
    }
}

fn lemma_detail(off: &[String]) -> String {
    if off.is_empty() {
        "all classes match".into()
    } else {
        format!("measured - predicted: {}", off.join(", "))
    }
}
