//! The `gaptile` command line, as a library so it can be driven from tests.
//!
//! Exit codes: 0 success or accept, 1 internal error, 2 unsupported
//! parameters, invalid input or reject, 64 malformed arguments.

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use gaptile::json::TilingDocument;
use gaptile::render::render_covering;
use gaptile::{
    layer, min_interval, solve_covering, threshold, Cell, Covering, Error, Family, GapSequence, LayerKind, Plan,
    SearchBudget, SearchOutcome,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_REJECT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "gaptile",
    version,
    about = "Tile integer intervals by 4-sets with a common gap sequence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a verified tiling for gaps (p, q, r).
    Tile {
        p: i64,
        q: i64,
        r: i64,
        /// Emit JSON (the default).
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Emit one part per line.
        #[arg(long)]
        text: bool,
        /// Sort the three gaps and use the largest as r.
        #[arg(long)]
        sort_gaps: bool,
    },
    /// Verify a tiling document; FILE may be `-` for standard input.
    Verify { file: String },
    /// Verify a covering document against its own family.
    VerifyCovering { file: String },
    /// Print the least r the construction supports for (p, q).
    Threshold { p: i64, q: i64 },
    /// Emit one of the nice-layer coverings X1, X2, Y1, Y2.
    Layer { kind: LayerKind, p: i64, q: i64 },
    /// Exhaustive search for small instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Draw a covering as z-slices labelled by block index.
    Render { file: String },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Find the least N ≤ max-n such that [1, N] tiles with the given gaps.
    Gaps {
        #[arg(value_delimiter = ',', required = true)]
        gaps: Vec<i64>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Cover shape × [1, height] by family blocks.
    Cover {
        /// JSON file: `[[x,y],...]` or an object with a `cells` field.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        height: i64,
        /// `axis[:w]` or `skew[:w]`, joined by `+`; or a JSON file of vectors, three per member.
        #[arg(long)]
        family: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Failure of a subcommand, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn reject(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_REJECT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::Composition { .. } => EXIT_INTERNAL,
            _ => EXIT_REJECT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => {
            if stdout.write_all(out.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "gaptile: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Outcome {
    match command {
        Command::Tile {
            p,
            q,
            r,
            text,
            sort_gaps,
            ..
        } => tile(p, q, r, text, sort_gaps),
        Command::Verify { file } => {
            let doc: TilingDocument = parse(&read_input(&file, stdin)?)?;
            match doc.verify()?.rejection() {
                None => Ok("accept\n".into()),
                Some(rej) => Err(Failure::reject(format!("reject: {rej}"))),
            }
        }
        Command::VerifyCovering { file } => {
            let c: Covering = parse(&read_input(&file, stdin)?)?;
            match c.verify().rejection() {
                None => Ok("accept\n".into()),
                Some(rej) => Err(Failure::reject(format!("reject: {rej}"))),
            }
        }
        Command::Threshold { p, q } => {
            if p < 1 || q < 1 {
                return Err(Failure::reject(format!("gaps must be positive, got ({p}, {q})")));
            }
            Ok(format!("{}\n", threshold(p, q)))
        }
        Command::Layer { kind, p, q } => to_json(&layer(kind, p, q)?.covering),
        Command::Render { file } => {
            let c: Covering = parse(&read_input(&file, stdin)?)?;
            Ok(render_covering(&c))
        }
        Command::Oracle(OracleCommand::Gaps { gaps, max_n, budget }) => {
            let gaps = GapSequence::new(gaps)?;
            match min_interval(&gaps, max_n, budget_of(budget)?) {
                SearchOutcome::Found((_, t)) => to_json(&TilingDocument::new(&t, &gaps)),
                SearchOutcome::Infeasible => Err(Failure::reject(format!("no tiling of [1, N] for N ≤ {max_n}"))),
                SearchOutcome::BudgetExhausted => Err(Failure::reject("search budget exhausted")),
            }
        }
        Command::Oracle(OracleCommand::Cover {
            shape,
            height,
            family,
            budget,
        }) => {
            let cells = read_shape(&read_input(&shape, stdin)?)?;
            let family = parse_family(&family, stdin)?;
            match solve_covering(&cells, height, &family, budget_of(budget)?) {
                SearchOutcome::Found(c) => to_json(&c),
                SearchOutcome::Infeasible => Err(Failure::reject("no covering exists")),
                SearchOutcome::BudgetExhausted => Err(Failure::reject("search budget exhausted")),
            }
        }
    }
}

fn tile(p: i64, q: i64, r: i64, text: bool, sort_gaps: bool) -> Outcome {
    let (p, q, r) = if sort_gaps {
        let mut g = [p, q, r];
        g.sort_unstable();
        (g[0], g[1], g[2])
    } else {
        (p, q, r)
    };
    let plan = Plan::new(p, q, r)?;
    let tiling = plan.tile()?;
    let params = plan.params();
    let doc = TilingDocument::new(&tiling, &params.gaps()).with_plan(params);
    if !text {
        return to_json(&doc);
    }
    let mut out = format!(
        "gaps {} interval [{}, {}] branch {} d {} height {}\n",
        params.gaps(),
        doc.interval[0],
        doc.interval[1],
        params.branch,
        params.d,
        params.height
    );
    for part in &doc.parts {
        let line: Vec<String> = part.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn budget_of(nodes: Option<u64>) -> Result<SearchBudget, Failure> {
    Ok(nodes.map(SearchBudget::new).transpose()?.unwrap_or_default())
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::reject(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::reject(format!("reading {path}: {e}")))
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::reject(format!("malformed document: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> Outcome {
    let mut s = serde_json::to_string(value).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: e.to_string(),
    })?;
    s.push('\n');
    Ok(s)
}

fn read_shape(text: &str) -> Result<BTreeSet<Cell>, Failure> {
    let value: serde_json::Value = parse(text)?;
    let cells = match value {
        serde_json::Value::Object(mut m) => m.remove("cells").ok_or_else(|| Failure::reject("shape has no cells"))?,
        v => v,
    };
    let cells: Vec<[i64; 2]> =
        serde_json::from_value(cells).map_err(|e| Failure::reject(format!("malformed shape: {e}")))?;
    Ok(cells.into_iter().map(|[x, y]| (x, y)).collect())
}

fn parse_family(arg: &str, stdin: &mut dyn Read) -> Result<Family, Failure> {
    let mut family: Option<Family> = None;
    for term in arg.split('+') {
        let (name, w) = match term.split_once(':') {
            Some((n, w)) => (
                n,
                w.parse::<i64>()
                    .map_err(|_| Failure::reject(format!("bad width in {term:?}")))?,
            ),
            None => (term, 1),
        };
        if w < 1 {
            return Err(Failure::reject(format!("width must be positive in {term:?}")));
        }
        let f = match name {
            "axis" => Family::axis(w),
            "skew" => Family::skew(w),
            _ if !arg.contains('+') => return family_file(arg, stdin),
            _ => return Err(Failure::reject(format!("unknown family {name:?}"))),
        };
        family = Some(match family {
            Some(acc) => acc.union(&f),
            None => f,
        });
    }
    family.ok_or_else(|| Failure::reject("empty family"))
}

fn family_file(path: &str, stdin: &mut dyn Read) -> Result<Family, Failure> {
    let vectors: Vec<gaptile::Vec3> = parse(&read_input(path, stdin)?)?;
    if vectors.is_empty() || !vectors.len().is_multiple_of(3) {
        return Err(Failure::reject("family file must list three vectors per member"));
    }
    Ok(Family::new(vectors.chunks(3).map(|c| [c[0], c[1], c[2]]).collect())?)
}
