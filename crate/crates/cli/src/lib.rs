//! The `thompson` command line. [`run`] does all the work and hands back the
//! text for stdout, stderr and the exit status, so tests need no subprocess.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use thompson_core::deadend;
use thompson_core::geodesic::{self, GeneratorWord};
use thompson_core::group::{self, multiply};
use thompson_core::metric::{self, Bounds, Part};
use thompson_core::normal_form::{self, NormalForm};
use thompson_core::oracle::{self, Ball, Limits};
use thompson_core::{Generator, TreePair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "thompson", version, about = "Tree pair computations in Thompson's group F")]
struct Cli {
    /// Read and write generator words in the a/A/b/B alphabet (a = x0, A = x0^-1, b = x1, B = x1^-1).
    #[arg(long, global = true)]
    letters: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON document per invocation.
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a word.
    Nf { word: String },
    /// Word length in x0, x1.
    Len {
        word: String,
        /// One line per caret pairing with its weight.
        #[arg(long)]
        breakdown: bool,
    },
    /// Product normal form, first word on the left.
    Mul { left: String, right: String },
    /// Inverse normal form.
    Inv { word: String },
    /// Word-metric distance between two elements.
    Dist { from: String, to: String },
    /// Every length bound that applies to the element.
    Bounds { word: String },
    /// Caret counts of both minimal trees, read from the normal form.
    Census { word: String },
    /// Minimal-length word for a strictly positive or negative element.
    Minpath {
        word: String,
        /// Confirm the output evaluates to the input and has the exact length.
        #[arg(long)]
        check: bool,
    },
    /// Word in x0, x1 of at most four times the length, built from the normal form.
    Replace { word: String },
    /// Whether the element is a dead end, and whether it has the structural form.
    Deadend { word: String },
    /// Three-letter path out of the ball from a dead end.
    Escape { word: String },
    /// Build the ball of the given radius and compare distances with word lengths.
    BfsVerify {
        radius: u32,
        /// Also report dead ends and where the structural test disagrees.
        #[arg(long)]
        dead_ends: bool,
        /// Write the ball to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Read the ball from a dump instead of building it.
        #[arg(long)]
        load: Option<PathBuf>,
        /// Raise the radius cap.
        #[arg(long)]
        max_radius: Option<u32>,
    },
    /// Sphere sizes of the Cayley graph up to the given radius.
    Growth {
        radius: u32,
        #[arg(long)]
        max_radius: Option<u32>,
    },
    /// Graphviz DOT for both trees of the element.
    Render { word: String },
    /// The caret pair weight table.
    DumpWeights,
}

/// What a run produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl From<oracle::OracleError> for CliError {
    fn from(e: oracle::OracleError) -> Self {
        use oracle::OracleError::*;
        match e {
            RadiusCap { .. } | Capacity { .. } => CliError::Resource(e.to_string()),
            BadLimit(_) | Format { .. } => CliError::Parse(e.to_string()),
            Io(_) => CliError::Resource(e.to_string()),
        }
    }
}

struct Ctx {
    letters: bool,
    machine: bool,
}

impl Ctx {
    fn element(&self, text: &str) -> Result<TreePair, CliError> {
        if self.letters {
            if let Ok(w) = parse_letters(text) {
                return Ok(geodesic::evaluate(&w));
            }
        }
        normal_form::parse(text)
            .map(|p| p.normal_form().to_tree_pair())
            .map_err(|e| CliError::Parse(format!("`{text}`: {e}")))
    }

    fn show_word(&self, w: &GeneratorWord) -> String {
        if self.letters {
            w.to_letters()
        } else {
            w.to_string()
        }
    }

    /// Text as is, or the JSON document.
    fn emit(&self, text: String, machine: Value) -> String {
        if self.machine {
            let mut s = machine.to_string();
            s.push('\n');
            s
        } else {
            text
        }
    }
}

/// `a A b B` with optional whitespace, or `1` for the empty word.
fn parse_letters(text: &str) -> Result<GeneratorWord, CliError> {
    let compact: String = text.split_whitespace().collect();
    if compact == "1" {
        return Ok(GeneratorWord::default());
    }
    compact
        .chars()
        .map(|c| Generator::from_letter(c).ok_or_else(|| CliError::Parse(format!("`{c}` is not one of a A b B"))))
        .collect::<Result<_, _>>()
        .map(GeneratorWord)
}

fn nf(pair: &TreePair) -> NormalForm {
    NormalForm::from_tree_pair(pair)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bounds_text(b: Option<Bounds>) -> String {
    b.map_or_else(|| "n/a".into(), |b| format!("{}..{}", b.lower, b.upper))
}

fn limits(max_radius: Option<u32>) -> Result<Limits, CliError> {
    let mut l = Limits::from_env()?;
    if let Some(r) = max_radius {
        l.max_radius = r;
    }
    Ok(l)
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, ..Outcome::default() }
            } else {
                Outcome { code, stderr: text, ..Outcome::default() }
            };
        }
    };
    let ctx = Ctx {
        letters: cli.letters,
        machine: cli.format == Format::Machine,
    };
    match dispatch(&ctx, cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(ctx: &Ctx, command: Command) -> Result<(i32, String), CliError> {
    let ok = |s: String| Ok((EXIT_OK, s));
    match command {
        Command::Nf { word } => {
            let n = nf(&ctx.element(&word)?).to_string();
            ok(ctx.emit(format!("{n}\n"), json!({ "normal_form": n })))
        }
        Command::Len { word, breakdown } => {
            let pair = ctx.element(&word)?;
            let rows = metric::length_breakdown(&pair);
            let total: u32 = rows.iter().map(|r| r.weight).sum();
            let mut text = String::new();
            if breakdown {
                for r in &rows {
                    let _ = writeln!(text, "{}: ({}, {}) -> {}", r.index, r.negative, r.positive, r.weight);
                }
                let _ = writeln!(text, "total {total}");
            } else {
                let _ = writeln!(text, "{total}");
            }
            ok(ctx.emit(text, json!({ "length": total, "breakdown": rows })))
        }
        Command::Mul { left, right } => {
            let n = nf(&multiply(&ctx.element(&left)?, &ctx.element(&right)?)).to_string();
            ok(ctx.emit(format!("{n}\n"), json!({ "normal_form": n })))
        }
        Command::Inv { word } => {
            let n = nf(&group::invert(&ctx.element(&word)?)).to_string();
            ok(ctx.emit(format!("{n}\n"), json!({ "normal_form": n })))
        }
        Command::Dist { from, to } => {
            let d = group::distance(&ctx.element(&from)?, &ctx.element(&to)?);
            ok(ctx.emit(format!("{d}\n"), json!({ "distance": d })))
        }
        Command::Bounds { word } => bounds(ctx, &word).map(|s| (EXIT_OK, s)),
        Command::Census { word } => {
            let form = nf(&ctx.element(&word)?);
            let mut text = String::new();
            let mut sides = serde_json::Map::new();
            for (name, side) in [("negative", Part::Negative), ("positive", Part::Positive)] {
                let c = metric::caret_census(&form, side);
                let empty = metric::right_spine_empty(&form, side);
                let _ = writeln!(
                    text,
                    "{name}: total {} left {} interior {} right {} right-subtree-empty {}",
                    c.total,
                    c.left,
                    c.interior,
                    c.right,
                    yes_no(empty)
                );
                sides.insert(name.into(), json!({ "census": c, "right_subtree_empty": empty }));
            }
            ok(ctx.emit(text, Value::Object(sides)))
        }
        Command::Minpath { word, check } => {
            let pair = ctx.element(&word)?;
            let w = geodesic::nested_traversal_word(&nf(&pair)).map_err(|e| CliError::Domain(e.to_string()))?;
            let length = metric::word_length(&pair);
            let verified = check.then(|| geodesic::evaluate(&w) == pair && w.len() as u32 == length);
            let shown = ctx.show_word(&w);
            let mut text = format!("{shown}\n");
            if let Some(v) = verified {
                let _ = writeln!(
                    text,
                    "# check {}: {} letters, length {length}",
                    if v { "ok" } else { "FAILED" },
                    w.len()
                );
            }
            let code = if verified == Some(false) { EXIT_DOMAIN } else { EXIT_OK };
            let out = ctx.emit(text, json!({ "word": shown, "letters": w.len(), "length": length, "verified": verified }));
            Ok((code, out))
        }
        Command::Replace { word } => {
            let pair = ctx.element(&word)?;
            let w = geodesic::replacement_word(&nf(&pair));
            let shown = ctx.show_word(&w);
            ok(ctx.emit(
                format!("{shown}\n"),
                json!({ "word": shown, "letters": w.len(), "length": metric::word_length(&pair) }),
            ))
        }
        Command::Deadend { word } => {
            let pair = ctx.element(&word)?;
            let dead = deadend::is_dead_end(&pair);
            let structural = deadend::matches_dead_end_form(&pair);
            ok(ctx.emit(
                format!("{} structural={}\n", yes_no(dead), yes_no(structural)),
                json!({ "dead_end": dead, "structural": structural }),
            ))
        }
        Command::Escape { word } => {
            let pair = ctx.element(&word)?;
            let w = deadend::escape_word(&pair).map_err(|e| CliError::Domain(e.to_string()))?;
            let mut at = pair.clone();
            let lengths: Vec<u32> = w
                .0
                .iter()
                .map(|&g| {
                    at = group::apply_generator(&at, g);
                    metric::word_length(&at)
                })
                .collect();
            let shown = ctx.show_word(&w);
            ok(ctx.emit(
                format!("{shown}\n"),
                json!({ "word": shown, "start": metric::word_length(&pair), "lengths": lengths }),
            ))
        }
        Command::BfsVerify {
            radius,
            dead_ends,
            dump,
            load,
            max_radius,
        } => bfs_verify(ctx, radius, dead_ends, dump, load, max_radius),
        Command::Growth { radius, max_radius } => {
            let ball = oracle::bfs_ball(radius, &limits(max_radius)?)?;
            let mut text = String::new();
            let mut total = 0;
            for (r, n) in ball.sphere_sizes().iter().enumerate() {
                total += n;
                let _ = writeln!(text, "{r} {n} {total}");
            }
            ok(ctx.emit(text, json!({ "radius": radius, "sphere_sizes": ball.sphere_sizes() })))
        }
        Command::Render { word } => {
            let pair = ctx.element(&word)?;
            let mut dot = format!("digraph pair {{\n  label=\"{}\";\n", nf(&pair));
            for (name, title, tree) in [("neg", "T-", pair.negative()), ("pos", "T+", pair.positive())] {
                let _ = writeln!(dot, "  subgraph cluster_{name} {{\n    label=\"{title}\";");
                tree.write_dot_body(&mut dot, &format!("{name}_"), "    ");
                dot.push_str("  }\n");
            }
            dot.push_str("}\n");
            ok(ctx.emit(dot.clone(), json!({ "dot": dot })))
        }
        Command::DumpWeights => ok(ctx.emit(metric::WEIGHT_TABLE.to_string(), json!({ "table": metric::WEIGHT_TABLE }))),
    }
}

fn bounds(ctx: &Ctx, word: &str) -> Result<String, CliError> {
    let pair = ctx.element(word)?;
    let form = nf(&pair);
    let length = metric::word_length(&pair);
    let coarse = metric::coarse_bounds(&pair);
    let one_sided_coarse = metric::one_sided_coarse_bounds(&pair);
    let refined = (!form.is_identity()).then(|| metric::refined_bounds(&form));
    let one_sided = metric::one_sided_bounds(&form);
    let mut text = String::new();
    let _ = writeln!(text, "length {length}");
    let _ = writeln!(text, "carets {}", pair.caret_count());
    let _ = writeln!(text, "caret bounds {}", bounds_text(Some(coarse)));
    let _ = writeln!(text, "one-sided caret bounds {}", bounds_text(one_sided_coarse));
    let _ = writeln!(text, "normal form bounds {}", bounds_text(refined.map(|b| b.bounds)));
    let _ = writeln!(text, "one-sided normal form bounds {}", bounds_text(one_sided.map(|b| b.bounds)));
    Ok(ctx.emit(
        text,
        json!({
            "length": length,
            "carets": pair.caret_count(),
            "caret_bounds": coarse,
            "one_sided_caret_bounds": one_sided_coarse,
            "normal_form_bounds": refined,
            "one_sided_normal_form_bounds": one_sided,
        }),
    ))
}

fn bfs_verify(
    ctx: &Ctx,
    radius: u32,
    dead_ends: bool,
    dump: Option<PathBuf>,
    load: Option<PathBuf>,
    max_radius: Option<u32>,
) -> Result<(i32, String), CliError> {
    let ball = match load {
        Some(path) => {
            let file = File::open(&path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let ball = Ball::load(BufReader::new(file))?;
            if ball.radius() < radius {
                return Err(CliError::Domain(format!(
                    "{} holds a ball of radius {}, not {radius}",
                    path.display(),
                    ball.radius()
                )));
            }
            ball.restrict(radius)
        }
        None => oracle::bfs_ball(radius, &limits(max_radius)?)?,
    };
    if let Some(path) = dump {
        let file = File::create(&path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))?;
        ball.dump(BufWriter::new(file))
            .map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))?;
    }
    let report = oracle::verify_word_length(&ball);
    let mut failed = !report.violations.is_empty();
    let mut text = report.to_text();
    let mut machine = json!({ "word_length": report });
    if dead_ends {
        let census = oracle::dead_end_census(&ball);
        failed |= !census.disagreements.is_empty();
        let _ = writeln!(
            text,
            "dead ends certified up to length {}: {}",
            census.certified_up_to,
            census.dead_ends.len()
        );
        text.push_str(&census.to_text());
        machine["dead_ends"] = json!(census);
    }
    let code = if failed { EXIT_DOMAIN } else { EXIT_OK };
    Ok((code, ctx.emit(text, machine)))
}
