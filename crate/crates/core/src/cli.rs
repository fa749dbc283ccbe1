//! Command-line front end: `build`, `solve`, `eval`, `inspect-dim` and
//! `geometry`.
//!
//! Exit codes: 0 success, 2 I/O or configuration error, 3 domain error
//! (out-of-vocabulary words, no shared context, unknown dimension). Errors
//! go to stderr as a single `error<TAB>kind<TAB>message` line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analogy::{
    evaluate_testset, frequent_items, parse_testset_file, run_pipeline, CompletionOptions,
    EvalOptions, Metric, PipelineOutcome, PipelineParams,
};
use crate::corpus::{read_corpus, DocDelimiter};
use crate::error::Error;
use crate::geometry::{
    analogy_points, dimension_histogram, dimension_id, parallelogram_metrics, random_baseline,
    ParallelogramReport,
};
use crate::projection::{
    AnalogyQuery, FitMode, SelectionParams, SupportMode, DEFAULT_K1, DEFAULT_K2,
};
use crate::space::{build_space, load_space, save_space, BaseSpace, BuildParams};

#[derive(Debug, Parser)]
#[command(
    name = "pmi-subspace",
    version,
    about = "Sparse PMI word space and per-analogy subspace projection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a space file from a corpus.
    Build(BuildArgs),
    /// Solve one analogy A:B::C:D (D optional).
    Solve(SolveArgs),
    /// Evaluate an analogy test set.
    Eval(EvalArgs),
    /// Ranked values of every word on one context dimension.
    InspectDim(InspectArgs),
    /// Parallelogram shape metrics of an analogy.
    Geometry(GeometryArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Corpus files or directories.
    #[arg(long = "corpus", required = true, num_args = 1..)]
    pub corpus: Vec<PathBuf>,
    /// Treat each plain file as one document instead of one document per line.
    /// Files found inside directories are always one document each.
    #[arg(long)]
    pub doc_per_file: bool,
    #[arg(long, short = 'o')]
    pub output: PathBuf,
    #[arg(long, default_value_t = 200_000)]
    pub vocab_size: usize,
    #[arg(long, default_value_t = 1)]
    pub context_min_count: u64,
    #[arg(long, default_value_t = 5)]
    pub window: usize,
    /// Smoothing constant; defaults to 10000 scaled by corpus size / 2e9.
    #[arg(long)]
    pub smoothing: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Euclidean,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SupportArg {
    Intersection,
    Union,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitArg {
    Raw,
    Normalized,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[arg(long, default_value_t = DEFAULT_K1)]
    pub k1: usize,
    #[arg(long, default_value_t = DEFAULT_K2)]
    pub k2: usize,
    #[arg(long, value_enum, default_value_t = MetricArg::Euclidean)]
    pub metric: MetricArg,
    /// Let A, B and C be predicted.
    #[arg(long)]
    pub no_exclude: bool,
    #[arg(long, value_enum, default_value_t = SupportArg::Intersection)]
    pub support: SupportArg,
    #[arg(long, value_enum, default_value_t = FitArg::Raw)]
    pub fit: FitArg,
    /// Candidates listed per completion.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
}

impl PipelineArgs {
    pub fn params(&self) -> Result<PipelineParams, Error> {
        if self.k1 == 0 || self.k2 == 0 || self.top == 0 {
            return Err(Error::InvalidArgument(
                "k1, k2 and top must be positive".into(),
            ));
        }
        Ok(PipelineParams {
            selection: SelectionParams {
                k1: self.k1,
                k2: self.k2,
                support: match self.support {
                    SupportArg::Intersection => SupportMode::Intersection,
                    SupportArg::Union => SupportMode::Union,
                },
                fit: match self.fit {
                    FitArg::Raw => FitMode::Raw,
                    FitArg::Normalized => FitMode::Normalized,
                },
            },
            completion: CompletionOptions {
                metric: match self.metric {
                    MetricArg::Euclidean => Metric::Euclidean,
                    MetricArg::Cosine => Metric::Cosine,
                },
                exclude_inputs: !self.no_exclude,
                top_n: self.top,
            },
        })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// A B C [D]
    #[arg(num_args = 3..=4, required = true, value_name = "WORD")]
    pub words: Vec<String>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Also write the result as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long)]
    pub testset: PathBuf,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Keep only analogies whose four words each occur at least this often
    /// in the corpus.
    #[arg(long)]
    pub min_word_count: Option<u64>,
    /// Evaluate a seeded random sample of this many analogies.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluate only the first N (after sampling).
    #[arg(long)]
    pub limit: Option<usize>,
    /// Report path (JSON).
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Context word naming the dimension.
    pub dim: String,
    /// Words whose ranks are reported.
    #[arg(long, value_delimiter = ',')]
    pub highlight: Vec<String>,
    /// Write the ranked list here as TSV (default: stdout).
    #[arg(long)]
    pub tsv: Option<PathBuf>,
    /// Write the highlight sidecar here (default: stdout after the TSV).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Needed unless --coords is given.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// A B C D
    #[arg(num_args = 4, value_name = "WORD")]
    pub words: Vec<String>,
    /// Explicit coordinates for A;B;C;D, e.g. "1,0;2,0;1,1;2,1".
    #[arg(long)]
    pub coords: Option<String>,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Random subspaces drawn from the k1 candidates for comparison.
    #[arg(long, default_value_t = 20)]
    pub random_draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    if e.is_domain() {
        3
    } else {
        2
    }
}

/// Parse `std::env::args` and run. Used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error\t{}\t{}", e.kind(), e);
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Build(a) => cmd_build(&a, out),
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Eval(a) => cmd_eval(&a, out),
        Command::InspectDim(a) => cmd_inspect_dim(&a, out),
        Command::Geometry(a) => cmd_geometry(&a, out),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn check_readable(path: &Path) -> Result<(), Error> {
    fs::metadata(path).map(|_| ()).map_err(io_err(path))
}

fn check_writable(path: &Path) -> Result<(), Error> {
    let parent = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    match fs::metadata(parent) {
        Ok(m) if m.is_dir() => Ok(()),
        Ok(_) => Err(Error::io(
            path,
            std::io::Error::new(
                std::io::ErrorKind::NotADirectory,
                "parent is not a directory",
            ),
        )),
        Err(e) => Err(Error::io(path, e)),
    }
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    fs::write(path, text + "\n").map_err(io_err(path))
}

pub fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> Result<(), Error> {
    for p in &args.corpus {
        check_readable(p)?;
    }
    check_writable(&args.output)?;
    let params = BuildParams {
        vocab_size: args.vocab_size,
        context_min_count: args.context_min_count,
        window: args.window,
        smoothing_a: args.smoothing,
    };
    let started = Instant::now();
    let delimiter = if args.doc_per_file {
        DocDelimiter::Whole
    } else {
        DocDelimiter::Line
    };
    let tokens = read_corpus(&args.corpus, delimiter)?;
    let space = build_space(&tokens, &params)?;
    save_space(&space, &args.output)?;
    emit(
        out,
        &format!(
            "documents\t{}\ntokens\t{}\ntarget_vocab\t{}\ncontext_types\t{}\nstored_entries\t{}\nW\t{}\nsmoothing_a\t{}\nwindow\t{}\nseconds\t{:.2}\n",
            tokens.documents().len(),
            tokens.total_tokens(),
            space.target_vocab().len(),
            space.context_vocab().len(),
            space.nnz(),
            space.target_vocab().total_in_vocab(),
            space.smoothing_a(),
            space.window(),
            started.elapsed().as_secs_f64(),
        ),
    )
}

fn load(path: &Path) -> Result<BaseSpace, Error> {
    check_readable(path)?;
    load_space(path)
}

/// JSON summary of one pipeline run.
pub fn outcome_json(
    space: &BaseSpace,
    query: &AnalogyQuery,
    o: &PipelineOutcome,
    params: &PipelineParams,
) -> serde_json::Value {
    let cv = space.context_vocab();
    let dims: Vec<serde_json::Value> = if o.without_d {
        o.selection
            .candidates
            .iter()
            .map(|&c| json!({ "id": c, "label": cv.word(c) }))
            .collect()
    } else {
        o.selection
            .selected
            .iter()
            .map(|s| json!({ "id": s.dim, "label": cv.word(s.dim), "fit": s.fit }))
            .collect()
    };
    json!({
        "query": query,
        "params": params,
        "mode": if o.without_d { "k1-mean subspace without D (exploratory, not the published procedure)" } else { "k2 analogical-fit subspace" },
        "gathered_dims": o.selection.gathered.len(),
        "candidate_dims": o.selection.candidates.len(),
        "dims": dims,
        "completion": o.completion.named(space.target_vocab()),
        "matched": o.matched,
    })
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), Error> {
    let params = args.pipeline.params()?;
    if let Some(p) = &args.json {
        check_writable(p)?;
    }
    let space = load(&args.space)?;
    let w: Vec<String> = args.words.iter().map(|s| s.to_lowercase()).collect();
    let query = AnalogyQuery::new(&w[0], &w[1], &w[2], w.get(3).map(String::as_str))?;
    let o = run_pipeline(&space, &query, &params)?;

    let cv = space.context_vocab();
    let tv = space.target_vocab();
    let mut text = format!("query\t{query}\n");
    if o.without_d {
        text.push_str(
            "mode\tk1-mean subspace without D (exploratory, not the published procedure)\n",
        );
    }
    text.push_str(&format!("gathered_dims\t{}\n", o.selection.gathered.len()));
    let labels: Vec<&str> = o.subspace.dims().iter().map(|&c| cv.word(c)).collect();
    text.push_str(&format!("dims\t{}\n", labels.join(" ")));
    text.push_str(&format!("predicted\t{}\n", tv.word(o.completion.predicted)));
    for r in &o.completion.ranked {
        text.push_str(&format!(
            "candidate\t{}\t{:.6}\n",
            tv.word(r.word),
            r.distance
        ));
    }
    if let Some(m) = o.matched {
        text.push_str(&format!("matched\t{m}\n"));
    }
    emit(out, &text)?;
    if let Some(p) = &args.json {
        write_json(p, &outcome_json(&space, &query, &o, &params))?;
    }
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), Error> {
    let params = args.pipeline.params()?;
    check_readable(&args.testset)?;
    if let Some(p) = &args.output {
        check_writable(p)?;
    }
    let space = load(&args.space)?;
    let mut items = parse_testset_file(&args.testset)?;
    let parsed = items.len();
    if let Some(min) = args.min_word_count {
        items = frequent_items(&space, &items, min);
    }
    let opts = EvalOptions {
        sample_size: args.sample,
        seed: args.seed,
        limit: args.limit,
    };
    let started = Instant::now();
    let report = evaluate_testset(&space, &items, &params, &opts);
    let seconds = started.elapsed().as_secs_f64();
    let acc = report
        .accuracy
        .map_or("undefined".to_string(), |a| format!("{a:.4}"));
    emit(
        out,
        &format!(
            "parsed\t{parsed}\nfiltered\t{}\ntotal\t{}\noov_skipped\t{}\nattempted\t{}\ncorrect\t{}\naccuracy\t{acc}\nseconds\t{seconds:.2}\n",
            items.len(),
            report.total,
            report.oov_skipped,
            report.attempted,
            report.correct
        ),
    )?;
    if let Some(p) = &args.output {
        let mut value = serde_json::to_value(&report).expect("report serializes");
        value["testset"] = json!(args.testset);
        value["min_word_count"] = json!(args.min_word_count);
        value["parsed"] = json!(parsed);
        write_json(p, &value)?;
    }
    Ok(())
}

pub fn cmd_inspect_dim(args: &InspectArgs, out: &mut dyn Write) -> Result<(), Error> {
    for p in args.tsv.iter().chain(&args.json) {
        check_writable(p)?;
    }
    let space = load(&args.space)?;
    let dim = dimension_id(&space, &args.dim.to_lowercase())?;
    let hist = dimension_histogram(&space, dim, &args.highlight)?;
    let tsv = hist.to_tsv();
    let sidecar = serde_json::to_string_pretty(&hist.sidecar_json()).expect("sidecar serializes");
    match &args.tsv {
        Some(p) => fs::write(p, tsv).map_err(io_err(p))?,
        None => emit(out, &tsv)?,
    }
    match &args.json {
        Some(p) => fs::write(p, sidecar + "\n").map_err(io_err(p))?,
        None => emit(out, &(sidecar + "\n"))?,
    }
    Ok(())
}

/// Parse `x,y,..;x,y,..;..` into four points.
pub fn parse_coords(s: &str) -> Result<[Vec<f64>; 4], Error> {
    let points: Vec<Vec<f64>> = s
        .split(';')
        .map(|p| {
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad coordinate {x:?}")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    points.try_into().map_err(|p: Vec<Vec<f64>>| {
        Error::InvalidArgument(format!("expected 4 points, got {}", p.len()))
    })
}

const METRIC_DEFINITIONS: &str =
    "closure_abs=|(B-A+C)-D|; closure_rel=closure_abs/mean(|B-A|,|D-C|); \
flatness=s3/s1 of centred points (0 planar); centrality=angle(centroid, diagonal) deg; \
obliqueness=angle(diagonal, plane normal space) deg (0 = perpendicular to diagonal)";

/// Selected-subspace shape metrics of a full analogy, with a random-subspace
/// comparison, as a JSON report.
pub fn space_geometry(
    space: &BaseSpace,
    query: &AnalogyQuery,
    params: &PipelineParams,
    draws: usize,
    seed: u64,
) -> Result<serde_json::Value, Error> {
    let o = run_pipeline(space, query, params)?;
    let dims: Vec<u32> = o.subspace.dims().to_vec();
    let [a, b, c, d] = analogy_points(space, &o.ids, &dims)?;
    let report = parallelogram_metrics(&a, &b, &c, &d)?;
    let baseline = random_baseline(space, &o.ids, &dims, &o.selection.candidates, draws, seed)?;
    let labels: Vec<&str> = dims
        .iter()
        .map(|&c| space.context_vocab().word(c))
        .collect();
    Ok(json!({
        "words": query.words(),
        "source": "space",
        "dims": labels,
        "points": [a, b, c, d],
        "report": report,
        "random_baseline": baseline,
        "matched": o.matched,
        "definitions": METRIC_DEFINITIONS,
    }))
}

pub fn cmd_geometry(args: &GeometryArgs, out: &mut dyn Write) -> Result<(), Error> {
    if let Some(p) = &args.output {
        check_writable(p)?;
    }
    let value = if let Some(coords) = &args.coords {
        let [a, b, c, d] = parse_coords(coords)?;
        let report: ParallelogramReport = parallelogram_metrics(&a, &b, &c, &d)?;
        json!({
            "words": args.words,
            "source": "coordinates",
            "points": [a, b, c, d],
            "report": report,
            "definitions": METRIC_DEFINITIONS,
        })
    } else {
        let space_path = args
            .space
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--space or --coords is required".into()))?;
        if args.words.len() != 4 {
            return Err(Error::InvalidArgument("geometry needs A B C D".into()));
        }
        let params = args.pipeline.params()?;
        let space = load(space_path)?;
        let w: Vec<String> = args.words.iter().map(|s| s.to_lowercase()).collect();
        let query = AnalogyQuery::new(&w[0], &w[1], &w[2], Some(&w[3]))?;
        space_geometry(&space, &query, &params, args.random_draws, args.seed)?
    };
    let text = serde_json::to_string_pretty(&value).expect("report serializes") + "\n";
    match &args.output {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => emit(out, &text),
    }
}
