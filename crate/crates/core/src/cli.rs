//! Command-line workflows: synthesise datasets, enrol templates, recognise
//! single frames, evaluate a test set and benchmark stage latency.
//!
//! Exit codes: 0 success, 2 bad arguments, 3 stage error, 4 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::classify::{load_templates_with, save_templates, ClassifyError, GestureTemplate, HandTag, TemplateSet};
use crate::clustering::ClusterConfig;
use crate::frames::{read_frame, write_frame, FrameError, FrameFormat, HandCount, SynthSpec};
use crate::geometry::HandSide;
use crate::pipeline::{benchmark, describe, evaluate, recognize, ExecMode, PipelineConfig, PipelineError};
use crate::segmentation::SegmentConfig;

pub const MANIFEST_NAME: &str = "labels.tsv";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    BadArgs(String),
    #[error("{0}")]
    Stage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadArgs(_) => 2,
            CliError::Stage(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::IoFailure(io) => CliError::Io(io.to_string()),
            FrameError::InvalidSpec(m) => CliError::BadArgs(m),
            other => CliError::Io(other.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Io(io) => CliError::Io(io.to_string()),
            ClassifyError::EmptyTemplateSet | ClassifyError::Rejected { .. } => CliError::Stage(e.to_string()),
            other => CliError::Io(format!("template file: {other}")),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::InvalidInput(m) => CliError::BadArgs(m),
            other => CliError::Stage(other.to_string()),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(alias = "sequential")]
    Seq,
    #[value(alias = "parallel")]
    Par,
}

impl From<ModeArg> for ExecMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Seq => ExecMode::Sequential,
            ModeArg::Par => ExecMode::Parallel,
        }
    }
}

/// All tunables of a run. Loaded from a `key = value` file, then
/// overridden by individual flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub threshold: u16,
    pub noise_window: u16,
    pub min_object_size: usize,
    pub merge_distance: f64,
    pub max_iterations: usize,
    pub sample_count: usize,
    pub coefficient_count: usize,
    pub mode: ExecMode,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let seg = SegmentConfig::default();
        let cl = ClusterConfig::<f64>::default();
        let p = PipelineConfig::<f64>::default();
        Self {
            threshold: seg.threshold,
            noise_window: seg.noise_window,
            min_object_size: seg.min_object_size,
            merge_distance: cl.merge_distance,
            max_iterations: cl.max_iterations,
            sample_count: p.sample_count,
            coefficient_count: p.coefficient_count,
            mode: ExecMode::Sequential,
            seed: 0,
        }
    }
}

fn parse_value<V: FromStr>(key: &str, value: &str) -> Result<V, CliError> {
    value
        .parse()
        .map_err(|_| CliError::BadArgs(format!("config: bad value {value:?} for {key}")))
}

fn parse_mode(value: &str) -> Result<ExecMode, CliError> {
    match value {
        "seq" | "sequential" => Ok(ExecMode::Sequential),
        "par" | "parallel" => Ok(ExecMode::Parallel),
        _ => Err(CliError::BadArgs(format!("config: bad mode {value:?}"))),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "threshold" => self.threshold = parse_value(key, value)?,
            "noise_window" => self.noise_window = parse_value(key, value)?,
            "min_object_size" => self.min_object_size = parse_value(key, value)?,
            "merge_distance" => self.merge_distance = parse_value(key, value)?,
            "max_iterations" => self.max_iterations = parse_value(key, value)?,
            "sample_count" => self.sample_count = parse_value(key, value)?,
            "coefficient_count" => self.coefficient_count = parse_value(key, value)?,
            "mode" => self.mode = parse_mode(value)?,
            "seed" => self.seed = parse_value(key, value)?,
            _ => return Err(CliError::BadArgs(format!("config: unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::BadArgs(format!("config line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mode = match self.mode {
            ExecMode::Sequential => "seq",
            ExecMode::Parallel => "par",
        };
        format!(
            "threshold = {}\nnoise_window = {}\nmin_object_size = {}\nmerge_distance = {}\n\
             max_iterations = {}\nsample_count = {}\ncoefficient_count = {}\nmode = {}\nseed = {}\n",
            self.threshold,
            self.noise_window,
            self.min_object_size,
            self.merge_distance,
            self.max_iterations,
            self.sample_count,
            self.coefficient_count,
            mode,
            self.seed
        )
    }

    /// One-line summary echoed by every command.
    pub fn summary(&self) -> String {
        format!("# config: {}", self.to_text().trim_end().replace('\n', "; "))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::BadArgs(m.to_string()));
        if self.threshold == 0 {
            return bad("threshold must be positive");
        }
        if self.min_object_size == 0 {
            return bad("min_object_size must be positive");
        }
        if !(self.merge_distance > 0.0 && self.merge_distance.is_finite()) {
            return bad("merge_distance must be positive");
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1");
        }
        if self.sample_count < 4 || !self.sample_count.is_power_of_two() {
            return bad("sample_count must be a power of two >= 4");
        }
        if self.coefficient_count == 0 || self.sample_count <= 2 * self.coefficient_count {
            return bad("coefficient_count must be positive and below sample_count / 2");
        }
        Ok(())
    }

    pub fn pipeline(&self) -> PipelineConfig<f64> {
        PipelineConfig {
            segment: SegmentConfig {
                threshold: self.threshold,
                noise_window: self.noise_window,
                min_object_size: self.min_object_size,
            },
            cluster: ClusterConfig {
                merge_distance: self.merge_distance,
                max_iterations: self.max_iterations,
                ..ClusterConfig::default()
            },
            sample_count: self.sample_count,
            coefficient_count: self.coefficient_count,
            max_match_distance: None,
            body_mask: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "numsign", version, about = "Number-sign recognition from depth frames")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// `key = value` configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threshold: Option<u16>,
    #[arg(long, global = true)]
    pub noise_window: Option<u16>,
    #[arg(long, global = true)]
    pub min_object_size: Option<usize>,
    #[arg(long, global = true)]
    pub merge_distance: Option<f64>,
    #[arg(long, global = true)]
    pub max_iterations: Option<usize>,
    #[arg(long, global = true)]
    pub sample_count: Option<usize>,
    #[arg(long, global = true)]
    pub coefficient_count: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render synthetic gesture frames and a labels.tsv manifest.
    Synth(SynthArgs),
    /// Build a template file from labelled frames.
    Enroll(EnrollArgs),
    /// Recognise the number in one frame.
    Recognize(RecognizeArgs),
    /// Evaluate a labelled test set.
    Eval(EvalArgs),
    /// Time each stage over repeated runs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Gesture number 1-10.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub number: Option<u8>,
    /// Frames to render for --number.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Render every number in --numbers.
    #[arg(long)]
    pub all: bool,
    /// Frames per number with --all.
    #[arg(long, default_value_t = 40)]
    pub per_number: usize,
    /// Numbers for --all, e.g. `1-5` or `1,3,7`.
    #[arg(long, default_value = "1-10")]
    pub numbers: String,
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    #[arg(long, default_value_t = 60.0)]
    pub palm_radius: f64,
    #[arg(long, default_value_t = 800)]
    pub hand_depth: u16,
    /// Force two hands for numbers 2-5.
    #[arg(long)]
    pub two_hands: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Dfr)]
    pub format: FormatArg,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Dfr,
    Pgm,
}

#[derive(Debug, Args)]
pub struct EnrollArgs {
    /// Directory holding the frames.
    #[arg(long)]
    pub frames: PathBuf,
    /// Manifest; defaults to labels.tsv inside --frames.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long)]
    pub templates: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub frames: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub templates: PathBuf,
    /// Write the confusion matrix as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub frame: PathBuf,
    #[arg(long)]
    pub templates: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub runs: usize,
    /// Run both modes, interleaved, instead of --mode only.
    #[arg(long)]
    pub both: bool,
}

impl CommonArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        if let Some(v) = self.threshold {
            cfg.threshold = v;
        }
        if let Some(v) = self.noise_window {
            cfg.noise_window = v;
        }
        if let Some(v) = self.min_object_size {
            cfg.min_object_size = v;
        }
        if let Some(v) = self.merge_distance {
            cfg.merge_distance = v;
        }
        if let Some(v) = self.max_iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = self.sample_count {
            cfg.sample_count = v;
        }
        if let Some(v) = self.coefficient_count {
            cfg.coefficient_count = v;
        }
        if let Some(v) = self.mode {
            cfg.mode = v.into();
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One manifest row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub number: u8,
    /// Per-hand labels, left first.
    pub hand_labels: Vec<u8>,
    pub seed: u64,
}

pub fn manifest_text(entries: &[ManifestEntry]) -> String {
    let mut out = String::from("# filename\tnumber\thand_labels\tseed\n");
    for e in entries {
        let labels: Vec<String> = e.hand_labels.iter().map(u8::to_string).collect();
        let _ = writeln!(out, "{}\t{}\t{}\t{}", e.file, e.number, labels.join("+"), e.seed);
    }
    out
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>, CliError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| CliError::Io(format!("manifest line {}: {what}", i + 1));
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(bad("expected 4 tab-separated columns"));
        }
        let number: u8 = cols[1].parse().map_err(|_| bad("bad number"))?;
        if !(1..=10).contains(&number) {
            return Err(bad("number outside 1..=10"));
        }
        let hand_labels = cols[2]
            .split('+')
            .map(|s| s.parse::<u8>().ok().filter(|l| (1..=5).contains(l)))
            .collect::<Option<Vec<u8>>>()
            .filter(|v| (1..=2).contains(&v.len()) && v.iter().map(|&l| u32::from(l)).sum::<u32>() == u32::from(number))
            .ok_or_else(|| bad("hand labels must be one or two values in 1..=5 summing to the number"))?;
        let seed = cols[3].parse().map_err(|_| bad("bad seed"))?;
        entries.push(ManifestEntry { file: cols[0].to_string(), number, hand_labels, seed });
    }
    Ok(entries)
}

fn read_manifest(frames: &Path, manifest: Option<&Path>) -> Result<Vec<ManifestEntry>, CliError> {
    let path = manifest.map(Path::to_path_buf).unwrap_or_else(|| frames.join(MANIFEST_NAME));
    let text = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let entries = parse_manifest(&text)?;
    if entries.is_empty() {
        return Err(CliError::Io(format!("{}: manifest lists no frames", path.display())));
    }
    Ok(entries)
}

fn parse_numbers(spec: &str) -> Result<Vec<u8>, CliError> {
    let bad = || CliError::BadArgs(format!("bad --numbers {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let (a, b): (u8, u8) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() || out.iter().any(|n| !(1..=10).contains(n)) {
        return Err(bad());
    }
    Ok(out)
}

/// Spec for frame `index` of `number`: consecutive frame pairs share a
/// seed and alternate the leading hand.
pub fn dataset_spec(number: u8, index: usize, base_seed: u64, args: &SynthArgs) -> SynthSpec {
    let hands = if number >= 6 || (args.two_hands && number >= 2) { HandCount::Two } else { HandCount::One };
    SynthSpec {
        number,
        hands,
        seed: base_seed + (index / 2) as u64,
        jitter: args.jitter,
        hand_depth: args.hand_depth,
        palm_radius: args.palm_radius,
        side: if index.is_multiple_of(2) { HandSide::Right } else { HandSide::Left },
        rotation_deg: 0.0,
    }
}

pub fn cmd_synth(args: &SynthArgs, cfg: &RunConfig, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let plan: Vec<(u8, usize)> = if args.all {
        parse_numbers(&args.numbers)?.into_iter().map(|n| (n, args.per_number)).collect()
    } else {
        vec![(args.number.expect("clap requires --number without --all"), args.count)]
    };
    // validate everything before touching the filesystem
    for &(n, count) in &plan {
        for i in 0..count {
            dataset_spec(n, i, cfg.seed, args).validate()?;
        }
    }
    fs::create_dir_all(&args.out)?;
    let (format, ext) = match args.format {
        FormatArg::Dfr => (FrameFormat::Dfr, "dfr"),
        FormatArg::Pgm => (FrameFormat::Pgm, "pgm"),
    };
    let mut entries = Vec::new();
    for (n, count) in plan {
        for i in 0..count {
            let spec = dataset_spec(n, i, cfg.seed, args);
            let (frame, truth) = crate::frames::synth_frame(&spec)?;
            let file = format!("n{n:02}_{i:03}.{ext}");
            write_frame(&frame, args.out.join(&file), format)?;
            entries.push(ManifestEntry {
                file,
                number: n,
                hand_labels: truth.labels.iter().map(|l| l.1).collect(),
                seed: spec.seed,
            });
        }
    }
    fs::write(args.out.join(MANIFEST_NAME), manifest_text(&entries))?;
    writeln!(out, "{}", cfg.summary())?;
    writeln!(out, "wrote {} frames and {} to {}", entries.len(), MANIFEST_NAME, args.out.display())?;
    Ok(())
}

pub fn cmd_enroll(args: &EnrollArgs, cfg: &RunConfig, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let entries = read_manifest(&args.frames, args.manifest.as_deref())?;
    let pipeline = cfg.pipeline();
    let mut templates = Vec::new();
    let mut failures = Vec::new();
    for e in &entries {
        let frame = match read_frame(args.frames.join(&e.file)) {
            Ok(f) => f,
            Err(err) => {
                failures.push(format!("{}: {err}", e.file));
                continue;
            }
        };
        match describe(&frame, &pipeline) {
            Ok(descs) if descs.len() == e.hand_labels.len() => {
                for ((side, d), &label) in descs.into_iter().zip(&e.hand_labels) {
                    templates.push(GestureTemplate {
                        label,
                        descriptor: d,
                        signer: Some(format!("seed{}", e.seed)),
                        hand: HandTag::from(side),
                    });
                }
            }
            Ok(descs) => failures.push(format!(
                "{}: found {} hands, manifest lists {}",
                e.file,
                descs.len(),
                e.hand_labels.len()
            )),
            Err(err) => failures.push(format!("{}: {err}", e.file)),
        }
    }
    if !failures.is_empty() {
        return Err(CliError::Stage(format!("enrolment failed for:\n  {}", failures.join("\n  "))));
    }
    let set = TemplateSet::new(templates);
    save_templates(&set, &args.out)?;
    writeln!(out, "{}", cfg.summary())?;
    writeln!(out, "enrolled {} templates from {} frames into {}", set.len(), entries.len(), args.out.display())?;
    let missing = set.missing_labels();
    if !missing.is_empty() {
        writeln!(out, "warning: no templates for labels {missing:?}")?;
    }
    Ok(())
}

fn load_set(path: &Path, cfg: &RunConfig) -> Result<TemplateSet<f64>, CliError> {
    let set = load_templates_with(path, cfg.coefficient_count)?;
    if set.is_empty() {
        return Err(CliError::Stage(format!("{}: template set is empty", path.display())));
    }
    Ok(set)
}

pub fn cmd_recognize(args: &RecognizeArgs, cfg: &RunConfig, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let set = load_set(&args.templates, cfg)?;
    let frame = read_frame(&args.frame)?;
    let (result, timings) = recognize(&frame, &set, cfg.mode, &cfg.pipeline())?;
    writeln!(out, "{}", cfg.summary())?;
    writeln!(out, "number\t{}", result.number)?;
    for h in &result.hands {
        writeln!(out, "hand\t{}\tlabel {}\tdistance {:.6}", h.side, h.label, h.distance)?;
    }
    writeln!(out, "Processes\tTime in milliseconds ({})", timings.mode)?;
    for (stage, t) in timings.rows() {
        writeln!(out, "{stage}\t{t:.4}")?;
    }
    writeln!(out, "Total\t{:.4}", timings.total)?;
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs, cfg: &RunConfig, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let set = load_set(&args.templates, cfg)?;
    let entries = read_manifest(&args.frames, args.manifest.as_deref())?;
    let test = entries
        .iter()
        .map(|e| Ok((read_frame(args.frames.join(&e.file))?, e.number)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let report = evaluate(&test, &set, cfg.mode, &cfg.pipeline())?;
    writeln!(out, "{}", cfg.summary())?;
    write!(out, "{}", report.rate_table())?;
    writeln!(out)?;
    write!(out, "{}", report.confusion_table())?;
    writeln!(out, "accuracy\t{:.4}", report.accuracy())?;
    if let Some(path) = &args.csv {
        fs::write(path, report.confusion_csv())?;
    }
    Ok(())
}

pub fn cmd_bench(args: &BenchArgs, cfg: &RunConfig, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    let set = load_set(&args.templates, cfg)?;
    let frame = read_frame(&args.frame)?;
    let pipeline = cfg.pipeline();
    writeln!(out, "{}", cfg.summary())?;
    let modes: Vec<ExecMode> =
        if args.both { vec![ExecMode::Sequential, ExecMode::Parallel] } else { vec![cfg.mode] };
    for mode in modes {
        let report = benchmark(&frame, &set, args.runs, mode, &pipeline)?;
        write!(out, "{}", report.to_table())?;
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let outcome = cli.common.resolve().and_then(|cfg| match &cli.command {
        Command::Synth(a) => cmd_synth(a, &cfg, out),
        Command::Enroll(a) => cmd_enroll(a, &cfg, out),
        Command::Recognize(a) => cmd_recognize(a, &cfg, out),
        Command::Eval(a) => cmd_eval(a, &cfg, out),
        Command::Bench(a) => cmd_bench(a, &cfg, out),
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
