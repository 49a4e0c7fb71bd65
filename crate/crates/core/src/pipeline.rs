//! End-to-end recognition with per-stage timing, plus the evaluation and
//! benchmark harnesses built on top of it.
//!
//! Segmentation always runs over the whole frame on one thread. In
//! parallel mode the K-means assignment step is spread over the rayon pool
//! and the per-hand chain (contour, resampling, signature, descriptor,
//! match) of a two-hand frame runs for both hands concurrently. Both modes
//! return identical recognition results.

use std::fmt::{self, Write as _};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{classify_hand_within, combine, ClassifiedHand, ClassifyError, RecognitionResult, TemplateSet};
use crate::clustering::{kmeans_two, ClusterConfig, HandCluster};
use crate::contour::{equal_angle_sample_region, trace_contour, ContourError, DEFAULT_SAMPLES};
use crate::descriptors::{centroid_distance_signature, descriptor_with, DescriptorError, FourierDescriptor, DEFAULT_COEFFICIENTS};
use crate::frames::{DepthFrame, FrameError};
use crate::geometry::HandSide;
use crate::scalar::Scalar;
use crate::segmentation::{build_histogram, find_nearest_object, segment_hands, SegmentConfig, SegmentError};

/// Frame rate of the depth sensor; frames must be processed at least this fast.
pub const REALTIME_FPS: f64 = 30.0;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl fmt::Display for ExecMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExecMode::Sequential => "sequential",
            ExecMode::Parallel => "parallel",
        })
    }
}

/// The seven timed stages, in execution order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Segmentation,
    KMeans,
    ContourTracing,
    Normalize,
    Signature,
    Fourier,
    Classification,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Segmentation,
        Stage::KMeans,
        Stage::ContourTracing,
        Stage::Normalize,
        Stage::Signature,
        Stage::Fourier,
        Stage::Classification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Segmentation => "Hand Segmentation",
            Stage::KMeans => "K-Means Calculation",
            Stage::ContourTracing => "Hand Contour Tracing",
            Stage::Normalize => "Normalize Image (128 points)",
            Stage::Signature => "Centroid Distance Signature",
            Stage::Fourier => "Discrete Fourier Description",
            Stage::Classification => "Gesture Classification",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("hand segmentation: body mask: {0}")]
    BodyMask(#[source] FrameError),
    #[error("hand segmentation: {0}")]
    Segmentation(#[from] SegmentError),
    #[error("hand contour tracing: {0}")]
    Tracing(#[source] ContourError),
    #[error("normalize image: {0}")]
    Normalize(#[source] ContourError),
    #[error("discrete fourier description: {0}")]
    Fourier(#[from] DescriptorError),
    #[error("gesture classification: {0}")]
    Classification(#[from] ClassifyError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl PipelineError {
    /// The stage that failed, if the error came from one.
    pub fn stage(&self) -> Option<Stage> {
        Some(match self {
            PipelineError::BodyMask(_) | PipelineError::Segmentation(_) => Stage::Segmentation,
            PipelineError::Tracing(_) => Stage::ContourTracing,
            PipelineError::Normalize(_) => Stage::Normalize,
            PipelineError::Fourier(_) => Stage::Fourier,
            PipelineError::Classification(_) => Stage::Classification,
            PipelineError::InvalidInput(_) => return None,
        })
    }
}

/// Every tunable of the recognition chain.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig<T> {
    pub segment: SegmentConfig,
    pub cluster: ClusterConfig<T>,
    /// Equal-angle samples per boundary; a power of two.
    pub sample_count: usize,
    pub coefficient_count: usize,
    /// Reject matches farther than this. Off by default.
    pub max_match_distance: Option<T>,
    /// Per-pixel body mask applied before the depth histogram.
    pub body_mask: Option<Arc<[bool]>>,
}

impl<T: Scalar> Default for PipelineConfig<T> {
    fn default() -> Self {
        Self {
            segment: SegmentConfig::default(),
            cluster: ClusterConfig::default(),
            sample_count: DEFAULT_SAMPLES,
            coefficient_count: DEFAULT_COEFFICIENTS,
            max_match_distance: None,
            body_mask: None,
        }
    }
}

/// Per-stage wall time in milliseconds.
#[derive(Clone, Debug, PartialEq)]
pub struct StageTimings {
    pub stages: [f64; 7],
    pub total: f64,
    pub mode: ExecMode,
}

impl StageTimings {
    fn zero(mode: ExecMode) -> Self {
        Self { stages: [0.0; 7], total: 0.0, mode }
    }

    pub fn get(&self, stage: Stage) -> f64 {
        self.stages[stage.index()]
    }

    pub fn stage_sum(&self) -> f64 {
        self.stages.iter().sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = (Stage, f64)> + '_ {
        Stage::ALL.iter().map(|&s| (s, self.get(s)))
    }
}

/// Frames per second implied by a mean total in milliseconds, as
/// `(truncated, rounded)`.
pub fn fps_from_total(total_ms: f64) -> (u32, u32) {
    let fps = 1000.0 / total_ms;
    (fps.trunc() as u32, fps.round() as u32)
}

/// Everything one pass over a frame produced.
#[derive(Clone, Debug)]
pub struct FrameAnalysis<T> {
    pub result: Option<RecognitionResult<T>>,
    /// Descriptor per hand, left first.
    pub descriptors: Vec<(HandSide, FourierDescriptor<T>)>,
    pub timings: StageTimings,
    /// K-means hit its iteration cap before memberships settled.
    pub kmeans_converged: bool,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

struct HandOutput<T> {
    descriptor: FourierDescriptor<T>,
    matched: Option<ClassifiedHand<T>>,
    /// Contour, normalize, signature, fourier, classification.
    times: [f64; 5],
}

fn hand_chain<T: Scalar>(
    cluster: &HandCluster<T>,
    set: Option<&TemplateSet<T>>,
    config: &PipelineConfig<T>,
) -> Result<HandOutput<T>, PipelineError> {
    let mut times = [0.0; 5];

    let t = Instant::now();
    let contour = trace_contour(&cluster.pixels).map_err(PipelineError::Tracing)?;
    times[0] = ms(t);

    let t = Instant::now();
    let boundary = equal_angle_sample_region(&contour.points, &cluster.pixels, config.sample_count)
        .map_err(PipelineError::Normalize)?;
    times[1] = ms(t);

    let t = Instant::now();
    let signature = centroid_distance_signature(&boundary);
    times[2] = ms(t);

    let t = Instant::now();
    let descriptor = descriptor_with(&signature, config.coefficient_count)?;
    times[3] = ms(t);

    let t = Instant::now();
    let matched = match set {
        Some(set) => {
            let (label, distance) = classify_hand_within(&descriptor, set, config.max_match_distance)?;
            Some(ClassifiedHand { label, distance, side: cluster.side })
        }
        None => None,
    };
    times[4] = ms(t);

    Ok(HandOutput { descriptor, matched, times })
}

/// Runs the full chain. With `set = None` classification is skipped and
/// only descriptors are produced (used for enrolment).
pub fn analyze<T: Scalar>(
    frame: &DepthFrame,
    set: Option<&TemplateSet<T>>,
    mode: ExecMode,
    config: &PipelineConfig<T>,
) -> Result<FrameAnalysis<T>, PipelineError> {
    if let Some(set) = set {
        if set.is_empty() {
            return Err(ClassifyError::EmptyTemplateSet.into());
        }
    }
    let start = Instant::now();
    let mut timings = StageTimings::zero(mode);

    let t = Instant::now();
    let gated;
    let frame = match &config.body_mask {
        Some(body) => {
            gated = frame.masked(body).map_err(PipelineError::BodyMask)?;
            &gated
        }
        None => frame,
    };
    let seg = &config.segment;
    let hist = build_histogram(frame);
    let near = find_nearest_object(&hist, seg.min_object_size, seg.noise_window)?;
    let mask = segment_hands(frame, near, seg.threshold, seg.min_object_size)?;
    timings.stages[Stage::Segmentation.index()] = ms(t);

    let t = Instant::now();
    let cluster_cfg = ClusterConfig { parallel: mode == ExecMode::Parallel, ..config.cluster };
    let clusters = kmeans_two(&mask, &cluster_cfg);
    timings.stages[Stage::KMeans.index()] = ms(t);

    let outputs: Vec<HandOutput<T>> = match (mode, clusters.clusters.as_slice()) {
        (ExecMode::Parallel, [a, b]) => {
            let (ra, rb) = rayon::join(|| hand_chain(a, set, config), || hand_chain(b, set, config));
            vec![ra?, rb?]
        }
        (_, hands) => hands.iter().map(|c| hand_chain(c, set, config)).collect::<Result<_, _>>()?,
    };

    let per_hand = [
        Stage::ContourTracing,
        Stage::Normalize,
        Stage::Signature,
        Stage::Fourier,
        Stage::Classification,
    ];
    for (i, stage) in per_hand.iter().enumerate() {
        let times = outputs.iter().map(|o| o.times[i]);
        // concurrent hands overlap, so the slower one is the stage's cost
        timings.stages[stage.index()] = match mode {
            ExecMode::Sequential => times.sum(),
            ExecMode::Parallel => times.fold(0.0, f64::max),
        };
    }

    let t = Instant::now();
    let result = if set.is_some() {
        let hands: Vec<ClassifiedHand<T>> = outputs.iter().filter_map(|o| o.matched).collect();
        Some(combine(&hands))
    } else {
        None
    };
    timings.stages[Stage::Classification.index()] += ms(t);

    let descriptors = clusters
        .clusters
        .iter()
        .zip(outputs)
        .map(|(c, o)| (c.side, o.descriptor))
        .collect();
    timings.total = ms(start);
    Ok(FrameAnalysis { result, descriptors, timings, kmeans_converged: clusters.converged })
}

/// Recognises the number shown in `frame`.
pub fn recognize<T: Scalar>(
    frame: &DepthFrame,
    set: &TemplateSet<T>,
    mode: ExecMode,
    config: &PipelineConfig<T>,
) -> Result<(RecognitionResult<T>, StageTimings), PipelineError> {
    let analysis = analyze(frame, Some(set), mode, config)?;
    Ok((analysis.result.expect("classified when a set is given"), analysis.timings))
}

/// Per-hand descriptors of a frame, left hand first.
pub fn describe<T: Scalar>(
    frame: &DepthFrame,
    config: &PipelineConfig<T>,
) -> Result<Vec<(HandSide, FourierDescriptor<T>)>, PipelineError> {
    Ok(analyze(frame, None, ExecMode::Sequential, config)?.descriptors)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    /// Per-stage and total means over all runs.
    pub mean: StageTimings,
    /// Total of every run, in run order.
    pub totals: Vec<f64>,
}

impl BenchReport {
    pub fn runs(&self) -> usize {
        self.totals.len()
    }

    pub fn median_total(&self) -> f64 {
        median(&self.totals)
    }

    pub fn fps(&self) -> (u32, u32) {
        fps_from_total(self.mean.total)
    }

    /// Stage table: seven stage rows, the total, and derived frame rates.
    pub fn to_table(&self) -> String {
        let mut out = format!("Processes\tTime in milliseconds ({}, {} runs)\n", self.mean.mode, self.runs());
        for (stage, t) in self.mean.rows() {
            let _ = writeln!(out, "{stage}\t{t:.4}");
        }
        let _ = writeln!(out, "Total\t{:.4}", self.mean.total);
        let (trunc, round) = self.fps();
        let _ = writeln!(out, "Median total\t{:.4}", self.median_total());
        let _ = writeln!(out, "FPS (truncated)\t{trunc}");
        let _ = writeln!(out, "FPS (rounded)\t{round}");
        let realtime = 1000.0 / self.mean.total >= REALTIME_FPS;
        let _ = writeln!(
            out,
            "Real-time ({REALTIME_FPS} FPS)\t{}",
            if realtime { "yes" } else { "no" }
        );
        out
    }
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Runs [`recognize`] `runs` times and averages every stage.
pub fn benchmark<T: Scalar>(
    frame: &DepthFrame,
    set: &TemplateSet<T>,
    runs: usize,
    mode: ExecMode,
    config: &PipelineConfig<T>,
) -> Result<BenchReport, PipelineError> {
    if runs == 0 {
        return Err(PipelineError::InvalidInput("runs must be at least 1".into()));
    }
    let mut sum = StageTimings::zero(mode);
    let mut totals = Vec::with_capacity(runs);
    for _ in 0..runs {
        let (_, t) = recognize(frame, set, mode, config)?;
        for (acc, v) in sum.stages.iter_mut().zip(t.stages) {
            *acc += v;
        }
        sum.total += t.total;
        totals.push(t.total);
    }
    let n = runs as f64;
    sum.stages.iter_mut().for_each(|s| *s /= n);
    sum.total /= n;
    Ok(BenchReport { mean: sum, totals })
}

/// Outcome of one evaluated frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameOutcome {
    pub truth: u8,
    /// `None` when a stage failed.
    pub predicted: Option<u8>,
    /// Largest per-hand match distance.
    pub distance: f64,
    pub error: Option<String>,
}

/// Recognition rates per number and the 10×10 confusion matrix.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EvalReport {
    /// `confusion[truth - 1][predicted - 1]`.
    pub confusion: [[u32; 10]; 10],
    /// Frames per truth number that failed in some stage.
    pub errors: [u32; 10],
    /// Test frames per truth number.
    pub counts: [u32; 10],
    pub outcomes: Vec<FrameOutcome>,
}

impl EvalReport {
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn correct(&self) -> u32 {
        (0..10).map(|i| self.confusion[i][i]).sum()
    }

    pub fn accuracy(&self) -> f64 {
        f64::from(self.correct()) / f64::from(self.total())
    }

    /// Fraction of frames with truth `number` recognised correctly.
    pub fn true_rate(&self, number: u8) -> Option<f64> {
        let i = usize::from(number).checked_sub(1)?;
        let n = *self.counts.get(i)?;
        (n > 0).then(|| f64::from(self.confusion[i][i]) / f64::from(n))
    }

    /// Recognition-rate table: number, true rate, false rate, then average.
    pub fn rate_table(&self) -> String {
        let mut out = String::from("Number Gesture\tTrue Recognition\tFalse Recognition\n");
        for number in 1..=10u8 {
            if let Some(rate) = self.true_rate(number) {
                let pct = (rate * 100.0).round();
                let _ = writeln!(out, "{number}\t{pct}%\t{}%", 100.0 - pct);
            }
        }
        let avg = (self.accuracy() * 100.0).round();
        let _ = writeln!(out, "Average\t{avg}%\t{}%", 100.0 - avg);
        let errors: u32 = self.errors.iter().sum();
        if errors > 0 {
            let _ = writeln!(out, "Stage errors\t{errors}");
        }
        out
    }

    /// Tab-separated confusion matrix, truth rows by predicted columns.
    pub fn confusion_table(&self) -> String {
        let mut out = String::new();
        for p in 1..=10 {
            let _ = write!(out, "\t{p}");
        }
        out.push('\n');
        for (i, row) in self.confusion.iter().enumerate() {
            let _ = write!(out, "{}", i + 1);
            for c in row {
                let _ = write!(out, "\t{c}");
            }
            out.push('\n');
        }
        out
    }

    /// CSV confusion matrix: header then one row per truth label, 11 columns.
    pub fn confusion_csv(&self) -> String {
        let mut out = String::from("truth");
        for p in 1..=10 {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
        for (i, row) in self.confusion.iter().enumerate() {
            let _ = write!(out, "{}", i + 1);
            for c in row {
                let _ = write!(out, ",{c}");
            }
            out.push('\n');
        }
        out
    }
}

/// Recognises every test frame and tallies the results. Frames run
/// concurrently; the tally does not depend on completion order.
pub fn evaluate<T: Scalar>(
    test: &[(DepthFrame, u8)],
    set: &TemplateSet<T>,
    mode: ExecMode,
    config: &PipelineConfig<T>,
) -> Result<EvalReport, PipelineError> {
    if test.is_empty() {
        return Err(PipelineError::InvalidInput("empty test set".into()));
    }
    if let Some((_, bad)) = test.iter().find(|(_, n)| !(1..=10).contains(n)) {
        return Err(PipelineError::InvalidInput(format!("ground truth {bad} outside 1..=10")));
    }
    if set.is_empty() {
        return Err(ClassifyError::EmptyTemplateSet.into());
    }
    let outcomes: Vec<FrameOutcome> = test
        .par_iter()
        .map(|(frame, truth)| match recognize(frame, set, mode, config) {
            Ok((r, _)) => FrameOutcome {
                truth: *truth,
                predicted: Some(r.number),
                distance: r.hands.iter().map(|h| h.distance.as_f64()).fold(0.0, f64::max),
                error: None,
            },
            Err(e) => FrameOutcome { truth: *truth, predicted: None, distance: f64::NAN, error: Some(e.to_string()) },
        })
        .collect();

    let mut report = EvalReport::default();
    for o in &outcomes {
        let row = usize::from(o.truth - 1);
        report.counts[row] += 1;
        match o.predicted {
            Some(p) if (1..=10).contains(&p) => report.confusion[row][usize::from(p - 1)] += 1,
            _ => report.errors[row] += 1,
        }
    }
    report.outcomes = outcomes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{GestureTemplate, HandTag};
    use crate::frames::{synth_frame, SynthSpec};

    fn enroll(specs: &[SynthSpec]) -> TemplateSet<f64> {
        let config = PipelineConfig::default();
        let mut templates = Vec::new();
        for spec in specs {
            let (frame, truth) = synth_frame(spec).unwrap();
            let descs = describe(&frame, &config).unwrap();
            for ((_, label), (side, d)) in truth.labels.iter().zip(descs) {
                templates.push(GestureTemplate { label: *label, descriptor: d, signer: None, hand: HandTag::from(side) });
            }
        }
        TemplateSet::new(templates)
    }

    fn basic_set() -> TemplateSet<f64> {
        let specs: Vec<SynthSpec> = (1..=5).map(|n| SynthSpec::for_number(n, 100 + u64::from(n))).collect();
        enroll(&specs)
    }

    #[test]
    fn stage_names_verbatim() {
        let names: Vec<&str> = Stage::ALL.iter().map(|s| s.name()).collect();
        assert_eq!(
            names,
            [
                "Hand Segmentation",
                "K-Means Calculation",
                "Hand Contour Tracing",
                "Normalize Image (128 points)",
                "Centroid Distance Signature",
                "Discrete Fourier Description",
                "Gesture Classification",
            ]
        );
    }

    #[test]
    fn fps_fixtures() {
        assert_eq!(fps_from_total(20.9415), (47, 48));
        assert_eq!(fps_from_total(18.0960), (55, 55));
    }

    #[test]
    fn enrolled_frame_matches_itself() {
        let set = basic_set();
        let (frame, _) = synth_frame(&SynthSpec::for_number(4, 104)).unwrap();
        let (r, t) = recognize(&frame, &set, ExecMode::Sequential, &PipelineConfig::default()).unwrap();
        assert_eq!(r.number, 4);
        assert_eq!(r.hands[0].distance, 0.0);
        assert_eq!(t.mode, ExecMode::Sequential);
        assert!(t.total + 1e-3 >= t.stage_sum() * 0.5);
    }

    #[test]
    fn seven_in_both_modes() {
        let set = basic_set();
        let (frame, _) = synth_frame(&SynthSpec::for_number(7, 5)).unwrap();
        let cfg = PipelineConfig::default();
        let (seq, _) = recognize(&frame, &set, ExecMode::Sequential, &cfg).unwrap();
        let (par, _) = recognize(&frame, &set, ExecMode::Parallel, &cfg).unwrap();
        assert_eq!(seq.number, 7);
        assert_eq!(seq.mode, crate::classify::RecognitionMode::Both);
        assert_eq!(seq, par);
    }

    #[test]
    fn empty_frame_fails_in_segmentation() {
        let err = recognize(&DepthFrame::empty(640, 480), &basic_set(), ExecMode::Sequential, &PipelineConfig::default())
            .unwrap_err();
        assert_eq!(err.stage(), Some(Stage::Segmentation));
        assert!(matches!(err, PipelineError::Segmentation(SegmentError::NoObject { .. })));
    }

    #[test]
    fn empty_template_set_rejected() {
        let (frame, _) = synth_frame(&SynthSpec::for_number(2, 1)).unwrap();
        let err = recognize(&frame, &TemplateSet::<f64>::default(), ExecMode::Sequential, &PipelineConfig::default())
            .unwrap_err();
        assert_eq!(err.stage(), Some(Stage::Classification));
    }

    #[test]
    fn body_mask_gates_segmentation() {
        let (frame, _) = synth_frame(&SynthSpec::for_number(2, 1)).unwrap();
        let cfg = PipelineConfig::<f64> { body_mask: Some(vec![false; 640 * 480].into()), ..Default::default() };
        let err = analyze(&frame, None, ExecMode::Sequential, &cfg).unwrap_err();
        assert!(matches!(err, PipelineError::Segmentation(SegmentError::NoObject { .. })));
    }

    #[test]
    fn benchmark_single_run_equals_measurement() {
        let set = basic_set();
        let (frame, _) = synth_frame(&SynthSpec::for_number(3, 1)).unwrap();
        let b = benchmark(&frame, &set, 1, ExecMode::Sequential, &PipelineConfig::default()).unwrap();
        assert_eq!(b.runs(), 1);
        assert_eq!(b.mean.total, b.totals[0]);
        assert_eq!(b.median_total(), b.totals[0]);
        let table = b.to_table();
        for s in Stage::ALL {
            assert!(table.contains(&format!("{}\t", s.name())));
        }
        assert!(benchmark(&frame, &set, 0, ExecMode::Sequential, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn eval_counts_and_errors() {
        let set = basic_set();
        let mut test: Vec<(DepthFrame, u8)> = (1..=5)
            .map(|n| (synth_frame(&SynthSpec::for_number(n, 100 + u64::from(n))).unwrap().0, n))
            .collect();
        test.push((DepthFrame::empty(640, 480), 6));
        let r = evaluate(&test, &set, ExecMode::Sequential, &PipelineConfig::default()).unwrap();
        assert_eq!(r.total(), 6);
        assert_eq!(r.correct(), 5);
        assert_eq!(r.errors[5], 1);
        for i in 0..10 {
            let row: u32 = r.confusion[i].iter().sum();
            assert_eq!(row + r.errors[i], r.counts[i]);
        }
        assert!(r.rate_table().contains("Stage errors\t1"));
        assert_eq!(r.confusion_csv().lines().next().unwrap(), "truth,1,2,3,4,5,6,7,8,9,10");
        assert!(evaluate::<f64>(&[], &set, ExecMode::Sequential, &PipelineConfig::default()).is_err());
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
