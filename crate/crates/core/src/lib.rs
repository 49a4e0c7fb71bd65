//! Number-sign recognition from depth frames.
//!
//! The pipeline runs seven stages per frame: depth-band hand segmentation,
//! two-centroid K-means to separate the hands, Moore-neighbour contour
//! tracing, equal-angle resampling of the boundary around the hand centroid,
//! the centroid-distance signature, its Fourier descriptor, and
//! nearest-template matching. Two-hand frames are combined with the sum
//! rule so that numbers 6 to 10 come out of templates for 1 to 5.
//!
//! The numeric modules are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the command-line
//! tool uses.

pub mod classify;
pub mod cli;
pub mod clustering;
pub mod contour;
pub mod descriptors;
pub mod frames;
pub mod geometry;
pub mod pipeline;
pub mod scalar;
pub mod segmentation;

pub use classify::{
    combine, euclidean, ClassifiedHand, ClassifyError, GestureTemplate, HandTag,
    RecognitionMode, RecognitionResult, TemplateSet,
};
pub use clustering::{init_centroids, kmeans_two, ClusterConfig, ClusterOutcome, HandCluster, Init};
pub use contour::{equal_angle_sample, equal_angle_sample_region, trace_contour, Contour, ContourError, SampledBoundary};
pub use descriptors::{
    centroid_distance_signature, descriptor, fft, fft_real, DescriptorError, FourierDescriptor,
    Spectrum, DEFAULT_COEFFICIENTS,
};
pub use frames::{
    read_frame, synth_frame, write_frame, DepthFrame, FrameError, FrameFormat, HandCount,
    SynthSpec, MAX_DEPTH,
};
pub use geometry::{HandSide, Pixel};
pub use pipeline::{
    benchmark, evaluate, recognize, BenchReport, EvalReport, ExecMode, PipelineConfig,
    PipelineError, Stage, StageTimings,
};
pub use scalar::Scalar;
pub use segmentation::{
    build_histogram, find_nearest_object, segment_hands, DepthHistogram, HandMask, SegmentConfig,
    SegmentError,
};

/// Fourier descriptor over `f64`.
pub type Descriptor = FourierDescriptor<f64>;
/// Template dictionary over `f64`.
pub type Templates = TemplateSet<f64>;
/// Template entry over `f64`.
pub type Template = GestureTemplate<f64>;
/// Sampled boundary over `f64`.
pub type Boundary = SampledBoundary<f64>;
/// Hand cluster with `f64` centroid.
pub type Cluster = HandCluster<f64>;
/// Pipeline configuration over `f64`.
pub type Config = PipelineConfig<f64>;
/// Recognition outcome over `f64`.
pub type Recognition = RecognitionResult<f64>;
