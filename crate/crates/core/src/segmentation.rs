//! Depth-histogram hand segmentation: find the nearest object in the frame
//! and keep every pixel within a fixed depth band behind it.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::frames::{DepthFrame, MAX_DEPTH};
use crate::geometry::Pixel;

pub const HISTOGRAM_BINS: usize = MAX_DEPTH as usize + 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegmentError {
    #[error("no object of at least {min_object_size} pixels in front of the sensor")]
    NoObject { min_object_size: usize },
    #[error("only {found} pixels in depth band [{near}, {far}], need {min_object_size}")]
    TooFewPixels { found: usize, near: u16, far: u16, min_object_size: usize },
    #[error("threshold must be positive")]
    ZeroThreshold,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SegmentConfig {
    /// Depth band width behind the nearest object, in layers.
    pub threshold: u16,
    /// Layers summed past a candidate nearest layer.
    pub noise_window: u16,
    pub min_object_size: usize,
}

impl Default for SegmentConfig {
    fn default() -> Self {
        Self { threshold: 150, noise_window: 16, min_object_size: 400 }
    }
}

/// Pixel counts per depth layer; layer 0 is never counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthHistogram {
    bins: Vec<u32>,
}

impl Default for DepthHistogram {
    fn default() -> Self {
        Self { bins: vec![0; HISTOGRAM_BINS] }
    }
}

impl DepthHistogram {
    pub fn from_bins(bins: Vec<u32>) -> Option<Self> {
        (bins.len() == HISTOGRAM_BINS).then_some(Self { bins })
    }

    pub fn bins(&self) -> &[u32] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|&c| u64::from(c)).sum()
    }

    /// Debug dump: one `layer count` line per nonempty bin.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (layer, &count) in self.bins.iter().enumerate().filter(|(_, &c)| c > 0) {
            let _ = writeln!(out, "{layer} {count}");
        }
        out
    }

    pub fn write_text(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        fs::write(path, self.to_text())
    }
}

pub fn build_histogram(frame: &DepthFrame) -> DepthHistogram {
    let mut hist = DepthHistogram::default();
    for &d in frame.depths() {
        if d != 0 {
            hist.bins[d as usize] += 1;
        }
    }
    hist
}

/// Returns the nearest occupied layer `d` whose window
/// `[d, d + noise_window]` holds at least `min_object_size` pixels.
///
/// Requiring `d` itself to be occupied keeps the band anchored on the
/// object surface; isolated speckle layers never reach the count.
pub fn find_nearest_object(
    hist: &DepthHistogram,
    min_object_size: usize,
    noise_window: u16,
) -> Result<u16, SegmentError> {
    let bins = &hist.bins;
    let window = noise_window as usize + 1;
    let mut sum: u64 = bins[..window.min(HISTOGRAM_BINS)].iter().map(|&c| u64::from(c)).sum();
    for d in 1..HISTOGRAM_BINS {
        // sum covers [d - 1, d - 1 + noise_window]; slide it to start at d
        sum -= u64::from(bins[d - 1]);
        if let Some(&c) = bins.get(d + window - 1) {
            sum += u64::from(c);
        }
        if bins[d] > 0 && sum >= min_object_size as u64 {
            return Ok(d as u16);
        }
    }
    Err(SegmentError::NoObject { min_object_size })
}

/// Pixels segmented as hands, in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandMask {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<Pixel>,
    pub near_depth: u16,
    pub far_depth: u16,
}

impl HandMask {
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }
}

/// Keeps every pixel with depth in `[near, near + threshold]`.
pub fn segment_hands(
    frame: &DepthFrame,
    near: u16,
    threshold: u16,
    min_object_size: usize,
) -> Result<HandMask, SegmentError> {
    if threshold == 0 {
        return Err(SegmentError::ZeroThreshold);
    }
    let far = near.saturating_add(threshold);
    let width = frame.width() as usize;
    let pixels: Vec<Pixel> = frame
        .depths()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0 && d >= near && d <= far)
        .map(|(i, _)| Pixel::new((i % width) as i32, (i / width) as i32))
        .collect();
    if pixels.len() < min_object_size {
        return Err(SegmentError::TooFewPixels {
            found: pixels.len(),
            near,
            far,
            min_object_size,
        });
    }
    Ok(HandMask { width: frame.width(), height: frame.height(), pixels, near_depth: near, far_depth: far })
}

/// Histogram, nearest-object search and band threshold in one call.
pub fn segment_frame(frame: &DepthFrame, config: &SegmentConfig) -> Result<HandMask, SegmentError> {
    let hist = build_histogram(frame);
    let near = find_nearest_object(&hist, config.min_object_size, config.noise_window)?;
    segment_hands(frame, near, config.threshold, config.min_object_size)
}
