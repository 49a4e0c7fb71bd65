//! Outer-boundary extraction by Moore-neighbour tracing and equal-angle
//! resampling of that boundary around the hand centroid.

use std::collections::VecDeque;

use thiserror::Error;

use crate::frames::{DepthFrame, MAX_DEPTH};
use crate::geometry::{Bitmap, Pixel, NEIGHBORS_CW};
use crate::scalar::Scalar;

/// Fewest pixels a region may have to be traced.
pub const MIN_REGION: usize = 8;
pub const DEFAULT_SAMPLES: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContourError {
    #[error("region has {0} pixels, need at least {MIN_REGION}")]
    RegionTooSmall(usize),
    #[error("sample count {0} must be a power of two and at least 4")]
    BadSampleCount(usize),
    #[error("every contour pixel coincides with the centroid")]
    DegenerateShape,
    #[error("no contour pixel landed in any angular bin")]
    AllBinsEmpty,
}

/// Closed boundary walk, clockwise on screen, starting at the topmost then
/// leftmost pixel. The last point connects back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contour {
    pub points: Vec<Pixel>,
}

impl Contour {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct pixels on the walk. Thin parts are walked twice, so this
    /// can be smaller than [`Contour::len`].
    pub fn distinct(&self) -> Vec<Pixel> {
        let mut v = self.points.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Largest 8-connected component of `pixels`. Ties keep the component met
/// first in input order.
fn largest_component(pixels: &[Pixel]) -> Vec<Pixel> {
    let mut unvisited = Bitmap::from_pixels(pixels);
    let mut best: Vec<Pixel> = Vec::new();
    let mut queue = VecDeque::new();
    let mut remaining = pixels.len();
    for &seed in pixels {
        if remaining <= best.len() {
            break;
        }
        if !unvisited.contains(seed) {
            continue;
        }
        unvisited.clear(seed);
        queue.push_back(seed);
        let mut comp = Vec::new();
        while let Some(p) = queue.pop_front() {
            comp.push(p);
            for (dx, dy) in NEIGHBORS_CW {
                let q = Pixel::new(p.x + dx, p.y + dy);
                if unvisited.contains(q) {
                    unvisited.clear(q);
                    queue.push_back(q);
                }
            }
        }
        remaining -= comp.len();
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best
}

fn direction_index(dx: i32, dy: i32) -> usize {
    NEIGHBORS_CW
        .iter()
        .position(|&d| d == (dx, dy))
        .expect("backtrack pixel is an 8-neighbour")
}

/// Traces the outer boundary of a pixel region with 8-connectivity.
///
/// If the region falls apart into several 8-connected pieces only the
/// largest is traced. Holes are ignored. Tracing stops when the start
/// pixel is re-entered from the direction it was first left from.
pub fn trace_contour(pixels: &[Pixel]) -> Result<Contour, ContourError> {
    if pixels.len() < MIN_REGION {
        return Err(ContourError::RegionTooSmall(pixels.len()));
    }
    let region = largest_component(pixels);
    let map = Bitmap::from_pixels(&region);
    let start = *region.iter().min_by_key(|p| (p.y, p.x)).expect("nonempty region");

    // the west neighbour of the topmost-leftmost pixel is never a member
    let start_back = 0usize;
    let mut points = vec![start];
    let mut current = start;
    let mut back = start_back;
    let limit = 4 * region.len() + 8;

    loop {
        let mut next = None;
        for i in 1..=8 {
            let dir = (back + i) % 8;
            let (dx, dy) = NEIGHBORS_CW[dir];
            let q = Pixel::new(current.x + dx, current.y + dy);
            if map.contains(q) {
                let (bx, by) = NEIGHBORS_CW[(back + i - 1) % 8];
                let b = Pixel::new(current.x + bx, current.y + by);
                next = Some((q, direction_index(b.x - q.x, b.y - q.y)));
                break;
            }
        }
        let Some((q, q_back)) = next else {
            break; // isolated pixel
        };
        if q == start && q_back == start_back {
            break;
        }
        points.push(q);
        current = q;
        back = q_back;
        if points.len() > limit {
            break;
        }
    }
    Ok(Contour { points })
}

/// Boundary radii at `count` equal angular bins around a centroid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledBoundary<T> {
    pub radii: Vec<T>,
    pub centroid: (T, T),
    /// Bins that received at least one contour pixel before interpolation.
    pub occupied: usize,
}

impl<T> SampledBoundary<T> {
    pub fn count(&self) -> usize {
        self.radii.len()
    }
}

/// Angular bin of `(dx, dy)` in `[0, n)`, with angles measured by
/// `atan2(dy, dx)` and normalised to `[0, 2π)`.
///
/// The vector is first rotated into the quadrant `dx > 0, dy >= 0` with
/// exact sign swaps, so a 90° rotation of the input shifts the bin by
/// exactly `n / 4`.
fn angle_bin<T: Scalar>(dx: T, dy: T, n: usize) -> usize {
    let zero = T::zero();
    let (quadrant, a, b) = if dx > zero && dy >= zero {
        (0, dx, dy)
    } else if dx <= zero && dy > zero {
        (1, dy, -dx)
    } else if dx < zero && dy <= zero {
        (2, -dx, -dy)
    } else {
        (3, -dy, dx)
    };
    let quarter = n / 4;
    let theta = b.atan2(a);
    let within = (theta * T::of(n as f64) / T::TAU()).floor().to_usize().unwrap_or(0);
    quadrant * quarter + within.min(quarter - 1)
}

/// Resamples a contour into `n` centroid-distance radii.
///
/// Each contour pixel goes to the bin of its angle around `centroid`;
/// a bin keeps the largest radius it sees. Empty bins are filled by
/// linear interpolation between the nearest occupied bins on either
/// side, wrapping around.
pub fn equal_angle_sample<T: Scalar>(
    points: &[Pixel],
    centroid: (T, T),
    n: usize,
) -> Result<SampledBoundary<T>, ContourError> {
    let offsets = points
        .iter()
        .map(|p| (T::of_i64(p.x.into()) - centroid.0, T::of_i64(p.y.into()) - centroid.1));
    sample_offsets(offsets, centroid, n)
}

/// [`equal_angle_sample`] around the mean of `region`, with offsets
/// computed in integers as `(count·x − Σx) / count`.
///
/// The offsets do not depend on where the region sits in the frame, so
/// translating both the region and its contour leaves the radii
/// bit-identical.
pub fn equal_angle_sample_region<T: Scalar>(
    points: &[Pixel],
    region: &[Pixel],
    n: usize,
) -> Result<SampledBoundary<T>, ContourError> {
    if region.is_empty() {
        return Err(ContourError::RegionTooSmall(0));
    }
    let count = region.len() as i64;
    let sx: i64 = region.iter().map(|p| i64::from(p.x)).sum();
    let sy: i64 = region.iter().map(|p| i64::from(p.y)).sum();
    let c = T::of_i64(count);
    let centroid = (T::of_i64(sx) / c, T::of_i64(sy) / c);
    let offsets = points.iter().map(|p| {
        (
            T::of_i64(count * i64::from(p.x) - sx) / c,
            T::of_i64(count * i64::from(p.y) - sy) / c,
        )
    });
    sample_offsets(offsets, centroid, n)
}

fn sample_offsets<T: Scalar>(
    offsets: impl Iterator<Item = (T, T)>,
    centroid: (T, T),
    n: usize,
) -> Result<SampledBoundary<T>, ContourError> {
    if n < 4 || !n.is_power_of_two() {
        return Err(ContourError::BadSampleCount(n));
    }
    let mut bins: Vec<Option<T>> = vec![None; n];
    let mut any_offset = false;
    let mut seen = false;
    for (dx, dy) in offsets {
        seen = true;
        if dx == T::zero() && dy == T::zero() {
            continue;
        }
        any_offset = true;
        let r = dx.hypot(dy);
        let k = angle_bin(dx, dy, n);
        bins[k] = Some(match bins[k] {
            Some(prev) if prev >= r => prev,
            _ => r,
        });
    }
    if !seen {
        return Err(ContourError::AllBinsEmpty);
    }
    if !any_offset {
        return Err(ContourError::DegenerateShape);
    }
    let occupied = bins.iter().filter(|b| b.is_some()).count();
    let filled: Vec<usize> = (0..n).filter(|&k| bins[k].is_some()).collect();
    let mut radii = vec![T::zero(); n];
    for (i, &k) in filled.iter().enumerate() {
        let rk = bins[k].expect("filled");
        radii[k] = rk;
        let next = filled[(i + 1) % filled.len()];
        let rn = bins[next].expect("filled");
        let span = (next + n - k) % n;
        let span = if span == 0 { n } else { span };
        for step in 1..span {
            let t = T::of(step as f64) / T::of(span as f64);
            radii[(k + step) % n] = rk + (rn - rk) * t;
        }
    }
    Ok(SampledBoundary { radii, centroid, occupied })
}

/// Frame-sized debug image with every contour pixel at maxval.
pub fn contour_overlay(width: u32, height: u32, contours: &[Contour]) -> DepthFrame {
    let mut frame = DepthFrame::empty(width, height);
    for c in contours {
        for p in &c.points {
            frame.set(p.x, p.y, MAX_DEPTH);
        }
    }
    frame
}
