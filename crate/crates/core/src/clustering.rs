//! Two-centroid K-means over mask pixels, separating the signer's hands.
//!
//! Centroid updates use exact integer coordinate sums, so the serial and the
//! data-parallel assignment paths always produce the same partition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{HandSide, Pixel};
use crate::scalar::Scalar;
use crate::segmentation::HandMask;

const PAR_CHUNK: usize = 4096;

/// How the two starting centroids are picked.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Init {
    /// Leftmost and rightmost mask pixels.
    ExtremeX,
    /// Two mask pixels drawn with a seeded generator.
    Random { seed: u64 },
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ClusterConfig<T> {
    /// Clusters whose centroids are closer than this are merged.
    pub merge_distance: T,
    pub max_iterations: usize,
    pub init: Init,
    /// Run the assignment step on the rayon pool.
    pub parallel: bool,
}

impl<T: Scalar> Default for ClusterConfig<T> {
    fn default() -> Self {
        Self { merge_distance: T::of(80.0), max_iterations: 100, init: Init::ExtremeX, parallel: false }
    }
}

/// One segmented hand.
#[derive(Clone, Debug, PartialEq)]
pub struct HandCluster<T> {
    pub pixels: Vec<Pixel>,
    pub centroid: (T, T),
    pub side: HandSide,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterOutcome<T> {
    /// One or two clusters, left before right.
    pub clusters: Vec<HandCluster<T>>,
    /// Lloyd iterations performed.
    pub iterations: usize,
    /// `false` when `max_iterations` was hit with memberships still changing.
    pub converged: bool,
    /// A cluster emptied during iteration and the mask was kept whole.
    pub emptied: bool,
    /// Whether the final two clusters were merged by the distance rule.
    pub merged: bool,
    /// Within-cluster squared distance after each assignment step.
    pub objective: Vec<T>,
}

/// Deterministic seeds: the pixel with minimum x and the pixel with
/// maximum x, each tie broken by minimum y.
///
/// # Panics
/// If the mask is empty.
pub fn init_centroids(pixels: &[Pixel]) -> (Pixel, Pixel) {
    let lo = *pixels.iter().min_by_key(|p| (p.x, p.y)).expect("nonempty mask");
    let hi = *pixels.iter().min_by_key(|p| (-p.x, p.y)).expect("nonempty mask");
    (lo, hi)
}

#[derive(Copy, Clone, Default)]
struct Sums {
    count: [i64; 2],
    sx: [i64; 2],
    sy: [i64; 2],
    changed: usize,
}

impl Sums {
    fn merge(mut self, o: Sums) -> Sums {
        for k in 0..2 {
            self.count[k] += o.count[k];
            self.sx[k] += o.sx[k];
            self.sy[k] += o.sy[k];
        }
        self.changed += o.changed;
        self
    }
}

#[inline]
fn dist_sq<T: Scalar>(p: Pixel, c: (T, T)) -> T {
    let dx = T::of_i64(p.x.into()) - c.0;
    let dy = T::of_i64(p.y.into()) - c.1;
    dx * dx + dy * dy
}

/// Assigns each pixel in the chunk to its nearest centroid (ties go to
/// centroid 0) and accumulates per-cluster sums plus the objective.
fn assign_chunk<T: Scalar>(pixels: &[Pixel], labels: &mut [u8], c: [(T, T); 2]) -> (Sums, T) {
    let mut sums = Sums::default();
    let mut objective = T::zero();
    for (p, label) in pixels.iter().zip(labels.iter_mut()) {
        let d0 = dist_sq(*p, c[0]);
        let d1 = dist_sq(*p, c[1]);
        let (k, d) = if d1 < d0 { (1u8, d1) } else { (0u8, d0) };
        if *label != k {
            *label = k;
            sums.changed += 1;
        }
        let k = k as usize;
        sums.count[k] += 1;
        sums.sx[k] += i64::from(p.x);
        sums.sy[k] += i64::from(p.y);
        objective += d;
    }
    (sums, objective)
}

fn mean<T: Scalar>(count: i64, sx: i64, sy: i64) -> (T, T) {
    let n = T::of_i64(count);
    (T::of_i64(sx) / n, T::of_i64(sy) / n)
}

fn whole<T: Scalar>(pixels: &[Pixel]) -> HandCluster<T> {
    let (sx, sy) = pixels
        .iter()
        .fold((0i64, 0i64), |(a, b), p| (a + i64::from(p.x), b + i64::from(p.y)));
    HandCluster {
        pixels: pixels.to_vec(),
        centroid: mean(pixels.len() as i64, sx, sy),
        side: HandSide::Only,
    }
}

/// Lloyd's algorithm with K = 2 followed by the centroid-distance merge.
///
/// Iteration stops when no pixel changes membership or after
/// `max_iterations` assignment steps. If a cluster ends up empty, or the
/// final centroids are closer than `merge_distance`, the whole mask is
/// returned as a single cluster with a recomputed centroid.
///
/// # Panics
/// If the mask is empty.
pub fn kmeans_two<T: Scalar>(mask: &HandMask, config: &ClusterConfig<T>) -> ClusterOutcome<T> {
    kmeans_two_pixels(&mask.pixels, config)
}

/// [`kmeans_two`] over a bare pixel list.
pub fn kmeans_two_pixels<T: Scalar>(pixels: &[Pixel], config: &ClusterConfig<T>) -> ClusterOutcome<T> {
    assert!(!pixels.is_empty(), "kmeans over an empty mask");
    let (s0, s1) = match config.init {
        Init::ExtremeX => init_centroids(pixels),
        Init::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (pixels[rng.gen_range(0..pixels.len())], pixels[rng.gen_range(0..pixels.len())])
        }
    };
    let to_t = |p: Pixel| (T::of_i64(p.x.into()), T::of_i64(p.y.into()));
    let mut centroids = [to_t(s0), to_t(s1)];
    // 2 marks "unassigned" so the first pass counts every pixel as changed
    let mut labels = vec![2u8; pixels.len()];
    let mut objective = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    let mut sums = Sums::default();

    while iterations < config.max_iterations.max(1) {
        iterations += 1;
        let (s, obj) = if config.parallel {
            pixels
                .par_chunks(PAR_CHUNK)
                .zip(labels.par_chunks_mut(PAR_CHUNK))
                .map(|(px, lb)| assign_chunk(px, lb, centroids))
                .reduce(|| (Sums::default(), T::zero()), |a, b| (a.0.merge(b.0), a.1 + b.1))
        } else {
            assign_chunk(pixels, &mut labels, centroids)
        };
        sums = s;
        objective.push(obj);
        if sums.changed == 0 {
            converged = true;
            break;
        }
        if sums.count[0] == 0 || sums.count[1] == 0 {
            break;
        }
        for (k, c) in centroids.iter_mut().enumerate() {
            *c = mean(sums.count[k], sums.sx[k], sums.sy[k]);
        }
    }

    let single = |emptied: bool, merged: bool, objective: Vec<T>| ClusterOutcome {
        clusters: vec![whole(pixels)],
        iterations,
        converged,
        emptied,
        merged,
        objective,
    };

    if sums.count[0] == 0 || sums.count[1] == 0 {
        return single(true, false, objective);
    }
    // centroids of the final partition
    let finals = [
        mean::<T>(sums.count[0], sums.sx[0], sums.sy[0]),
        mean::<T>(sums.count[1], sums.sx[1], sums.sy[1]),
    ];
    let gap = (finals[0].0 - finals[1].0).hypot(finals[0].1 - finals[1].1);
    if gap < config.merge_distance {
        return single(false, true, objective);
    }

    let mut parts: [Vec<Pixel>; 2] = [
        Vec::with_capacity(sums.count[0] as usize),
        Vec::with_capacity(sums.count[1] as usize),
    ];
    for (p, &l) in pixels.iter().zip(&labels) {
        parts[l as usize].push(*p);
    }
    let [a, b] = parts;
    let (mut left, mut right) = ((a, finals[0]), (b, finals[1]));
    if right.1 .0 < left.1 .0 {
        std::mem::swap(&mut left, &mut right);
    }
    ClusterOutcome {
        clusters: vec![
            HandCluster { pixels: left.0, centroid: left.1, side: HandSide::Left },
            HandCluster { pixels: right.0, centroid: right.1, side: HandSide::Right },
        ],
        iterations,
        converged,
        emptied: false,
        merged: false,
        objective,
    }
}
