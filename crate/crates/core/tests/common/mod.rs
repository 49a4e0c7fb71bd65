#![allow(dead_code)]

use num_complex::Complex;
use numsign::classify::{GestureTemplate, HandTag, TemplateSet};
use numsign::frames::{synth_frame, SynthSpec};
use numsign::geometry::HandSide;
use numsign::pipeline::{describe, PipelineConfig};

/// Direct O(N²) evaluation of F[k] = Σ x[t]·exp(-2πi·kt/N).
pub fn naive_dft(x: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(t, &v)| {
                    // reduce kt mod N first so the angle stays small and exact
                    let phase = ((k * t) % n) as f64 / n as f64;
                    v * Complex::from_polar(1.0, -std::f64::consts::TAU * phase)
                })
                .sum()
        })
        .collect()
}

/// ‖a − b‖₂ / ‖b‖₂.
pub fn relative_error(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Spec for frame `i` of a dataset: frame pairs share a seed and swap the
/// leading hand.
pub fn dataset_spec(number: u8, i: usize, base_seed: u64, jitter: f64) -> SynthSpec {
    SynthSpec {
        jitter,
        seed: base_seed + (i / 2) as u64,
        side: if i.is_multiple_of(2) { HandSide::Right } else { HandSide::Left },
        ..SynthSpec::for_number(number, 0)
    }
}

/// Enrols every hand of every spec under its generator label.
pub fn enroll(specs: &[SynthSpec], config: &PipelineConfig<f64>) -> TemplateSet<f64> {
    let mut templates = Vec::new();
    for spec in specs {
        let (frame, truth) = synth_frame(spec).unwrap();
        let descs = describe(&frame, config).unwrap();
        assert_eq!(descs.len(), truth.labels.len(), "{spec:?}");
        for ((_, label), (side, d)) in truth.labels.iter().zip(descs) {
            templates.push(GestureTemplate {
                label: *label,
                descriptor: d,
                signer: Some(format!("seed{}", spec.seed)),
                hand: HandTag::from(side),
            });
        }
    }
    TemplateSet::new(templates)
}

/// The 40-frame training specs: 8 per number 1–5 (4 seeds × 2 hands).
pub fn training_specs(jitter: f64) -> Vec<SynthSpec> {
    (1..=5u8).flat_map(|n| (0..8).map(move |i| dataset_spec(n, i, 0, jitter))).collect()
}
