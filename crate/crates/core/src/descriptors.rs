//! Radix-2 FFT and the centroid-distance Fourier descriptor.
//!
//! The forward transform is unnormalised,
//! `F[k] = Σ r[t]·exp(-2πi·kt/N)`, and the descriptor keeps
//! `|F[k]| / |F[0]|` for `k = 1..=count`. Dropping phase makes it
//! independent of the contour start point and rotation; dividing by the
//! DC term makes it independent of scale.

use num_complex::Complex;
use thiserror::Error;

use crate::contour::SampledBoundary;
use crate::scalar::Scalar;

/// Number of coefficients in a descriptor.
pub const DEFAULT_COEFFICIENTS: usize = 15;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("signal length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),
    #[error("signature of {len} samples is too short for {count} coefficients")]
    TooShort { len: usize, count: usize },
    #[error("signature has zero DC term")]
    ZeroDC,
}

/// Forward transform of a signal, same length as the input.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    pub values: Vec<Complex<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.values.iter().map(|c| c.norm()).collect()
    }
}

fn bit_reverse_permute<T>(data: &mut [T]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            data.swap(i, j);
        }
    }
}

/// In-place iterative decimation-in-time Cooley–Tukey transform.
fn fft_in_place<T: Scalar>(data: &mut [Complex<T>]) {
    let n = data.len();
    bit_reverse_permute(data);
    // twiddles evaluated directly, not by recurrence, to keep error O(log N)
    let step = -T::TAU() / T::of(n as f64);
    let twiddles: Vec<Complex<T>> = (0..n / 2)
        .map(|k| Complex::from_polar(T::one(), step * T::of(k as f64)))
        .collect();
    let mut size = 2;
    while size <= n {
        let half = size / 2;
        let stride = n / size;
        for block in data.chunks_exact_mut(size) {
            let (lo, hi) = block.split_at_mut(half);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                let t = *b * twiddles[k * stride];
                *b = *a - t;
                *a += t;
            }
        }
        size *= 2;
    }
}

/// Radix-2 FFT of a complex signal whose length is a power of two, N ≥ 2.
pub fn fft<T: Scalar>(signal: &[Complex<T>]) -> Result<Spectrum<T>, DescriptorError> {
    let n = signal.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(DescriptorError::NotPowerOfTwo(n));
    }
    let mut values = signal.to_vec();
    fft_in_place(&mut values);
    Ok(Spectrum { values })
}

/// [`fft`] of a real signal.
pub fn fft_real<T: Scalar>(signal: &[T]) -> Result<Spectrum<T>, DescriptorError> {
    let complex: Vec<Complex<T>> = signal.iter().map(|&r| Complex::new(r, T::zero())).collect();
    fft(&complex)
}

/// The centroid-distance signature `r(t)`: the equal-angle radii.
pub fn centroid_distance_signature<T: Scalar>(boundary: &SampledBoundary<T>) -> Vec<T> {
    boundary.radii.clone()
}

/// Normalised Fourier magnitudes `|F[k]| / |F[0]|`, `k = 1..=count`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierDescriptor<T> {
    pub coefficients: Vec<T>,
}

impl<T: Scalar> FourierDescriptor<T> {
    pub fn new(coefficients: Vec<T>) -> Self {
        Self { coefficients }
    }

    pub fn zeros(count: usize) -> Self {
        Self { coefficients: vec![T::zero(); count] }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn norm(&self) -> T {
        self.coefficients.iter().map(|&c| c * c).sum::<T>().sqrt()
    }
}

/// Descriptor with the standard 15 coefficients.
pub fn descriptor<T: Scalar>(signature: &[T]) -> Result<FourierDescriptor<T>, DescriptorError> {
    descriptor_with(signature, DEFAULT_COEFFICIENTS)
}

pub fn descriptor_with<T: Scalar>(
    signature: &[T],
    count: usize,
) -> Result<FourierDescriptor<T>, DescriptorError> {
    let n = signature.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(DescriptorError::NotPowerOfTwo(n));
    }
    if n <= 2 * count {
        return Err(DescriptorError::TooShort { len: n, count });
    }
    let spectrum = fft_real(signature)?;
    let dc = spectrum.values[0].norm();
    if dc == T::zero() || !dc.is_finite() {
        return Err(DescriptorError::ZeroDC);
    }
    let coefficients = spectrum.values[1..=count].iter().map(|c| c.norm() / dc).collect();
    Ok(FourierDescriptor { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn impulse_is_flat() {
        let mut s = vec![0.0f64; 8];
        s[0] = 1.0;
        let f = fft_real(&s).unwrap();
        assert!(f.values.iter().all(|c| (c - Complex::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn constant_is_dc_only() {
        let c = 3.25f64;
        let f = fft_real(&vec![c; 128]).unwrap();
        assert!((f.values[0].re - 128.0 * c).abs() <= 1e-9 * 128.0 * c);
        assert!(f.values[1..].iter().all(|v| v.norm() <= 1e-9 * 128.0 * c));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert_eq!(fft_real::<f64>(&[1.0; 6]), Err(DescriptorError::NotPowerOfTwo(6)));
        assert_eq!(fft_real::<f64>(&[1.0]), Err(DescriptorError::NotPowerOfTwo(1)));
        assert_eq!(descriptor::<f64>(&[1.0; 16]), Err(DescriptorError::TooShort { len: 16, count: 15 }));
    }

    #[test]
    fn single_cosine() {
        let sig: Vec<f64> = (0..128)
            .map(|t| 10.0 + 2.0 * (std::f64::consts::TAU * t as f64 / 128.0).cos())
            .collect();
        let d = descriptor(&sig).unwrap();
        assert_eq!(d.len(), 15);
        assert!((d.coefficients[0] - 0.1).abs() <= 1e-9);
        assert!(d.coefficients[1..].iter().all(|&c| c <= 1e-9));
    }

    #[test]
    fn constant_and_zero_signatures() {
        let d = descriptor(&[7.0f64; 128]).unwrap();
        assert!(d.coefficients.iter().all(|&c| c <= 1e-12));
        assert_eq!(descriptor(&[0.0f64; 128]), Err(DescriptorError::ZeroDC));
    }

    #[test]
    fn signature_passthrough() {
        let b = SampledBoundary { radii: vec![0.0f64; 64], centroid: (0.0, 0.0), occupied: 0 };
        let s = centroid_distance_signature(&b);
        assert_eq!(s.len(), b.count());
        assert!(s.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn f32_transform() {
        let sig: Vec<f32> = (0..64).map(|t| 5.0 + (t % 3) as f32).collect();
        let d = descriptor(&sig).unwrap();
        assert!(d.coefficients.iter().all(|c| c.is_finite() && *c >= 0.0));
    }
}
