//! Overlap-add spectral gating.
//!
//! A stand-in denoiser: STFT bins whose magnitude falls below
//! `strength * noise_floor` are attenuated quadratically toward zero, phase
//! is preserved, and the signal is rebuilt by windowed overlap-add. Disabled
//! by default in the synthetic pipeline.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{DspError, Result};
use crate::mel::MelConfig;
use crate::stft::hann_window;

/// Per-bin ceiling of the one-sided STFT magnitudes of a (noise-only)
/// signal, usable as the `noise_floor` argument of
/// [`denoise_spectral_gate`]. The max over frames, not the mean: a gate at
/// `1.0 * floor` should silence bins that never exceeded the reference
/// noise.
pub fn estimate_noise_floor(signal: &[f32], cfg: &MelConfig) -> Result<Vec<f64>> {
    let n = cfg.fft_size;
    if signal.len() < n {
        return Err(DspError::ChunkTooShort {
            len: signal.len(),
            min: n,
        });
    }
    let window = hann_window(n);
    let n_bins = n / 2 + 1;
    let n_frames = 1 + (signal.len() - n) / cfg.hop;

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let mut floor = vec![0.0; n_bins];
    for j in 0..n_frames {
        let start = j * cfg.hop;
        for k in 0..n {
            buf[k] = Complex64::new(signal[start + k] as f64 * window[k], 0.0);
        }
        fft.process(&mut buf);
        for (bin, acc) in floor.iter_mut().enumerate() {
            *acc = acc.max(buf[bin].norm());
        }
    }
    Ok(floor)
}

/// Spectral-gate denoiser with exact-length overlap-add reconstruction.
///
/// `strength` in `[0, 1]` scales the gate threshold; 0 reduces to a plain
/// analysis/synthesis round-trip. The input is reflect-padded so edge
/// samples get full window coverage and the output length equals the input
/// length.
pub fn denoise_spectral_gate(
    signal: &[f32],
    noise_floor: &[f64],
    strength: f64,
    cfg: &MelConfig,
) -> Result<Vec<f32>> {
    let n = cfg.fft_size;
    let hop = cfg.hop;
    let n_bins = n / 2 + 1;
    if noise_floor.len() != n_bins {
        return Err(DspError::NoiseFloorLength {
            expected: n_bins,
            actual: noise_floor.len(),
        });
    }
    if !(0.0..=1.0).contains(&strength) {
        return Err(DspError::InvalidConfig(format!(
            "strength {strength} outside [0, 1]"
        )));
    }
    if hop > n || hop == 0 {
        return Err(DspError::InvalidConfig("hop must be in [1, fft_size]".into()));
    }
    if signal.is_empty() {
        return Ok(Vec::new());
    }

    // Reflect-pad by a full FFT length on both sides.
    let pad = n;
    let len = signal.len();
    let padded_len = len + 2 * pad;
    let reflect = |i: isize| -> f64 {
        let m = (len as isize - 1).max(0);
        let mut idx = i;
        // Fold until inside [0, len); each fold reflects about an edge.
        loop {
            if idx < 0 {
                idx = -idx;
            } else if idx > m {
                idx = 2 * m - idx;
            } else {
                return signal[idx as usize] as f64;
            }
            if m == 0 {
                return signal[0] as f64;
            }
        }
    };
    let padded: Vec<f64> = (0..padded_len)
        .map(|i| reflect(i as isize - pad as isize))
        .collect();

    let window = hann_window(n);
    let n_frames = 1 + (padded_len - n) / hop;

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let ifft = planner.plan_fft_inverse(n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    let mut out = vec![0.0f64; padded_len];
    let mut norm = vec![0.0f64; padded_len];
    for j in 0..n_frames {
        let start = j * hop;
        for k in 0..n {
            buf[k] = Complex64::new(padded[start + k] * window[k], 0.0);
        }
        fft.process(&mut buf);

        if strength > 0.0 {
            for bin in 0..n_bins {
                let threshold = strength * noise_floor[bin];
                if threshold > 0.0 {
                    let mag = buf[bin].norm();
                    if mag < threshold {
                        let gain = (mag / threshold) * (mag / threshold);
                        buf[bin] *= gain;
                        if bin > 0 && bin < n - bin {
                            buf[n - bin] *= gain;
                        }
                    }
                }
            }
        }

        ifft.process(&mut buf);
        for k in 0..n {
            // rustfft's inverse is unnormalized; divide by n here.
            let v = buf[k].re / n as f64;
            out[start + k] += v * window[k];
            norm[start + k] += window[k] * window[k];
        }
    }

    let mut result = Vec::with_capacity(len);
    for i in 0..len {
        let j = i + pad;
        let v = if norm[j] > 1e-12 { out[j] / norm[j] } else { 0.0 };
        result.push(v as f32);
    }
    Ok(result)
}
