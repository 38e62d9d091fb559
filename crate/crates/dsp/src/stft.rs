//! Short-time Fourier analysis over Hann-windowed frames.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::chunk::AudioChunk;
use crate::error::{DspError, Result};
use crate::matrix::Matrix;
use crate::mel::MelConfig;

/// Magnitude (or log-magnitude) time-frequency map with per-row center
/// frequencies and per-column frame-center times.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrogram {
    pub values: Matrix,
    pub bin_freqs_hz: Vec<f64>,
    pub frame_times_s: Vec<f64>,
}

impl Spectrogram {
    pub fn n_bins(&self) -> usize {
        self.values.rows()
    }

    pub fn n_frames(&self) -> usize {
        self.values.cols()
    }
}

/// Periodic Hann window of length `n`: `0.5 * (1 - cos(2*pi*k/n))`.
pub fn hann_window(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos()))
        .collect()
}

/// Number of analysis frames for a signal of `len` samples.
pub fn frame_count(len: usize, fft_size: usize, hop: usize) -> usize {
    if len < fft_size {
        0
    } else {
        1 + (len - fft_size) / hop
    }
}

/// One-sided STFT magnitudes of a chunk.
///
/// Frame `j` covers samples `[j*hop, j*hop + fft_size)` windowed by a
/// periodic Hann window; rows are the `fft_size/2 + 1` magnitudes of the
/// one-sided DFT. The chunk must hold at least one full frame.
pub fn stft_magnitude(chunk: &AudioChunk, cfg: &MelConfig) -> Result<Spectrogram> {
    cfg.validate(chunk.sample_rate_hz)?;
    let n = cfg.fft_size;
    if chunk.samples.len() < n {
        return Err(DspError::ChunkTooShort {
            len: chunk.samples.len(),
            min: n,
        });
    }

    let sr = chunk.sample_rate_hz as f64;
    let window = hann_window(n);
    let n_bins = n / 2 + 1;
    let n_frames = frame_count(chunk.samples.len(), n, cfg.hop);

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];

    let mut values = Matrix::zeros(n_bins, n_frames);
    for j in 0..n_frames {
        let start = j * cfg.hop;
        for k in 0..n {
            buf[k] = Complex64::new(chunk.samples[start + k] as f64 * window[k], 0.0);
        }
        fft.process(&mut buf);
        for bin in 0..n_bins {
            values.set(bin, j, buf[bin].norm());
        }
    }

    let bin_freqs_hz = (0..n_bins).map(|b| b as f64 * sr / n as f64).collect();
    let frame_times_s = (0..n_frames)
        .map(|j| (j * cfg.hop + n / 2) as f64 / sr)
        .collect();

    Ok(Spectrogram {
        values,
        bin_freqs_hz,
        frame_times_s,
    })
}
