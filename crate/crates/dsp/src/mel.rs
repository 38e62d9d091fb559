//! Mel-scale filterbank, log-mel spectrogram, and MFCC features.

use crate::chunk::AudioChunk;
use crate::error::{DspError, Result};
use crate::matrix::Matrix;
use crate::stft::{stft_magnitude, Spectrogram};

/// Parameters shared by the STFT, mel, and MFCC kernels.
///
/// Defaults are chosen so a 100 ms chunk at 44.1 kHz yields 31 frames:
/// a 64x31 log-mel map and a 20x31 MFCC map.
#[derive(Debug, Clone, PartialEq)]
pub struct MelConfig {
    pub fft_size: usize,
    pub hop: usize,
    pub n_mels: usize,
    pub fmin_hz: f64,
    /// Upper filterbank edge; `None` means Nyquist.
    pub fmax_hz: Option<f64>,
    pub log_floor: f64,
    pub n_mfcc: usize,
}

impl Default for MelConfig {
    fn default() -> Self {
        Self {
            fft_size: 512,
            hop: 128,
            n_mels: 64,
            fmin_hz: 0.0,
            fmax_hz: None,
            log_floor: 1e-10,
            n_mfcc: 20,
        }
    }
}

impl MelConfig {
    pub fn fmax(&self, sample_rate_hz: u32) -> f64 {
        self.fmax_hz.unwrap_or(sample_rate_hz as f64 / 2.0)
    }

    pub fn n_bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    pub fn validate(&self, sample_rate_hz: u32) -> Result<()> {
        if self.fft_size == 0 || self.hop == 0 {
            return Err(DspError::InvalidConfig("fft_size and hop must be > 0".into()));
        }
        if self.hop > self.fft_size {
            return Err(DspError::InvalidConfig(format!(
                "hop {} exceeds fft_size {}",
                self.hop, self.fft_size
            )));
        }
        let fmax = self.fmax(sample_rate_hz);
        if !(self.fmin_hz >= 0.0 && self.fmin_hz < fmax) {
            return Err(DspError::InvalidConfig(format!(
                "fmin {} must lie in [0, fmax {})",
                self.fmin_hz, fmax
            )));
        }
        if fmax > sample_rate_hz as f64 / 2.0 {
            return Err(DspError::InvalidConfig(format!(
                "fmax {} exceeds Nyquist {}",
                fmax,
                sample_rate_hz as f64 / 2.0
            )));
        }
        if self.n_mels == 0 {
            return Err(DspError::InvalidConfig("n_mels must be > 0".into()));
        }
        if self.n_mfcc > self.n_mels {
            return Err(DspError::InvalidConfig(format!(
                "n_mfcc {} exceeds n_mels {}",
                self.n_mfcc, self.n_mels
            )));
        }
        Ok(())
    }
}

/// Frequency in Hz to mel, HTK convention `2595 * log10(1 + f/700)`.
pub fn hz_to_mel(f_hz: f64) -> Result<f64> {
    if f_hz < 0.0 {
        return Err(DspError::NegativeFrequency(f_hz));
    }
    Ok(2595.0 * (1.0 + f_hz / 700.0).log10())
}

/// Inverse of [`hz_to_mel`]: `700 * (10^(m/2595) - 1)`.
pub fn mel_to_hz(m: f64) -> Result<f64> {
    if m < 0.0 {
        return Err(DspError::NegativeMel(m));
    }
    Ok(700.0 * (10f64.powf(m / 2595.0) - 1.0))
}

/// The `n_mels + 2` breakpoint bins (left edge, centers, right edge) of the
/// filterbank, strictly increasing.
pub fn filterbank_breakpoints(cfg: &MelConfig, sample_rate_hz: u32) -> Result<Vec<usize>> {
    let n_bins = cfg.n_bins();
    let sr = sample_rate_hz as f64;
    let mel_lo = hz_to_mel(cfg.fmin_hz)?;
    let mel_hi = hz_to_mel(cfg.fmax(sample_rate_hz))?;
    let n_points = cfg.n_mels + 2;
    if n_points > n_bins {
        return Err(DspError::FilterbankResolution {
            n_mels: cfg.n_mels,
            fft_size: cfg.fft_size,
        });
    }
    let mut bins = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let mel = mel_lo + (mel_hi - mel_lo) * i as f64 / (n_points - 1) as f64;
        let hz = mel_to_hz(mel)?;
        let target = ((hz * cfg.fft_size as f64 / sr).round() as usize).min(n_bins - 1);
        let bin = match bins.last() {
            Some(&prev) => target.max(prev + 1),
            None => target,
        };
        if bin >= n_bins {
            return Err(DspError::FilterbankResolution {
                n_mels: cfg.n_mels,
                fft_size: cfg.fft_size,
            });
        }
        bins.push(bin);
    }
    Ok(bins)
}

/// Triangular mel filterbank, one row per filter over the one-sided bins.
///
/// Filter centers are targeted at equal mel spacing between `fmin` and
/// `fmax` and snapped to distinct FFT bins (a center colliding with its
/// predecessor is bumped up one bin, which matters only where the mel grid
/// is finer than the bin grid). Each triangle peaks at exactly 1.0 on its
/// center bin, and adjacent triangles are exactly complementary between
/// centers. Fails when the FFT cannot give every filter its own center bin.
pub fn mel_filterbank(cfg: &MelConfig, sample_rate_hz: u32) -> Result<Vec<Vec<f64>>> {
    cfg.validate(sample_rate_hz)?;
    let n_bins = cfg.n_bins();
    let bins = filterbank_breakpoints(cfg, sample_rate_hz)?;

    let mut rows = Vec::with_capacity(cfg.n_mels);
    for m in 0..cfg.n_mels {
        let (left, center, right) = (bins[m], bins[m + 1], bins[m + 2]);
        let mut row = vec![0.0; n_bins];
        for k in left..=center {
            row[k] = (k - left) as f64 / (center - left) as f64;
        }
        for k in center..=right {
            row[k] = (right - k) as f64 / (right - center) as f64;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Natural-log mel spectrogram: `ln(filterbank * |stft|^2 + log_floor)`.
pub fn mel_spectrogram(chunk: &AudioChunk, cfg: &MelConfig) -> Result<Spectrogram> {
    let spec = stft_magnitude(chunk, cfg)?;
    let fb = mel_filterbank(cfg, chunk.sample_rate_hz)?;
    let n_frames = spec.n_frames();

    let mut values = Matrix::zeros(cfg.n_mels, n_frames);
    for (m, row) in fb.iter().enumerate() {
        for j in 0..n_frames {
            let mut acc = 0.0;
            for (k, w) in row.iter().enumerate() {
                if *w != 0.0 {
                    let mag = spec.values.at(k, j);
                    acc += w * mag * mag;
                }
            }
            values.set(m, j, (acc + cfg.log_floor).ln());
        }
    }

    // Row centers: the mel-spaced filter center frequencies.
    let mel_lo = hz_to_mel(cfg.fmin_hz)?;
    let mel_hi = hz_to_mel(cfg.fmax(chunk.sample_rate_hz))?;
    let n_points = cfg.n_mels + 2;
    let mut center_freqs = Vec::with_capacity(cfg.n_mels);
    for m in 1..=cfg.n_mels {
        let mel = mel_lo + (mel_hi - mel_lo) * m as f64 / (n_points - 1) as f64;
        center_freqs.push(mel_to_hz(mel)?);
    }

    Ok(Spectrogram {
        values,
        bin_freqs_hz: center_freqs,
        frame_times_s: spec.frame_times_s,
    })
}

/// Orthonormal DCT-II matrix of size `n x n`.
///
/// Row `k`: `s_k * cos(pi * (i + 0.5) * k / n)` with `s_0 = sqrt(1/n)` and
/// `s_k = sqrt(2/n)` otherwise, so `D * D^T = I`.
pub fn dct2_orthonormal(n: usize) -> Matrix {
    let mut d = Matrix::zeros(n, n);
    for k in 0..n {
        let scale = if k == 0 {
            (1.0 / n as f64).sqrt()
        } else {
            (2.0 / n as f64).sqrt()
        };
        for i in 0..n {
            let angle = std::f64::consts::PI * (i as f64 + 0.5) * k as f64 / n as f64;
            d.set(k, i, scale * angle.cos());
        }
    }
    d
}

/// Mel-frequency cepstral coefficients: orthonormal DCT-II of each log-mel
/// column, keeping the first `n_mfcc` coefficients. Shape `n_mfcc x n_frames`.
pub fn mfcc(chunk: &AudioChunk, cfg: &MelConfig) -> Result<Matrix> {
    let logmel = mel_spectrogram(chunk, cfg)?;
    let dct = dct2_orthonormal(cfg.n_mels);
    let n_frames = logmel.n_frames();

    let mut out = Matrix::zeros(cfg.n_mfcc, n_frames);
    for j in 0..n_frames {
        for k in 0..cfg.n_mfcc {
            let mut acc = 0.0;
            for i in 0..cfg.n_mels {
                acc += dct.at(k, i) * logmel.values.at(i, j);
            }
            out.set(k, j, acc);
        }
    }
    Ok(out)
}
