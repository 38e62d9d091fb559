//! Independent numerical oracles for the DSP kernels.
//!
//! The oracles here are deliberately naive (O(N^2) direct DFT, per-bin
//! triangle evaluation) and share no code with the library implementation.

use lded_dsp::{
    frame_signal, hann_window, hz_to_mel, mel_filterbank, mel_spectrogram, mel_to_hz, mfcc,
    stft_magnitude, AudioChunk, MelConfig,
};
use proptest::prelude::*;

/// Direct O(N^2) DFT magnitude of one windowed frame.
fn direct_dft_magnitude(frame: &[f64]) -> Vec<f64> {
    let n = frame.len();
    let mut mags = Vec::with_capacity(n / 2 + 1);
    for k in 0..=n / 2 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &x) in frame.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * k as f64 * i as f64 / n as f64;
            re += x * angle.cos();
            im += x * angle.sin();
        }
        mags.push((re * re + im * im).sqrt());
    }
    mags
}

fn pseudo_random_samples(len: usize, mut state: u64) -> Vec<f32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        out.push(((state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0) as f32);
    }
    out
}

#[test]
fn stft_matches_direct_dft_on_random_frames() {
    let cfg = MelConfig::default();
    let window = hann_window(cfg.fft_size);
    for seed in 1..=5u64 {
        let samples = pseudo_random_samples(cfg.fft_size, seed * 7919);
        let chunk = AudioChunk::new(samples.clone(), 44_100, 0);
        let spec = stft_magnitude(&chunk, &cfg).unwrap();
        assert_eq!(spec.n_frames(), 1);

        let frame: Vec<f64> = samples
            .iter()
            .zip(&window)
            .map(|(s, w)| *s as f64 * w)
            .collect();
        let oracle = direct_dft_magnitude(&frame);
        for (bin, &expected) in oracle.iter().enumerate() {
            let got = spec.values.at(bin, 0);
            let scale = expected.abs().max(1.0);
            assert!(
                (got - expected).abs() / scale < 1e-6,
                "seed {seed} bin {bin}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn parseval_holds_per_frame() {
    let cfg = MelConfig::default();
    let n = cfg.fft_size;
    let window = hann_window(n);
    let samples = pseudo_random_samples(4410, 0xDEADBEEF);
    let chunk = AudioChunk::new(samples.clone(), 44_100, 0);
    let spec = stft_magnitude(&chunk, &cfg).unwrap();

    for j in 0..spec.n_frames() {
        let start = j * cfg.hop;
        let time_energy: f64 = (0..n)
            .map(|k| {
                let v = samples[start + k] as f64 * window[k];
                v * v
            })
            .sum();
        // One-sided magnitudes: double the interior bins to cover the
        // conjugate half, then divide by N.
        let mut freq_energy = spec.values.at(0, j).powi(2) + spec.values.at(n / 2, j).powi(2);
        for bin in 1..n / 2 {
            freq_energy += 2.0 * spec.values.at(bin, j).powi(2);
        }
        freq_energy /= n as f64;
        assert!(
            (time_energy - freq_energy).abs() / time_energy.max(1e-30) < 1e-6,
            "frame {j}: {time_energy} vs {freq_energy}"
        );
    }
}

/// Per-bin triangle formula, written from the filterbank definition:
/// mel-equally-spaced centers snapped to distinct bins, unit peak.
#[test]
fn filterbank_matches_triangle_formula_oracle() {
    let cfg = MelConfig::default();
    let sr = 44_100u32;
    let fb = mel_filterbank(&cfg, sr).unwrap();

    let mel_lo = hz_to_mel(cfg.fmin_hz).unwrap();
    let mel_hi = hz_to_mel(sr as f64 / 2.0).unwrap();
    let n_points = cfg.n_mels + 2;
    let mut bins: Vec<f64> = Vec::new();
    for i in 0..n_points {
        let mel = mel_lo + (mel_hi - mel_lo) * i as f64 / (n_points - 1) as f64;
        let target = (mel_to_hz(mel).unwrap() * cfg.fft_size as f64 / sr as f64)
            .round()
            .min((cfg.n_bins() - 1) as f64);
        let snapped = match bins.last() {
            Some(&prev) => target.max(prev + 1.0),
            None => target,
        };
        bins.push(snapped);
    }

    for m in 0..cfg.n_mels {
        let (left, center, right) = (bins[m], bins[m + 1], bins[m + 2]);
        for k in 0..cfg.n_bins() {
            let kf = k as f64;
            let expected = if kf >= left && kf <= center {
                (kf - left) / (center - left)
            } else if kf > center && kf <= right {
                (right - kf) / (right - center)
            } else {
                0.0
            };
            assert_eq!(fb[m][k], expected, "filter {m} bin {k}");
        }
    }
}

#[test]
fn logmel_equals_composition_of_audited_kernels() {
    let cfg = MelConfig::default();
    let chunk = AudioChunk::new(pseudo_random_samples(4410, 42), 44_100, 0);

    let direct = mel_spectrogram(&chunk, &cfg).unwrap();

    let spec = stft_magnitude(&chunk, &cfg).unwrap();
    let fb = mel_filterbank(&cfg, 44_100).unwrap();
    for m in 0..cfg.n_mels {
        for j in 0..spec.n_frames() {
            let mut acc = 0.0;
            for (k, w) in fb[m].iter().enumerate() {
                if *w != 0.0 {
                    let v = spec.values.at(k, j);
                    acc += w * v * v;
                }
            }
            let expected = (acc + cfg.log_floor).ln();
            assert_eq!(direct.values.at(m, j), expected, "mel {m} frame {j}");
        }
    }
}

#[test]
fn mfcc_is_deterministic_and_pure() {
    let cfg = MelConfig::default();
    let chunk = AudioChunk::new(pseudo_random_samples(4410, 7), 44_100, 0);
    let a = mfcc(&chunk, &cfg).unwrap();
    let b = mfcc(&chunk, &cfg).unwrap();
    assert_eq!(a, b);
}

proptest! {
    /// Inverse-composition oracle over randomized frequencies.
    #[test]
    fn mel_round_trip_is_identity(f in 0.0f64..22_050.0) {
        let back = mel_to_hz(hz_to_mel(f).unwrap()).unwrap();
        let scale = f.abs().max(1.0);
        prop_assert!((back - f).abs() / scale < 1e-9);
    }

    /// Index-arithmetic oracle for chunking.
    #[test]
    fn chunk_count_and_timestamps_follow_arithmetic(
        len in 0usize..40_000,
        chunk_ms in 1u32..400,
        t0 in -1_000_000i64..1_000_000,
    ) {
        let samples = vec![0.0f32; len];
        let chunks = frame_signal(&samples, 44_100, chunk_ms, t0).unwrap();
        let chunk_len = ((44_100u64 * chunk_ms as u64 + 500) / 1000) as usize;
        prop_assert_eq!(chunks.len(), len / chunk_len);
        for (k, c) in chunks.iter().enumerate() {
            prop_assert_eq!(c.samples.len(), chunk_len);
            prop_assert_eq!(c.t_start_us, t0 + k as i64 * chunk_ms as i64 * 1000);
        }
    }
}
