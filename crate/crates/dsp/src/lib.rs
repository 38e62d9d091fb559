//! Deterministic DSP kernels for the acoustic side of the monitoring stack:
//! audio chunking, short-time Fourier analysis, mel/MFCC features, a
//! spectral-gate denoiser, and a small mono WAV codec.
//!
//! Every kernel is a pure function over immutable inputs — same inputs give
//! bitwise-identical outputs — so callers may fan work out across threads
//! without coordination.

mod chunk;
mod denoise;
mod error;
mod matrix;
mod mel;
mod stft;
pub mod wav;

pub use chunk::{frame_signal, AudioChunk};
pub use denoise::{denoise_spectral_gate, estimate_noise_floor};
pub use error::{DspError, Result};
pub use matrix::Matrix;
pub use mel::{dct2_orthonormal, hz_to_mel, mel_filterbank, mel_spectrogram, mel_to_hz, mfcc, MelConfig};
pub use stft::{frame_count, hann_window, stft_magnitude, Spectrogram};
