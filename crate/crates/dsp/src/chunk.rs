//! Fixed-duration audio chunks and the framing operation that produces them.

use crate::error::{DspError, Result};

/// A contiguous run of audio samples carrying its own timestamp.
///
/// Amplitudes are nominally in `[-1, 1]`. The timestamp is the time of the
/// first sample, in integer microseconds; all pipeline timing is integer
/// microsecond arithmetic so chunk boundaries stay exact.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioChunk {
    pub samples: Vec<f32>,
    pub sample_rate_hz: u32,
    pub t_start_us: i64,
}

impl AudioChunk {
    pub fn new(samples: Vec<f32>, sample_rate_hz: u32, t_start_us: i64) -> Self {
        Self {
            samples,
            sample_rate_hz,
            t_start_us,
        }
    }

    /// Chunk duration in microseconds (floor of the exact value).
    pub fn duration_us(&self) -> i64 {
        (self.samples.len() as i64) * 1_000_000 / self.sample_rate_hz as i64
    }

    /// Timestamp one past the last sample, `t_start_us + duration`.
    pub fn t_end_us(&self) -> i64 {
        self.t_start_us + self.duration_us()
    }
}

/// Split a signal into consecutive non-overlapping chunks of `chunk_ms`.
///
/// The trailing partial chunk is discarded so every chunk has exactly
/// `round(sample_rate_hz * chunk_ms / 1000)` samples. Chunk `k` is stamped
/// `t0_us + k * chunk_ms * 1000`. An empty input yields an empty vector; a
/// non-finite sample is rejected with its index.
pub fn frame_signal(
    samples: &[f32],
    sample_rate_hz: u32,
    chunk_ms: u32,
    t0_us: i64,
) -> Result<Vec<AudioChunk>> {
    if sample_rate_hz == 0 {
        return Err(DspError::InvalidConfig("sample_rate_hz must be > 0".into()));
    }
    if chunk_ms == 0 {
        return Err(DspError::InvalidConfig("chunk_ms must be > 0".into()));
    }
    if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
        return Err(DspError::NonFiniteSample { index });
    }

    let chunk_len = ((sample_rate_hz as u64 * chunk_ms as u64 + 500) / 1000) as usize;
    let n_chunks = samples.len() / chunk_len;
    let mut chunks = Vec::with_capacity(n_chunks);
    for k in 0..n_chunks {
        let start = k * chunk_len;
        chunks.push(AudioChunk::new(
            samples[start..start + chunk_len].to_vec(),
            sample_rate_hz,
            t0_us + k as i64 * chunk_ms as i64 * 1000,
        ));
    }
    Ok(chunks)
}
