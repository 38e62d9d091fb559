use thiserror::Error;

/// Errors produced by the DSP kernels and WAV codec.
#[derive(Debug, Error)]
pub enum DspError {
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error("chunk of {len} samples is shorter than the required minimum of {min}")]
    ChunkTooShort { len: usize, min: usize },

    #[error("negative frequency {0} Hz is outside the mel scale domain")]
    NegativeFrequency(f64),

    #[error("negative mel value {0} is outside the inverse mel domain")]
    NegativeMel(f64),

    #[error(
        "{n_mels} mel filters cannot be resolved by a {fft_size}-point FFT: \
         adjacent filters collapse onto the same bin"
    )]
    FilterbankResolution { n_mels: usize, fft_size: usize },

    #[error("noise floor has {actual} bins, expected fft_size/2+1 = {expected}")]
    NoiseFloorLength { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed WAV: {0}")]
    Wav(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, DspError>;
