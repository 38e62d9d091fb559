//! Minimal mono WAV codec.
//!
//! Writes RIFF format 3 (IEEE float32, little-endian) or format 1 (PCM16);
//! reads either, normalizing PCM16 to `[-1, 1)` by dividing by 32768. The
//! sample rate always comes from the header.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{DspError, Result};

fn chunk_header(id: &[u8; 4], size: u32) -> [u8; 8] {
    let mut h = [0u8; 8];
    h[..4].copy_from_slice(id);
    h[4..].copy_from_slice(&size.to_le_bytes());
    h
}

fn write_header<W: Write>(
    w: &mut W,
    format: u16,
    bits: u16,
    sample_rate: u32,
    data_len: u32,
) -> Result<()> {
    let block_align = bits / 8; // mono
    let byte_rate = sample_rate * block_align as u32;
    w.write_all(&chunk_header(b"RIFF", 36 + data_len))?;
    w.write_all(b"WAVE")?;
    w.write_all(&chunk_header(b"fmt ", 16))?;
    w.write_all(&format.to_le_bytes())?;
    w.write_all(&1u16.to_le_bytes())?; // channels
    w.write_all(&sample_rate.to_le_bytes())?;
    w.write_all(&byte_rate.to_le_bytes())?;
    w.write_all(&block_align.to_le_bytes())?;
    w.write_all(&bits.to_le_bytes())?;
    w.write_all(&chunk_header(b"data", data_len))?;
    Ok(())
}

/// Write mono IEEE float32 WAV.
pub fn write_wav_f32(path: &Path, samples: &[f32], sample_rate: u32) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, 3, 32, sample_rate, (samples.len() * 4) as u32)?;
    for s in samples {
        w.write_all(&s.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Write mono PCM16 WAV; samples are clamped to `[-1, 1]` and scaled by 32767.
pub fn write_wav_pcm16(path: &Path, samples: &[f32], sample_rate: u32) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, 1, 16, sample_rate, (samples.len() * 2) as u32)?;
    for s in samples {
        let v = (s.clamp(-1.0, 1.0) * 32767.0).round() as i16;
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Read a mono WAV (format 1 or 3), returning samples and the header rate.
pub fn read_wav(path: &Path) -> Result<(Vec<f32>, u32)> {
    let mut r = BufReader::new(File::open(path)?);
    let mut riff = [0u8; 12];
    r.read_exact(&mut riff)
        .map_err(|_| DspError::Wav("file too short for RIFF header".into()))?;
    if &riff[..4] != b"RIFF" || &riff[8..12] != b"WAVE" {
        return Err(DspError::Wav("not a RIFF/WAVE file".into()));
    }

    let mut format = 0u16;
    let mut bits = 0u16;
    let mut channels = 0u16;
    let mut sample_rate = 0u32;
    let mut data: Option<Vec<u8>> = None;

    loop {
        let mut head = [0u8; 8];
        match r.read_exact(&mut head) {
            Ok(()) => {}
            Err(_) => break,
        }
        let id = [head[0], head[1], head[2], head[3]];
        let size = u32::from_le_bytes([head[4], head[5], head[6], head[7]]) as usize;
        match &id {
            b"fmt " => {
                let mut body = vec![0u8; size];
                r.read_exact(&mut body)
                    .map_err(|_| DspError::Wav("truncated fmt chunk".into()))?;
                if body.len() < 16 {
                    return Err(DspError::Wav("fmt chunk too small".into()));
                }
                format = u16::from_le_bytes([body[0], body[1]]);
                channels = u16::from_le_bytes([body[2], body[3]]);
                sample_rate = u32::from_le_bytes([body[4], body[5], body[6], body[7]]);
                bits = u16::from_le_bytes([body[14], body[15]]);
            }
            b"data" => {
                let mut body = vec![0u8; size];
                r.read_exact(&mut body)
                    .map_err(|_| DspError::Wav("truncated data chunk".into()))?;
                data = Some(body);
            }
            _ => {
                // Skip unknown chunks (word-aligned).
                let skip = size + (size & 1);
                std::io::copy(&mut r.by_ref().take(skip as u64), &mut std::io::sink())?;
            }
        }
        if size & 1 == 1 && id == *b"data" {
            let mut pad = [0u8; 1];
            let _ = r.read_exact(&mut pad);
        }
    }

    let data = data.ok_or_else(|| DspError::Wav("missing data chunk".into()))?;
    if channels != 1 {
        return Err(DspError::Wav(format!("expected mono, got {channels} channels")));
    }
    if sample_rate == 0 {
        return Err(DspError::Wav("missing or zero sample rate".into()));
    }

    let samples = match (format, bits) {
        (3, 32) => data
            .chunks_exact(4)
            .map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            .collect(),
        (1, 16) => data
            .chunks_exact(2)
            .map(|b| i16::from_le_bytes([b[0], b[1]]) as f32 / 32768.0)
            .collect(),
        (f, b) => {
            return Err(DspError::Wav(format!(
                "unsupported format {f} with {b} bits (need float32 or PCM16)"
            )))
        }
    };
    Ok((samples, sample_rate))
}
