//! Bit-granular reading and writing over byte buffers.
//!
//! Bit order is MSB-first within each byte. Reads past the end of the
//! buffer zero-fill the missing low-order bits and report that padding
//! happened; writes extend the buffer as needed. [`frame_payload`] and
//! [`unframe_payload`] add and strip the 4-byte big-endian length header
//! that makes a decoded bit stream self-delimiting.

use crate::{Error, Result};

/// Positioned reader/writer over a byte buffer with sub-byte granularity.
///
/// A cursor is single-owner mutable state: reads and writes share one
/// bit position. `0 <= bit_position <= 8 * buffer.len()` always holds.
#[derive(Debug, Clone, Default)]
pub struct BitCursor {
    buffer: Vec<u8>,
    bit_position: usize,
}

impl BitCursor {
    /// Empty cursor, ready for writing.
    pub fn new() -> Self {
        Self::default()
    }

    /// Cursor positioned at the start of `bytes`, ready for reading.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self {
            buffer: bytes,
            bit_position: 0,
        }
    }

    /// Current position in bits from the start of the buffer.
    pub fn bit_position(&self) -> usize {
        self.bit_position
    }

    /// Bits left between the cursor and the end of the buffer.
    pub fn bits_remaining(&self) -> usize {
        self.buffer.len() * 8 - self.bit_position
    }

    /// Move the cursor back to the start without touching the buffer.
    pub fn rewind(&mut self) {
        self.bit_position = 0;
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.buffer
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buffer
    }

    /// Read the next `n` bits (1..=32) as an unsigned integer, MSB-first.
    ///
    /// If fewer than `n` bits remain, the missing low-order bits are
    /// zero-filled, the cursor stops at the end of the buffer, and the
    /// returned flag is true.
    pub fn read_bits(&mut self, n: u32) -> Result<(u32, bool)> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidBitCount(n));
        }
        let total = self.buffer.len() * 8;
        let mut value: u64 = 0;
        let mut got: u32 = 0;
        while got < n && self.bit_position < total {
            let byte = self.buffer[self.bit_position / 8] as u64;
            let offset = (self.bit_position % 8) as u32;
            let avail = 8 - offset;
            let take = avail.min(n - got);
            let chunk = (byte >> (avail - take)) & ((1u64 << take) - 1);
            value = (value << take) | chunk;
            got += take;
            self.bit_position += take as usize;
        }
        let padded = got < n;
        value <<= n - got;
        Ok((value as u32, padded))
    }

    /// Append the low `n` bits (1..=32) of `value`, MSB-first. Bits of
    /// `value` above position `n` are ignored.
    ///
    /// Writing starts at the cursor: positions inside the buffer are
    /// overwritten, positions past the end extend it.
    pub fn write_bits(&mut self, value: u32, n: u32) -> Result<()> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidBitCount(n));
        }
        let value = (value as u64) & ((1u64 << n) - 1);
        let end = self.bit_position + n as usize;
        let needed_bytes = end.div_ceil(8);
        if self.buffer.len() < needed_bytes {
            self.buffer.resize(needed_bytes, 0);
        }
        let mut left = n;
        while left > 0 {
            let offset = (self.bit_position % 8) as u32;
            let room = 8 - offset;
            let put = room.min(left);
            let chunk = ((value >> (left - put)) & ((1u64 << put) - 1)) as u8;
            let shift = room - put;
            let mask = (((1u16 << put) - 1) as u8) << shift;
            let byte = &mut self.buffer[self.bit_position / 8];
            *byte = (*byte & !mask) | (chunk << shift);
            left -= put;
            self.bit_position += put as usize;
        }
        Ok(())
    }
}

/// Prefix `payload` with a 4-byte big-endian byte-length header.
pub fn frame_payload(payload: &[u8]) -> Result<Vec<u8>> {
    let len = u32::try_from(payload.len()).map_err(|_| Error::PayloadTooLarge(payload.len()))?;
    let mut framed = Vec::with_capacity(payload.len() + 4);
    framed.extend_from_slice(&len.to_be_bytes());
    framed.extend_from_slice(payload);
    Ok(framed)
}

/// Exact inverse of [`frame_payload`]. Trailing bytes beyond the declared
/// length are ignored (they are padding from bit-group alignment).
pub fn unframe_payload(framed: &[u8]) -> Result<Vec<u8>> {
    if framed.len() < 4 {
        return Err(Error::MalformedFrame(format!(
            "buffer of {} bytes is shorter than the 4-byte header",
            framed.len()
        )));
    }
    let len = u32::from_be_bytes([framed[0], framed[1], framed[2], framed[3]]) as usize;
    if framed.len() - 4 < len {
        return Err(Error::MalformedFrame(format!(
            "header declares {len} payload bytes but only {} are present",
            framed.len() - 4
        )));
    }
    Ok(framed[4..4 + len].to_vec())
}
