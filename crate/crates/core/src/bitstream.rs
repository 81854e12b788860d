//! MSB-first bit writer and reader over in-memory byte buffers.
//!
//! Bits fill each byte from the most significant position down. The writer
//! zero-pads the final byte; readers never interpret pad bits because every
//! count they need is stored explicitly by the container.

use crate::error::{Error, Result};

/// Widest field accepted by [`BitWriter::write_bits`] and [`BitReader::read_bits`].
pub const MAX_WIDTH: u32 = 32;

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buffer: Vec<u8>,
    // Pending bits, right-aligned; fewer than 8 between calls.
    acc: u64,
    pending: u32,
    bit_position: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bytes: usize) -> Self {
        BitWriter {
            buffer: Vec::with_capacity(bytes),
            ..Self::default()
        }
    }

    /// Number of bits written so far, padding from [`align_to_byte`](Self::align_to_byte) included.
    pub fn bit_position(&self) -> u64 {
        self.bit_position
    }

    /// Appends the `width` low-order bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u32, width: u32) -> Result<()> {
        if width > MAX_WIDTH {
            return Err(Error::usage(format!(
                "bit width {width} exceeds {MAX_WIDTH}"
            )));
        }
        if width < 32 && value >> width != 0 {
            return Err(Error::usage(format!(
                "value {value:#x} does not fit in {width} bits"
            )));
        }
        self.push(value, width);
        Ok(())
    }

    #[inline]
    pub(crate) fn push(&mut self, value: u32, width: u32) {
        debug_assert!(width <= MAX_WIDTH);
        if width == 0 {
            return;
        }
        self.acc = (self.acc << width) | u64::from(value);
        self.pending += width;
        self.bit_position += u64::from(width);
        while self.pending >= 8 {
            self.pending -= 8;
            self.buffer.push((self.acc >> self.pending) as u8);
        }
        self.acc &= (1u64 << self.pending) - 1;
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.push(u32::from(bit), 1);
    }

    pub fn write_u8(&mut self, value: u8) {
        self.push(u32::from(value), 8);
    }

    /// Pads with zero bits up to the next byte boundary.
    pub fn align_to_byte(&mut self) {
        if self.pending > 0 {
            self.push(0, 8 - self.pending);
        }
    }

    pub fn finish(mut self) -> Vec<u8> {
        self.align_to_byte();
        self.buffer
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    buffer: &'a [u8],
    bit_position: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(buffer: &'a [u8]) -> Self {
        BitReader {
            buffer,
            bit_position: 0,
        }
    }

    pub fn bit_position(&self) -> u64 {
        self.bit_position
    }

    pub fn bit_len(&self) -> u64 {
        self.buffer.len() as u64 * 8
    }

    pub fn remaining(&self) -> u64 {
        self.bit_len() - self.bit_position
    }

    fn ensure(&self, width: u64) -> Result<()> {
        if self.remaining() < width {
            return Err(Error::Truncated {
                position: self.bit_position,
                needed: width - self.remaining(),
            });
        }
        Ok(())
    }

    /// Returns the next `width` bits without consuming them; bits past the
    /// end of the buffer read as zero.
    #[inline]
    pub(crate) fn peek(&self, width: u32) -> u32 {
        debug_assert!(width <= MAX_WIDTH);
        if width == 0 {
            return 0;
        }
        let byte = (self.bit_position / 8) as usize;
        let shift = (self.bit_position % 8) as u32;
        let mut window = [0u8; 8];
        let available = self.buffer.len().saturating_sub(byte).min(5);
        window[3..3 + available].copy_from_slice(&self.buffer[byte..byte + available]);
        // 40 meaningful bits occupy the low end of the big-endian word.
        let word = u64::from_be_bytes(window);
        ((word >> (40 - shift - width)) & ((1u64 << width) - 1)) as u32
    }

    #[inline]
    pub(crate) fn skip(&mut self, width: u32) {
        self.bit_position += u64::from(width);
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u32> {
        if width > MAX_WIDTH {
            return Err(Error::usage(format!(
                "bit width {width} exceeds {MAX_WIDTH}"
            )));
        }
        self.ensure(u64::from(width))?;
        let value = self.peek(width);
        self.skip(width);
        Ok(value)
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        Ok(self.read_bits(1)? == 1)
    }

    pub fn read_u8(&mut self) -> Result<u8> {
        Ok(self.read_bits(8)? as u8)
    }

    /// Skips to the next byte boundary.
    pub fn align_to_byte(&mut self) -> Result<()> {
        let pad = (8 - self.bit_position % 8) % 8;
        self.ensure(pad)?;
        self.bit_position += pad;
        Ok(())
    }

    /// True when every bit from the cursor to the end of the buffer is zero.
    pub fn rest_is_zero(&self) -> bool {
        let byte = (self.bit_position / 8) as usize;
        let shift = self.bit_position % 8;
        let Some(&first) = self.buffer.get(byte) else {
            return true;
        };
        let head_mask = 0xffu8 >> shift;
        first & head_mask == 0 && self.buffer[byte + 1..].iter().all(|&b| b == 0)
    }
}
