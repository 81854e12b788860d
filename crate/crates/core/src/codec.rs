//! Codec selection, mode-dispatching decode, and size accounting.

use std::fmt;

use crate::baselines::{self, RegionSize, SwapRecord};
use crate::container::{Header, Mode, FIXED_HEADER_BYTES};
use crate::error::{Error, Result};
use crate::regioner::Window;
use crate::sarbh;

/// Bit counts of a compressed stream, excluding the fixed container header
/// and byte padding.
///
/// For SARBH `header_bits` is the raw count and base of every region; for
/// RBH it is the per-region swap flag and swapped byte; classical Huffman
/// has none.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub payload_bits: u64,
    pub table_bits: u64,
    pub header_bits: u64,
    pub original_bits: u64,
}

impl SizeBreakdown {
    pub fn total_bits(&self) -> u64 {
        self.payload_bits + self.table_bits + self.header_bits
    }

    /// Ratio over the three accounted terms only.
    pub fn ratio_percent(&self) -> Result<f64> {
        compression_ratio(self.original_bits, self.total_bits())
    }
}

/// `(original - compressed) / original * 100`; negative when the data grew.
pub fn compression_ratio(original_bits: u64, compressed_bits: u64) -> Result<f64> {
    if original_bits == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok((original_bits as f64 - compressed_bits as f64) / original_bits as f64 * 100.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Codec {
    Sarbh(Window),
    Huffman,
    Rbh(RegionSize),
}

impl Codec {
    pub fn mode(&self) -> Mode {
        match self {
            Codec::Sarbh(_) => Mode::Sarbh,
            Codec::Huffman => Mode::Huffman,
            Codec::Rbh(_) => Mode::Rbh,
        }
    }

    pub fn compress(&self, data: &[u8]) -> Vec<u8> {
        match *self {
            Codec::Sarbh(window) => sarbh::compress(data, window),
            Codec::Huffman => baselines::huffman_compress(data),
            Codec::Rbh(size) => baselines::rbh_compress(data, size),
        }
    }
}

impl fmt::Display for Codec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codec::Sarbh(window) => write!(f, "sarbh(r={window})"),
            Codec::Huffman => f.write_str("huffman"),
            Codec::Rbh(size) => write!(f, "rbh(region_size={size})"),
        }
    }
}

pub(crate) struct Decoded {
    pub data: Vec<u8>,
    pub breakdown: SizeBreakdown,
    pub swaps: Vec<SwapRecord>,
}

fn decode(bytes: &[u8]) -> Result<(Header, Decoded)> {
    let (header, rest) = Header::read(bytes)?;
    let decoded = match header.mode {
        Mode::Sarbh => sarbh::decode(&header, rest)?,
        Mode::Huffman => baselines::decode_huffman(&header, rest)?,
        Mode::Rbh => baselines::decode_rbh(&header, rest)?,
    };
    debug_assert_eq!(decoded.data.len() as u64, header.original_length);
    Ok((header, decoded))
}

/// Restores the original bytes of any container; the mode comes from the header.
pub fn decompress(bytes: &[u8]) -> Result<Vec<u8>> {
    decode(bytes).map(|(_, decoded)| decoded.data)
}

/// What a container holds, measured by decoding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerInfo {
    pub header: Header,
    pub breakdown: SizeBreakdown,
    pub file_bits: u64,
    pub swaps: Vec<SwapRecord>,
}

impl ContainerInfo {
    pub fn fixed_header_bits(&self) -> u64 {
        FIXED_HEADER_BYTES as u64 * 8
    }

    /// Zero bits used to byte-align the table and the body.
    pub fn padding_bits(&self) -> u64 {
        self.file_bits - self.fixed_header_bits() - self.breakdown.total_bits()
    }
}

pub fn inspect(bytes: &[u8]) -> Result<ContainerInfo> {
    let (header, decoded) = decode(bytes)?;
    Ok(ContainerInfo {
        header,
        breakdown: decoded.breakdown,
        file_bits: bytes.len() as u64 * 8,
        swaps: decoded.swaps,
    })
}
