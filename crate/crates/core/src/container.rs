//! Container layout shared by every codec.
//!
//! ```text
//! magic "SARB" | version u8 | mode u8 | param u8 | original_length u64 LE
//! | region_count u32 LE | k u16 LE
//! | table: k x (symbol: w bits, freq: 8 bits), zero-padded to a byte
//! | body bit stream, zero-padded to a byte
//! ```
//!
//! `w = ceil(log2(alphabet_size))`. Table entries are in ascending symbol
//! order and every stored frequency is in `1..=255`.

use std::fmt;
use std::str::FromStr;

use crate::bitstream::{BitReader, BitWriter};
use crate::entropy::{FrequencyTable, MAX_SERIALIZED_FREQ};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"SARB";
pub const VERSION: u8 = 1;

/// Bytes before the frequency table.
pub const FIXED_HEADER_BYTES: usize = 4 + 1 + 1 + 1 + 8 + 4 + 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Mode {
    Sarbh = 0,
    Huffman = 1,
    Rbh = 2,
}

impl Mode {
    pub fn from_byte(b: u8) -> Result<Self> {
        match b {
            0 => Ok(Mode::Sarbh),
            1 => Ok(Mode::Huffman),
            2 => Ok(Mode::Rbh),
            other => Err(Error::UnknownMode(other)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Sarbh => "sarbh",
            Mode::Huffman => "huffman",
            Mode::Rbh => "rbh",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sarbh" => Ok(Mode::Sarbh),
            "huffman" => Ok(Mode::Huffman),
            "rbh" => Ok(Mode::Rbh),
            _ => Err(Error::usage(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub mode: Mode,
    pub param: u8,
    pub original_length: u64,
    pub region_count: u32,
    pub distinct_symbols: u16,
}

impl Header {
    pub fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.mode as u8);
        out.push(self.param);
        out.extend_from_slice(&self.original_length.to_le_bytes());
        out.extend_from_slice(&self.region_count.to_le_bytes());
        out.extend_from_slice(&self.distinct_symbols.to_le_bytes());
    }

    /// Parses the fixed header and returns it with the remaining bytes.
    pub fn read(bytes: &[u8]) -> Result<(Header, &[u8])> {
        if bytes.len() < 4 {
            return Err(Error::Truncated {
                position: bytes.len() as u64 * 8,
                needed: (4 - bytes.len() as u64) * 8,
            });
        }
        let magic: [u8; 4] = bytes[..4].try_into().expect("four bytes");
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        if bytes.len() < FIXED_HEADER_BYTES {
            return Err(Error::Truncated {
                position: bytes.len() as u64 * 8,
                needed: (FIXED_HEADER_BYTES - bytes.len()) as u64 * 8,
            });
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        let header = Header {
            mode: Mode::from_byte(bytes[5])?,
            param: bytes[6],
            original_length: u64::from_le_bytes(bytes[7..15].try_into().expect("eight bytes")),
            region_count: u32::from_le_bytes(bytes[15..19].try_into().expect("four bytes")),
            distinct_symbols: u16::from_le_bytes(bytes[19..21].try_into().expect("two bytes")),
        };
        Ok((header, &bytes[FIXED_HEADER_BYTES..]))
    }
}

/// Bits per table symbol field for an alphabet: `ceil(log2(size))`.
pub fn symbol_width(alphabet_size: usize) -> u32 {
    debug_assert!(alphabet_size >= 1);
    usize::BITS - (alphabet_size - 1).leading_zeros()
}

/// Unpadded size of a serialized table with `k` entries.
pub fn table_bits(k: usize, alphabet_size: usize) -> u64 {
    k as u64 * u64::from(symbol_width(alphabet_size) + 8)
}

/// Writes the nonzero entries of an already scaled table and pads to a byte.
pub fn write_table(table: &FrequencyTable, w: &mut BitWriter) {
    let width = symbol_width(table.alphabet_size());
    for (symbol, freq) in table.present() {
        debug_assert!(freq <= MAX_SERIALIZED_FREQ);
        w.push(u32::from(symbol), width);
        w.push(freq as u32, 8);
    }
    w.align_to_byte();
}

/// Reads `k` table entries and the padding after them.
pub fn read_table(r: &mut BitReader<'_>, k: usize, alphabet_size: usize) -> Result<FrequencyTable> {
    if k > alphabet_size {
        return Err(Error::corrupt(format!(
            "{k} table entries for an alphabet of {alphabet_size}"
        )));
    }
    let width = symbol_width(alphabet_size);
    let mut table = FrequencyTable::new(alphabet_size)?;
    let mut previous: Option<u32> = None;
    for _ in 0..k {
        let symbol = r.read_bits(width)?;
        let freq = r.read_bits(8)?;
        if symbol as usize >= alphabet_size {
            return Err(Error::corrupt(format!(
                "table symbol {symbol} outside alphabet of {alphabet_size}"
            )));
        }
        if previous.is_some_and(|p| p >= symbol) {
            return Err(Error::corrupt("table symbols out of order"));
        }
        if freq == 0 {
            return Err(Error::corrupt(format!(
                "zero frequency for symbol {symbol}"
            )));
        }
        previous = Some(symbol);
        table.set(symbol as u8, u64::from(freq))?;
    }
    let pad = ((8 - r.bit_position() % 8) % 8) as u32;
    if r.read_bits(pad)? != 0 {
        return Err(Error::corrupt("nonzero table padding"));
    }
    Ok(table)
}

/// Verifies that the body ended at `r` with only zero padding after it.
pub fn expect_end(r: &BitReader<'_>) -> Result<()> {
    if r.remaining() >= 8 {
        return Err(Error::corrupt(format!(
            "{} trailing bytes after the body",
            r.remaining() / 8
        )));
    }
    if !r.rest_is_zero() {
        return Err(Error::corrupt("nonzero body padding"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_widths() {
        assert_eq!(symbol_width(1), 0);
        assert_eq!(symbol_width(2), 1);
        assert_eq!(symbol_width(16), 4);
        assert_eq!(symbol_width(17), 5);
        assert_eq!(symbol_width(32), 5);
        assert_eq!(symbol_width(255), 8);
        assert_eq!(symbol_width(256), 8);
        assert_eq!(table_bits(4, 16), 48);
    }

    #[test]
    fn header_layout_is_little_endian() {
        let header = Header {
            mode: Mode::Rbh,
            param: 10,
            original_length: 0x0102,
            region_count: 3,
            distinct_symbols: 0x0104,
        };
        let mut out = Vec::new();
        header.write(&mut out);
        assert_eq!(out.len(), FIXED_HEADER_BYTES);
        assert_eq!(
            out,
            [b'S', b'A', b'R', b'B', 1, 2, 10, 2, 1, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 4, 1]
        );
        let (parsed, rest) = Header::read(&out).unwrap();
        assert_eq!(parsed, header);
        assert!(rest.is_empty());
    }

    #[test]
    fn header_errors() {
        assert_eq!(
            Header::read(b"ZIP!....").unwrap_err(),
            Error::BadMagic(*b"ZIP!")
        );
        assert!(matches!(Header::read(b"SA"), Err(Error::Truncated { .. })));
        assert!(matches!(
            Header::read(b"SARB\x01"),
            Err(Error::Truncated { .. })
        ));
        let mut out = Vec::new();
        Header {
            mode: Mode::Sarbh,
            param: 16,
            original_length: 0,
            region_count: 0,
            distinct_symbols: 0,
        }
        .write(&mut out);
        let mut bad = out.clone();
        bad[4] = 9;
        assert_eq!(
            Header::read(&bad).unwrap_err(),
            Error::UnsupportedVersion(9)
        );
        let mut bad = out;
        bad[5] = 7;
        assert_eq!(Header::read(&bad).unwrap_err(), Error::UnknownMode(7));
    }

    #[test]
    fn table_roundtrip_and_validation() {
        let mut counts = vec![0u64; 16];
        counts[..4].copy_from_slice(&[11, 10, 3, 6]);
        let table = FrequencyTable::from_counts(counts).unwrap();
        let mut w = BitWriter::new();
        write_table(&table, &mut w);
        assert_eq!(w.bit_position(), 48);
        let buf = w.finish();
        assert_eq!(buf, [0x00, 0xb1, 0x0a, 0x20, 0x33, 0x06]);
        let mut r = BitReader::new(&buf);
        assert_eq!(read_table(&mut r, 4, 16).unwrap(), table);
        assert!(matches!(
            read_table(&mut BitReader::new(&buf), 5, 16),
            Err(Error::Truncated { .. })
        ));

        // Symbols 1 then 0: out of order.
        let mut w = BitWriter::new();
        w.write_bits(1, 4).unwrap();
        w.write_bits(5, 8).unwrap();
        w.write_bits(0, 4).unwrap();
        w.write_bits(5, 8).unwrap();
        let buf = w.finish();
        assert!(matches!(
            read_table(&mut BitReader::new(&buf), 2, 16),
            Err(Error::Corrupt(_))
        ));
        assert!(matches!(
            read_table(&mut BitReader::new(&buf), 17, 16),
            Err(Error::Corrupt(_))
        ));
    }

    #[test]
    fn mode_names() {
        for mode in [Mode::Sarbh, Mode::Huffman, Mode::Rbh] {
            assert_eq!(mode.name().parse::<Mode>().unwrap(), mode);
            assert_eq!(Mode::from_byte(mode as u8).unwrap(), mode);
        }
        assert!("lzw".parse::<Mode>().is_err());
    }
}
