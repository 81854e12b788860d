//! Reference codecs: classical whole-file Huffman and fixed-region RBH.
//!
//! Both build one canonical code over the byte frequencies of the entire
//! input. RBH additionally splits the input into regions of a fixed size and,
//! for every region whose most frequent byte has a longer code than the
//! file's most frequent byte, exchanges those two codes for that region only.
//! A region is written as a swap flag bit, the swapped byte when the flag is
//! set, and the region's coded bytes.

use std::fmt;

use crate::bitstream::{BitReader, BitWriter};
use crate::codec::{Decoded, SizeBreakdown};
use crate::container::{self, Header, Mode};
use crate::entropy::{count_frequencies, CodeBook, FrequencyTable, MAX_ALPHABET};
use crate::error::{Error, Result};

pub const DEFAULT_REGION_SIZE: u8 = 10;

/// Fixed RBH region length, stored in the container's one-byte parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegionSize(u8);

impl RegionSize {
    pub fn new(size: usize) -> Result<Self> {
        match u8::try_from(size) {
            Ok(s) if s >= 1 => Ok(RegionSize(s)),
            _ => Err(Error::usage(format!("region size {size} outside 1..=255"))),
        }
    }

    pub fn get(self) -> usize {
        usize::from(self.0)
    }
}

impl Default for RegionSize {
    fn default() -> Self {
        RegionSize(DEFAULT_REGION_SIZE)
    }
}

impl fmt::Display for RegionSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A region that was coded with its most frequent byte exchanged against
/// the file's most frequent byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    pub region_index: u32,
    pub swapped_symbol: u8,
}

/// Most frequent byte of a region; ties go to the smaller byte.
pub fn region_max_symbol(region: &[u8]) -> Result<u8> {
    if region.is_empty() {
        return Err(Error::usage("region is empty"));
    }
    let mut counts = [0u32; MAX_ALPHABET];
    for &b in region {
        counts[usize::from(b)] += 1;
    }
    let (symbol, _) =
        counts.iter().enumerate().fold(
            (0, 0),
            |best, (s, &c)| if c > best.1 { (s, c) } else { best },
        );
    Ok(symbol as u8)
}

struct GlobalCode {
    table: FrequencyTable,
    book: Option<CodeBook>,
}

fn global_code(data: &[u8]) -> GlobalCode {
    let table = count_frequencies(data, MAX_ALPHABET)
        .expect("bytes fit the byte alphabet")
        .scaled_to_byte();
    let book = (!table.is_empty())
        .then(|| CodeBook::from_frequencies(&table).expect("serialized tables yield valid books"));
    GlobalCode { table, book }
}

fn finish(header: Header, table: &FrequencyTable, body: impl FnOnce(&mut BitWriter)) -> Vec<u8> {
    let mut out = Vec::with_capacity(container::FIXED_HEADER_BYTES);
    header.write(&mut out);
    let mut w = BitWriter::new();
    container::write_table(table, &mut w);
    body(&mut w);
    out.extend(w.finish());
    out
}

pub fn huffman_compress(data: &[u8]) -> Vec<u8> {
    let GlobalCode { table, book } = global_code(data);
    let header = Header {
        mode: Mode::Huffman,
        param: 0,
        original_length: data.len() as u64,
        region_count: 0,
        distinct_symbols: table.distinct() as u16,
    };
    finish(header, &table, |w| {
        if let Some(book) = &book {
            book.encode_all(data, w).expect("every byte has a code");
        }
    })
}

/// `a <-> b` exchange, identity elsewhere.
#[inline]
fn exchange(symbol: u8, a: u8, b: u8) -> u8 {
    if symbol == a {
        b
    } else if symbol == b {
        a
    } else {
        symbol
    }
}

/// The regions whose codes get exchanged, in order.
pub fn rbh_swaps(data: &[u8], region_size: RegionSize) -> Vec<SwapRecord> {
    let GlobalCode { table, book } = global_code(data);
    let Some(book) = book else {
        return Vec::new();
    };
    let global_max = table.most_frequent().expect("nonempty table");
    plan_swaps(data, region_size, &book, global_max)
}

fn plan_swaps(
    data: &[u8],
    region_size: RegionSize,
    book: &CodeBook,
    global_max: u8,
) -> Vec<SwapRecord> {
    data.chunks(region_size.get())
        .enumerate()
        .filter_map(|(index, region)| {
            let local_max = region_max_symbol(region).expect("chunks are nonempty");
            (book.length(local_max) > book.length(global_max)).then_some(SwapRecord {
                region_index: index as u32,
                swapped_symbol: local_max,
            })
        })
        .collect()
}

pub fn rbh_compress(data: &[u8], region_size: RegionSize) -> Vec<u8> {
    let GlobalCode { table, book } = global_code(data);
    let regions = data.len().div_ceil(region_size.get());
    let header = Header {
        mode: Mode::Rbh,
        param: region_size.0,
        original_length: data.len() as u64,
        region_count: u32::try_from(regions).expect("region count fits in 32 bits"),
        distinct_symbols: table.distinct() as u16,
    };
    finish(header, &table, |w| {
        let Some(book) = &book else { return };
        let global_max = table.most_frequent().expect("nonempty table");
        let swaps = plan_swaps(data, region_size, book, global_max);
        let mut swaps = swaps.iter().peekable();
        for (index, region) in data.chunks(region_size.get()).enumerate() {
            match swaps.next_if(|s| s.region_index as usize == index) {
                Some(swap) => {
                    let local_max = swap.swapped_symbol;
                    w.write_bit(true);
                    w.write_u8(local_max);
                    for &b in region {
                        book.encode(exchange(b, local_max, global_max), w)
                            .expect("every byte has a code");
                    }
                }
                None => {
                    w.write_bit(false);
                    book.encode_all(region, w).expect("every byte has a code");
                }
            }
        }
    })
}

fn read_global(header: &Header, r: &mut BitReader<'_>) -> Result<GlobalCode> {
    let k = usize::from(header.distinct_symbols);
    let table = container::read_table(r, k, MAX_ALPHABET)?;
    if header.original_length > 0 && k == 0 {
        return Err(Error::corrupt("input bytes present but the table is empty"));
    }
    let book = (k > 0)
        .then(|| CodeBook::from_frequencies(&table))
        .transpose()?;
    Ok(GlobalCode { table, book })
}

// Every coded byte takes at least one bit.
fn check_length_fits(header: &Header, r: &BitReader<'_>) -> Result<()> {
    if header.original_length > r.remaining() {
        return Err(Error::Truncated {
            position: r.bit_position(),
            needed: header.original_length - r.remaining(),
        });
    }
    Ok(())
}

pub(crate) fn decode_huffman(header: &Header, rest: &[u8]) -> Result<Decoded> {
    if header.param != 0 || header.region_count != 0 {
        return Err(Error::corrupt(
            "huffman containers carry no parameter or regions",
        ));
    }
    let mut r = BitReader::new(rest);
    let GlobalCode { table, book } = read_global(header, &mut r)?;
    check_length_fits(header, &r)?;
    let start = r.bit_position();
    let data = match &book {
        Some(book) => book.decode_all(&mut r, header.original_length as usize)?,
        None => Vec::new(),
    };
    let payload_bits = r.bit_position() - start;
    container::expect_end(&r)?;
    Ok(Decoded {
        data,
        breakdown: SizeBreakdown {
            payload_bits,
            table_bits: container::table_bits(table.distinct(), MAX_ALPHABET),
            header_bits: 0,
            original_bits: header.original_length * 8,
        },
        swaps: Vec::new(),
    })
}

pub(crate) fn decode_rbh(header: &Header, rest: &[u8]) -> Result<Decoded> {
    let region_size =
        RegionSize::new(usize::from(header.param)).map_err(|_| Error::corrupt("region size 0"))?;
    let expected_regions = header.original_length.div_ceil(region_size.get() as u64);
    if u64::from(header.region_count) != expected_regions {
        return Err(Error::corrupt(format!(
            "{} regions declared, {expected_regions} expected",
            header.region_count
        )));
    }
    let mut r = BitReader::new(rest);
    let GlobalCode { table, book } = read_global(header, &mut r)?;
    check_length_fits(header, &r)?;

    let mut data = Vec::with_capacity(header.original_length as usize);
    let mut swaps = Vec::new();
    let mut side_bits = 0u64;
    let mut payload_bits = 0u64;
    if let Some(book) = &book {
        let global_max = table.most_frequent().expect("nonempty table");
        let total = header.original_length as usize;
        for index in 0..header.region_count {
            let len = region_size.get().min(total - data.len());
            let side_start = r.bit_position();
            let swapped = if r.read_bit()? {
                let local_max = r.read_u8()?;
                if book.length(local_max) <= book.length(global_max) {
                    return Err(Error::corrupt(format!(
                        "region {index} swaps {local_max}, which needs no swap"
                    )));
                }
                swaps.push(SwapRecord {
                    region_index: index,
                    swapped_symbol: local_max,
                });
                Some(local_max)
            } else {
                None
            };
            let start = r.bit_position();
            side_bits += start - side_start;
            match swapped {
                Some(local_max) => {
                    for _ in 0..len {
                        let s = book.decode_symbol(&mut r)?;
                        data.push(exchange(s, local_max, global_max));
                    }
                }
                None => {
                    for _ in 0..len {
                        data.push(book.decode_symbol(&mut r)?);
                    }
                }
            }
            payload_bits += r.bit_position() - start;
        }
    }
    container::expect_end(&r)?;
    Ok(Decoded {
        data,
        breakdown: SizeBreakdown {
            payload_bits,
            table_bits: container::table_bits(table.distinct(), MAX_ALPHABET),
            header_bits: side_bits,
            original_bits: header.original_length * 8,
        },
        swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{decompress, inspect};

    fn size(n: usize) -> RegionSize {
        RegionSize::new(n).unwrap()
    }

    #[test]
    fn region_max_ties_go_low() {
        assert_eq!(region_max_symbol(b"CACBA").unwrap(), b'A');
        assert_eq!(region_max_symbol(b"BBBA").unwrap(), b'B');
        assert_eq!(region_max_symbol(b"ZZZZ").unwrap(), b'Z');
        assert!(matches!(region_max_symbol(b""), Err(Error::Usage(_))));
    }

    #[test]
    fn region_size_bounds() {
        assert!(RegionSize::new(0).is_err());
        assert!(RegionSize::new(256).is_err());
        assert_eq!(RegionSize::default().get(), 10);
    }

    #[test]
    fn single_symbol_file_costs_one_bit_per_byte() {
        let data = vec![b'q'; 1000];
        let bytes = huffman_compress(&data);
        let info = inspect(&bytes).unwrap();
        assert_eq!(info.breakdown.payload_bits, 1000);
        assert_eq!(decompress(&bytes).unwrap(), data);
    }

    #[test]
    fn huffman_payload_matches_book_cost() {
        let data = b"CACBABCBCACBACBABABACBBADDBEB";
        let info = inspect(&huffman_compress(data)).unwrap();
        let ft = count_frequencies(data, 256).unwrap();
        let book = CodeBook::from_frequencies(&ft).unwrap();
        assert_eq!(info.breakdown.payload_bits, book.cost(&ft));
    }

    #[test]
    fn no_swaps_when_regions_agree_with_the_file() {
        // Every region of 4 is dominated by 'a', the file's most frequent byte.
        let data = b"aabcaabdaacbaadd";
        assert!(rbh_swaps(data, size(4)).is_empty());
        let rbh = inspect(&rbh_compress(data, size(4))).unwrap();
        let huff = inspect(&huffman_compress(data)).unwrap();
        assert_eq!(rbh.breakdown.payload_bits, huff.breakdown.payload_bits);
        assert_eq!(rbh.breakdown.header_bits, 4);
    }

    #[test]
    fn swap_pays_off_for_a_locally_dominant_rare_symbol() {
        // Region 0: a x16, b x2, c x2. Region 1: z x8, a x6, b x3, c x3.
        // Totals a:22 z:8 b:5 c:5 give lengths a=1 z=2 b=3 c=3.
        let mut data = b"aaaabaaaacaaaabaaaac".to_vec();
        data.extend_from_slice(b"zazbzazczazbzazcaabc");
        let region_size = size(20);
        let swaps = rbh_swaps(&data, region_size);
        assert_eq!(
            swaps,
            [SwapRecord {
                region_index: 1,
                swapped_symbol: b'z'
            }]
        );

        let ft = count_frequencies(&data, 256).unwrap();
        let book = CodeBook::from_frequencies(&ft).unwrap();
        let lengths: Vec<u8> = b"azbc".iter().map(|&s| book.length(s)).collect();
        assert_eq!(lengths, [1, 2, 3, 3]);
        let region = &data[20..];
        let plain: u64 = region.iter().map(|&b| u64::from(book.length(b))).sum();
        let swapped: u64 = region
            .iter()
            .map(|&b| u64::from(book.length(exchange(b, b'z', b'a'))))
            .sum();
        assert_eq!((plain, swapped), (40, 38));

        let bytes = rbh_compress(&data, region_size);
        let info = inspect(&bytes).unwrap();
        assert_eq!(info.swaps, swaps);
        assert_eq!(info.breakdown.payload_bits, 28 + 38);
        assert_eq!(info.breakdown.header_bits, 1 + 1 + 8);
        assert_eq!(
            inspect(&huffman_compress(&data))
                .unwrap()
                .breakdown
                .payload_bits,
            28 + 40
        );
        assert_eq!(decompress(&bytes).unwrap(), data);
    }

    #[test]
    fn exchange_matches_the_swapped_book() {
        let data = b"the quick brown fox jumps over the lazy dog, zzzzzzzz";
        let ft = count_frequencies(data, 256).unwrap();
        let book = CodeBook::from_frequencies(&ft).unwrap();
        let global_max = ft.most_frequent().unwrap();
        let swapped = book.swapped(b'z', global_max).unwrap();
        let region = b"zzzzzzzz o";

        let mut via_map = BitWriter::new();
        for &b in region {
            book.encode(exchange(b, b'z', global_max), &mut via_map)
                .unwrap();
        }
        let mut via_book = BitWriter::new();
        swapped.encode_all(region, &mut via_book).unwrap();
        let bits = via_book.bit_position();
        assert_eq!(via_map.bit_position(), bits);
        let encoded = via_book.finish();
        assert_eq!(via_map.finish(), encoded);

        let mut r = BitReader::new(&encoded);
        assert_eq!(swapped.decode_all(&mut r, region.len()).unwrap(), region);
        let restored = swapped.swapped(b'z', global_max).unwrap();
        assert_eq!(restored, book);
    }

    #[test]
    fn rbh_corruption_is_detected() {
        let data = b"abababababzzzzzzzzzz";
        let bytes = rbh_compress(data, size(5));
        let mut bad = bytes.clone();
        bad[6] = 0;
        assert!(matches!(decompress(&bad), Err(Error::Corrupt(_))));
        let mut bad = bytes.clone();
        bad[6] = 7;
        assert!(decompress(&bad).is_err());
        let mut bad = bytes;
        bad.extend_from_slice(&[0, 0]);
        assert!(matches!(decompress(&bad), Err(Error::Corrupt(_))));
    }

    #[test]
    fn empty_inputs() {
        for bytes in [huffman_compress(&[]), rbh_compress(&[], size(10))] {
            assert_eq!(bytes.len(), container::FIXED_HEADER_BYTES);
            assert!(decompress(&bytes).unwrap().is_empty());
        }
    }
}
