//! Size adaptive region based Huffman coding.
//!
//! The stream is cut into anchored regions, one Huffman code is built over
//! the offsets of all regions, and each region is written as its raw count
//! byte, raw base byte and the coded offsets. Region headers are not byte
//! aligned; only the end of the body is padded.

use crate::bitstream::{BitReader, BitWriter};
use crate::codec::{Decoded, SizeBreakdown};
use crate::container::{self, Header, Mode};
use crate::entropy::{CodeBook, FrequencyTable};
use crate::error::{Error, Result};
use crate::regioner::{self, Span, Window, MAX_REGION_LEN};

/// Bits of raw count and base stored for every region.
pub const REGION_HEADER_BITS: u64 = 16;

struct Plan {
    spans: Vec<Span>,
    // Exact offset counts, and the scaled table the book is built from.
    counts: FrequencyTable,
    table: FrequencyTable,
    book: Option<CodeBook>,
}

fn plan(data: &[u8], window: Window) -> Plan {
    let spans: Vec<Span> = regioner::spans(data, window).collect();
    let mut counts =
        FrequencyTable::new(window.alphabet_size()).expect("window is a valid alphabet");
    let mut tally = vec![0u64; window.alphabet_size()];
    for span in &spans {
        for &b in &data[span.start..span.start + span.len] {
            tally[usize::from(b - span.base)] += 1;
        }
    }
    for (offset, &n) in tally.iter().enumerate() {
        counts
            .set(offset as u8, n)
            .expect("offset within the window");
    }
    let table = counts.scaled_to_byte();
    let book = (!table.is_empty())
        .then(|| CodeBook::from_frequencies(&table).expect("serialized tables yield valid books"));
    Plan {
        spans,
        counts,
        table,
        book,
    }
}

pub fn compress(data: &[u8], window: Window) -> Vec<u8> {
    let Plan {
        spans, table, book, ..
    } = plan(data, window);

    let mut out = Vec::with_capacity(container::FIXED_HEADER_BYTES + data.len() / 2);
    Header {
        mode: Mode::Sarbh,
        param: window.get(),
        original_length: data.len() as u64,
        region_count: u32::try_from(spans.len()).expect("region count fits in 32 bits"),
        distinct_symbols: table.distinct() as u16,
    }
    .write(&mut out);

    let mut w = BitWriter::with_capacity(data.len() / 2 + 64);
    container::write_table(&table, &mut w);
    if let Some(book) = &book {
        for span in &spans {
            w.write_u8(span.len as u8);
            w.write_u8(span.base);
            for &b in &data[span.start..span.start + span.len] {
                book.encode(b - span.base, &mut w)
                    .expect("every offset has a code");
            }
        }
    }
    out.extend(w.finish());
    out
}

/// Payload, table and region-header bits for `data`, computed without
/// building a container.
pub fn size_breakdown(data: &[u8], window: Window) -> SizeBreakdown {
    let Plan {
        spans,
        counts,
        table,
        book,
    } = plan(data, window);
    SizeBreakdown {
        payload_bits: book.map_or(0, |b| b.cost(&counts)),
        table_bits: container::table_bits(table.distinct(), window.alphabet_size()),
        header_bits: REGION_HEADER_BITS * spans.len() as u64,
        original_bits: data.len() as u64 * 8,
    }
}

pub(crate) fn decode(header: &Header, rest: &[u8]) -> Result<Decoded> {
    let window = Window::new(u32::from(header.param))
        .map_err(|_| Error::corrupt(format!("window {} outside 2..=255", header.param)))?;
    let mut r = BitReader::new(rest);
    let k = usize::from(header.distinct_symbols);
    let table = container::read_table(&mut r, k, window.alphabet_size())?;
    let table_bits = container::table_bits(k, window.alphabet_size());

    let regions = u64::from(header.region_count);
    let original_length = header.original_length;
    if (regions == 0) != (original_length == 0) {
        return Err(Error::corrupt(format!(
            "{regions} regions for {original_length} bytes"
        )));
    }
    if original_length > regions * MAX_REGION_LEN as u64 || original_length < regions {
        return Err(Error::corrupt(format!(
            "{original_length} bytes cannot fill {regions} regions"
        )));
    }
    if regions * (REGION_HEADER_BITS + 1) > r.remaining() {
        return Err(Error::Truncated {
            position: r.bit_position(),
            needed: regions * (REGION_HEADER_BITS + 1) - r.remaining(),
        });
    }

    let mut data = Vec::with_capacity(original_length as usize);
    let mut payload_bits = 0u64;
    if regions > 0 {
        if k == 0 {
            return Err(Error::corrupt("regions present but the table is empty"));
        }
        let book = CodeBook::from_frequencies(&table)?;
        for index in 0..regions {
            let count = u64::from(r.read_u8()?);
            let base = r.read_u8()?;
            if count == 0 {
                return Err(Error::corrupt(format!("region {index} is empty")));
            }
            if data.len() as u64 + count > original_length {
                return Err(Error::corrupt(
                    "regions hold more bytes than the header declares",
                ));
            }
            let start = r.bit_position();
            for _ in 0..count {
                let offset = book.decode_symbol(&mut r)?;
                let byte = base.checked_add(offset).ok_or_else(|| {
                    Error::corrupt(format!("base {base} + offset {offset} exceeds 255"))
                })?;
                data.push(byte);
            }
            payload_bits += r.bit_position() - start;
        }
    }
    if data.len() as u64 != original_length {
        return Err(Error::corrupt(format!(
            "regions hold {} bytes, header declares {original_length}",
            data.len()
        )));
    }
    container::expect_end(&r)?;

    Ok(Decoded {
        data,
        breakdown: SizeBreakdown {
            payload_bits,
            table_bits,
            header_bits: REGION_HEADER_BITS * regions,
            original_bits: original_length * 8,
        },
        swaps: Vec::new(),
    })
}
