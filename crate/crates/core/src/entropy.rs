//! Frequency counting, Huffman code lengths and canonical prefix codes.
//!
//! Alphabets hold at most 256 symbols, so a symbol is always a `u8`: an
//! offset within a region for SARBH, or a raw byte for the baselines.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::bitstream::{BitReader, BitWriter, MAX_WIDTH};
use crate::error::{Error, Result};

/// Largest alphabet any codec uses.
pub const MAX_ALPHABET: usize = 256;

/// Codes longer than this cannot be written in a single bit field.
pub const MAX_CODE_LEN: u8 = MAX_WIDTH as u8;

/// Largest frequency a serialized table entry can carry.
pub const MAX_SERIALIZED_FREQ: u64 = 255;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequencyTable {
    counts: Vec<u64>,
}

impl FrequencyTable {
    /// All-zero table over `alphabet_size` symbols.
    pub fn new(alphabet_size: usize) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        Ok(FrequencyTable {
            counts: vec![0; alphabet_size],
        })
    }

    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        check_alphabet(counts.len())?;
        Ok(FrequencyTable { counts })
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, symbol: u8) -> u64 {
        self.counts.get(usize::from(symbol)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, symbol: u8, count: u64) -> Result<()> {
        let slot = self
            .counts
            .get_mut(usize::from(symbol))
            .ok_or_else(|| Error::usage(format!("symbol {symbol} outside the alphabet")))?;
        *slot = count;
        Ok(())
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Symbols with a nonzero count, ascending.
    pub fn present(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(s, &c)| (s as u8, c))
    }

    /// Number of distinct symbols with a nonzero count.
    pub fn distinct(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Most frequent symbol; ties go to the smaller symbol.
    pub fn most_frequent(&self) -> Option<u8> {
        self.present()
            .max_by_key(|&(s, c)| (c, Reverse(s)))
            .map(|(s, _)| s)
    }

    /// The table as it is stored in a container: every count fits in eight
    /// bits. When the largest count exceeds 255, each nonzero count becomes
    /// `max(1, count * 255 / max_count)`; otherwise the table is unchanged.
    pub fn scaled_to_byte(&self) -> FrequencyTable {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        if max <= MAX_SERIALIZED_FREQ {
            return self.clone();
        }
        let counts = self
            .counts
            .iter()
            .map(|&c| match c {
                0 => 0,
                c => ((u128::from(c) * 255 / u128::from(max)) as u64).max(1),
            })
            .collect();
        FrequencyTable { counts }
    }
}

fn check_alphabet(size: usize) -> Result<()> {
    if size == 0 || size > MAX_ALPHABET {
        return Err(Error::usage(format!(
            "alphabet size {size} outside 1..={MAX_ALPHABET}"
        )));
    }
    Ok(())
}

/// Counts occurrences of each symbol.
pub fn count_frequencies(symbols: &[u8], alphabet_size: usize) -> Result<FrequencyTable> {
    let mut table = FrequencyTable::new(alphabet_size)?;
    for &s in symbols {
        let slot = table.counts.get_mut(usize::from(s)).ok_or_else(|| {
            Error::usage(format!("symbol {s} outside alphabet of {alphabet_size}"))
        })?;
        *slot += 1;
    }
    Ok(table)
}

/// Huffman code lengths for every symbol of the table's alphabet.
///
/// Absent symbols get length 0 and a lone present symbol gets length 1.
/// Nodes are ordered by `(weight, creation order)`, with the leaves created
/// first in ascending symbol order, so equal inputs always give equal output.
pub fn build_code_lengths(table: &FrequencyTable) -> Result<Vec<u8>> {
    let leaves: Vec<(u8, u64)> = table.present().collect();
    let mut lengths = vec![0u8; table.alphabet_size()];
    match leaves.len() {
        0 => return Err(Error::EmptySource),
        1 => {
            lengths[usize::from(leaves[0].0)] = 1;
            return Ok(lengths);
        }
        _ => {}
    }

    // Node ids are creation order; leaves then internal nodes.
    let mut parent: Vec<usize> = vec![usize::MAX; leaves.len()];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = leaves
        .iter()
        .enumerate()
        .map(|(id, &(_, w))| Reverse((w, id)))
        .collect();
    while heap.len() > 1 {
        let Reverse((wa, a)) = heap.pop().expect("heap holds two nodes");
        let Reverse((wb, b)) = heap.pop().expect("heap holds two nodes");
        let id = parent.len();
        parent.push(usize::MAX);
        parent[a] = id;
        parent[b] = id;
        heap.push(Reverse((wa + wb, id)));
    }

    // Parents are always created after their children.
    let mut depth = vec![0u32; parent.len()];
    for id in (0..parent.len() - 1).rev() {
        depth[id] = depth[parent[id]] + 1;
    }
    for (id, &(symbol, _)) in leaves.iter().enumerate() {
        lengths[usize::from(symbol)] = depth[id] as u8;
    }
    Ok(lengths)
}

const LUT_BITS: u8 = 10;

/// A canonical prefix code over an alphabet of at most 256 symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeBook {
    lengths: Vec<u8>,
    codes: Vec<u32>,
    // Present symbols in canonical (length, symbol) order.
    sorted: Vec<u8>,
    // Per length: first canonical code, number of codes, index of the first in `sorted`.
    first_code: [u32; MAX_CODE_LEN as usize + 1],
    length_count: [u16; MAX_CODE_LEN as usize + 1],
    first_index: [u16; MAX_CODE_LEN as usize + 1],
    max_len: u8,
    lut_bits: u8,
    // (length << 8 | symbol); 0 marks a prefix of a long code or an unused pattern.
    lut: Vec<u16>,
}

impl fmt::Debug for CodeBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for s in self.present() {
            map.entry(&s, &self.code_string(s).unwrap_or_default());
        }
        map.finish()
    }
}

impl CodeBook {
    /// Assigns canonical codes: symbols sorted by `(length, symbol)` receive
    /// consecutive values, shifted left whenever the length grows.
    pub fn from_lengths(lengths: &[u8]) -> Result<Self> {
        check_alphabet(lengths.len())?;
        if let Some(&l) = lengths.iter().find(|&&l| l > MAX_CODE_LEN) {
            return Err(Error::InvalidLengths(format!(
                "length {l} exceeds {MAX_CODE_LEN}"
            )));
        }
        let kraft: u64 = lengths
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| 1u64 << (MAX_CODE_LEN - l))
            .sum();
        if kraft > 1u64 << MAX_CODE_LEN {
            return Err(Error::InvalidLengths("Kraft sum exceeds 1".into()));
        }

        let mut sorted: Vec<u8> = (0..lengths.len())
            .filter(|&s| lengths[s] > 0)
            .map(|s| s as u8)
            .collect();
        sorted.sort_by_key(|&s| (lengths[usize::from(s)], s));

        let mut codes = vec![0u32; lengths.len()];
        let mut first_code = [0u32; MAX_CODE_LEN as usize + 1];
        let mut length_count = [0u16; MAX_CODE_LEN as usize + 1];
        let mut first_index = [0u16; MAX_CODE_LEN as usize + 1];
        let mut code: u64 = 0;
        let mut prev_len = 0u8;
        for (index, &s) in sorted.iter().enumerate() {
            let len = lengths[usize::from(s)];
            code <<= len - prev_len;
            if length_count[usize::from(len)] == 0 {
                first_code[usize::from(len)] = code as u32;
                first_index[usize::from(len)] = index as u16;
            }
            length_count[usize::from(len)] += 1;
            codes[usize::from(s)] = code as u32;
            code += 1;
            prev_len = len;
        }

        let max_len = prev_len;
        let lut_bits = max_len.min(LUT_BITS);
        let mut book = CodeBook {
            lengths: lengths.to_vec(),
            codes,
            sorted,
            first_code,
            length_count,
            first_index,
            max_len,
            lut_bits,
            lut: Vec::new(),
        };
        book.rebuild_lut();
        Ok(book)
    }

    /// Lengths from [`build_code_lengths`], then canonical codes.
    pub fn from_frequencies(table: &FrequencyTable) -> Result<Self> {
        Self::from_lengths(&build_code_lengths(table)?)
    }

    fn rebuild_lut(&mut self) {
        let mut lut = vec![0u16; 1usize << self.lut_bits];
        for s in self.present() {
            let len = self.lengths[usize::from(s)];
            if len > self.lut_bits {
                continue;
            }
            let spread = self.lut_bits - len;
            let start = (self.codes[usize::from(s)] as usize) << spread;
            let entry = u16::from(len) << 8 | u16::from(s);
            lut[start..start + (1usize << spread)].fill(entry);
        }
        self.lut = lut;
    }

    pub fn alphabet_size(&self) -> usize {
        self.lengths.len()
    }

    /// Code length of `symbol`; 0 when it has no code.
    pub fn length(&self, symbol: u8) -> u8 {
        self.lengths.get(usize::from(symbol)).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> &[u8] {
        &self.lengths
    }

    /// `(code, length)` for a present symbol.
    pub fn code(&self, symbol: u8) -> Option<(u32, u8)> {
        match self.length(symbol) {
            0 => None,
            len => Some((self.codes[usize::from(symbol)], len)),
        }
    }

    /// The code as a string of `0`/`1`, most significant bit first.
    pub fn code_string(&self, symbol: u8) -> Option<String> {
        self.code(symbol)
            .map(|(code, len)| format!("{:0width$b}", code, width = usize::from(len)))
    }

    /// Present symbols, ascending.
    pub fn present(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.lengths.len())
            .filter(|&s| self.lengths[s] > 0)
            .map(|s| s as u8)
    }

    pub fn max_len(&self) -> u8 {
        self.max_len
    }

    /// Σ count · length over the table; the payload size in bits.
    pub fn cost(&self, table: &FrequencyTable) -> u64 {
        table
            .present()
            .map(|(s, c)| c * u64::from(self.length(s)))
            .sum()
    }

    /// A copy in which the codes of `a` and `b` are exchanged.
    pub fn swapped(&self, a: u8, b: u8) -> Result<Self> {
        if self.length(a) == 0 || self.length(b) == 0 {
            return Err(Error::UnknownSymbol(
                if self.length(a) == 0 { a } else { b }.into(),
            ));
        }
        let mut book = self.clone();
        let (ia, ib) = (usize::from(a), usize::from(b));
        book.lengths.swap(ia, ib);
        book.codes.swap(ia, ib);
        for s in &mut book.sorted {
            if *s == a {
                *s = b;
            } else if *s == b {
                *s = a;
            }
        }
        book.rebuild_lut();
        Ok(book)
    }

    #[inline]
    pub fn encode(&self, symbol: u8, w: &mut BitWriter) -> Result<()> {
        let len = self.length(symbol);
        if len == 0 {
            return Err(Error::UnknownSymbol(symbol.into()));
        }
        w.push(self.codes[usize::from(symbol)], u32::from(len));
        Ok(())
    }

    /// Appends the codes of every symbol in order.
    pub fn encode_all(&self, symbols: &[u8], w: &mut BitWriter) -> Result<()> {
        symbols.iter().try_for_each(|&s| self.encode(s, w))
    }

    /// Reads one codeword and returns its symbol.
    #[inline]
    pub fn decode_symbol(&self, r: &mut BitReader<'_>) -> Result<u8> {
        let entry = self.lut[r.peek(u32::from(self.lut_bits)) as usize];
        if entry != 0 {
            let len = u32::from(entry >> 8);
            if u64::from(len) > r.remaining() {
                return Err(truncated(r, len));
            }
            r.skip(len);
            return Ok(entry as u8);
        }
        self.decode_slow(r)
    }

    fn decode_slow(&self, r: &mut BitReader<'_>) -> Result<u8> {
        let max_len = u32::from(self.max_len);
        let bits = r.peek(max_len);
        let mut code = 0u32;
        for len in 1..=max_len {
            code = (code << 1) | ((bits >> (max_len - len)) & 1);
            let count = u32::from(self.length_count[len as usize]);
            let first = self.first_code[len as usize];
            if count > 0 && code >= first && code - first < count {
                if u64::from(len) > r.remaining() {
                    return Err(truncated(r, len));
                }
                r.skip(len);
                let index = usize::from(self.first_index[len as usize]) + (code - first) as usize;
                return Ok(self.sorted[index]);
            }
        }
        if u64::from(max_len) > r.remaining() {
            return Err(truncated(r, max_len));
        }
        Err(Error::corrupt(format!(
            "bits at position {} match no codeword",
            r.bit_position()
        )))
    }

    pub fn decode_all(&self, r: &mut BitReader<'_>, count: usize) -> Result<Vec<u8>> {
        (0..count).map(|_| self.decode_symbol(r)).collect()
    }
}

fn truncated(r: &BitReader<'_>, len: u32) -> Error {
    Error::Truncated {
        position: r.bit_position(),
        needed: u64::from(len) - r.remaining(),
    }
}
