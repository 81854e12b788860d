//! Variable-length region formation.
//!
//! A region opens at some byte `b0`, which becomes its base. Each following
//! byte joins while it lies in `base..=base + r - 1` and the region holds
//! fewer than 255 symbols; the first byte that does not fit opens the next
//! region. Offsets are therefore non-negative, below `r`, and the first
//! offset of every region is 0.

use std::fmt;

use crate::error::{Error, Result};

/// Most symbols a region can hold; the count is stored in eight bits.
pub const MAX_REGION_LEN: usize = 255;

/// Default window used by the codec and the CLI.
pub const DEFAULT_WINDOW: u8 = 32;

/// Window width `r`: offsets within a region lie in `0..r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window(u8);

impl Window {
    pub fn new(r: u32) -> Result<Self> {
        match u8::try_from(r) {
            Ok(r) if r >= 2 => Ok(Window(r)),
            _ => Err(Error::usage(format!("window r = {r} outside 2..=255"))),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Size of the offset alphabet.
    pub fn alphabet_size(self) -> usize {
        usize::from(self.0)
    }
}

impl Default for Window {
    fn default() -> Self {
        Window(DEFAULT_WINDOW)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub base: u8,
    pub offsets: Vec<u8>,
}

impl Region {
    /// Number of coded offsets.
    pub fn count(&self) -> u8 {
        debug_assert!((1..=MAX_REGION_LEN).contains(&self.offsets.len()));
        self.offsets.len() as u8
    }

    /// The bytes this region stands for.
    pub fn bytes(&self) -> Result<Vec<u8>> {
        self.offsets
            .iter()
            .map(|&o| {
                self.base.checked_add(o).ok_or_else(|| {
                    Error::corrupt(format!("base {} + offset {o} exceeds 255", self.base))
                })
            })
            .collect()
    }
}

/// One region as a span of the input: where it starts, how long it is, and its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub len: usize,
    pub base: u8,
}

/// Region boundaries without materializing offsets.
pub fn spans(data: &[u8], window: Window) -> impl Iterator<Item = Span> + '_ {
    let r = window.get();
    let mut start = 0;
    std::iter::from_fn(move || {
        let base = *data.get(start)?;
        let len = data[start..]
            .iter()
            .take(MAX_REGION_LEN)
            .position(|&b| b < base || b - base >= r)
            .unwrap_or_else(|| (data.len() - start).min(MAX_REGION_LEN));
        let span = Span { start, len, base };
        start += len;
        Some(span)
    })
}

/// Splits `data` into anchored regions of window `r`.
pub fn form_regions(data: &[u8], window: Window) -> Vec<Region> {
    spans(data, window)
        .map(|span| Region {
            base: span.base,
            offsets: data[span.start..span.start + span.len]
                .iter()
                .map(|&b| b - span.base)
                .collect(),
        })
        .collect()
}

/// Concatenates `base + offset` over all regions.
pub fn reconstruct(regions: &[Region]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(regions.iter().map(|r| r.offsets.len()).sum());
    for region in regions {
        out.extend(region.bytes()?);
    }
    Ok(out)
}

/// All offsets in stream order; these are the symbols the codec entropy-codes.
pub fn flatten_offsets(regions: &[Region]) -> Vec<u8> {
    regions
        .iter()
        .flat_map(|r| r.offsets.iter().copied())
        .collect()
}
