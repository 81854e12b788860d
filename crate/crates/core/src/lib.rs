//! Size adaptive region based Huffman (SARBH) compression.
//!
//! Input bytes are grouped into variable-length regions whose values stay
//! within a window of width `r` above the region's first byte. Each region
//! keeps its length and base byte raw; the small offsets of every region
//! share one canonical Huffman code. Classical Huffman and fixed-region
//! RBH codecs are included for comparison, and all three write the same
//! self-describing container.
//!
//! ```
//! use sarbh::{decompress, Codec, Window};
//!
//! let data = b"ABAABDADAAWXXZXWXYZXXYPQPSQSPR";
//! let packed = Codec::Sarbh(Window::new(16)?).compress(data);
//! assert_eq!(decompress(&packed)?, data);
//! # Ok::<(), sarbh::Error>(())
//! ```

pub mod baselines;
pub mod bitstream;
pub mod codec;
pub mod container;
pub mod corpus;
pub mod entropy;
mod error;
pub mod regioner;
pub mod sarbh;

pub use baselines::{huffman_compress, rbh_compress, region_max_symbol, RegionSize, SwapRecord};
pub use bitstream::{BitReader, BitWriter};
pub use codec::{compression_ratio, decompress, inspect, Codec, ContainerInfo, SizeBreakdown};
pub use container::{Header, Mode};
pub use entropy::{build_code_lengths, count_frequencies, CodeBook, FrequencyTable};
pub use error::{Error, Result};
pub use regioner::{flatten_offsets, form_regions, reconstruct, spans, Region, Span, Window};
pub use sarbh::size_breakdown;
