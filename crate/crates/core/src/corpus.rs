//! Deterministic synthetic inputs for tests and benchmarks.

/// Blocks of `block_len` bytes, each cycling through four adjacent values
/// above a block base. Bases step through the sixteen multiples of 16 in an
/// order where consecutive blocks differ by at least 112, so the file holds
/// 64 distinct bytes while every block fits a narrow window.
pub fn locality(len: usize, block_len: usize) -> Vec<u8> {
    assert!(block_len > 0, "block length must be positive");
    (0..len)
        .map(|i| {
            let block = i / block_len;
            let base = ((block * 7) % 16) as u8 * 16;
            base + (i % 4) as u8
        })
        .collect()
}

/// Text-like bytes: short words over a small alphabet separated by spaces.
pub fn text_like(len: usize) -> Vec<u8> {
    const WORDS: [&[u8]; 12] = [
        b"the", b"region", b"code", b"of", b"huffman", b"and", b"symbol", b"a", b"table",
        b"offset", b"to", b"stream",
    ];
    let mut out = Vec::with_capacity(len + 8);
    let mut i = 0usize;
    while out.len() < len {
        // Low-discrepancy walk over the word list.
        i = (i * 5 + 3) % 97;
        out.extend_from_slice(WORDS[i % WORDS.len()]);
        out.push(if i % 11 == 0 { b'\n' } else { b' ' });
    }
    out.truncate(len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn locality_shape() {
        let data = locality(10_000, 250);
        assert_eq!(data.len(), 10_000);
        let distinct: BTreeSet<u8> = data.iter().copied().collect();
        assert_eq!(distinct.len(), 64);
        let bases: Vec<u8> = data.chunks(250).map(|b| b[0] & !3).collect();
        for pair in bases.windows(2) {
            assert!(pair[0].abs_diff(pair[1]) >= 32);
        }
    }

    #[test]
    fn text_like_len() {
        assert_eq!(text_like(1234).len(), 1234);
        assert!(text_like(0).is_empty());
    }
}
