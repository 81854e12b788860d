//! Corpus benchmark: every codec on every file, roundtrip-verified.
//!
//! Ratios use full container sizes, fixed header included.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use sarbh::{compression_ratio, decompress, Codec};

#[derive(Debug, Clone, PartialEq)]
pub struct CodecResult {
    pub codec: Codec,
    pub compressed_bytes: u64,
    /// `None` for an empty original, where the ratio is undefined.
    pub ratio_percent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub file: String,
    pub original_bytes: u64,
    pub results: Vec<CodecResult>,
}

pub fn codec_label(codec: &Codec) -> &'static str {
    codec.mode().name()
}

/// Compresses `data` with each codec and checks that it decompresses back.
pub fn bench_bytes(file: &str, data: &[u8], codecs: &[Codec]) -> Result<BenchRow> {
    let original_bits = data.len() as u64 * 8;
    let results = codecs
        .iter()
        .map(|&codec| {
            let packed = codec.compress(data);
            let restored = decompress(&packed)
                .with_context(|| format!("{codec} failed to decode its own output for {file}"))?;
            if restored != data {
                bail!("{codec} roundtrip mismatch on {file}");
            }
            Ok(CodecResult {
                codec,
                compressed_bytes: packed.len() as u64,
                ratio_percent: compression_ratio(original_bits, packed.len() as u64 * 8).ok(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchRow {
        file: file.to_owned(),
        original_bytes: data.len() as u64,
        results,
    })
}

pub fn bench_file(path: &Path, codecs: &[Codec]) -> Result<BenchRow> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    bench_bytes(&path.display().to_string(), &data, codecs)
}

/// Benchmarks files in parallel; rows come back in input order.
pub fn run(files: &[PathBuf], codecs: &[Codec]) -> Result<Vec<BenchRow>> {
    files
        .par_iter()
        .map(|path| bench_file(path, codecs))
        .collect()
}

/// Long format: one record per (file, codec).
pub fn write_csv<W: io::Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "file",
        "original_bytes",
        "codec",
        "compressed_bytes",
        "ratio_percent",
    ])?;
    for row in rows {
        for result in &row.results {
            let ratio = result
                .ratio_percent
                .map(|r| format!("{r:.2}"))
                .unwrap_or_default();
            w.write_record([
                row.file.as_str(),
                &row.original_bytes.to_string(),
                codec_label(&result.codec),
                &result.compressed_bytes.to_string(),
                &ratio,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Files as rows, codecs as columns of percent compression.
pub fn render_table(rows: &[BenchRow], codecs: &[Codec]) -> String {
    let name_width = rows
        .iter()
        .map(|r| r.file.len())
        .chain([4])
        .max()
        .unwrap_or(4);
    let mut out = String::new();
    let _ = write!(out, "{:<name_width$}  {:>12}", "file", "bytes");
    for codec in codecs {
        let _ = write!(out, "  {:>10}", codec_label(codec));
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{:<name_width$}  {:>12}", row.file, row.original_bytes);
        for result in &row.results {
            match result.ratio_percent {
                Some(r) => {
                    let _ = write!(out, "  {:>9.2}%", r);
                }
                None => {
                    let _ = write!(out, "  {:>10}", "n/a");
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sarbh::{RegionSize, Window};

    fn all_codecs() -> Vec<Codec> {
        vec![
            Codec::Huffman,
            Codec::Rbh(RegionSize::default()),
            Codec::Sarbh(Window::default()),
        ]
    }

    #[test]
    fn rows_have_one_result_per_codec() {
        let row = bench_bytes("msg1", b"ABAABDADAAWXXZXWXYZXXYPQPSQSPR", &all_codecs()).unwrap();
        assert_eq!(row.original_bytes, 30);
        assert_eq!(row.results.len(), 3);
        assert!(row.results.iter().all(|r| r.ratio_percent.is_some()));
    }

    #[test]
    fn empty_file_has_no_ratio() {
        let row = bench_bytes("empty", b"", &all_codecs()).unwrap();
        assert!(row.results.iter().all(|r| r.ratio_percent.is_none()));
        let mut csv = Vec::new();
        write_csv(&[row], &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.lines().nth(1).unwrap().ends_with(",21,"));
    }

    #[test]
    fn csv_is_long_format() {
        let rows = vec![
            bench_bytes("a,b.txt", b"hello hello", &all_codecs()).unwrap(),
            bench_bytes("c.txt", b"zzzz", &all_codecs()).unwrap(),
        ];
        let mut csv = Vec::new();
        write_csv(&rows, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "file,original_bytes,codec,compressed_bytes,ratio_percent"
        );
        assert_eq!(lines.len(), 1 + 6);
        assert!(lines[1].starts_with("\"a,b.txt\",11,huffman,"));
        assert!(lines[6].starts_with("c.txt,4,sarbh,"));
    }

    #[test]
    fn table_lists_codecs_as_columns() {
        let codecs = all_codecs();
        let rows = vec![bench_bytes("x", b"abcabcabc", &codecs).unwrap()];
        let table = render_table(&rows, &codecs);
        let header = table.lines().next().unwrap();
        assert!(header.contains("huffman") && header.contains("rbh") && header.contains("sarbh"));
        assert_eq!(table.lines().count(), 2);
    }
}
