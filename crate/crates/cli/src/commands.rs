use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sarbh::{compression_ratio, decompress, inspect, Codec, Mode, RegionSize, Window};

use crate::bench;

pub fn codec_for(mode: Mode, window: Window, region_size: RegionSize) -> Codec {
    match mode {
        Mode::Sarbh => Codec::Sarbh(window),
        Mode::Huffman => Codec::Huffman,
        Mode::Rbh => Codec::Rbh(region_size),
    }
}

fn ratio_text(original_bytes: u64, compressed_bytes: u64) -> String {
    compression_ratio(original_bytes * 8, compressed_bytes * 8)
        .map(|r| format!("{r:.2}%"))
        .unwrap_or_else(|_| "n/a".into())
}

pub fn compress(input: &Path, output: &Path, codec: Codec, out: &mut impl Write) -> Result<()> {
    let data = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let packed = codec.compress(&data);
    fs::write(output, &packed).with_context(|| format!("writing {}", output.display()))?;
    writeln!(
        out,
        "{codec}: {} -> {} bytes, ratio {}",
        data.len(),
        packed.len(),
        ratio_text(data.len() as u64, packed.len() as u64)
    )?;
    Ok(())
}

pub fn decompress_file(input: &Path, output: &Path, out: &mut impl Write) -> Result<()> {
    let packed = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let data = decompress(&packed).with_context(|| format!("decoding {}", input.display()))?;
    fs::write(output, &data).with_context(|| format!("writing {}", output.display()))?;
    writeln!(out, "{} -> {} bytes", packed.len(), data.len())?;
    Ok(())
}

pub fn inspect_file(input: &Path, out: &mut impl Write) -> Result<()> {
    let packed = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let info = inspect(&packed).with_context(|| format!("decoding {}", input.display()))?;
    let h = &info.header;
    let b = &info.breakdown;
    let param = match h.mode {
        Mode::Sarbh => format!("r = {}", h.param),
        Mode::Huffman => "none".to_owned(),
        Mode::Rbh => format!("region_size = {}", h.param),
    };
    let side = match h.mode {
        Mode::Rbh => "swap info bits",
        _ => "region header bits",
    };
    writeln!(out, "mode:                {}", h.mode)?;
    writeln!(out, "parameter:           {param}")?;
    writeln!(out, "original bytes:      {}", h.original_length)?;
    writeln!(out, "regions:             {}", h.region_count)?;
    writeln!(out, "distinct symbols:    {}", h.distinct_symbols)?;
    if h.mode == Mode::Rbh {
        writeln!(out, "swapped regions:     {}", info.swaps.len())?;
    }
    writeln!(out, "payload bits:        {}", b.payload_bits)?;
    writeln!(out, "table bits:          {}", b.table_bits)?;
    writeln!(out, "{:<21}{}", format!("{side}:"), b.header_bits)?;
    writeln!(out, "accounted total:     {}", b.total_bits())?;
    writeln!(out, "fixed header bits:   {}", info.fixed_header_bits())?;
    writeln!(out, "padding bits:        {}", info.padding_bits())?;
    writeln!(out, "file bits:           {}", info.file_bits)?;
    let accounted = b
        .ratio_percent()
        .map(|r| format!("{r:.2}%"))
        .unwrap_or_else(|_| "n/a".into());
    writeln!(out, "ratio (accounted):   {accounted}")?;
    writeln!(
        out,
        "ratio (file):        {}",
        ratio_text(h.original_length, packed.len() as u64)
    )?;
    Ok(())
}

pub fn bench(
    files: &[PathBuf],
    codecs: &[Codec],
    csv: Option<&Path>,
    out: &mut impl Write,
) -> Result<()> {
    let rows = bench::run(files, codecs)?;
    write!(out, "{}", bench::render_table(&rows, codecs))?;
    if let Some(path) = csv {
        let file =
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        bench::write_csv(&rows, file)?;
    }
    Ok(())
}
