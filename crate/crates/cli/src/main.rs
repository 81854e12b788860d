use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sarbh::{Mode, RegionSize, Window};
use sarbh_cli::commands;

#[derive(Parser)]
#[command(
    name = "sarbh",
    version,
    about = "Size adaptive region based Huffman compressor"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sarbh,
    Huffman,
    Rbh,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sarbh => Mode::Sarbh,
            ModeArg::Huffman => Mode::Huffman,
            ModeArg::Rbh => Mode::Rbh,
        }
    }
}

#[derive(clap::Args)]
struct Params {
    /// SARBH window width.
    #[arg(short = 'r', default_value_t = 32, value_parser = clap::value_parser!(u32).range(2..=255))]
    r: u32,
    /// RBH fixed region length.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=255))]
    region_size: u32,
}

impl Params {
    fn window(&self) -> Window {
        Window::new(self.r).expect("range checked by clap")
    }

    fn region_size(&self) -> RegionSize {
        RegionSize::new(self.region_size as usize).expect("range checked by clap")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into a container.
    Compress {
        #[arg(long, value_enum, default_value_t = ModeArg::Sarbh)]
        mode: ModeArg,
        #[command(flatten)]
        params: Params,
        input: PathBuf,
        output: PathBuf,
    },
    /// Restore the original file from a container.
    Decompress { input: PathBuf, output: PathBuf },
    /// Print a container's parameters and bit accounting.
    Inspect { input: PathBuf },
    /// Compare codecs over a set of files.
    Bench {
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "huffman,rbh,sarbh"
        )]
        codecs: Vec<ModeArg>,
        #[command(flatten)]
        params: Params,
        /// Also write long-format results here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Compress {
            mode,
            params,
            input,
            output,
        } => {
            let codec = commands::codec_for(mode.into(), params.window(), params.region_size());
            commands::compress(&input, &output, codec, &mut out)
        }
        Command::Decompress { input, output } => {
            commands::decompress_file(&input, &output, &mut out)
        }
        Command::Inspect { input } => commands::inspect_file(&input, &mut out),
        Command::Bench {
            codecs,
            params,
            csv,
            files,
        } => {
            let codecs: Vec<_> = codecs
                .into_iter()
                .map(|m| commands::codec_for(m.into(), params.window(), params.region_size()))
                .collect();
            commands::bench(&files, &codecs, csv.as_deref(), &mut out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
