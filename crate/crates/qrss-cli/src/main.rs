use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qrss::{
    psnr, read_pgm, read_shadow, reveal_image, share_image, tl_reveal, tl_share, write_pgm,
    write_shadow, SchemeParams, ShadowFile,
};

mod demo;
mod selftest;

#[derive(Parser)]
#[command(name = "qrss", about = "Grayscale image (k,n) threshold secret sharing", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Qrss,
    Thienlin,
}

#[derive(Subcommand)]
enum Command {
    /// Split a PGM image into n shadow files; any k of them reveal it
    Share {
        /// Input image (binary PGM, maxval 255)
        input: PathBuf,
        /// Threshold: number of shadows needed to reveal
        #[arg(long)]
        k: u8,
        /// Total number of shadows to produce
        #[arg(long)]
        n: u8,
        #[arg(long, value_enum, default_value_t = Scheme::Qrss)]
        scheme: Scheme,
        /// Pixel permutation seed (default: drawn from system entropy)
        #[arg(long)]
        perm_seed: Option<u64>,
        /// Shamir coefficient seed (default: drawn from system entropy)
        #[arg(long)]
        coeff_seed: Option<u64>,
        /// Directory for the shadow files (default: alongside the input)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Reconstruct the image from k or more shadow files
    Reveal {
        /// Shadow files (.qrs); x-coordinates are read from headers
        shadows: Vec<PathBuf>,
        /// Output PGM path
        #[arg(long)]
        output: PathBuf,
    },
    /// MSE / PSNR between two PGM images of equal size
    Psnr { a: PathBuf, b: PathBuf },
    /// Replay the single-pixel walkthrough for p=150 and self-check it
    DemoExample,
    /// Run the built-in consistency checks
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Share { input, k, n, scheme, perm_seed, coeff_seed, out_dir } => {
            cmd_share(&input, k, n, scheme, perm_seed, coeff_seed, out_dir.as_deref())
        }
        Command::Reveal { shadows, output } => cmd_reveal(&shadows, &output),
        Command::Psnr { a, b } => cmd_psnr(&a, &b),
        Command::DemoExample => demo::run(),
        Command::Selftest => selftest::run(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_share(
    input: &Path,
    k: u8,
    n: u8,
    scheme: Scheme,
    perm_seed: Option<u64>,
    coeff_seed: Option<u64>,
    out_dir: Option<&Path>,
) -> Result<()> {
    let bytes = std::fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let img = read_pgm(&bytes).with_context(|| format!("parsing {}", input.display()))?;

    let params = SchemeParams {
        k,
        n_shares: n,
        perm_seed: perm_seed.unwrap_or_else(rand::random),
        coeff_seed: coeff_seed.unwrap_or_else(rand::random),
    };

    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_string());
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| input.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));

    let files: Vec<ShadowFile> = match scheme {
        Scheme::Qrss => share_image(&img, &params)?
            .into_iter()
            .map(ShadowFile::Qrss)
            .collect(),
        Scheme::Thienlin => tl_share(&img, &params)?
            .into_iter()
            .map(ShadowFile::ThienLin)
            .collect(),
    };

    let mut paths = Vec::new();
    for (i, file) in files.iter().enumerate() {
        let path = dir.join(format!("{}_share_{}.qrs", stem, i + 1));
        std::fs::write(&path, write_shadow(file))
            .with_context(|| format!("writing {}", path.display()))?;
        paths.push(path);
    }
    println!(
        "shared {} into {} shadows (k={}, scheme={:?}) perm_seed={} coeff_seed={}",
        input.display(),
        n,
        k,
        scheme,
        params.perm_seed,
        params.coeff_seed
    );
    for p in &paths {
        println!("  {}", p.display());
    }
    Ok(())
}

fn cmd_reveal(shadow_paths: &[PathBuf], output: &Path) -> Result<()> {
    if shadow_paths.is_empty() {
        bail!("no shadow files given");
    }
    let mut qrss_shadows = Vec::new();
    let mut tl_shadows = Vec::new();
    for path in shadow_paths {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        match read_shadow(&bytes).with_context(|| format!("parsing {}", path.display()))? {
            ShadowFile::Qrss(s) => qrss_shadows.push(s),
            ShadowFile::ThienLin(s) => tl_shadows.push(s),
        }
    }
    let img = match (qrss_shadows.is_empty(), tl_shadows.is_empty()) {
        (false, true) => reveal_image(&qrss_shadows)?,
        (true, false) => tl_reveal(&tl_shadows)?,
        _ => bail!("shadow files mix two different schemes"),
    };
    std::fs::write(output, write_pgm(&img))
        .with_context(|| format!("writing {}", output.display()))?;
    println!("revealed {} ({}x{})", output.display(), img.width(), img.height());
    Ok(())
}

fn cmd_psnr(a_path: &Path, b_path: &Path) -> Result<()> {
    let read = |p: &Path| -> Result<qrss::GrayImage> {
        let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        read_pgm(&bytes).with_context(|| format!("parsing {}", p.display()))
    };
    let report = psnr(&read(a_path)?, &read(b_path)?)?;
    println!("MSE: {}", report.mse);
    if report.psnr_db.is_infinite() {
        println!("PSNR: inf");
        println!("PSNR (log2 variant): inf");
    } else {
        println!("PSNR: {:.2} dB", report.psnr_db);
        println!("PSNR (log2 variant): {:.4}", report.psnr_log2_variant);
    }
    Ok(())
}
