//! MSE and PSNR between a secret image and its reconstruction.
//!
//! PSNR is reported in the standard decibel form 10*log10(255^2 / MSE).
//! The alternative log2(255^2 / MSE) value is emitted alongside as
//! `psnr_log2_variant` for comparison with sources that use that form.

use crate::image::GrayImage;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    #[error("dimension mismatch: {a_w}x{a_h} vs {b_w}x{b_h}")]
    DimensionMismatch { a_w: u32, a_h: u32, b_w: u32, b_h: u32 },
}

/// MSE plus both PSNR variants; all infinite iff the images are identical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr_db: f64,
    pub psnr_log2_variant: f64,
}

fn check_dims(a: &GrayImage, b: &GrayImage) -> Result<(), MetricsError> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(MetricsError::DimensionMismatch {
            a_w: a.width(),
            a_h: a.height(),
            b_w: b.width(),
            b_h: b.height(),
        });
    }
    Ok(())
}

/// Mean squared error; the sum is exact in integers, with one final division.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64, MetricsError> {
    check_dims(a, b)?;
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.pixel_count() as f64)
}

pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<QualityReport, MetricsError> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(QualityReport {
            mse,
            psnr_db: f64::INFINITY,
            psnr_log2_variant: f64::INFINITY,
        });
    }
    let ratio = 255.0f64 * 255.0 / mse;
    Ok(QualityReport {
        mse,
        psnr_db: 10.0 * ratio.log10(),
        psnr_log2_variant: ratio.log2(),
    })
}
