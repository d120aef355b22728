//! Shared helpers for the benchmark targets.

use qrss::{GrayImage, SplitMix64};

/// Deterministic test image with pixels below the clamp threshold.
pub fn sample_image(width: u32, height: u32, seed: u64) -> GrayImage {
    let mut rng = SplitMix64::new(seed);
    let px: Vec<u8> = (0..width * height).map(|_| rng.next_below(239) as u8).collect();
    GrayImage::new(width, height, px)
}
