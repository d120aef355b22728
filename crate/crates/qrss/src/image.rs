//! 8-bit grayscale image buffer shared by every scheme.

/// Row-major width x height buffer of 8-bit pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Panics if the pixel count does not match width * height or either
    /// dimension is zero.
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Self {
        assert!(width >= 1 && height >= 1, "empty image");
        assert_eq!(
            pixels.len(),
            width as usize * height as usize,
            "pixel count must equal width * height"
        );
        GrayImage { width, height, pixels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Same dimensions, pixels replaced by `f`.
    pub fn map(&self, f: impl FnMut(u8) -> u8) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().copied().map(f).collect(),
        }
    }
}
