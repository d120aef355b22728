//! The proposed (k,n) scheme: clamp pixels to [0,238], permute with a keyed
//! shuffle, encrypt each pixel to one of the four square roots of
//! (pixel * r_t) mod N, and Shamir-share that root across n shadow images.
//! The reveal pipeline inverts each stage.

use crate::image::GrayImage;
use crate::numtheory::{four_square_roots, mod_inv, ModulusPair, ResidueClassifier};
use crate::rng::{permutation, SplitMix64};
use crate::shamir::{self, reconstruct_secret, share_secret, SharePoint};
use thiserror::Error;

/// Largest pixel value coprime to both primes; everything above is clamped.
pub const MAX_PIXEL: u8 = 238;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("threshold k={k} invalid for n={n} shares")]
    BadThreshold { k: usize, n: usize },
    #[error("shadow header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("need {needed} shadows, got {got}")]
    InsufficientShares { needed: usize, got: usize },
    #[error("share value {0} matches no square root (corrupted share data)")]
    RootMismatch(u64),
}

impl From<shamir::ShamirError> for SchemeError {
    fn from(e: shamir::ShamirError) -> Self {
        match e {
            shamir::ShamirError::BadThreshold { k, n } => SchemeError::BadThreshold { k, n },
            shamir::ShamirError::DuplicateX(x) => {
                SchemeError::HeaderMismatch(format!("duplicate x-coordinate {x}"))
            }
            shamir::ShamirError::InsufficientShares { needed, got } => {
                SchemeError::InsufficientShares { needed, got }
            }
        }
    }
}

/// Threshold, share count and the two scheme seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    pub k: u8,
    pub n_shares: u8,
    pub perm_seed: u64,
    pub coeff_seed: u64,
}

impl SchemeParams {
    pub fn validate(&self) -> Result<(), SchemeError> {
        if self.k < 1 || self.k > self.n_shares {
            return Err(SchemeError::BadThreshold {
                k: self.k as usize,
                n: self.n_shares as usize,
            });
        }
        Ok(())
    }
}

/// A pixel after QR encryption: the chosen square root and its case index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncryptedPixel {
    pub root: u64,
    pub case_t: u8,
}

/// One participant's share: full header plus the 16-bit share values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowImage {
    pub x_coord: u8,
    pub k: u8,
    pub n_shares: u8,
    pub width: u32,
    pub height: u32,
    pub perm_seed: u64,
    pub values: Vec<u16>,
}

/// min(v, 238); the only lossy step of the pipeline.
pub fn clamp_pixel(v: u8) -> u8 {
    v.min(MAX_PIXEL)
}

/// Keyed Fisher-Yates shuffle of the flat pixel list.
pub fn permute_pixels(img: &GrayImage, seed: u64) -> GrayImage {
    let perm = permutation(img.pixel_count(), seed);
    let src = img.pixels();
    let out: Vec<u8> = perm.iter().map(|&i| src[i]).collect();
    GrayImage::new(img.width(), img.height(), out)
}

/// Inverse of `permute_pixels` for the same seed.
pub fn depermute_pixels(img: &GrayImage, seed: u64) -> GrayImage {
    let perm = permutation(img.pixel_count(), seed);
    let src = img.pixels();
    let mut out = vec![0u8; src.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = src[i];
    }
    GrayImage::new(img.width(), img.height(), out)
}

/// Multiplies the pixel into case 1 by its parameter r_t, takes the four
/// square roots of the product and keeps the root at index t. Zero pixels
/// encode as root 0, case 1.
pub fn encrypt_pixel(p_i: u8, cls: &ResidueClassifier, mp: &ModulusPair) -> EncryptedPixel {
    debug_assert!(p_i <= MAX_PIXEL);
    if p_i == 0 {
        return EncryptedPixel { root: 0, case_t: 1 };
    }
    let t = cls.classify_case(p_i as u64).expect("pixels in [1,238] are coprime to N");
    let product = p_i as u64 * cls.case_parameter(t) % mp.n;
    let roots = four_square_roots(product, mp).expect("r_t promotes to case 1");
    EncryptedPixel { root: roots[t as usize - 1], case_t: t }
}

/// Squares the root back to the case-1 product, recovers the case index from
/// the root's position among the four square roots, and divides out r_t by
/// modular inverse.
pub fn decrypt_root(root: u64, cls: &ResidueClassifier, mp: &ModulusPair) -> Result<u8, SchemeError> {
    if root == 0 {
        return Ok(0);
    }
    let product = root * root % mp.n;
    let roots = four_square_roots(product, mp).map_err(|_| SchemeError::RootMismatch(root))?;
    let t = roots
        .iter()
        .position(|&r| r == root)
        .ok_or(SchemeError::RootMismatch(root))? as u8
        + 1;
    let r_inv = mod_inv(cls.case_parameter(t), mp.n).expect("r_t coprime to N");
    let pixel = product * r_inv % mp.n;
    if pixel > MAX_PIXEL as u64 {
        return Err(SchemeError::RootMismatch(root));
    }
    Ok(pixel as u8)
}

/// Full sharing pipeline: clamp, permute, encrypt, Shamir-share. The
/// coefficient stream advances sequentially across pixels, so shadows are a
/// deterministic function of (image, params).
pub fn share_image(img: &GrayImage, params: &SchemeParams) -> Result<Vec<ShadowImage>, SchemeError> {
    params.validate()?;
    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);
    let clamped = img.map(clamp_pixel);
    let permuted = permute_pixels(&clamped, params.perm_seed);

    let n = params.n_shares as usize;
    let mut shadows: Vec<ShadowImage> = (1..=params.n_shares)
        .map(|x| ShadowImage {
            x_coord: x,
            k: params.k,
            n_shares: params.n_shares,
            width: img.width(),
            height: img.height(),
            perm_seed: params.perm_seed,
            values: Vec::with_capacity(img.pixel_count()),
        })
        .collect();

    let mut coeff_stream = SplitMix64::new(params.coeff_seed);
    for &p in permuted.pixels() {
        let enc = encrypt_pixel(p, &cls, &mp);
        let points = share_secret(enc.root, params.k as usize, n, &mut coeff_stream)?;
        for (shadow, point) in shadows.iter_mut().zip(points) {
            shadow.values.push(point.y as u16);
        }
    }
    Ok(shadows)
}

/// Inverse pipeline over the first k shadows: Lagrange at zero, QR decrypt,
/// then the inverse permutation.
pub fn reveal_image(shadows: &[ShadowImage]) -> Result<GrayImage, SchemeError> {
    let first = shadows.first().ok_or(SchemeError::InsufficientShares { needed: 1, got: 0 })?;
    let k = first.k as usize;
    for s in shadows {
        if (s.k, s.n_shares, s.width, s.height, s.perm_seed)
            != (first.k, first.n_shares, first.width, first.height, first.perm_seed)
        {
            return Err(SchemeError::HeaderMismatch(format!(
                "shadow {} disagrees with shadow {}",
                s.x_coord, first.x_coord
            )));
        }
        if s.values.len() != first.width as usize * first.height as usize {
            return Err(SchemeError::HeaderMismatch(format!(
                "shadow {} payload length {} does not match dimensions",
                s.x_coord,
                s.values.len()
            )));
        }
    }
    if shadows.len() < k {
        return Err(SchemeError::InsufficientShares { needed: k, got: shadows.len() });
    }
    for (i, s) in shadows.iter().enumerate() {
        if shadows[..i].iter().any(|t| t.x_coord == s.x_coord) {
            return Err(SchemeError::HeaderMismatch(format!(
                "duplicate x-coordinate {}",
                s.x_coord
            )));
        }
    }

    let mp = ModulusPair::new();
    let cls = ResidueClassifier::new(mp);
    let pixel_count = first.values.len();
    let mut pixels = Vec::with_capacity(pixel_count);
    for i in 0..pixel_count {
        let points: Vec<SharePoint> = shadows[..k]
            .iter()
            .map(|s| SharePoint { x: s.x_coord as u64, y: s.values[i] as u64 })
            .collect();
        let root = reconstruct_secret(&points, k)?;
        if root >= mp.n {
            return Err(SchemeError::RootMismatch(root));
        }
        pixels.push(decrypt_root(root, &cls, &mp)?);
    }
    let permuted = GrayImage::new(first.width, first.height, pixels);
    Ok(depermute_pixels(&permuted, first.perm_seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (ModulusPair, ResidueClassifier) {
        let mp = ModulusPair::new();
        (mp, ResidueClassifier::new(mp))
    }

    #[test]
    fn clamp_cases() {
        assert_eq!(clamp_pixel(150), 150);
        assert_eq!(clamp_pixel(255), 238);
        assert_eq!(clamp_pixel(239), 238);
        assert_eq!(clamp_pixel(0), 0);
        assert_eq!(clamp_pixel(238), 238);
    }

    #[test]
    fn permutation_round_trip() {
        let img = GrayImage::new(4, 3, (0..12).collect());
        for seed in [0u64, 1, 99, u64::MAX] {
            let shuffled = permute_pixels(&img, seed);
            assert_eq!(depermute_pixels(&shuffled, seed), img);
        }
    }

    #[test]
    fn permutation_of_constant_image_is_identity() {
        let img = GrayImage::new(5, 5, vec![77; 25]);
        for seed in 0..10 {
            assert_eq!(permute_pixels(&img, seed), img);
        }
    }

    #[test]
    fn golden_permutation() {
        let img = GrayImage::new(4, 1, vec![10, 20, 30, 40]);
        let shuffled = permute_pixels(&img, 1);
        assert_eq!(shuffled.pixels(), &[30, 10, 40, 20]);
    }

    #[test]
    fn encrypt_worked_example() {
        let (mp, cls) = setup();
        let enc = encrypt_pixel(150, &cls, &mp);
        assert_eq!(enc, EncryptedPixel { root: 52954, case_t: 2 });
    }

    #[test]
    fn encrypt_zero_and_one() {
        let (mp, cls) = setup();
        assert_eq!(encrypt_pixel(0, &cls, &mp), EncryptedPixel { root: 0, case_t: 1 });
        let enc = encrypt_pixel(1, &cls, &mp);
        assert_eq!(enc.case_t, 1);
        assert_eq!(enc.root * enc.root % mp.n, 1);
        assert_eq!(enc.root, four_square_roots(1, &mp).unwrap()[0]);
    }

    #[test]
    fn decrypt_worked_example() {
        let (mp, cls) = setup();
        assert_eq!(decrypt_root(52954, &cls, &mp).unwrap(), 150);
        assert_eq!(decrypt_root(0, &cls, &mp).unwrap(), 0);
    }

    #[test]
    fn pixel_cipher_round_trip_exhaustive() {
        let (mp, cls) = setup();
        for v in 0..=MAX_PIXEL {
            let enc = encrypt_pixel(v, &cls, &mp);
            assert_eq!(decrypt_root(enc.root, &cls, &mp).unwrap(), v, "pixel {v}");
            if v != 0 {
                // the reveal's case recovery is well defined
                let roots = four_square_roots(enc.root * enc.root % mp.n, &mp).unwrap();
                assert_eq!(roots[enc.case_t as usize - 1], enc.root);
            }
        }
    }

    #[test]
    fn share_single_pixel_with_zero_coefficient() {
        // k=1 draws no coefficients, so every shadow carries the root itself.
        let img = GrayImage::new(1, 1, vec![150]);
        let params = SchemeParams { k: 1, n_shares: 2, perm_seed: 3, coeff_seed: 4 };
        let shadows = share_image(&img, &params).unwrap();
        assert_eq!(shadows[0].values, vec![52954]);
        assert_eq!(shadows[1].values, vec![52954]);
    }

    #[test]
    fn shadow_shape_and_headers() {
        let img = GrayImage::new(16, 8, vec![9; 128]);
        let params = SchemeParams { k: 2, n_shares: 4, perm_seed: 5, coeff_seed: 6 };
        let shadows = share_image(&img, &params).unwrap();
        assert_eq!(shadows.len(), 4);
        for (i, s) in shadows.iter().enumerate() {
            assert_eq!(s.x_coord as usize, i + 1);
            assert_eq!(s.values.len(), 128);
            assert_eq!((s.k, s.n_shares, s.width, s.height, s.perm_seed), (2, 4, 16, 8, 5));
            assert!(s.values.iter().all(|&v| (v as u64) < shamir::FIELD_PRIME));
        }
    }

    #[test]
    fn share_determinism() {
        let img = GrayImage::new(8, 8, (0..64).map(|i| (i * 3) as u8).collect());
        let params = SchemeParams { k: 3, n_shares: 5, perm_seed: 11, coeff_seed: 13 };
        assert_eq!(share_image(&img, &params).unwrap(), share_image(&img, &params).unwrap());
    }

    #[test]
    fn reveal_round_trip_clamps_only() {
        let mut rng = crate::rng::SplitMix64::new(77);
        let pixels: Vec<u8> = (0..64).map(|_| rng.next_below(256) as u8).collect();
        let img = GrayImage::new(8, 8, pixels);
        let params = SchemeParams { k: 2, n_shares: 3, perm_seed: 21, coeff_seed: 22 };
        let shadows = share_image(&img, &params).unwrap();
        let revealed = reveal_image(&shadows[1..]).unwrap();
        assert_eq!(revealed, img.map(clamp_pixel));
    }

    #[test]
    fn reveal_errors() {
        let img = GrayImage::new(4, 4, vec![100; 16]);
        let params = SchemeParams { k: 2, n_shares: 3, perm_seed: 1, coeff_seed: 2 };
        let shadows = share_image(&img, &params).unwrap();

        assert!(matches!(
            reveal_image(&shadows[..1]),
            Err(SchemeError::InsufficientShares { needed: 2, got: 1 })
        ));

        let mut bad = shadows.clone();
        bad[1].width = 5;
        assert!(matches!(reveal_image(&bad), Err(SchemeError::HeaderMismatch(_))));

        let mut corrupt = shadows.clone();
        // Force a reconstructed root outside [0, N).
        for s in corrupt.iter_mut() {
            s.values[0] = 65000;
        }
        assert!(matches!(reveal_image(&corrupt), Err(SchemeError::RootMismatch(_))));
    }

    #[test]
    fn bad_threshold_propagates() {
        let img = GrayImage::new(2, 2, vec![1; 4]);
        let params = SchemeParams { k: 5, n_shares: 4, perm_seed: 0, coeff_seed: 0 };
        assert_eq!(
            share_image(&img, &params),
            Err(SchemeError::BadThreshold { k: 5, n: 4 })
        );
    }
}
