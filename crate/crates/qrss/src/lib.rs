//! Grayscale-image (k,n) threshold secret sharing.
//!
//! The main pipeline encrypts each pixel with quadratic residues modulo the
//! composite 239*251 and splits the chosen square root into n shadow images
//! with Shamir's polynomial scheme. Any k shadows reconstruct the image
//! exactly (up to the initial clamp of pixels above 238). A Thien-Lin style
//! scheme over GF(251) is included for comparison, along with PSNR/MSE
//! evaluation and bit-exact PGM / shadow-file serialization.

pub mod image;
pub mod image_io;
pub mod metrics;
pub mod numtheory;
pub mod rng;
pub mod scheme;
pub mod shamir;
pub mod thienlin;

pub use image::GrayImage;
pub use image_io::{read_pgm, read_shadow, write_pgm, write_shadow, FormatError, ShadowFile};
pub use metrics::{mse, psnr, MetricsError, QualityReport};
pub use numtheory::{
    four_square_roots, is_qr, mod_inv, mod_pow, ModulusPair, NumTheoryError, ResidueClassifier,
};
pub use rng::SplitMix64;
pub use scheme::{
    clamp_pixel, decrypt_root, depermute_pixels, encrypt_pixel, permute_pixels, reveal_image,
    share_image, EncryptedPixel, SchemeError, SchemeParams, ShadowImage,
};
pub use shamir::{
    poly_eval, reconstruct_secret, share_secret, ShamirError, SharePoint, SharingPolynomial,
    FIELD_PRIME,
};
pub use thienlin::{tl_reveal, tl_share, TlShadow, TL_PRIME};
