//! Bit-exact serialization: binary PGM (P5) for grayscale images and the
//! QRS1 container for shadow files.
//!
//! QRS1 layout, all integers big-endian:
//!   magic "QRS1" | scheme_id u8 (1 = QRSS, 2 = Thien-Lin) | k u8 | n u8 |
//!   x_coord u8 | width u32 | height u32 | perm_seed u64 | value_width u8 |
//!   payload (fixed-width big-endian values)

use crate::image::GrayImage;
use crate::scheme::ShadowImage;
use crate::shamir::FIELD_PRIME;
use crate::thienlin::{TlShadow, TL_PRIME};
use thiserror::Error;

pub const SHADOW_MAGIC: [u8; 4] = *b"QRS1";
pub const SCHEME_ID_QRSS: u8 = 1;
pub const SCHEME_ID_THIENLIN: u8 = 2;
const HEADER_LEN: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("unsupported maxval {0} (only maxval <= 255)")]
    UnsupportedMaxval(u64),
    #[error("truncated payload: expected {expected} bytes, got {got}")]
    TruncatedPayload { expected: usize, got: usize },
    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),
    #[error("header invariant violated: {0}")]
    HeaderInvariantViolated(String),
}

/// A shadow of either scheme, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShadowFile {
    Qrss(ShadowImage),
    ThienLin(TlShadow),
}

// ---- PGM ----

struct PgmTokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmTokens<'a> {
    /// Skips whitespace and '#' comments (to end of line).
    fn skip_filler(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next_number(&mut self) -> Result<u64, FormatError> {
        self.skip_filler();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(FormatError::MalformedHeader("expected a decimal number".into()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| FormatError::MalformedHeader("number out of range".into()))
    }
}

/// Parses a binary PGM (P5) with maxval <= 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, FormatError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(FormatError::MalformedHeader("missing P5 magic".into()));
    }
    let mut tok = PgmTokens { bytes, pos: 2 };
    let width = tok.next_number()?;
    let height = tok.next_number()?;
    let maxval = tok.next_number()?;
    if maxval > 255 {
        return Err(FormatError::UnsupportedMaxval(maxval));
    }
    if maxval == 0 {
        return Err(FormatError::MalformedHeader("maxval must be positive".into()));
    }
    if width == 0 || height == 0 || width > u32::MAX as u64 || height > u32::MAX as u64 {
        return Err(FormatError::MalformedHeader(format!("bad dimensions {width}x{height}")));
    }
    // exactly one whitespace byte separates the header from the payload
    if tok.pos >= bytes.len() || !bytes[tok.pos].is_ascii_whitespace() {
        return Err(FormatError::MalformedHeader("missing separator before payload".into()));
    }
    tok.pos += 1;
    let expected = (width * height) as usize;
    let payload = &bytes[tok.pos..];
    if payload.len() < expected {
        return Err(FormatError::TruncatedPayload { expected, got: payload.len() });
    }
    Ok(GrayImage::new(width as u32, height as u32, payload[..expected].to_vec()))
}

/// Canonical binary PGM: "P5\n<w> <h>\n255\n" followed by the raw payload.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

// ---- QRS1 shadow container ----

pub fn write_shadow(shadow: &ShadowFile) -> Vec<u8> {
    let (scheme_id, k, n, x, w, h, seed, value_width) = match shadow {
        ShadowFile::Qrss(s) => {
            (SCHEME_ID_QRSS, s.k, s.n_shares, s.x_coord, s.width, s.height, s.perm_seed, 2u8)
        }
        ShadowFile::ThienLin(s) => {
            (SCHEME_ID_THIENLIN, s.k, s.n_shares, s.x_coord, s.width, s.height, s.perm_seed, 1u8)
        }
    };
    let mut out = Vec::with_capacity(HEADER_LEN);
    out.extend_from_slice(&SHADOW_MAGIC);
    out.push(scheme_id);
    out.push(k);
    out.push(n);
    out.push(x);
    out.extend_from_slice(&w.to_be_bytes());
    out.extend_from_slice(&h.to_be_bytes());
    out.extend_from_slice(&seed.to_be_bytes());
    out.push(value_width);
    match shadow {
        ShadowFile::Qrss(s) => {
            for &v in &s.values {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
        ShadowFile::ThienLin(s) => out.extend_from_slice(&s.values),
    }
    out
}

pub fn read_shadow(bytes: &[u8]) -> Result<ShadowFile, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::TruncatedPayload { expected: HEADER_LEN, got: bytes.len() });
    }
    let magic: [u8; 4] = bytes[..4].try_into().unwrap();
    if magic != SHADOW_MAGIC {
        return Err(FormatError::BadMagic(magic));
    }
    let scheme_id = bytes[4];
    let k = bytes[5];
    let n_shares = bytes[6];
    let x_coord = bytes[7];
    let width = u32::from_be_bytes(bytes[8..12].try_into().unwrap());
    let height = u32::from_be_bytes(bytes[12..16].try_into().unwrap());
    let perm_seed = u64::from_be_bytes(bytes[16..24].try_into().unwrap());
    let value_width = bytes[24];

    if k == 0 || k > n_shares {
        return Err(FormatError::HeaderInvariantViolated(format!("k={k}, n={n_shares}")));
    }
    if x_coord == 0 || x_coord > n_shares {
        return Err(FormatError::HeaderInvariantViolated(format!(
            "x_coord={x_coord} outside [1, {n_shares}]"
        )));
    }
    if width == 0 || height == 0 {
        return Err(FormatError::HeaderInvariantViolated(format!(
            "empty dimensions {width}x{height}"
        )));
    }
    let pixel_count = width as usize * height as usize;
    let payload = &bytes[HEADER_LEN..];

    match (scheme_id, value_width) {
        (SCHEME_ID_QRSS, 2) => {
            let expected = pixel_count * 2;
            if payload.len() != expected {
                return Err(FormatError::TruncatedPayload { expected, got: payload.len() });
            }
            let mut values = Vec::with_capacity(pixel_count);
            for pair in payload.chunks_exact(2) {
                let v = u16::from_be_bytes(pair.try_into().unwrap());
                if v as u64 >= FIELD_PRIME {
                    return Err(FormatError::HeaderInvariantViolated(format!(
                        "share value {v} not below the field prime"
                    )));
                }
                values.push(v);
            }
            Ok(ShadowFile::Qrss(ShadowImage {
                x_coord, k, n_shares, width, height, perm_seed, values,
            }))
        }
        (SCHEME_ID_THIENLIN, 1) => {
            let expected = pixel_count.div_ceil(k as usize);
            if payload.len() != expected {
                return Err(FormatError::TruncatedPayload { expected, got: payload.len() });
            }
            if let Some(&v) = payload.iter().find(|&&v| v as u64 >= TL_PRIME) {
                return Err(FormatError::HeaderInvariantViolated(format!(
                    "share value {v} not below 251"
                )));
            }
            Ok(ShadowFile::ThienLin(TlShadow {
                x_coord, k, n_shares, width, height, perm_seed,
                values: payload.to_vec(),
            }))
        }
        _ => Err(FormatError::HeaderInvariantViolated(format!(
            "scheme_id={scheme_id} with value_width={value_width}"
        ))),
    }
}
