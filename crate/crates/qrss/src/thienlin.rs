//! The Thien-Lin (k,n) comparison scheme: k permuted pixels at a time become
//! the coefficients of a degree-(k-1) polynomial over GF(251), so each shadow
//! is 1/k the size of the original image.

use crate::image::GrayImage;
use crate::numtheory::mod_inv;
use crate::scheme::{SchemeError, SchemeParams};

/// The Thien-Lin field modulus.
pub const TL_PRIME: u64 = 251;

/// One Thien-Lin shadow; `values` has ceil(width*height / k) entries, each
/// below 251. Width and height describe the ORIGINAL image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TlShadow {
    pub x_coord: u8,
    pub k: u8,
    pub n_shares: u8,
    pub width: u32,
    pub height: u32,
    pub perm_seed: u64,
    pub values: Vec<u8>,
}

/// Truncates pixels above 250, permutes, then shares each k-pixel chunk as
/// polynomial coefficients evaluated at x = 1..n. The ragged tail chunk is
/// zero-padded; the header's original dimensions disambiguate on reveal.
pub fn tl_share(img: &GrayImage, params: &SchemeParams) -> Result<Vec<TlShadow>, SchemeError> {
    params.validate()?;
    let k = params.k as usize;
    let truncated = img.map(|v| v.min(250));
    let permuted = crate::scheme::permute_pixels(&truncated, params.perm_seed);

    let chunk_count = permuted.pixel_count().div_ceil(k);
    let mut shadows: Vec<TlShadow> = (1..=params.n_shares)
        .map(|x| TlShadow {
            x_coord: x,
            k: params.k,
            n_shares: params.n_shares,
            width: img.width(),
            height: img.height(),
            perm_seed: params.perm_seed,
            values: Vec::with_capacity(chunk_count),
        })
        .collect();

    for chunk in permuted.pixels().chunks(k) {
        for shadow in shadows.iter_mut() {
            let x = shadow.x_coord as u64;
            let mut acc = 0u64;
            for &coeff in chunk.iter().rev() {
                acc = (acc * x + coeff as u64) % TL_PRIME;
            }
            // implicit zero padding of the tail chunk
            shadow.values.push(acc as u8);
        }
    }
    Ok(shadows)
}

/// Recovers all k polynomial coefficients per chunk by Lagrange basis
/// expansion mod 251, drops the tail padding and inverts the permutation.
pub fn tl_reveal(shadows: &[TlShadow]) -> Result<GrayImage, SchemeError> {
    let first = shadows.first().ok_or(SchemeError::InsufficientShares { needed: 1, got: 0 })?;
    let k = first.k as usize;
    let pixel_count = first.width as usize * first.height as usize;
    let chunk_count = pixel_count.div_ceil(k);
    for s in shadows {
        if (s.k, s.n_shares, s.width, s.height, s.perm_seed)
            != (first.k, first.n_shares, first.width, first.height, first.perm_seed)
        {
            return Err(SchemeError::HeaderMismatch(format!(
                "shadow {} disagrees with shadow {}",
                s.x_coord, first.x_coord
            )));
        }
        if s.values.len() != chunk_count {
            return Err(SchemeError::HeaderMismatch(format!(
                "shadow {} payload length {} does not match ceil(w*h/k) = {}",
                s.x_coord,
                s.values.len(),
                chunk_count
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

    let xs: Vec<u64> = shadows[..k].iter().map(|s| s.x_coord as u64).collect();
    let basis = lagrange_basis_polys(&xs);

    let mut pixels = Vec::with_capacity(chunk_count * k);
    for j in 0..chunk_count {
        let mut coeffs = vec![0u64; k];
        for (i, s) in shadows[..k].iter().enumerate() {
            let y = s.values[j] as u64;
            for (c, &b) in coeffs.iter_mut().zip(&basis[i]) {
                *c = (*c + y * b) % TL_PRIME;
            }
        }
        pixels.extend(coeffs.iter().map(|&c| c as u8));
    }
    pixels.truncate(pixel_count);
    let permuted = GrayImage::new(first.width, first.height, pixels);
    Ok(crate::scheme::depermute_pixels(&permuted, first.perm_seed))
}

/// Coefficient vectors of the Lagrange basis polynomials L_i(x) for the
/// given evaluation points, mod 251. Interpolated poly = sum y_i * L_i.
fn lagrange_basis_polys(xs: &[u64]) -> Vec<Vec<u64>> {
    let m = TL_PRIME;
    let k = xs.len();
    // full product poly prod (x - x_j), degree k
    let mut full = vec![0u64; k + 1];
    full[0] = 1;
    let mut deg = 0;
    for &xj in xs {
        let neg = (m - xj % m) % m;
        for d in (0..=deg).rev() {
            let c = full[d];
            full[d + 1] = (full[d + 1] + c) % m;
            full[d] = c * neg % m;
        }
        deg += 1;
    }
    let mut out = Vec::with_capacity(k);
    for (i, &xi) in xs.iter().enumerate() {
        // synthetic division of `full` by (x - xi)
        let mut quot = vec![0u64; k];
        let mut carry = 0u64;
        for d in (0..k).rev() {
            carry = (full[d + 1] + carry * (xi % m)) % m;
            quot[d] = carry;
        }
        // scale by 1 / prod_{j != i} (xi - xj)
        let mut denom = 1u64;
        for (j, &xj) in xs.iter().enumerate() {
            if j != i {
                denom = denom * ((xi % m + m - xj % m) % m) % m;
            }
        }
        let inv = mod_inv(denom, m).expect("distinct x-coordinates below 251");
        for c in quot.iter_mut() {
            *c = *c * inv % m;
        }
        out.push(quot);
    }
    out
}
