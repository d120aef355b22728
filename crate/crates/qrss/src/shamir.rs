//! Shamir (k,n) threshold sharing of a single field element over the prime
//! field modulo 65521, with Lagrange reconstruction at x = 0.
//!
//! 65521 is the largest prime below 2^16: every QR-encrypted root (< 59989)
//! embeds losslessly and every share value serializes in two bytes.

use crate::numtheory::mod_inv;
use crate::rng::SplitMix64;
use thiserror::Error;

/// The Shamir field modulus, largest prime below 2^16.
pub const FIELD_PRIME: u64 = 65521;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ShamirError {
    #[error("threshold k={k} invalid for n={n} shares")]
    BadThreshold { k: usize, n: usize },
    #[error("duplicate share x-coordinate {0}")]
    DuplicateX(u64),
    #[error("need {needed} shares, got {got}")]
    InsufficientShares { needed: usize, got: usize },
}

/// One Shamir evaluation (x, y = F(x)). x = 0 is reserved for the secret.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharePoint {
    pub x: u64,
    pub y: u64,
}

/// F(x) = secret + coeffs[0]*x + coeffs[1]*x^2 + ... mod FIELD_PRIME.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharingPolynomial {
    pub secret: u64,
    pub coeffs: Vec<u64>,
}

/// Horner evaluation modulo the field prime.
pub fn poly_eval(poly: &SharingPolynomial, x: u64) -> u64 {
    let x = x % FIELD_PRIME;
    let mut acc = 0u64;
    for &c in poly.coeffs.iter().rev() {
        acc = (acc * x + c) % FIELD_PRIME;
    }
    (acc * x + poly.secret) % FIELD_PRIME
}

/// Splits `secret` into points (1, F(1)) .. (n_shares, F(n_shares)) with
/// k-1 coefficients drawn from the caller's stream.
pub fn share_secret(
    secret: u64,
    k: usize,
    n_shares: usize,
    coeff_source: &mut SplitMix64,
) -> Result<Vec<SharePoint>, ShamirError> {
    if k < 1 || k > n_shares {
        return Err(ShamirError::BadThreshold { k, n: n_shares });
    }
    debug_assert!(secret < FIELD_PRIME && (n_shares as u64) < FIELD_PRIME);
    let coeffs: Vec<u64> = (0..k - 1).map(|_| coeff_source.next_below(FIELD_PRIME)).collect();
    let poly = SharingPolynomial { secret, coeffs };
    Ok((1..=n_shares as u64)
        .map(|x| SharePoint { x, y: poly_eval(&poly, x) })
        .collect())
}

/// Recovers F(0) from the first k of the supplied points by Lagrange
/// interpolation at zero. Divisions are modular inverses, never integer
/// division.
pub fn reconstruct_secret(points: &[SharePoint], k: usize) -> Result<u64, ShamirError> {
    if points.len() < k {
        return Err(ShamirError::InsufficientShares { needed: k, got: points.len() });
    }
    let points = &points[..k];
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| q.x == p.x) {
            return Err(ShamirError::DuplicateX(p.x));
        }
    }
    let m = FIELD_PRIME;
    let mut secret = 0u64;
    for (i, pi) in points.iter().enumerate() {
        let mut num = 1u64;
        let mut den = 1u64;
        for (j, pj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num * (pj.x % m) % m;
            let diff = (pj.x % m + m - pi.x % m) % m;
            den = den * diff % m;
        }
        let li = num * mod_inv(den, m).expect("distinct x below prime") % m;
        secret = (secret + pi.y % m * li) % m;
    }
    Ok(secret)
}
