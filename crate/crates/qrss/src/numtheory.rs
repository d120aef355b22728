//! Modular arithmetic and quadratic-residue machinery for the composite
//! modulus N = 239 * 251 = 59989.
//!
//! Both primes satisfy p ≡ 3 (mod 4), so square roots modulo each prime are
//! a single exponentiation by (p+1)/4, and the four roots modulo N are
//! assembled with the CRT idempotents a = q*(q^-1 mod p) and
//! b = p*(p^-1 mod q). Every value handled here is below 2^17, so all
//! intermediate products fit comfortably in u64.

use thiserror::Error;

/// The two fixed Blum-type primes and their product.
pub const P: u64 = 239;
pub const Q: u64 = 251;
pub const N: u64 = P * Q;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(u64, u64),
    #[error("{0} is not a quadratic residue to both primes")]
    NotQuadraticResidue(u64),
}

/// base^exp mod m by square-and-multiply. Requires m < 2^32.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m >= 1 && m < (1 << 32));
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn mod_inv(x: u64, m: u64) -> Result<u64, NumTheoryError> {
    let (mut r0, mut r1) = (m as i64, (x % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(NumTheoryError::NotInvertible(x, m));
    }
    Ok(t0.rem_euclid(m as i64) as u64)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's criterion: x^((prime-1)/2) ≡ 1 (mod prime) iff x is a QR.
pub fn is_qr(x: u64, prime: u64) -> Result<bool, NumTheoryError> {
    if gcd(x % prime, prime) != 1 {
        return Err(NumTheoryError::NotCoprime(x, prime));
    }
    Ok(mod_pow(x, (prime - 1) / 2, prime) == 1)
}

/// The composite QR modulus with its CRT idempotents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModulusPair {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub crt_a: u64,
    pub crt_b: u64,
}

impl ModulusPair {
    /// The fixed pair p = 239, q = 251.
    pub fn new() -> Self {
        assert_eq!((P + 1) % 4, 0);
        assert_eq!((Q + 1) % 4, 0);
        let crt_a = Q * mod_inv(Q, P).expect("p, q coprime") % N;
        let crt_b = P * mod_inv(P, Q).expect("p, q coprime") % N;
        debug_assert_eq!((crt_a + crt_b) % N, 1);
        ModulusPair { p: P, q: Q, n: N, crt_a, crt_b }
    }
}

impl Default for ModulusPair {
    fn default() -> Self {
        Self::new()
    }
}

/// The four square roots of a value that is a QR to both primes, ordered as
/// (a*m1 + b*m3, a*m1 + b*m4, a*m2 + b*m3, a*m2 + b*m4) mod N. Zero maps to
/// four zero roots.
pub fn four_square_roots(x: u64, mp: &ModulusPair) -> Result<[u64; 4], NumTheoryError> {
    if x == 0 {
        return Ok([0; 4]);
    }
    if !is_qr(x, mp.p).map_err(|_| NumTheoryError::NotQuadraticResidue(x))?
        || !is_qr(x, mp.q).map_err(|_| NumTheoryError::NotQuadraticResidue(x))?
    {
        return Err(NumTheoryError::NotQuadraticResidue(x));
    }
    let m1 = mod_pow(x, (mp.p + 1) / 4, mp.p);
    let m2 = (mp.p - m1) % mp.p;
    let m3 = mod_pow(x, (mp.q + 1) / 4, mp.q);
    let m4 = (mp.q - m3) % mp.q;
    let combine = |u: u64, v: u64| (mp.crt_a * u + mp.crt_b * v) % mp.n;
    Ok([
        combine(m1, m3),
        combine(m1, m4),
        combine(m2, m3),
        combine(m2, m4),
    ])
}

/// Precomputed QR/QNR membership for both primes plus the four case
/// parameters r1..r4 (smallest positive member of each intersection set).
#[derive(Debug, Clone)]
pub struct ResidueClassifier {
    mp: ModulusPair,
    qr_mod_p: Vec<bool>,
    qr_mod_q: Vec<bool>,
    r_params: [u64; 4],
}

impl ResidueClassifier {
    pub fn new(mp: ModulusPair) -> Self {
        let qr_mod_p: Vec<bool> = (0..mp.p)
            .map(|x| x != 0 && is_qr(x, mp.p).unwrap())
            .collect();
        let qr_mod_q: Vec<bool> = (0..mp.q)
            .map(|x| x != 0 && is_qr(x, mp.q).unwrap())
            .collect();
        let mut cls = ResidueClassifier { mp, qr_mod_p, qr_mod_q, r_params: [0; 4] };
        for t in 1..=4u8 {
            cls.r_params[t as usize - 1] = cls.smallest_in_case(t);
        }
        cls
    }

    fn smallest_in_case(&self, t: u8) -> u64 {
        (1..self.mp.n)
            .find(|&x| x % self.mp.p != 0 && x % self.mp.q != 0 && self.classify_case(x).unwrap() == t)
            .expect("each case class is nonempty")
    }

    pub fn modulus(&self) -> &ModulusPair {
        &self.mp
    }

    /// Which of the four QR/QNR combinations `x` falls into:
    /// 1 = QR/QR, 2 = QR mod p only, 3 = QR mod q only, 4 = QNR/QNR.
    pub fn classify_case(&self, x: u64) -> Result<u8, NumTheoryError> {
        if gcd(x, self.mp.n) != 1 {
            return Err(NumTheoryError::NotCoprime(x, self.mp.n));
        }
        let qp = self.qr_mod_p[(x % self.mp.p) as usize];
        let qq = self.qr_mod_q[(x % self.mp.q) as usize];
        Ok(match (qp, qq) {
            (true, true) => 1,
            (true, false) => 2,
            (false, true) => 3,
            (false, false) => 4,
        })
    }

    /// The case parameter r_t: multiplying any x of case t by r_t yields a
    /// value that is a QR to both primes.
    pub fn case_parameter(&self, t: u8) -> u64 {
        assert!((1..=4).contains(&t));
        self.r_params[t as usize - 1]
    }
}
