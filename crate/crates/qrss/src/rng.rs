//! Seeded deterministic randomness: SplitMix64 and keyed Fisher-Yates
//! permutations. Both the pixel shuffle and the Shamir coefficient stream are
//! built on this generator so that shadow images are bit-identical across
//! platforms for a given seed.

/// SplitMix64 generator (Steele, Lea & Flood).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, bound) by rejection below the largest multiple
    /// of `bound` that fits in 64 bits.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // 2^64 mod bound; draws at or above 2^64 - rem are rejected.
        let rem = ((u64::MAX % bound) + 1) % bound;
        let max_ok = u64::MAX - rem;
        loop {
            let v = self.next_u64();
            if v <= max_ok {
                return v % bound;
            }
        }
    }
}

/// Index permutation produced by a keyed Fisher-Yates shuffle of the
/// identity: applying it as `out[i] = in[perm[i]]` gives the same result as
/// shuffling `in` directly with the same seed.
pub fn permutation(len: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    let mut rng = SplitMix64::new(seed);
    for i in (1..len).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}
