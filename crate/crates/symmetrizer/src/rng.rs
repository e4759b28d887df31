//! Deterministic random source for the heuristic scans and probe suites.
//!
//! A hand-rolled splitmix64 keeps the sampled probes byte-identical across
//! platforms and dependency upgrades, which the report determinism contract
//! requires.

use crate::{q, qr, Q};

/// Default seed used by every command unless overridden with `--seed`.
pub const DEFAULT_SEED: u64 = 1729;

/// splitmix64 stream.
#[derive(Debug, Clone)]
pub struct DetRng {
    state: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (`n > 0`).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Signed integer in `-max..=max`.
    pub fn int(&mut self, max: u64) -> i64 {
        self.below(2 * max + 1) as i64 - max as i64
    }

    /// Small rational with numerator in `-max..=max` and denominator in `1..=den_max`.
    pub fn rational(&mut self, max: u64, den_max: u64) -> Q {
        qr(self.int(max), self.below(den_max) as i64 + 1)
    }

    /// Small nonzero rational.
    pub fn nonzero_rational(&mut self, max: u64, den_max: u64) -> Q {
        loop {
            let r = self.rational(max, den_max);
            if r != q(0) {
                return r;
            }
        }
    }
}
