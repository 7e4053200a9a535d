//! Deterministic seeded sampling.
//!
//! All randomness flows from one root seed. Sub-seeds are derived by hashing
//! a stable label into the root with FNV-1a and mixing through SplitMix64,
//! so every check draws from its own reproducible stream:
//!
//! `subseed(root, label) = splitmix64(root XOR fnv1a64(label))`

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fnv1a64(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn subseed(root: u64, label: &str) -> u64 {
    splitmix64(root ^ fnv1a64(label))
}

/// A labeled deterministic stream of small integers.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(root: u64, label: &str) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(subseed(root, label)),
        }
    }

    /// A small integer in [-9, 9].
    pub fn small_int(&mut self) -> i64 {
        self.rng.gen_range(-9..=9)
    }

    pub fn small_nonzero(&mut self) -> i64 {
        loop {
            let v = self.small_int();
            if v != 0 {
                return v;
            }
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::from_int(self.small_int())
    }

    pub fn point(&mut self, dim: usize) -> Vec<Scalar> {
        (0..dim).map(|_| self.scalar()).collect()
    }

    /// Draw points until `accept` holds, with a retry bound; pole-style
    /// rejections re-sample rather than fail.
    pub fn point_where(
        &mut self,
        dim: usize,
        max_tries: usize,
        mut accept: impl FnMut(&[Scalar]) -> bool,
    ) -> Result<Vec<Scalar>> {
        for _ in 0..max_tries {
            let p = self.point(dim);
            if accept(&p) {
                return Ok(p);
            }
        }
        Err(Error::TooManyRetries(max_tries))
    }
}
