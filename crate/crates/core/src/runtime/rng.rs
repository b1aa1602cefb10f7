use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifies the generator so another implementation can reproduce runs:
/// ChaCha with 8 rounds, keyed by `seed_from_u64` as defined by rand_core
/// 0.6 (PCG32 expansion of the seed into the 32-byte key), stream 0.
pub const ALGORITHM: &str = "chacha8-rand_core0.6-seed_from_u64";

/// Seeded random stream of a simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRng(ChaCha8Rng);

impl SimRng {
    pub fn seeded(seed: u64) -> SimRng {
        SimRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// An independent stream with the same key.
    pub fn split(&self, stream: u64) -> SimRng {
        let mut inner = self.0.clone();
        inner.set_stream(stream);
        inner.set_word_pos(0);
        SimRng(inner)
    }
}

impl RngCore for SimRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.0.try_fill_bytes(dest)
    }
}
