use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Seed material for a reproducible ensemble.
///
/// `(seed, stream)` select a ChaCha key; each realization index then selects
/// its own counter-based substream of that key. A realization's draws are
/// therefore a pure function of `(seed, stream, index)`, independent of how
/// realizations are scheduled across workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Generator for one realization.
    pub fn realization_rng(&self, index: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        rng
    }
}

impl Default for RngSpec {
    fn default() -> Self {
        Self::new(42, 0)
    }
}
