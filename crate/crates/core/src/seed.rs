use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible source of randomness: a 64-bit seed plus a stream index.
///
/// Each `(value, stream)` pair selects an independent ChaCha8 stream, so
/// trial `i` of an experiment can use `seed.stream(i)` and produce the same
/// output regardless of the order in which trials run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    pub value: u64,
    pub stream: u64,
}

impl Seed {
    pub const fn new(value: u64) -> Self {
        Seed { value, stream: 0 }
    }

    pub const fn stream(self, stream: u64) -> Self {
        Seed { value: self.value, stream }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.value);
        rng.set_stream(self.stream);
        rng
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed::new(value)
    }
}
