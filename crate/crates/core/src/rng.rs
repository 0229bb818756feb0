//! Counter-based deterministic random numbers.
//!
//! Every draw is a pure function of `(seed, counter)`, so parallel workers
//! can generate disjoint streams without shared state and outputs are
//! reproducible across platforms.

/// SplitMix64 finalizer over a seed/counter pair.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    seed: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed }
    }

    pub fn raw(&self, counter: u64) -> u64 {
        let mut z = self
            .seed
            .wrapping_add(0x9e3779b97f4a7c15)
            .wrapping_add(counter.wrapping_mul(0xbf58476d1ce4e5b9));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&self, counter: u64) -> f64 {
        (self.raw(counter) >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform integer in `0..=max`.
    pub fn below(&self, counter: u64, max: u64) -> u64 {
        self.raw(counter) % (max + 1)
    }
}
