use rand_core::{Rng as _, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::graph::DynGraph;

/// Seedable, platform-independent generator (xoshiro256**, seeded through
/// SplitMix64).
#[derive(Debug, Clone)]
pub struct Rng(Xoshiro256StarStar);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        // Lemire's multiply-shift; the bias is negligible for our bounds
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }
}

/// Erdős–Rényi graph G(n, p).
pub fn gnp(n: usize, p: f64, rng: &mut Rng) -> DynGraph {
    let mut g = DynGraph::new(n).expect("n >= 1");
    for a in 0..n {
        for b in a + 1..n {
            if rng.chance(p) {
                g.insert_edge(a, b).expect("fresh pair");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = Rng::new(1);
        assert!((0..1000).all(|_| r.below(7) < 7));
    }

    #[test]
    fn gnp_extremes() {
        let mut r = Rng::new(3);
        assert_eq!(gnp(6, 0.0, &mut r).m(), 0);
        assert_eq!(gnp(6, 1.0, &mut r).m(), 15);
    }
}
