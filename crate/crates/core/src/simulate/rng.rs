//! Deterministic counter-based pseudo-random generator.
//!
//! Each path owns a SplitMix64 stream whose starting state is a fixed
//! finalizer mix of (seed, path index). Draws within a path advance the
//! counter sequentially, so an ensemble is a pure function of
//! (seed, path count) no matter how paths are scheduled across threads.
//! Not cryptographic; statistical quality is ample for these checks.

/// Per-path SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct PathRng {
    state: u64,
}

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl PathRng {
    /// Substream for one path: both arguments go through the finalizer, so
    /// nearby seeds and nearby path indices give unrelated streams.
    pub fn for_path(seed: u64, path: u64) -> Self {
        let state = mix(seed.wrapping_add(GOLDEN)) ^ mix(path.wrapping_mul(GOLDEN).wrapping_add(1));
        PathRng { state }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform draw in the half-open interval (0, 1].
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal via Box-Muller; always consumes exactly two uniforms.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Poisson count by Knuth's product method: O(lambda) uniforms per draw,
    /// fine at desk scale (lambda * dt well below ~700 so exp(-lambda)
    /// stays normal).
    pub fn poisson(&mut self, lambda: f64) -> u64 {
        if lambda <= 0.0 {
            return 0;
        }
        let limit = (-lambda).exp();
        let mut k = 0u64;
        let mut p = 1.0f64;
        loop {
            p *= self.uniform();
            if p <= limit {
                return k;
            }
            k += 1;
        }
    }
}
