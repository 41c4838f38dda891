//! Counter-based pseudorandom numbers for reproducible sweeps.
//!
//! The sweeps need streams that are identical across platforms, thread
//! counts and iteration orders, so instead of a stateful generator each
//! draw is a pure function of (seed, stream, counter). The mixer is the
//! splitmix64 finalizer.

/// splitmix64 finalizer: a bijective 64-bit mixer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The `counter`-th draw of stream `stream` under `seed`.
#[inline]
pub fn draw(seed: u64, stream: u64, counter: u64) -> u64 {
    mix64(seed ^ mix64(stream) ^ counter.wrapping_mul(0x9E3779B97F4A7C15))
}
