//! Seeded sampling of points and pairs inside a domain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{Interval, SelfMap};

/// Shared knobs for sampled checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    /// Points per axis of the uniform grid; the same number of random pairs
    /// squared is drawn on top of the grid.
    pub grid_n: usize,
    pub seed: u64,
    /// How far past the outermost finite breakpoint an unbounded domain is sampled.
    pub margin: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            grid_n: 201,
            seed: 42,
            margin: 10.0,
        }
    }
}

impl Sampling {
    pub fn new(grid_n: usize, seed: u64) -> Self {
        Sampling {
            grid_n,
            seed,
            ..Default::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// The finite window sampled for `t`.
    pub fn window(&self, t: &SelfMap) -> (f64, f64) {
        t.domain().sampling_bounds(&t.breakpoints(), self.margin)
    }

    /// `grid_n × grid_n` grid pairs followed by `grid_n²` seeded random pairs.
    pub fn pairs(&self, t: &SelfMap) -> Vec<(f64, f64)> {
        let (lo, hi) = self.window(t);
        let dom = t.domain();
        let axis = grid(dom, lo, hi, self.grid_n);
        let mut out = Vec::with_capacity(2 * self.grid_n * self.grid_n);
        for &x in &axis {
            for &y in &axis {
                out.push((x, y));
            }
        }
        let mut rng = self.rng();
        for _ in 0..self.grid_n * self.grid_n {
            let x = draw(&mut rng, dom, lo, hi);
            let y = draw(&mut rng, dom, lo, hi);
            out.push((x, y));
        }
        out
    }
}

/// `n` evenly spaced points of `[lo, hi]`, dropping those outside `dom`.
pub fn grid(dom: &Interval, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo].into_iter().filter(|x| dom.contains(*x)).collect(),
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .filter(|x| dom.contains(*x))
            .collect(),
    }
}

/// A uniform draw from `[lo, hi] ∩ dom` by rejection.
pub fn draw<R: Rng>(rng: &mut R, dom: &Interval, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    loop {
        let x = rng.gen_range(lo..=hi);
        if dom.contains(x) {
            return x;
        }
    }
}
