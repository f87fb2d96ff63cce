//! Uniform sampling from the two prototype regions and the dominance order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A d-dimensional sample point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate sum `x_1 + ... + x_d`.
    pub fn norm(&self) -> f64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Hypercube,
    Simplex,
}

/// A sampling model: region kind plus dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Model {
    pub kind: Region,
    pub d: usize,
}

impl Model {
    pub fn new(kind: Region, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadDimension { min: 1, got: 0 });
        }
        Ok(Model { kind, d })
    }

    pub fn hypercube(d: usize) -> Result<Self> {
        Model::new(Region::Hypercube, d)
    }

    pub fn simplex(d: usize) -> Result<Self> {
        Model::new(Region::Simplex, d)
    }
}

/// A splittable random stream. Streams with distinct `(seed, stream)` pairs
/// are statistically independent, and the draw sequence for a given pair is
/// identical on every platform and thread count.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { rng }
    }

    /// Uniform draw on `[0,1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Standard exponential via inversion.
    pub fn exponential(&mut self) -> f64 {
        // 1 - U is in (0,1], so the log is finite.
        -(1.0 - self.rng.gen::<f64>()).ln()
    }
}

/// Draw one point uniformly from the model's region.
///
/// Hypercube coordinates are independent uniforms on `[0,1)`. The simplex
/// sampler uses exponential spacings: draw `d+1` iid standard exponentials
/// and return the first `d` divided by the total, which is uniform on
/// `{x_i >= 0, sum x_i <= 1}` at O(d) cost.
pub fn sample_point(model: Model, rng: &mut RngStream) -> Point {
    match model.kind {
        Region::Hypercube => Point((0..model.d).map(|_| rng.uniform()).collect()),
        Region::Simplex => {
            let e: Vec<f64> = (0..=model.d).map(|_| rng.exponential()).collect();
            let total: f64 = e.iter().sum();
            Point(e[..model.d].iter().map(|x| x / total).collect())
        }
    }
}

/// Strict componentwise dominance: `p` dominates `q` iff `p_i > q_i` for all i.
pub fn dominates(p: &Point, q: &Point) -> bool {
    debug_assert_eq!(p.dim(), q.dim());
    p.0.iter().zip(&q.0).all(|(a, b)| a > b)
}

/// Checked variant of [`dominates`] for callers with unvalidated input.
pub fn try_dominates(p: &Point, q: &Point) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(dominates(p, q))
}

/// Componentwise maximum `p v q`.
pub fn join(p: &Point, q: &Point) -> Point {
    debug_assert_eq!(p.dim(), q.dim());
    Point(p.0.iter().zip(&q.0).map(|(a, b)| a.max(*b)).collect())
}
