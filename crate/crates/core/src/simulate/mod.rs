//! Seeded Monte-Carlo sampling of `T_n` and `L_n` from the block-counting
//! chain.
//!
//! Replicate `r` of a run with seed `s` draws its uniforms from
//! `ChaCha8Rng::seed_from_u64(s)` on stream `r`; the alternative
//! maximum-of-exponentials construction of `L_n` uses stream `r | 2^63`.
//! Replicates are generated in parallel but collected in index order, and
//! moment accumulators are merged in fixed-size chunks in a fixed order, so
//! the output is bit-identical for any thread count.

mod ks;
mod summary;

pub use ks::{critical_constant, ks_statistic, ks_test, ks_two_sample, KsResult};
pub use summary::{MomentAccumulator, SampleSummary, MAX_ORDER};

use crate::absorption::cdf_t_n;
use crate::tree_length::cdf_l;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

const CHUNK: usize = 4096;
const MAXIMUM_STREAM_BIT: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `T_n = Σ τ_k`.
    AbsorptionTime,
    /// `L_n = Σ k τ_k`.
    TreeLength,
    /// `L_n / 2 - ln n`.
    ShiftedTreeLength,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::AbsorptionTime => "absorption_time",
            Statistic::TreeLength => "tree_length",
            Statistic::ShiftedTreeLength => "shifted_tree_length",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimConfig {
    pub n: u64,
    pub reps: u64,
    pub seed: u64,
    pub statistic: Statistic,
}

impl SimConfig {
    pub fn new(n: u64, reps: u64, seed: u64, statistic: Statistic) -> Result<Self> {
        let config = SimConfig {
            n,
            reps,
            seed,
            statistic,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!(
                "sample size must be at least 2, got {}",
                self.n
            )));
        }
        if self.reps == 0 {
            return Err(Error::InvalidArgument(
                "at least one replicate is required".into(),
            ));
        }
        if self.reps >= MAXIMUM_STREAM_BIT {
            return Err(Error::InvalidArgument("too many replicates".into()));
        }
        Ok(())
    }

    /// Single-column header for raw sample output, e.g.
    /// `absorption_time(n=100;seed=42)`.
    pub fn csv_header(&self) -> String {
        format!("{}(n={};seed={})", self.statistic, self.n, self.seed)
    }
}

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Inverse-CDF exponential draw; `1 - U` lies in `(0, 1]`.
fn exponential(rng: &mut ChaCha8Rng, rate: f64) -> f64 {
    let u: f64 = rng.random();
    -(1.0 - u).ln() / rate
}

/// Replicate `r` of the configured statistic.
pub fn replicate(config: &SimConfig, r: u64) -> f64 {
    let mut rng = stream(config.seed, r);
    let mut t = 0.0;
    let mut l = 0.0;
    for k in (2..=config.n).rev() {
        let kf = k as f64;
        let tau = exponential(&mut rng, kf * (kf - 1.0) / 2.0);
        t += tau;
        l += kf * tau;
    }
    match config.statistic {
        Statistic::AbsorptionTime => t,
        Statistic::TreeLength => l,
        Statistic::ShiftedTreeLength => l / 2.0 - (config.n as f64).ln(),
    }
}

/// All replicates in index order.
pub fn sample_stream(config: &SimConfig) -> Result<Vec<f64>> {
    config.validate()?;
    Ok((0..config.reps)
        .into_par_iter()
        .map(|r| replicate(config, r))
        .collect())
}

/// Draws the replicates and summarizes them.
pub fn sample(config: &SimConfig) -> Result<SampleSummary> {
    Ok(summarize(sample_stream(config)?))
}

/// Summary of an arbitrary sample, reduced chunk-wise in a fixed order.
pub fn summarize(values: Vec<f64>) -> SampleSummary {
    let chunks: Vec<MomentAccumulator> = values
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = MomentAccumulator::default();
            chunk.iter().for_each(|&x| acc.push(x));
            acc
        })
        .collect();
    let total = chunks
        .iter()
        .fold(MomentAccumulator::default(), |acc, c| acc.merge(c));
    SampleSummary::new(total, values)
}

/// `L_n` sampled as the maximum of `n - 1` independent Exp(1/2) draws.
pub fn sample_tree_length_by_maximum(n: u64, reps: u64, seed: u64) -> Result<Vec<f64>> {
    SimConfig::new(n, reps, seed, Statistic::TreeLength)?;
    Ok((0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(seed, r | MAXIMUM_STREAM_BIT);
            (1..n)
                .map(|_| exponential(&mut rng, 0.5))
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Law the configured statistic is compared against: the exact law of `T_n`
/// or `L_n`, or the Gumbel limit for the shifted tree length.
pub fn reference_law(config: &SimConfig) -> (&'static str, Box<dyn Fn(f64) -> f64 + Sync>) {
    let n = config.n;
    match config.statistic {
        Statistic::AbsorptionTime => ("law of T_n", Box::new(move |t| cdf_t_n(n, t.max(0.0)))),
        Statistic::TreeLength => ("law of L_n", Box::new(move |t| cdf_l(n, t.max(0.0)))),
        Statistic::ShiftedTreeLength => ("Gumbel limit", Box::new(gumbel_cdf)),
    }
}

/// Standard Gumbel distribution function `exp(-exp(-x))`.
pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}
