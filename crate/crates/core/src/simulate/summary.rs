use crate::algebra::binomial;
use num_traits::ToPrimitive;

/// Highest central moment tracked.
pub const MAX_ORDER: usize = 6;

/// Count, mean and central power sums `M_p = Σ (x - mean)^p`, `p = 2..=6`,
/// with a pairwise merge that is exact up to rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentAccumulator {
    count: u64,
    mean: f64,
    // sums[p] for p in 2..=MAX_ORDER; entries 0 and 1 stay zero.
    sums: [f64; MAX_ORDER + 1],
}

impl Default for MomentAccumulator {
    fn default() -> Self {
        MomentAccumulator {
            count: 0,
            mean: 0.0,
            sums: [0.0; MAX_ORDER + 1],
        }
    }
}

impl MomentAccumulator {
    pub fn push(&mut self, x: f64) {
        let single = MomentAccumulator {
            count: 1,
            mean: x,
            sums: [0.0; MAX_ORDER + 1],
        };
        *self = self.merge(&single);
    }

    /// Combines two disjoint samples (Pébay's update for arbitrary order).
    pub fn merge(&self, other: &MomentAccumulator) -> MomentAccumulator {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * nb / n;
        let mut sums = [0.0; MAX_ORDER + 1];
        for p in 2..=MAX_ORDER {
            let mut s = self.sums[p] + other.sums[p];
            for k in 1..=p - 2 {
                let c = binomial(p as u64, k as u64).to_f64().unwrap_or(f64::NAN);
                s += c
                    * delta.powi(k as i32)
                    * ((-nb / n).powi(k as i32) * self.sums[p - k]
                        + (na / n).powi(k as i32) * other.sums[p - k]);
            }
            let cross = na * nb / n * delta;
            s += cross.powi(p as i32)
                * (1.0 / nb.powi(p as i32 - 1) - (-1.0 / na).powi(p as i32 - 1));
            sums[p] = s;
        }
        MomentAccumulator {
            count: self.count + other.count,
            mean,
            sums,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.sums[2] / (self.count - 1) as f64).max(0.0)
    }

    /// Population central moment `M_p / count`, `2 ≤ p ≤ 6`.
    pub fn central_moment(&self, p: usize) -> f64 {
        assert!(
            (2..=MAX_ORDER).contains(&p),
            "central moments of order 2..=6 only"
        );
        if self.count == 0 {
            return f64::NAN;
        }
        self.sums[p] / self.count as f64
    }
}

/// Summary statistics of a sample, with its sorted values for the
/// empirical distribution function.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSummary {
    moments: MomentAccumulator,
    sorted: Vec<f64>,
}

impl SampleSummary {
    pub(crate) fn new(moments: MomentAccumulator, mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        SampleSummary {
            moments,
            sorted: values,
        }
    }

    pub fn count(&self) -> u64 {
        self.moments.count()
    }

    pub fn mean(&self) -> f64 {
        self.moments.mean()
    }

    pub fn variance(&self) -> f64 {
        self.moments.variance()
    }

    pub fn standard_error(&self) -> f64 {
        (self.variance() / self.count() as f64).sqrt()
    }

    /// Standard error of the sample variance, `sqrt((μ4 - σ⁴(n-3)/(n-1))/n)`.
    pub fn variance_standard_error(&self) -> f64 {
        let n = self.count() as f64;
        let v = self.variance();
        ((self.central_moment(4) - v * v * (n - 3.0) / (n - 1.0)) / n)
            .max(0.0)
            .sqrt()
    }

    pub fn central_moment(&self, p: usize) -> f64 {
        self.moments.central_moment(p)
    }

    pub fn moments(&self) -> &MomentAccumulator {
        &self.moments
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of the sample `≤ x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        let below = self.sorted.partition_point(|&v| v <= x);
        below as f64 / self.sorted.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_pass(xs: &[f64], p: usize) -> f64 {
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        xs.iter().map(|x| (x - mean).powi(p as i32)).sum()
    }

    #[test]
    fn matches_two_pass() {
        let xs: Vec<f64> = (0..500)
            .map(|i| ((i * 37 % 101) as f64).sqrt() + 3.0)
            .collect();
        let mut acc = MomentAccumulator::default();
        xs.iter().for_each(|&x| acc.push(x));
        assert_eq!(acc.count(), 500);
        for p in 2..=MAX_ORDER {
            let expected = two_pass(&xs, p);
            assert!(
                (acc.sums[p] - expected).abs() < 1e-9 * expected.abs().max(1.0),
                "p = {p}"
            );
        }
    }

    #[test]
    fn small_samples() {
        let mut acc = MomentAccumulator::default();
        assert_eq!(acc.variance(), 0.0);
        acc.push(4.0);
        assert_eq!(acc.mean(), 4.0);
        assert_eq!(acc.variance(), 0.0);
        acc.push(6.0);
        assert_eq!(acc.variance(), 2.0);
    }

    #[test]
    fn ecdf_steps() {
        let s = SampleSummary::new(MomentAccumulator::default(), vec![3.0, 1.0, 2.0, 2.0]);
        assert_eq!(s.ecdf(0.5), 0.0);
        assert_eq!(s.ecdf(2.0), 0.75);
        assert_eq!(s.ecdf(10.0), 1.0);
    }

    proptest! {
        #[test]
        fn merge_is_split_independent(
            xs in proptest::collection::vec(-100.0f64..100.0, 2..200),
            split in 0usize..200,
        ) {
            let split = split % xs.len();
            let mut whole = MomentAccumulator::default();
            xs.iter().for_each(|&x| whole.push(x));
            let (mut a, mut b) = (MomentAccumulator::default(), MomentAccumulator::default());
            xs[..split].iter().for_each(|&x| a.push(x));
            xs[split..].iter().for_each(|&x| b.push(x));
            let merged = a.merge(&b);
            prop_assert_eq!(merged.count(), whole.count());
            prop_assert!((merged.mean() - whole.mean()).abs() < 1e-9);
            for p in 2..=MAX_ORDER {
                let scale = whole.sums[p].abs().max(1.0);
                prop_assert!((merged.sums[p] - whole.sums[p]).abs() < 1e-7 * scale);
            }
            prop_assert!(merged.variance() >= 0.0);
        }
    }
}
