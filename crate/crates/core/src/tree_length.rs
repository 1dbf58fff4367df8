//! Total tree length `L_n = Σ_{k=2}^n k τ_k` of the n-coalescent, and the
//! centred version `G_n = L_n/2 - log n` that converges to a Gumbel law.
//!
//! Each `k τ_k` is exponential with rate `μ_k = λ_k/k = (k-1)/2`, so `L_n`
//! is a sum of independent exponentials with rates `1/2, 1, …, (n-1)/2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{binomial, factorial, int, Rational};
use crate::{Error, Result};

/// Default limit on the number of tuples [`moment_l_ordered`] enumerates.
pub const DEFAULT_TUPLE_BUDGET: u128 = 10_000_000;

/// Edge rate `μ_k = (k-1)/2`.
pub fn mu(k: u64) -> Rational {
    Rational::new(BigInt::from(k.saturating_sub(1)), BigInt::from(2))
}

fn check(n: u64, j: u32) -> Result<()> {
    if n < 2 || j == 0 {
        return Err(Error::InvalidArgument(format!(
            "need n ≥ 2 and j ≥ 1, got n = {n}, j = {j}"
        )));
    }
    Ok(())
}

/// `Σ_{k=1}^{m} 1/k^j`, summed over the common denominator `lcm(1..m)^j`.
fn power_harmonic(m: u64, j: u32) -> Rational {
    let l = (1..=m).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let d = l.pow(j);
    let num = (1..=m).fold(BigInt::zero(), |acc, k| acc + &d / BigInt::from(k).pow(j));
    Rational::new(num, d)
}

/// `κ_j(L_n) = (j-1)! 2^j Σ_{k=1}^{n-1} 1/k^j`.
pub fn cumulant_l(n: u64, j: u32) -> Result<Rational> {
    check(n, j)?;
    Ok(Rational::from_integer(factorial(u64::from(j) - 1) << j) * power_harmonic(n - 1, j))
}

/// `E(L_n^j) = j! 2^j Σ_{k=1}^{n-1} (-1)^(k+1) C(n-1,k) / k^j`.
pub fn moment_l_alternating(n: u64, j: u32) -> Result<Rational> {
    check(n, j)?;
    let mut acc = Rational::zero();
    for k in 1..n {
        let term = Rational::new(binomial(n - 1, k), BigInt::from(k).pow(j));
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(Rational::from_integer(factorial(u64::from(j)) << j) * acc)
}

/// [`moment_l_ordered_with_budget`] with [`DEFAULT_TUPLE_BUDGET`].
pub fn moment_l_ordered(n: u64, j: u32) -> Result<Rational> {
    moment_l_ordered_with_budget(n, j, DEFAULT_TUPLE_BUDGET)
}

/// `E(L_n^j) = j! 2^j Σ_{1 ≤ k_1 ≤ … ≤ k_j ≤ n-1} 1/(k_1 ⋯ k_j)` by
/// enumerating every non-decreasing tuple.
pub fn moment_l_ordered_with_budget(n: u64, j: u32, budget: u128) -> Result<Rational> {
    check(n, j)?;
    let m = n - 1;
    let count = binomial(m + u64::from(j) - 1, u64::from(j));
    let required = count.to_u128().unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::ComplexityGuard { required, budget });
    }
    // Every 1/(k_1⋯k_j) is an integer multiple of 1/lcm(1..m)^j.
    let l = (1..=m).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let d = l.pow(j);
    let quotients: Vec<BigInt> = (1..=m).map(|k| &l / BigInt::from(k)).collect();
    let mut tuple = vec![1u64; j as usize];
    let mut num = BigInt::zero();
    loop {
        num += tuple
            .iter()
            .fold(BigInt::one(), |acc, &k| acc * &quotients[(k - 1) as usize]);
        // Advance to the next non-decreasing tuple.
        let Some(pos) = tuple.iter().rposition(|&k| k < m) else {
            break;
        };
        let next = tuple[pos] + 1;
        for k in &mut tuple[pos..] {
            *k = next;
        }
    }
    Ok(Rational::from_integer(factorial(u64::from(j)) << j) * Rational::new(num, d))
}

/// `P(L_n ≤ t) = (1 - e^(-t/2))^(n-1)`.
pub fn cdf_l(n: u64, t: f64) -> f64 {
    assert!(n >= 2 && t >= 0.0, "cdf_l needs n ≥ 2 and t ≥ 0");
    (-(-t / 2.0).exp_m1()).powf((n - 1) as f64)
}

/// Cumulant `κ_j(G_n)` of `G_n = L_n/2 - log n`.
///
/// For `j ≥ 2` this is the rational `(j-1)! Σ_{k=1}^{n-1} 1/k^j`; for `j = 1`
/// it is `H_(n-1) - log n`, kept as a rational part plus a symbolic
/// `-log n`. The rational part is only built on request because its
/// denominator grows like `lcm(1..n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftedCumulant {
    n: u64,
    order: u32,
}

pub fn gumbel_shift_cumulant(n: u64, j: u32) -> Result<ShiftedCumulant> {
    check(n, j)?;
    Ok(ShiftedCumulant { n, order: j })
}

impl ShiftedCumulant {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Exact part, `(j-1)! Σ_{k=1}^{n-1} 1/k^j`.
    pub fn rational_part(&self) -> Rational {
        int(factorial(u64::from(self.order) - 1)) * power_harmonic(self.n - 1, self.order)
    }

    /// `Some(n)` when the value carries an extra `-log n`.
    pub fn log_offset(&self) -> Option<u64> {
        (self.order == 1).then_some(self.n)
    }

    pub fn to_f64(&self) -> f64 {
        let j = self.order as i32;
        let sum: f64 = (1..self.n).rev().map(|k| (k as f64).powi(-j)).sum();
        let scale = factorial(u64::from(self.order) - 1)
            .to_f64()
            .unwrap_or(f64::INFINITY);
        let value = scale * sum;
        match self.log_offset() {
            Some(n) => value - (n as f64).ln(),
            None => value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption::{cumulants_to_moments, lambda};
    use crate::algebra::{eval_f64, rational, zeta_numeric, ZetaPolynomial};
    use crate::quadrature::integrate;

    #[test]
    fn rates_match_merge_rates() {
        for k in 2..100 {
            assert_eq!(mu(k), lambda(k) / int(k as i64));
        }
    }

    #[test]
    fn small_cumulants() {
        assert_eq!(cumulant_l(2, 1).unwrap(), int(2));
        assert_eq!(cumulant_l(2, 2).unwrap(), int(4));
        assert_eq!(cumulant_l(4, 1).unwrap(), rational(11, 3));
        assert!(cumulant_l(1, 1).is_err());
    }

    #[test]
    fn small_moments() {
        assert_eq!(moment_l_alternating(2, 1).unwrap(), int(2));
        assert_eq!(moment_l_alternating(3, 1).unwrap(), int(3));
        assert_eq!(
            moment_l_alternating(3, 1).unwrap(),
            cumulant_l(3, 1).unwrap()
        );
        assert_eq!(moment_l_ordered(3, 2).unwrap(), int(14));
        for j in 1..=6 {
            assert_eq!(
                moment_l_ordered(2, j).unwrap(),
                int(factorial(u64::from(j)) << j)
            );
        }
    }

    #[test]
    fn combinatorial_identity() {
        for n in 2..=12 {
            for j in 1..=6 {
                assert_eq!(
                    moment_l_alternating(n, j).unwrap(),
                    moment_l_ordered(n, j).unwrap(),
                    "n = {n}, j = {j}"
                );
            }
        }
    }

    #[test]
    fn moments_from_cumulants() {
        for n in 2..=10 {
            let kappas: Vec<_> = (1..=6)
                .map(|j| ZetaPolynomial::constant(cumulant_l(n, j).unwrap()))
                .collect();
            for (j, m) in cumulants_to_moments(&kappas).iter().enumerate() {
                assert_eq!(
                    m.constant_term(),
                    moment_l_alternating(n, j as u32 + 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn tuple_budget() {
        assert!(matches!(
            moment_l_ordered_with_budget(12, 6, 100),
            Err(Error::ComplexityGuard {
                required: 8008,
                budget: 100
            })
        ));
    }

    #[test]
    fn cdf_moments_by_quadrature() {
        let n = 5;
        for j in 1..=3 {
            // E(L^j) = ∫ j t^(j-1) (1 - F(t)) dt
            let r = integrate(
                |t| f64::from(j) * t.powi(j as i32 - 1) * (1.0 - cdf_l(n, t)),
                0.0,
                200.0,
                1e-10,
            )
            .unwrap();
            let exact = eval_f64(&ZetaPolynomial::constant(
                moment_l_alternating(n, j).unwrap(),
            ));
            assert!((r.value - exact).abs() < 1e-6, "j = {j}");
        }
        assert_eq!(cdf_l(7, 0.0), 0.0);
        assert!((cdf_l(2, 1.3) - (1.0 - (-0.65f64).exp())).abs() < 1e-15);
        assert!((cdf_l(7, 200.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_cumulants() {
        let c = gumbel_shift_cumulant(2, 3).unwrap();
        assert_eq!(c.rational_part(), int(2));
        assert_eq!(c.log_offset(), None);

        let z2 = zeta_numeric(2, 20).unwrap().to_f64();
        // ζ(2) - Σ_{k<n} 1/k² lies between 1/n and 1/(n-1).
        let n = 10_000u64;
        let gap = z2 - gumbel_shift_cumulant(n, 2).unwrap().to_f64();
        assert!(
            gap > 1.0 / n as f64 && gap < 1.0 / (n - 1) as f64,
            "gap = {gap:e}"
        );

        let g = gumbel_shift_cumulant(1_000_000, 1).unwrap();
        assert_eq!(g.log_offset(), Some(1_000_000));
        assert!((g.to_f64() - 0.577_215_664_901_532_9).abs() < 1e-6);

        let h = gumbel_shift_cumulant(5, 1).unwrap();
        assert_eq!(h.rational_part(), rational(25, 12));
    }

    #[test]
    fn shifted_cumulants_converge_monotonically() {
        for j in 2..=4u32 {
            let limit = factorial(u64::from(j) - 1).to_f64().unwrap()
                * zeta_numeric(j, 20).unwrap().to_f64();
            let mut prev = f64::INFINITY;
            for n in [10, 100, 1000, 10_000] {
                let err = (gumbel_shift_cumulant(n, j).unwrap().to_f64() - limit).abs();
                assert!(err < prev, "j = {j}, n = {n}");
                prev = err;
            }
            assert!(prev < 1e-3);
        }
    }
}
