//! The absorption time `T_n = Σ_{k=2}^n τ_k` of the block-counting chain,
//! with `τ_k ~ Exp(λ_k)` and `λ_k = k(k-1)/2`, and its limit `T`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{binomial, eval_f64, factorial, int, Rational, ZetaPolynomial};
use crate::{Error, Result};

/// Merge rate `λ_k = k(k-1)/2` out of state `k`.
pub fn lambda(k: u64) -> Rational {
    Rational::new(
        BigInt::from(k) * BigInt::from(k.saturating_sub(1)),
        BigInt::from(2),
    )
}

fn lambda_f64(k: u64) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

fn pow2(e: u32) -> Rational {
    Rational::from_integer(BigInt::one() << e)
}

fn signed(j: u32) -> Rational {
    if j.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `κ_j(T) = (-1)^j 2^(j+1) Σ_{m=0}^{⌊j/2⌋} (2j-2m-1)!/(j-2m)! ζ(2m)`.
pub fn cumulant_t(j: u32) -> ZetaPolynomial {
    assert!(j >= 1, "cumulants are indexed from 1");
    let prefix = signed(j) * pow2(j + 1);
    let mut out = ZetaPolynomial::zero();
    for m in 0..=j / 2 {
        let c = Rational::new(
            factorial(u64::from(2 * j - 2 * m - 1)),
            factorial(u64::from(j - 2 * m)),
        );
        out += ZetaPolynomial::zeta(2 * m).scale(&(&prefix * c));
    }
    out
}

/// `E(T^j) = (-1)^j j 2^(j+1) Σ_{m=0}^{⌊j/2⌋} (2m-1)(1-2^(1-2m)) (2j-2m-2)!/(j-2m)! ζ(2m)`.
pub fn moment_t(j: u32) -> ZetaPolynomial {
    if j == 0 {
        return ZetaPolynomial::one();
    }
    let prefix = signed(j) * int(j) * pow2(j + 1);
    let mut out = ZetaPolynomial::zero();
    for m in 0..=j / 2 {
        let damp = if m == 0 {
            -Rational::one()
        } else {
            Rational::one() - Rational::new(BigInt::one(), BigInt::one() << (2 * m - 1))
        };
        let c = int(2 * i64::from(m) - 1)
            * damp
            * Rational::new(
                factorial(u64::from(2 * j - 2 * m - 2)),
                factorial(u64::from(j - 2 * m)),
            );
        out += ZetaPolynomial::zeta(2 * m).scale(&(&prefix * c));
    }
    out
}

/// Moments `m_1..m_J` from cumulants `κ_1..κ_J` via
/// `m_n = Σ_{k=1}^n C(n-1,k-1) κ_k m_{n-k}`.
pub fn cumulants_to_moments(kappas: &[ZetaPolynomial]) -> Vec<ZetaPolynomial> {
    let mut m = vec![ZetaPolynomial::one()];
    for n in 1..=kappas.len() {
        let mut acc = ZetaPolynomial::zero();
        for k in 1..=n {
            let c = Rational::from_integer(binomial(n as u64 - 1, k as u64 - 1));
            acc += (&kappas[k - 1] * &m[n - k]).scale(&c);
        }
        m.push(acc);
    }
    m.remove(0);
    m
}

/// Partial sum over `2 ≤ k_1 ≤ … ≤ k_j ≤ kmax` with an upper bound on the
/// missing part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderedTupleSum {
    pub value: f64,
    pub tail_bound: f64,
}

/// `j! 2^j Σ_{2 ≤ k_1 ≤ … ≤ k_j ≤ kmax} Π 1/(k_i(k_i-1))`, which increases to
/// `E(T^j)` as `kmax → ∞`.
///
/// The multiset sum is accumulated one index at a time (complete homogeneous
/// symmetric polynomials), so the cost is `O(j·kmax)`. Tuples with some
/// index above `kmax` contribute at most `2j E(T^(j-1)) / kmax`.
pub fn moment_t_ordered_oracle(j: u32, kmax: u64) -> Result<OrderedTupleSum> {
    if !(1..=4).contains(&j) || kmax < 2 {
        return Err(Error::InvalidArgument(format!(
            "ordered-tuple oracle needs 1 ≤ j ≤ 4 and kmax ≥ 2, got j = {j}, kmax = {kmax}"
        )));
    }
    let mut h = vec![0.0f64; j as usize + 1];
    h[0] = 1.0;
    for k in 2..=kmax {
        let x = 1.0 / (k as f64 * (k as f64 - 1.0));
        for r in 1..=j as usize {
            h[r] += x * h[r - 1];
        }
    }
    let scale = factorial(u64::from(j)).to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(j as i32);
    let prev = eval_f64(&moment_t(j - 1));
    Ok(OrderedTupleSum {
        value: scale * h[j as usize],
        tail_bound: 2.0 * f64::from(j) * prev / kmax as f64,
    })
}

/// Mixture weights of the hypoexponential law of `T_n`:
/// `P(T_n > t) = Σ_{k=2}^n a_nk e^(-λ_k t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypoexpCoefficients {
    n: u64,
    a: Vec<Rational>,
}

impl HypoexpCoefficients {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `a_nk` for `2 ≤ k ≤ n`.
    pub fn a(&self, k: u64) -> &Rational {
        &self.a[(k - 2) as usize]
    }

    /// `(k, a_nk)` for `k = 2..=n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.a.iter().enumerate().map(|(i, a)| (i as u64 + 2, a))
    }
}

/// `b_nk = n!(n-1)!/((n-k)!(n+k-1)!) = Π_{i=1}^{k-1} (n-i)/(n+i)`.
fn b_exact(n: u64, k: u64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..k {
        num *= n - i;
        den *= n + i;
    }
    Rational::new(num, den)
}

/// `(k, a_nk)` in floating point, with `b_nk` updated incrementally.
fn weights(n: u64) -> impl Iterator<Item = (u64, f64)> {
    let mut b = 1.0;
    (2..=n).map(move |k| {
        b *= (n - k + 1) as f64 / (n + k - 1) as f64;
        (k, sign_f64(k) * (2 * k - 1) as f64 * b)
    })
}

fn sign_f64(k: u64) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `a_nk = (-1)^k (2k-1) b_nk`, exactly.
pub fn hypoexp_coefficients(n: u64) -> Result<HypoexpCoefficients> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("T_n needs n ≥ 2, got {n}")));
    }
    let a = (2..=n)
        .map(|k| {
            let c = b_exact(n, k) * int(2 * k as i64 - 1);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(HypoexpCoefficients { n, a })
}

/// `P(T_n ≤ t) = 1 - Σ_{k=2}^n a_nk e^(-λ_k t)`.
pub fn cdf_t_n(n: u64, t: f64) -> f64 {
    assert!(n >= 2 && t >= 0.0, "cdf_t_n needs n ≥ 2 and t ≥ 0");
    let survival: f64 = weights(n)
        .map(|(k, a)| a * (-lambda_f64(k) * t).exp())
        .sum();
    (1.0 - survival).clamp(0.0, 1.0)
}

/// Density `g_n(t) = Σ_{k=2}^n a_nk λ_k e^(-λ_k t)` of `T_n`.
pub fn density_g_n(n: u64, t: f64) -> f64 {
    assert!(n >= 2 && t >= 0.0, "density_g_n needs n ≥ 2 and t ≥ 0");
    weights(n)
        .map(|(k, a)| a * lambda_f64(k) * (-lambda_f64(k) * t).exp())
        .sum()
}

/// Below this `t` the series for `g` is not evaluated.
pub const DENSITY_MIN_T: f64 = 1e-3;

/// Truncated value of the density of `T` with a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: u64,
}

/// `g(t) ≈ Σ_{k=2}^K (-1)^k (2k-1) λ_k e^(-λ_k t)`.
///
/// For `k > K` the ratio of consecutive term magnitudes is at most
/// `ρ = (2K+3)/(2K+1) · (K+2)/K · e^(-(K+1)t)`, so the tail is dominated by
/// `|t_(K+1)| / (1-ρ)`. Fails with [`Error::UnreliableTail`] when
/// `t < 10^-3` or the bound exceeds `tolerance`.
pub fn density_g(t: f64, max_k: u64, tolerance: f64) -> Result<DensityValue> {
    if max_k < 2 || !(t.is_finite()) || t <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "density_g needs t > 0 and K ≥ 2, got t = {t}, K = {max_k}"
        )));
    }
    let term = |k: u64| (2 * k - 1) as f64 * lambda_f64(k) * (-lambda_f64(k) * t).exp();
    let value = (2..=max_k).rev().map(|k| sign_f64(k) * term(k)).sum();
    let kf = max_k as f64;
    let rho = (2.0 * kf + 3.0) / (2.0 * kf + 1.0) * (kf + 2.0) / kf * (-(kf + 1.0) * t).exp();
    let tail_bound = if rho < 1.0 {
        term(max_k + 1) / (1.0 - rho)
    } else {
        f64::INFINITY
    };
    if t < DENSITY_MIN_T || tail_bound > tolerance {
        return Err(Error::UnreliableTail {
            t,
            bound: tail_bound,
            tolerance,
        });
    }
    Ok(DensityValue {
        value,
        tail_bound,
        terms: max_k - 1,
    })
}

/// [`density_g`] with the smallest power-of-two `K` that meets `tolerance`.
pub fn density_g_auto(t: f64, tolerance: f64) -> Result<DensityValue> {
    let mut k = 8;
    loop {
        match density_g(t, k, tolerance) {
            Err(Error::UnreliableTail { .. }) if t >= DENSITY_MIN_T && k < 1 << 20 => k *= 2,
            other => return other,
        }
    }
}

/// Exact `E(T_n) = 2(1 - 1/n)`.
pub fn mean_t_n(n: u64) -> Rational {
    int(2) * (Rational::one() - Rational::new(BigInt::one(), BigInt::from(n)))
}

/// Exact `Var(T_n) = Σ_{k=2}^n 1/λ_k²`.
pub fn variance_t_n(n: u64) -> Rational {
    (2..=n).fold(Rational::zero(), |acc, k| {
        let l = lambda(k);
        acc + (&l * &l).recip()
    })
}
