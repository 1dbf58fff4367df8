//! Pure death process on `{1, …, n}`: from state `i` the chain moves to
//! `i-1` at rate `d_i`. With pairwise distinct rates the transition matrix
//! factors as `P(t) = e^(tQ) = R e^(tD) L` with lower-triangular `R`, `L`:
//!
//! ```text
//! r_ij = Π_{l=j+1}^{i} d_l / (d_l - d_j)
//! l_ij = Π_{l=j}^{i-1} d_(l+1) / (d_l - d_i)      (i ≥ j)
//! ```
//!
//! Indices in this module are 1-based, as in the formulas.

use nalgebra::DMatrix;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::absorption::lambda;
use crate::algebra::Rational;
use crate::{Error, Result};

/// Pairwise distinct death rates `d_1..d_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeathRates {
    rates: Vec<Rational>,
}

impl DeathRates {
    pub fn new(rates: Vec<Rational>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one death rate is needed".into(),
            ));
        }
        for a in 0..rates.len() {
            for b in a + 1..rates.len() {
                if rates[a] == rates[b] {
                    return Err(Error::DuplicateRates {
                        first: a + 1,
                        second: b + 1,
                    });
                }
            }
        }
        Ok(DeathRates { rates })
    }

    /// Converts each float to the rational it represents exactly.
    pub fn from_f64(rates: &[f64]) -> Result<Self> {
        let exact = rates
            .iter()
            .map(|&r| {
                Rational::from_float(r)
                    .ok_or_else(|| Error::InvalidArgument(format!("rate {r} is not finite")))
            })
            .collect::<Result<Vec<_>>>()?;
        DeathRates::new(exact)
    }

    /// `d_k = λ_k = k(k-1)/2` for `k = 1..n`: the block-counting chain.
    pub fn kingman(n: u64) -> Self {
        DeathRates {
            rates: (1..=n).map(lambda).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// `d_i`, 1-based.
    pub fn rate(&self, i: usize) -> &Rational {
        &self.rates[i - 1]
    }

    /// Generator `Q` with `q_ii = -d_i` and `q_(i,i-1) = d_i`.
    pub fn generator(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut q = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            q[i][i] = -self.rates[i].clone();
            if i > 0 {
                q[i][i - 1] = self.rates[i].clone();
            }
        }
        q
    }

    pub fn generator_f64(&self) -> DMatrix<f64> {
        let q = self.generator();
        DMatrix::from_fn(self.len(), self.len(), |i, j| {
            q[i][j].to_f64().unwrap_or(f64::NAN)
        })
    }
}

/// The factors `R` and `L` of the spectral decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPair {
    rates: DeathRates,
    r: Vec<Vec<Rational>>,
    l: Vec<Vec<Rational>>,
    conditioning: f64,
}

type Matrix = Vec<Vec<Rational>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Builds `R` and `L` and checks `RL = I` and `RD = QR` exactly.
pub fn spectral_pair(rates: &DeathRates) -> Result<SpectralPair> {
    let n = rates.len();
    let d = &rates.rates;
    let mut r = vec![vec![Rational::zero(); n]; n];
    let mut l = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            r[i][j] = (j + 1..=i).fold(Rational::one(), |acc, m| acc * &d[m] / (&d[m] - &d[j]));
            l[i][j] = (j..i).fold(Rational::one(), |acc, m| acc * &d[m + 1] / (&d[m] - &d[i]));
        }
    }
    if mat_mul(&r, &l) != identity(n) {
        return Err(Error::InvalidArgument(
            "R·L differs from the identity".into(),
        ));
    }
    let diag: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        -d[i].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    if mat_mul(&r, &diag) != mat_mul(&rates.generator(), &r) {
        return Err(Error::InvalidArgument("R·D differs from Q·R".into()));
    }
    let conditioning = r
        .iter()
        .flatten()
        .map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    Ok(SpectralPair {
        rates: rates.clone(),
        r,
        l,
        conditioning,
    })
}

impl SpectralPair {
    pub fn n(&self) -> usize {
        self.rates.len()
    }

    pub fn rates(&self) -> &DeathRates {
        &self.rates
    }

    /// `r_ij`, 1-based.
    pub fn r(&self, i: usize, j: usize) -> &Rational {
        &self.r[i - 1][j - 1]
    }

    /// `l_ij`, 1-based.
    pub fn l(&self, i: usize, j: usize) -> &Rational {
        &self.l[i - 1][j - 1]
    }

    /// `max |r_ij|`; large values mean nearly coincident rates and heavy
    /// cancellation in [`transition_probability`].
    pub fn conditioning(&self) -> f64 {
        self.conditioning
    }

    pub fn r_matrix(&self) -> &[Vec<Rational>] {
        &self.r
    }

    pub fn l_matrix(&self) -> &[Vec<Rational>] {
        &self.l
    }
}

/// `p_ij(t) = Σ_{k=j}^{i} e^(-d_k t) r_ik l_kj`, 1-based; zero for `j > i`.
pub fn transition_probability(pair: &SpectralPair, i: usize, j: usize, t: f64) -> f64 {
    assert!(i >= 1 && j >= 1 && i <= pair.n() && j <= pair.n() && t >= 0.0);
    if j > i {
        return 0.0;
    }
    (j..=i)
        .map(|k| {
            let d = pair.rates.rate(k).to_f64().unwrap_or(f64::NAN);
            let w = (pair.r(i, k) * pair.l(k, j)).to_f64().unwrap_or(f64::NAN);
            (-d * t).exp() * w
        })
        .sum()
}

/// Full matrix `P(t)` from the spectral decomposition.
pub fn transition_matrix(pair: &SpectralPair, t: f64) -> DMatrix<f64> {
    let n = pair.n();
    DMatrix::from_fn(n, n, |i, j| transition_probability(pair, i + 1, j + 1, t))
}

/// Largest `‖tQ‖_1` accepted by [`matrix_exponential`].
pub const MAX_EXPM_NORM: f64 = 1e6;

const MAX_EXPM_DIM: usize = 16;

/// `e^(tQ)` by scaling and squaring: `tQ/2^s` has 1-norm at most 1/2, its
/// exponential is summed as a Taylor series to machine precision, and the
/// result is squared `s` times.
pub fn matrix_exponential(q: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    let n = q.nrows();
    if n != q.ncols() || n > MAX_EXPM_DIM {
        return Err(Error::InvalidArgument(format!(
            "need a square matrix of size at most {MAX_EXPM_DIM}, got {}×{}",
            q.nrows(),
            q.ncols()
        )));
    }
    let a = q * t;
    let norm = (0..n).map(|j| a.column(j).abs().sum()).fold(0.0, f64::max);
    if !norm.is_finite() || norm > MAX_EXPM_NORM {
        return Err(Error::ScaleGuard { norm });
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = &a / 2f64.powi(squarings);
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / k as f64;
        result += &term;
        if term.abs().max() < f64::EPSILON * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}
