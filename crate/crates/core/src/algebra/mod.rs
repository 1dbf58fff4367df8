//! Exact arithmetic: rationals, Bernoulli numbers, the ζ-polynomial algebra
//! and arbitrary-precision numeric evaluation.

mod bernoulli;
mod numeric;
mod pi_form;
mod polynomial;

pub use bernoulli::{bernoulli, zeta_even_coefficient};
pub use numeric::{
    eval_decimal, eval_f64, eval_numeric, zeta_numeric, Decimal, MAX_OUTPUT_DIGITS,
    SUPPORTED_DIGITS,
};
pub use pi_form::{to_pi_form, PiForm, PiMonomial};
pub use polynomial::{Generator, Monomial, ZetaPolynomial};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as a [`Rational`].
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a [`Rational`].
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(-1)^k` as an integer sign.
pub(crate) fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let bad = || crate::Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Rough `log10 |r|`, usable for magnitude estimates on huge rationals.
pub(crate) fn log10_abs(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_bigint(&r.numer().abs()) - log10_bigint(r.denom())
}

fn log10_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        let (_, digits) = n.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        v.log10()
    } else {
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        log10_bigint(&top) + shift as f64 * std::f64::consts::LOG10_2
    }
}
