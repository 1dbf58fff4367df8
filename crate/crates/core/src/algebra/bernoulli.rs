use std::sync::{LazyLock, Mutex};

use num_traits::{One, Zero};

use super::{binomial, factorial, Rational};

static TABLE: LazyLock<Mutex<Vec<Rational>>> = LazyLock::new(|| Mutex::new(vec![Rational::one()]));

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Computed from `B_n = -1/(n+1) Σ_{k<n} C(n+1, k) B_k`; the table is shared
/// across threads and grows on demand.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = TABLE.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b;
            }
        }
        let b = -acc / Rational::from_integer((m as u64 + 1).into());
        table.push(b);
    }
    table[n].clone()
}

/// The rational `c` with `ζ(2m) = c·π^(2m)`.
///
/// For `m = 0` this is `ζ(0) = -1/2`.
pub fn zeta_even_coefficient(m: u32) -> Rational {
    let two_m = 2 * m as u64;
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let pow2 = Rational::from_integer(num_bigint::BigInt::one() << two_m);
    let denom = Rational::from_integer(factorial(two_m) * 2);
    pow2 * bernoulli(two_m as usize) / denom * Rational::from_integer(sign.into())
}
