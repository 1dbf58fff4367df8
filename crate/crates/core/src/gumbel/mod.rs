//! Moments of the standard Gumbel law `P(G ≤ x) = exp(-exp(-x))`.
//!
//! The cumulants are `κ_1 = γ` and `κ_j = (j-1)! ζ(j)` for `j ≥ 2`. Raw
//! moments `m_n = E(G^n)` and central moments `m'_n = E((G-γ)^n)` are
//! computed by several independent routes that must agree exactly:
//!
//! * the cumulant recursion `m_n = Σ C(n-1,k-1) κ_k m_(n-k)`,
//! * a sum over all set partitions of `{1..n}` of `Π κ_|B|`,
//! * the same sum grouped by block counts,
//! * for central moments, a sum over compositions with parts ≥ 2 weighted
//!   by derangement numbers and the distinct-index sums `s_i`.

mod partitions;

pub use partitions::{
    compositions_min2, integer_partitions, set_partitions, Composition2, SetPartition,
    SetPartitions, MAX_SET_PARTITION_SIZE,
};

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, int, Rational, ZetaPolynomial};
use crate::recursion::{CompensatedSum, TruncatedSum};
use crate::{Error, Result};

static DERANGEMENTS: LazyLock<Mutex<Vec<BigInt>>> =
    LazyLock::new(|| Mutex::new(vec![BigInt::one()]));

/// Number of fixed-point-free permutations of `n` elements, from
/// `d_n = n d_(n-1) + (-1)^n`.
pub fn derangement(n: u32) -> BigInt {
    let mut table = DERANGEMENTS.lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n as usize {
        let m = table.len();
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let next = &table[m - 1] * m + sign;
        table.push(next);
    }
    table[n as usize].clone()
}

/// `d_n = n! Σ_{j=0}^n (-1)^j / j!`.
pub fn derangement_by_sum(n: u32) -> BigInt {
    let n = u64::from(n);
    let fact = factorial(n);
    (0..=n).fold(BigInt::zero(), |acc, j| {
        let t = &fact / factorial(j);
        if j % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// `κ_1 = γ`, `κ_j = (j-1)! ζ(j)`.
pub fn gumbel_cumulant(j: u32) -> ZetaPolynomial {
    assert!(j >= 1, "cumulants are indexed from 1");
    if j == 1 {
        ZetaPolynomial::gamma()
    } else {
        ZetaPolynomial::zeta(j).scale(&int(factorial(u64::from(j) - 1)))
    }
}

/// Cumulant of `G - γ`: zero at order 1, unchanged otherwise.
fn centred_cumulant(j: u32) -> ZetaPolynomial {
    if j == 1 {
        ZetaPolynomial::zero()
    } else {
        gumbel_cumulant(j)
    }
}

fn moments_by_recursion(n: u32, kappa: impl Fn(u32) -> ZetaPolynomial) -> ZetaPolynomial {
    let kappas: Vec<_> = (1..=n).map(kappa).collect();
    let mut m = vec![ZetaPolynomial::one()];
    for r in 1..=n as usize {
        let mut acc = ZetaPolynomial::zero();
        for k in 1..=r {
            if kappas[k - 1].is_zero() {
                continue;
            }
            let c = int(binomial(r as u64 - 1, k as u64 - 1));
            acc += (&kappas[k - 1] * &m[r - k]).scale(&c);
        }
        m.push(acc);
    }
    m.pop().expect("non-empty")
}

/// `m_n = E(G^n)` from the cumulant recursion.
pub fn gumbel_moment(n: u32) -> ZetaPolynomial {
    moments_by_recursion(n, gumbel_cumulant)
}

/// Sum over set partitions, grouped first by the multiset of block sizes so
/// each distinct product of cumulants is formed once.
fn moment_by_set_partitions(
    n: u32,
    kappa: impl Fn(u32) -> ZetaPolynomial,
) -> Result<ZetaPolynomial> {
    if n == 0 {
        return Ok(ZetaPolynomial::one());
    }
    let mut shapes: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut sizes = vec![0u32; n as usize];
    set_partitions(n as usize)?.for_each_rgs(|rgs| {
        sizes.iter_mut().for_each(|s| *s = 0);
        for &b in rgs {
            sizes[b] += 1;
        }
        let mut shape: Vec<u32> = sizes.iter().copied().filter(|&s| s > 0).collect();
        shape.sort_unstable();
        *shapes.entry(shape).or_insert(0) += 1;
    });
    let mut out = ZetaPolynomial::zero();
    for (shape, count) in shapes {
        let product = shape
            .iter()
            .fold(ZetaPolynomial::one(), |acc, &s| &acc * &kappa(s));
        out += product.scale(&int(count));
    }
    Ok(out)
}

/// `m_n = Σ_{π ∈ P_n} Π_{B ∈ π} κ_|B|` over all set partitions of `{1..n}`.
pub fn gumbel_moment_by_set_partitions(n: u32) -> Result<ZetaPolynomial> {
    moment_by_set_partitions(n, gumbel_cumulant)
}

/// `m_n = n! Σ Π_i (κ_i/i!)^(a_i) / a_i!` over `a` with `Σ i a_i = n`.
pub fn gumbel_moment_by_block_counts(n: u32) -> ZetaPolynomial {
    block_count_sum(n, 1, gumbel_cumulant)
}

fn block_count_sum(n: u32, min_part: u32, kappa: impl Fn(u32) -> ZetaPolynomial) -> ZetaPolynomial {
    if n == 0 {
        return ZetaPolynomial::one();
    }
    let n_fact = int(factorial(u64::from(n)));
    let mut out = ZetaPolynomial::zero();
    for parts in integer_partitions(n, min_part) {
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for p in &parts {
            *counts.entry(*p).or_insert(0) += 1;
        }
        let mut coeff = n_fact.clone();
        let mut product = ZetaPolynomial::one();
        for (&i, &a) in &counts {
            let i_fact = int(factorial(u64::from(i)));
            coeff /= int(factorial(u64::from(a))) * pow_rational(&i_fact, a);
            product = &product * &kappa(i).pow(a);
        }
        out += product.scale(&coeff);
    }
    out
}

fn pow_rational(r: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

/// `m'_n` from the recursion `m'_n = Σ_{k=2}^n C(n-1,k-1) κ_k m'_(n-k)`.
pub fn gumbel_central_moment(n: u32) -> ZetaPolynomial {
    moments_by_recursion(n, centred_cumulant)
}

/// `m'_n = n! Σ_a Π_{i≥2} (ζ(i)/i)^(a_i) / a_i!` over `a` with `Σ i a_i = n`.
pub fn central_moment_by_block_counts(n: u32) -> ZetaPolynomial {
    block_count_sum(n, 2, centred_cumulant)
}

/// Distinct-index sum `s_i(n_1..n_i)` expanded by set partitions:
/// `Σ_π (-1)^(i-|π|) Π_{B∈π} (|B|-1)! ζ(n_B)`.
pub fn s_multi_partition(parts: &[u32]) -> Result<ZetaPolynomial> {
    check_parts(parts)?;
    let mut out = ZetaPolynomial::zero();
    for p in set_partitions(parts.len())? {
        let mut term = ZetaPolynomial::one();
        let mut coeff = BigInt::one();
        for block in p.blocks() {
            coeff *= factorial(block.len() as u64 - 1);
            let weight: u32 = block.iter().map(|&b| parts[b]).sum();
            term = &term * &ZetaPolynomial::zeta(weight);
        }
        if (parts.len() - p.len()) % 2 == 1 {
            coeff = -coeff;
        }
        out += term.scale(&int(coeff));
    }
    Ok(out)
}

fn check_parts(parts: &[u32]) -> Result<()> {
    if parts.is_empty() || parts.iter().any(|&p| p < 2) {
        return Err(Error::InvalidArgument(format!(
            "parts must be non-empty and ≥ 2, got {parts:?}"
        )));
    }
    if parts.len() > MAX_SET_PARTITION_SIZE {
        return Err(Error::SizeGuard {
            size: parts.len(),
            max: MAX_SET_PARTITION_SIZE,
        });
    }
    Ok(())
}

/// `s_i` from `s_(i+1)(n_1..n_(i+1)) = s_i(n_1..n_i) ζ(n_(i+1))
///                                   - Σ_r s_i(.., n_r + n_(i+1), ..)`.
pub fn s_multi_recursive(parts: &[u32]) -> Result<ZetaPolynomial> {
    check_parts(parts)?;
    fn go(parts: &[u32], memo: &mut HashMap<Vec<u32>, ZetaPolynomial>) -> ZetaPolynomial {
        if let Some(v) = memo.get(parts) {
            return v.clone();
        }
        let v = match parts {
            [n] => ZetaPolynomial::zeta(*n),
            [head @ .., last] => {
                let mut v = &go(head, memo) * &ZetaPolynomial::zeta(*last);
                for r in 0..head.len() {
                    let mut merged = head.to_vec();
                    merged[r] += last;
                    v -= go(&merged, memo);
                }
                v
            }
            [] => unreachable!("checked non-empty"),
        };
        memo.insert(parts.to_vec(), v.clone());
        v
    }
    Ok(go(parts, &mut HashMap::new()))
}

/// Default work limit for [`s_multi_truncated`], in index-subset updates.
pub const DEFAULT_TRUNCATION_BUDGET: u128 = 2_000_000_000;

/// `Σ 1/(k_1^(n_1) ⋯ k_i^(n_i))` over distinct `k_1..k_i ∈ [1, N]`.
///
/// Indices are visited once each, from `N` down to 1, while a table over
/// subsets of positions records which positions already have an index.
/// Each distinct tuple is counted once, at cost `O(N·2^i·i)`. The tail bound
/// covers tuples with some index above `N`:
/// `Σ_r N^(1-n_r)/(n_r-1) · Π_(q≠r) ζ(n_q)`.
pub fn s_multi_truncated(parts: &[u32], max_index: u64) -> Result<TruncatedSum> {
    s_multi_truncated_with_budget(parts, max_index, DEFAULT_TRUNCATION_BUDGET)
}

pub fn s_multi_truncated_with_budget(
    parts: &[u32],
    max_index: u64,
    budget: u128,
) -> Result<TruncatedSum> {
    check_parts(parts)?;
    let i = parts.len();
    if (max_index as usize) < i {
        return Err(Error::InvalidArgument(format!(
            "need N ≥ {i}, got {max_index}"
        )));
    }
    let required = u128::from(max_index) * (1u128 << i) * i as u128;
    if required > budget {
        return Err(Error::ComplexityGuard { required, budget });
    }
    let full = (1usize << i) - 1;
    let mut table = vec![CompensatedSum::default(); full + 1];
    table[0].add(1.0);
    let mut weights = vec![0.0f64; i];
    for k in (1..=max_index).rev() {
        for (w, &p) in weights.iter_mut().zip(parts) {
            *w = (k as f64).powi(-(p as i32));
        }
        // Larger subsets first so each index is used at most once.
        for set in (0..full).rev() {
            let base = table[set].value();
            if base == 0.0 {
                continue;
            }
            for (r, w) in weights.iter().enumerate() {
                if set & (1 << r) == 0 {
                    table[set | (1 << r)].add(base * w);
                }
            }
        }
    }
    let zeta: Vec<f64> = parts
        .iter()
        .map(|&p| crate::algebra::eval_f64(&ZetaPolynomial::zeta(p)))
        .collect();
    let tail_bound: f64 = (0..i)
        .map(|r| {
            let p = parts[r] as i32;
            let own = (max_index as f64).powi(1 - p) / f64::from(p - 1);
            own * (0..i).filter(|&q| q != r).map(|q| zeta[q]).product::<f64>()
        })
        .sum();
    let value = table[full].value();
    Ok(TruncatedSum {
        value,
        tail_bound,
        rounding_bound: 1e-14 * value.abs() * i as f64,
        terms: max_index,
    })
}

static S_MEMO: LazyLock<Mutex<HashMap<Vec<u32>, ZetaPolynomial>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn s_cached(parts: &[u32]) -> ZetaPolynomial {
    let mut key = parts.to_vec();
    key.sort_unstable();
    if let Some(v) = S_MEMO.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return v.clone();
    }
    let v = s_multi_partition(&key).expect("parts validated by caller");
    S_MEMO
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, v.clone());
    v
}

/// Coefficients `c` in `m'_n = Σ c · s_i(n_1..n_i)`, one entry per multiset
/// of parts ≥ 2 (listed in non-decreasing order).
///
/// Each ordered composition contributes `n!/i! · Π d_(n_r)/n_r!`.
pub fn central_moment_s_expansion(n: u32) -> Vec<(Vec<u32>, BigInt)> {
    let n_fact = int(factorial(u64::from(n)));
    let mut grouped: BTreeMap<(usize, Vec<u32>), Rational> = BTreeMap::new();
    for c in compositions_min2(n) {
        let parts = c.parts();
        let mut w = &n_fact / int(factorial(parts.len() as u64));
        for &p in parts {
            w *= Rational::new(derangement(p), factorial(u64::from(p)));
        }
        let mut key = parts.to_vec();
        key.sort_unstable();
        *grouped
            .entry((key.len(), key))
            .or_insert_with(Rational::zero) += w;
    }
    grouped
        .into_iter()
        .map(|((_, parts), c)| {
            assert!(c.is_integer(), "non-integral coefficient for {parts:?}");
            (parts, c.to_integer())
        })
        .collect()
}

/// `m'_n` from the composition formula with derangement weights.
pub fn central_moment_by_compositions(n: u32) -> ZetaPolynomial {
    match n {
        0 => ZetaPolynomial::one(),
        1 => ZetaPolynomial::zero(),
        _ => central_moment_s_expansion(n)
            .into_iter()
            .map(|(parts, c)| s_cached(&parts).scale(&int(c)))
            .sum(),
    }
}

/// `m_n = Σ_j C(n,j) γ^(n-j) m'_j`.
pub fn central_to_raw(n: u32) -> ZetaPolynomial {
    let gamma = ZetaPolynomial::gamma();
    (0..=n)
        .map(|j| {
            let c = int(binomial(u64::from(n), u64::from(j)));
            (&gamma.pow(n - j) * &gumbel_central_moment(j)).scale(&c)
        })
        .sum()
}

/// `E((X - E X)^n) = d_n / α^n` for `X ~ Exp(α)`.
pub fn exponential_central_moment(n: u32, alpha: &Rational) -> Rational {
    Rational::from_integer(derangement(n)) / pow_rational(alpha, n)
}
