//! The recursion `s(i,j) = s(i-1,j) - s(i,j-1)` on a quarter lattice with
//! prescribed row `s(0,k) = a_k` and column `s(k,0) = b_k`.
//!
//! Two instantiations matter here:
//!
//! * unsigned: `s(i,j) = Σ_{k≥2} 1 / (k^i (k-1)^j)`
//! * signed:   `s(i,j) = Σ_{k≥2} (-1)^k (2k-1) / (k^i (k-1)^j)`
//!
//! In both cases the boundary values are ζ-polynomials, so every `s(i,j)`
//! is one as well.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;

use crate::algebra::{binomial, int, rational, sign, Rational, ZetaPolynomial};
use crate::{Error, Result};

type Boundary = Box<dyn Fn(u32) -> ZetaPolynomial + Send + Sync>;

/// Boundary data `a_k = s(0,k)` and `b_k = s(k,0)` for `k ≥ 1`.
pub struct DoubleSequenceSpec {
    a: Boundary,
    b: Boundary,
}

impl DoubleSequenceSpec {
    pub fn new(
        a: impl Fn(u32) -> ZetaPolynomial + Send + Sync + 'static,
        b: impl Fn(u32) -> ZetaPolynomial + Send + Sync + 'static,
    ) -> Self {
        DoubleSequenceSpec {
            a: Box::new(a),
            b: Box::new(b),
        }
    }

    pub fn a(&self, k: u32) -> ZetaPolynomial {
        (self.a)(k)
    }

    pub fn b(&self, k: u32) -> ZetaPolynomial {
        (self.b)(k)
    }

    pub fn for_kind(kind: SeriesKind) -> Self {
        match kind {
            SeriesKind::Unsigned => DoubleSequenceSpec::new(unsigned_row, unsigned_column),
            SeriesKind::Signed => DoubleSequenceSpec::new(signed_row, signed_column),
        }
    }
}

impl fmt::Debug for DoubleSequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DoubleSequenceSpec").finish_non_exhaustive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Unsigned,
    Signed,
}

fn zeta(k: u32) -> ZetaPolynomial {
    ZetaPolynomial::zeta(k)
}

/// `η(k) = (1 - 2^(1-k)) ζ(k)`, the alternating zeta function, for `k ≥ 2`.
fn eta(k: u32) -> ZetaPolynomial {
    let c = Rational::from_integer(BigInt::from(1))
        - Rational::new(1.into(), BigInt::from(2).pow(k - 1));
    zeta(k).scale(&c)
}

fn unsigned_row(j: u32) -> ZetaPolynomial {
    match j {
        1 => ZetaPolynomial::one(),
        _ => zeta(j),
    }
}

fn unsigned_column(i: u32) -> ZetaPolynomial {
    match i {
        1 => ZetaPolynomial::zero(),
        _ => zeta(i) - ZetaPolynomial::one(),
    }
}

// Σ_{m≥1} (-1)^(m+1) (2m+1) / m^j = 2η(j-1) + η(j); at j = 2 the ζ(1) poles
// cancel and leave 2 log 2 + ζ(2)/2.
fn signed_row(j: u32) -> ZetaPolynomial {
    match j {
        1 => ZetaPolynomial::one(),
        2 => ZetaPolynomial::log2().scale(&int(2)) + zeta(2).scale(&rational(1, 2)),
        _ => eta(j - 1).scale(&int(2)) + eta(j),
    }
}

// Σ_{k≥2} (-1)^k (2k-1) / k^i = 1 - 2η(i-1) + η(i).
fn signed_column(i: u32) -> ZetaPolynomial {
    match i {
        1 => ZetaPolynomial::zero(),
        2 => {
            ZetaPolynomial::one() - ZetaPolynomial::log2().scale(&int(2))
                + zeta(2).scale(&rational(1, 2))
        }
        _ => ZetaPolynomial::one() - eta(i - 1).scale(&int(2)) + eta(i),
    }
}

/// Closed-form solution of the recursion:
///
/// `s(i,j) = Σ_{k=1}^{j} (-1)^(j-k) C(i+j-k-1, i-1) a_k
///         + (-1)^j Σ_{k=1}^{i} C(i+j-k-1, j-1) b_k`.
pub fn solve_closed(i: u32, j: u32, spec: &DoubleSequenceSpec) -> ZetaPolynomial {
    assert!(i >= 1 && j >= 1, "solve_closed needs i, j ≥ 1");
    let (i64_, j64) = (u64::from(i), u64::from(j));
    let mut out = ZetaPolynomial::zero();
    for k in 1..=j64 {
        let c = binomial(i64_ + j64 - k - 1, i64_ - 1) * sign(j64 - k);
        out += spec.a(k as u32).scale(&Rational::from_integer(c));
    }
    for k in 1..=i64_ {
        let c = binomial(i64_ + j64 - k - 1, j64 - 1) * sign(j64);
        out += spec.b(k as u32).scale(&Rational::from_integer(c));
    }
    out
}

/// `s(i,j)` by filling the lattice row by row from the boundary.
pub fn solve_by_recursion(i: u32, j: u32, spec: &DoubleSequenceSpec) -> ZetaPolynomial {
    assert!(i >= 1 && j >= 1, "solve_by_recursion needs i, j ≥ 1");
    let (rows, cols) = (i as usize + 1, j as usize + 1);
    let mut prev: Vec<ZetaPolynomial> = (0..cols)
        .map(|q| {
            if q == 0 {
                ZetaPolynomial::zero()
            } else {
                spec.a(q as u32)
            }
        })
        .collect();
    for p in 1..rows {
        let mut row = Vec::with_capacity(cols);
        row.push(spec.b(p as u32));
        for q in 1..cols {
            let v = &prev[q] - &row[q - 1];
            row.push(v);
        }
        prev = row;
    }
    prev.pop().expect("non-empty row")
}

static MEMO: LazyLock<Mutex<HashMap<(SeriesKind, u32, u32), ZetaPolynomial>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Memoized `s(i,j)` for one of the two series instantiations.
pub fn series_value(kind: SeriesKind, i: u32, j: u32) -> ZetaPolynomial {
    if let Some(v) = MEMO
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(kind, i, j))
    {
        return v.clone();
    }
    let v = solve_closed(i, j, &DoubleSequenceSpec::for_kind(kind));
    MEMO.lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((kind, i, j), v.clone());
    v
}

/// `Σ_{k≥2} 1/(k(k-1))^j = 2(-1)^j Σ_{m=0}^{⌊j/2⌋} C(2j-2m-1, j-1) ζ(2m)`.
pub fn unsigned_diagonal(j: u32) -> ZetaPolynomial {
    assert!(j >= 1, "unsigned_diagonal needs j ≥ 1");
    let j64 = u64::from(j);
    let mut out = ZetaPolynomial::zero();
    for m in 0..=j64 / 2 {
        let c = binomial(2 * j64 - 2 * m - 1, j64 - 1) * 2 * sign(j64);
        out += ZetaPolynomial::zeta(2 * m as u32).scale(&Rational::from_integer(c));
    }
    out
}

/// A floating-point partial sum with an error budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    /// Bound on `|limit - exact partial sum|`.
    pub tail_bound: f64,
    /// Bound on `|value - exact partial sum|` from floating-point rounding.
    pub rounding_bound: f64,
    pub terms: u64,
}

impl TruncatedSum {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Sum of absolute values of everything added so far.
    pub(crate) fn abs_total(&self) -> f64 {
        self.abs
    }
}

/// Partial sum of the diagonal series `s(j,j)` up to `k = max_k`.
///
/// The unsigned tail is dominated by `∫_{K-1}^∞ x^(-2j) dx`. For the signed
/// series the terms are summed in pairs `(2m, 2m+1)`, so the partial sums
/// alternate around the limit and the tail is bounded by the first omitted
/// term. With `j = 1` the signed series only converges conditionally and is
/// rejected.
pub fn diagonal_series_truncated(kind: SeriesKind, j: u32, max_k: u64) -> Result<TruncatedSum> {
    if j == 0 || max_k < 2 {
        return Err(Error::InvalidArgument(format!(
            "diagonal series needs j ≥ 1 and K ≥ 2, got j = {j}, K = {max_k}"
        )));
    }
    let term = |k: u64| {
        let k = k as f64;
        (k * (k - 1.0)).powi(-(j as i32))
    };
    let eps = f64::EPSILON;
    let per_term = (2 * j + 4) as f64 * eps;
    match kind {
        SeriesKind::Unsigned => {
            let mut acc = CompensatedSum::default();
            for k in (2..=max_k).rev() {
                acc.add(term(k));
            }
            let tail = ((max_k - 1) as f64).powi(1 - 2 * j as i32) / (2 * j - 1) as f64;
            Ok(TruncatedSum {
                value: acc.value(),
                tail_bound: tail,
                rounding_bound: per_term * acc.abs_total() + 2.0 * eps * acc.value().abs(),
                terms: max_k - 1,
            })
        }
        SeriesKind::Signed => {
            if j == 1 {
                return Err(Error::DivergentTail);
            }
            // Stop after a complete pair so the remainder starts at an even k.
            let last = if max_k % 2 == 1 { max_k } else { max_k - 1 };
            let signed = |k: u64| {
                let t = (2 * k - 1) as f64 * term(k);
                if k.is_multiple_of(2) {
                    t
                } else {
                    -t
                }
            };
            let mut acc = CompensatedSum::default();
            let mut k = last;
            while k >= 3 {
                acc.add(signed(k - 1) + signed(k));
                k -= 2;
            }
            Ok(TruncatedSum {
                value: acc.value(),
                tail_bound: signed(last + 1).abs(),
                rounding_bound: (per_term + 2.0 * eps) * acc.abs_total()
                    + 2.0 * eps * acc.value().abs(),
                terms: last - 1,
            })
        }
    }
}
