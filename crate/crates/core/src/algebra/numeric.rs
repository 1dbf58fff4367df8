//! Fixed-point decimal evaluation of ζ-polynomials.
//!
//! Values are big integers scaled by `10^scale`. γ, π and log 2 come from
//! embedded literals; ζ(k) is computed by direct summation with an
//! Euler–Maclaurin tail whose remainder is bounded by the first omitted
//! correction term (valid for real `k > 1`).

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    bernoulli, factorial, log10_abs, Generator, Monomial, PiForm, Rational, ZetaPolynomial,
};
use crate::{Error, Result};

const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";
const EULER_GAMMA: &str = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495146314472498";
const LN_2: &str = "0.6931471805599453094172321214581765680755001343602552541206800094933936219696947156058633269964186875420014810206";

/// Working precision (decimal places) the embedded constants support.
pub const SUPPORTED_DIGITS: u32 = 105;

/// Largest `digits` accepted by [`eval_numeric`].
pub const MAX_OUTPUT_DIGITS: u32 = 50;

const GUARD_DIGITS: u32 = 12;

/// A decimal number `units · 10^(-scale)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    units: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(units: BigInt, scale: u32) -> Self {
        Decimal { units, scale }
    }

    pub fn units(&self) -> &BigInt {
        &self.units
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Rounds half away from zero to `digits` decimal places.
    pub fn rounded(&self, digits: u32) -> Decimal {
        if digits >= self.scale {
            let factor = BigInt::from(10).pow(digits - self.scale);
            return Decimal::new(&self.units * factor, digits);
        }
        let factor = BigInt::from(10).pow(self.scale - digits);
        let (q, r) = self.units.abs().div_rem(&factor);
        let q = if r * 2 >= factor { q + 1 } else { q };
        let q = if self.units.is_negative() { -q } else { q };
        Decimal::new(q, digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.units.clone(), BigInt::from(10).pow(self.scale))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.units.abs().to_string();
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - scale);
        if self.units.is_negative() {
            write!(f, "-")?;
        }
        if scale == 0 {
            write!(f, "{int}")
        } else {
            write!(f, "{int}.{frac}")
        }
    }
}

struct Fixed {
    scale: u32,
    one: BigInt,
}

impl Fixed {
    fn new(scale: u32) -> Self {
        Fixed {
            scale,
            one: BigInt::from(10).pow(scale),
        }
    }

    fn literal(&self, lit: &str) -> BigInt {
        let (int, frac) = lit.split_once('.').unwrap_or((lit, ""));
        let scale = self.scale as usize;
        assert!(
            frac.len() >= scale,
            "constant literal too short for scale {scale}"
        );
        format!("{int}{}", &frac[..scale])
            .parse()
            .expect("constant literal")
    }

    fn from_rational(&self, r: &Rational) -> BigInt {
        (r.numer() * &self.one) / r.denom()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) / &self.one
    }

    fn generator(&self, g: Generator) -> BigInt {
        match g {
            Generator::Gamma => self.literal(EULER_GAMMA),
            Generator::Log2 => self.literal(LN_2),
            Generator::Zeta(k) => zeta_fixed(k, self),
        }
    }
}

/// The j-th Euler–Maclaurin correction for ζ(s) cut at `n`:
/// `B_2j/(2j)! · s(s+1)…(s+2j-2) · n^(-s-2j+1)`.
fn em_term(s: u32, n: u64, j: u32) -> Rational {
    let rising: BigInt = (0..2 * j - 1).map(|i| BigInt::from(s + i)).product();
    let denom = factorial(2 * j as u64) * BigInt::from(n).pow(s + 2 * j - 1);
    bernoulli(2 * j as usize) * Rational::new(rising, denom)
}

const MIN_EM_TERMS: u32 = 2;
const MAX_EM_TERMS: u32 = 400;

/// Smallest number of correction terms (at least two) after which the next
/// term, and hence the remainder, is below `target`. `None` if the terms
/// start growing first.
fn em_terms_needed(s: u32, n: u64, target: &Rational) -> Option<u32> {
    let mut prev = em_term(s, n, MIN_EM_TERMS).abs();
    for m in MIN_EM_TERMS..MAX_EM_TERMS {
        let next = em_term(s, n, m + 1).abs();
        if &next < target {
            return Some(m);
        }
        if next > prev {
            return None;
        }
        prev = next;
    }
    None
}

fn zeta_fixed(s: u32, ctx: &Fixed) -> BigInt {
    debug_assert!(s >= 2);
    // Error budget: remainder plus one truncation per summand.
    let target = Rational::new(BigInt::one(), BigInt::from(10).pow(ctx.scale + 3));
    let mut n = u64::from(ctx.scale).max(10);
    let terms = loop {
        if let Some(m) = em_terms_needed(s, n, &target) {
            break m;
        }
        n *= 2;
    };
    let mut sum = BigInt::zero();
    for k in 1..n {
        sum += &ctx.one / BigInt::from(k).pow(s);
    }
    let n_big = BigInt::from(n);
    let mut tail = Rational::new(BigInt::one(), n_big.pow(s - 1) * BigInt::from(s - 1))
        + Rational::new(BigInt::one(), n_big.pow(s) * 2);
    for j in 1..=terms {
        tail += em_term(s, n, j);
    }
    sum + ctx.from_rational(&tail)
}

/// ζ(k) to `digits` decimal places, correctly rounded up to a final
/// half-unit: `|result - ζ(k)| < 10^(-digits)`.
pub fn zeta_numeric(k: u32, digits: u32) -> Result<Decimal> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("ζ({k}) needs k ≥ 2")));
    }
    let ctx = Fixed::new(digits + GUARD_DIGITS);
    Ok(Decimal::new(zeta_fixed(k, &ctx), ctx.scale).rounded(digits))
}

fn generator_log10_bound(g: &Generator) -> f64 {
    match g {
        Generator::Gamma | Generator::Log2 => 0.0,
        // ζ(k) ≤ ζ(2) < 2
        Generator::Zeta(_) => std::f64::consts::LOG10_2,
    }
}

/// Evaluates `Σ c·π^p·Π gens` at `digits` decimals.
fn eval_terms(terms: &[(&Rational, u32, &Monomial)], digits: u32) -> Result<Decimal> {
    if digits > MAX_OUTPUT_DIGITS {
        return Err(Error::PrecisionExceeded {
            requested: digits,
            supported: MAX_OUTPUT_DIGITS,
        });
    }
    let mut magnitude = 0.0f64;
    let mut count = 0usize;
    for &(c, pi_power, m) in terms {
        let bound = log10_abs(c)
            + pi_power as f64 * std::f64::consts::PI.log10()
            + m.generators()
                .iter()
                .map(generator_log10_bound)
                .sum::<f64>();
        magnitude = magnitude.max(bound);
        count += 1;
    }
    let guard =
        GUARD_DIGITS + (magnitude.max(0.0) + (count.max(1) as f64).log10()).ceil() as u32 + 2;
    let scale = digits + guard;
    if scale > SUPPORTED_DIGITS {
        return Err(Error::PrecisionExceeded {
            requested: digits,
            supported: SUPPORTED_DIGITS.saturating_sub(guard),
        });
    }
    let ctx = Fixed::new(scale);
    let pi = ctx.literal(PI);
    let mut cache: HashMap<Generator, BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for &(c, pi_power, m) in terms {
        let mut v = ctx.from_rational(c);
        for _ in 0..pi_power {
            v = ctx.mul(&v, &pi);
        }
        for g in m.generators() {
            let gv = cache.entry(*g).or_insert_with(|| ctx.generator(*g));
            v = ctx.mul(&v, gv);
        }
        total += v;
    }
    Ok(Decimal::new(total, scale).rounded(digits))
}

/// Value of `p` rounded to `digits` decimal places.
pub fn eval_decimal(p: &ZetaPolynomial, digits: u32) -> Result<Decimal> {
    let terms: Vec<_> = p.terms().map(|(m, c)| (c, 0, m)).collect();
    eval_terms(&terms, digits)
}

/// Value of `p` as a decimal string with exactly `digits` decimals.
pub fn eval_numeric(p: &ZetaPolynomial, digits: u32) -> Result<String> {
    let d = eval_decimal(p, digits)?;
    Ok(if d.units().is_zero() {
        Decimal::new(BigInt::zero(), digits).to_string()
    } else {
        d.to_string()
    })
}

/// Value of `p` as the nearest `f64`.
pub fn eval_f64(p: &ZetaPolynomial) -> f64 {
    for digits in [30, 20, 10, 0] {
        if let Ok(d) = eval_decimal(p, digits) {
            return d.to_f64();
        }
    }
    f64::NAN
}

impl PiForm {
    /// Numeric value of the π-form, with π from the embedded constant.
    pub fn eval_decimal(&self, digits: u32) -> Result<Decimal> {
        let terms: Vec<_> = self.parts().map(|(p, m, c)| (c, p, m)).collect();
        eval_terms(&terms, digits)
    }
}

impl Decimal {
    pub fn sign(&self) -> Sign {
        self.units.sign()
    }
}
