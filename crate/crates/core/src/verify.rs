//! Invariant suites: each check compares a closed form against an
//! independent route and records the tolerance it was held to.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::absorption::{
    cdf_t_n, cumulant_t, cumulants_to_moments, density_g_n, hypoexp_coefficients, moment_t,
    moment_t_ordered_oracle,
};
use crate::algebra::{factorial, int, rational, to_pi_form, zeta_even_coefficient, Generator};
use crate::death_process::{
    matrix_exponential, spectral_pair, transition_matrix, transition_probability, DeathRates,
};
use crate::gumbel::{
    central_moment_by_compositions, central_to_raw, derangement, derangement_by_sum,
    gumbel_central_moment, gumbel_moment, gumbel_moment_by_set_partitions, s_multi_partition,
    s_multi_truncated,
};
use crate::quadrature::integrate;
use crate::recursion::{
    diagonal_series_truncated, series_value, solve_by_recursion, solve_closed, unsigned_diagonal,
    DoubleSequenceSpec, SeriesKind,
};
use crate::simulate::{
    gumbel_cdf, ks_test, ks_two_sample, sample, sample_stream, sample_tree_length_by_maximum,
    SimConfig, Statistic,
};
use crate::tree_length::{cdf_l, moment_l_alternating, moment_l_ordered};
use crate::{eval_f64, zeta_numeric, Rational, ZetaPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Numeric,
    Simulation,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Exact, Suite::Numeric, Suite::Simulation];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
            Suite::Simulation => "simulation",
        }
    }
}

/// Deliberate corruptions used to confirm that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Perturbs the ζ(2) coefficient of every cumulant `κ_j(T)`, `j ≥ 2`.
    CumulantCoefficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub reps: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            reps: 100_000,
            fault: None,
        }
    }
}

impl VerifyOptions {
    fn cumulant(&self, j: u32) -> ZetaPolynomial {
        let k = cumulant_t(j);
        match self.fault {
            Some(Fault::CumulantCoefficient) if j >= 2 => {
                k + ZetaPolynomial::zeta(2).scale(&rational(1, 1000))
            }
            _ => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub tolerance: String,
    pub observed: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<10} {}: observed {}, tolerance {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.name(),
            self.name,
            self.observed,
            self.tolerance
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

pub fn run(suites: &[Suite], options: &VerifyOptions) -> Report {
    let mut report = Report::default();
    for &suite in suites {
        let checks = match suite {
            Suite::Exact => exact_suite(options),
            Suite::Numeric => numeric_suite(options),
            Suite::Simulation => simulation_suite(options),
        };
        report.checks.extend(checks);
    }
    report
}

/// Outcome of a family of exact identities: the first mismatch, if any.
fn exact(name: &str, cases: usize, mismatch: Option<String>) -> Check {
    Check {
        suite: Suite::Exact,
        name: name.into(),
        tolerance: "exact".into(),
        observed: match &mismatch {
            None => format!("{cases}/{cases} equal"),
            Some(m) => format!("mismatch at {m}"),
        },
        passed: mismatch.is_none(),
    }
}

fn bounded(suite: Suite, name: &str, error: f64, bound: f64) -> Check {
    Check {
        suite,
        name: name.into(),
        tolerance: format!("{bound:.3e}"),
        observed: format!("{error:.3e}"),
        passed: error <= bound,
    }
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    ok: impl Fn(&T) -> bool,
    label: impl Fn(&T) -> String,
) -> Option<String> {
    items.into_iter().find(|t| !ok(t)).map(|t| label(&t))
}

fn scaled(p: &ZetaPolynomial, c: num_bigint::BigInt) -> ZetaPolynomial {
    p.scale(&Rational::from_integer(c))
}

fn exact_suite(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();

    let pairs: Vec<(SeriesKind, u32, u32)> = [SeriesKind::Unsigned, SeriesKind::Signed]
        .into_iter()
        .flat_map(|kind| (1..=8).flat_map(move |i| (1..=8).map(move |j| (kind, i, j))))
        .collect();
    let specs = [
        DoubleSequenceSpec::for_kind(SeriesKind::Unsigned),
        DoubleSequenceSpec::for_kind(SeriesKind::Signed),
    ];
    let spec = |kind| &specs[usize::from(kind == SeriesKind::Signed)];
    out.push(exact(
        "recursion closed form equals dynamic programme (i, j ≤ 8, both series)",
        pairs.len(),
        first_failure(
            pairs.iter().copied(),
            |&(k, i, j)| solve_closed(i, j, spec(k)) == solve_by_recursion(i, j, spec(k)),
            |(k, i, j)| format!("{k:?} ({i}, {j})"),
        ),
    ));

    out.push(exact(
        "κ_j(T) = (j-1)! 2^j s(j, j) on the unsigned series (j ≤ 8)",
        8,
        first_failure(
            1..=8u32,
            |&j| o.cumulant(j) == scaled(&unsigned_diagonal(j), factorial(u64::from(j) - 1) << j),
            |j| format!("j = {j}"),
        ),
    ));

    out.push(exact(
        "E(T^j) = j! 2^j s(j, j) on the signed series (j ≤ 8)",
        8,
        first_failure(
            1..=8u32,
            |&j| {
                moment_t(j)
                    == scaled(
                        &series_value(SeriesKind::Signed, j, j),
                        factorial(u64::from(j)) << j,
                    )
            },
            |j| format!("j = {j}"),
        ),
    ));

    out.push(exact(
        "log 2 cancels on the signed diagonal (j ≤ 10)",
        10,
        first_failure(
            1..=10u32,
            |&j| !series_value(SeriesKind::Signed, j, j).contains(Generator::Log2),
            |j| format!("j = {j}"),
        ),
    ));

    let kappas: Vec<_> = (1..=8).map(|j| o.cumulant(j)).collect();
    let moments = cumulants_to_moments(&kappas);
    out.push(exact(
        "moments of T from cumulants, compared in powers of π (j ≤ 8)",
        8,
        first_failure(
            1..=8u32,
            |&j| to_pi_form(&moments[j as usize - 1]) == to_pi_form(&moment_t(j)),
            |j| format!("j = {j}"),
        ),
    ));

    out.push(exact(
        "variance of T equals κ_2",
        1,
        (moment_t(2) - moment_t(1).pow(2) != o.cumulant(2)).then(|| "j = 2".into()),
    ));

    out.push(exact(
        "Gumbel raw moments: recursion equals set-partition sum (n ≤ 8)",
        8,
        first_failure(
            1..=8u32,
            |&n| gumbel_moment_by_set_partitions(n).ok() == Some(gumbel_moment(n)),
            |n| format!("n = {n}"),
        ),
    ));

    out.push(exact(
        "Gumbel central moments: recursion equals composition sum (n ≤ 10)",
        11,
        first_failure(
            0..=10u32,
            |&n| gumbel_central_moment(n) == central_moment_by_compositions(n),
            |n| format!("n = {n}"),
        ),
    ));

    out.push(exact(
        "Gumbel central moments map back to raw moments (n ≤ 10)",
        11,
        first_failure(
            0..=10u32,
            |&n| central_to_raw(n) == gumbel_moment(n),
            |n| format!("n = {n}"),
        ),
    ));

    out.push(exact(
        "derangements: recurrence equals alternating sum (n ≤ 30)",
        31,
        first_failure(
            0..=30u32,
            |&n| derangement(n) == derangement_by_sum(n),
            |n| format!("n = {n}"),
        ),
    ));

    let cases: Vec<(u64, u32)> = (2..=12)
        .flat_map(|n| (1..=6).map(move |j| (n, j)))
        .collect();
    out.push(exact(
        "tree length: alternating sum equals ordered-tuple sum (n ≤ 12, j ≤ 6)",
        cases.len(),
        first_failure(
            cases.iter().copied(),
            |&(n, j)| match (moment_l_alternating(n, j), moment_l_ordered(n, j)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            },
            |(n, j)| format!("n = {n}, j = {j}"),
        ),
    ));

    out.push(exact(
        "death process: RL = I and RD = QR for Kingman rates (n ≤ 10)",
        9,
        first_failure(
            2..=10u64,
            |&n| spectral_pair(&DeathRates::kingman(n)).is_ok(),
            |n| format!("n = {n}"),
        ),
    ));

    out.push(exact(
        "hypoexponential weights sum to one (n ≤ 40)",
        39,
        first_failure(
            2..=40u64,
            |&n| {
                hypoexp_coefficients(n)
                    .map(|h| h.iter().map(|(_, a)| a.clone()).sum::<Rational>() == int(1))
                    .unwrap_or(false)
            },
            |n| format!("n = {n}"),
        ),
    ));

    out
}

fn numeric_suite(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    const K: u64 = 1_000_000;

    for j in 2..=6u32 {
        let jf = u64::from(j);
        let c = (factorial(jf - 1) << j).to_f64().unwrap_or(f64::NAN);
        let s = diagonal_series_truncated(SeriesKind::Unsigned, j, K).expect("valid series");
        let exact = eval_f64(&o.cumulant(j));
        out.push(bounded(
            Suite::Numeric,
            &format!("κ_{j}(T) against its series truncated at K = 10^6"),
            (c * s.value - exact).abs(),
            c * s.error_bound() + 4.0 * f64::EPSILON * exact.abs(),
        ));
    }
    for j in 2..=6u32 {
        let jf = u64::from(j);
        let c = (factorial(jf) << j).to_f64().unwrap_or(f64::NAN);
        let s = diagonal_series_truncated(SeriesKind::Signed, j, K).expect("valid series");
        let exact = eval_f64(&moment_t(j));
        out.push(bounded(
            Suite::Numeric,
            &format!("E(T^{j}) against its series truncated at K = 10^6"),
            (c * s.value - exact).abs(),
            c * s.error_bound() + 4.0 * f64::EPSILON * exact.abs(),
        ));
    }

    for j in 2..=3u32 {
        let r = moment_t_ordered_oracle(j, 1000).expect("supported order");
        let exact = eval_f64(&moment_t(j));
        out.push(bounded(
            Suite::Numeric,
            &format!("E(T^{j}) against the ordered-tuple sum up to k = 1000"),
            (exact - r.value).abs(),
            r.tail_bound,
        ));
    }

    for parts in [&[2, 3][..], &[3, 3], &[2, 2, 3], &[4, 5], &[3, 4, 5]] {
        let t = s_multi_truncated(parts, 2000).expect("within budget");
        let exact = eval_f64(&s_multi_partition(parts).expect("valid parts"));
        out.push(bounded(
            Suite::Numeric,
            &format!("s{parts:?} truncated at N = 2000"),
            (exact - t.value).abs(),
            t.error_bound(),
        ));
    }

    let zeta_error = (1..=6u32)
        .map(|m| {
            let direct = zeta_numeric(2 * m, 40)
                .expect("supported precision")
                .to_f64();
            let pi = std::f64::consts::PI.powi(2 * m as i32);
            let bernoulli = zeta_even_coefficient(m).to_f64().unwrap_or(f64::NAN) * pi;
            (direct - bernoulli).abs() / direct
        })
        .fold(0.0, f64::max);
    out.push(bounded(
        Suite::Numeric,
        "ζ(2m) by summation against the Bernoulli closed form, relative (m ≤ 6)",
        zeta_error,
        1e-14,
    ));

    let mut spectral = 0.0f64;
    let mut absorption = 0.0f64;
    for n in 2..=8u64 {
        let rates = DeathRates::kingman(n);
        let pair = spectral_pair(&rates).expect("distinct rates");
        for t in [0.1, 0.7, 2.0] {
            let p = transition_matrix(&pair, t);
            let e = matrix_exponential(&rates.generator_f64(), t).expect("small norm");
            spectral = spectral.max((p - e).abs().max());
            let n_idx = n as usize;
            absorption =
                absorption.max((transition_probability(&pair, n_idx, 1, t) - cdf_t_n(n, t)).abs());
        }
    }
    out.push(bounded(
        Suite::Numeric,
        "spectral transition matrix against matrix exponential (n ≤ 8)",
        spectral,
        1e-10,
    ));
    out.push(bounded(
        Suite::Numeric,
        "p_{n1}(t) against the law of T_n (n ≤ 8)",
        absorption,
        1e-10,
    ));

    let mass = integrate(|t| density_g_n(20, t), 0.0, 60.0, 1e-12).map(|i| (i.value - 1.0).abs());
    out.push(bounded(
        Suite::Numeric,
        "density of T_20 integrates to one",
        mass.unwrap_or(f64::INFINITY),
        1e-9,
    ));

    out
}

fn simulation_suite(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let config = |n, statistic| SimConfig::new(n, o.reps, o.seed, statistic).expect("valid config");
    let ks = |name: &str, r: crate::simulate::KsResult| Check {
        suite: Suite::Simulation,
        name: name.into(),
        tolerance: format!("{:.4e} (α = {})", r.critical_value, r.alpha),
        observed: format!("{:.4e}", r.statistic),
        passed: r.passed(),
    };

    let t100 = sample(&config(100, Statistic::AbsorptionTime)).expect("valid config");
    out.push(bounded(
        Suite::Simulation,
        "mean of T_100 within 4 standard errors of 2(1 - 1/100)",
        (t100.mean() - 1.98).abs(),
        4.0 * t100.standard_error(),
    ));

    let t1000 = sample(&config(1000, Statistic::AbsorptionTime)).expect("valid config");
    out.push(bounded(
        Suite::Simulation,
        "variance of T_1000 against κ_2(T)",
        (t1000.variance() - eval_f64(&o.cumulant(2))).abs(),
        0.05,
    ));

    let t10 = sample(&config(10, Statistic::AbsorptionTime)).expect("valid config");
    out.push(ks(
        "T_10 against its exact law",
        ks_test(t10.sorted_values(), |t| cdf_t_n(10, t), 0.01),
    ));

    let l20 = sample(&config(20, Statistic::TreeLength)).expect("valid config");
    out.push(ks(
        "L_20 against its exact law",
        ks_test(l20.sorted_values(), |t| cdf_l(20, t.max(0.0)), 0.01),
    ));

    let sum = sample_stream(&config(50, Statistic::TreeLength)).expect("valid config");
    let max = sample_tree_length_by_maximum(50, o.reps, o.seed).expect("valid config");
    out.push(ks(
        "L_50 as Σ kτ_k against the maximum of 49 exponentials",
        ks_two_sample(&sum, &max, 0.01),
    ));

    let g = sample(&config(500, Statistic::ShiftedTreeLength)).expect("valid config");
    out.push(ks(
        "L_500/2 - ln 500 against the Gumbel law",
        ks_test(g.sorted_values(), gumbel_cdf, 0.01),
    ));

    out
}
