/// Outcome of a Kolmogorov–Smirnov test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub critical_value: f64,
    pub alpha: f64,
}

impl KsResult {
    pub fn passed(&self) -> bool {
        self.statistic <= self.critical_value
    }
}

/// Asymptotic Kolmogorov critical constant `c(α) = sqrt(-ln(α/2)/2)`.
pub fn critical_constant(alpha: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

/// `sup_x |F_n(x) - F(x)|` for a sorted sample.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!sorted.is_empty(), "KS statistic of an empty sample");
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < sorted.len() {
        // Ties: the empirical CDF jumps once past the whole run.
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d
            .max((j as f64 / n - f).abs())
            .max((f - i as f64 / n).abs());
        i = j;
    }
    d
}

/// One-sample test at level `alpha` with threshold `c(α)/sqrt(n)`.
pub fn ks_test(sample: &[f64], cdf: impl Fn(f64) -> f64, alpha: f64) -> KsResult {
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    KsResult {
        statistic: ks_statistic(&sorted, cdf),
        critical_value: critical_constant(alpha) / (sorted.len() as f64).sqrt(),
        alpha,
    }
}

/// Two-sample test with threshold `c(α) sqrt((n+m)/(nm))`.
pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> KsResult {
    assert!(!a.is_empty() && !b.is_empty(), "KS test of an empty sample");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    KsResult {
        statistic: d,
        critical_value: critical_constant(alpha) * ((n + m) / (n * m)).sqrt(),
        alpha,
    }
}
