use kingman::absorption::{cdf_t_n, cumulant_t};
use kingman::eval_f64;
use kingman::simulate::{
    gumbel_cdf, ks_test, ks_two_sample, sample, sample_stream, sample_tree_length_by_maximum,
    SimConfig, Statistic,
};
use kingman::tree_length::cdf_l;

const REPS: u64 = 100_000;

fn config(n: u64, seed: u64, statistic: Statistic) -> SimConfig {
    SimConfig::new(n, REPS, seed, statistic).unwrap()
}

#[test]
fn two_lineages_have_unit_mean() {
    let s = sample(&config(2, 42, Statistic::AbsorptionTime)).unwrap();
    assert!((s.mean() - 1.0).abs() < 4.0 * s.standard_error());
}

#[test]
fn mean_absorption_time_for_a_hundred() {
    let s = sample(&config(100, 42, Statistic::AbsorptionTime)).unwrap();
    assert!((s.mean() - 2.0 * (1.0 - 1.0 / 100.0)).abs() < 4.0 * s.standard_error());
    assert_eq!(s.count(), REPS);
}

#[test]
fn variance_for_a_thousand() {
    let s = sample(&config(1000, 42, Statistic::AbsorptionTime)).unwrap();
    let target = eval_f64(&cumulant_t(2));
    assert!((s.variance() - target).abs() < 4.0 * s.variance_standard_error());
    assert!((s.variance() - target).abs() < 0.05);
}

#[test]
fn shifted_tree_length_is_nearly_gumbel() {
    let s = sample(&config(500, 42, Statistic::ShiftedTreeLength)).unwrap();
    assert!(ks_test(s.sorted_values(), gumbel_cdf, 0.01).passed());
}

#[test]
fn absorption_time_matches_its_law() {
    let s = sample(&config(10, 42, Statistic::AbsorptionTime)).unwrap();
    let r = ks_test(s.sorted_values(), |t| cdf_t_n(10, t), 0.01);
    assert!(r.passed(), "D = {}", r.statistic);
}

#[test]
fn tree_length_matches_its_law() {
    let s = sample(&config(30, 7, Statistic::TreeLength)).unwrap();
    assert!(ks_test(s.sorted_values(), |t| cdf_l(30, t), 0.01).passed());
}

#[test]
fn maximum_construction_matches_its_law() {
    let max = sample_tree_length_by_maximum(30, REPS, 7).unwrap();
    assert!(ks_test(&max, |t| cdf_l(30, t), 0.01).passed());
}

#[test]
fn two_constructions_of_tree_length_agree() {
    let sum = sample_stream(&config(100, 42, Statistic::TreeLength)).unwrap();
    let max = sample_tree_length_by_maximum(100, REPS, 42).unwrap();
    assert!(ks_two_sample(&sum, &max, 0.01).passed());
}

#[test]
fn wrong_law_is_rejected() {
    let s = sample(&config(10, 42, Statistic::AbsorptionTime)).unwrap();
    assert!(!ks_test(s.sorted_values(), |t| cdf_t_n(12, t), 0.01).passed());
    let sum = sample_stream(&config(40, 42, Statistic::TreeLength)).unwrap();
    let max = sample_tree_length_by_maximum(50, REPS, 42).unwrap();
    assert!(!ks_two_sample(&sum, &max, 0.01).passed());
}

#[test]
fn summaries_are_reproducible() {
    let c = config(50, 123, Statistic::TreeLength);
    let a = sample(&c).unwrap();
    let b = sample(&c).unwrap();
    assert_eq!(a, b);
    for p in 2..=6 {
        assert_eq!(a.central_moment(p).to_bits(), b.central_moment(p).to_bits());
    }
}
