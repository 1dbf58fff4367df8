mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kingman::absorption::{
    cdf_t_n, cumulant_t, density_g, density_g_auto, density_g_n, hypoexp_coefficients, moment_t,
};
use kingman::algebra::{format_rational, int, parse_rational};
use kingman::death_process::{matrix_exponential, spectral_pair, transition_matrix, DeathRates};
use kingman::gumbel::{
    central_moment_by_compositions, central_moment_s_expansion, derangement, gumbel_central_moment,
    gumbel_cumulant, gumbel_moment, gumbel_moment_by_block_counts, gumbel_moment_by_set_partitions,
    s_multi_partition, s_multi_recursive, s_multi_truncated,
};
use kingman::simulate::{ks_test, reference_law, sample_stream, summarize, SimConfig, Statistic};
use kingman::tree_length::{
    cdf_l, cumulant_l, gumbel_shift_cumulant, moment_l_alternating, moment_l_ordered,
};
use kingman::verify::{self, Fault, Suite, VerifyOptions};
use kingman::{bernoulli, zeta_numeric, Rational, ZetaPolynomial};
use serde::Serialize;

use output::{emit, emit_table, Form, Format, OutputRecord};

#[derive(Parser)]
#[command(
    name = "kingman",
    version,
    about = "Exact moments of Kingman coalescent functionals and the Gumbel law"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone, Copy)]
struct OutputArgs {
    /// Decimal places in numeric output.
    #[arg(long, global = true, default_value_t = 5)]
    digits: u32,
    /// Representation shown in text output.
    #[arg(long, global = true, value_enum, default_value_t = Form::All)]
    form: Form,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Cumulants and moments of T for j = 1..5 and Gumbel central moments for n = 0..10.
    Tables,
    /// Cumulant κ_j of the absorption time T.
    CumulantT {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
    },
    /// Raw moment E(T^j).
    MomentT {
        #[arg(long)]
        j: u32,
    },
    /// Cumulant κ_j of the tree length L_n, or of L_n/2 - ln n with --shifted.
    TreeCumulant {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
        #[arg(long)]
        shifted: bool,
    },
    /// Raw moment E(L_n^j).
    TreeMoment {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum, default_value_t = TreeRoute::Alternating)]
        route: TreeRoute,
    },
    /// Distribution function of L_n.
    TreeCdf {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long)]
        t: f64,
    },
    /// Cumulant κ_j of the standard Gumbel law.
    GumbelCumulant {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        j: u32,
    },
    /// Raw Gumbel moment m_n.
    GumbelMoment {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = MomentRoute::Recursion)]
        route: MomentRoute,
    },
    /// Central Gumbel moment m_n'.
    GumbelCentral {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = CentralRoute::Recursion)]
        route: CentralRoute,
        /// Also list the expansion in multiple sums s(n_1, …, n_i).
        #[arg(long)]
        expansion: bool,
    },
    /// Number of derangements d_n.
    Derangement {
        #[arg(long)]
        n: u32,
    },
    /// Bernoulli number B_n.
    Bernoulli {
        #[arg(long)]
        n: usize,
    },
    /// ζ(k) to --digits decimals.
    Zeta {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
    },
    /// Multiple sum s(n_1, …, n_i) over distinct indices.
    SMulti {
        /// Comma-separated parts, each at least 2.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u32>,
        #[arg(long, value_enum, default_value_t = SRoute::Partition)]
        route: SRoute,
        /// Also report the sum truncated at this index, with its error bound.
        #[arg(long)]
        trunc: Option<u64>,
    },
    /// Coefficients a_nk of the law of T_n.
    Hypoexp {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
    },
    /// P(T_n ≤ t).
    CdfT {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long)]
        t: f64,
    },
    /// Density of T_n, or of T when --n is omitted.
    Density {
        #[arg(long)]
        t: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: Option<u64>,
        /// Number of series terms for the density of T.
        #[arg(long)]
        trunc: Option<u64>,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Matrices R and L with e^{tQ} = R e^{tD} L for a pure death process.
    Spectral {
        #[command(flatten)]
        rates: RateArgs,
    },
    /// Transition matrix e^{tQ} of a pure death process.
    Transition {
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value_t = TransitionMethod::Spectral)]
        method: TransitionMethod,
    },
    /// Monte-Carlo sample of T_n, L_n or L_n/2 - ln n.
    Simulate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = StatisticArg::AbsorptionTime)]
        statistic: StatisticArg,
        /// Write the raw sample as CSV to this path ("-" for stdout).
        #[arg(long)]
        raw: Option<String>,
        /// Kolmogorov–Smirnov test against the reference law at this level.
        #[arg(long)]
        ks: Option<f64>,
    },
    /// Run the invariant suites; exits with 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
        /// Corrupt a cumulant coefficient to confirm the suites catch it.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Args)]
struct RateArgs {
    /// Kingman rates k(k-1)/2 for k = 1..n.
    #[arg(long, conflicts_with = "rates", required_unless_present = "rates")]
    n: Option<u64>,
    /// Comma-separated distinct rates, each an integer or p/q.
    #[arg(long, value_delimiter = ',')]
    rates: Option<Vec<String>>,
}

impl RateArgs {
    fn resolve(&self) -> Result<DeathRates> {
        match (&self.n, &self.rates) {
            (Some(n), _) => {
                if *n < 1 {
                    bail!(kingman::Error::InvalidArgument(
                        "n must be at least 1".into()
                    ));
                }
                Ok(DeathRates::kingman(*n))
            }
            (None, Some(rates)) => {
                let parsed = rates
                    .iter()
                    .map(|r| parse_rational(r))
                    .collect::<kingman::Result<Vec<_>>>()?;
                Ok(DeathRates::new(parsed)?)
            }
            (None, None) => unreachable!("clap requires one of --n and --rates"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeRoute {
    Alternating,
    Ordered,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MomentRoute {
    Recursion,
    SetPartitions,
    BlockCounts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CentralRoute {
    Recursion,
    Compositions,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SRoute {
    Partition,
    Recursive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransitionMethod {
    Spectral,
    Expm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatisticArg {
    AbsorptionTime,
    TreeLength,
    ShiftedTreeLength,
}

impl From<StatisticArg> for Statistic {
    fn from(s: StatisticArg) -> Self {
        match s {
            StatisticArg::AbsorptionTime => Statistic::AbsorptionTime,
            StatisticArg::TreeLength => Statistic::TreeLength,
            StatisticArg::ShiftedTreeLength => Statistic::ShiftedTreeLength,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Exact,
    Numeric,
    Simulation,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = run(cli, &mut out).and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match status {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            // Argument and range errors from the library are usage errors.
            if e.downcast_ref::<kingman::Error>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn index(pairs: &[(&str, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    kingman::Error::InvalidArgument(msg.into()).into()
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    let OutputArgs {
        digits,
        form,
        format,
    } = cli.output;
    let records = match cli.command {
        Command::Tables => return tables(out, digits, format),
        Command::CumulantT { j } => {
            vec![OutputRecord::exact(
                "cumulant_t",
                index(&[("j", j.to_string())]),
                cumulant_t(j),
                digits,
            )?]
        }
        Command::MomentT { j } => {
            vec![OutputRecord::exact(
                "moment_t",
                index(&[("j", j.to_string())]),
                moment_t(j),
                digits,
            )?]
        }
        Command::TreeCumulant { n, j, shifted } => {
            let idx = index(&[("n", n.to_string()), ("j", j.to_string())]);
            if shifted {
                let c = gumbel_shift_cumulant(n, j)?;
                let mut r = OutputRecord::rational(
                    "shifted_tree_cumulant",
                    idx,
                    c.rational_part(),
                    digits,
                )?;
                if let Some(m) = c.log_offset() {
                    let exact = r
                        .exact
                        .take()
                        .map(|p| format!("{p} - log({m})"))
                        .unwrap_or_default();
                    r.pi_form = Some(exact);
                    r.numeric = format!("{:.*}", digits.min(17) as usize, c.to_f64());
                }
                vec![r]
            } else {
                vec![OutputRecord::rational(
                    "tree_cumulant",
                    idx,
                    cumulant_l(n, j)?,
                    digits,
                )?]
            }
        }
        Command::TreeMoment { n, j, route } => {
            let idx = index(&[("n", n.to_string()), ("j", j.to_string())]);
            let mut records = Vec::new();
            if matches!(route, TreeRoute::Alternating | TreeRoute::Both) {
                let m = moment_l_alternating(n, j)?;
                records.push(OutputRecord::rational(
                    "tree_moment_alternating",
                    idx.clone(),
                    m,
                    digits,
                )?);
            }
            if matches!(route, TreeRoute::Ordered | TreeRoute::Both) {
                let m = moment_l_ordered(n, j)?;
                records.push(OutputRecord::rational(
                    "tree_moment_ordered",
                    idx,
                    m,
                    digits,
                )?);
            }
            records
        }
        Command::TreeCdf { n, t } => {
            check_time(t)?;
            vec![OutputRecord::float(
                "cdf_l",
                index(&[("n", n.to_string()), ("t", t.to_string())]),
                cdf_l(n, t),
                digits,
            )]
        }
        Command::GumbelCumulant { j } => {
            vec![OutputRecord::exact(
                "gumbel_cumulant",
                index(&[("j", j.to_string())]),
                gumbel_cumulant(j),
                digits,
            )?]
        }
        Command::GumbelMoment { n, route } => {
            let m = match route {
                MomentRoute::Recursion => gumbel_moment(n),
                MomentRoute::SetPartitions => gumbel_moment_by_set_partitions(n)?,
                MomentRoute::BlockCounts => gumbel_moment_by_block_counts(n),
            };
            vec![OutputRecord::exact(
                "gumbel_moment",
                index(&[("n", n.to_string())]),
                m,
                digits,
            )?]
        }
        Command::GumbelCentral {
            n,
            route,
            expansion,
        } => {
            let m = match route {
                CentralRoute::Recursion => gumbel_central_moment(n),
                CentralRoute::Compositions => central_moment_by_compositions(n),
            };
            let mut records = vec![OutputRecord::exact(
                "gumbel_central",
                index(&[("n", n.to_string())]),
                m,
                digits,
            )?];
            if expansion {
                for (parts, c) in central_moment_s_expansion(n) {
                    let label = parts
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    records.push(OutputRecord::rational(
                        "s_coefficient",
                        format!("parts={label}"),
                        int(c),
                        0,
                    )?);
                }
            }
            records
        }
        Command::Derangement { n } => {
            vec![OutputRecord::rational(
                "derangement",
                index(&[("n", n.to_string())]),
                int(derangement(n)),
                0,
            )?]
        }
        Command::Bernoulli { n } => {
            vec![OutputRecord::rational(
                "bernoulli",
                index(&[("n", n.to_string())]),
                bernoulli(n),
                digits,
            )?]
        }
        Command::Zeta { k } => {
            let mut r = OutputRecord::exact(
                "zeta",
                index(&[("k", k.to_string())]),
                ZetaPolynomial::zeta(k),
                digits,
            )?;
            r.numeric = zeta_numeric(k, digits)?.to_string();
            vec![r]
        }
        Command::SMulti {
            parts,
            route,
            trunc,
        } => {
            let label = parts
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let s = match route {
                SRoute::Partition => s_multi_partition(&parts)?,
                SRoute::Recursive => s_multi_recursive(&parts)?,
            };
            let mut records = vec![OutputRecord::exact(
                "s_multi",
                format!("parts={label}"),
                s,
                digits,
            )?];
            if let Some(n) = trunc {
                let t = s_multi_truncated(&parts, n)?;
                let idx = format!("parts={label},N={n}");
                records.push(OutputRecord::float(
                    "s_multi_truncated",
                    idx.clone(),
                    t.value,
                    digits.max(8),
                ));
                records.push(OutputRecord::scientific(
                    "s_multi_error_bound",
                    idx,
                    t.error_bound(),
                ));
            }
            records
        }
        Command::Hypoexp { n } => {
            let h = hypoexp_coefficients(n)?;
            h.iter()
                .map(|(k, a)| {
                    OutputRecord::rational(
                        "a",
                        index(&[("n", n.to_string()), ("k", k.to_string())]),
                        a.clone(),
                        digits,
                    )
                })
                .collect::<Result<_>>()?
        }
        Command::CdfT { n, t } => {
            check_time(t)?;
            vec![OutputRecord::float(
                "cdf_t",
                index(&[("n", n.to_string()), ("t", t.to_string())]),
                cdf_t_n(n, t),
                digits,
            )]
        }
        Command::Density {
            t,
            n,
            trunc,
            tolerance,
        } => match n {
            Some(n) => {
                check_time(t)?;
                let idx = index(&[("n", n.to_string()), ("t", t.to_string())]);
                vec![OutputRecord::float(
                    "density_t_n",
                    idx,
                    density_g_n(n, t),
                    digits,
                )]
            }
            None => {
                let d = match trunc {
                    Some(k) => density_g(t, k, tolerance)?,
                    None => density_g_auto(t, tolerance)?,
                };
                let idx = index(&[("t", t.to_string()), ("K", (d.terms + 1).to_string())]);
                vec![
                    OutputRecord::float("density_t", idx.clone(), d.value, digits),
                    OutputRecord::scientific("density_t_tail_bound", idx, d.tail_bound),
                ]
            }
        },
        Command::Spectral { rates } => return spectral(out, &rates.resolve()?, format),
        Command::Transition { rates, t, method } => {
            check_time(t)?;
            let rates = rates.resolve()?;
            let p = match method {
                TransitionMethod::Spectral => transition_matrix(&spectral_pair(&rates)?, t),
                TransitionMethod::Expm => matrix_exponential(&rates.generator_f64(), t)?,
            };
            let mut records = Vec::new();
            for i in 0..p.nrows() {
                for j in 0..p.ncols() {
                    let idx = index(&[
                        ("i", (i + 1).to_string()),
                        ("j", (j + 1).to_string()),
                        ("t", t.to_string()),
                    ]);
                    records.push(OutputRecord::float("p", idx, p[(i, j)], digits));
                }
            }
            if format == Format::Text {
                for i in 0..p.nrows() {
                    let row: Vec<String> = (0..p.ncols())
                        .map(|j| format!("{:.*}", digits.min(17) as usize, p[(i, j)]))
                        .collect();
                    writeln!(out, "{}", row.join("  "))?;
                }
                return Ok(true);
            }
            records
        }
        Command::Simulate {
            n,
            reps,
            seed,
            statistic,
            raw,
            ks,
        } => {
            let config = SimConfig::new(n, reps, seed, statistic.into())?;
            return simulate(out, &config, raw.as_deref(), ks, digits, format);
        }
        Command::Verify {
            suite,
            seed,
            reps,
            inject_fault,
        } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::Exact => vec![Suite::Exact],
                SuiteArg::Numeric => vec![Suite::Numeric],
                SuiteArg::Simulation => vec![Suite::Simulation],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            if reps < 1000 {
                return Err(usage("verification needs at least 1000 replicates"));
            }
            let fault = inject_fault.then_some(Fault::CumulantCoefficient);
            let report = verify::run(&suites, &VerifyOptions { seed, reps, fault });
            match format {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *out, &report)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    for c in &report.checks {
                        w.serialize(c)?;
                    }
                    w.flush()?;
                }
                Format::Text => writeln!(out, "{report}")?,
            }
            return Ok(report.passed());
        }
    };
    emit(out, &records, form, format)?;
    Ok(true)
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(usage(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

fn tables(out: &mut impl Write, digits: u32, format: Format) -> Result<bool> {
    let jrange = || 1..=5u32;
    let cumulants: Vec<_> = jrange()
        .map(|j| OutputRecord::exact("cumulant_t", format!("j={j}"), cumulant_t(j), digits))
        .collect::<Result<_>>()?;
    let moments: Vec<_> = jrange()
        .map(|j| OutputRecord::exact("moment_t", format!("j={j}"), moment_t(j), digits))
        .collect::<Result<_>>()?;
    let central: Vec<_> = (0..=10u32)
        .map(|n| {
            OutputRecord::exact(
                "gumbel_central",
                format!("n={n}"),
                gumbel_central_moment(n),
                digits,
            )
        })
        .collect::<Result<_>>()?;
    if format == Format::Text {
        emit_table(out, "Cumulants of T", &cumulants)?;
        writeln!(out)?;
        emit_table(out, "Moments of T", &moments)?;
        writeln!(out)?;
        emit_table(out, "Central moments of the Gumbel law", &central)?;
    } else {
        let all: Vec<_> = cumulants
            .into_iter()
            .chain(moments)
            .chain(central)
            .collect();
        emit(out, &all, Form::All, format)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct SpectralOutput {
    rates: Vec<String>,
    r: Vec<Vec<String>>,
    l: Vec<Vec<String>>,
    conditioning: f64,
}

fn spectral(out: &mut impl Write, rates: &DeathRates, format: Format) -> Result<bool> {
    let pair = spectral_pair(rates)?;
    let render = |m: &[Vec<Rational>]| -> Vec<Vec<String>> {
        m.iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect()
    };
    let data = SpectralOutput {
        rates: (1..=rates.len())
            .map(|i| format_rational(rates.rate(i)))
            .collect(),
        r: render(pair.r_matrix()),
        l: render(pair.l_matrix()),
        conditioning: pair.conditioning(),
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &data)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["matrix", "i", "j", "value"])?;
            for (name, m) in [("R", &data.r), ("L", &data.l)] {
                for (i, row) in m.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        w.write_record([name, &(i + 1).to_string(), &(j + 1).to_string(), v])?;
                    }
                }
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "rates: {}", data.rates.join(", "))?;
            for (name, m) in [("R", &data.r), ("L", &data.l)] {
                writeln!(out, "{name}:")?;
                let width = m
                    .iter()
                    .flatten()
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(1);
                for row in m {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
                    writeln!(out, "  {}", cells.join("  "))?;
                }
            }
            writeln!(out, "conditioning: {:.3e}", data.conditioning)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct SimulationOutput {
    statistic: String,
    n: u64,
    reps: u64,
    seed: u64,
    mean: f64,
    standard_error: f64,
    variance: f64,
    central_moments: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ks: Option<KsOutput>,
}

#[derive(Serialize)]
struct KsOutput {
    reference: &'static str,
    alpha: f64,
    statistic: f64,
    critical_value: f64,
    passed: bool,
}

fn simulate(
    out: &mut impl Write,
    config: &SimConfig,
    raw: Option<&str>,
    ks_alpha: Option<f64>,
    digits: u32,
    format: Format,
) -> Result<bool> {
    let values = sample_stream(config)?;
    if let Some(path) = raw {
        let sink: Box<dyn Write> = if path == "-" {
            Box::new(&mut *out)
        } else {
            Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {path}"))?,
            ))
        };
        let mut w = csv::Writer::from_writer(sink);
        w.write_record([config.csv_header()])?;
        for v in &values {
            w.write_record([v.to_string()])?;
        }
        w.flush()?;
        if path == "-" {
            return Ok(true);
        }
    }
    let summary = summarize(values);
    let ks = match ks_alpha {
        Some(alpha) if !(alpha > 0.0 && alpha < 1.0) => {
            return Err(usage(format!("KS level must lie in (0, 1), got {alpha}")));
        }
        Some(alpha) => {
            let (reference, cdf) = reference_law(config);
            let r = ks_test(summary.sorted_values(), cdf, alpha);
            Some(KsOutput {
                reference,
                alpha,
                statistic: r.statistic,
                critical_value: r.critical_value,
                passed: r.passed(),
            })
        }
        None => None,
    };
    let data = SimulationOutput {
        statistic: config.statistic.to_string(),
        n: config.n,
        reps: config.reps,
        seed: config.seed,
        mean: summary.mean(),
        standard_error: summary.standard_error(),
        variance: summary.variance(),
        central_moments: (2..=6).map(|p| summary.central_moment(p)).collect(),
        ks,
    };
    let d = digits.min(17) as usize;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &data)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["quantity", "value"])?;
            w.write_record(["mean", &format!("{:.d$}", data.mean)])?;
            w.write_record(["standard_error", &format!("{:.d$}", data.standard_error)])?;
            w.write_record(["variance", &format!("{:.d$}", data.variance)])?;
            for (p, m) in (2..).zip(&data.central_moments) {
                w.write_record([format!("central_moment_{p}"), format!("{m:.d$}")])?;
            }
            if let Some(k) = &data.ks {
                w.write_record(["ks_statistic", &format!("{:.6}", k.statistic)])?;
                w.write_record(["ks_critical_value", &format!("{:.6}", k.critical_value)])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} n={} reps={} seed={}",
                data.statistic, data.n, data.reps, data.seed
            )?;
            writeln!(
                out,
                "mean      {:.d$} ± {:.d$}",
                data.mean, data.standard_error
            )?;
            writeln!(out, "variance  {:.d$}", data.variance)?;
            for (p, m) in (2..).zip(&data.central_moments) {
                writeln!(out, "μ{p}        {m:.d$}")?;
            }
            if let Some(k) = &data.ks {
                writeln!(
                    out,
                    "KS vs {}: D = {:.6}, critical {:.6} at α = {} → {}",
                    k.reference,
                    k.statistic,
                    k.critical_value,
                    k.alpha,
                    if k.passed { "pass" } else { "fail" }
                )?;
            }
        }
    }
    Ok(true)
}
