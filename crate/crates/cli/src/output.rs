use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use kingman::{eval_numeric, to_pi_form, Rational, ZetaPolynomial};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Zeta,
    Pi,
    Numeric,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One computed quantity in every representation that applies to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub index: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ZetaPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_form: Option<String>,
    pub numeric: String,
}

impl OutputRecord {
    pub fn exact(quantity: &str, index: String, p: ZetaPolynomial, digits: u32) -> Result<Self> {
        let numeric = eval_numeric(&p, digits)?;
        Ok(OutputRecord {
            quantity: quantity.into(),
            index,
            pi_form: Some(to_pi_form(&p).to_string()),
            exact: Some(p),
            numeric,
        })
    }

    pub fn rational(quantity: &str, index: String, r: Rational, digits: u32) -> Result<Self> {
        let mut record = Self::exact(quantity, index, ZetaPolynomial::constant(r), digits)?;
        record.pi_form = None;
        Ok(record)
    }

    pub fn float(quantity: &str, index: String, value: f64, digits: u32) -> Self {
        OutputRecord {
            quantity: quantity.into(),
            index,
            exact: None,
            pi_form: None,
            numeric: format!("{:.*}", digits.min(17) as usize, value),
        }
    }

    /// A small non-negative quantity such as an error bound.
    pub fn scientific(quantity: &str, index: String, value: f64) -> Self {
        OutputRecord {
            quantity: quantity.into(),
            index,
            exact: None,
            pi_form: None,
            numeric: format!("{value:.3e}"),
        }
    }

    fn zeta_text(&self) -> String {
        self.exact
            .as_ref()
            .map_or_else(|| self.numeric.clone(), ToString::to_string)
    }

    fn pi_text(&self) -> String {
        self.pi_form.clone().unwrap_or_else(|| self.zeta_text())
    }
}

pub fn emit(
    out: &mut impl Write,
    records: &[OutputRecord],
    form: Form,
    format: Format,
) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["quantity", "index", "exact", "pi_form", "numeric"])?;
            for r in records {
                let exact = r
                    .exact
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                let pi = r.pi_form.clone().unwrap_or_default();
                w.write_record([&r.quantity, &r.index, &exact, &pi, &r.numeric])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in records {
                match form {
                    Form::Numeric => writeln!(out, "{}", r.numeric)?,
                    Form::Zeta => writeln!(out, "{}", r.zeta_text())?,
                    Form::Pi => writeln!(out, "{}", r.pi_text())?,
                    Form::All => {
                        let label = if r.index.is_empty() {
                            r.quantity.clone()
                        } else {
                            format!("{}({})", r.quantity, r.index)
                        };
                        match &r.exact {
                            None => writeln!(out, "{label} ≈ {}", r.numeric)?,
                            Some(p) => {
                                writeln!(out, "{label} = {p}")?;
                                if let Some(pi) =
                                    r.pi_form.as_ref().filter(|pi| *pi != &p.to_string())
                                {
                                    writeln!(out, "  = {pi}")?;
                                }
                                if r.numeric != p.to_string() {
                                    writeln!(out, "  ≈ {}", r.numeric)?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A titled table of exact records, one row per index.
pub fn emit_table(out: &mut impl Write, title: &str, records: &[OutputRecord]) -> Result<()> {
    let rows: Vec<[String; 4]> = records
        .iter()
        .map(|r| {
            [
                r.index.clone(),
                r.zeta_text(),
                r.pi_text(),
                r.numeric.clone(),
            ]
        })
        .collect();
    let width = |c: usize| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0);
    let (w0, w1, w2) = (width(0), width(1), width(2));
    writeln!(out, "{title}")?;
    for [i, z, p, n] in &rows {
        writeln!(out, "  {i:<w0$}  {z:<w1$}  {p:<w2$}  {n}")?;
    }
    Ok(())
}
