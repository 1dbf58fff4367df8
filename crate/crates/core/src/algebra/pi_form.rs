use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::polynomial::write_signed_terms;
use super::{zeta_even_coefficient, Generator, Monomial, Rational, ZetaPolynomial};

/// `π^pi_power` times a monomial free of even zeta values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiMonomial {
    pub pi_power: u32,
    pub rest: Monomial,
}

impl PiMonomial {
    fn weight(&self) -> u32 {
        self.pi_power + self.rest.weight()
    }
}

impl fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => {}
            1 => write!(f, "π")?,
            e => write!(f, "π^{e}")?,
        }
        if !self.rest.is_one() {
            write!(f, "{}", self.rest)?;
        }
        Ok(())
    }
}

/// A ζ-polynomial with every ζ(2m) rewritten as a rational multiple of
/// π^(2m). Odd zeta values, γ and log 2 stay formal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiForm {
    terms: BTreeMap<PiMonomial, Rational>,
}

impl PiForm {
    pub fn terms(&self) -> impl Iterator<Item = (&PiMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, pi_power: u32, rest: &Monomial) -> Rational {
        let key = PiMonomial {
            pi_power,
            rest: rest.clone(),
        };
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: PiMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }
}

/// Replaces each ζ(2m) factor by `zeta_even_coefficient(m)·π^(2m)`.
pub fn to_pi_form(p: &ZetaPolynomial) -> PiForm {
    let mut out = PiForm::default();
    for (m, c) in p.terms() {
        let mut coeff = c.clone();
        let mut pi_power = 0;
        let mut rest = Vec::new();
        for g in m.generators() {
            match g {
                Generator::Zeta(k) if k % 2 == 0 => {
                    coeff *= zeta_even_coefficient(k / 2);
                    pi_power += k;
                }
                other => rest.push(*other),
            }
        }
        out.add_term(
            PiMonomial {
                pi_power,
                rest: Monomial::from_generators(rest),
            },
            coeff,
        );
    }
    out
}

impl fmt::Display for PiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.weight()
                .cmp(&a.weight())
                .then(b.pi_power.cmp(&a.pi_power))
                .then(a.rest.display_cmp(&b.rest))
        });
        write_signed_terms(
            f,
            terms.into_iter().map(|(m, c)| {
                let body = if m.pi_power == 0 && m.rest.is_one() {
                    String::new()
                } else {
                    m.to_string()
                };
                (c, body)
            }),
        )
    }
}

impl PiForm {
    /// Rebuilds a ζ-polynomial-like value with π kept as a separate factor;
    /// used for numeric round trips.
    pub(crate) fn parts(&self) -> impl Iterator<Item = (u32, &Monomial, &Rational)> {
        self.terms.iter().map(|(k, c)| (k.pi_power, &k.rest, c))
    }

    pub fn is_rational_polynomial_in_pi_squared(&self) -> bool {
        self.terms
            .keys()
            .all(|k| k.rest.is_one() && k.pi_power % 2 == 0)
    }
}
