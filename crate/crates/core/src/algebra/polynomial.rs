use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, rational, Rational};
use crate::{Error, Result};

/// A formal constant. Ordered by kind, then parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Euler's constant γ.
    Gamma,
    /// log 2.
    Log2,
    /// ζ(k) with k ≥ 2.
    Zeta(u32),
}

impl Generator {
    pub fn zeta(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("ζ({k}) is not a generator")));
        }
        Ok(Generator::Zeta(k))
    }

    /// Weight used for display ordering: 1 for γ and log 2, k for ζ(k).
    pub fn weight(&self) -> u32 {
        match self {
            Generator::Gamma | Generator::Log2 => 1,
            Generator::Zeta(k) => *k,
        }
    }

    /// ASCII name used in the JSON encoding.
    pub fn name(&self) -> String {
        match self {
            Generator::Gamma => "gamma".to_string(),
            Generator::Log2 => "log2".to_string(),
            Generator::Zeta(k) => format!("zeta({k})"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Gamma => write!(f, "γ"),
            Generator::Log2 => write!(f, "log(2)"),
            Generator::Zeta(k) => write!(f, "ζ({k})"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gamma" => Ok(Generator::Gamma),
            "log2" => Ok(Generator::Log2),
            other => {
                let k = other
                    .strip_prefix("zeta(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown generator {other:?}")))?;
                Generator::zeta(k).map_err(|_| Error::Parse(format!("bad zeta argument {k}")))
            }
        }
    }
}

/// A product of generators, stored as a sorted multiset. The empty product
/// is the constant monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Self {
        let mut v: Vec<_> = gens.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator factors, counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Generator::weight).sum()
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    /// Merge of two sorted multisets.
    pub fn product(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Generators with their multiplicities, in canonical order.
    pub fn powers(&self) -> Vec<(Generator, u32)> {
        let mut out: Vec<(Generator, u32)> = Vec::new();
        for g in &self.0 {
            match out.last_mut() {
                Some((h, e)) if h == g => *e += 1,
                _ => out.push((*g, 1)),
            }
        }
        out
    }

    /// Order used when printing: heavier first, then higher powers of γ,
    /// then fewer factors, then canonical order.
    pub(crate) fn display_cmp(&self, other: &Monomial) -> Ordering {
        let gammas = |m: &Monomial| m.0.iter().filter(|g| **g == Generator::Gamma).count();
        other
            .weight()
            .cmp(&self.weight())
            .then(gammas(other).cmp(&gammas(self)))
            .then(self.degree().cmp(&other.degree()))
            .then(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (g, e) in self.powers() {
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact linear combination of [`Monomial`]s with rational coefficients.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolynomialJson", try_from = "PolynomialJson")]
pub struct ZetaPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl ZetaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(Rational::one(), Monomial::from_generators([g]))
    }

    pub fn gamma() -> Self {
        Self::generator(Generator::Gamma)
    }

    pub fn log2() -> Self {
        Self::generator(Generator::Log2)
    }

    /// ζ(k) as a polynomial. `ζ(0)` is the constant `-1/2`.
    ///
    /// # Panics
    ///
    /// At the pole `k = 1`.
    pub fn zeta(k: u32) -> Self {
        match k {
            0 => Self::constant(rational(-1, 2)),
            1 => panic!("ζ(1) diverges"),
            k => Self::generator(Generator::Zeta(k)),
        }
    }

    /// Adds `c·m` in place, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (sorted monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.terms.keys().any(|m| m.contains(g))
    }

    /// Largest number of generator factors in any term; 0 for constants.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZetaPolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes each generator by a polynomial.
    pub fn substitute(&self, f: impl Fn(Generator) -> ZetaPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for g in m.generators() {
                prod = &prod * &f(*g);
            }
            out += prod;
        }
        out
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms sorted for printing.
    pub(crate) fn display_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }
}

/// Writes `±c·body` the way the tables do: unit coefficients are implicit,
/// fractions are reduced `p/q`, terms are joined without spaces.
pub(crate) fn write_signed_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a Rational, String)>,
) -> fmt::Result {
    let mut terms: Vec<_> = terms.into_iter().collect();
    // A binomial with a negative leading term reads better as `a - b`.
    if terms.len() == 2 && terms[0].0.is_negative() && terms[1].0.is_positive() {
        terms.swap(0, 1);
    }
    let mut first = true;
    for (c, body) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        if body.is_empty() {
            write!(f, "{}", format_rational(&mag))?;
        } else if mag.is_one() {
            write!(f, "{body}")?;
        } else {
            write!(f, "{}{body}", format_rational(&mag))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms().into_iter().map(|(m, c)| {
            let body = if m.is_one() {
                String::new()
            } else {
                m.to_string()
            };
            (c, body)
        });
        write_signed_terms(f, terms)
    }
}

impl From<Rational> for ZetaPolynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<Generator> for ZetaPolynomial {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

impl<'a> Add<&'a ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn add(self, rhs: &'a ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn add(mut self, rhs: ZetaPolynomial) -> ZetaPolynomial {
        self += rhs;
        self
    }
}

impl AddAssign<&ZetaPolynomial> for ZetaPolynomial {
    fn add_assign(&mut self, rhs: &ZetaPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for ZetaPolynomial {
    fn add_assign(&mut self, rhs: ZetaPolynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn sub(self, rhs: &'a ZetaPolynomial) -> ZetaPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn sub(mut self, rhs: ZetaPolynomial) -> ZetaPolynomial {
        self -= &rhs;
        self
    }
}

impl SubAssign<&ZetaPolynomial> for ZetaPolynomial {
    fn sub_assign(&mut self, rhs: &ZetaPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for ZetaPolynomial {
    fn sub_assign(&mut self, rhs: ZetaPolynomial) {
        *self -= &rhs;
    }
}

impl Neg for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn neg(mut self) -> ZetaPolynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn neg(self) -> ZetaPolynomial {
        -self.clone()
    }
}

impl<'a> Mul<&'a ZetaPolynomial> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: &'a ZetaPolynomial) -> ZetaPolynomial {
        let mut out = ZetaPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.product(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: ZetaPolynomial) -> ZetaPolynomial {
        &self * &rhs
    }
}

impl Mul<&Rational> for &ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: &Rational) -> ZetaPolynomial {
        self.scale(rhs)
    }
}

impl Mul<Rational> for ZetaPolynomial {
    type Output = ZetaPolynomial;
    fn mul(self, rhs: Rational) -> ZetaPolynomial {
        self.scale(&rhs)
    }
}

impl std::iter::Sum for ZetaPolynomial {
    fn sum<I: Iterator<Item = ZetaPolynomial>>(iter: I) -> Self {
        iter.fold(ZetaPolynomial::zero(), |acc, p| acc + p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    generators: Vec<String>,
}

impl From<ZetaPolynomial> for PolynomialJson {
    fn from(p: ZetaPolynomial) -> Self {
        PolynomialJson {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    coeff: format!("{}/{}", c.numer(), c.denom()),
                    generators: m.generators().iter().map(Generator::name).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialJson> for ZetaPolynomial {
    type Error = Error;

    fn try_from(j: PolynomialJson) -> Result<Self> {
        let mut p = ZetaPolynomial::zero();
        for t in j.terms {
            let c = parse_rational(&t.coeff)?;
            let gens = t
                .generators
                .iter()
                .map(|s| s.parse::<Generator>())
                .collect::<Result<Vec<_>>>()?;
            p.add_term(Monomial::from_generators(gens), c);
        }
        Ok(p)
    }
}

impl ZetaPolynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial JSON encoding is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
