//! Exact cumulants, moments and distribution functions for functionals of
//! the Kingman coalescent and for the standard Gumbel distribution.
//!
//! Every closed form is returned as a [`ZetaPolynomial`]: an exact linear
//! combination, with rational coefficients, of monomials in the formal
//! constants γ, log 2 and ζ(k). Numeric values are obtained separately via
//! [`eval_numeric`], and each closed form has an independent oracle
//! (recursion, brute-force series, enumeration, quadrature or simulation)
//! living next to it.
//!
//! Module map:
//!
//! * [`algebra`]: rationals, Bernoulli numbers, the ζ-polynomial algebra,
//!   π-forms and high-precision evaluation.
//! * [`recursion`]: the two-dimensional recursion `s(i,j) = s(i-1,j) - s(i,j-1)`
//!   and its two series instantiations.
//! * [`absorption`]: cumulants and moments of the absorption time `T`, and
//!   the hypoexponential law of `T_n`.
//! * [`tree_length`]: cumulants and moments of the total tree length `L_n`.
//! * [`gumbel`]: raw and central Gumbel moments by several routes.
//! * [`death_process`]: spectral decomposition of a pure death process.
//! * [`simulate`]: seeded Monte-Carlo sampling and Kolmogorov–Smirnov tests.
//! * [`verify`]: the invariant suites behind `kingman verify`.

pub mod absorption;
pub mod algebra;
pub mod death_process;
mod error;
pub mod gumbel;
pub mod quadrature;
pub mod recursion;
pub mod simulate;
pub mod tree_length;
pub mod verify;

pub use algebra::{
    bernoulli, eval_decimal, eval_f64, eval_numeric, to_pi_form, zeta_even_coefficient,
    zeta_numeric, Decimal, Generator, Monomial, PiForm, Rational, ZetaPolynomial,
};
pub use error::{Error, Result};
