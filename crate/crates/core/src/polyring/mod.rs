//! Exact multivariate polynomials over the rationals.

mod matrix;
pub(crate) mod matrix_support {
    pub(crate) use super::matrix::combinations;
}
mod monomial;
mod order;
mod polynomial;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use polynomial::{poly_arith, ArithOp, Polynomial};

use crate::{Error, Result};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;

/// The ambient ring `k[x_0, ..., x_m]`, characteristic zero.
///
/// Declaration order of the variables is the tiebreak order of every
/// monomial comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    variables: Vec<String>,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidRing(
                "a ring needs at least one variable".into(),
            ));
        }
        let mut variables: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if variables.iter().any(|v| v == name) {
                return Err(Error::InvalidRing(format!("duplicate variable '{name}'")));
            }
            variables.push(name.to_string());
        }
        Ok(Self { variables })
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn var_name(&self, index: usize) -> &str {
        &self.variables[index]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// The `index`-th variable as a polynomial.
    pub fn var(&self, index: usize) -> Polynomial {
        Polynomial::var(self.nvars(), index)
    }

    /// Canonical text form of `f`, terms in descending `order`.
    pub fn format(&self, f: &Polynomial, order: MonomialOrder) -> String {
        f.to_text(self, order)
    }
}
