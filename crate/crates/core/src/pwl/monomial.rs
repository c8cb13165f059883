use super::PwlFunction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One linear term `slope * x + constant`; a `None` constant stands for `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial<T> {
    pub slope: T,
    pub constant: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialMode {
    Min,
    Max,
}

/// A list of linear terms combined by `min` (tropical polynomial) or `max`.
/// Infinite terms are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialForm<T> {
    terms: Vec<(T, T)>,
}

impl<T: Scalar> MonomialForm<T> {
    pub fn new(terms: impl IntoIterator<Item = Monomial<T>>) -> Result<Self> {
        let terms: Vec<(T, T)> = terms
            .into_iter()
            .filter_map(|m| m.constant.map(|c| (m.slope, c)))
            .collect();
        if terms.is_empty() {
            return Err(Error::NoFiniteTerm);
        }
        Ok(MonomialForm { terms })
    }

    /// Finite terms as `(slope, constant)` pairs.
    pub fn terms(&self) -> &[(T, T)] {
        &self.terms
    }

    pub fn to_pwl(&self, mode: MonomialMode) -> PwlFunction<T> {
        let mut it = self.terms.iter().map(|(s, c)| PwlFunction::linear(s.clone(), c.clone()));
        let first = it.next().expect("nonempty by construction");
        it.fold(first, |acc, f| match mode {
            MonomialMode::Min => acc.tropical_min(&f),
            MonomialMode::Max => acc.tropical_max(&f),
        })
    }
}

impl<T: Scalar> PwlFunction<T> {
    /// Shorthand for `MonomialForm::new(terms)?.to_pwl(mode)`.
    pub fn from_monomials(terms: impl IntoIterator<Item = Monomial<T>>, mode: MonomialMode) -> Result<Self> {
        Ok(MonomialForm::new(terms)?.to_pwl(mode))
    }
}
