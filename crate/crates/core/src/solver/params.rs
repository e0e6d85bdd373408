use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm used for the relative successive-difference stopping test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StoppingNorm {
    #[default]
    Euclidean,
    One,
    Max,
}

impl StoppingNorm {
    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            StoppingNorm::Euclidean => v.iter().map(|a| a * a).sum::<f64>().sqrt(),
            StoppingNorm::One => v.iter().map(|a| a.abs()).sum(),
            StoppingNorm::Max => v.iter().fold(0.0, |m, a| m.max(a.abs())),
        }
    }

    /// `||a - b|| / ||a||`.
    pub fn relative_change(self, current: &[f64], previous: &[f64]) -> f64 {
        let diff: Vec<f64> = current.iter().zip(previous).map(|(a, b)| a - b).collect();
        self.norm(&diff) / self.norm(current)
    }
}

impl std::str::FromStr for StoppingNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "2" | "two" => Ok(StoppingNorm::Euclidean),
            "one" | "1" => Ok(StoppingNorm::One),
            "max" | "inf" => Ok(StoppingNorm::Max),
            other => Err(Error::validation(format!(
                "unknown stopping norm '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Node exponent.
    pub alpha: f64,
    /// Layer exponent.
    pub beta: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub stopping_norm: StoppingNorm,
    /// Skip the `2/beta < alpha - 1` gate. Uniqueness is then not guaranteed.
    pub unsafe_params: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            alpha: 2.1,
            beta: 2.0,
            tol: 1e-6,
            max_iter: 1000,
            stopping_norm: StoppingNorm::Euclidean,
            unsafe_params: false,
        }
    }
}

impl SolverParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        SolverParams {
            alpha,
            beta,
            ..Default::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_norm(mut self, norm: StoppingNorm) -> Self {
        self.stopping_norm = norm;
        self
    }

    pub fn allow_unsafe(mut self) -> Self {
        self.unsafe_params = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_exponents(self.alpha, self.beta)?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::validation(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::validation("max_iter must be positive"));
        }
        if !self.unsafe_params && !uniqueness_holds(self.alpha, self.beta) {
            return Err(Error::ParameterDomain(format!(
                "alpha = {}, beta = {} violate 2/beta < alpha - 1; the fixed point may not be unique \
                 (set unsafe_params to run anyway)",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_exponents(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0) {
        return Err(Error::validation(format!(
            "exponents must be positive and finite, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(())
}

/// `2/beta < alpha - 1`.
pub fn uniqueness_holds(alpha: f64, beta: f64) -> bool {
    2.0 / beta < alpha - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = SolverParams::default();
        assert_eq!((p.alpha, p.beta, p.tol, p.max_iter), (2.1, 2.0, 1e-6, 1000));
        assert_eq!(p.stopping_norm, StoppingNorm::Euclidean);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn gate() {
        assert!(matches!(
            SolverParams::new(2.0, 2.0).validate(),
            Err(Error::ParameterDomain(_))
        ));
        assert!(matches!(
            SolverParams::new(1.0, 1.0).validate(),
            Err(Error::ParameterDomain(_))
        ));
        assert!(SolverParams::new(1.0, 1.0)
            .allow_unsafe()
            .validate()
            .is_ok());
        assert!(SolverParams::new(-1.0, 1.0)
            .allow_unsafe()
            .validate()
            .is_err());
        assert!(SolverParams::new(3.0, 2.0)
            .with_tol(0.0)
            .validate()
            .is_err());
    }

    #[test]
    fn norms() {
        let v = [3.0, -4.0];
        assert_eq!(StoppingNorm::Euclidean.norm(&v), 5.0);
        assert_eq!(StoppingNorm::One.norm(&v), 7.0);
        assert_eq!(StoppingNorm::Max.norm(&v), 4.0);
        assert_eq!("MAX".parse::<StoppingNorm>().unwrap(), StoppingNorm::Max);
        assert!("taxicab".parse::<StoppingNorm>().is_err());
    }
}
