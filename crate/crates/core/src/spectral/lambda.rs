//! The decimation relation λ_m = λ_{m+1}(5 − λ_{m+1}) and the renormalized limit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Results this close to 2 or 5 cannot be extension targets.
pub const FORBIDDEN_TOL: f64 = 1e-12;

pub fn is_forbidden(lambda: f64) -> bool {
    (lambda - 2.0).abs() <= FORBIDDEN_TOL || (lambda - 5.0).abs() <= FORBIDDEN_TOL
}

/// λ_{m+1} = (5 + ε√(25 − 4λ_m))/2.
pub fn lambda_next(lambda: f64, eps: i8) -> Result<f64> {
    if !lambda.is_finite() || lambda > 6.25 {
        return Err(Error::EigenvalueOutOfRange { value: lambda });
    }
    let s = (25.0 - 4.0 * lambda).max(0.0).sqrt();
    let next = if eps > 0 {
        (5.0 + s) / 2.0
    } else {
        // Same root without cancellation for small λ.
        2.0 * lambda / (5.0 + s)
    };
    if is_forbidden(next) {
        return Err(Error::ForbiddenEigenvalue { value: next });
    }
    Ok(next)
}

/// λ_{m₀}, λ_{m₀+1}, … with the branch at level k being +1 iff k is in `plus_set`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSequence {
    start_level: usize,
    values: Vec<f64>,
    plus_set: BTreeSet<usize>,
    zero: bool,
}

impl LambdaSequence {
    pub fn new(start_level: usize, birth: f64, plus_set: BTreeSet<usize>, up_to: usize) -> Result<Self> {
        let mut s = LambdaSequence { start_level, values: vec![birth], plus_set, zero: false };
        s.extend_to(up_to)?;
        Ok(s)
    }

    /// λ ≡ 0 at every level; the eigen recursions then reduce to the harmonic ones.
    pub fn zero() -> Self {
        LambdaSequence { start_level: 0, values: vec![0.0], plus_set: BTreeSet::new(), zero: true }
    }

    pub fn start_level(&self) -> usize {
        self.start_level
    }

    pub fn last_level(&self) -> usize {
        self.start_level + self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn extend_to(&mut self, level: usize) -> Result<()> {
        if self.zero {
            return Ok(());
        }
        while self.last_level() < level {
            let k = self.last_level() + 1;
            let eps = if self.plus_set.contains(&k) { 1 } else { -1 };
            let next = lambda_next(*self.values.last().unwrap(), eps)?;
            self.values.push(next);
        }
        Ok(())
    }

    /// λ_level, computed on demand past the stored range.
    pub fn at(&self, level: usize) -> Result<f64> {
        if self.zero {
            return Ok(0.0);
        }
        if level < self.start_level {
            return Err(Error::NotApplicable(format!(
                "level {level} precedes the level of birth {}",
                self.start_level
            )));
        }
        if level <= self.last_level() {
            return Ok(self.values[level - self.start_level]);
        }
        let mut tail = self.clone();
        tail.extend_to(level)?;
        Ok(tail.values[level - self.start_level])
    }

    /// Level after which every branch is −1.
    pub fn fixation_level(&self) -> usize {
        self.plus_set.iter().next_back().map_or(self.start_level + 1, |m| m + 1)
    }

    /// (3/2)·5^M·λ_M at the last stored level M.
    pub fn limit_estimate(&self) -> f64 {
        let m = self.last_level();
        1.5 * 5f64.powi(m as i32) * self.values[m - self.start_level]
    }

    /// Bound on |λ − limit_estimate()| from the geometric tail of 5^k λ_k.
    /// Infinite when the stored range has not reached the contracting regime.
    pub fn limit_error_bound(&self) -> f64 {
        let m = self.last_level();
        if self.zero {
            return 0.0;
        }
        if m < self.fixation_level() {
            return f64::INFINITY;
        }
        let next = match self.at(m + 1) {
            Ok(v) => v,
            Err(_) => return f64::INFINITY,
        };
        if next >= 5.0 - 5f64.sqrt() {
            return f64::INFINITY;
        }
        let rho = 1.0 / (5.0 - next);
        1.5 * 5f64.powi(m as i32) * next * next / (1.0 - 5.0 * rho * rho)
    }

    /// max over consecutive entries of |λ_m − λ_{m+1}(5 − λ_{m+1})| / |λ_m|.
    pub fn decimation_residual(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| (w[0] - w[1] * (5.0 - w[1])).abs() / w[0].abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps() {
        assert!((lambda_next(2.0, -1).unwrap() - (5.0 - 17f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(lambda_next(6.0, 1).unwrap(), 3.0);
        assert!(matches!(lambda_next(6.0, -1), Err(Error::ForbiddenEigenvalue { .. })));
        assert!(matches!(lambda_next(6.5, -1), Err(Error::EigenvalueOutOfRange { .. })));
    }

    #[test]
    fn five_series_chain() {
        let s = LambdaSequence::new(1, 5.0, [2].into_iter().collect(), 4).unwrap();
        let v = s.values();
        assert!((v[1] - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((v[1] - 3.618).abs() < 1e-3);
        let t = LambdaSequence::new(1, 5.0, BTreeSet::new(), 3).unwrap();
        let w = t.values();
        assert!((w[1] - 1.382).abs() < 1e-3);
        assert!((w[2] - 0.294).abs() < 1e-3);
        assert!((v[2] - 0.878).abs() < 1e-3);
    }

    #[test]
    fn limit_converges() {
        let a = LambdaSequence::new(1, 2.0, BTreeSet::new(), 25).unwrap();
        let b = LambdaSequence::new(1, 2.0, BTreeSet::new(), 30).unwrap();
        let (la, lb) = (a.limit_estimate(), b.limit_estimate());
        assert!((la - lb).abs() <= 1e-9 * lb);
        assert!((la - lb).abs() <= a.limit_error_bound());
        assert!(b.limit_error_bound() <= a.limit_error_bound());
    }

    #[test]
    fn relation_holds() {
        let s = LambdaSequence::new(2, 6.0, [3, 5].into_iter().collect(), 30).unwrap();
        assert!(s.decimation_residual() <= 1e-12);
        assert_eq!(s.fixation_level(), 6);
    }
}
