//! Truncated power series: Taylor coefficients c_0..c_K of a function about
//! an expansion point, with c_k = f^(k)/k!. Every operation keeps K fixed.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coefficients: Vec<f64>,
}

impl TruncatedSeries {
    /// Lifts a coefficient list c_0..c_K into a series of order K.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::domain(
                "order",
                -1.0,
                "series needs at least one coefficient",
            ));
        }
        Ok(TruncatedSeries { coefficients })
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut coefficients = vec![0.0; order + 1];
        coefficients[0] = value;
        TruncatedSeries { coefficients }
    }

    /// The independent variable s expanded about s0: s0 + u.
    pub fn variable(s0: f64, order: usize) -> Self {
        let mut s = Self::constant(s0, order);
        if order > 0 {
            s.coefficients[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn value(&self) -> f64 {
        self.coefficients[0]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries { coefficients })
    }

    /// Cauchy product truncated at order K.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coefficients.len();
        let a = &self.coefficients;
        let b = &other.coefficients;
        let coefficients = (0..n)
            .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
            .collect();
        Ok(TruncatedSeries { coefficients })
    }

    pub fn scale(&self, factor: f64) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    /// exp of the series by d_0 = e^{c_0}, d_k = (1/k) Σ_{j=1..k} j c_j d_{k−j}.
    pub fn exp(&self) -> Self {
        let c = &self.coefficients;
        let n = c.len();
        let mut d = vec![0.0; n];
        d[0] = c[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * c[j] * d[k - j]).sum();
            d[k] = s / k as f64;
        }
        TruncatedSeries { coefficients: d }
    }

    /// q-th derivative at the expansion point, q!·c_q.
    pub fn derivative(&self, q: usize) -> Result<f64> {
        let c = self.coefficients.get(q).ok_or(Error::OrderMismatch {
            left: q,
            right: self.order(),
        })?;
        let fact: f64 = (1..=q).map(|j| j as f64).product();
        Ok(c * fact)
    }

    /// Σ_{k=0}^{n-1} w^k c_k with Neumaier compensation; `n` is capped at K+1.
    pub fn weighted_partial_sum(&self, n: usize, w: f64) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut wk = 1.0;
        for c in self.coefficients.iter().take(n) {
            let term = c * wk;
            let t = sum + term;
            if f64::abs(sum) >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            wk *= w;
        }
        sum + comp
    }

    /// Evaluates the truncated polynomial at offset u from the expansion point.
    pub fn evaluate(&self, u: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_identity() {
        let s = TruncatedSeries::variable(0.0, 3).exp();
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0];
        for (a, b) in s.coefficients().iter().zip(want) {
            assert!((a - b).abs() < 1e-16);
        }
    }

    #[test]
    fn product_of_conjugates() {
        let a = TruncatedSeries::new(vec![1.0, 1.0]).unwrap();
        let b = TruncatedSeries::new(vec![1.0, -1.0]).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap().coefficients(), &[1.0, 0.0]);
    }

    #[test]
    fn third_derivative_of_decaying_exponential() {
        let s = TruncatedSeries::variable(0.0, 5).scale(-2.0).exp();
        assert!((s.derivative(3).unwrap() + 8.0).abs() < 1e-13);
    }

    #[test]
    fn order_mismatch() {
        let a = TruncatedSeries::constant(1.0, 2);
        let b = TruncatedSeries::constant(1.0, 3);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::OrderMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
        assert!(TruncatedSeries::new(vec![]).is_err());
    }

    #[test]
    fn alternating_sum() {
        let s = TruncatedSeries::new(vec![1.0, 0.5, 0.25]).unwrap();
        assert_eq!(s.weighted_partial_sum(3, -1.0), 0.75);
        assert_eq!(s.weighted_partial_sum(10, -1.0), 0.75);
        assert_eq!(s.evaluate(2.0), 1.0 + 1.0 + 1.0);
    }
}
