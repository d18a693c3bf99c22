//! Regularized upper incomplete gamma function Q(m, x) = Γ(m, x)/Γ(m).

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;
/// Largest integer shape evaluated with the finite sum.
const FINITE_SUM_LIMIT: f64 = 1000.0;

/// Γ(m, x)/Γ(m) for m > 0, x ≥ 0.
///
/// Integer shapes use e^{−x} Σ_{k<m} x^k/k! with every term formed in log
/// space; other shapes use the power series for P when x < m + 1 and the
/// Lentz continued fraction for Q otherwise.
pub fn upper_incomplete_gamma_reg(m: f64, x: f64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::domain("m", m, "shape must be positive"));
    }
    if !(x >= 0.0) {
        return Err(Error::domain("x", x, "argument must be non-negative"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if m == m.round() && m <= FINITE_SUM_LIMIT {
        return Ok(finite_sum(m as usize, x));
    }
    if x < m + 1.0 {
        Ok((1.0 - lower_series(m, x)?).clamp(0.0, 1.0))
    } else {
        Ok(upper_fraction(m, x)?.clamp(0.0, 1.0))
    }
}

fn finite_sum(m: usize, x: f64) -> f64 {
    let lx = x.ln();
    let mut sum = 0.0;
    let mut log_fact = 0.0;
    for k in 0..m {
        if k > 0 {
            log_fact += (k as f64).ln();
        }
        sum += (k as f64 * lx - x - log_fact).exp();
    }
    sum.min(1.0)
}

/// ln of x^m e^{−x} / Γ(m).
fn log_prefactor(m: f64, x: f64) -> f64 {
    m * x.ln() - x - libm::lgamma(m)
}

/// Regularized lower gamma P(m, x) by its power series.
fn lower_series(m: f64, x: f64) -> Result<f64> {
    let mut ap = m;
    let mut del = 1.0 / m;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            return Ok(sum * log_prefactor(m, x).exp());
        }
    }
    Err(Error::SeriesNotConverged {
        function: "incomplete gamma series",
        argument: x,
        terms: MAX_ITER,
    })
}

/// Q(m, x) by the modified Lentz continued fraction.
fn upper_fraction(m: f64, x: f64) -> Result<f64> {
    let tiny = f64::MIN_POSITIVE / EPS;
    let mut b = x + 1.0 - m;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - m);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(log_prefactor(m, x).exp() * h);
        }
    }
    Err(Error::SeriesNotConverged {
        function: "incomplete gamma continued fraction",
        argument: x,
        terms: MAX_ITER,
    })
}
