//! Gauss hypergeometric function ₂F₁(a, b; c; z) on the non-positive real axis.
//!
//! For −9 ≤ z ≤ 0 the Pfaff transformation maps the argument into [0, 0.9]
//! where the defining series converges. Further out the 1/z connection
//! formula is used, whose two inner series are again evaluated through Pfaff
//! with arguments in (0, 0.1). The connection formula is degenerate when
//! b − a is an integer; there the Pfaff series is summed directly, which
//! converges ever more slowly as z → −∞.

use crate::error::{Error, Result};

const PFAFF_LIMIT: f64 = -9.0;
const MAX_TERMS: usize = 100_000;
const TERM_EPS: f64 = 1e-15;

/// Defining series Σ (a)_k (b)_k / ((c)_k k!) w^k for 0 ≤ w < 1.
fn defining_series(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * w;
        if term == 0.0 {
            return Ok(sum + comp);
        }
        // Neumaier
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if !sum.is_finite() {
            return Err(Error::NonFinite("hypergeometric series"));
        }
        // Terms decay geometrically once k exceeds the parameter sizes, so a
        // small term past that point ends the sum.
        let past_peak = kf > a.abs() + b.abs() + c.abs();
        if past_peak && term.abs() < TERM_EPS * (sum + comp).abs() {
            return Ok(sum + comp);
        }
    }
    Err(Error::SeriesNotConverged {
        function: "2F1",
        argument: w,
        terms: MAX_TERMS,
    })
}

fn is_non_positive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) as (ln|Γ(x)|, sign); `None` at the poles.
fn log_gamma(x: f64) -> Option<(f64, f64)> {
    if is_non_positive_integer(x) {
        return None;
    }
    let (lg, sign) = libm::lgamma_r(x);
    Some((lg, sign as f64))
}

/// Γ(n1)Γ(n2)/(Γ(d1)Γ(d2)); zero when a denominator argument is a pole.
fn gamma_ratio(n1: f64, n2: f64, d1: f64, d2: f64) -> Result<f64> {
    let (Some(d1), Some(d2)) = (log_gamma(d1), log_gamma(d2)) else {
        return Ok(0.0);
    };
    let (Some(n1), Some(n2)) = (log_gamma(n1), log_gamma(n2)) else {
        return Err(Error::domain(
            "2F1 parameter",
            n1.min(n2),
            "gamma pole in connection formula",
        ));
    };
    Ok(n1.1 * n2.1 * d1.1 * d2.1 * (n1.0 + n2.0 - d1.0 - d2.0).exp())
}

fn integer_difference(a: f64, b: f64) -> bool {
    (b - a) == (b - a).round()
}

fn check_parameters(a: f64, b: f64, c: f64, z: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::NonFinite("2F1 arguments"));
    }
    if is_non_positive_integer(c) {
        return Err(Error::domain("c", c, "must not be a non-positive integer"));
    }
    if z > 0.0 {
        return Err(Error::domain("z", z, "only z <= 0 is supported"));
    }
    Ok(())
}

/// ₂F₁(a, b; c; z) for z ≤ 0.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_parameters(a, b, c, z)?;
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z >= PFAFF_LIMIT || integer_difference(a, b) {
        pfaff(a, b, c, z)
    } else {
        let (t1, t2) = connection_terms(a, b, c, z, 0)?;
        Ok(t1 + t2)
    }
}

fn pfaff(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = z / (z - 1.0);
    let s = defining_series(b, c - a, c, w)?;
    Ok((1.0 - z).powf(-b) * s)
}

/// The two connection-formula contributions to
/// (a)_k (b)_k / ((c)_k k!) · (−z)^k · ₂F₁(a+k, b+k; c+k; z).
///
/// Written so that no factor grows like |z|^k.
fn connection_terms(a: f64, b: f64, c: f64, z: f64, k: usize) -> Result<(f64, f64)> {
    if integer_difference(a, b) {
        return Err(Error::domain(
            "b - a",
            b - a,
            "integer parameter difference is not supported for large |z|",
        ));
    }
    let y = -z;
    let kf = k as f64;
    let poch_over_fact = |p: f64| -> f64 {
        let mut v = 1.0;
        for j in 0..k {
            v *= (p + j as f64) / (j as f64 + 1.0);
        }
        v
    };

    let a1 = gamma_ratio(c, b - a, b, c - a)?;
    let t1 = if a1 == 0.0 {
        0.0
    } else {
        let s1 = gauss_2f1_inner(a + kf, a - c + 1.0, a - b + 1.0, 1.0 / z)?;
        poch_over_fact(a) * a1 * y.powf(-a) * s1
    };
    let a2 = gamma_ratio(c, a - b, a, c - b)?;
    let t2 = if a2 == 0.0 {
        0.0
    } else {
        let s2 = gauss_2f1_inner(b + kf, b - c + 1.0, b - a + 1.0, 1.0 / z)?;
        poch_over_fact(b) * a2 * y.powf(-b) * s2
    };
    Ok((t1, t2))
}

fn gauss_2f1_inner(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_parameters(a, b, c, z)?;
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    pfaff(a, b, c, z)
}

/// Taylor coefficients of u ↦ ₂F₁(a, b; c; z0 + scale·u) about u = 0, orders
/// 0..=order.
///
/// Built from d/dz ₂F₁(a,b;c;z) = (ab/c)·₂F₁(a+1,b+1;c+1;z), so the k-th
/// coefficient is (a)_k(b)_k/((c)_k k!)·scale^k·₂F₁(a+k,b+k;c+k;z0).
pub fn gauss_2f1_taylor(
    a: f64,
    b: f64,
    c: f64,
    z0: f64,
    scale: f64,
    order: usize,
) -> Result<Vec<f64>> {
    check_parameters(a, b, c, z0)?;
    if !scale.is_finite() {
        return Err(Error::NonFinite("2F1 expansion scale"));
    }
    let mut out = Vec::with_capacity(order + 1);
    if z0 >= PFAFF_LIMIT || integer_difference(a, b) {
        let mut factor = 1.0;
        for k in 0..=order {
            let kf = k as f64;
            if k > 0 {
                factor *= (a + kf - 1.0) * (b + kf - 1.0) / ((c + kf - 1.0) * kf) * scale;
            }
            if factor == 0.0 {
                out.push(0.0);
                continue;
            }
            out.push(factor * gauss_2f1(a + kf, b + kf, c + kf, z0)?);
        }
    } else {
        // ρ = scale/(−z0) absorbs the (−z0)^−k of the connection formula.
        let rho = scale / -z0;
        let mut rho_k = 1.0;
        for k in 0..=order {
            if k > 0 {
                rho_k *= rho;
            }
            let (t1, t2) = connection_terms(a, b, c, z0, k)?;
            out.push((t1 + t2) * rho_k);
        }
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("2F1 Taylor coefficients"));
    }
    Ok(out)
}
