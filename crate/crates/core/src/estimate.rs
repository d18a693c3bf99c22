use serde::Serialize;

/// z-score of the two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

/// A point value with an uncertainty.
///
/// For quadrature results `half_width` is the reported error bound and `n`
/// the number of integrand evaluations. For Monte Carlo results it is the
/// 95% confidence half-width and `n` the sample count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub half_width: f64,
    pub n: u64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate {
            value,
            half_width: 0.0,
            n: 0,
        }
    }

    pub fn quadrature(value: f64, error_bound: f64, evaluations: u64) -> Self {
        Estimate {
            value,
            half_width: error_bound,
            n: evaluations,
        }
    }

    /// Proportion `successes / n` with the normal-approximation interval.
    pub fn proportion(successes: u64, n: u64) -> Self {
        if n == 0 {
            return Estimate {
                value: 0.0,
                half_width: 0.0,
                n,
            };
        }
        let p = successes as f64 / n as f64;
        Estimate {
            value: p,
            half_width: Z95 * (p * (1.0 - p) / n as f64).sqrt(),
            n,
        }
    }

    /// Sample mean with half-width 1.96·s/√n.
    pub fn mean<I: IntoIterator<Item = f64>>(samples: I) -> Self {
        // Welford
        let mut n = 0u64;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for x in samples {
            n += 1;
            let delta = x - mean;
            mean += delta / n as f64;
            m2 += delta * (x - mean);
        }
        if n < 2 {
            return Estimate {
                value: mean,
                half_width: 0.0,
                n,
            };
        }
        let var = m2 / (n - 1) as f64;
        Estimate {
            value: mean,
            half_width: Z95 * (var / n as f64).sqrt(),
            n,
        }
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (self.value - x).abs() <= self.half_width + slack
    }
}
