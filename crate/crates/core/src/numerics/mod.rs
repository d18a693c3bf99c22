//! Special functions, quadrature and truncated power series.

pub mod gamma;
pub mod hypergeometric;
pub mod quadrature;
pub mod series;

pub use gamma::upper_incomplete_gamma_reg;
pub use hypergeometric::{gauss_2f1, gauss_2f1_taylor};
pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_semi_infinite_with_breakpoints,
    integrate_with_breakpoints, QuadratureSpec,
};
pub use series::TruncatedSeries;
