//! Numerical building blocks: quadrature, truncated power series, root bracketing.

pub mod quadrature;
pub mod roots;
pub mod taylor;
