//! The determinant method: stalk Hilbert functions and weight sums, p-adic
//! divisibility of interpolation determinants, auxiliary polynomials with
//! verifiable certificates, and the real-valued bounds used in reports.

mod aux;
mod bounds;
mod padic;
mod reduction;
mod stalk;

pub use aux::{aux_polynomial, bezout_check, validate_certificate, AuxCertificate, AuxMode, AuxOptions};
pub use bounds::{chebyshev_check, chebyshev_first_failure, chebyshev_theta, walsh_degree_formula, ChebyshevReport};
pub use padic::{multiplicity_mod_p, verify_padic_divisibility, DeterminantInstance, PadicReport};
pub use reduction::{reduction_stats, ReductionStats};
pub use stalk::{stalk_hilbert, weight_partial_sum, StalkProfile};
