//! Coefficients of the uniform expansion of the parabolic cylinder function `U(a, x)`.

mod cache;
mod maclaurin;
mod xi_eta;

pub use cache::{
    s_ode_residual, s_plus_series, sqrt_s_ode_residual, sqrt_s_series, t_of_bu, xi_of_bu, PcfProvider,
    PcfSeriesCache,
};
pub use maclaurin::{
    basis_order, eta_of_w_series, maclaurin_of_coeff, maclaurin_with, radius_estimate, radius_of_coeffs, xi_eta_series, EtaMaclaurin, RadiusEstimate, XiPowers,
    DEFAULT_TERMS, MIN_RADIUS_TERMS,
};
pub use xi_eta::{pullback, to_xi_eta, XiEtaForm, MAX_DEGREE};

use alloc::vec;

use crate::bleistein::{alpha_beta, CoeffTable};
use crate::error::ExpansionError;
use crate::ring::{RatFunc, Var};

/// `(α_n, β_n)` for `n = 0..=N` in `(b, u)`, straight from the recursion.
pub fn pcf_coeff_table_bu(order: usize) -> Result<CoeffTable<RatFunc>, ExpansionError> {
    let prov = PcfProvider::with_depth(2 * order)?;
    alpha_beta(&prov, order, vec![Var::B, Var::U])
}

/// `(α_n, β_n)` for `n = 0..=N` as rational functions of `(eta, xi)`.
pub fn pcf_coeff_table(order: usize) -> Result<CoeffTable<RatFunc>, ExpansionError> {
    pcf_coeff_table_bu(order)?.try_map(vec![Var::ETA, Var::XI], |c| to_xi_eta(c).map(|f| f.value))
}
