//! Big-float validation of the expansion of `U(-mu^2/2, mu t sqrt2)`.

mod airy;
mod big;
mod expansion;
mod mapping;

pub use airy::{airy_all, airy_origin, airy_pair, gamma_one_third, AiryValues, MAX_AIRY_ARG};
pub use big::{abs_f64, eval_poly, from_rational, to_f64, Ctx, DEFAULT_PRECISION, MIN_PRECISION, RM};
pub use expansion::{
    compare, eval_expansion, eval_ratfunc, eval_series, reference_u, series_terms, xi_at, CoeffEvaluator,
    ExpansionEvaluation, MAX_HALVINGS, SERIES_ETA,
};
pub use mapping::{eta_direct, map_point, MappingPoint, SERIES_THETA};

pub use astro_float::BigFloat;
