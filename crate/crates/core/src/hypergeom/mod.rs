//! q-hypergeometric sums.
//!
//! A [`SumSpec`] describes a summand over one or more nonnegative indices;
//! evaluation enumerates exactly the terms that can reach below the requested
//! order. [`PhiSpec`] lowers the classical `ᵣφₛ` notation onto it.

mod checks;
mod index;
mod phi;
mod sum;

pub use checks::{
    a_generalization_product, a_generalization_sides, a_generalization_sum,
    bivariate_check_a_generalization, float_1f0_check, float_1f0_partial, max_a_degree,
    s_m_closed_form_check, s_m_eval, s_m_ratio_check, s_m_recurrence_check, s_m_spec,
    specialize_a,
};
pub use index::IndexPoly;
pub use phi::{phi_eval, PhiSpec};
pub use sum::{sum_eval, SumConfig, SumPoch, SumSpec};
