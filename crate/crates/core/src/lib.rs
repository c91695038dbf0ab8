//! Eisenstein polynomials of the genus-one group H₁, their Duursma zeta
//! polynomials, and exact checks of root location, interlacing and
//! p-integrality.
//!
//! Everything is computed over ℚ or ℚ(i) with arbitrary-precision
//! integers. The only floating-point code is the double-double root finder
//! in [`zeta::rha_check_numeric`].

pub mod enumerator;
pub mod error;
pub mod exact;
pub mod group;
pub mod poly;
pub mod theta;
pub mod zeta;

pub use enumerator::{
    eisenstein_closed_form, load_enumerator, normalize, normalized_eisenstein,
    normalized_weight_enumerator, store_enumerator, FormalWeightEnumerator, Normalized,
};
pub use error::{Error, Result};
pub use exact::{GaussianRational, Rational, Valuation};
pub use group::{closure, h1, h1_generators, reynolds_power, MatrixGroup, UnitaryMatrix2};
pub use poly::{HomogBivariate, TruncatedSeries, UniPoly};
pub use theta::{th_map, theta_constant, QSeries};
pub use zeta::{
    zeta_closed_form, zeta_expanded_form, zeta_via_linear_system, zeta_via_series, ZetaMethod,
    ZetaPolynomial,
};
