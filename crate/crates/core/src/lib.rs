//! Initial ideals of generic homogeneous ideals.
//!
//! Two routes compute the generic initial ideal for given `(n, d_1, ..., d_s)`:
//! specializing the generic templates at random points ([`pipeline::gin_by_sampling`])
//! and a single Groebner basis over `k[t̄, x̄]` under an inverse block order
//! ([`pipeline::gin_parametric`]). The results are classified by
//! [`properties`] and compared against Hilbert-series predictions in [`series`].

pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod monomial_ideal;
pub mod order;
pub mod pipeline;
pub mod polynomial;
pub mod properties;
pub mod series;
pub mod survey;

pub use error::{Error, ParseError, Result};
pub use field::{Field, Gf32003, Rational, Zp};
pub use groebner::{reduced_groebner_basis, Budget, GroebnerBasis};
pub use monomial::Monomial;
pub use monomial_ideal::{MonomialIdeal, RationalForm, SeriesWindow};
pub use order::{binom_p_leq, BaseOrder, MonomialOrder};
pub use pipeline::{
    compute_gin, generic_templates, FieldKind, GenericInstance, GinRequest, GinResult, Route,
    UGeneric,
};
pub use polynomial::{BlockLeadingData, Point, Polynomial, Ring, Term};
pub use properties::{PropertyVerdict, Witness};
pub use survey::{SurveyCase, SurveyConfig, SurveyRow};
