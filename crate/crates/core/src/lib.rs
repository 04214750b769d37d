//! Exact calculus for flat ∂̄-superconnections on trivial graded bundles.
//!
//! Coefficients live in exact rings ([`scalar`]): polynomials on a polydisc
//! or the one-variable model of the projective line with `(1+|z|^2)^-m`
//! denominators, optionally extended by a dual unit. On top of these sit
//! Dolbeault forms ([`form`]), form-valued operators with Koszul signs
//! ([`operator`]), ∂̄-superconnections and their flatness ladder
//! ([`connection`]), gauge normalization ([`normal_form`]), the completion
//! ladder ([`ladder`]), Chern superconnections and Chern forms ([`chern`]),
//! and ∂̄∂-exactness witnesses ([`bott_chern`]).
//!
//! Instances are read and written as JSON by [`io`]; [`cli`] runs the
//! commands behind the `superconn` binary.

pub mod bott_chern;
pub mod bundle;
pub mod check;
pub mod cli;
pub mod chern;
pub mod cohomology;
pub mod connection;
pub mod error;
pub mod fixtures;
pub mod form;
pub mod io;
pub mod ladder;
pub mod linalg;
pub mod metric;
pub mod normal_form;
pub mod operator;
pub mod random;
pub mod scalar;

pub use bott_chern::{exactness_witness, ExactnessKind};
pub use bundle::{GradedBundle, Section};
pub use chern::{chern_form, chern_number, ChernData};
pub use cohomology::{h0_hom, HomCohomology};
pub use connection::{gauge, hom_sc, DbarSuperconnection, GaugeParameter, TwistCochain};
pub use error::{Error, Result};
pub use form::{Dolbeault, Form, FormBasis};
pub use io::{Instance, Params};
pub use ladder::complete_to_flat;
pub use metric::HermitianMetric;
pub use normal_form::{normalize, NormalizationCertificate};
pub use operator::SuperOperator;
pub use scalar::{GaussianRational, PiRational, RingKind, RingSpec, Scalar, Wirtinger};
