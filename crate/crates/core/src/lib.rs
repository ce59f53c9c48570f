//! Ree-Tits unitals of order q = 3^(2l+1).
//!
//! Two independent models of the smallest such unital are built here:
//!
//! * [`unital_s`]: points are the Sylow 3-subgroups of SL(2,8) (as cyclic
//!   groups of order 9), blocks are the 63 involutions, incidence is
//!   normalization.
//! * [`rt`]: points are the root group Ξ of the Ree group plus a point at
//!   infinity, blocks are fixed-point sets of involutions. This model works
//!   for every q; designs are fully materialized for q = 3 and q = 27.
//!
//! [`design`] holds the model-agnostic machinery (2-design checks, dual-Kₙ
//! search, isomorphism search) and [`format`] the incidence file formats.

pub mod design;
pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod perm;
pub mod ree;
pub mod report;
pub mod rt;
pub mod unital_s;

pub use design::{Configuration, DegreePattern, DesignParams, IncidenceStructure, PointBijection};
pub use error::{DesignError, FieldError, FormatError, GroupError, ReeError};
pub use field::{F3n, Gf3n, F8};
pub use matrix::{Mat2, SemiLinear, Sl28, SylowPoint};
pub use ree::{InvolutionParam, ReePoint, RootGroup, Xi};
pub use rt::RtUnital;
pub use unital_s::UnitalS;
