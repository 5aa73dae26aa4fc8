//! Moment-curve packings of triangle-free partial linear spaces over finite
//! fields, exhaustive verification of their incidence properties, and the
//! resulting upper bounds on the minimum degree of Ramsey-minimal graphs.
//!
//! - [`gf`]: GF(q) arithmetic and the prime search.
//! - [`geometry`]: points and canonical lines of F_q^3.
//! - [`construction`]: the line classes `L_lambda` and families of them.
//! - [`verifier`]: witness-producing checks on generic incidence structures.
//! - [`bounds`]: the bound formulas and exponent analysis.
//! - [`format`]: geometry JSON and plain incidence text.

pub mod bounds;
pub mod construction;
pub mod format;
pub mod geometry;
pub mod gf;
pub mod par;
pub mod verifier;

pub use construction::{build_class, build_family, GeometryFamily, LineClass};
pub use geometry::{canonical_line, Line, OrderParams, Point, SlopeVector};
pub use gf::{make_field, Fe, Field, FieldSpec};
pub use par::Exec;
pub use verifier::{CheckOptions, GenericIncidence, Report, Witness, WitnessKind};
