//! Exact computation with Hesse cubic curves and the quadratic algebras
//! attached to their geometric automorphism data.
//!
//! The crate is organized bottom-up:
//! * [`exactfield`]: arithmetic in towers of algebraic extensions of Q,
//!   plus exact linear algebra;
//! * [`expr`]: a small expression grammar for scalars and projective points;
//! * [`hesse`]: Hesse cubics, their group law, torsion, automorphisms and
//!   the fixed-point data the classification needs;
//! * [`tensor`]: cubic tensors, derivative slices, twists and witness maps;
//! * [`geomalg`]: from a curve automorphism pair to quadratic relations,
//!   regularity and isomorphism tests, and the classification itself;
//! * [`verify`]: the consolidated table verification report.

pub mod error;
pub mod exactfield;
pub mod expr;
pub mod forms;
pub mod geomalg;
pub mod hesse;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use exactfield::matrix::ExactMatrix;
pub use exactfield::{FieldElement, Rational, Tower};
pub use expr::{parse_point, parse_scalar, SymbolTable};
pub use geomalg::{
    classify, derivation_quotient_relations, exceptional_base_point, exceptional_potential,
    pairs_isomorphic, paut_membership, sklyanin_potential, translation_matrix,
    translation_scalar, verify_type_e_not_twist, Classification, ExponentFamily, IsoClass,
    PairDescriptor, RelationSpace, TypeTag,
};
pub use hesse::{AddBranch, AutoKind, CurveAuto, CurveSubset, HesseCurve, ProjPoint};
pub use tensor::{LinMap, Tensor2, Tensor3};
pub use verify::{
    lambda_five_thirds, lambda_one_plus_sqrt3, lambda_zero, preferred_kind, verify_tables, Check,
    Report, Status,
};
