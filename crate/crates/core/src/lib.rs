//! Involutory permutation polynomials over finite fields `F_q`, `q` odd and
//! `q = 1 (mod 3)`.
//!
//! For a generator `gamma` of `F_q^*` and `m = (q-1)/3`, six coefficient
//! families yield `2(q-1)` polynomials: `q-1` trinomials on
//! `x^(2m+1), x^(m+1), x` and `q-1` six-term polynomials on
//! `x^(3m-1), x^(2m+1), x^(2m-1), x^(m+1), x^(m-1), x`. Each induces an
//! involution of `F_q` fixing zero and one coset of the cubes pointwise,
//! with cycle type `1^((q+2)/3) 2^((q-1)/3)`.
//!
//! The crate builds these polynomials and checks every claim about them by
//! exhaustive evaluation, with Lagrange interpolation of the prescribed maps
//! as an independent oracle.
//!
//! ```
//! use invopoly::{build_field, verify_record, ConstructionRecord, Family, GeneratorCtx};
//!
//! let gctx = GeneratorCtx::canonical(build_field(7, 1)?)?;
//! let rec = ConstructionRecord::build(&gctx, Family::T1, 0)?;
//! assert_eq!(rec.poly.display(gctx.field()), "2x^5 + 3x^3 + 3x");
//! assert!(verify_record(&rec, &gctx).passed);
//! # Ok::<(), invopoly::Error>(())
//! ```

pub mod cli;
mod error;
pub mod families;
pub mod gf;
pub mod interpolate;
pub mod permlab;
pub mod poly;
pub mod surveyor;

pub use error::{Error, Result};
pub use families::{
    all_records, build_poly, expected_map, sixterm_coeffs, trinomial_coeffs, CoeffSet,
    ConstructionRecord, Family, Pairing, RecordDoc,
};
pub use gf::{build_field, build_field_of_order, Elem, ElemRepr, FieldCtx, GeneratorCtx};
pub use interpolate::{canonical_equal, lagrange, to_sparse, DensePoly};
pub use permlab::{
    cycle_type, eval_all, eval_poly, fixed_points, is_involution, is_permutation, verify_record,
    Check, CycleType, PermMap, Verdict,
};
pub use poly::SparsePoly;
pub use surveyor::{
    survey_field, survey_generators, survey_range, DisjointnessReport, FieldReport,
};
