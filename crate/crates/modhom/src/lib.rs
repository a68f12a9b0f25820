//! Modules over the categories of `ficat`: representables, submodules, initial
//! terms and shift-complex homology over exact fields.

pub mod field;
pub mod initial;
pub mod linalg;
pub mod module;
pub mod shift;

pub use field::{CoefField, Field, PrimeField, Rationals};
pub use module::{representable, submodule_closure, Closure, Module, Representable, Submodule};
pub use shift::{general_shift, rep_shift, ChainComplex, Variant};
