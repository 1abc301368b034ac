//! Finite fields with canonical moduli, coercion of rationals, and the
//! reduced models of `A_n` over them.

mod field;
mod model;
mod poly;

pub use field::{build_field, coerce, factor_u64, FFElem, Field, FieldSpec};
pub use model::{
    delta, equal_as_maps, equivalent_ap, mod_np, model, model_meta, model_ratio, residue,
    ModelMeta, ModelPoly, Variant,
};
pub use poly::FfPoly;
