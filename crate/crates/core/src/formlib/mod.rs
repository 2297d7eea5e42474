//! Named modular forms: Hauptmoduln, dimension formulas, spaces closed under
//! Hecke operators, and the cusp forms used by the seeds.

pub mod coeffile;
pub mod dims;
pub mod haupt;
pub mod linalg;
pub mod newforms;
pub mod space;

pub use dims::{dim_mk, dim_sk, sturm_bound};
pub use haupt::{hauptmodul, normalized_hauptmodul, CLASS_POLY_LEVELS, HAUPTMODUL_LEVELS};
pub use newforms::{ambient_space, named_cusp_form, catalog, NewformId};
pub use space::{cusp_subspace, span_and_close, Generator, SpaceBasis};
