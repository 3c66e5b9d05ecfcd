//! Finite-dimensional spaces normed by finitely many rational functionals.

pub mod embedding;
pub mod pushout;
pub mod quotient;
pub mod space;
pub mod sup;

pub use embedding::{isometry_failure, LinearEmbedding};
pub use pushout::{
    dualball_pullback_check, is_internal_pushout_banach, norm_identity_at, pushout_banach, BanachPushout,
    BanachVerdict, NormWitness,
};
pub use quotient::{quotient_norm, QuotientNorm};
pub use space::{l1_sum, norm_eval, PolytopeSpace, MAX_EXACT_DIM};
pub use sup::embed_into_sup_space;
