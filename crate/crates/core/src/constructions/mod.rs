//! Graph families built from specs: stars of cliques, `H_T`, and the
//! decomposition of cycles with chordal attachments.

pub mod ht;
pub mod unicyclic;

pub use ht::{
    attach_HT, build_star_of_cliques, construct_cochordal_cover_HT, kappa, Attachment, HtCoverCase,
    HtGraph, HtSpec, StarOfCliquesSpec,
};
pub use unicyclic::{decompose_unicyclic, decompose_unicyclic_ht, UnicyclicDecomposition};
