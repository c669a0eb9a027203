//! Combinatorial bit-sequence constructions.
//!
//! f-vectors of iterated cones and of duals of standard simplices, the
//! f/h-vector dictionary, McMullen's conditions for simple polytopes, and
//! the encoding of integer vectors as exact-length bit streams.

pub mod binomial;
pub mod bitcodec;
pub mod combinatorics;
pub mod error;
pub mod graph;
pub mod gtheorem;
pub mod vector;

pub use binomial::binomial;
pub use bitcodec::{
    encode_integer, encode_vector, encode_vector_byte_aligned, encode_with_mode, read_stream,
    write_stream, BitStream, EncodingMode, SourceVector, StreamFormat, StreamManifest,
};
pub use combinatorics::{
    cone_f, f_to_h, h_to_f, is_symmetrical, iterate_cone, palindromic_h, simplex_dual_f,
};
pub use error::{Error, Result};
pub use graph::{f_of_graph, random_graph, sample_graph, Graph, GraphSummary, Probability, RngConfig};
pub use gtheorem::{
    check_dehn_sommerville, check_mcmullen, cone_failure_threshold, dual_profile, g_vector,
    macaulay_rep, pseudo_power, vertex_equation_holds, GVector, McMullenReport, Ratio,
};
pub use num_bigint::{BigInt, BigUint};
pub use vector::{FVector, HVector, VectorFile};
