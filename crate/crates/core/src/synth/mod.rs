//! CSES synthesis and the component library.

mod arith;
mod cses;
mod popcount;
mod table;
mod tdn;
mod verifier;

pub use arith::{
    build_add_sub, build_adder, build_comparator, build_eq_verifier, build_eq_verifier_mixed,
    build_subtractor, const_bits, wire_bits, Bit,
};
pub use cses::{
    count_occurrences, digit_cses, initial_minterm, merge_minterms, sequence_minterms, Cses, Cube,
    Minterm, OccurrenceTally, Term,
};
pub use popcount::{build_hd_counter, count_width};
pub use table::{component_table, render_component_table, ComponentRow};
pub use tdn::{build_tdn_generator, tdn_reference, TdnSignals};
pub use verifier::{build_sc_bcd, build_sc_verifier, plan_decoder_output, DecoderPlan};

pub(crate) use arith::{emit_add_sub, emit_equality, emit_greater};
pub(crate) use popcount::emit_popcount;
