//! Matrix-level realization of Leonard systems: the split canonical form,
//! primitive idempotents by two independent methods, trace coefficients,
//! parameter extraction, recognition of Leonard pairs from raw matrices,
//! and reconstruction of a parameter array from nine determining scalars.

mod idempotents;
mod recognize;
mod reconstruct;
mod rep;
mod split;
mod traces;

pub use idempotents::{idempotent_entries_closed, idempotents_lagrange};
pub use recognize::{recognize_leonard_pair, RecognitionResult, RecognizedOrdering};
pub use reconstruct::{reconstruct_from_nine, FourthEigenvalue, SplitScalar};
pub use rep::{LeonardSystemRep, SystemError, TauEtaBasis, TraceCoeffs};
pub use split::{build_split_form, extract_parameters};
pub use traces::{trace_coefficients, trace_coefficients_closed, varphi_four_ways};
