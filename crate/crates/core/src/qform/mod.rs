//! Diagonal symmetric bilinear forms and their invariants.
//!
//! Forms live over one of the contexts in [`FieldCtx`]. Witt-class equality is
//! only decided where it is decidable by elementary invariants (reals,
//! complexes, finite fields); elsewhere the module works with signatures at
//! sampled orderings, rank parity, the signed discriminant and explicit
//! certificates such as isotropic vectors of Pfister forms.

mod field;
mod form;
mod invariants;

pub use field::{Elem, FieldCtx};
pub use form::{pfister, DiagForm, GWElem, PfisterPresentation, PfisterTerm};
pub use invariants::{
    discriminant, gw_signature, in_fundamental_power, mult_by_pfister_minus_one, pfister_isotropic_vector, sample_orderings,
    second_residue, signature, witt_decompose, witt_zero_certificate, FieldOrdering, Membership, Place,
    WittDecomposition, ZeroCertificate,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFormError {
    #[error("forms live over different fields")]
    ContextMismatch,
    #[error("diagonal entries and Pfister slots must be nonzero")]
    ZeroEntry,
    #[error("{0} is not an odd prime")]
    InvalidContext(u64),
    #[error("element {0} does not belong to the form's field")]
    ElementOutsideContext(String),
    #[error("vector length does not match the form dimension")]
    DimensionMismatch,
    #[error("the field has no orderings")]
    UnorderedContext,
    #[error("ordering does not belong to this field")]
    OrderingMismatch,
    #[error("an entry vanishes at the ordering point")]
    EntryVanishesAtOrdering,
    #[error("operation not available over this field")]
    UnsupportedContext,
    #[error("only rational places of degree one and the place at infinity are supported")]
    UnsupportedPlace,
}
