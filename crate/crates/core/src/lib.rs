//! Exact computations around Witt rings, Milnor–Witt K-theory of fields and the
//! real cycle class map for smooth real curves.
//!
//! Everything here is exact: rationals and integers are arbitrary precision and
//! no floating point value is ever used to make a decision.

pub mod abgrp;
pub mod cycleclass;
pub mod mwk;
pub mod numeric;
pub mod qform;
pub mod realcurve;

pub use numeric::{ExtendedPoint, IsolatingInterval, Rat, UPoly};
