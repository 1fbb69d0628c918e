//! Exact arithmetic for skew generalized power series rings `R[[S, ω]]`,
//! skew Laurent polynomial rings and Jordan extensions, together with
//! bounded property checkers over small rings.

pub mod error;
pub mod ring;
pub mod rings;

pub use error::{Error, Result};
pub use ring::{Elem, Endo, Ring, RingElement, RingKind};
pub mod monoid;
pub mod series;

pub use monoid::{Monoid, MonoidElement, MonoidKind};
pub use series::{DivisibilityResult, OmegaRule, Series, SkewContext};
pub mod lab;
pub mod laurent;
