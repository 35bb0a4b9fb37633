//! Exact character theory of `SL₂(F_q)` acting on the Drinfeld curve.
//!
//! The crate builds `F_q ⊂ F_{q²}`, the cyclotomic field `Q(ζ_{p(q²-1)})`, the
//! group `SL₂(F_q)` with its conjugacy classes, and from these the
//! Deligne–Lusztig characters, Gelfand–Graev characters, Brauer characters of
//! symmetric powers and of holomorphic differentials on the curve
//! `XY^q - X^qY = Z^{q+1}`. [`verify`] checks the Grothendieck-group
//! identities relating them for a given `q`.

pub mod brauer;
pub mod classfn;
pub mod context;
pub mod curve;
pub mod cyclotomic;
pub mod deligne_lusztig;
pub mod error;
pub mod fields;
pub mod group;
pub mod verify;

pub use context::Sl2Context;
pub use error::Error;
