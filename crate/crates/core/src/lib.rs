//! Local invariants of elliptic curves over unramified p-adic fields: minimal
//! models, Kodaira types, component counts, conductors, Vélu isogenies, formal
//! group expansions, and the isogeny invariant α measuring the valuation of the
//! leading coefficient of the induced formal group homomorphism.

pub mod error;
pub mod exactnum;
pub mod formalgroup;
pub mod isogeny;
pub mod localdata;
pub mod verify;
pub mod weierstrass;

pub use error::{Error, Result};
