//! Weak k-superirreducibility of polynomials over finite fields.
//!
//! A polynomial `f` over a field is weakly k-superirreducible when `f(g(t))` is
//! irreducible for every substitution `g` of degree exactly `k`. This crate
//! decides the property, builds explicit witnesses when it fails, counts the
//! monic degree-`d` examples `s_2(q, d)` over `F_q` three independent ways, and
//! checks the character-sum inequalities that control those counts.
//!
//! Module map:
//! - [`field`]: towers `F_p ⊆ F_q ⊆ F_{q^e}` and the quadratic character
//! - [`poly`]: dense polynomials, irreducibility, factor degrees
//! - [`superirr`]: deciders and witness constructors
//! - [`counting`]: `s_1`, `s_2`, autocorrelations
//! - [`bounds`]: exact checks of the Weil, Wan and asymptotic inequalities
//! - [`papercheck`]: reproduction of the worked examples

pub mod bounds;
pub mod counting;
pub mod error;
pub mod field;
pub mod numtheory;
pub mod papercheck;
pub mod poly;
mod serde_text;
pub mod superirr;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldTower, Level};
pub use poly::{FactorDegreeMultiset, IntPoly, Poly};
