//! Exact computer-algebra workbench for Frobenius/δ-ring identity
//! verification and ramification bound calculus.
//!
//! The crate is organized around a sparse multivariate polynomial type
//! over big integers and `Z/p^N` ([`poly`]), a small Frobenius/Galois
//! calculus on top of it ([`prism`], [`delta_laws`]), certificate-based
//! verifiers for ideal-membership identities ([`ideals`]), Koszul
//! homology over finite coefficient rings ([`koszul`]), and exact
//! rational ramification bounds with Herbrand functions ([`herbrand`],
//! [`bounds`]).

pub mod bounds;
pub mod delta_laws;
pub mod herbrand;
pub mod ideals;
pub mod koszul;
pub mod poly;
pub mod prism;
pub mod report;

pub use poly::{CoeffDomain, DivResult, MPoly, PolyError, Var};
pub use prism::{LocElem, PrismError, PrismParams};
pub use report::{LemmaReport, Verdict, Witness};
