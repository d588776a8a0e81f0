//! Exact-arithmetic computational homological algebra for Hodge decompositions
//! of Hochschild and cyclic homology of universal enveloping algebras of
//! (DG) Lie algebras, together with the derived Poisson (necklace-type)
//! brackets induced by cyclic pairings on Koszul-dual coalgebras.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in the crate. All homological invariants are
//! produced on finite truncations that are *exact* in the retained range: the
//! mandatory weight grading on coalgebra inputs makes every total-weight block
//! of the tensor algebra finite-dimensional in all degrees.
//!
//! # Layout
//!
//! * [`scalar`] — exact rational scalars.
//! * [`linalg`] — sparse exact Gaussian elimination, graded spaces, chain
//!   complexes, bicomplexes, homology.
//! * [`word`] — letters, words, and the tensor algebra `T(V)`.
//! * [`sym`] — symmetric-group algebra, descent statistics, Eulerian
//!   idempotents.
//! * [`lie`] — free graded Lie algebras, (super-)Lyndon bases, PBW
//!   symmetrization and weight projectors.
//! * [`input`] — finite presentations of DG Lie algebras and conilpotent
//!   DG coalgebras, with load-time validation.
//! * [`cobar`] — the cobar construction `R = Ω(C)`, its Hopf structure and
//!   Adams operations; the Chevalley–Eilenberg coalgebra.
//! * [`cyclic`] — the cyclic quotient `R_♮`, one-forms `Ω¹R_♮ ≅ R ⊗ V`, the
//!   cyclic de Rham differential and the `β` map.
//! * [`hodge`] — Hodge-filtered bicomplexes `X⁺(R)`, `X₂⁺(R)`, the Hodge
//!   pieces of Hochschild/cyclic homology, and the Hodge-graded Connes long
//!   exact sequence.
//! * [`pairing`] — cyclic pairings on the coalgebra.
//! * [`bracket`] — double brackets, the necklace bracket on `R_♮`, the
//!   bracket action on one-forms, Hodge-filtration reports, and the
//!   Poincaré-duality conjecture probe.
//! * [`kassel`] — the independent mixed-complex route: Chevalley–Eilenberg
//!   complexes with `Sym^p` coefficients and the de Rham maps between them.
//! * [`rep`] — representation algebras, derived representation complexes,
//!   their Poisson structure, and Drinfeld traces.
//! * [`polyforms`] — classical differential-forms calculus on polynomial
//!   rings, used as an independent oracle for the abelian case.
//! * [`specfile`] — the line-oriented algebra description format.
//! * [`report`] — machine-readable result tables (JSON/CSV/text).
//! * [`fixtures`] — the built-in test fixtures.

pub mod scalar;
pub mod linalg;
pub mod word;
pub mod sym;
pub mod lie;
pub mod input;
pub mod cobar;
pub mod cyclic;
pub mod hodge;
pub mod pairing;
pub mod bracket;
pub mod kassel;
pub mod rep;
pub mod polyforms;
pub mod specfile;
pub mod report;
pub mod fixtures;

pub use scalar::Q;
