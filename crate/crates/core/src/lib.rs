//! Exact computation with `(p,q)`-Eulerian and André polynomials.
//!
//! The polynomial `D_n(p,q,t)` sums `p^res q^les t^des` over permutations of
//! `[n]` without double descents that end with an ascent. This crate gets at
//! it three ways and checks that they agree:
//!
//! * expanding J-fractions in [`cfrac`],
//! * brute-force enumeration over `S_n` in [`andre`] and [`sn`],
//! * weighted lattice paths in [`paths`] and closed formulas in [`formulas`].
//!
//! [`phi`] implements the valley-hopping bijection that proves the
//! `gamma`-positivity of the `(p,q)`-Eulerian polynomials.
//!
//! ```
//! use andrekit::cfrac::dn_series;
//! use andrekit::poly::Var;
//!
//! let d = dn_series(4);
//! assert_eq!(d[3].display_grouped(Var::T), "1 + (p+q+2)*t");
//! ```

pub mod andre;
pub mod cfrac;
pub mod check;
pub mod formulas;
pub mod paths;
pub mod perm;
pub mod phi;
pub mod poly;
pub mod pqnum;
pub mod sn;

pub use check::{CheckResult, IdentityViolation, Verified};
pub use perm::Permutation;
pub use poly::{Monomial, MultiPoly, PolyError, Var};
