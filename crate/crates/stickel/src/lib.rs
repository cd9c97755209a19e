//! Finite-field computer algebra built around one idea: a squarefree
//! polynomial whose degree-d factor count is not divisible by r (for some
//! r | d) yields an explicit r-th nonresidue through Lagrange resolvents and
//! resultants. On top of that sit deterministic r-th root extraction,
//! irreducible-polynomial construction for r-power degrees (with or without
//! a root of unity in the base field), and batch experiment drivers.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod experiments;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod resolvent;
pub mod resultant;
pub mod ring;
pub mod roots;
pub mod teichmuller;

pub use arith::{nat, Modulus, Natural};
pub use error::{Error, Result};
pub use field::{Field, FqElement};
pub use poly::Poly;
