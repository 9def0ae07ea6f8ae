//! Exact torus-equivariant Schubert calculus on generalized flag varieties.

pub mod billey;
pub mod catalogue;
pub mod cohomology;
pub mod error;
pub mod io;
pub mod parabolic;
pub mod polyring;
pub mod root_system;
pub mod springer;
pub mod verify;
pub mod weyl;

pub use error::{GkmError, Result};
