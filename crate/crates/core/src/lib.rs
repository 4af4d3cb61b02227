//! Exact idempotents of the cyclic group algebra `F_q C_n` and the dihedral
//! group algebra `F_q D_2n`, with their Wedderburn decompositions and the
//! closed forms that hold when every prime factor of `n` divides `q - 1`.

pub mod cyclic;
pub mod dihedral;
pub mod error;
pub mod explicit;
pub mod ff;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
