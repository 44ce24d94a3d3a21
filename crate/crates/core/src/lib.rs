//! Exact chain-level Koszul duality for dg algebras and modules, together
//! with the finite combinatorics (simplex category, operads of relative
//! tensor products, twisted arrow categories) that index it.

pub mod bar;
pub mod chains;
pub mod corpus;
pub mod dgalg;
pub mod error;
pub mod field;
pub mod io;
pub mod linalg;
pub mod morita;
pub mod operads;
pub mod report;
pub mod simplicial;
pub mod twarr;
pub mod verify;

pub use bar::Window;
pub use error::{Error, Result};
pub use field::{Field, Fp, Q};
pub use report::Report;
