pub mod bounds;
pub mod cli;
pub mod cohomology_ring;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod moment_angle;
pub mod orbit;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::Field;
pub use simplicial::SimplicialComplex;
