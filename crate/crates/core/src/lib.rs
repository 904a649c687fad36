pub mod error;
mod json;
pub mod lattice;
pub mod pell;
pub mod isometry;
pub mod surface;
pub mod links;
pub mod exclusion;
pub mod verify;
