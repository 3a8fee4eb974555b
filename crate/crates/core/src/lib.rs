pub mod abelian;
pub mod simplicial;
pub mod tower;
pub mod compactohedral;
pub mod assembly;
pub mod nerve;
pub mod cli;
