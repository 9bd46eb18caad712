pub mod classifier;
pub mod construct;
pub mod levi;
pub mod lie;
pub mod linalg;
pub mod quiver;
pub mod rep_theory;
