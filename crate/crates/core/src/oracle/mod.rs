//! Brute-force ground truth on concrete lattices (E8 and Leech).

mod enumerate;
mod golay;
mod lattice;
mod profile;

pub use enumerate::{enumerate_ball, enumerate_shell, theta_by_enumeration, ShellVectors};
pub use golay::GolayCode;
pub use lattice::{e8, leech, GramLattice};
pub use profile::{design_check, design_sums, n_profile, probe_vectors, DesignSum, NProfile};
