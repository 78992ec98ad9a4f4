//! Committed desk-scale fixtures, embedded from `fixtures/` at the workspace
//! root so library users and tests resolve them without caring about the
//! working directory.

use crate::format;
use crate::tree::Instance;

pub const TWO_FORK: &str = include_str!("../../../fixtures/two_fork.ecte");
pub const HEAVY_PATH: &str = include_str!("../../../fixtures/heavy_path.ecte");
pub const HEAVY_PATH_TIES: &str = include_str!("../../../fixtures/heavy_path_ties.ecte");

/// Root `a` with two forks of two leaves each; budget 20. The default tour
/// is `(a,b,c,b,d,b,a,e,f,e,g,e,a)`.
pub fn two_fork() -> Instance {
    format::parse(TWO_FORK).expect("two_fork fixture parses")
}

/// A heavy path `r-p1-rp` with one light leaf at `p1` and a four-leaf star
/// below `rp`; budget 20.
pub fn heavy_path() -> Instance {
    format::parse(HEAVY_PATH).expect("heavy_path fixture parses")
}

/// `heavy_path` with the light leaf split in two (weights 2 and 3), so the
/// two light edges at `p1` share a potential.
pub fn heavy_path_ties() -> Instance {
    format::parse(HEAVY_PATH_TIES).expect("heavy_path_ties fixture parses")
}
