//! Exact computation of the encomplexed writhe of real rational links in
//! projective 3-space.

pub mod algebra;
pub mod curve;
pub mod projection;
pub mod writhe;
pub mod io;
pub mod harness;
pub mod svg;
