//! Hyperbolic cone-metrics on closed triangulated surfaces, Delaunay flip
//! machinery, the cone-angle-decreasing length flow, systole and balancedness
//! certification, convex hulls of hyperboloid point sets in R^{3,1}, and the
//! solid-torus realization problem.

pub mod conflow;
pub mod conesurf;
pub mod delaunay;
pub mod hyptrig;
pub mod mhull;
pub mod oracle;
pub mod sysbal;
pub mod torusreal;
